//! The 3-dimensional Bieberbach groups and the 4-dimensional ones with cyclic
//! holonomy, their integral representations, and the published expected results.

mod data;
mod fixtures;

use serde::{Deserialize, Serialize};

use crate::affine::{conjugate, AffineMap};
use crate::error::{Error, Result};
use crate::exactmath::{LatticeBasis, Mat};

pub use data::{e0, rotation_sixths};
pub use fixtures::{
    expected_results, BlockSet, ConeFactor, ExpectedResults, NormalizerPredicate, TopologyVerdict,
};

/// Catalog names in catalog order.
pub const NAMES: [&str; 28] = [
    "G1", "G2", "G3", "G4", "G5", "G6", "B1", "B2", "B3", "B4", "O4_1", "O4_2", "O4_3", "O4_4", "O4_5", "O4_6",
    "O4_7", "O4_8", "N4_1", "N4_2", "N4_14", "N4_15", "N4_16", "N4_17", "N4_18", "N4_19", "N4_20", "N4_21",
];

/// Entries with a listed conjugation to integral holonomy.
pub const INTEGRAL_REP_NAMES: [&str; 7] = ["O4_4", "O4_5", "O4_8", "N4_16", "N4_18", "N4_19", "N4_20"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralRep {
    pub conjugator: Mat,
    pub generators: Vec<AffineMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub dimension: usize,
    pub generators: Vec<AffineMap>,
    pub lattice: LatticeBasis,
    pub orientable: bool,
    pub holonomy_order: usize,
    pub integral_rep: Option<IntegralRep>,
}

impl CatalogEntry {
    /// Generators with non-identity linear part.
    pub fn holonomy_generators(&self) -> Vec<&AffineMap> {
        self.generators.iter().filter(|g| !g.is_pure_translation()).collect()
    }

    /// `true` iff every linear part is an integer matrix.
    pub fn has_integral_holonomy(&self) -> bool {
        self.generators.iter().all(|g| g.linear.is_integral())
    }
}

/// Canonical catalog name: strips `^`, braces and spaces and resolves `T3`/`T4`.
pub fn normalize_name(name: &str) -> Option<&'static str> {
    let cleaned: String = name.chars().filter(|c| !matches!(c, '^' | '{' | '}' | ' ')).collect();
    let cleaned = cleaned.to_ascii_uppercase();
    let cleaned = match cleaned.as_str() {
        "T3" => "G1".to_string(),
        "T4" => "O4_1".to_string(),
        _ => cleaned,
    };
    NAMES.iter().copied().find(|n| *n == cleaned || n.replace('_', "") == cleaned)
}

pub fn load_group(name: &str) -> Result<CatalogEntry> {
    let canonical = normalize_name(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    Ok(match canonical {
        "G1" => data::g1(),
        "G2" => data::g2(),
        "G3" => data::g3(),
        "G4" => data::g4(),
        "G5" => data::g5(),
        "G6" => data::g6(),
        "B1" => data::b1(),
        "B2" => data::b2(),
        "B3" => data::b3(),
        "B4" => data::b4(),
        "O4_1" => data::o4_1(),
        "O4_2" => data::o4_2(),
        "O4_3" => data::o4_3(),
        "O4_4" => data::o4_4(),
        "O4_5" => data::o4_5(),
        "O4_6" => data::o4_6(),
        "O4_7" => data::o4_7(),
        "O4_8" => data::o4_8(),
        "N4_1" => data::n4_1(),
        "N4_2" => data::n4_2(),
        "N4_14" => data::n4_14(),
        "N4_15" => data::n4_15(),
        "N4_16" => data::n4_16(),
        "N4_17" => data::n4_17(),
        "N4_18" => data::n4_18(),
        "N4_19" => data::n4_19(),
        "N4_20" => data::n4_20(),
        _ => data::n4_21(),
    })
}

pub fn all_entries() -> Vec<CatalogEntry> {
    NAMES.iter().map(|n| load_group(n).expect("catalog name")).collect()
}

/// The listed conjugator `P` and the generators in integral coordinates.
pub fn integral_representation(name: &str) -> Result<(Mat, Vec<AffineMap>)> {
    let g = load_group(name)?;
    match g.integral_rep {
        Some(rep) => Ok((rep.conjugator, rep.generators)),
        None if g.has_integral_holonomy() => Err(Error::NoIntegralRepNeeded(g.name)),
        None => Err(Error::NoIntegralRepListed(g.name)),
    }
}

/// Conjugates every generator of `g` by `(P, 0)`.
pub fn conjugate_generators(g: &CatalogEntry, p: &Mat) -> Result<Vec<AffineMap>> {
    let by = AffineMap::linear(p.clone());
    g.generators.iter().map(|x| conjugate(x, &by)).collect()
}

/// Checks that conjugating by the stored `P` reproduces the stored integral
/// generators: non-translation generators match exactly and the translation
/// generators span the same lattice.
pub fn integral_rep_matches(g: &CatalogEntry) -> Result<bool> {
    let Some(rep) = &g.integral_rep else {
        return Ok(false);
    };
    let conj = conjugate_generators(g, &rep.conjugator)?;
    let split = |gens: &[AffineMap]| {
        let (t, h): (Vec<&AffineMap>, Vec<&AffineMap>) = gens.iter().partition(|x| x.is_pure_translation());
        (t.into_iter().map(|x| x.translation.clone()).collect::<Vec<_>>(), h.into_iter().cloned().collect::<Vec<_>>())
    };
    let (t1, h1) = split(&conj);
    let (t2, h2) = split(&rep.generators);
    if h1 != h2 {
        return Ok(false);
    }
    let l1 = LatticeBasis::from_vectors(&t1)?;
    let l2 = LatticeBasis::from_vectors(&t2)?;
    same_lattice(&l1, &l2)
}

fn same_lattice(a: &LatticeBasis, b: &LatticeBasis) -> Result<bool> {
    let ab = a.basis_inverse().try_mul(b.basis())?;
    let ba = b.basis_inverse().try_mul(a.basis())?;
    Ok(ab.is_integral() && ba.is_integral())
}

/// The catalog as pretty-printed JSON.
pub fn export_json() -> String {
    serde_json::to_string_pretty(&all_entries()).expect("catalog serializes")
}
