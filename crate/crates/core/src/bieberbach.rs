//! Holonomy, generator cosets and torsion-freeness of a Bieberbach group.

use serde::{Deserialize, Serialize};

use crate::affine::{compose, AffineMap};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::exactmath::{vec_neg, vec_sub, CongruenceBlock, CongruenceSystem, LatticeBasis, Mat, Scalar, Vector};

pub const CLOSURE_BUDGET: usize = 64;

/// The finite group of linear parts, identity first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyGroup {
    pub elements: Vec<Mat>,
    /// For each input generator, the index of its linear part.
    pub generator_indices: Vec<usize>,
}

impl HolonomyGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    pub fn index_of(&self, a: &Mat) -> Option<usize> {
        self.elements.iter().position(|e| e == a)
    }

    pub fn contains(&self, a: &Mat) -> bool {
        self.index_of(a).is_some()
    }

    /// Distinct non-identity linear parts of the generators.
    pub fn generators(&self) -> Vec<Mat> {
        let mut idx: Vec<usize> = self.generator_indices.iter().copied().filter(|&i| i != 0).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|i| self.elements[i].clone()).collect()
    }

    /// Order of element `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let a = &self.elements[i];
        let mut p = a.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = &p * a;
            k += 1;
        }
        k
    }

    /// `P H P⁻¹`, elementwise.
    pub fn conjugated(&self, p: &Mat) -> Result<HolonomyGroup> {
        let pinv = p.inverse()?;
        let elements = self.elements.iter().map(|a| p.try_mul(&a.try_mul(&pinv)?)).collect::<Result<Vec<_>>>()?;
        Ok(HolonomyGroup { elements, generator_indices: self.generator_indices.clone() })
    }
}

/// Closure of the linear parts of `generators` under multiplication.
pub fn holonomy_of(generators: &[AffineMap]) -> Result<HolonomyGroup> {
    let n = generators.first().map_or(0, AffineMap::dim);
    let mut elements = vec![Mat::identity(n)];
    let mut generator_indices = Vec::with_capacity(generators.len());
    for g in generators {
        match elements.iter().position(|e| *e == g.linear) {
            Some(i) => generator_indices.push(i),
            None => {
                generator_indices.push(elements.len());
                elements.push(g.linear.clone());
            }
        }
    }
    let gens: Vec<Mat> = elements[1..].to_vec();
    let mut i = 0;
    while i < elements.len() {
        for a in &gens {
            let p = &elements[i] * a;
            if !elements.contains(&p) {
                if elements.len() == CLOSURE_BUDGET {
                    return Err(Error::ClosureBudgetExceeded(CLOSURE_BUDGET));
                }
                elements.push(p);
            }
        }
        i += 1;
    }
    Ok(HolonomyGroup { elements, generator_indices })
}

pub fn holonomy(g: &CatalogEntry) -> Result<HolonomyGroup> {
    holonomy_of(&g.generators)
}

/// `{w : (h, w) ∈ π} = base + lattice`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorLatticeCoset {
    pub holonomy_element: Mat,
    pub base_translation: Vector,
    pub lattice: LatticeBasis,
}

impl GeneratorLatticeCoset {
    pub fn contains(&self, w: &[Scalar]) -> Result<bool> {
        self.lattice.contains(&vec_sub(w, &self.base_translation))
    }
}

fn floor_rational(s: &Scalar) -> Option<Scalar> {
    s.to_rational().map(|r| Scalar::from_rational(r.floor()))
}

/// Reduces the rational lattice coordinates of `v` into `[0, 1)`.
pub fn reduce_mod_lattice(v: &[Scalar], lattice: &LatticeBasis) -> Result<Vector> {
    let c = lattice.coordinates(v)?;
    let shift: Vector = c.iter().map(|x| floor_rational(x).unwrap_or_else(Scalar::zero)).collect();
    Ok(vec_sub(v, &lattice.basis().mul_vec(&shift)))
}

/// One lift `(h, b) ∈ π` per holonomy element, with `b` reduced modulo the lattice.
pub fn holonomy_lifts(g: &CatalogEntry, h: &HolonomyGroup) -> Result<Vec<AffineMap>> {
    let mut lifts: Vec<Option<AffineMap>> = vec![None; h.order()];
    lifts[0] = Some(AffineMap::identity(g.dimension));
    let gens: Vec<&AffineMap> = g.holonomy_generators();
    let mut queue = vec![0usize];
    let mut qi = 0;
    while qi < queue.len() {
        let i = queue[qi];
        qi += 1;
        let base = lifts[i].clone().expect("visited");
        for a in &gens {
            let p = compose(&base, a)?;
            let j = h.index_of(&p.linear).ok_or(Error::NotInHolonomy)?;
            if lifts[j].is_none() {
                let t = reduce_mod_lattice(&p.translation, &g.lattice)?;
                lifts[j] = Some(AffineMap::new(p.linear, t)?);
                queue.push(j);
            }
        }
    }
    lifts.into_iter().map(|l| l.ok_or(Error::NotInHolonomy)).collect()
}

pub fn generator_lattice_coset(g: &CatalogEntry, element: &Mat) -> Result<GeneratorLatticeCoset> {
    let h = holonomy(g)?;
    let i = h.index_of(element).ok_or(Error::NotInHolonomy)?;
    let lift = holonomy_lifts(g, &h)?.swap_remove(i);
    Ok(GeneratorLatticeCoset { holonomy_element: element.clone(), base_translation: lift.translation, lattice: g.lattice.clone() })
}

/// `true` iff `f ∈ π`.
pub fn contains_element(g: &CatalogEntry, f: &AffineMap) -> Result<bool> {
    let h = holonomy(g)?;
    let Some(i) = h.index_of(&f.linear) else {
        return Ok(false);
    };
    let lifts = holonomy_lifts(g, &h)?;
    g.lattice.contains(&vec_sub(&f.translation, &lifts[i].translation))
}

/// Checks that every product of generators with trivial linear part is a
/// lattice translation, so the listed lattice is all of `π ∩ R^n`.
pub fn lattice_is_exact(g: &CatalogEntry) -> Result<bool> {
    let h = holonomy(g)?;
    let lifts = holonomy_lifts(g, &h)?;
    for l in &lifts {
        for a in g.holonomy_generators() {
            let p = compose(l, a)?;
            let j = h.index_of(&p.linear).ok_or(Error::NotInHolonomy)?;
            if !g.lattice.contains(&vec_sub(&p.translation, &lifts[j].translation))? {
                return Ok(false);
            }
        }
    }
    for t in g.generators.iter().filter(|x| x.is_pure_translation()) {
        if !g.lattice.contains(&t.translation)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_{i<k} h^i` for `h` of order `k`.
fn norm_map(h: &Mat, k: usize) -> Mat {
    let n = h.rows();
    let mut acc = Mat::zeros(n, n);
    let mut p = Mat::identity(n);
    for _ in 0..k {
        acc = acc.try_add(&p).expect("square");
        p = &p * h;
    }
    acc
}

/// The holonomy element of a torsion element, if one exists.
pub fn torsion_witness(g: &CatalogEntry) -> Result<Option<Mat>> {
    let h = holonomy(g)?;
    let lifts = holonomy_lifts(g, &h)?;
    for i in 1..h.order() {
        let k = h.element_order(i);
        let nm = norm_map(&h.elements[i], k);
        let kernel = nm.nullspace();
        let base = &lifts[i].translation;
        // Some (h, base + ℓ) has finite order iff base + ℓ ∈ ker N for some ℓ ∈ Λ.
        let torsion = if kernel.is_empty() {
            g.lattice.contains(&vec_neg(base))?
        } else {
            let sys = CongruenceSystem {
                blocks: vec![CongruenceBlock { matrix: Mat::from_columns(&kernel)?, offset: base.clone(), lattice: g.lattice.clone() }],
            };
            crate::exactmath::solve_mixed_congruence(&sys)?.solvable
        };
        if torsion {
            return Ok(Some(h.elements[i].clone()));
        }
    }
    Ok(None)
}

pub fn is_torsion_free(g: &CatalogEntry) -> Result<bool> {
    Ok(torsion_witness(g)?.is_none())
}

/// `true` iff some candidate `X` moves the translation part `v` of some
/// holonomy generator to a vector that is not `v` up to coordinate signs.
pub fn translation_involved(g: &CatalogEntry, candidates: &[Mat]) -> Result<bool> {
    let h = holonomy(g)?;
    for x in candidates {
        if !normalizes(x, &h)? {
            return Err(Error::CandidateDoesNotNormalize);
        }
    }
    for x in candidates {
        for a in g.holonomy_generators() {
            let w = x.try_mul_vec(&a.translation)?;
            let same_up_to_signs = w.iter().zip(&a.translation).all(|(wi, vi)| wi.abs() == vi.abs());
            if !same_up_to_signs {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `X H X⁻¹ ⊂ H`.
pub fn normalizes(x: &Mat, h: &HolonomyGroup) -> Result<bool> {
    let xinv = x.inverse()?;
    for a in &h.elements {
        if !h.contains(&x.try_mul(&a.try_mul(&xinv)?)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(A, v + ℓ)` replaced by `(A, v')` for one generator, for negative controls.
pub fn with_translation(g: &CatalogEntry, index: usize, v: Vector) -> CatalogEntry {
    let mut out = g.clone();
    out.generators[index].translation = v;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_entries, load_group};
    use crate::exactmath::{int_vector, unit_vector};

    #[test]
    fn holonomy_orders_match_catalog() {
        for g in all_entries() {
            assert_eq!(holonomy(&g).unwrap().order(), g.holonomy_order, "{}", g.name);
        }
    }

    #[test]
    fn g6_is_klein_four() {
        let h = holonomy(&load_group("G6").unwrap()).unwrap();
        assert_eq!(h.order(), 4);
        assert!((1..4).all(|i| h.element_order(i) == 2));
    }

    #[test]
    fn b1_coset_has_half_base() {
        let g = load_group("B1").unwrap();
        let e = g.holonomy_generators()[0].linear.clone();
        let c = generator_lattice_coset(&g, &e).unwrap();
        assert_eq!(c.base_translation, vec![Scalar::ratio(1, 2), Scalar::zero(), Scalar::zero()]);
        assert!(c.contains(&[Scalar::ratio(-1, 2), Scalar::one(), Scalar::zero()]).unwrap());
        assert!(matches!(generator_lattice_coset(&g, &Mat::diag_i64(&[2, 1, 1])), Err(Error::NotInHolonomy)));
    }

    #[test]
    fn torus_coset_is_lattice() {
        let g = load_group("T3").unwrap();
        let c = generator_lattice_coset(&g, &Mat::identity(3)).unwrap();
        assert_eq!(c.base_translation, int_vector(&[0, 0, 0]));
    }

    #[test]
    fn torsion() {
        for g in all_entries() {
            assert!(is_torsion_free(&g).unwrap(), "{}", g.name);
            assert!(lattice_is_exact(&g).unwrap(), "{}", g.name);
        }
        let g2 = load_group("G2").unwrap();
        let i = g2.generators.iter().position(|x| !x.is_pure_translation()).unwrap();
        let bad = with_translation(&g2, i, int_vector(&[0, 0, 0]));
        assert!(!is_torsion_free(&bad).unwrap());
    }

    #[test]
    fn membership_of_elements() {
        let g = load_group("G2").unwrap();
        let a = g.holonomy_generators()[0].clone();
        assert!(contains_element(&g, &a).unwrap());
        assert!(contains_element(&g, &compose(&a, &AffineMap::translation(unit_vector(3, 2))).unwrap()).unwrap());
        assert!(!contains_element(&g, &AffineMap::linear(a.linear.clone())).unwrap());
    }

    #[test]
    fn translation_diagnostic() {
        let t3 = load_group("T3").unwrap();
        assert!(!translation_involved(&t3, &[Mat::from_int_rows(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]])]).unwrap());
        let b1 = load_group("B1").unwrap();
        let mix = Mat::from_int_rows(&[[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(translation_involved(&b1, &[mix]), Err(Error::CandidateDoesNotNormalize)));
    }
}
