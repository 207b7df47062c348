//! The moduli space `O(n)\C_π/N_π` as a product of factors, its topology, and
//! the per-entry verification report.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bieberbach::{holonomy, is_torsion_free, lattice_is_exact};
use crate::catalog::{expected_results, integral_rep_matches, BlockSet, CatalogEntry, ExpectedResults, TopologyVerdict};
use crate::cone::{commuting_symmetric, symmetric_commutant, SymmetricCommutant};
use crate::congruence::{
    domain_for, orbifold_invariants, standard_table, CongruenceSubgroup, OrbifoldInvariants, SurfaceClass,
    DEFAULT_COSET_BUDGET, DEFAULT_PAIRING_WORD_LENGTH,
};
use crate::error::{Error, Result};
use crate::exactmath::Mat;
use crate::normalizer::{
    enumerate_members_with_budget, normalizer_membership, Member, DEFAULT_ENTRY_BOUND, DEFAULT_ENUMERATION_BUDGET,
};

/// One factor of a moduli space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ModuliFactor {
    /// `(R⁺)^k`.
    Euclidean { k: usize },
    /// `O(n)\GL(n,R)/Γ`.
    DoubleCoset { n: usize, subgroup: String, decoration: Option<String> },
    PuncturedSurface { genus: usize, punctures: usize },
    Circle,
}

impl ModuliFactor {
    pub fn dimension(&self) -> usize {
        match self {
            ModuliFactor::Euclidean { k } => *k,
            ModuliFactor::DoubleCoset { n, .. } => n * (n + 1) / 2,
            ModuliFactor::PuncturedSurface { .. } => 2,
            ModuliFactor::Circle => 1,
        }
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| DIGITS[c.to_digit(10).expect("digit") as usize]).collect()
}

fn power(base: &str, k: usize) -> String {
    if k == 1 {
        base.to_string()
    } else if base.chars().count() == 1 {
        format!("{base}{}", superscript(k))
    } else {
        format!("({base}){}", superscript(k))
    }
}

impl fmt::Display for ModuliFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuliFactor::Euclidean { k } => f.write_str(&power("R⁺", *k)),
            ModuliFactor::DoubleCoset { n, subgroup, decoration } => {
                write!(f, "O({n})\\GL({n},R)/{subgroup}")?;
                match decoration {
                    Some(d) => write!(f, " [{d}]"),
                    None => Ok(()),
                }
            }
            ModuliFactor::PuncturedSurface { genus, punctures } => write!(f, "Σ({genus},{punctures})"),
            ModuliFactor::Circle => f.write_str("S¹"),
        }
    }
}

/// A product `(S¹)^circles × R^euclidean × Π Σ(g, c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    pub circles: usize,
    pub euclidean: usize,
    /// `(genus, punctures)` of each open surface factor not already split off.
    pub surfaces: Vec<(usize, usize)>,
}

impl Shape {
    pub fn euclidean(k: usize) -> Self {
        Shape { circles: 0, euclidean: k, surfaces: Vec::new() }
    }

    pub fn is_contractible(&self) -> bool {
        self.circles == 0 && self.surfaces.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.circles + self.euclidean + 2 * self.surfaces.len()
    }

    fn absorb(&mut self, other: &Shape) {
        self.circles += other.circles;
        self.euclidean += other.euclidean;
        self.surfaces.extend(other.surfaces.iter().copied());
        self.surfaces.sort_unstable();
    }

    /// `R⁺ × H²/Γ` for the positive part of a 2×2 double coset.
    pub fn of_double_coset(inv: &OrbifoldInvariants) -> Shape {
        let mut s = Shape::euclidean(1);
        match inv.classification {
            SurfaceClass::OncePuncturedSphere => s.euclidean += 2,
            SurfaceClass::Cylinder => {
                s.circles += 1;
                s.euclidean += 1;
            }
            SurfaceClass::ThreePuncturedSphere => s.surfaces.push((0, 3)),
            SurfaceClass::Other { genus, cusps } => s.surfaces.push((genus, cusps)),
        }
        s
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.circles > 0 {
            parts.push(power("S¹", self.circles));
        }
        if self.euclidean > 0 {
            parts.push(power("R", self.euclidean));
        }
        for &(g, c) in &self.surfaces {
            parts.push(if g == 0 { format!("S²∖{{{c} points}}") } else { format!("Σ({g},{c})") });
        }
        if parts.is_empty() {
            f.write_str("point")
        } else {
            f.write_str(&parts.join(" × "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Topology {
    Known(Shape),
    /// Depends on a result about a higher-rank double coset that is not computed here.
    ExternalCitation(String),
}

impl Topology {
    pub fn tag(&self) -> String {
        match self {
            Topology::Known(s) if s.is_contractible() => "contractible".to_string(),
            Topology::Known(s) => format!("non-contractible({s})"),
            Topology::ExternalCitation(_) => "unresolved-external-citation".to_string(),
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Known(s) => write!(f, "{s}"),
            Topology::ExternalCitation(c) => write!(f, "cited: {c}"),
        }
    }
}

/// The citation label used for `O(n)\GL(n,R)/Γ` with `n ≥ 3`.
pub fn double_coset_citation(n: usize, subgroup: &str) -> String {
    match (n, subgroup) {
        (3, "GL(3,Z)") => "contractibility of O(3)\\GL(3,R)/GL(3,Z) (external result)".to_string(),
        _ => format!("topology of O({n})\\GL({n},R)/{subgroup} (external result)"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliExpression {
    pub factors: Vec<ModuliFactor>,
    pub teichmuller_dim: usize,
    pub topology: Option<Topology>,
}

impl ModuliExpression {
    pub fn factor_dimension(&self) -> usize {
        self.factors.iter().map(ModuliFactor::dimension).sum()
    }
}

impl fmt::Display for ModuliExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x {
                ModuliFactor::DoubleCoset { .. } if self.factors.len() > 1 => format!("({x})"),
                _ => x.to_string(),
            })
            .collect();
        f.write_str(&parts.join(" × "))
    }
}

/// A machine-checked step of the factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Premise {
    pub id: String,
    pub holds: bool,
    pub detail: String,
}

impl Premise {
    fn new(id: &str, holds: bool, detail: impl Into<String>) -> Self {
        Premise { id: id.to_string(), holds, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleCosetOrbifold {
    pub subgroup: String,
    pub index: usize,
    pub invariants: OrbifoldInvariants,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuliAnalysis {
    pub expression: ModuliExpression,
    pub premises: Vec<Premise>,
    pub orbifolds: Vec<DoubleCosetOrbifold>,
    /// Coordinates of each double-coset factor, then the remaining coordinates.
    pub double_coset_coordinates: Vec<Vec<usize>>,
    pub euclidean_coordinates: Vec<usize>,
}

impl ModuliAnalysis {
    pub fn premises_hold(&self) -> bool {
        self.premises.iter().all(|p| p.holds)
    }
}

/// Connected components of the coordinate graph joined by off-diagonal support.
fn support_components(n: usize, c: &SymmetricCommutant) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] == x {
            x
        } else {
            let r = find(p, p[x]);
            p[x] = r;
            r
        }
    }
    for (i, j) in c.support() {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        parent[a] = b;
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        match comps.iter_mut().find(|c| roots[c[0]] == roots[i]) {
            Some(c) => c.push(i),
            None => comps.push(vec![i]),
        }
    }
    comps
}

/// Dimension of the commutant restricted to the coordinates in `coords`.
fn restricted_dimension(c: &SymmetricCommutant, coords: &[usize]) -> usize {
    let n = c.basis.first().map_or(0, Mat::rows);
    let rows: Vec<Vec<crate::exactmath::Scalar>> = c
        .basis
        .iter()
        .map(|b| coords.iter().flat_map(|&i| coords.iter().filter(move |&&j| j >= i).map(move |&j| (i, j))).map(|(i, j)| b.entries()[i * n + j].clone()).collect())
        .collect();
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    Mat::from_rows(rows).map(|m| m.rank()).unwrap_or(0)
}

fn submatrix(x: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| x[(i, j)].clone())).collect();
    Mat::from_vec(rows.len(), cols.len(), data)
}

fn swap_conjugate(x: &[i64]) -> Vec<i64> {
    vec![x[3], x[2], x[1], x[0]]
}

/// Membership of an integer block in the subgroup named by a double-coset factor.
/// For 2×2 blocks the conjugate by the coordinate swap is also accepted.
pub fn double_coset_block_contains(n: usize, subgroup: &str, block: &Mat) -> Result<bool> {
    let Some(x) = block.to_i64_entries() else {
        return Ok(false);
    };
    match n {
        2 => {
            let g = CongruenceSubgroup::named(subgroup)?;
            Ok(g.contains_entries([x[0], x[1], x[2], x[3]]) || {
                let y = swap_conjugate(&x);
                g.contains_entries([y[0], y[1], y[2], y[3]])
            })
        }
        3 | 4 => {
            let set = match subgroup {
                "GL(3,Z)" | "GL(4,Z)" => BlockSet::GeneralLinear { k: n },
                "Gamma0(2)_3" => BlockSet::Gamma0Two3,
                "Gamma(2)_3" => BlockSet::GammaTwo3,
                _ => return Err(Error::UnknownName(subgroup.to_string())),
            };
            Ok(set.contains_entries(&x))
        }
        _ => Err(Error::UnknownName(subgroup.to_string())),
    }
}

/// Matrices of a finite group generated by `gens`, or `None` past `budget`.
fn finite_closure(gens: &[Mat], budget: usize) -> Option<usize> {
    let k = gens.first()?.rows();
    let mut elements = vec![Mat::identity(k)];
    let mut i = 0;
    while i < elements.len() {
        for a in gens {
            let p = &elements[i] * a;
            if !elements.contains(&p) {
                if elements.len() >= budget {
                    return None;
                }
                elements.push(p);
            }
        }
        i += 1;
    }
    Some(elements.len())
}

/// Double-coset shape of `R⁺ × H²/Γ⁺`.
pub fn double_coset_orbifold(subgroup: &str) -> Result<DoubleCosetOrbifold> {
    let g = CongruenceSubgroup::named(subgroup)?.positive();
    let table = standard_table(&g, DEFAULT_COSET_BUDGET)?;
    // every pairing is γ_i·g·γ_j⁻¹ for representatives γ and a single letter g
    let longest = table.representatives.iter().map(|w| w.letters.len()).max().unwrap_or(0);
    let domain = domain_for(&table, DEFAULT_PAIRING_WORD_LENGTH.max(2 * longest + 1))?;
    Ok(DoubleCosetOrbifold { subgroup: g.name().to_string(), index: table.index, invariants: orbifold_invariants(&domain)? })
}

/// Normalizer members in the original coordinates, or `None` when the
/// bounded enumeration exceeds its budget.
pub fn ambient_members(g: &CatalogEntry, bound: i64) -> Result<Option<Vec<Member>>> {
    match enumerate_members_with_budget(g, bound, DEFAULT_ENUMERATION_BUDGET) {
        Ok(ms) => ms
            .into_iter()
            .map(|m| Ok(Member { matrix: g.lattice.from_lattice_coords(&m.matrix)?, ..m }))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Err(Error::EnumerationBudgetExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Checks the factorization premises and computes the topology.
/// `members` are normalizer members in the original coordinates.
pub fn analyze(g: &CatalogEntry, expected: &ExpectedResults, members: Option<&[Mat]>) -> Result<ModuliAnalysis> {
    let n = g.dimension;
    let h = holonomy(g)?;
    let commutant = symmetric_commutant(&h);
    let factors = expected.moduli_expression.factors.clone();
    let expression_dim: usize = factors.iter().map(ModuliFactor::dimension).sum();
    let mut premises = vec![Premise::new(
        "dimension",
        commutant.dimension == expression_dim,
        format!("commutant dimension {} against factor dimension {}", commutant.dimension, expression_dim),
    )];

    // Double-coset factors take whole support components carrying all of Sym(k).
    let mut comps = support_components(n, &commutant);
    let mut dc_coords: Vec<Vec<usize>> = Vec::new();
    let mut block_ok = true;
    let mut detail = Vec::new();
    for f in &factors {
        if let ModuliFactor::DoubleCoset { n: k, .. } = f {
            let full = k * (k + 1) / 2;
            match comps.iter().position(|c| c.len() == *k && restricted_dimension(&commutant, c) == full) {
                Some(p) => {
                    detail.push(format!("{f} on coordinates {:?}", comps[p]));
                    dc_coords.push(comps.remove(p));
                }
                None => {
                    block_ok = false;
                    detail.push(format!("no full Sym({k}) component for {f}"));
                }
            }
        }
    }
    let used: BTreeSet<usize> = dc_coords.iter().flatten().copied().collect();
    let euclid: Vec<usize> = (0..n).filter(|i| !used.contains(i)).collect();
    let euclid_k: usize = factors.iter().map(|f| if let ModuliFactor::Euclidean { k } = f { *k } else { 0 }).sum();
    let euclid_dim = restricted_dimension(&commutant, &euclid);
    block_ok &= euclid_dim == euclid_k;
    detail.push(format!("remaining coordinates {euclid:?} carry commutant dimension {euclid_dim} for (R⁺)^{euclid_k}"));
    premises.push(Premise::new("commutant-blocks", block_ok, detail.join("; ")));

    let mut sample: Vec<Mat> = expected.normalizer_generators.clone();
    let enumerated = members.is_some();
    if let Some(ms) = members {
        sample.extend(ms.iter().cloned());
    }
    let scope = if enumerated {
        format!("{} listed generators and {} enumerated members", expected.normalizer_generators.len(), sample.len() - expected.normalizer_generators.len())
    } else {
        format!("{} listed generators (enumeration over budget)", sample.len())
    };

    // The normalizer respects the split and acts on the remaining coordinates
    // through a finite orthogonal group.
    let mut split_ok = true;
    let mut euclid_blocks = Vec::new();
    for x in &sample {
        for dc in &dc_coords {
            let others: Vec<usize> = (0..n).filter(|i| !dc.contains(i)).collect();
            if !submatrix(x, dc, &others).is_zero() || !submatrix(x, &others, dc).is_zero() {
                split_ok = false;
            }
        }
        if !euclid.is_empty() {
            euclid_blocks.push(submatrix(x, &euclid, &euclid));
        }
    }
    premises.push(Premise::new("block-diagonal-normalizer", split_ok, format!("checked on {scope}")));
    if !euclid.is_empty() {
        let orthogonal = euclid_blocks.iter().all(|b| (&b.transpose() * b).is_identity());
        let order = if orthogonal { finite_closure(&euclid_blocks, 1024) } else { None };
        premises.push(Premise::new(
            "finite-orthogonal-part",
            orthogonal && order.is_some(),
            match order {
                Some(o) => format!("restriction to {euclid:?} generates an orthogonal group of order {o}; {scope}"),
                None if orthogonal => "restriction generates more than 1024 elements".to_string(),
                None => format!("restriction to {euclid:?} is not orthogonal; {scope}"),
            },
        ));
    }

    let mut dc_ok = true;
    let mut dc_detail = Vec::new();
    let dc_factors: Vec<(usize, &String)> =
        factors.iter().filter_map(|f| if let ModuliFactor::DoubleCoset { n, subgroup, .. } = f { Some((*n, subgroup)) } else { None }).collect();
    for ((k, subgroup), coords) in dc_factors.iter().zip(&dc_coords) {
        let mut bad = None;
        for x in &sample {
            if !double_coset_block_contains(*k, subgroup, &submatrix(x, coords, coords))? {
                bad = Some(x.clone());
                break;
            }
        }
        match bad {
            Some(x) => {
                dc_ok = false;
                dc_detail.push(format!("{subgroup}: block of {x:?} is outside the subgroup"));
            }
            None => dc_detail.push(format!("{subgroup}: all blocks inside")),
        }
    }
    if !dc_factors.is_empty() {
        premises.push(Premise::new("double-coset-blocks", dc_ok, format!("{}; {scope}", dc_detail.join("; "))));
    }

    let mut orbifolds = Vec::new();
    let mut citation = None;
    let mut shape = Shape::default();
    for f in &factors {
        match f {
            ModuliFactor::Euclidean { k } => shape.euclidean += k,
            ModuliFactor::DoubleCoset { n: 2, subgroup, .. } => {
                let o = double_coset_orbifold(subgroup)?;
                shape.absorb(&Shape::of_double_coset(&o.invariants));
                orbifolds.push(o);
            }
            ModuliFactor::DoubleCoset { n, subgroup, .. } => {
                citation.get_or_insert_with(|| double_coset_citation(*n, subgroup));
            }
            ModuliFactor::PuncturedSurface { genus, punctures } => shape.surfaces.push((*genus, *punctures)),
            ModuliFactor::Circle => shape.circles += 1,
        }
    }
    let topology = Some(match citation {
        Some(c) => Topology::ExternalCitation(c),
        None => Topology::Known(shape),
    });
    Ok(ModuliAnalysis {
        expression: ModuliExpression { factors, teichmuller_dim: commutant.dimension, topology },
        premises,
        orbifolds,
        double_coset_coordinates: dc_coords,
        euclidean_coordinates: euclid,
    })
}

/// The moduli expression of `g`; `PremiseFailed` names the failing premises.
pub fn moduli_descriptor(g: &CatalogEntry) -> Result<ModuliExpression> {
    let expected = expected_results(&g.name)?;
    let members = ambient_members(g, DEFAULT_ENTRY_BOUND)?;
    let mats: Option<Vec<Mat>> = members.map(|ms| ms.into_iter().map(|m| m.matrix).collect());
    let a = analyze(g, &expected, mats.as_deref())?;
    let failed: Vec<String> = a.premises.iter().filter(|p| !p.holds).map(|p| format!("{}: {}", p.id, p.detail)).collect();
    if failed.is_empty() {
        Ok(a.expression)
    } else {
        Err(Error::PremiseFailed(failed.join(" | ")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// Computed value with no published claim to compare against.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub status: ClaimStatus,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entry: String,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != ClaimStatus::Fail)
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> Vec<&Claim> {
        self.claims.iter().filter(|c| c.status == ClaimStatus::Fail).collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.entry, if self.passed() { "pass" } else { "FAIL" })?;
        for c in &self.claims {
            let s = match c.status {
                ClaimStatus::Pass => "pass",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Computed => "info",
            };
            writeln!(f, "  [{s}] {}: {}", c.id, c.witness)?;
        }
        Ok(())
    }
}

struct Claims(Vec<Claim>);

impl Claims {
    fn check(&mut self, id: &str, ok: bool, witness: impl Into<String>) {
        let status = if ok { ClaimStatus::Pass } else { ClaimStatus::Fail };
        self.0.push(Claim { id: id.to_string(), status, witness: witness.into() });
    }

    fn info(&mut self, id: &str, witness: impl Into<String>) {
        self.0.push(Claim { id: id.to_string(), status: ClaimStatus::Computed, witness: witness.into() });
    }

    fn error(&mut self, id: &str, e: &Error) {
        self.check(id, false, format!("error: {e}"));
    }
}

fn verdict_matches(v: TopologyVerdict, t: &Topology) -> bool {
    match (v, t) {
        (TopologyVerdict::Contractible, Topology::Known(s)) => s.is_contractible(),
        (TopologyVerdict::CylinderType, Topology::Known(s)) => s.circles == 1 && s.surfaces.is_empty(),
        (TopologyVerdict::PuncturedSphereType, Topology::Known(s)) => s.circles == 0 && s.surfaces == [(0, 3)],
        (TopologyVerdict::ExternalCitation, Topology::ExternalCitation(_)) => true,
        _ => false,
    }
}

/// Runs every check for `g` and compares with the published answers.
pub fn verify_entry(g: &CatalogEntry) -> VerificationReport {
    let mut c = Claims(Vec::new());
    let expected = match expected_results(&g.name) {
        Ok(e) => e,
        Err(e) => {
            c.error("expected-results", &e);
            return VerificationReport { entry: g.name.clone(), claims: c.0 };
        }
    };
    let non_isometries: Vec<usize> =
        g.generators.iter().enumerate().filter(|(_, f)| !crate::affine::is_isometry(f)).map(|(i, _)| i).collect();
    c.check("isometries", non_isometries.is_empty(), format!("non-isometric generators {non_isometries:?}"));

    let h = match holonomy(g) {
        Ok(h) => h,
        Err(e) => {
            c.error("holonomy-order", &e);
            return VerificationReport { entry: g.name.clone(), claims: c.0 };
        }
    };
    c.check("holonomy-order", h.order() == g.holonomy_order, format!("computed {} listed {}", h.order(), g.holonomy_order));
    match lattice_is_exact(g) {
        Ok(ok) => c.check("lattice", ok, "products of generators with trivial linear part lie in the listed lattice"),
        Err(e) => c.error("lattice", &e),
    }
    match is_torsion_free(g) {
        Ok(ok) => c.check("torsion-free", ok, "no holonomy element lifts to a finite-order element"),
        Err(e) => c.error("torsion-free", &e),
    }
    if g.integral_rep.is_some() {
        match integral_rep_matches(g) {
            Ok(ok) => c.check("integral-representation", ok, "conjugation by (P, 0) reproduces the integral generators"),
            Err(e) => c.error("integral-representation", &e),
        }
    }

    let commutant = symmetric_commutant(&h);
    c.check(
        "teichmuller-dimension",
        commutant.dimension == expected.teichmuller_dim,
        format!("commutant dimension {} published {}", commutant.dimension, expected.teichmuller_dim),
    );
    if let Some(cone) = &expected.cone_description {
        let s: usize = cone.iter().map(|f| f.teichmuller_contribution()).sum();
        c.check("cone-description", s == commutant.dimension, format!("cone factors contribute {s}"));
    }
    let gens = h.generators();
    if gens.iter().all(|a| (&a.transpose() * a).is_identity()) {
        let alt = commuting_symmetric(g.dimension, &gens);
        let same = alt.dimension == commutant.dimension && alt.basis.iter().all(|s| commutant.contains(s));
        c.check("commutation-form-equivalence", same, format!("commuting symmetric matrices span dimension {}", alt.dimension));
    }

    let mut failing = Vec::new();
    for x in &expected.normalizer_generators {
        match normalizer_membership(x, g) {
            Ok(v) if v.member => {}
            Ok(_) => failing.push(format!("{x:?}")),
            Err(e) => failing.push(format!("{x:?} ({e})")),
        }
    }
    c.check(
        "normalizer-generators",
        failing.is_empty(),
        if failing.is_empty() {
            format!("all {} listed generators are members", expected.normalizer_generators.len())
        } else {
            format!("non-members: {}", failing.join(", "))
        },
    );

    let members = match ambient_members(g, DEFAULT_ENTRY_BOUND) {
        Ok(m) => m,
        Err(e) => {
            c.error("normalizer-enumeration", &e);
            None
        }
    };
    match &members {
        Some(ms) => c.info("normalizer-enumeration", format!("{} members with lattice-coordinate entries in [-2, 2]", ms.len())),
        None => c.info("normalizer-enumeration", "skipped: candidate count exceeds the enumeration budget"),
    }

    if let Some(p) = &expected.normalizer_predicate {
        match &members {
            Some(ms) => {
                let outside: Vec<&Mat> = ms.iter().map(|m| &m.matrix).filter(|x| !p.contains(x)).collect();
                let mut missing = Vec::new();
                if let Some(listed) = p.enumerate(DEFAULT_ENTRY_BOUND, DEFAULT_ENUMERATION_BUDGET) {
                    let found: BTreeSet<Vec<i64>> = ms.iter().filter_map(|m| m.matrix.to_i64_entries()).collect();
                    for x in listed {
                        let in_bound = g
                            .lattice
                            .to_lattice_coords(&x)
                            .ok()
                            .and_then(|y| y.to_i64_entries())
                            .is_some_and(|e| e.iter().all(|v| v.abs() <= DEFAULT_ENTRY_BOUND));
                        if in_bound && !found.contains(&x.to_i64_entries().unwrap_or_default()) {
                            missing.push(x);
                        }
                    }
                }
                let ok = outside.is_empty() && missing.is_empty();
                let witness = if ok {
                    format!("{} members match {} within the bound", ms.len(), p.name)
                } else {
                    let first_out = outside.first().map(|x| format!("{x:?}")).unwrap_or_default();
                    let first_missing = missing.first().map(|x| format!("{x:?}")).unwrap_or_default();
                    format!(
                        "{} members outside {}, {} predicate matrices not members; first outside: {first_out}; first missing: {first_missing}",
                        outside.len(),
                        p.name,
                        missing.len()
                    )
                };
                c.check("normalizer-predicate", ok, witness);
            }
            None => c.info("normalizer-predicate", format!("{}: enumeration over budget, listed generators only", p.name)),
        }
    }

    if let Some(s) = expected.semidirect {
        let computed = if g.holonomy_generators().is_empty() {
            Some((true, "no holonomy generators".to_string()))
        } else {
            members.as_ref().map(|ms| match ms.iter().find(|m| !m.zero_translation_works) {
                None => (true, format!("all {} members lift with zero translation", ms.len())),
                Some(m) => (false, format!("{:?} needs a nonzero translation", m.matrix)),
            })
        };
        match computed {
            Some((v, w)) => c.check("semidirect", v == s, format!("computed {v}, published {s}; {w}")),
            None => c.info("semidirect", "enumeration over budget"),
        }
    }

    let mats: Option<Vec<Mat>> = members.map(|ms| ms.into_iter().map(|m| m.matrix).collect());
    match analyze(g, &expected, mats.as_deref()) {
        Ok(a) => {
            for p in &a.premises {
                c.check(&format!("premise:{}", p.id), p.holds, p.detail.clone());
            }
            for o in &a.orbifolds {
                c.info(
                    &format!("double-coset:{}", o.subgroup),
                    format!(
                        "index {}, genus {}, {} cusps, cone orders {:?}: {}",
                        o.index, o.invariants.genus, o.invariants.cusps, o.invariants.cone_points, o.invariants.classification
                    ),
                );
            }
            let e = &a.expression;
            c.check(
                "moduli-dimension",
                e.factor_dimension() == e.teichmuller_dim,
                format!("{e}: factor dimension {} against {}", e.factor_dimension(), e.teichmuller_dim),
            );
            let computed = e.topology.clone().expect("topology is always computed");
            match &expected.moduli_expression.topology {
                Some(t) => c.check("topology", *t == computed, format!("computed {computed} ({}), published {t}", computed.tag())),
                None => c.info("topology", format!("computed {computed} ({})", computed.tag())),
            }
            if let Some(v) = expected.topology_verdict {
                c.check("topology-verdict", verdict_matches(v, &computed), format!("{v:?} against {}", computed.tag()));
            }
        }
        Err(e) => c.error("moduli", &e),
    }
    VerificationReport { entry: g.name.clone(), claims: c.0 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::load_group;

    #[test]
    fn factor_dimensions() {
        assert_eq!(ModuliFactor::DoubleCoset { n: 2, subgroup: "Gamma0(2)".into(), decoration: None }.dimension(), 3);
        assert_eq!(ModuliFactor::DoubleCoset { n: 3, subgroup: "GL(3,Z)".into(), decoration: None }.dimension(), 6);
        assert_eq!(ModuliFactor::DoubleCoset { n: 4, subgroup: "GL(4,Z)".into(), decoration: None }.dimension(), 10);
        assert_eq!(ModuliFactor::Euclidean { k: 3 }.dimension(), 3);
    }

    #[test]
    fn shapes_render() {
        assert_eq!(Shape { circles: 1, euclidean: 3, surfaces: vec![] }.to_string(), "S¹ × R³");
        assert_eq!(Shape { circles: 0, euclidean: 2, surfaces: vec![(0, 3)] }.to_string(), "R² × S²∖{3 points}");
        assert_eq!(Topology::Known(Shape::euclidean(3)).tag(), "contractible");
        assert_eq!(Topology::ExternalCitation("x".into()).tag(), "unresolved-external-citation");
    }

    #[test]
    fn double_coset_shapes() {
        let s = |name: &str| Shape::of_double_coset(&double_coset_orbifold(name).unwrap().invariants);
        assert_eq!(s("Gamma0(2)"), Shape { circles: 1, euclidean: 2, surfaces: vec![] });
        assert_eq!(s("GL(2,Z)"), Shape::euclidean(3));
        assert_eq!(s("Gamma(2)"), Shape { circles: 0, euclidean: 1, surfaces: vec![(0, 3)] });
    }

    #[test]
    fn descriptors() {
        let g3 = moduli_descriptor(&load_group("G3").unwrap()).unwrap();
        assert_eq!(g3.factors, vec![ModuliFactor::Euclidean { k: 2 }]);
        assert_eq!(g3.topology.unwrap().tag(), "contractible");
        let b1 = moduli_descriptor(&load_group("B1").unwrap()).unwrap();
        assert_eq!(b1.topology, Some(Topology::Known(Shape { circles: 1, euclidean: 3, surfaces: vec![] })));
    }

    #[test]
    fn b1_report_passes() {
        let r = verify_entry(&load_group("B1").unwrap());
        assert!(r.passed(), "{r}");
    }
}
