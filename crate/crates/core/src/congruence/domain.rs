//! Fundamental domains `∪ γ_i F` built from a coset table, with exact vertices,
//! side pairings and the invariants of the glued orbifold.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_complex::Complex64;
use serde::Serialize;

use super::cosets::{CosetTable, Letter, Word};
use super::subgroup::{inv, mul, neg, projective, CongruenceSubgroup, M2, ID, S, T};
use crate::error::{Error, Result};

pub const DEFAULT_PAIRING_WORD_LENGTH: usize = 8;

/// Vertices of the standard domain `F`: the cusp `∞`, `ρ = e^{2πi/3}` and `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Base {
    Inf,
    Rho,
    I,
}

impl Base {
    fn stabilizer(self) -> Vec<M2> {
        const ST: M2 = [0, -1, 1, 1];
        match self {
            Base::Inf => vec![ID],
            Base::I => vec![ID, S],
            Base::Rho => vec![ID, ST, mul(&ST, &ST)],
        }
    }

    pub fn numeric(self) -> Option<Complex64> {
        match self {
            Base::Inf => None,
            Base::Rho => Some(Complex64::new(-0.5, 3f64.sqrt() / 2.0)),
            Base::I => Some(Complex64::new(0.0, 1.0)),
        }
    }
}

/// The Möbius image `M·p` of a base vertex.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExactPoint {
    pub matrix: M2,
    pub base: Base,
}

/// A canonical key: equal keys iff equal points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointKey(Base, M2);

impl ExactPoint {
    pub fn new(matrix: M2, base: Base) -> Self {
        ExactPoint { matrix, base }
    }

    pub fn key(&self) -> PointKey {
        let m = self.matrix;
        match self.base {
            // M·∞ = a/c.
            Base::Inf => {
                let (a, c) = if m[2] < 0 || (m[2] == 0 && m[0] < 0) { (-m[0], -m[2]) } else { (m[0], m[2]) };
                PointKey(Base::Inf, [a, c, 0, 0])
            }
            b => {
                let best = b.stabilizer().into_iter().flat_map(|s| {
                    let x = mul(&m, &s);
                    [x, neg(&x)]
                });
                PointKey(b, best.min().expect("nonempty stabilizer"))
            }
        }
    }

    pub fn same_as(&self, other: &ExactPoint) -> bool {
        self.key() == other.key()
    }

    pub fn moved_by(&self, g: &M2) -> ExactPoint {
        ExactPoint { matrix: mul(g, &self.matrix), base: self.base }
    }

    /// Numeric position; `None` for the cusp at infinity, real for finite cusps.
    pub fn numeric(&self) -> Option<Complex64> {
        let [a, b, c, d] = self.matrix.map(|e| e as f64);
        match self.base.numeric() {
            None => (c != 0.0).then(|| Complex64::new(a / c, 0.0)),
            Some(z) => Some((a * z + b) / (c * z + d)),
        }
    }

    pub fn is_cusp(&self) -> bool {
        self.base == Base::Inf
    }
}

impl PartialEq for ExactPoint {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeTag {
    Left,
    Right,
    ArcLeft,
    ArcRight,
}

impl EdgeTag {
    pub const ALL: [EdgeTag; 4] = [EdgeTag::Left, EdgeTag::Right, EdgeTag::ArcLeft, EdgeTag::ArcRight];
}

#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub word: String,
    pub matrix: M2,
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub id: usize,
    pub cell: usize,
    pub tag: EdgeTag,
    pub from: ExactPoint,
    pub to: ExactPoint,
    pub internal: bool,
}

impl Edge {
    fn key(&self) -> (PointKey, PointKey) {
        let (a, b) = (self.from.key(), self.to.key());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// `matrix` maps edge `source` onto edge `target`.
#[derive(Clone, Debug, Serialize)]
pub struct Pairing {
    pub source: usize,
    pub target: usize,
    pub matrix: M2,
    pub word: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FundamentalDomain {
    pub subgroup: CongruenceSubgroup,
    pub cells: Vec<Cell>,
    pub edges: Vec<Edge>,
    pub pairings: Vec<Pairing>,
}

fn cell_edges(g: &M2) -> [(EdgeTag, ExactPoint, ExactPoint); 4] {
    let gt = mul(g, &T);
    [
        (EdgeTag::Left, ExactPoint::new(*g, Base::Rho), ExactPoint::new(*g, Base::Inf)),
        (EdgeTag::Right, ExactPoint::new(gt, Base::Rho), ExactPoint::new(*g, Base::Inf)),
        (EdgeTag::ArcLeft, ExactPoint::new(*g, Base::Rho), ExactPoint::new(*g, Base::I)),
        (EdgeTag::ArcRight, ExactPoint::new(*g, Base::I), ExactPoint::new(gt, Base::Rho)),
    ]
}

/// Lays out `γ_i F` for the representatives of `table`. Representatives that
/// agree up to sign in `±Γ` act identically on H² and are kept once.
pub fn build_domain(table: &CosetTable) -> FundamentalDomain {
    let g = table.subgroup.positive();
    let mut cells: Vec<Cell> = Vec::new();
    for w in &table.representatives {
        let dup = cells.iter().any(|c| g.contains_projective(&mul(&w.matrix, &inv(&c.matrix))));
        if !dup {
            cells.push(Cell { word: w.to_string(), matrix: w.matrix });
        }
    }
    let mut edges = Vec::new();
    for (ci, c) in cells.iter().enumerate() {
        for (tag, from, to) in cell_edges(&c.matrix) {
            edges.push(Edge { id: edges.len(), cell: ci, tag, from, to, internal: false });
        }
    }
    let mut count: HashMap<(PointKey, PointKey), usize> = HashMap::new();
    for e in &edges {
        *count.entry(e.key()).or_default() += 1;
    }
    for e in &mut edges {
        e.internal = count[&e.key()] > 1;
    }
    FundamentalDomain { subgroup: g, cells, edges, pairings: Vec::new() }
}

/// Elements of `±Γ` other than `±I` given by words of length at most `max_len`,
/// shortest first, one word per element up to sign.
fn candidate_elements(g: &CongruenceSubgroup, max_len: usize) -> Vec<Word> {
    let mut seen: HashSet<M2> = HashSet::from([projective(&ID)]);
    let mut frontier = vec![Word::identity()];
    let mut out = Vec::new();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::ALL {
                let x = w.extend(l);
                let key = projective(&x.matrix);
                if !seen.insert(key) {
                    continue;
                }
                if g.contains_projective(&x.matrix) {
                    out.push(x.clone());
                }
                next.push(x);
            }
        }
        frontier = next;
    }
    out
}

/// Finds, for every boundary edge, an element of `Γ` mapping it onto another
/// boundary edge, using exact endpoint tests.
pub fn find_side_pairings(domain: &FundamentalDomain, max_word_length: usize) -> Result<FundamentalDomain> {
    let boundary: Vec<&Edge> = domain.edges.iter().filter(|e| !e.internal).collect();
    let by_key: HashMap<(PointKey, PointKey), usize> = boundary.iter().map(|e| (e.key(), e.id)).collect();
    let candidates = candidate_elements(&domain.subgroup, max_word_length);
    let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pairings = Vec::new();
    for e in &boundary {
        if partner.contains_key(&e.id) {
            continue;
        }
        let found = candidates.iter().find_map(|w| {
            let (a, b) = (e.from.moved_by(&w.matrix).key(), e.to.moved_by(&w.matrix).key());
            let k = if a <= b { (a, b) } else { (b, a) };
            by_key.get(&k).filter(|t| **t != e.id && !partner.contains_key(t)).map(|t| (*t, w))
        });
        let (t, w) = found.ok_or(Error::PairingIncomplete(max_word_length))?;
        partner.insert(e.id, t);
        partner.insert(t, e.id);
        pairings.push(Pairing { source: e.id, target: t, matrix: w.matrix, word: w.to_string() });
    }
    Ok(FundamentalDomain { pairings, ..domain.clone() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SurfaceClass {
    OncePuncturedSphere,
    Cylinder,
    ThreePuncturedSphere,
    Other { genus: usize, cusps: usize },
}

impl std::fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceClass::OncePuncturedSphere => f.write_str("once-punctured-sphere"),
            SurfaceClass::Cylinder => f.write_str("cylinder"),
            SurfaceClass::ThreePuncturedSphere => f.write_str("3-punctured-sphere"),
            SurfaceClass::Other { genus, cusps } => write!(f, "other(g={genus}, c={cusps})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbifoldInvariants {
    pub genus: usize,
    pub cusps: usize,
    pub cone_points: Vec<usize>,
    pub classification: SurfaceClass,
    pub euler_characteristic: i64,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Glues the domain along its pairings and reads off the quotient orbifold.
pub fn orbifold_invariants(domain: &FundamentalDomain) -> Result<OrbifoldInvariants> {
    let boundary = domain.edges.iter().filter(|e| !e.internal).count();
    if 2 * domain.pairings.len() != boundary {
        return Err(Error::InconsistentGluing(format!("{} pairings for {} boundary edges", domain.pairings.len(), boundary)));
    }
    let mut ids: BTreeMap<PointKey, usize> = BTreeMap::new();
    for e in &domain.edges {
        for p in [e.from, e.to] {
            let n = ids.len();
            ids.entry(p.key()).or_insert(n);
        }
    }
    let mut uf = UnionFind((0..ids.len()).collect());
    for p in &domain.pairings {
        let (s, t) = (&domain.edges[p.source], &domain.edges[p.target]);
        for q in [s.from, s.to] {
            let image = q.moved_by(&p.matrix).key();
            let target_ok = image == t.from.key() || image == t.to.key();
            if !target_ok {
                return Err(Error::InconsistentGluing(format!("pairing {} does not map edge {} onto edge {}", p.word, s.id, t.id)));
            }
            uf.union(ids[&q.key()], ids[&image]);
        }
    }
    let mut corners: BTreeMap<usize, (Base, usize)> = BTreeMap::new();
    for c in &domain.cells {
        let gt = mul(&c.matrix, &T);
        for p in [ExactPoint::new(c.matrix, Base::Rho), ExactPoint::new(gt, Base::Rho), ExactPoint::new(c.matrix, Base::I)] {
            let class = uf.find(ids[&p.key()]);
            let entry = corners.entry(class).or_insert((p.base, 0));
            if entry.0 != p.base {
                return Err(Error::InconsistentGluing("vertex class mixes base types".into()));
            }
            entry.1 += 1;
        }
    }
    let mut cone_points = Vec::new();
    for (base, k) in corners.values() {
        // Corner angles: π/3 at ρ-type vertices, π at i-type vertices.
        let full = if *base == Base::Rho { 6 } else { 2 };
        if *k == 0 || full % k != 0 {
            return Err(Error::InconsistentGluing(format!("{k} corners at a {base:?} vertex")));
        }
        if full / k > 1 {
            cone_points.push(full / k);
        }
    }
    cone_points.sort_unstable();
    let mut cusp_classes = HashSet::new();
    for (key, id) in &ids {
        if key.0 == Base::Inf {
            cusp_classes.insert(uf.find(*id));
        }
    }
    let cusps = cusp_classes.len();
    let internal = domain.edges.iter().filter(|e| e.internal).count() / 2;
    let edges = internal + domain.pairings.len();
    let chi = corners.len() as i64 - edges as i64 + domain.cells.len() as i64;
    let twice_genus = 2 - cusps as i64 - chi;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::InconsistentGluing(format!("Euler characteristic {chi} with {cusps} cusps")));
    }
    let genus = (twice_genus / 2) as usize;
    let classification = match (genus, cusps) {
        (0, 1) => SurfaceClass::OncePuncturedSphere,
        (0, 2) => SurfaceClass::Cylinder,
        (0, 3) => SurfaceClass::ThreePuncturedSphere,
        (genus, cusps) => SurfaceClass::Other { genus, cusps },
    };
    Ok(OrbifoldInvariants { genus, cusps, cone_points, classification, euler_characteristic: chi })
}

/// Index, domain and pairings in one step.
pub fn domain_for(table: &CosetTable, max_word_length: usize) -> Result<FundamentalDomain> {
    find_side_pairings(&build_domain(table), max_word_length)
}

/// `true` iff `g` maps some boundary edge exactly onto a boundary edge of the domain.
pub fn is_edge_pairing(domain: &FundamentalDomain, g: &M2) -> bool {
    let boundary: Vec<&Edge> = domain.edges.iter().filter(|e| !e.internal).collect();
    let keys: HashSet<(PointKey, PointKey)> = boundary.iter().map(|e| e.key()).collect();
    boundary.iter().any(|e| {
        let (a, b) = (e.from.moved_by(g).key(), e.to.moved_by(g).key());
        keys.contains(&if a <= b { (a, b) } else { (b, a) })
    })
}

#[cfg(test)]
mod tests {
    use super::super::cosets::coset_enumerate;
    use super::*;

    fn domain(name: &str) -> FundamentalDomain {
        let t = coset_enumerate(&CongruenceSubgroup::named(name).unwrap(), 256).unwrap();
        domain_for(&t, 8).unwrap()
    }

    #[test]
    fn point_equality_uses_stabilizers() {
        let st: M2 = [0, -1, 1, 1];
        assert!(ExactPoint::new(st, Base::Rho).same_as(&ExactPoint::new(ID, Base::Rho)));
        assert!(ExactPoint::new(S, Base::I).same_as(&ExactPoint::new(ID, Base::I)));
        assert!(ExactPoint::new(T, Base::Inf).same_as(&ExactPoint::new(ID, Base::Inf)));
        assert!(!ExactPoint::new(T, Base::Rho).same_as(&ExactPoint::new(ID, Base::Rho)));
        // S·ρ = ρ + 1.
        assert!(ExactPoint::new(S, Base::Rho).same_as(&ExactPoint::new(T, Base::Rho)));
        let z = ExactPoint::new(T, Base::Rho).numeric().unwrap();
        assert!((z - Complex64::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn modular_group_domain() {
        let d = domain("SL(2,Z)");
        assert_eq!(d.cells.len(), 1);
        assert_eq!(d.pairings.len(), 2);
        let mats: Vec<M2> = d.pairings.iter().map(|p| projective(&p.matrix)).collect();
        assert!(mats.contains(&projective(&S)));
        assert!(mats.contains(&T) || mats.contains(&projective(&inv(&T))));
        let inv = orbifold_invariants(&d).unwrap();
        assert_eq!((inv.genus, inv.cusps, inv.cone_points.clone()), (0, 1, vec![2, 3]));
        assert_eq!(inv.classification, SurfaceClass::OncePuncturedSphere);
    }

    #[test]
    fn gamma0_2_is_a_cylinder() {
        let d = domain("Gamma0(2)+");
        assert_eq!(d.cells.len(), 3);
        let inv = orbifold_invariants(&d).unwrap();
        assert_eq!(inv.classification, SurfaceClass::Cylinder);
        assert_eq!(inv.cone_points, vec![2]);
    }

    #[test]
    fn gamma2_is_a_three_punctured_sphere() {
        let d = domain("Gamma(2)+");
        assert_eq!(d.cells.len(), 6);
        let inv = orbifold_invariants(&d).unwrap();
        assert_eq!(inv.classification, SurfaceClass::ThreePuncturedSphere);
        assert!(inv.cone_points.is_empty());
    }

    fn has_pairing(d: &FundamentalDomain, m: M2) -> bool {
        d.pairings.iter().any(|p| projective(&p.matrix) == projective(&m) || projective(&p.matrix) == projective(&inv(&m)))
    }

    #[test]
    fn expected_pairings_found() {
        let d = domain("Gamma0(2)+");
        for m in [T, [1, 0, -2, 1], [-1, -1, 2, 1]] {
            assert!(is_edge_pairing(&d, &m), "{m:?}");
            assert!(has_pairing(&d, m), "{m:?}");
        }
        let g = CongruenceSubgroup::named("Gamma(2)+").unwrap();
        let t = CosetTable::from_words(&g, &["Id", "S", "ST", "T", "TS", "TST^-1"]).unwrap();
        let d = domain_for(&t, 8).unwrap();
        for m in [[1, 2, 0, 1], [1, 0, -2, 1], [-3, 2, -2, 1]] {
            assert!(is_edge_pairing(&d, &m), "{m:?}");
            assert!(has_pairing(&d, m), "{m:?} not in {:?}", d.pairings);
        }
    }

    #[test]
    fn short_search_fails() {
        let t = coset_enumerate(&CongruenceSubgroup::named("Gamma(2)+").unwrap(), 256).unwrap();
        assert!(matches!(domain_for(&t, 1), Err(Error::PairingIncomplete(1))));
    }
}
