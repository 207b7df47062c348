//! Membership in the matrix normalizer `N_π`, bounded enumeration of its
//! members and the semidirect-product test.
//!
//! `X` lies in `N_π` when `X` normalizes the holonomy, preserves the lattice and
//! some translation `x` makes `γ = (X, x)` satisfy `γπγ⁻¹ = π`. Writing
//! `B = XAX⁻¹` and `C = X⁻¹AX` for a generator `(A, v)`, the two inclusions are
//!
//! ```text
//! (I − B) x ≡ b_B − X v      (mod Λ)
//! (A − I) x ≡ X b_C − v      (mod Λ)
//! ```
//!
//! where `b_h` is the translation of the lift of `h` into `π`.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::affine::{compose, AffineMap};
use crate::bieberbach::{contains_element, holonomy, holonomy_lifts, normalizes, HolonomyGroup};
use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::exactmath::{
    solve_mixed_congruence, vec_sub, CongruenceBlock, CongruenceSystem, LatticeBasis, Mat, PreparedCongruence, Scalar,
    Vector,
};

pub const DEFAULT_ENTRY_BOUND: i64 = 2;
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HolonomyAction {
    pub generator: Mat,
    pub image: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerVerdict {
    pub member: bool,
    /// An `x` with `(X, x)` in the affine normalizer of `π`.
    pub witness_translation: Option<Vector>,
    pub zero_translation_works: bool,
    pub holonomy_action: Vec<HolonomyAction>,
}

/// `X A X⁻¹ ∈ H` for every `A ∈ H`.
pub fn normalizes_holonomy(x: &Mat, h: &HolonomyGroup) -> Result<bool> {
    if x.rows() != h.dim() || !x.is_square() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: x.rows() });
    }
    if x.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    normalizes(x, h)
}

fn check_lattice(x: &Mat, lattice: &LatticeBasis) -> Result<()> {
    let y = lattice.to_lattice_coords(x)?;
    if !y.is_integral() || !y.det()?.abs().is_one() {
        return Err(Error::DoesNotPreserveLattice);
    }
    Ok(())
}

/// Decides `X ∈ N_π` for `X` in the original coordinates of `g`.
pub fn normalizer_membership(x: &Mat, g: &CatalogEntry) -> Result<NormalizerVerdict> {
    let n = g.dimension;
    if x.rows() != n || x.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.rows() });
    }
    if x.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    check_lattice(x, &g.lattice)?;
    let h = holonomy(g)?;
    let xinv = x.inverse()?;
    let gens = g.holonomy_generators();
    let holonomy_action: Vec<HolonomyAction> = gens
        .iter()
        .map(|a| Ok(HolonomyAction { generator: a.linear.clone(), image: x.try_mul(&a.linear.try_mul(&xinv)?)? }))
        .collect::<Result<_>>()?;
    if !normalizes(x, &h)? {
        return Ok(NormalizerVerdict { member: false, witness_translation: None, zero_translation_works: false, holonomy_action });
    }
    if gens.is_empty() {
        return Ok(NormalizerVerdict {
            member: true,
            witness_translation: Some(vec![Scalar::zero(); n]),
            zero_translation_works: true,
            holonomy_action,
        });
    }
    let lifts = holonomy_lifts(g, &h)?;
    let id = Mat::identity(n);
    let mut blocks = Vec::with_capacity(2 * gens.len());
    for (a, act) in gens.iter().zip(&holonomy_action) {
        let j = h.index_of(&act.image).ok_or(Error::NotInHolonomy)?;
        blocks.push(CongruenceBlock {
            matrix: id.try_sub(&act.image)?,
            offset: vec_sub(&lifts[j].translation, &x.mul_vec(&a.translation)),
            lattice: g.lattice.clone(),
        });
        let c = xinv.try_mul(&a.linear.try_mul(x)?)?;
        let k = h.index_of(&c).ok_or(Error::NotInHolonomy)?;
        blocks.push(CongruenceBlock {
            matrix: a.linear.try_sub(&id)?,
            offset: vec_sub(&x.mul_vec(&lifts[k].translation), &a.translation),
            lattice: g.lattice.clone(),
        });
    }
    let report = solve_mixed_congruence(&CongruenceSystem { blocks })?;
    Ok(NormalizerVerdict {
        member: report.solvable,
        witness_translation: report.witness,
        zero_translation_works: report.zero_is_witness,
        holonomy_action,
    })
}

/// [`normalizer_membership`] for `Y` given in lattice coordinates.
pub fn normalizer_membership_lattice(y: &Mat, g: &CatalogEntry) -> Result<NormalizerVerdict> {
    normalizer_membership(&g.lattice.from_lattice_coords(y)?, g)
}

/// `γπγ⁻¹ ⊂ π` and `γ⁻¹πγ ⊂ π` for `γ = (X, x)`, checked on every generator.
pub fn conjugation_check(g: &CatalogEntry, x: &Mat, translation: &[Scalar]) -> Result<bool> {
    let gamma = AffineMap::new(x.clone(), translation.to_vec())?;
    let inv = gamma.inverse()?;
    for f in &g.generators {
        let fwd = compose(&compose(&gamma, f)?, &inv)?;
        let back = compose(&compose(&inv, f)?, &gamma)?;
        if !contains_element(g, &fwd)? || !contains_element(g, &back)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An enumerated member in lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub matrix: Mat,
    pub zero_translation_works: bool,
}

fn det_i64(m: &[i64], n: usize) -> i64 {
    match n {
        0 => return 1,
        1 => return m[0],
        2 => return m[0] * m[3] - m[1] * m[2],
        3 => {
            return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6])
                + m[2] * (m[3] * m[7] - m[4] * m[6])
        }
        4 => {
            // Laplace expansion along the first two rows.
            let lo = |i: usize, j: usize| m[i] * m[4 + j] - m[j] * m[4 + i];
            let hi = |i: usize, j: usize| m[8 + i] * m[12 + j] - m[8 + j] * m[12 + i];
            return lo(0, 1) * hi(2, 3) - lo(0, 2) * hi(1, 3) + lo(0, 3) * hi(1, 2) + lo(1, 2) * hi(0, 3)
                - lo(1, 3) * hi(0, 2)
                + lo(2, 3) * hi(0, 1);
        }
        _ => {}
    }
    let mut a = [0i64; 36];
    a[..n * n].copy_from_slice(&m[..n * n]);
    let mut sign = 1;
    let mut prev = 1i64;
    for k in 0..n.saturating_sub(1) {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            for c in 0..n {
                a.swap(k * n + c, r * n + c);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign * a[n * n - 1]
}

/// Integer solution template of `Y A_i = B_i Y`: pivots as integer combinations
/// of the free entries divided by a common denominator.
struct Template {
    free: Vec<usize>,
    pivots: Vec<(usize, Vec<i64>, i64)>,
}

fn split_rows(coeffs: &[Scalar]) -> [Vec<Scalar>; 2] {
    [
        coeffs.iter().map(|s| Scalar::from_rational(s.rational_part().clone())).collect(),
        coeffs.iter().map(|s| Scalar::from_rational(s.sqrt3_part().clone())).collect(),
    ]
}

fn template(n: usize, pairs: &[(Mat, Mat)]) -> Option<Template> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, b) in pairs {
        for r in 0..n {
            for c in 0..n {
                let mut coef = vec![Scalar::zero(); n * n];
                for k in 0..n {
                    coef[r * n + k] = &coef[r * n + k] + &a[(k, c)];
                    coef[k * n + c] = &coef[k * n + c] - &b[(r, k)];
                }
                for part in split_rows(&coef) {
                    if part.iter().any(|s| !s.is_zero()) {
                        rows.push(part);
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return Some(Template { free: (0..n * n).collect(), pivots: Vec::new() });
    }
    let (r, pivot_cols) = Mat::from_rows(rows).ok()?.rref();
    let free: Vec<usize> = (0..n * n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut pivots = Vec::new();
    for (i, &p) in pivot_cols.iter().enumerate() {
        let coeffs: Vec<_> = free.iter().map(|&f| r[(i, f)].to_rational().cloned()).collect::<Option<Vec<_>>>()?;
        let den = coeffs.iter().fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let ints = coeffs.iter().map(|q| (-(q * &den)).to_integer().to_i64()).collect::<Option<Vec<_>>>()?;
        pivots.push((p, ints, den.to_i64()?));
    }
    Some(Template { free, pivots })
}

/// Rational vector as numerators over `den`, if the denominators divide it.
fn scaled_numerators(v: &[Scalar], den: &num_bigint::BigInt) -> Option<Vec<i128>> {
    v.iter()
        .map(|s| {
            let q = s.to_rational()?;
            let x = q * num_rational::BigRational::from_integer(den.clone());
            if x.is_integer() {
                x.to_integer().to_i128()
            } else {
                None
            }
        })
        .collect()
}

/// Holonomy data of `g` in lattice coordinates.
struct LatticeData {
    n: usize,
    h: HolonomyGroup,
    /// Lattice coordinates of each holonomy element.
    elements: Vec<Mat>,
    /// Lift translation of each element, lattice coordinates.
    bases: Vec<Vector>,
    /// Holonomy generators as (element index, translation in lattice coordinates).
    gens: Vec<(usize, Vector)>,
    distinct: Vec<usize>,
    mult: Vec<Vec<usize>>,
}

impl LatticeData {
    fn new(g: &CatalogEntry) -> Result<Self> {
        let h = holonomy(g)?;
        let lifts = holonomy_lifts(g, &h)?;
        let l = &g.lattice;
        let elements = h.elements.iter().map(|a| l.to_lattice_coords(a)).collect::<Result<Vec<_>>>()?;
        let bases = lifts.iter().map(|f| l.coordinates(&f.translation)).collect::<Result<Vec<_>>>()?;
        let gens = g
            .holonomy_generators()
            .iter()
            .map(|f| Ok((h.index_of(&f.linear).ok_or(Error::NotInHolonomy)?, l.coordinates(&f.translation)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut distinct: Vec<usize> = gens.iter().map(|(i, _)| *i).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let mult = (0..h.order())
            .map(|i| {
                distinct
                    .iter()
                    .map(|&d| h.index_of(&(&h.elements[i] * &h.elements[d])).ok_or(Error::NotInHolonomy))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticeData { n: g.dimension, h, elements, bases, gens, distinct, mult })
    }

    /// The map on holonomy indices induced by sending `distinct[k]` to
    /// `images[k]`, when it is a well defined bijection.
    fn induced(&self, images: &[usize]) -> Option<Vec<usize>> {
        let ord = self.h.order();
        let mut phi: Vec<Option<usize>> = vec![None; ord];
        phi[0] = Some(0);
        let mut queue = vec![0usize];
        let mut qi = 0;
        while qi < queue.len() {
            let i = queue[qi];
            qi += 1;
            let pi = phi[i].expect("visited");
            for (k, &img) in images.iter().enumerate() {
                let j = self.mult[i][k];
                let target = self.h.index_of(&(&self.h.elements[pi] * &self.h.elements[img]))?;
                match phi[j] {
                    None => {
                        phi[j] = Some(target);
                        queue.push(j);
                    }
                    Some(t) if t != target => return None,
                    Some(_) => {}
                }
            }
        }
        let phi: Vec<usize> = phi.into_iter().collect::<Option<_>>()?;
        let mut seen = vec![false; ord];
        for &p in &phi {
            if std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(phi)
    }

    fn image_choices(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for &d in &self.distinct {
            let ord = self.h.element_order(d);
            let options: Vec<usize> = (1..self.h.order()).filter(|&j| self.h.element_order(j) == ord).collect();
            out = out.into_iter().flat_map(|p| options.iter().map(move |&o| [p.clone(), vec![o]].concat())).collect();
        }
        out
    }
}

struct Case {
    template: Template,
    phi: Vec<usize>,
    inverse: Vec<usize>,
    prepared: Option<PreparedCongruence>,
}

/// All `Y` in lattice coordinates with entries in `[−bound, bound]`, `det Y = ±1`
/// and `L Y L⁻¹ ∈ N_π`, in lexicographic order of their entries.
pub fn enumerate_members(g: &CatalogEntry, bound: i64) -> Result<Vec<Mat>> {
    Ok(enumerate_members_with_budget(g, bound, DEFAULT_ENUMERATION_BUDGET)?.into_iter().map(|m| m.matrix).collect())
}

pub fn enumerate_members_with_budget(g: &CatalogEntry, bound: i64, budget: u128) -> Result<Vec<Member>> {
    let data = LatticeData::new(g)?;
    let n = data.n;
    let id = Mat::identity(n);
    let width = (2 * bound + 1) as u128;
    let mut cases = Vec::new();
    let mut total: u128 = 0;
    for images in data.image_choices() {
        let Some(phi) = data.induced(&images) else {
            continue;
        };
        let pairs: Vec<(Mat, Mat)> =
            data.distinct.iter().zip(&images).map(|(&d, &b)| (data.elements[d].clone(), data.elements[b].clone())).collect();
        let Some(template) = template(n, &pairs) else {
            return Err(Error::Parse("normalizer template has irrational coefficients".into()));
        };
        total = total.saturating_add(width.saturating_pow(template.free.len() as u32));
        let mut inverse = vec![0; phi.len()];
        for (i, &p) in phi.iter().enumerate() {
            inverse[p] = i;
        }
        let prepared = if data.gens.is_empty() {
            None
        } else {
            let standard = LatticeBasis::standard(n);
            let mut blocks = Vec::new();
            for (a, _) in &data.gens {
                blocks.push((id.try_sub(&data.elements[phi[*a]])?, standard.clone()));
                blocks.push((data.elements[*a].try_sub(&id)?, standard.clone()));
            }
            Some(PreparedCongruence::new(&blocks)?)
        };
        cases.push(Case { template, phi, inverse, prepared });
    }
    if total > budget {
        return Err(Error::EnumerationBudgetExceeded(total));
    }
    // Common denominator of every translation that enters an offset.
    let mut den = num_bigint::BigInt::from(1);
    for v in data.bases.iter().chain(data.gens.iter().map(|(_, v)| v)) {
        for s in v {
            if let Some(q) = s.to_rational() {
                den = den.lcm(q.denom());
            }
        }
    }
    let base_num: Option<Vec<Vec<i128>>> = data.bases.iter().map(|v| scaled_numerators(v, &den)).collect();
    let gen_num: Option<Vec<Vec<i128>>> = data.gens.iter().map(|(_, v)| scaled_numerators(v, &den)).collect();
    let fast_offsets = base_num.zip(gen_num).zip(den.to_i128());

    let mut out = Vec::new();
    let mut y = vec![0i64; n * n];
    for case in &cases {
        let t = &case.template;
        let mut free_vals = vec![-bound; t.free.len()];
        'cells: loop {
            for (f, v) in t.free.iter().zip(&free_vals) {
                y[*f] = *v;
            }
            let mut ok = true;
            for (p, coeffs, d) in &t.pivots {
                let num: i64 = coeffs.iter().zip(&free_vals).map(|(c, v)| c * v).sum();
                if num % d != 0 || (num / d).abs() > bound {
                    ok = false;
                    break;
                }
                y[*p] = num / d;
            }
            if ok && det_i64(&y, n).abs() == 1 {
                if let Some(zero) = lift_test(&data, case, &y, fast_offsets.as_ref())? {
                    out.push((y.clone(), zero));
                }
            }
            // Advance the odometer.
            let mut i = free_vals.len();
            loop {
                if i == 0 {
                    break 'cells;
                }
                i -= 1;
                if free_vals[i] < bound {
                    free_vals[i] += 1;
                    continue 'cells;
                }
                free_vals[i] = -bound;
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out.into_iter().map(|(y, zero)| Member { matrix: Mat::from_i64(n, n, &y), zero_translation_works: zero }).collect())
}

type FastOffsets = ((Vec<Vec<i128>>, Vec<Vec<i128>>), i128);

/// `Some(zero_translation_works)` when `Y` lifts, `None` otherwise.
fn lift_test(data: &LatticeData, case: &Case, y: &[i64], fast: Option<&FastOffsets>) -> Result<Option<bool>> {
    let Some(prepared) = &case.prepared else {
        return Ok(Some(true));
    };
    let n = data.n;
    let ymul = |v: &[i128]| -> Vec<i128> { (0..n).map(|r| (0..n).map(|c| i128::from(y[r * n + c]) * v[c]).sum()).collect() };
    if let Some(((bases, gens), d)) = fast {
        let mut nums = Vec::with_capacity(2 * n * data.gens.len());
        for ((a, _), v) in data.gens.iter().zip(gens) {
            let yv = ymul(v);
            nums.extend(bases[case.phi[*a]].iter().zip(&yv).map(|(b, w)| b - w));
            let yb = ymul(&bases[case.inverse[*a]]);
            nums.extend(yb.iter().zip(v).map(|(w, x)| w - x));
        }
        if let Some(ok) = prepared.solvable_scaled(&nums, *d) {
            return Ok(ok.then(|| nums.iter().all(|x| x % d == 0)));
        }
    }
    let ym = Mat::from_i64(n, n, y);
    let mut c = Vec::new();
    for (a, v) in &data.gens {
        c.extend(vec_sub(&data.bases[case.phi[*a]], &ym.mul_vec(v)));
        c.extend(vec_sub(&ym.mul_vec(&data.bases[case.inverse[*a]]), v));
    }
    let report = prepared.solve_lattice_coords(&c)?;
    Ok(report.solvable.then_some(report.zero_is_witness))
}

/// Every enumerated member lifts with zero translation. Groups without
/// holonomy generators impose no translation condition and pass without
/// enumeration.
pub fn is_semidirect(g: &CatalogEntry, bound: i64) -> Result<bool> {
    Ok(semidirect_obstruction(g, bound)?.is_none())
}

/// The first enumerated member (lattice coordinates) needing a nonzero translation.
pub fn semidirect_obstruction(g: &CatalogEntry, bound: i64) -> Result<Option<Mat>> {
    if g.holonomy_generators().is_empty() {
        return Ok(None);
    }
    let members = enumerate_members_with_budget(g, bound, DEFAULT_ENUMERATION_BUDGET)?;
    Ok(members.into_iter().find(|m| !m.zero_translation_works).map(|m| m.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{expected_results, load_group};

    fn m<const C: usize>(rows: &[[i64; C]]) -> Mat {
        Mat::from_int_rows(rows)
    }

    #[test]
    fn determinant_helper() {
        assert_eq!(det_i64(&[2, -1, 0, -1, 2, -1, 0, -1, 2], 3), 4);
        assert_eq!(det_i64(&[0, 1, 1, 0], 2), -1);
        assert_eq!(det_i64(&[0, 0, 1, 0, 1, 0, 1, 0, 0], 3), -1);
        let m4 = [2, 1, 0, 3, -1, 0, 2, 1, 4, 1, -2, 0, 0, 3, 1, -1];
        assert_eq!(det_i64(&m4, 4), Mat::from_i64(4, 4, &m4).det().unwrap().to_i64().unwrap());
        let m5: Vec<i64> = (0..25).map(|k| (k * 7 % 5) - 2 + i64::from(k % 6 == 0)).collect();
        assert_eq!(det_i64(&m5, 5), Mat::from_i64(5, 5, &m5).det().unwrap().to_i64().unwrap());
    }

    #[test]
    fn b1_examples() {
        let g = load_group("B1").unwrap();
        let v = normalizer_membership(&m(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]), &g).unwrap();
        assert!(v.member);
        let w = v.witness_translation.unwrap();
        assert!(conjugation_check(&g, &m(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]), &w).unwrap());
        let v = normalizer_membership(&m(&[[1, 0, 0], [1, 1, 0], [0, 0, 1]]), &g).unwrap();
        assert!(!v.member);
    }

    #[test]
    fn holonomy_normalization() {
        let h = holonomy(&load_group("O4_2").unwrap()).unwrap();
        assert!(normalizes_holonomy(&Mat::identity(4), &h).unwrap());
        let mix = m(&[[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(!normalizes_holonomy(&mix, &h).unwrap());
        assert!(matches!(normalizes_holonomy(&Mat::zeros(4, 4), &h), Err(Error::SingularMatrix)));
    }

    #[test]
    fn lattice_preservation_is_checked() {
        let g = load_group("G1").unwrap();
        assert!(matches!(normalizer_membership(&Mat::diag_i64(&[2, 1, 1]), &g), Err(Error::DoesNotPreserveLattice)));
    }

    #[test]
    fn small_enumerations() {
        let b3 = enumerate_members(&load_group("B3").unwrap(), 2).unwrap();
        assert_eq!(b3.len(), 8);
        assert!(b3.iter().all(|x| x.to_i64_entries().unwrap().iter().enumerate().all(|(k, &e)| if k % 4 == 0 { e.abs() == 1 } else { e == 0 })));
        let g4 = enumerate_members(&load_group("G4").unwrap(), 2).unwrap();
        assert_eq!(g4.len(), 8);
    }

    #[test]
    fn enumerated_members_pass_membership() {
        for name in ["B1", "G2", "G5", "B2"] {
            let g = load_group(name).unwrap();
            for y in enumerate_members(&g, 1).unwrap() {
                let v = normalizer_membership_lattice(&y, &g).unwrap();
                assert!(v.member, "{name} {y}");
                let x = g.lattice.from_lattice_coords(&y).unwrap();
                assert!(conjugation_check(&g, &x, &v.witness_translation.unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn fixture_generators_b1_b3() {
        for name in ["B1", "B3", "G3"] {
            let g = load_group(name).unwrap();
            for x in expected_results(name).unwrap().normalizer_generators {
                assert!(normalizer_membership(&x, &g).unwrap().member, "{name} {x}");
            }
        }
    }

    #[test]
    fn trivial_holonomy_is_semidirect() {
        assert!(is_semidirect(&load_group("T4").unwrap(), 2).unwrap());
        assert!(is_semidirect(&load_group("T3").unwrap(), 2).unwrap());
    }
}
