//! Mixed real/lattice congruences: find real `x` with `M_i x − c_i ∈ Λ_i` for every block.
//!
//! After passing to lattice coordinates the blocks stack into one system
//! `M x ≡ c (mod Z^m)`. A real solution exists iff some integer `z` puts `c + z`
//! in the column space of `M`, i.e. `w·(c + z) = 0` for every `w` in the left
//! null space. Splitting each `w` into rational and √3 parts turns that into an
//! integer system `G z = h`, which the Smith normal form decides.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::{smith_normal_form_int, IntMat};
use super::lattice::LatticeBasis;
use super::mat::{vec_add, vec_is_integral, Mat, Vector};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceBlock {
    pub matrix: Mat,
    pub offset: Vector,
    pub lattice: LatticeBasis,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSystem {
    pub blocks: Vec<CongruenceBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub solvable: bool,
    pub witness: Option<Vector>,
    pub zero_is_witness: bool,
}

impl SolutionReport {
    fn unsolvable() -> Self {
        SolutionReport { solvable: false, witness: None, zero_is_witness: false }
    }
}

/// One integer equation `g·z = −(p·c_a + q·c_b)` on the lattice offsets `z`,
/// where `c = c_a + √3 c_b` is the stacked offset in lattice coordinates.
#[derive(Clone, Debug)]
struct Constraint {
    p: Vec<BigRational>,
    q: Vec<BigRational>,
}

/// Integer-only decision procedure for rational systems with rational offsets.
#[derive(Clone, Debug)]
struct IntegerForm {
    /// Rows of `U·G` paired with the invariant factor they must be divisible by.
    rows: Vec<(Vec<i128>, i128)>,
}

/// A congruence system whose matrices and lattices are fixed while the offsets vary.
#[derive(Clone, Debug)]
pub struct PreparedCongruence {
    n: usize,
    block_rows: Vec<usize>,
    lattice_inverses: Vec<Option<Mat>>,
    stacked: Mat,
    constraints: Vec<Constraint>,
    u: IntMat,
    v: IntMat,
    factors: Vec<BigInt>,
    fast: Option<IntegerForm>,
}

impl PreparedCongruence {
    /// Prepares the system with the given `(M_i, Λ_i)` blocks.
    pub fn new(blocks: &[(Mat, LatticeBasis)]) -> Result<Self> {
        let n = blocks.first().map_or(0, |(m, _)| m.cols());
        let mut parts = Vec::with_capacity(blocks.len());
        let mut block_rows = Vec::with_capacity(blocks.len());
        let mut lattice_inverses = Vec::with_capacity(blocks.len());
        for (m, l) in blocks {
            if m.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
            }
            if l.dim() != m.rows() {
                return Err(Error::DimensionMismatch { expected: m.rows(), found: l.dim() });
            }
            if l.is_standard() {
                parts.push(m.clone());
                lattice_inverses.push(None);
            } else {
                parts.push(l.basis_inverse().try_mul(m)?);
                lattice_inverses.push(Some(l.basis_inverse().clone()));
            }
            block_rows.push(m.rows());
        }
        let stacked = if parts.is_empty() { Mat::zeros(0, n) } else { Mat::vstack(&parts.iter().collect::<Vec<_>>())? };
        let total: usize = block_rows.iter().sum();

        let left_null = stacked.transpose().nullspace();
        let mut constraints = Vec::new();
        let mut g_rows: Vec<Vec<BigInt>> = Vec::new();
        let three = BigRational::from_integer(3.into());
        for w in &left_null {
            let wa: Vec<BigRational> = w.iter().map(|s| s.rational_part().clone()).collect();
            let wb: Vec<BigRational> = w.iter().map(|s| s.sqrt3_part().clone()).collect();
            let candidates = [
                (wa.clone(), wa.clone(), wb.iter().map(|x| x * &three).collect::<Vec<_>>()),
                (wb.clone(), wb.clone(), wa.clone()),
            ];
            for (g, p, q) in candidates {
                if g.iter().all(Zero::is_zero) && p.iter().all(Zero::is_zero) && q.iter().all(Zero::is_zero) {
                    continue;
                }
                let scale = g.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let scale_q = BigRational::from_integer(scale);
                g_rows.push(g.iter().map(|x| (x * &scale_q).to_integer()).collect());
                constraints.push(Constraint {
                    p: p.iter().map(|x| x * &scale_q).collect(),
                    q: q.iter().map(|x| x * &scale_q).collect(),
                });
            }
        }
        let g = IntMat::from_vec(g_rows.len(), total, g_rows.into_iter().flatten().collect());
        let snf = smith_normal_form_int(&g);
        let factors = snf.invariant_factors();
        let fast = if stacked.is_rational() { integer_form(&snf.u.mul(&g), &factors) } else { None };
        Ok(PreparedCongruence { n, block_rows, lattice_inverses, stacked, constraints, u: snf.u, v: snf.v, factors, fast })
    }

    /// Number of unknowns.
    pub fn unknowns(&self) -> usize {
        self.n
    }

    /// Total row count of the stacked system.
    pub fn total_rows(&self) -> usize {
        self.block_rows.iter().sum()
    }

    /// Stacked offsets in lattice coordinates.
    fn lattice_offsets(&self, offsets: &[Vector]) -> Result<Vector> {
        if offsets.len() != self.block_rows.len() {
            return Err(Error::DimensionMismatch { expected: self.block_rows.len(), found: offsets.len() });
        }
        let mut out = Vec::with_capacity(self.total_rows());
        for ((c, rows), inv) in offsets.iter().zip(&self.block_rows).zip(&self.lattice_inverses) {
            if c.len() != *rows {
                return Err(Error::DimensionMismatch { expected: *rows, found: c.len() });
            }
            match inv {
                Some(inv) => out.extend(inv.mul_vec(c)),
                None => out.extend(c.iter().cloned()),
            }
        }
        Ok(out)
    }

    /// Decides the system for the given offsets `c_i`.
    pub fn solve(&self, offsets: &[Vector]) -> Result<SolutionReport> {
        let c = self.lattice_offsets(offsets)?;
        self.solve_lattice_coords(&c)
    }

    /// Decides the system for a stacked offset already expressed in lattice coordinates.
    pub fn solve_lattice_coords(&self, c: &[Scalar]) -> Result<SolutionReport> {
        if c.len() != self.total_rows() {
            return Err(Error::DimensionMismatch { expected: self.total_rows(), found: c.len() });
        }
        if vec_is_integral(c) {
            return Ok(SolutionReport { solvable: true, witness: Some(vec![Scalar::zero(); self.n]), zero_is_witness: true });
        }
        let Some(z) = self.integer_shift(c) else {
            return Ok(SolutionReport::unsolvable());
        };
        let target = vec_add(c, &z.into_iter().map(Scalar::from_bigint).collect::<Vec<_>>());
        let x = self
            .stacked
            .solve_particular(&target)?
            .expect("left null space conditions guarantee consistency");
        Ok(SolutionReport { solvable: true, witness: Some(x), zero_is_witness: false })
    }

    /// Integer `z` with `c + z` in the column space, if one exists.
    fn integer_shift(&self, c: &[Scalar]) -> Option<Vec<BigInt>> {
        let total = self.total_rows();
        let ca: Vec<&BigRational> = c.iter().map(Scalar::rational_part).collect();
        let cb: Vec<&BigRational> = c.iter().map(Scalar::sqrt3_part).collect();
        let mut h = Vec::with_capacity(self.constraints.len());
        for k in &self.constraints {
            let mut rhs = BigRational::zero();
            for j in 0..total {
                if !k.p[j].is_zero() && !ca[j].is_zero() {
                    rhs -= &k.p[j] * ca[j];
                }
                if !k.q[j].is_zero() && !cb[j].is_zero() {
                    rhs -= &k.q[j] * cb[j];
                }
            }
            if !rhs.is_integer() {
                return None;
            }
            h.push(rhs.to_integer());
        }
        let y = self.u.mul_vec(&h);
        let mut yhat = vec![BigInt::zero(); total];
        for (i, yi) in y.iter().enumerate() {
            match self.factors.get(i) {
                Some(d) => {
                    if !yi.is_multiple_of(d) {
                        return None;
                    }
                    yhat[i] = yi / d;
                }
                None if !yi.is_zero() => return None,
                None => {}
            }
        }
        Some(self.v.mul_vec(&yhat))
    }

    /// Fast decision for rational offsets given as `numerators / denom` in lattice
    /// coordinates. `None` when the integer form is unavailable or overflows.
    pub fn solvable_scaled(&self, numerators: &[i128], denom: i128) -> Option<bool> {
        let fast = self.fast.as_ref()?;
        if numerators.iter().all(|x| x % denom == 0) {
            return Some(true);
        }
        for (row, d) in &fast.rows {
            let mut acc: i128 = 0;
            for (a, b) in row.iter().zip(numerators) {
                if *a != 0 && *b != 0 {
                    acc = acc.checked_add(a.checked_mul(*b)?)?;
                }
            }
            let m = denom.checked_mul(*d)?;
            if acc % m != 0 {
                return Some(false);
            }
        }
        Some(true)
    }
}

fn integer_form(ug: &IntMat, factors: &[BigInt]) -> Option<IntegerForm> {
    let mut rows = Vec::with_capacity(factors.len());
    for (k, d) in factors.iter().enumerate() {
        let row = (0..ug.cols()).map(|j| ug.get(k, j).to_i128()).collect::<Option<Vec<_>>>()?;
        rows.push((row, d.to_i128()?));
    }
    Some(IntegerForm { rows })
}

/// Decides `∃ x ∈ R^n : M_i x − c_i ∈ Λ_i for all i` and returns a witness.
///
/// The witness is zero whenever zero works; otherwise it is the particular
/// solution of the stacked system (free variables zero) for the integer shift
/// produced by the Smith normal form, which is deterministic.
pub fn solve_mixed_congruence(sys: &CongruenceSystem) -> Result<SolutionReport> {
    let blocks: Vec<(Mat, LatticeBasis)> = sys.blocks.iter().map(|b| (b.matrix.clone(), b.lattice.clone())).collect();
    let prepared = PreparedCongruence::new(&blocks)?;
    let offsets: Vec<Vector> = sys.blocks.iter().map(|b| b.offset.clone()).collect();
    prepared.solve(&offsets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::mat::vec_sub;

    fn block(m: Mat, c: Vector, l: LatticeBasis) -> CongruenceBlock {
        CongruenceBlock { matrix: m, offset: c, lattice: l }
    }

    fn assert_witness(sys: &CongruenceSystem, r: &SolutionReport) {
        let x = r.witness.as_ref().unwrap();
        for b in &sys.blocks {
            let lhs = vec_sub(&b.matrix.mul_vec(x), &b.offset);
            assert!(b.lattice.contains(&lhs).unwrap());
        }
    }

    #[test]
    fn half_on_the_line() {
        let sys = CongruenceSystem {
            blocks: vec![block(Mat::identity(1), vec![Scalar::ratio(1, 2)], LatticeBasis::standard(1))],
        };
        let r = solve_mixed_congruence(&sys).unwrap();
        assert!(r.solvable);
        assert!(!r.zero_is_witness);
        assert_eq!(r.witness.clone().unwrap(), vec![Scalar::ratio(1, 2)]);
        assert_witness(&sys, &r);
    }

    #[test]
    fn zero_matrix_cannot_absorb_half() {
        let sys = CongruenceSystem {
            blocks: vec![block(Mat::zeros(1, 1), vec![Scalar::ratio(1, 2)], LatticeBasis::standard(1))],
        };
        assert!(!solve_mixed_congruence(&sys).unwrap().solvable);
    }

    #[test]
    fn coupled_blocks_need_integer_shift() {
        // x ≡ 1/2 and 2x ≡ 0 (mod 1): x = 1/2 works.
        // x ≡ 1/3 and 2x ≡ 0: 2/3 ∉ Z, unsolvable.
        let l = LatticeBasis::standard(1);
        let ok = CongruenceSystem {
            blocks: vec![
                block(Mat::identity(1), vec![Scalar::ratio(1, 2)], l.clone()),
                block(Mat::from_int_rows(&[[2]]), vec![Scalar::zero()], l.clone()),
            ],
        };
        let r = solve_mixed_congruence(&ok).unwrap();
        assert!(r.solvable);
        assert_witness(&ok, &r);
        let bad = CongruenceSystem {
            blocks: vec![
                block(Mat::identity(1), vec![Scalar::ratio(1, 3)], l.clone()),
                block(Mat::from_int_rows(&[[2]]), vec![Scalar::zero()], l),
            ],
        };
        assert!(!solve_mixed_congruence(&bad).unwrap().solvable);
    }

    #[test]
    fn irrational_entries() {
        // √3 x ≡ 1/2 (mod Z) is solvable with x = √3/6.
        let sys = CongruenceSystem {
            blocks: vec![block(
                Mat::from_vec(1, 1, vec![Scalar::sqrt3()]),
                vec![Scalar::ratio(1, 2)],
                LatticeBasis::standard(1),
            )],
        };
        let r = solve_mixed_congruence(&sys).unwrap();
        assert!(r.solvable);
        assert_witness(&sys, &r);
        // (x, √3 x) ≡ (0, 1/2): x ∈ Z forces √3 x ∉ 1/2 + Z unless x = 0, which fails.
        let sys = CongruenceSystem {
            blocks: vec![block(
                Mat::from_vec(2, 1, vec![Scalar::one(), Scalar::sqrt3()]),
                vec![Scalar::zero(), Scalar::ratio(1, 2)],
                LatticeBasis::standard(2),
            )],
        };
        assert!(!solve_mixed_congruence(&sys).unwrap().solvable);
    }

    #[test]
    fn first_coordinate_lattice_condition() {
        // The B1-type check for X = [[1,0],[1,1]]: X(1/2, 0) = (1/2, 1/2) must lie in
        // (1/2, 0) + Z^2 + (I − E)x, and (I − E) only moves the third coordinate.
        let ie = Mat::from_int_rows(&[[0, 0, 0], [0, 0, 0], [0, 0, 2]]);
        let offset = vec![Scalar::zero(), Scalar::ratio(-1, 2), Scalar::zero()];
        let sys = CongruenceSystem { blocks: vec![block(ie, offset, LatticeBasis::standard(3))] };
        assert!(!solve_mixed_congruence(&sys).unwrap().solvable);
    }

    #[test]
    fn scaled_fast_form_agrees() {
        let l = LatticeBasis::standard(2);
        let m = Mat::from_int_rows(&[[2, 0], [0, 0]]);
        let p = PreparedCongruence::new(&[(m, l)]).unwrap();
        for (num, den) in [([1i128, 0i128], 2i128), ([0, 1], 2), ([1, 2], 4), ([3, 4], 4)] {
            let c: Vector = num.iter().map(|&x| Scalar::ratio(x as i64, den as i64)).collect();
            let exact = p.solve(&[c]).unwrap().solvable;
            assert_eq!(p.solvable_scaled(&num, den), Some(exact), "{num:?}/{den}");
        }
    }
}
