//! The cone space through its symmetric avatar: `{S = Sᵗ : Aᵗ S A = S}`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bieberbach::HolonomyGroup;
use crate::error::{Error, Result};
use crate::exactmath::{Mat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricCommutant {
    pub dimension: usize,
    pub basis: Vec<Mat>,
}

/// The elementary symmetric matrix with ones at `(i, j)` and `(j, i)`.
fn sym_unit(n: usize, i: usize, j: usize) -> Mat {
    let mut data = vec![Scalar::zero(); n * n];
    data[i * n + j] = Scalar::one();
    data[j * n + i] = Scalar::one();
    Mat::from_vec(n, n, data)
}

fn sym_index(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Solution space of `{S symmetric : f(A, S) = 0 for every A}` for a linear `f`.
fn solve_symmetric(n: usize, gens: &[Mat], f: impl Fn(&Mat, &Mat) -> Mat) -> SymmetricCommutant {
    let idx = sym_index(n);
    let units: Vec<Mat> = idx.iter().map(|&(i, j)| sym_unit(n, i, j)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in gens {
        let images: Vec<Mat> = units.iter().map(|e| f(a, e)).collect();
        for r in 0..n * n {
            rows.push(images.iter().map(|m| m.entries()[r].clone()).collect());
        }
    }
    let basis: Vec<Mat> = if rows.is_empty() {
        units
    } else {
        let system = Mat::from_rows(rows).expect("rectangular");
        system
            .nullspace()
            .into_iter()
            .map(|coef| {
                let mut s = Mat::zeros(n, n);
                for (c, u) in coef.iter().zip(&units) {
                    if !c.is_zero() {
                        s = s.try_add(&u.scale(c)).expect("same shape");
                    }
                }
                s
            })
            .collect()
    };
    SymmetricCommutant { dimension: basis.len(), basis }
}

/// `{S = Sᵗ : Aᵗ S A = S for every generator A}`.
pub fn symmetric_commutant(h: &HolonomyGroup) -> SymmetricCommutant {
    symmetric_commutant_of(h.dim(), &h.generators())
}

pub fn symmetric_commutant_of(n: usize, gens: &[Mat]) -> SymmetricCommutant {
    solve_symmetric(n, gens, |a, s| (&(&a.transpose() * s) * a).try_sub(s).expect("same shape"))
}

/// `{S = Sᵗ : S A = A S}`; agrees with [`symmetric_commutant_of`] for orthogonal `A`.
pub fn commuting_symmetric(n: usize, gens: &[Mat]) -> SymmetricCommutant {
    solve_symmetric(n, gens, |a, s| (s * a).try_sub(&(a * s)).expect("same shape"))
}

impl SymmetricCommutant {
    /// `true` iff `s` is in the span of the basis.
    pub fn contains(&self, s: &Mat) -> bool {
        if self.basis.is_empty() {
            return s.is_zero();
        }
        let cols: Vec<_> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let m = Mat::from_columns(&cols).expect("nonempty");
        matches!(m.solve_particular(s.entries()), Ok(Some(_)))
    }

    /// Coordinates `(i, j)`, `i ≤ j`, on which some basis element is nonzero.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let n = self.basis.first().map_or(0, Mat::rows);
        sym_index(n).into_iter().filter(|&(i, j)| self.basis.iter().any(|b| !b.entries()[i * n + j].is_zero())).collect()
    }
}

/// `Aᵗ (XᵗX) A = XᵗX` for every generator.
pub fn cone_contains(x: &Mat, h: &HolonomyGroup) -> Result<bool> {
    if x.rows() != h.dim() || !x.is_square() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: x.rows() });
    }
    if x.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let s = &x.transpose() * x;
    Ok(h.generators().iter().all(|a| &(&a.transpose() * &s) * a == s))
}

/// Leading principal minors, all checked exactly.
pub fn is_positive_definite(s: &Mat) -> Result<bool> {
    if !s.is_symmetric() {
        return Ok(false);
    }
    for k in 1..=s.rows() {
        let minor: Vec<Scalar> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).map(|(i, j)| s.entries()[i * s.cols() + j].clone()).collect();
        if Mat::from_vec(k, k, minor).det()?.signum() <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A numeric `X` with `XᵗX = S`, from the Cholesky factor.
pub fn sample_cone_element(s: &Mat) -> Result<DMatrix<f64>> {
    if !is_positive_definite(s)? {
        return Err(Error::NotPositiveDefinite);
    }
    let n = s.rows();
    let f = s.to_f64_rows();
    let m = DMatrix::from_fn(n, n, |i, j| f[i][j]);
    let l = m.cholesky().ok_or(Error::NotPositiveDefinite)?.l();
    Ok(l.transpose())
}

/// `X A X⁻¹` is orthogonal to within `tol` for every generator.
pub fn conjugates_into_orthogonal(x: &DMatrix<f64>, h: &HolonomyGroup, tol: f64) -> bool {
    let Some(xinv) = x.clone().try_inverse() else {
        return false;
    };
    let n = h.dim();
    h.generators().iter().all(|a| {
        let f = a.to_f64_rows();
        let am = DMatrix::from_fn(n, n, |i, j| f[i][j]);
        let c = x * am * &xinv;
        let err = (c.transpose() * &c - DMatrix::<f64>::identity(n, n)).abs().max();
        err < tol
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bieberbach::{holonomy, holonomy_of};
    use crate::catalog::{all_entries, load_group};

    fn dim(name: &str) -> usize {
        symmetric_commutant(&holonomy(&load_group(name).unwrap()).unwrap()).dimension
    }

    #[test]
    fn dimensions() {
        assert_eq!(dim("O4_1"), 10);
        assert_eq!(dim("O4_2"), 6);
        assert_eq!(dim("N4_21"), 3);
        assert_eq!(dim("G1"), 6);
        assert_eq!(dim("B1"), 4);
    }

    #[test]
    fn basis_satisfies_equations() {
        for g in all_entries() {
            let h = holonomy(&g).unwrap();
            let c = symmetric_commutant(&h);
            for s in &c.basis {
                assert!(s.is_symmetric());
                for a in h.generators() {
                    assert_eq!(&(&a.transpose() * s) * &a, *s);
                }
            }
        }
    }

    #[test]
    fn cone_examples() {
        let h = holonomy(&load_group("O4_2").unwrap()).unwrap();
        assert!(cone_contains(&Mat::identity(4), &h).unwrap());
        assert!(cone_contains(&Mat::diag_i64(&[2, 1, 1, 1]), &h).unwrap());
        let mix = Mat::from_int_rows(&[[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(!cone_contains(&mix, &h).unwrap());
        assert!(matches!(cone_contains(&Mat::zeros(4, 4), &h), Err(Error::SingularMatrix)));
    }

    #[test]
    fn samples() {
        let x = sample_cone_element(&Mat::diag_i64(&[4, 1, 1, 1])).unwrap();
        assert!((x[(0, 0)] - 2.0).abs() < 1e-12 && (x[(1, 1)] - 1.0).abs() < 1e-12);
        assert!(matches!(sample_cone_element(&Mat::diag_i64(&[1, -1])), Err(Error::NotPositiveDefinite)));
        let h = holonomy_of(&load_group("O4_4").unwrap().generators).unwrap();
        let c = symmetric_commutant(&h);
        let mut s = Mat::identity(4).scale(&Scalar::from_bigint(10.into()));
        for (k, b) in c.basis.iter().enumerate() {
            s = s.try_add(&b.scale(&Scalar::ratio(k as i64 + 1, 7))).unwrap();
        }
        let x = sample_cone_element(&s).unwrap();
        assert!(conjugates_into_orthogonal(&x, &h, 1e-10));
    }
}
