//! The affine group Aff(n) = GL(n) ⋉ R^n over Q(√3).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{vec_add, vec_neg, Mat, Scalar, Vector};

/// The map `x ↦ A x + v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: Mat,
    pub translation: Vector,
}

impl AffineMap {
    pub fn new(linear: Mat, translation: Vector) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::DimensionMismatch { expected: linear.rows(), found: linear.cols() });
        }
        if translation.len() != linear.rows() {
            return Err(Error::DimensionMismatch { expected: linear.rows(), found: translation.len() });
        }
        Ok(AffineMap { linear, translation })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap { linear: Mat::identity(n), translation: vec![Scalar::zero(); n] }
    }

    pub fn translation(v: Vector) -> Self {
        AffineMap { linear: Mat::identity(v.len()), translation: v }
    }

    pub fn linear(a: Mat) -> Self {
        let n = a.rows();
        AffineMap { linear: a, translation: vec![Scalar::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn is_pure_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        vec_add(&self.linear.mul_vec(x), &self.translation)
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse()?;
        let t = vec_neg(&inv.mul_vec(&self.translation));
        Ok(AffineMap { linear: inv, translation: t })
    }

    pub fn pow(&self, k: u32) -> AffineMap {
        let mut acc = AffineMap::identity(self.dim());
        for _ in 0..k {
            acc = compose(&acc, self).expect("same dimension");
        }
        acc
    }
}

/// `f ∘ g = (AB, v + A w)` for `f = (A, v)`, `g = (B, w)`.
pub fn compose(f: &AffineMap, g: &AffineMap) -> Result<AffineMap> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    Ok(AffineMap { linear: &f.linear * &g.linear, translation: vec_add(&f.translation, &f.linear.mul_vec(&g.translation)) })
}

/// `by ∘ f ∘ by⁻¹`.
pub fn conjugate(f: &AffineMap, by: &AffineMap) -> Result<AffineMap> {
    if f.dim() != by.dim() {
        return Err(Error::DimensionMismatch { expected: by.dim(), found: f.dim() });
    }
    compose(&compose(by, f)?, &by.inverse()?)
}

pub fn linear_part(f: &AffineMap) -> &Mat {
    &f.linear
}

/// `true` iff the linear part is orthogonal, checked exactly.
pub fn is_isometry(f: &AffineMap) -> bool {
    (&f.linear.transpose() * &f.linear).is_identity()
}
