//! Full-rank lattices given by a basis over Q(√3).

use serde::{Deserialize, Serialize};

use super::mat::{vec_is_integral, Mat, Vector};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The lattice spanned over Z by the columns of `basis`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct LatticeBasis {
    basis: Mat,
    inverse: Mat,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    /// Basis vectors, one per entry.
    basis: Vec<Vector>,
}

impl TryFrom<LatticeRepr> for LatticeBasis {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        LatticeBasis::from_vectors(&r.basis)
    }
}

impl From<LatticeBasis> for LatticeRepr {
    fn from(l: LatticeBasis) -> Self {
        LatticeRepr { basis: l.basis.columns() }
    }
}

impl LatticeBasis {
    /// Lattice spanned by the columns of `basis`.
    pub fn new(basis: Mat) -> Result<Self> {
        let inverse = basis.inverse()?;
        Ok(LatticeBasis { basis, inverse })
    }

    pub fn from_vectors(vectors: &[Vector]) -> Result<Self> {
        LatticeBasis::new(Mat::from_columns(vectors)?)
    }

    /// The standard lattice Z^n.
    pub fn standard(n: usize) -> Self {
        LatticeBasis { basis: Mat::identity(n), inverse: Mat::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_inverse(&self) -> &Mat {
        &self.inverse
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.columns()
    }

    pub fn is_standard(&self) -> bool {
        self.basis.is_identity()
    }

    /// Coordinates of `v` in the basis.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Vector> {
        self.inverse.try_mul_vec(v)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(vec_is_integral(&self.coordinates(v)?))
    }

    /// `true` iff `X Λ = Λ`, i.e. `L⁻¹ X L` is unimodular over Z.
    pub fn preserved_by(&self, x: &Mat) -> Result<bool> {
        let y = self.to_lattice_coords(x)?;
        if !y.is_integral() {
            return Ok(false);
        }
        let d = y.det()?;
        Ok(d.abs().is_one())
    }

    /// `L⁻¹ X L`: the matrix of `X` in lattice coordinates.
    pub fn to_lattice_coords(&self, x: &Mat) -> Result<Mat> {
        if self.basis.is_identity() && x.is_square() && x.rows() == self.basis.rows() {
            return Ok(x.clone());
        }
        self.inverse.try_mul(&x.try_mul(&self.basis)?)
    }

    /// `L Y L⁻¹`: the ambient matrix of a lattice-coordinate matrix `Y`.
    pub fn from_lattice_coords(&self, y: &Mat) -> Result<Mat> {
        if self.basis.is_identity() && y.is_square() && y.rows() == self.basis.rows() {
            return Ok(y.clone());
        }
        self.basis.try_mul(&y.try_mul(&self.inverse)?)
    }
}

/// Free-function form of [`LatticeBasis::contains`].
pub fn lattice_contains(lattice: &LatticeBasis, v: &[Scalar]) -> Result<bool> {
    lattice.contains(v)
}
