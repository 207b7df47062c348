//! Exact arithmetic over Q(√3), integer normal forms and lattice congruences.

pub mod intmat;
pub mod lattice;
pub mod mat;
pub mod scalar;
pub mod solver;

pub use intmat::{smith_normal_form, smith_normal_form_int, IntMat, SmithForm};
pub use lattice::{lattice_contains, LatticeBasis};
pub use mat::{int_vector, unit_vector, vec_add, vec_neg, vec_scale, vec_sub, Mat, Vector};
pub use scalar::Scalar;
pub use solver::{solve_mixed_congruence, CongruenceBlock, CongruenceSystem, PreparedCongruence, SolutionReport};

/// Exact inverse of a square matrix.
pub fn mat_inverse(m: &Mat) -> crate::Result<Mat> {
    m.inverse()
}
