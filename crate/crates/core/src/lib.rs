//! Exact computation of moduli spaces of flat metrics on closed flat 3- and
//! 4-manifolds: Bieberbach group data, cone spaces, matrix normalizers and
//! fundamental domains of congruence subgroups on the hyperbolic plane.

pub mod affine;
pub mod bieberbach;
pub mod catalog;
pub mod cone;
pub mod congruence;
pub mod error;
pub mod exactmath;
pub mod moduli;
pub mod normalizer;

pub use error::{Error, Result};
