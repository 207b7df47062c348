//! The chart `O(2)\GL(2,R) ≅ R⁺ × H²` and reduction of points into a domain.

use num_complex::Complex64;
use serde::Serialize;

use super::cosets::{Letter, Word};
use super::domain::FundamentalDomain;
use super::subgroup::{inv, mul, neg, M2, ID, S};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `(scale, z)` with `scale = |det X|` and `z = b₂/b₁` for the columns of `X`
/// read as complex numbers, mirrored into the upper half plane.
pub fn gl2_to_h2(x: [[f64; 2]; 2]) -> Result<(f64, Complex64)> {
    let det = x[0][0] * x[1][1] - x[0][1] * x[1][0];
    if det == 0.0 || !det.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let b1 = Complex64::new(x[0][0], x[1][0]);
    let b2 = Complex64::new(x[0][1], x[1][1]);
    let z = b2 / b1;
    let z = if z.im < 0.0 { z.conj() } else { z };
    Ok((det.abs(), z))
}

/// `z ↦ (az + b)/(cz + d)`.
pub fn mobius(m: &M2, z: Complex64) -> Complex64 {
    let [a, b, c, d] = m.map(|e| e as f64);
    (a * z + b) / (c * z + d)
}

/// Closed standard domain `|Re z| ≤ ½`, `|z| ≥ 1`, with tolerance.
pub fn in_standard_domain(z: Complex64, tol: f64) -> bool {
    z.im > 0.0 && z.re.abs() <= 0.5 + tol && z.norm() >= 1.0 - tol
}

fn near_boundary(z: Complex64, tol: f64) -> bool {
    (z.re.abs() - 0.5).abs() <= tol || (z.norm() - 1.0).abs() <= tol
}

/// Classical reduction: returns `g ∈ SL(2,Z)` with `g·z` in the standard domain.
pub fn reduce_to_standard(z: Complex64) -> Result<(M2, Complex64)> {
    if !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Parse(format!("point {z} is not in the upper half plane")));
    }
    let mut g = ID;
    let mut w = z;
    for _ in 0..10_000 {
        let n = w.re.round();
        if n != 0.0 {
            let t = [1, -(n as i64), 0, 1];
            g = mul(&t, &g);
            w = mobius(&t, w);
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            g = mul(&S, &g);
            w = mobius(&S, w);
        } else {
            return Ok((g, w));
        }
    }
    Err(Error::Parse(format!("reduction of {z} did not terminate")))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reduction {
    /// Element of `Γ` with `γ·z` in the domain.
    pub gamma: M2,
    pub point: (f64, f64),
    /// Index of the cell containing the image.
    pub cell: usize,
    /// The image lies within tolerance of a cell boundary; `gamma` is then the
    /// admissible choice minimizing [`tie_break_key`].
    pub ambiguous: bool,
}

impl Reduction {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.point.0, self.point.1)
    }

    /// Errors with `BoundaryAmbiguity` when the point was flagged.
    pub fn strict(self) -> Result<Reduction> {
        if self.ambiguous {
            Err(Error::BoundaryAmbiguity)
        } else {
            Ok(self)
        }
    }
}

/// Order used to pick among admissible elements: entrywise distance from the
/// identity, then the entries lexicographically.
pub fn tie_break_key(g: &M2) -> (i64, M2) {
    let dist = (g[0] - 1).abs() + g[1].abs() + g[2].abs() + (g[3] - 1).abs();
    (dist, *g)
}

/// Left multipliers tried when the reduced point sits on the boundary of `F`.
fn boundary_moves() -> Vec<M2> {
    let mut out = vec![ID];
    let mut frontier = vec![Word::identity()];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::ALL {
                let x = w.extend(l);
                out.push(x.matrix);
                next.push(x);
            }
        }
        frontier = next;
    }
    out
}

/// Moves `z` into the domain by an element of `Γ`: reduce into `F` with `g`,
/// then pick the representative `γ_i` with `γ_i g ∈ ±Γ`.
pub fn reduce_to_domain(z: Complex64, domain: &FundamentalDomain, tol: f64) -> Result<Reduction> {
    let gamma = &domain.subgroup;
    let (g, w) = reduce_to_standard(z)?;
    let ambiguous = near_boundary(w, tol);
    let starts: Vec<M2> = if ambiguous {
        boundary_moves().iter().map(|m| mul(m, &g)).filter(|h| in_standard_domain(mobius(h, z), tol)).collect()
    } else {
        vec![g]
    };
    let mut best: Option<(M2, usize)> = None;
    for h in starts {
        for (i, c) in domain.cells.iter().enumerate() {
            let x = mul(&c.matrix, &h);
            for y in [x, neg(&x)] {
                if gamma.contains_entries(y) && best.map_or(true, |(b, _)| tie_break_key(&y) < tie_break_key(&b)) {
                    best = Some((y, i));
                }
            }
        }
    }
    let (y, cell) = best.ok_or_else(|| Error::InconsistentGluing("no representative matches the reduced point".into()))?;
    let image = mobius(&y, z);
    Ok(Reduction { gamma: y, point: (image.re, image.im), cell, ambiguous })
}

/// `true` iff `z` lies in cell `γ_i F` of the domain within tolerance.
pub fn cell_contains(domain: &FundamentalDomain, cell: usize, z: Complex64, tol: f64) -> bool {
    in_standard_domain(mobius(&inv(&domain.cells[cell].matrix), z), tol)
}

pub fn domain_contains(domain: &FundamentalDomain, z: Complex64, tol: f64) -> bool {
    (0..domain.cells.len()).any(|i| cell_contains(domain, i, z, tol))
}
