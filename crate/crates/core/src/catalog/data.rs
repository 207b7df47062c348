//! Generator data of the 3- and 4-dimensional Bieberbach groups.

use super::{CatalogEntry, IntegralRep};
use crate::affine::AffineMap;
use crate::exactmath::{unit_vector, LatticeBasis, Mat, Scalar, Vector};

pub(crate) fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

pub(crate) fn q3(n: i64, d: i64) -> Scalar {
    Scalar::ratio_sqrt3(n, d)
}

fn cos_sixth(k: i64) -> Scalar {
    match k.rem_euclid(12) {
        0 => q(1, 1),
        1 => q3(1, 2),
        2 => q(1, 2),
        3 => q(0, 1),
        4 => q(-1, 2),
        5 => q3(-1, 2),
        6 => q(-1, 1),
        7 => q3(-1, 2),
        8 => q(-1, 2),
        9 => q(0, 1),
        10 => q(1, 2),
        _ => q3(1, 2),
    }
}

/// The rotation `R(kπ/6) = [[cos, −sin], [sin, cos]]`.
pub fn rotation_sixths(k: i64) -> Mat {
    let c = cos_sixth(k);
    let s = cos_sixth(k - 3);
    Mat::from_vec(2, 2, vec![c.clone(), -&s, s, c])
}

/// `E_0 = diag(1, −1)`.
pub fn e0() -> Mat {
    Mat::diag_i64(&[1, -1])
}

fn e(n: usize, i: usize) -> Vector {
    unit_vector(n, i - 1)
}

fn vq(entries: &[(i64, i64)]) -> Vector {
    entries.iter().map(|&(n, d)| q(n, d)).collect()
}

fn t(n: usize, i: usize) -> AffineMap {
    AffineMap::translation(e(n, i))
}

fn tr(v: Vector) -> AffineMap {
    AffineMap::translation(v)
}

fn gen(a: Mat, v: Vector) -> AffineMap {
    AffineMap::new(a, v).expect("catalog generator dimensions")
}

fn scaled(n: usize, i: usize, num: i64, den: i64) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i - 1] = q(num, den);
    v
}

fn diag(d: &[i64]) -> Mat {
    Mat::diag_i64(d)
}

fn blocks(b: &[&Mat]) -> Mat {
    Mat::block_diag(b)
}

fn one() -> Mat {
    Mat::identity(1)
}

fn id2() -> Mat {
    Mat::identity(2)
}

fn entry(
    name: &str,
    generators: Vec<AffineMap>,
    orientable: bool,
    holonomy_order: usize,
    integral_rep: Option<IntegralRep>,
) -> CatalogEntry {
    let dimension = generators[0].dim();
    let lattice_vectors: Vec<Vector> =
        generators.iter().filter(|g| g.is_pure_translation()).map(|g| g.translation.clone()).collect();
    let lattice = LatticeBasis::from_vectors(&lattice_vectors).expect("catalog lattice is full rank");
    CatalogEntry { name: name.to_string(), dimension, generators, lattice, orientable, holonomy_order, integral_rep }
}

fn std_translations(n: usize, count: usize) -> Vec<AffineMap> {
    (1..=count).map(|i| t(n, i)).collect()
}

fn with(mut gens: Vec<AffineMap>, more: Vec<AffineMap>) -> Vec<AffineMap> {
    gens.extend(more);
    gens
}

fn from_rows(rows: Vec<Vec<Scalar>>) -> Mat {
    Mat::from_rows(rows).expect("rectangular")
}

// 3-dimensional groups.

pub(super) fn g1() -> CatalogEntry {
    entry("G1", std_translations(3, 3), true, 1, None)
}

pub(super) fn g2() -> CatalogEntry {
    let alpha = gen(blocks(&[&one(), &rotation_sixths(6)]), scaled(3, 1, 1, 2));
    entry("G2", with(std_translations(3, 3), vec![alpha]), true, 2, None)
}

pub(super) fn g3() -> CatalogEntry {
    let s1 = vec![q(0, 1), q(-1, 2), q3(1, 2)];
    let s2 = vec![q(0, 1), q(-1, 2), q3(-1, 2)];
    let alpha = gen(blocks(&[&one(), &rotation_sixths(4)]), scaled(3, 1, 1, 3));
    entry("G3", vec![t(3, 1), tr(s1), tr(s2), alpha], true, 3, None)
}

pub(super) fn g4() -> CatalogEntry {
    let alpha = gen(blocks(&[&one(), &rotation_sixths(3)]), scaled(3, 1, 1, 4));
    entry("G4", with(std_translations(3, 3), vec![alpha]), true, 4, None)
}

pub(super) fn g5() -> CatalogEntry {
    let s1 = vec![q(0, 1), q(1, 2), q3(1, 2)];
    let s2 = vec![q(0, 1), q(-1, 2), q3(1, 2)];
    let alpha = gen(blocks(&[&one(), &rotation_sixths(2)]), scaled(3, 1, 1, 6));
    entry("G5", vec![t(3, 1), tr(s1), tr(s2), alpha], true, 6, None)
}

pub(super) fn g6() -> CatalogEntry {
    let alpha = gen(diag(&[1, -1, -1]), scaled(3, 1, 1, 2));
    let beta = gen(diag(&[-1, 1, -1]), vq(&[(0, 1), (1, 2), (1, 2)]));
    entry("G6", with(std_translations(3, 3), vec![alpha, beta]), true, 4, None)
}

pub(super) fn b1() -> CatalogEntry {
    let eps = gen(diag(&[1, 1, -1]), scaled(3, 1, 1, 2));
    entry("B1", with(std_translations(3, 3), vec![eps]), false, 2, None)
}

pub(super) fn b2() -> CatalogEntry {
    let s = vq(&[(1, 2), (1, 2), (1, 1)]);
    let eps = gen(diag(&[1, 1, -1]), scaled(3, 1, 1, 2));
    entry("B2", vec![t(3, 1), t(3, 2), tr(s), eps], false, 2, None)
}

pub(super) fn b3() -> CatalogEntry {
    let alpha = gen(diag(&[1, -1, -1]), scaled(3, 1, 1, 2));
    let eps = gen(diag(&[1, 1, -1]), scaled(3, 2, 1, 2));
    entry("B3", with(std_translations(3, 3), vec![alpha, eps]), false, 4, None)
}

pub(super) fn b4() -> CatalogEntry {
    let alpha = gen(diag(&[1, -1, -1]), scaled(3, 1, 1, 2));
    let eps = gen(diag(&[1, 1, -1]), vq(&[(0, 1), (1, 2), (1, 2)]));
    entry("B4", with(std_translations(3, 3), vec![alpha, eps]), false, 4, None)
}

// 4-dimensional groups with cyclic holonomy.

fn o4_rotation_p() -> Mat {
    blocks(&[&id2(), &from_rows(vec![vec![q(-1, 1), q3(1, 3)], vec![q(-1, 1), q3(-1, 3)]])])
}

fn o8_p() -> Mat {
    blocks(&[&id2(), &from_rows(vec![vec![q(1, 1), q3(-1, 3)], vec![q(0, 1), q3(2, 3)]])])
}

fn hexagonal_s() -> Vector {
    vec![q(0, 1), q(0, 1), q(1, 2), q3(1, 2)]
}

pub(super) fn o4_1() -> CatalogEntry {
    entry("O4_1", std_translations(4, 4), true, 1, None)
}

pub(super) fn o4_2() -> CatalogEntry {
    let alpha = gen(diag(&[-1, -1, 1, 1]), scaled(4, 4, 1, 2));
    entry("O4_2", with(std_translations(4, 4), vec![alpha]), true, 2, None)
}

pub(super) fn o4_3() -> CatalogEntry {
    let s = vq(&[(1, 2), (0, 1), (0, 1), (1, 2)]);
    let alpha = gen(diag(&[1, 1, -1, -1]), scaled(4, 2, 1, 2));
    entry("O4_3", with(std_translations(4, 3), vec![tr(s), alpha]), true, 2, None)
}

pub(super) fn o4_4() -> CatalogEntry {
    let alpha = gen(blocks(&[&id2(), &rotation_sixths(4)]), scaled(4, 2, 1, 3));
    let a_int = blocks(&[&id2(), &Mat::from_int_rows(&[[0, -1], [1, -1]])]);
    let rep = IntegralRep {
        conjugator: o4_rotation_p(),
        generators: with(std_translations(4, 4), vec![gen(a_int, scaled(4, 2, 1, 3))]),
    };
    entry("O4_4", with(std_translations(4, 3), vec![tr(hexagonal_s()), alpha]), true, 3, Some(rep))
}

pub(super) fn o4_5() -> CatalogEntry {
    let s1 = vec![q(0, 1), q(-1, 3), q3(2, 3), q(0, 1)];
    let s2 = vec![q(0, 1), q(1, 3), q3(1, 3), q(1, 1)];
    let alpha = gen(blocks(&[&id2(), &rotation_sixths(4)]), scaled(4, 1, 1, 3));
    let s1i = vec![q(0, 1), q(-1, 3), q3(-2, 3), q3(-2, 3)];
    let s2i = vec![q(0, 1), q(1, 3), q(0, 1), q3(-2, 3)];
    let a_int = blocks(&[&id2(), &Mat::from_int_rows(&[[0, -1], [1, -1]])]);
    let rep = IntegralRep {
        conjugator: o4_rotation_p(),
        generators: vec![t(4, 1), t(4, 2), tr(s1i), tr(s2i), gen(a_int, scaled(4, 1, 1, 3))],
    };
    entry("O4_5", vec![t(4, 1), t(4, 2), tr(s1), tr(s2), alpha], true, 3, Some(rep))
}

pub(super) fn o4_6() -> CatalogEntry {
    let alpha = gen(blocks(&[&id2(), &rotation_sixths(3)]), scaled(4, 2, 1, 4));
    entry("O4_6", with(std_translations(4, 4), vec![alpha]), true, 4, None)
}

pub(super) fn o4_7() -> CatalogEntry {
    let s1 = vq(&[(1, 2), (1, 2), (1, 1), (0, 1)]);
    let s2 = vq(&[(1, 2), (1, 2), (0, 1), (1, 1)]);
    let alpha = gen(blocks(&[&id2(), &rotation_sixths(3)]), scaled(4, 2, 1, 4));
    entry("O4_7", vec![t(4, 1), t(4, 2), tr(s1), tr(s2), alpha], true, 4, None)
}

pub(super) fn o4_8() -> CatalogEntry {
    let alpha = gen(blocks(&[&id2(), &rotation_sixths(2)]), scaled(4, 2, 1, 6));
    let a_int = blocks(&[&id2(), &Mat::from_int_rows(&[[0, -1], [1, 1]])]);
    let rep = IntegralRep {
        conjugator: o8_p(),
        generators: with(std_translations(4, 4), vec![gen(a_int, scaled(4, 2, 1, 6))]),
    };
    entry("O4_8", with(std_translations(4, 3), vec![tr(hexagonal_s()), alpha]), true, 6, Some(rep))
}

pub(super) fn n4_1() -> CatalogEntry {
    let alpha = gen(diag(&[1, 1, 1, -1]), scaled(4, 1, 1, 2));
    entry("N4_1", with(std_translations(4, 4), vec![alpha]), false, 2, None)
}

pub(super) fn n4_2() -> CatalogEntry {
    let s = vq(&[(0, 1), (0, 1), (1, 2), (1, 2)]);
    let alpha = gen(diag(&[1, 1, 1, -1]), scaled(4, 1, 1, 2));
    entry("N4_2", with(std_translations(4, 3), vec![tr(s), alpha]), false, 2, None)
}

pub(super) fn n4_14() -> CatalogEntry {
    let alpha = gen(diag(&[-1, -1, -1, 1]), scaled(4, 4, 1, 2));
    entry("N4_14", with(std_translations(4, 4), vec![alpha]), false, 2, None)
}

pub(super) fn n4_15() -> CatalogEntry {
    let alpha = gen(blocks(&[&e0().neg(), &rotation_sixths(3)]), scaled(4, 2, 1, 4));
    entry("N4_15", with(std_translations(4, 4), vec![alpha]), false, 4, None)
}

pub(super) fn n4_16() -> CatalogEntry {
    let s1 = vq(&[(1, 2), (1, 2), (1, 2), (0, 1)]);
    let s2 = vq(&[(-1, 2), (1, 2), (-1, 2), (0, 1)]);
    let s3 = vq(&[(-1, 2), (-1, 2), (1, 2), (0, 1)]);
    let a = blocks(&[&rotation_sixths(3).neg(), &e0().neg()]);
    let alpha = gen(a, scaled(4, 4, 1, 4));
    let p = Mat::from_int_rows(&[[0, 1, 1, 0], [-1, 1, 0, 0], [-1, 0, 1, 0], [0, 0, 0, 1]]);
    let a_int = Mat::from_int_rows(&[[-1, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 0], [0, 0, 0, 1]]);
    let rep = IntegralRep {
        conjugator: p,
        generators: with(std_translations(4, 4), vec![gen(a_int, scaled(4, 4, 1, 4))]),
    };
    entry("N4_16", vec![tr(s1), tr(s2), tr(s3), t(4, 4), alpha], false, 4, Some(rep))
}

pub(super) fn n4_17() -> CatalogEntry {
    let swap = Mat::from_int_rows(&[[0, 1], [1, 0]]);
    let alpha = gen(blocks(&[&swap, &rotation_sixths(3)]), scaled(4, 2, 1, 2));
    entry("N4_17", with(std_translations(4, 4), vec![alpha]), false, 4, None)
}

pub(super) fn n4_18() -> CatalogEntry {
    let s1 = vq(&[(1, 2), (1, 2), (1, 1), (0, 1)]);
    let s2 = vq(&[(1, 2), (1, 2), (0, 1), (1, 1)]);
    let alpha = gen(blocks(&[&e0(), &rotation_sixths(9)]), vq(&[(1, 4), (1, 4), (1, 2), (0, 1)]));
    let p = from_rows(vec![
        vec![q(1, 1), q(0, 1), q(-1, 2), q(-1, 2)],
        vec![q(0, 1), q(1, 1), q(-1, 2), q(-1, 2)],
        vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)],
        vec![q(0, 1), q(0, 1), q(0, 1), q(1, 1)],
    ]);
    let a_int = Mat::from_int_rows(&[[1, 0, 1, 0], [0, -1, 0, -1], [0, 0, 0, 1], [0, 0, -1, 0]]);
    let rep = IntegralRep {
        conjugator: p,
        generators: with(std_translations(4, 4), vec![gen(a_int, scaled(4, 3, 1, 2))]),
    };
    entry("N4_18", vec![t(4, 1), t(4, 2), tr(s1), tr(s2), alpha], false, 4, Some(rep))
}

fn n4_19_like(name: &str, rot: Mat, a_int_block: [[i64; 2]; 2]) -> CatalogEntry {
    let alpha = gen(blocks(&[&e0().neg(), &rot]), scaled(4, 2, 1, 6));
    let a_int = blocks(&[&e0().neg(), &Mat::from_int_rows(&a_int_block)]);
    let rep = IntegralRep {
        conjugator: o8_p(),
        generators: with(std_translations(4, 4), vec![gen(a_int, scaled(4, 2, 1, 6))]),
    };
    entry(name, with(std_translations(4, 3), vec![tr(hexagonal_s()), alpha]), false, 6, Some(rep))
}

pub(super) fn n4_19() -> CatalogEntry {
    n4_19_like("N4_19", rotation_sixths(4), [[-1, -1], [1, 0]])
}

pub(super) fn n4_20() -> CatalogEntry {
    n4_19_like("N4_20", rotation_sixths(4).neg(), [[1, 1], [-1, 0]])
}

pub(super) fn n4_21() -> CatalogEntry {
    let a = Mat::from_int_rows(&[[1, 0, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1], [0, -1, 0, 0]]);
    let alpha = gen(a, scaled(4, 1, 1, 6));
    entry("N4_21", with(std_translations(4, 4), vec![alpha]), false, 6, None)
}
