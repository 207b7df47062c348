use flatmod::affine::is_isometry;
use flatmod::bieberbach::{holonomy, is_torsion_free, with_translation};
use flatmod::catalog::{all_entries, integral_rep_matches, load_group, INTEGRAL_REP_NAMES, NAMES};
use flatmod::cone::symmetric_commutant;
use flatmod::exactmath::Scalar;
use nalgebra::DMatrix;

const ORDERS: [(&str, usize); 28] = [
    ("G1", 1),
    ("G2", 2),
    ("G3", 3),
    ("G4", 4),
    ("G5", 6),
    ("G6", 4),
    ("B1", 2),
    ("B2", 2),
    ("B3", 4),
    ("B4", 4),
    ("O4_1", 1),
    ("O4_2", 2),
    ("O4_3", 2),
    ("O4_4", 3),
    ("O4_5", 3),
    ("O4_6", 4),
    ("O4_7", 4),
    ("O4_8", 6),
    ("N4_1", 2),
    ("N4_2", 2),
    ("N4_14", 2),
    ("N4_15", 4),
    ("N4_16", 4),
    ("N4_17", 4),
    ("N4_18", 4),
    ("N4_19", 6),
    ("N4_20", 6),
    ("N4_21", 6),
];

const CONE_DIMS: [(&str, usize); 28] = [
    ("G1", 6),
    ("G2", 4),
    ("G3", 2),
    ("G4", 2),
    ("G5", 2),
    ("G6", 3),
    ("B1", 4),
    ("B2", 4),
    ("B3", 3),
    ("B4", 3),
    ("O4_1", 10),
    ("O4_2", 6),
    ("O4_3", 6),
    ("O4_4", 4),
    ("O4_5", 4),
    ("O4_6", 4),
    ("O4_7", 4),
    ("O4_8", 4),
    ("N4_1", 7),
    ("N4_2", 7),
    ("N4_14", 7),
    ("N4_15", 3),
    ("N4_16", 3),
    ("N4_17", 3),
    ("N4_18", 3),
    ("N4_19", 3),
    ("N4_20", 3),
    ("N4_21", 3),
];

#[test]
fn every_entry_loads_with_isometric_generators() {
    let entries = all_entries();
    assert_eq!(entries.len(), 28);
    for (g, name) in entries.iter().zip(NAMES) {
        assert_eq!(g.name, name);
        assert!(g.generators.iter().all(is_isometry), "{name}");
    }
}

#[test]
fn holonomy_orders() {
    for (name, order) in ORDERS {
        let g = load_group(name).unwrap();
        assert_eq!(holonomy(&g).unwrap().order(), order, "{name}");
        assert_eq!(g.holonomy_order, order, "{name}");
    }
}

#[test]
fn integral_representations_reproduce_listed_generators() {
    for name in INTEGRAL_REP_NAMES {
        let g = load_group(name).unwrap();
        assert!(integral_rep_matches(&g).unwrap(), "{name}");
        let rep = g.integral_rep.as_ref().unwrap();
        assert!(rep.generators.iter().all(|f| f.linear.is_integral()), "{name}");
    }
}

#[test]
fn torsion_free_with_negative_control() {
    for g in all_entries() {
        assert!(is_torsion_free(&g).unwrap(), "{}", g.name);
    }
    let g2 = load_group("G2").unwrap();
    let k = g2.generators.iter().position(|f| !f.is_pure_translation()).unwrap();
    let mutated = with_translation(&g2, k, vec![Scalar::zero(); 3]);
    assert!(!is_torsion_free(&mutated).unwrap());
}

/// Nullity of `S ↦ AᵗSA − S` over a dense parameterization of symmetric
/// matrices, computed numerically from the singular values.
fn numeric_commutant_dim(name: &str) -> usize {
    let g = load_group(name).unwrap();
    let h = holonomy(&g).unwrap();
    let n = g.dimension;
    let params: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let gens: Vec<DMatrix<f64>> = h
        .generators()
        .iter()
        .map(|a| {
            let f = a.to_f64_rows();
            DMatrix::from_fn(n, n, |i, j| f[i][j])
        })
        .collect();
    let mut rows = Vec::new();
    for a in &gens {
        let images: Vec<DMatrix<f64>> = params
            .iter()
            .map(|&(i, j)| {
                let mut s = DMatrix::zeros(n, n);
                s[(i, j)] = 1.0;
                s[(j, i)] = 1.0;
                a.transpose() * &s * a - s
            })
            .collect();
        for r in 0..n * n {
            rows.push(images.iter().map(|m| m[(r / n, r % n)]).collect::<Vec<_>>());
        }
    }
    if rows.is_empty() {
        return params.len();
    }
    let m = DMatrix::from_fn(rows.len(), params.len(), |i, j| rows[i][j]);
    let rank = m.svd(false, false).singular_values.iter().filter(|s| **s > 1e-9).count();
    params.len() - rank
}

#[test]
fn commutant_dimensions() {
    for (name, dim) in CONE_DIMS {
        let exact = symmetric_commutant(&holonomy(&load_group(name).unwrap()).unwrap()).dimension;
        assert_eq!(exact, dim, "{name}");
        assert_eq!(numeric_commutant_dim(name), dim, "{name} numeric");
    }
}
