use flatmod::bieberbach::holonomy;
use flatmod::catalog::{load_group, NAMES};
use flatmod::cone::{commuting_symmetric, symmetric_commutant, SymmetricCommutant};
use flatmod::exactmath::{Mat, Scalar};
use proptest::prelude::*;

fn spans_equal(a: &SymmetricCommutant, b: &SymmetricCommutant) -> bool {
    a.dimension == b.dimension && a.basis.iter().all(|s| b.contains(s)) && b.basis.iter().all(|s| a.contains(s))
}

#[test]
fn commutation_and_form_invariance_agree_on_orthogonal_entries() {
    for name in NAMES {
        let h = holonomy(&load_group(name).unwrap()).unwrap();
        let gens = h.generators();
        assert!(gens.iter().all(|a| (&a.transpose() * a).is_identity()), "{name}");
        let form = symmetric_commutant(&h);
        let commuting = commuting_symmetric(h.dim(), &gens);
        assert!(spans_equal(&form, &commuting), "{name}");
    }
}

fn symmetric(n: usize, entries: &[i64]) -> Mat {
    let mut s = Mat::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            s[(i, j)] = Scalar::from(entries[k]);
            s[(j, i)] = Scalar::from(entries[k]);
            k += 1;
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// For a random symmetric `S` and orthogonal holonomy, `AᵗSA = S` iff `SA = AS`.
    #[test]
    fn pointwise_equivalence(name in prop::sample::select(NAMES.to_vec()), entries in prop::collection::vec(-2i64..=2, 10), project in any::<bool>()) {
        let h = holonomy(&load_group(name).unwrap()).unwrap();
        let n = h.dim();
        let mut s = symmetric(n, &entries);
        if project {
            // Average over the group so that the invariant case is exercised too.
            let mut avg = Mat::zeros(n, n);
            for a in &h.elements {
                avg = avg.try_add(&(&(&a.transpose() * &s) * a)).unwrap();
            }
            s = avg;
        }
        for a in h.generators() {
            let invariant = &(&a.transpose() * &s) * &a == s;
            let commutes = &s * &a == &a * &s;
            prop_assert_eq!(invariant, commutes);
        }
    }
}
