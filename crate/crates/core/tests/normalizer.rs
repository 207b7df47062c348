use std::collections::BTreeSet;

use flatmod::catalog::{expected_results, load_group, CatalogEntry, IntegralRep, INTEGRAL_REP_NAMES, NAMES};
use flatmod::exactmath::{LatticeBasis, Mat};
use flatmod::normalizer::{
    conjugation_check, enumerate_members, enumerate_members_with_budget, is_semidirect, normalizer_membership,
    semidirect_obstruction,
};
use flatmod::Error;
use proptest::prelude::*;

fn m<const C: usize>(rows: &[[i64; C]]) -> Mat {
    Mat::from_int_rows(rows)
}

fn keys(ms: &[Mat]) -> BTreeSet<Vec<i64>> {
    ms.iter().map(|x| x.to_i64_entries().unwrap()).collect()
}

fn member(x: &Mat, g: &CatalogEntry) -> bool {
    match normalizer_membership(x, g) {
        Ok(v) => v.member,
        Err(Error::DoesNotPreserveLattice | Error::CandidateDoesNotNormalize | Error::NotUnimodular(_)) => false,
        Err(e) => panic!("{}: {e}", g.name),
    }
}

/// Closure of `gens` under products, as integer entry vectors.
fn closure(gens: &[Mat]) -> BTreeSet<Vec<i64>> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier = vec![Mat::identity(gens[0].rows())];
    seen.insert(frontier[0].to_i64_entries().unwrap());
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.to_i64_entries().unwrap()) {
                frontier.push(y);
            }
        }
    }
    seen
}

#[test]
fn listed_generators_are_members_outside_the_o4_2_erratum() {
    for name in NAMES.iter().filter(|n| **n != "O4_2") {
        let g = load_group(name).unwrap();
        for x in &expected_results(name).unwrap().normalizer_generators {
            let v = normalizer_membership(x, &g).unwrap();
            assert!(v.member, "{name}: {x}");
            let w = v.witness_translation.unwrap();
            assert!(conjugation_check(&g, x, &w).unwrap(), "{name}: {x}");
        }
    }
}

/// The lattice condition on the second block of O4_2 forces `b` even, not `c`.
#[test]
fn o4_2_second_block_needs_even_upper_right_entry() {
    let g = load_group("O4_2").unwrap();
    let block = |b: [[i64; 2]; 2]| m(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, b[0][0], b[0][1]], [0, 0, b[1][0], b[1][1]]]);
    assert!(!member(&block([[1, 1], [0, 1]]), &g));
    assert!(member(&block([[1, 0], [1, 1]]), &g));
    assert!(member(&block([[1, 2], [0, 1]]), &g));
    assert!(!member(&block([[0, 1], [1, 0]]), &g));
}

#[test]
fn b1_shear_counterexample() {
    let g = load_group("B1").unwrap();
    assert!(member(&m(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]), &g));
    assert!(!member(&m(&[[1, 0, 0], [1, 1, 0], [0, 0, 1]]), &g));
}

#[test]
fn b3_enumeration_is_the_sign_matrices() {
    let g = load_group("B3").unwrap();
    let found = keys(&enumerate_members(&g, 2).unwrap());
    let mut signs = BTreeSet::new();
    for a in [-1, 1] {
        for b in [-1, 1] {
            for c in [-1, 1] {
                signs.insert(vec![a, 0, 0, 0, b, 0, 0, 0, c]);
            }
        }
    }
    assert_eq!(found, signs);
}

#[test]
fn g4_enumeration_is_the_dihedral_group_of_the_listed_generators() {
    let g = load_group("G4").unwrap();
    let found = keys(&enumerate_members(&g, 2).unwrap());
    let generated = closure(&expected_results("G4").unwrap().normalizer_generators);
    assert_eq!(found.len(), 8);
    assert_eq!(found, generated);
}

#[test]
fn semidirect_verdicts() {
    for name in ["O4_3", "O4_7", "N4_2"] {
        assert!(!is_semidirect(&load_group(name).unwrap(), 2).unwrap(), "{name}");
    }
    for name in ["N4_1", "T3", "T4"] {
        assert!(is_semidirect(&load_group(name).unwrap(), 2).unwrap(), "{name}");
    }
}

#[test]
fn o4_5_has_a_member_needing_a_translation() {
    let g = load_group("O4_5").unwrap();
    let x = m(&[[-1, 0, 0, 0], [-2, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]);
    let v = normalizer_membership(&x, &g).unwrap();
    assert!(v.member && !v.zero_translation_works);
    assert!(conjugation_check(&g, &x, v.witness_translation.as_ref().unwrap()).unwrap());
    assert!(semidirect_obstruction(&g, 2).unwrap().is_some());
}

#[test]
fn budget_is_enforced() {
    let g = load_group("N4_14").unwrap();
    assert!(matches!(enumerate_members_with_budget(&g, 2, 1000), Err(Error::EnumerationBudgetExceeded(_))));
}

/// The entry given by the integral representation of `g`.
fn integral_entry(g: &CatalogEntry) -> CatalogEntry {
    let IntegralRep { generators, .. } = g.integral_rep.clone().unwrap();
    let translations: Vec<_> = generators.iter().filter(|f| f.is_pure_translation()).map(|f| f.translation.clone()).collect();
    CatalogEntry {
        name: format!("{}-integral", g.name),
        lattice: LatticeBasis::from_vectors(&translations).unwrap(),
        generators,
        integral_rep: None,
        ..g.clone()
    }
}

fn unimodular(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1i64..=1, n * n).prop_filter("det ±1", move |v| {
        Mat::from_i64(n, n, v).det().unwrap().to_i64().is_some_and(|d| d.abs() == 1)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `X ∈ N(π)` iff `P X P⁻¹ ∈ N(PπP⁻¹)`, on lattice-preserving candidates.
    #[test]
    fn membership_is_conjugation_equivariant(k in 0usize..INTEGRAL_REP_NAMES.len(), y in unimodular(4)) {
        let g = load_group(INTEGRAL_REP_NAMES[k]).unwrap();
        let gi = integral_entry(&g);
        let p = &g.integral_rep.as_ref().unwrap().conjugator;
        let x = g.lattice.from_lattice_coords(&Mat::from_i64(4, 4, &y)).unwrap();
        let px = &(p * &x) * &p.inverse().unwrap();
        prop_assert_eq!(member(&x, &g), member(&px, &gi));
    }

    /// Inverses and products of enumerated members that stay within the bound
    /// are enumerated members.
    #[test]
    fn enumeration_is_closed(name in prop::sample::select(vec!["G3", "G6", "B2", "O4_4", "O4_7"]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = load_group(name).unwrap();
        let ms = enumerate_members(&g, 1).unwrap();
        let set = keys(&ms);
        let (a, b) = (&ms[i.index(ms.len())], &ms[j.index(ms.len())]);
        for c in [a.inverse().unwrap(), a * b] {
            let e = c.to_i64_entries().unwrap();
            if e.iter().all(|v| v.abs() <= 1) {
                prop_assert!(set.contains(&e), "{} missing {:?}", name, e);
            }
        }
    }
}

#[test]
fn equivariance_holds_on_enumerated_members() {
    for name in INTEGRAL_REP_NAMES {
        let g = load_group(name).unwrap();
        let gi = integral_entry(&g);
        let p = g.integral_rep.as_ref().unwrap().conjugator.clone();
        let pinv = p.inverse().unwrap();
        for y in enumerate_members(&g, 1).unwrap().iter().take(40) {
            let x = g.lattice.from_lattice_coords(y).unwrap();
            assert!(member(&x, &g), "{name}: {x}");
            assert!(member(&(&(&p * &x) * &pinv), &gi), "{name}: {x}");
        }
    }
}
