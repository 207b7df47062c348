use flatmod::congruence::domain::DEFAULT_PAIRING_WORD_LENGTH;
use flatmod::congruence::h2::domain_contains;
use flatmod::congruence::subgroup::{inv, mul};
use flatmod::congruence::{
    build_domain, coset_enumerate, domain_for, gl2_to_h2, is_edge_pairing, mobius, orbifold_invariants, reduce_to_domain,
    relative_index, standard_table, CongruenceSubgroup, CosetTable, FundamentalDomain, Letter, SurfaceClass, Word,
    DEFAULT_COSET_BUDGET, DEFAULT_TOLERANCE,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn named(name: &str) -> CongruenceSubgroup {
    CongruenceSubgroup::named(name).unwrap()
}

fn table(name: &str) -> CosetTable {
    standard_table(&named(name), DEFAULT_COSET_BUDGET).unwrap()
}

fn domain(name: &str) -> FundamentalDomain {
    domain_for(&table(name), DEFAULT_PAIRING_WORD_LENGTH).unwrap()
}

const DOMAIN_SUBGROUPS: [&str; 5] = ["SL(2,Z)", "Gamma0(2)+", "Gamma(2)+", "Gamma(2)Y+", "Gamma(3)+"];

#[test]
fn indices() {
    assert_eq!(table("Gamma0(2)+").index, 3);
    assert_eq!(table("Gamma(2)+").index, 6);
    assert_eq!(table("Gamma(2)Y+").index, 3);
    assert_eq!(table("Gamma(3)+").index, 12);
}

#[test]
fn index_is_multiplicative() {
    let sub = coset_enumerate(&named("Gamma(2)+"), DEFAULT_COSET_BUDGET).unwrap();
    let rel = relative_index(&sub, &named("Gamma0(2)+")).unwrap();
    assert_eq!(sub.index, table("Gamma0(2)+").index * rel);
    assert_eq!(rel, 2);
}

#[test]
fn generated_group_matches_the_upper_right_predicate() {
    let generated = coset_enumerate(&named("<Gamma0_1(6),Gamma0_5(6)>+"), DEFAULT_COSET_BUDGET).unwrap();
    let predicate = coset_enumerate(&named("Gamma0(6)+"), DEFAULT_COSET_BUDGET).unwrap();
    assert_eq!(generated.index, 12);
    assert_eq!(generated.representatives, predicate.representatives);
    let as_predicate = CosetTable { subgroup: predicate.subgroup.clone(), ..generated.clone() };
    as_predicate.validate().unwrap();
    let as_generated = CosetTable { subgroup: generated.subgroup.clone(), ..predicate };
    as_generated.validate().unwrap();
}

#[test]
fn coset_soundness() {
    for name in DOMAIN_SUBGROUPS {
        let t = table(name);
        let g = &t.subgroup;
        let reps = t.matrices();
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                if i != j {
                    assert!(!g.contains_entries(mul(a, &inv(b))), "{name}");
                }
            }
            for l in Letter::ALL {
                assert!(t.coset_of(&mul(a, &l.matrix())).is_some(), "{name}");
            }
        }
    }
}

#[test]
fn domain_cells() {
    assert_eq!(domain("Gamma0(2)+").cells.len(), 3);
    assert_eq!(domain("Gamma(2)+").cells.len(), 6);
}

#[test]
fn listed_pairings_are_edge_pairings() {
    let d = domain("Gamma0(2)+");
    for m in [[1, 1, 0, 1], [1, 0, -2, 1], [-1, -1, 2, 1]] {
        assert!(d.subgroup.contains_entries(m));
        assert!(is_edge_pairing(&d, &m), "{m:?}");
    }
    let d = domain("Gamma(2)+");
    for m in [[1, 2, 0, 1], [1, 0, -2, 1], [-3, 2, -2, 1]] {
        assert!(d.subgroup.contains_entries(m));
        assert!(is_edge_pairing(&d, &m), "{m:?}");
    }
}

#[test]
fn found_pairings_are_valid() {
    for name in DOMAIN_SUBGROUPS {
        let d = domain(name);
        let boundary = d.edges.iter().filter(|e| !e.internal).count();
        assert_eq!(2 * d.pairings.len(), boundary, "{name}");
        for p in &d.pairings {
            assert!(d.subgroup.contains_projective(&p.matrix), "{name}");
            let (src, dst) = (&d.edges[p.source], &d.edges[p.target]);
            let (a, b) = (src.from.moved_by(&p.matrix), src.to.moved_by(&p.matrix));
            assert!(
                (a.same_as(&dst.from) && b.same_as(&dst.to)) || (a.same_as(&dst.to) && b.same_as(&dst.from)),
                "{name}: {}",
                p.word
            );
        }
    }
}

#[test]
fn orbifold_classifications() {
    let inv = orbifold_invariants(&domain("SL(2,Z)")).unwrap();
    assert_eq!((inv.genus, inv.cusps, inv.cone_points), (0, 1, vec![2, 3]));
    let inv = orbifold_invariants(&domain("Gamma0(2)+")).unwrap();
    assert_eq!(inv.classification, SurfaceClass::Cylinder);
    assert_eq!((inv.cusps, inv.cone_points), (2, vec![2]));
    let inv = orbifold_invariants(&domain("Gamma(2)+")).unwrap();
    assert_eq!(inv.classification, SurfaceClass::ThreePuncturedSphere);
    assert_eq!((inv.cusps, inv.cone_points.len()), (3, 0));
    let inv = orbifold_invariants(&domain("Gamma(2)Y+")).unwrap();
    assert_eq!(inv.classification, SurfaceClass::Cylinder);
}

#[test]
fn index_twelve_domain_needs_longer_pairing_words() {
    let t = table("<Gamma0_1(6),Gamma0_5(6)>+");
    let longest = t.representatives.iter().map(|w| w.letters.len()).max().unwrap();
    let d = domain_for(&t, 2 * longest + 1).unwrap();
    let inv = orbifold_invariants(&d).unwrap();
    assert_eq!((inv.genus, inv.cusps, inv.cone_points.len()), (0, 4, 0));
}

fn word(letters: &[u8]) -> Word {
    Word::from_letters(letters.iter().map(|i| Letter::ALL[*i as usize % Letter::ALL.len()]).collect())
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn predicates_are_closed(name in prop::sample::select(DOMAIN_SUBGROUPS.to_vec()), a in prop::collection::vec(0u8..3, 0..14), b in prop::collection::vec(0u8..3, 0..14)) {
        let g = named(name);
        let (x, y) = (word(&a).matrix, word(&b).matrix);
        if g.contains_entries(x) && g.contains_entries(y) {
            prop_assert!(g.contains_entries(mul(&x, &y)));
            prop_assert!(g.contains_entries(inv(&x)));
        }
    }

    #[test]
    fn chart_is_left_orthogonal_invariant(
        x in prop::array::uniform4(-5.0f64..5.0),
        theta in 0.0f64..std::f64::consts::TAU,
        reflect in any::<bool>(),
    ) {
        let m = [[x[0], x[1]], [x[2], x[3]]];
        prop_assume!((x[0] * x[3] - x[1] * x[2]).abs() > 1e-2);
        let (c, s) = (theta.cos(), theta.sin());
        let q = if reflect { [[c, s], [s, -c]] } else { [[c, -s], [s, c]] };
        let qm = [
            [q[0][0] * m[0][0] + q[0][1] * m[1][0], q[0][0] * m[0][1] + q[0][1] * m[1][1]],
            [q[1][0] * m[0][0] + q[1][1] * m[1][0], q[1][0] * m[0][1] + q[1][1] * m[1][1]],
        ];
        let (s1, z1) = gl2_to_h2(m).unwrap();
        let (s2, z2) = gl2_to_h2(qm).unwrap();
        prop_assert!((s1 - s2).abs() <= 1e-10 * s1.max(1.0));
        prop_assert!(close(z1, z2, 1e-10), "{} vs {}", z1, z2);
    }

    #[test]
    fn reduction_lands_in_the_domain(re in -6.0f64..6.0, im in 0.01f64..4.0) {
        let z = Complex64::new(re, im);
        for name in DOMAIN_SUBGROUPS {
            let d = build_domain(&table(name));
            let r = reduce_to_domain(z, &d, DEFAULT_TOLERANCE).unwrap();
            prop_assert!(d.subgroup.contains_entries(r.gamma), "{}", name);
            prop_assert!(close(mobius(&r.gamma, z), r.z(), 1e-9), "{}", name);
            prop_assert!(domain_contains(&d, r.z(), 1e-7), "{}", name);
        }
    }
}

