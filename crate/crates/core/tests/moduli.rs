use flatmod::catalog::{all_entries, expected_results, load_group, NAMES};
use flatmod::moduli::{moduli_descriptor, verify_entry, ClaimStatus, ModuliFactor, Shape, Topology};
use flatmod::Error;

fn shape(circles: usize, euclidean: usize, surfaces: Vec<(usize, usize)>) -> Topology {
    Topology::Known(Shape { circles, euclidean, surfaces })
}

#[test]
fn dimension_audit() {
    for name in NAMES {
        let e = expected_results(name).unwrap();
        assert_eq!(e.moduli_expression.factor_dimension(), e.teichmuller_dim, "{name}");
    }
}

#[test]
fn exactly_two_three_dimensional_entries_are_non_contractible() {
    let mut non_contractible = Vec::new();
    for g in all_entries().into_iter().filter(|g| g.dimension == 3) {
        let e = moduli_descriptor(&g).unwrap();
        match e.topology.unwrap() {
            Topology::Known(s) if s.is_contractible() => {}
            Topology::ExternalCitation(_) => {}
            t => {
                assert_eq!(t, shape(1, 3, vec![]), "{}", g.name);
                non_contractible.push(g.name);
            }
        }
    }
    assert_eq!(non_contractible, ["B1", "B2"]);
}

#[test]
fn four_dimensional_verdicts() {
    let t = |name: &str| moduli_descriptor(&load_group(name).unwrap()).unwrap().topology.unwrap();
    assert_eq!(t("O4_2"), shape(1, 5, vec![]));
    assert_eq!(t("O4_7"), shape(0, 2, vec![(0, 3)]));
    assert!(matches!(t("N4_14"), Topology::ExternalCitation(_)));
    for name in ["N4_15", "N4_16", "N4_17", "N4_18", "N4_19", "N4_20", "N4_21"] {
        assert_eq!(t(name), shape(0, 3, vec![]), "{name}");
    }
}

#[test]
fn descriptor_examples() {
    let g3 = moduli_descriptor(&load_group("G3").unwrap()).unwrap();
    assert_eq!(g3.factors, vec![ModuliFactor::Euclidean { k: 2 }]);
    assert_eq!(g3.topology.unwrap().tag(), "contractible");
    let o7 = moduli_descriptor(&load_group("O4_7").unwrap()).unwrap();
    assert!(matches!(&o7.factors[0], ModuliFactor::DoubleCoset { n: 2, subgroup, .. } if subgroup == "Gamma(2)"));
    let n14 = moduli_descriptor(&load_group("N4_14").unwrap()).unwrap();
    assert_eq!(n14.topology.unwrap().tag(), "unresolved-external-citation");
}

#[test]
fn o4_5_factorization_premise_fails() {
    assert!(matches!(moduli_descriptor(&load_group("O4_5").unwrap()), Err(Error::PremiseFailed(_))));
}

#[test]
fn b1_and_b2_reports() {
    let b1 = verify_entry(&load_group("B1").unwrap());
    assert!(b1.passed(), "{b1}");
    let b2 = verify_entry(&load_group("B2").unwrap());
    assert!(b2.passed(), "{b2}");
    let dc = b2.claims.iter().find(|c| c.id.starts_with("double-coset:")).unwrap();
    assert!(dc.witness.contains("index 3") && dc.witness.contains("cylinder"), "{}", dc.witness);
}

#[test]
fn o4_2_and_o4_5_are_the_failing_orientable_reports() {
    let failing: Vec<String> = all_entries()
        .iter()
        .filter(|g| g.name.starts_with("O4_"))
        .map(verify_entry)
        .filter(|r| !r.passed())
        .map(|r| {
            let ids: Vec<&str> = r.failures().iter().map(|c| c.id.as_str()).collect();
            format!("{}:{}", r.entry, ids.join(","))
        })
        .collect();
    assert_eq!(failing, ["O4_2:normalizer-generators,normalizer-predicate", "O4_5:semidirect,premise:double-coset-blocks"]);
}

#[test]
fn reports_mark_uncompared_values_as_computed() {
    let r = verify_entry(&load_group("O4_3").unwrap());
    assert_eq!(r.claim("topology").unwrap().status, ClaimStatus::Computed);
}
