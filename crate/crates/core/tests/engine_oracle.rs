use num_bigint::BigUint;
use pga_core::arith::{factorize, totient};
use pga_core::audit::{audit_all, check_equal_order_transitivity};
use pga_core::engine::{
    analyze, aut_cyclic_formula, aut_homocyclic_formula, quotient_aut, verify, Method, Verdict,
};
use pga_core::group::{parse_group_spec, GroupSpec};
use pga_core::oracle::{count_automorphisms, Caps, WeightedGraph};
use proptest::prelude::*;

/// Counts come from a stabilizer chain, so the count cap can be lifted.
const WIDE: Caps = Caps {
    max_nodes: 64,
    max_count: u64::MAX,
};

fn checked(spec: &GroupSpec) -> Verdict {
    let caps = WIDE;
    let (a, r) = analyze(spec, 2000, &caps).unwrap_or_else(|e| panic!("{spec}: {e}"));
    assert_eq!(r.order, r.expression.order());
    assert_eq!(r.raw_expression.order(), r.order);
    verify(&a, &r, &caps)
}

fn assert_verified(text: &str) {
    let v = checked(&parse_group_spec(text).unwrap());
    assert!(
        matches!(
            v,
            Verdict::FullVerified { .. } | Verdict::QuotientVerified { .. }
        ),
        "{text}: {} {}",
        v.status(),
        v.detail()
    );
}

#[test]
fn larger_homocyclic_groups_at_quotient_level() {
    for spec in [
        "Z(8)^2", "Z(4)^3", "Z(9)^2", "Z(3)^3", "Z(5)^2", "Z(2)^4", "Z(7)^2",
    ] {
        assert_verified(spec);
        let (a, r) = analyze(&parse_group_spec(spec).unwrap(), 2000, &Caps::default()).unwrap();
        assert_eq!(r.method, Method::HomocyclicFormula, "{spec}");
        let v = check_equal_order_transitivity(&a, &Caps::default()).unwrap();
        assert!(v.is_empty(), "{spec}: {v:?}");
    }
}

#[test]
fn mixed_groups_verify() {
    for spec in [
        "Ab[2,8]",
        "Ab[2,2,4]",
        "Ab[4,8]",
        "Ab[3,9]",
        "Ab[2,4,3]",
        "P(Dih(4),Z(3))",
        "P(Q8,Z(5))",
        "P(Q8,Z(9))",
        "Sym(4)",
        "Dih(5)",
        "Dih(6)",
        "Dih(8)",
        "P(Sym(3),Z(5))",
        "P(Sym(3),Z(2))",
        "P(Q8,Z(2))",
    ] {
        assert_verified(spec);
    }
}

#[test]
fn audits_on_wider_corpus() {
    for spec in [
        "Sym(5)",
        "Sym(4)",
        "Dih(8)",
        "Z(8)^2",
        "P(Q8,Z(9))",
        "Ab[2,4,8]",
        "P(Dih(4),Z(3))",
    ] {
        let (a, _) = analyze(&parse_group_spec(spec).unwrap(), 2000, &Caps::default()).unwrap();
        assert_eq!(audit_all(&a), vec![], "{spec}");
    }
}

#[test]
fn cyclic_formula_agrees_with_pipeline() {
    for n in 2..=300u64 {
        let (_, r) = analyze(&GroupSpec::Cyclic(n), 2000, &Caps::default()).unwrap();
        let expected: BigUint = if factorize(n).len() >= 2 {
            aut_cyclic_formula(n).unwrap().order()
        } else {
            pga_core::arith::factorial(n - 1)
        };
        assert_eq!(r.order, expected, "Z({n})");
        let classes: u64 = pga_core::arith::divisors(n).len() as u64 - 1;
        assert_eq!(
            r.classes.len() as u64,
            if factorize(n).len() >= 2 { classes } else { 1 }
        );
        if factorize(n).len() >= 2 {
            for c in &r.classes {
                assert_eq!(c.weight as u64, totient(c.element_order as u64));
            }
        }
    }
}

#[test]
fn homocyclic_formula_agrees_with_pipeline() {
    for (p, m, n) in [
        (2u64, 1u32, 5u64),
        (2, 2, 3),
        (2, 3, 2),
        (3, 2, 2),
        (5, 1, 3),
        (2, 1, 10),
    ] {
        let spec = GroupSpec::Homocyclic {
            prime: p,
            exponent: m,
            rank: n,
        };
        let (_, r) = analyze(&spec, 2000, &Caps::default()).unwrap();
        assert_eq!(
            r.order,
            aut_homocyclic_formula(p, m, n).unwrap().order(),
            "{spec}"
        );
    }
}

fn arb_weighted_graph() -> impl Strategy<Value = WeightedGraph> {
    (1usize..10).prop_flat_map(|n| {
        (
            proptest::collection::vec(1u64..3, n),
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            any::<bool>(),
        )
            .prop_map(move |(weights, bits, apex)| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        // Sparse graphs, optionally with node 0 dominating, so
                        // both the recursion and the fallback are exercised.
                        if (apex && u == 0) || (bits[k] && (u + v) % 3 == 0) {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                WeightedGraph::new(weights, edges).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decomposition_matches_oracle(g in arb_weighted_graph()) {
        let caps = WIDE;
        let e = quotient_aut(&g, &caps).unwrap();
        prop_assert_eq!(e.order(), count_automorphisms(&g, &caps).unwrap());
        prop_assert_eq!(e.normalize().order(), e.order());
    }

    #[test]
    fn random_abelian_groups_verify(ds in proptest::collection::vec(2u64..9, 1..4)) {
        let order: u64 = ds.iter().product();
        prop_assume!(order <= 128);
        let v = checked(&GroupSpec::Abelian(ds.clone()));
        prop_assert!(
            matches!(v, Verdict::FullVerified { .. } | Verdict::QuotientVerified { .. }),
            "{:?}: {}", ds, v.detail()
        );
    }

    #[test]
    fn random_products_verify(
        a in prop_oneof![Just("Q8"), Just("Dih(4)"), Just("Sym(3)"), Just("Dih(3)")],
        n in 2u64..8,
    ) {
        let spec = parse_group_spec(&format!("P({a},Z({n}))")).unwrap();
        let v = checked(&spec);
        prop_assert!(
            matches!(v, Verdict::FullVerified { .. } | Verdict::QuotientVerified { .. }),
            "{}: {}", spec, v.detail()
        );
    }
}
