//! Acceptance criteria. Runs without the libtest harness so that the
//! PASS/FAIL line of every criterion is always printed; exits non-zero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use pga_core::arith::factorial;
use pga_core::audit::{
    check_classification, check_equal_order_transitivity, check_generator_classes,
    check_maximal_cyclic_classes, check_order_reconstruction,
};
use pga_core::engine::{
    analyze, aut_cyclic_formula, aut_nilpotent, sylow_quotients, Analysis, AutReport,
};
use pga_core::expr::GroupExpr;
use pga_core::group::{parse_group_spec, realize, FiniteGroup};
use pga_core::oracle::{count_automorphisms, enumerate_automorphisms, Caps, WeightedGraph};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Counting is by stabilizer chain, so a large count cap costs nothing.
const COUNT: Caps = Caps {
    max_nodes: 40,
    max_count: u64::MAX,
};

const ENUMERATE: Caps = Caps {
    max_nodes: 40,
    max_count: 200_000,
};

const CORPUS: &[&str] = &[
    "Z(6)",
    "Z(10)",
    "Z(12)",
    "Z(15)",
    "Z(18)",
    "Z(20)",
    "Z(4)",
    "Z(8)",
    "Z(9)",
    "Z(2)^2",
    "Z(3)^2",
    "Z(2)^3",
    "Z(4)^2",
    "Sym(3)",
    "Dih(4)",
    "Q8",
    "Ab[2,4]",
    "Ab[2,2,3]",
    "P(Q8,Z(3))",
];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn run(spec: &str) -> (Analysis, AutReport) {
    analyze(&parse_group_spec(spec).unwrap(), 2000, &Caps::default())
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn group(spec: &str) -> FiniteGroup {
    realize(&parse_group_spec(spec).unwrap()).unwrap()
}

fn full_count(a: &Analysis) -> Result<BigUint, String> {
    count_automorphisms(&a.power_graph_weighted(), &COUNT).map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:.2?}, limit {limit:?}"));
    }
    Ok(())
}

fn expect_eq<T: PartialEq + std::fmt::Display>(what: &str, got: T, want: T) -> Result<(), String> {
    if got != want {
        return Err(format!("{what}: got {got}, expected {want}"));
    }
    Ok(())
}

/// Structural order equals the full-graph oracle count and the expected
/// value, for each `(spec, expected)`.
fn full_agreement(cases: &[(&str, u64)]) -> Result<Vec<String>, String> {
    let mut seen = Vec::new();
    for &(spec, want) in cases {
        let (a, r) = run(spec);
        let oracle = full_count(&a).map_err(|e| format!("{spec}: {e}"))?;
        expect_eq(&format!("{spec} structural vs oracle"), &r.order, &oracle)?;
        expect_eq(
            &format!("{spec} order"),
            r.order.clone(),
            BigUint::from(want),
        )?;
        seen.push(format!("{spec}={want}"));
    }
    Ok(seen)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cases = [
        ("Z(6)", 4u64),
        ("Z(10)", 576),
        ("Z(12)", 192),
        ("Z(15)", 2 * 24 * 40320),
        ("Z(18)", 2 * 2 * 720 * 720),
        ("Z(20)", 2 * 24 * 24 * 40320),
    ];
    for &(spec, _) in &cases {
        let n: u64 = spec[2..spec.len() - 1].parse().unwrap();
        let formula = aut_cyclic_formula(n).map_err(|e| e.to_string())?;
        expect_eq(
            &format!("{spec} divisor formula"),
            formula.order(),
            run(spec).1.order,
        )?;
    }
    let seen = full_agreement(&cases)?;
    within(start, Duration::from_secs(5))?;
    Ok(seen.join(", "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let seen = full_agreement(&[("Z(4)", 6), ("Z(8)", 5040), ("Z(9)", 40320)])?;
    for (spec, q) in [("Z(4)", 4u64), ("Z(8)", 8), ("Z(9)", 9)] {
        expect_eq(
            &format!("{spec} vs S_(q-1)"),
            run(spec).1.order,
            factorial(q - 1),
        )?;
    }
    within(start, Duration::from_secs(5))?;
    Ok(seen.join(", "))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let seen = full_agreement(&[
        ("Z(2)^2", 6),
        ("Z(3)^2", 384),
        ("Z(2)^3", 5040),
        ("Z(4)^2", 3072),
    ])?;
    let template = GroupExpr::product(vec![
        GroupExpr::wreath(GroupExpr::Sym(2), 3),
        GroupExpr::sym_power(2, 6),
        GroupExpr::sym_power(1, 3),
    ]);
    let r = run("Z(4)^2").1;
    if r.raw_expression.normalize() != template.normalize() {
        return Err(format!(
            "Z(4)^2 expression {} does not match template {}",
            r.raw_expression, template
        ));
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{}; Z(4)^2 = {}",
        seen.join(", "),
        r.raw_expression
    ))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut full = 0;
    for spec in CORPUS {
        let (a, r) = run(spec);
        let quotient = count_automorphisms(a.quotient.as_weighted(), &COUNT)
            .map_err(|e| format!("{spec} quotient: {e}"))?;
        expect_eq(
            &format!("{spec} structural vs quotient oracle x factorials"),
            r.order.clone(),
            quotient * r.factorial_part(),
        )?;
        if a.graph.vertex_count() <= COUNT.max_nodes {
            expect_eq(&format!("{spec} full oracle"), r.order, full_count(&a)?)?;
            full += 1;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{} groups, {full} also checked on the full graph",
        CORPUS.len()
    ))
}

fn criterion_5() -> Outcome {
    full_agreement(&[("Sym(3)", 12), ("Dih(4)", 144), ("Q8", 48)]).map(|s| s.join(", "))
}

fn criterion_6() -> Outcome {
    let a = run("P(Q8,Z(3))").0;
    let parts = sylow_quotients(&a.group, &[group("Q8"), group("Z(3)")], &Caps::default())
        .map_err(|e| e.to_string())?;
    let product: BigUint = parts.iter().map(|p| p.aut.order()).product();
    let oracle =
        count_automorphisms(a.quotient.as_weighted(), &COUNT).map_err(|e| e.to_string())?;
    expect_eq(
        "P(Q8,Z(3)) Sylow product vs quotient oracle",
        &product,
        &oracle,
    )?;

    let z12 = Analysis::new(group("Z(12)")).map_err(|e| e.to_string())?;
    let r = aut_nilpotent(&z12, &[group("Z(4)"), group("Z(3)")], &Caps::default())
        .map_err(|e| e.to_string())?;
    expect_eq("Z(12) via Z(4) x Z(3)", r.order, BigUint::from(192u32))?;
    Ok(format!(
        "P(Q8,Z(3)) quotient aut {product} = oracle {oracle}; Z(12) = 192"
    ))
}

fn audit_corpus(
    check: impl Fn(&Analysis) -> Vec<pga_core::audit::Violation>,
) -> Result<usize, String> {
    let mut checked = 0;
    for spec in CORPUS {
        let a = run(spec).0;
        if let Some(v) = check(&a).first() {
            return Err(format!("{spec}: {}: {}", v.check, v.detail));
        }
        checked += a.partition.len();
    }
    Ok(checked)
}

fn criterion_7() -> Outcome {
    audit_corpus(check_classification).map(|n| format!("{n} classes, 0 unclassifiable"))
}

fn criterion_8() -> Outcome {
    audit_corpus(|a| {
        let mut v = check_generator_classes(a);
        v.extend(check_maximal_cyclic_classes(a));
        v
    })
    .map(|_| format!("{} groups, 0 violations", CORPUS.len()))
}

fn criterion_9() -> Outcome {
    audit_corpus(check_order_reconstruction).map(|n| format!("{n} classes, 0 violations"))
}

fn criterion_10() -> Outcome {
    for spec in ["Z(2)^2", "Z(3)^2", "Z(2)^3", "Z(4)^2"] {
        let a = run(spec).0;
        let v = check_equal_order_transitivity(&a, &Caps::default())
            .map_err(|e| format!("{spec}: {e}"))?;
        if let Some(v) = v.first() {
            return Err(format!("{spec}: {}", v.detail));
        }
    }
    Ok("4 homocyclic groups transitive".into())
}

fn criterion_11() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut relabeled = 0;
    let mut enumerated = 0;
    for spec in CORPUS {
        let a = run(spec).0;
        let graphs: Vec<WeightedGraph> =
            vec![a.power_graph_weighted(), a.quotient.as_weighted().clone()];
        for g in graphs {
            if g.node_count() > COUNT.max_nodes {
                continue;
            }
            let base = count_automorphisms(&g, &COUNT).map_err(|e| format!("{spec}: {e}"))?;
            for _ in 0..3 {
                let mut perm: Vec<usize> = (0..g.node_count()).collect();
                perm.shuffle(&mut rng);
                let c = count_automorphisms(&g.relabel(&perm), &COUNT)
                    .map_err(|e| format!("{spec}: {e}"))?;
                expect_eq(&format!("{spec} relabeled count"), &c, &base)?;
                relabeled += 1;
            }
            if base <= BigUint::from(ENUMERATE.max_count) {
                let all =
                    enumerate_automorphisms(&g, &ENUMERATE).map_err(|e| format!("{spec}: {e}"))?;
                expect_eq(
                    &format!("{spec} enumeration length"),
                    BigUint::from(all.len()),
                    base,
                )?;
                enumerated += 1;
            }
        }
    }
    Ok(format!(
        "{relabeled} relabelings stable, {enumerated} enumerations match counts"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("cyclic groups, n not a prime power", criterion_1),
        ("cyclic prime powers", criterion_2),
        ("homocyclic groups", criterion_3),
        ("quotient reduction on the corpus", criterion_4),
        ("nonabelian sanity", criterion_5),
        ("nilpotent Sylow product", criterion_6),
        ("class shape completeness", criterion_7),
        ("generator-set classes", criterion_8),
        ("order reconstruction", criterion_9),
        ("equal-order transitivity", criterion_10),
        ("oracle self-consistency", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({took:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} ({took:.2?}): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
