//! Structural computation of `Aut(P(G))`: the quotient reduction, closed
//! forms for cyclic and homocyclic groups, and the Sylow product for
//! nilpotent groups.

mod formulas;
mod nilpotent;
mod report;

use std::collections::BTreeMap;

use thiserror::Error;

pub use formulas::{
    aut_cyclic_formula, aut_homocyclic_formula, aut_prime_power_cyclic, factorial_product,
    homocyclic_component_counts,
};
pub use nilpotent::{aut_nilpotent, sylow_quotients, SylowQuotient};
pub use report::{verify, AutReport, ClassRow, Level, Method, Verdict};

use crate::arith::factorize;
use crate::expr::GroupExpr;
use crate::graph::{build_power_graph, GraphError, PowerGraph};
use crate::group::{realize_with_limit, FiniteGroup, GroupError, GroupSpec};
use crate::men::{
    build_quotient, classify_men_class, men_partition, reconstruct_order, MenError, MenPartition,
    QuotientGraph,
};
use crate::oracle::{are_isomorphic, count_automorphisms, Caps, OracleError, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Men(#[from] MenError),
    #[error("order-only result unavailable: {0}")]
    Oracle(#[from] OracleError),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("inconsistent results: {left_method} gives {left}, {right_method} gives {right}")]
    Inconsistent {
        left_method: String,
        left: String,
        right_method: String,
        right: String,
    },
    #[error("closed form produced a non-integral value: {0}")]
    NonIntegral(String),
    #[error("value too large for an explicit expression: {0}")]
    TooLarge(String),
}

impl EngineError {
    /// True when an oracle limit, not a defect, stopped the computation.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            EngineError::Oracle(OracleError::TooManyNodes { .. })
                | EngineError::Oracle(OracleError::CountCapExceeded { .. })
        )
    }

    /// True for failures that contradict the theory the engine relies on.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            EngineError::Men(_)
                | EngineError::Inconsistent { .. }
                | EngineError::NonIntegral(_)
                | EngineError::Oracle(OracleError::InvalidGraph(_))
        )
    }
}

/// A group with its power graph, MEN partition and weighted quotient.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub group: FiniteGroup,
    pub graph: PowerGraph,
    pub partition: MenPartition,
    pub quotient: QuotientGraph,
}

impl Analysis {
    pub fn new(group: FiniteGroup) -> Result<Self, EngineError> {
        let graph = build_power_graph(&group)?;
        let partition = men_partition(&graph);
        let quotient = build_quotient(&graph, &partition)?;
        Ok(Analysis {
            group,
            graph,
            partition,
            quotient,
        })
    }

    pub fn power_graph_weighted(&self) -> WeightedGraph {
        WeightedGraph::unweighted(self.graph.vertex_count(), self.graph.edges())
            .expect("power graph is simple")
    }

    /// Largest element order in each class.
    pub fn class_orders(&self) -> Vec<usize> {
        self.partition
            .classes()
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&v| self.group.element_order(self.graph.element(v)))
                    .max()
                    .unwrap_or(1)
            })
            .collect()
    }

    /// One row per class; fails on a class of neither shape or an order
    /// reconstruction that disagrees with the group.
    pub fn class_rows(&self) -> Result<Vec<ClassRow>, EngineError> {
        let orders = self.class_orders();
        let mut rows = Vec::with_capacity(self.partition.len());
        for (id, class) in self.partition.classes().iter().enumerate() {
            let kind = classify_men_class(&self.group, &self.graph, class)?.kind();
            let reconstructed = reconstruct_order(&self.group, &self.graph, &self.partition, id)?;
            if reconstructed != orders[id] {
                return Err(MenError::OrderMismatch {
                    class: id,
                    reconstructed,
                    actual: orders[id],
                }
                .into());
            }
            rows.push(ClassRow {
                members: class
                    .iter()
                    .map(|&v| self.group.label(self.graph.element(v)).to_string())
                    .collect(),
                weight: class.len(),
                element_order: orders[id],
                men_type: kind,
            });
        }
        Ok(rows)
    }

    /// `S_|class|` for every class, in class order.
    pub fn class_symmetric_factors(&self) -> Vec<GroupExpr> {
        self.partition
            .classes()
            .iter()
            .map(|c| GroupExpr::Sym(c.len() as u64))
            .collect()
    }
}

/// Cheap isomorphism invariants compared before calling the oracle.
fn fingerprint(g: &WeightedGraph) -> (usize, usize, Vec<(u64, usize)>) {
    let mut profile: Vec<(u64, usize)> = (0..g.node_count())
        .map(|v| (g.weight(v), g.degree(v)))
        .collect();
    profile.sort_unstable();
    (g.node_count(), g.edge_count(), profile)
}

/// `Aut` of a weighted graph as an expression: components grouped by
/// certified isomorphism, each class contributing `Aut(C) wr S_m`.
pub fn quotient_aut(q: &WeightedGraph, caps: &Caps) -> Result<GroupExpr, EngineError> {
    let mut classes: Vec<(WeightedGraph, u64)> = Vec::new();
    let mut prints = Vec::new();
    for comp in q.components() {
        let sub = q.induced(&comp);
        let print = fingerprint(&sub);
        let mut placed = false;
        for (i, (rep, copies)) in classes.iter_mut().enumerate() {
            if prints[i] != print {
                continue;
            }
            if are_isomorphic(rep, &sub, caps)?.is_some() {
                *copies += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((sub, 1));
            prints.push(print);
        }
    }
    let factors = classes
        .iter()
        .map(|(rep, copies)| Ok(GroupExpr::wreath(component_aut(rep, caps)?, *copies)))
        .collect::<Result<Vec<_>, EngineError>>()?;
    Ok(GroupExpr::product(factors))
}

fn component_aut(c: &WeightedGraph, caps: &Caps) -> Result<GroupExpr, EngineError> {
    let n = c.node_count();
    if n == 1 {
        return Ok(GroupExpr::Trivial);
    }
    let dominating: Vec<usize> = (0..n).filter(|&v| c.degree(v) == n - 1).collect();
    if let [apex] = dominating[..] {
        let rest: Vec<usize> = (0..n).filter(|&v| v != apex).collect();
        return quotient_aut(&c.induced(&rest), caps);
    }
    Ok(GroupExpr::Opaque(count_automorphisms(c, caps)?))
}

fn assemble(
    analysis: &Analysis,
    quotient_aut: GroupExpr,
    raw_expression: GroupExpr,
    method: Method,
) -> Result<AutReport, EngineError> {
    let expression = raw_expression.normalize();
    let order = expression.order();
    Ok(AutReport {
        spec: analysis.group.description().to_string(),
        group_order: analysis.group.size(),
        vertex_count: analysis.graph.vertex_count(),
        classes: analysis.class_rows()?,
        quotient_nodes: analysis.quotient.node_count(),
        quotient_edges: analysis.quotient.edge_count(),
        quotient_aut,
        raw_expression,
        expression,
        order,
        method,
        verification: Verdict::Skipped,
    })
}

/// `Aut(quotient)` extended by the symmetric groups on the classes.
pub fn aut_full(analysis: &Analysis, caps: &Caps) -> Result<AutReport, EngineError> {
    let q = quotient_aut(analysis.quotient.as_weighted(), caps)?;
    let mut factors = vec![q.clone()];
    factors.extend(analysis.class_symmetric_factors());
    assemble(analysis, q, GroupExpr::extension(factors), Method::Quotient)
}

fn check_same_order(
    left_method: &str,
    left: &GroupExpr,
    right_method: &str,
    right: &GroupExpr,
) -> Result<(), EngineError> {
    let (a, b) = (left.order(), right.order());
    if a != b {
        return Err(EngineError::Inconsistent {
            left_method: left_method.into(),
            left: a.to_string(),
            right_method: right_method.into(),
            right: b.to_string(),
        });
    }
    Ok(())
}

fn primary_parts(invariants: &[u64]) -> BTreeMap<u64, Vec<u64>> {
    let mut parts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &d in invariants {
        for (p, e) in factorize(d) {
            parts.entry(p).or_default().push(p.pow(e));
        }
    }
    for qs in parts.values_mut() {
        qs.sort_unstable_by(|a, b| b.cmp(a));
    }
    parts
}

/// Abelian dispatch. `invariants` are orders of cyclic factors whose
/// product is `G`; they are checked against the group table. Closed forms
/// are always cross-checked against the generic quotient pipeline.
pub fn aut_abelian(
    analysis: &Analysis,
    invariants: &[u64],
    caps: &Caps,
) -> Result<AutReport, EngineError> {
    let g = &analysis.group;
    if !g.is_abelian() {
        return Err(EngineError::NotApplicable(format!(
            "{} is not abelian",
            g.description()
        )));
    }
    let product = invariants
        .iter()
        .try_fold(1u64, |acc, &d| acc.checked_mul(d))
        .ok_or(GroupError::Overflow)?;
    if product != g.size() as u64 {
        return Err(EngineError::NotApplicable(format!(
            "invariants {invariants:?} multiply to {product}, but |G| = {}",
            g.size()
        )));
    }
    let parts = primary_parts(invariants);
    let actual = g.primary_invariants().unwrap_or_default();
    if parts != actual {
        return Err(EngineError::Inconsistent {
            left_method: "given invariants".into(),
            left: format!("{parts:?}"),
            right_method: "group table".into(),
            right: format!("{actual:?}"),
        });
    }

    let generic = aut_full(analysis, caps)?;
    let closed = match parts.iter().collect::<Vec<_>>()[..] {
        [(&p, qs)] => {
            let m = qs[0].ilog(p);
            if qs.len() == 1 {
                Some((aut_prime_power_cyclic(p, m)?, Method::CompleteGraph))
            } else if qs.iter().all(|&q| q == qs[0]) {
                Some((
                    aut_homocyclic_formula(p, m, qs.len() as u64)?,
                    Method::HomocyclicFormula,
                ))
            } else {
                None
            }
        }
        _ if parts.values().all(|qs| qs.len() == 1) => {
            Some((aut_cyclic_formula(g.size() as u64)?, Method::CyclicFormula))
        }
        _ => {
            let factors = parts
                .iter()
                .map(|(p, qs)| {
                    let spec = if qs.len() == 1 {
                        GroupSpec::Cyclic(qs[0])
                    } else {
                        GroupSpec::Abelian(qs.clone())
                    };
                    realize_with_limit(&spec, g.size() as u64)
                        .map_err(|e| EngineError::NotApplicable(format!("Sylow {p}-subgroup: {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return aut_nilpotent(analysis, &factors, caps);
        }
    };
    let Some((closed, method)) = closed else {
        return Ok(generic);
    };
    check_same_order(
        method.as_str(),
        &closed,
        Method::Quotient.as_str(),
        &generic.expression,
    )?;
    assemble(analysis, generic.quotient_aut, closed, method)
}

/// Realizes `spec` and picks the most specific method that applies.
pub fn analyze(
    spec: &GroupSpec,
    max_order: u64,
    caps: &Caps,
) -> Result<(Analysis, AutReport), EngineError> {
    let group = realize_with_limit(spec, max_order)?;
    let analysis = Analysis::new(group)?;
    let report = if analysis.group.is_abelian() {
        let invariants: Vec<u64> = analysis
            .group
            .primary_invariants()
            .unwrap_or_default()
            .into_values()
            .flatten()
            .collect();
        aut_abelian(&analysis, &invariants, caps)?
    } else {
        match spec.sylow_factors() {
            Some(factors) if factors.len() >= 2 => {
                let sylow = factors
                    .values()
                    .map(|s| realize_with_limit(s, max_order))
                    .collect::<Result<Vec<_>, _>>()?;
                aut_nilpotent(&analysis, &sylow, caps)?
            }
            _ => aut_full(&analysis, caps)?,
        }
    };
    Ok((analysis, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group_spec;
    use num_bigint::BigUint;

    fn run(spec: &str) -> (Analysis, AutReport) {
        analyze(&parse_group_spec(spec).unwrap(), 2000, &Caps::default()).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn full_examples() {
        let (_, r) = run("Z(6)");
        assert_eq!(r.order, big(4));
        assert_eq!(r.expression_string(), "S2 x S2");
        assert_eq!(r.method, Method::CyclicFormula);

        let (_, r) = run("Ab[2,2]");
        assert_eq!(r.order, big(6));
        assert_eq!(r.expression_string(), "S3");

        let (_, r) = run("Dih(4)");
        assert_eq!(r.order, big(144));
        assert_eq!(r.expression_string(), "S4 x S3");
        assert_eq!(r.method, Method::Quotient);

        let (_, r) = run("Z(4)^2");
        assert_eq!(r.order, big(3072));
        assert_eq!(r.expression_string(), "(S2 wr S3) x S2^6");
        assert_eq!(r.method, Method::HomocyclicFormula);
        assert_eq!(r.quotient_aut.normalize().to_string(), "S2 wr S3");

        assert_eq!(run("Z(3)^2").1.order, big(384));
        assert_eq!(run("Z(12)").1.order, big(192));
        assert_eq!(run("Z(10)").1.order, big(576));
        assert_eq!(run("Z(8)").1.method, Method::CompleteGraph);
    }

    #[test]
    fn generic_pipeline_matches_examples() {
        for (spec, order) in [
            ("Z(6)", 4u64),
            ("Ab[2,2]", 6),
            ("Dih(4)", 144),
            ("Z(4)^2", 3072),
        ] {
            let g = realize_with_limit(&parse_group_spec(spec).unwrap(), 2000).unwrap();
            let r = aut_full(&Analysis::new(g).unwrap(), &Caps::default()).unwrap();
            assert_eq!(r.order, big(order), "{spec}");
            assert_eq!(r.raw_expression.order(), r.order);
        }
    }

    #[test]
    fn quotient_examples() {
        let (a, r) = run("Q8");
        assert_eq!(r.quotient_aut.normalize(), GroupExpr::Sym(3));
        assert_eq!(r.order, big(48));
        assert_eq!(a.quotient.node_count(), 4);

        let (_, r) = run("Z(4)");
        assert_eq!(r.quotient_aut.normalize(), GroupExpr::Trivial);
        assert_eq!(r.order, big(6));

        let (_, r) = run("Z(6)");
        assert_eq!(r.quotient_aut.normalize(), GroupExpr::Trivial);
    }

    #[test]
    fn nonabelian_sanity() {
        assert_eq!(run("Sym(3)").1.order, big(12));
        assert_eq!(run("Q8").1.order, big(48));
    }

    #[test]
    fn class_table() {
        let (_, r) = run("Z(6)");
        let rows: Vec<(Vec<&str>, usize, usize, &str)> = r
            .classes
            .iter()
            .map(|c| {
                (
                    c.members.iter().map(String::as_str).collect(),
                    c.weight,
                    c.element_order,
                    c.men_type.as_str(),
                )
            })
            .collect();
        assert_eq!(
            rows,
            vec![
                (vec!["g", "g^5"], 2, 6, "2"),
                (vec!["g^2", "g^4"], 2, 3, "2"),
                (vec!["g^3"], 1, 2, "2"),
            ]
        );
        assert_eq!(r.factorial_part(), big(4));
    }

    #[test]
    fn quotient_aut_handles_mixed_components() {
        // Two K2 components with weights (1,2) and one with (2,2).
        let g = WeightedGraph::new(vec![1, 2, 1, 2, 2, 2], [(0, 1), (2, 3), (4, 5)]).unwrap();
        let e = quotient_aut(&g, &Caps::default()).unwrap();
        assert_eq!(
            e.order(),
            count_automorphisms(&g, &Caps::default()).unwrap()
        );
        assert_eq!(e.order(), big(4));
    }

    #[test]
    fn quotient_aut_falls_back_to_counting() {
        // C5 has no dominating node.
        let c5 = WeightedGraph::unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(
            quotient_aut(&c5, &Caps::default()).unwrap().normalize(),
            GroupExpr::Opaque(big(10))
        );
        let tiny = Caps {
            max_nodes: 4,
            ..Caps::default()
        };
        let err = quotient_aut(&c5, &tiny).unwrap_err();
        assert!(err.is_cap());
        assert!(err.to_string().contains("order-only result unavailable"));
    }

    #[test]
    fn abelian_dispatch_checks_invariants() {
        let g = realize_with_limit(&parse_group_spec("Ab[2,4]").unwrap(), 2000).unwrap();
        let a = Analysis::new(g).unwrap();
        let caps = Caps::default();
        assert!(aut_abelian(&a, &[8], &caps).is_err());
        assert!(aut_abelian(&a, &[2, 2], &caps).is_err());
        let r = aut_abelian(&a, &[4, 2], &caps).unwrap();
        assert_eq!(r.method, Method::Quotient);
        assert_eq!(r.vertex_count, 7);

        let g = realize_with_limit(&parse_group_spec("Dih(3)").unwrap(), 2000).unwrap();
        let a = Analysis::new(g).unwrap();
        assert!(matches!(
            aut_abelian(&a, &[6], &caps),
            Err(EngineError::NotApplicable(_))
        ));
    }

    #[test]
    fn abelian_examples() {
        let (_, r) = run("Ab[3,3]");
        assert_eq!(r.order, big(384));
        assert_eq!(r.method, Method::HomocyclicFormula);
        let (_, r) = run("Ab[2,3]");
        assert_eq!(r.order, big(4));
        assert_eq!(r.method, Method::CyclicFormula);
        let (_, r) = run("Ab[2,2,3]");
        assert_eq!(r.method, Method::SylowProduct);
    }

    #[test]
    fn trivial_group_is_rejected() {
        let err = analyze(&parse_group_spec("Z(1)").unwrap(), 2000, &Caps::default()).unwrap_err();
        assert!(matches!(err, EngineError::Graph(GraphError::TrivialGroup)));
    }

    #[test]
    fn verification_levels() {
        let caps = Caps::default();
        let (a, r) = run("Z(12)");
        assert_eq!(verify(&a, &r, &caps).status(), "FULL-VERIFIED");
        let (a, r) = run("Z(2)^3");
        assert_eq!(
            verify(&a, &r, &caps),
            Verdict::FullVerified { count: big(5040) }
        );
        let (a, r) = run("Z(30)");
        assert_eq!(verify(&a, &r, &caps).status(), "QUOTIENT-VERIFIED");

        let (a, mut r) = run("Z(6)");
        r.order = big(5);
        assert!(matches!(
            verify(&a, &r, &caps),
            Verdict::Mismatch {
                level: Level::Full,
                ..
            }
        ));
    }

    #[test]
    fn verification_unknown_when_both_levels_exceed_caps() {
        let caps = Caps {
            max_nodes: 2,
            max_count: 10,
        };
        let (a, r) = run("Z(12)");
        assert_eq!(verify(&a, &r, &caps).status(), "UNKNOWN");
    }
}
