//! Exhaustive checks of structural properties of MEN classes, run over
//! whole groups. Each check returns the violations it found.

use std::collections::BTreeMap;

use crate::arith::prime_power;
use crate::engine::Analysis;
use crate::men::{classify_men_class, reconstruct_order};
use crate::oracle::{vertex_orbits, Caps, OracleError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(check: &'static str, detail: String) -> Self {
        Violation { check, detail }
    }
}

/// Vertex set of the non-identity elements, sorted.
fn vertices_of(a: &Analysis, elements: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = elements
        .iter()
        .filter_map(|&x| a.graph.vertex_of(x))
        .collect();
    out.sort_unstable();
    out
}

fn is_class(a: &Analysis, vertices: &[usize]) -> bool {
    let Some(&first) = vertices.first() else {
        return false;
    };
    a.partition.class(a.partition.class_of(first)) == vertices
}

/// For every `x != 1` whose centralizer order is not a prime power,
/// `gen(<x>)` is exactly one class.
pub fn check_generator_classes(a: &Analysis) -> Vec<Violation> {
    let g = &a.group;
    (1..g.size())
        .filter(|&x| prime_power(g.centralizer_size(x) as u64).is_none())
        .filter(|&x| !is_class(a, &vertices_of(a, &g.gen_set(x))))
        .map(|x| {
            Violation::new(
                "generator-class",
                format!("gen(<{}>) is not a class", g.label(x)),
            )
        })
        .collect()
}

/// For `<x>` maximal cyclic with `C(x) != <x>`, `gen(<y>)` is a class for
/// every `y != 1` in `<x>`.
pub fn check_maximal_cyclic_classes(a: &Analysis) -> Vec<Violation> {
    let g = &a.group;
    let n = g.size();
    let maximal = |x: usize| {
        let ox = g.element_order(x);
        (0..n).all(|z| g.element_order(z) == ox || !g.cyclic_subgroup(z).contains(&x))
    };
    let mut out = Vec::new();
    for x in 1..n {
        if g.centralizer_size(x) == g.element_order(x) || !maximal(x) {
            continue;
        }
        for y in g.cyclic_subgroup(x).into_iter().filter(|&y| y != 0) {
            if !is_class(a, &vertices_of(a, &g.gen_set(y))) {
                out.push(Violation::new(
                    "maximal-cyclic",
                    format!(
                        "gen(<{}>) inside maximal <{}> is not a class",
                        g.label(y),
                        g.label(x)
                    ),
                ));
            }
        }
    }
    out
}

/// Every class is a coset difference or a generator set.
pub fn check_classification(a: &Analysis) -> Vec<Violation> {
    a.partition
        .classes()
        .iter()
        .filter_map(|class| classify_men_class(&a.group, &a.graph, class).err())
        .map(|e| Violation::new("classification", e.to_string()))
        .collect()
}

/// Order reconstruction from class weights gives the largest element order
/// in the class.
pub fn check_order_reconstruction(a: &Analysis) -> Vec<Violation> {
    let orders = a.class_orders();
    (0..a.partition.len())
        .filter_map(
            |id| match reconstruct_order(&a.group, &a.graph, &a.partition, id) {
                Ok(o) if o == orders[id] => None,
                Ok(o) => Some(format!(
                    "class {id}: reconstructed {o}, largest order {}",
                    orders[id]
                )),
                Err(e) => Some(e.to_string()),
            },
        )
        .map(|d| Violation::new("order-reconstruction", d))
        .collect()
}

/// Closed neighbourhoods agree inside every class and differ across
/// classes, compared as literal vertex sets.
pub fn check_neighbourhoods(a: &Analysis) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (id, class) in a.partition.classes().iter().enumerate() {
        let first = a.graph.closed_neighborhood(class[0]);
        for &v in &class[1..] {
            if a.graph.closed_neighborhood(v) != first {
                out.push(Violation::new(
                    "neighbourhoods",
                    format!("vertices {} and {v} of class {id} differ", class[0]),
                ));
            }
        }
        if let Some(other) = seen.insert(first, id) {
            out.push(Violation::new(
                "neighbourhoods",
                format!("classes {other} and {id} share a closed neighbourhood"),
            ));
        }
    }
    out
}

/// Classes of equal element order form a single orbit of the quotient's
/// automorphism group.
pub fn check_equal_order_transitivity(
    a: &Analysis,
    caps: &Caps,
) -> Result<Vec<Violation>, OracleError> {
    let orbits = vertex_orbits(a.quotient.as_weighted(), caps)?;
    let mut orbit_of = vec![0; a.quotient.node_count()];
    for (i, orbit) in orbits.iter().enumerate() {
        for &v in orbit {
            orbit_of[v] = i;
        }
    }
    let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, o) in a.class_orders().into_iter().enumerate() {
        by_order.entry(o).or_default().push(id);
    }
    Ok(by_order
        .into_iter()
        .filter(|(_, ids)| ids.iter().any(|&id| orbit_of[id] != orbit_of[ids[0]]))
        .map(|(o, ids)| {
            Violation::new(
                "equal-order-transitivity",
                format!("classes {ids:?} of order {o} span several orbits"),
            )
        })
        .collect())
}

/// All group-side checks.
pub fn audit_all(a: &Analysis) -> Vec<Violation> {
    let mut out = check_generator_classes(a);
    out.extend(check_maximal_cyclic_classes(a));
    out.extend(check_classification(a));
    out.extend(check_order_reconstruction(a));
    out.extend(check_neighbourhoods(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_group_spec, realize};

    fn analysis(spec: &str) -> Analysis {
        Analysis::new(realize(&parse_group_spec(spec).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn small_groups_are_clean() {
        for spec in [
            "Z(6)",
            "Z(12)",
            "Z(8)",
            "Ab[2,2]",
            "Ab[2,4]",
            "Sym(3)",
            "Dih(4)",
            "Q8",
            "Z(3)^2",
            "Z(4)^2",
            "Ab[2,2,3]",
            "P(Q8,Z(3))",
            "Sym(4)",
            "Dih(6)",
        ] {
            let a = analysis(spec);
            assert_eq!(audit_all(&a), vec![], "{spec}");
        }
    }

    #[test]
    fn transitivity_on_homocyclic() {
        for spec in ["Z(2)^2", "Z(3)^2", "Z(2)^3", "Z(4)^2"] {
            let a = analysis(spec);
            assert_eq!(
                check_equal_order_transitivity(&a, &Caps::default()).unwrap(),
                vec![],
                "{spec}"
            );
        }
    }

    #[test]
    fn transitivity_fails_off_homocyclic() {
        // One involution of Ab[2,4] is a square, the other two are not.
        let a = analysis("Ab[2,4]");
        let v = check_equal_order_transitivity(&a, &Caps::default()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].check, "equal-order-transitivity");
    }
}
