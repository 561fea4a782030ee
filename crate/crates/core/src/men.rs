//! Maximal equal-closed-neighbourhood (MEN) classes of a power graph and the
//! weighted quotient graph they induce.

use std::collections::HashMap;

use thiserror::Error;

use crate::arith::prime_power;
use crate::graph::PowerGraph;
use crate::group::FiniteGroup;
use crate::oracle::WeightedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MenError {
    #[error("quotient is ill-defined: classes {0} and {1} are partially adjacent")]
    InconsistentQuotient(usize, usize),
    #[error("class {class} is neither <a> - <a^(p^t)> nor gen(<a>) (members {members:?})")]
    Unclassifiable { class: usize, members: Vec<String> },
    #[error("class {class} straddles the cyclic subgroup generated by {generator}")]
    Straddle { class: usize, generator: String },
    #[error(
        "reconstructed order {reconstructed} of class {class} differs from element order {actual}"
    )]
    OrderMismatch {
        class: usize,
        reconstructed: usize,
        actual: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MenPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl MenPartition {
    /// Classes ordered by smallest member; members sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &[usize] {
        &self.classes[id]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn weight(&self, id: usize) -> usize {
        self.classes[id].len()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Groups vertices by their closed neighbourhood.
pub fn men_partition(pg: &PowerGraph) -> MenPartition {
    let n = pg.vertex_count();
    let mut by_neighborhood = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for (v, slot) in class_of.iter_mut().enumerate() {
        let id = *by_neighborhood
            .entry(pg.closed_neighborhood_bits(v))
            .or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
        classes[id].push(v);
        *slot = id;
    }
    MenPartition { classes, class_of }
}

/// One node per MEN class, weighted by class size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGraph {
    graph: WeightedGraph,
}

impl QuotientGraph {
    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn weight(&self, node: usize) -> u64 {
        self.graph.weight(node)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.graph.adjacent(a, b)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.graph.edges()
    }

    pub fn as_weighted(&self) -> &WeightedGraph {
        &self.graph
    }
}

pub fn build_quotient(pg: &PowerGraph, mp: &MenPartition) -> Result<QuotientGraph, MenError> {
    let k = mp.len();
    let mut edges = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let mut cross = mp
                .class(a)
                .iter()
                .flat_map(|&u| mp.class(b).iter().map(move |&v| pg.adjacent(u, v)));
            let first = cross.next().expect("classes are nonempty");
            if cross.any(|x| x != first) {
                return Err(MenError::InconsistentQuotient(a, b));
            }
            if first {
                edges.push((a, b));
            }
        }
    }
    let weights = mp.weights().into_iter().map(|w| w as u64).collect();
    let graph = WeightedGraph::new(weights, edges).expect("quotient edges are in range");
    Ok(QuotientGraph { graph })
}

/// Witness for `K = <a> - <a^(p^t)>` with `o(a) = p^n`, `1 < t <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetWitness {
    pub a: usize,
    pub p: u64,
    pub t: u32,
    pub n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MenType {
    /// `<a> - <a^(p^t)>`.
    Difference,
    /// `gen(<a>)`.
    Generators,
    Both,
}

impl MenType {
    pub fn as_str(self) -> &'static str {
        match self {
            MenType::Difference => "1",
            MenType::Generators => "2",
            MenType::Both => "1+2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MenClassification {
    pub difference: Option<CosetWitness>,
    pub generators: Option<usize>,
}

impl MenClassification {
    pub fn kind(&self) -> MenType {
        match (self.difference.is_some(), self.generators.is_some()) {
            (true, true) => MenType::Both,
            (true, false) => MenType::Difference,
            (false, true) => MenType::Generators,
            (false, false) => unreachable!("unclassified classes are reported as errors"),
        }
    }
}

fn sorted_elements(pg: &PowerGraph, class: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = class.iter().map(|&v| pg.element(v)).collect();
    out.sort_unstable();
    out
}

/// Nontrivial elements of `<x>` as sorted vertices.
fn subgroup_vertices(g: &FiniteGroup, pg: &PowerGraph, x: usize) -> Vec<usize> {
    g.cyclic_subgroup(x)
        .into_iter()
        .filter_map(|y| pg.vertex_of(y))
        .collect()
}

fn max_order_members(g: &FiniteGroup, elements: &[usize]) -> Vec<usize> {
    let top = elements
        .iter()
        .map(|&x| g.element_order(x))
        .max()
        .unwrap_or(0);
    elements
        .iter()
        .copied()
        .filter(|&x| g.element_order(x) == top)
        .collect()
}

fn difference_witness(
    g: &FiniteGroup,
    pg: &PowerGraph,
    elements: &[usize],
    a: usize,
) -> Option<CosetWitness> {
    let (p, n) = prime_power(g.element_order(a) as u64)?;
    let subgroup = g.cyclic_subgroup(a);
    let subgroup_vs = subgroup_vertices(g, pg, a);
    (2..=n).find_map(|t| {
        let cut = g.pow(a, p.pow(t));
        let removed = g.cyclic_subgroup(cut);
        let diff: Vec<usize> = subgroup
            .iter()
            .copied()
            .filter(|x| removed.binary_search(x).is_err())
            .collect();
        if diff != elements {
            return None;
        }
        let below = g.pow(a, p.pow(t - 1));
        let below_v = pg.vertex_of(below)?;
        if pg.closed_neighborhood(below_v) != subgroup_vs {
            return None;
        }
        // When a^(p^t) is the identity it is not a vertex and the condition
        // is vacuous.
        if let Some(cut_v) = pg.vertex_of(cut) {
            if pg.closed_neighborhood(cut_v) == subgroup_vs {
                return None;
            }
        }
        Some(CosetWitness { a, p, t, n })
    })
}

/// Decides which of the two MEN-class shapes `class` has.
pub fn classify_men_class(
    g: &FiniteGroup,
    pg: &PowerGraph,
    class: &[usize],
) -> Result<MenClassification, MenError> {
    let elements = sorted_elements(pg, class);
    let candidates = max_order_members(g, &elements);
    let generators = candidates
        .iter()
        .copied()
        .find(|&a| g.gen_set(a) == elements);
    let difference = candidates
        .iter()
        .find_map(|&a| difference_witness(g, pg, &elements, a));
    let out = MenClassification {
        difference,
        generators,
    };
    if out.difference.is_none() && out.generators.is_none() {
        return Err(MenError::Unclassifiable {
            class: class.first().copied().unwrap_or(0),
            members: elements.iter().map(|&x| g.label(x).to_string()).collect(),
        });
    }
    Ok(out)
}

/// Element of maximal order in a class, first in index order.
pub fn top_element(g: &FiniteGroup, pg: &PowerGraph, class: &[usize]) -> usize {
    max_order_members(g, &sorted_elements(pg, class))[0]
}

/// `1 + sum of weights of the classes inside <x_M>`, checked against
/// `o(x_M)`.
pub fn reconstruct_order(
    g: &FiniteGroup,
    pg: &PowerGraph,
    mp: &MenPartition,
    class: usize,
) -> Result<usize, MenError> {
    let top = top_element(g, pg, mp.class(class));
    let inside = subgroup_vertices(g, pg, top);
    let mut hits = vec![0usize; mp.len()];
    for &v in &inside {
        hits[mp.class_of(v)] += 1;
    }
    let mut total = 1;
    for (id, &h) in hits.iter().enumerate() {
        if h == 0 {
            continue;
        }
        if h != mp.weight(id) {
            return Err(MenError::Straddle {
                class: id,
                generator: g.label(top).to_string(),
            });
        }
        total += h;
    }
    let actual = g.element_order(top);
    if total != actual {
        return Err(MenError::OrderMismatch {
            class,
            reconstructed: total,
            actual,
        });
    }
    Ok(total)
}

/// Result of collapsing nodes with equal closed neighbourhoods.
#[derive(Debug, Clone)]
pub struct MergedGraph {
    pub graph: WeightedGraph,
    /// Original nodes behind each merged node.
    pub groups: Vec<Vec<usize>>,
}

/// Collapses nodes of `g` whose closed neighbourhoods coincide, summing
/// their weights. Applied to a power graph with unit weights this is the
/// MEN quotient.
pub fn merge_twins(g: &WeightedGraph) -> MergedGraph {
    let n = g.node_count();
    let mut by_key: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![0; n];
    for (v, slot) in group_of.iter_mut().enumerate() {
        let mut closed = g.neighbors(v).to_vec();
        closed.push(v);
        closed.sort_unstable();
        let id = *by_key.entry(closed).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[id].push(v);
        *slot = id;
    }
    let weights = groups
        .iter()
        .map(|grp| grp.iter().map(|&v| g.weight(v)).sum())
        .collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| (group_of[u], group_of[v]))
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    MergedGraph {
        graph: WeightedGraph::new(weights, edges).expect("merged graph is valid"),
        groups,
    }
}
