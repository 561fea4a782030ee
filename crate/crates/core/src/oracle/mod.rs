//! Brute-force ground truth for vertex-weighted graphs: automorphism
//! counting and enumeration, isomorphism testing, and vertex orbits.
//!
//! The search is individualization-refinement: colour classes are refined to
//! a stable (equitable) colouring, a vertex of the smallest non-singleton
//! class is individualized, and the search branches over every candidate
//! image. Every map the search reports is re-verified edge by edge and weight
//! by weight before it is used.
//!
//! Counting walks a single path of the search tree: at each level it counts
//! the orbit of the individualized vertex under the pointwise stabilizer of
//! the earlier ones (looking for one witness automorphism per candidate
//! image), so the group order is the product of those orbit lengths. Nothing
//! here knows about power graphs or equal-neighbourhood classes.

mod search;

use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown: graph has {nodes} nodes, above the oracle limit of {max}")]
    TooManyNodes { nodes: usize, max: usize },
    #[error("unknown: automorphism count exceeds the oracle limit of {max}")]
    CountCapExceeded { max: u64 },
    #[error("invalid weighted graph: {0}")]
    InvalidGraph(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_nodes: usize,
    /// Largest automorphism count the oracle will certify or enumerate.
    pub max_count: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_nodes: 40,
            max_count: 10_000_000,
        }
    }
}

/// Simple undirected graph with a positive weight on every node.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    adjacency: Vec<FixedBitSet>,
    neighbors: Vec<Vec<usize>>,
    weights: Vec<u64>,
}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("weights", &self.weights)
            .field("neighbors", &self.neighbors)
            .finish()
    }
}

impl WeightedGraph {
    pub fn new(
        weights: Vec<u64>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, OracleError> {
        let n = weights.len();
        if weights.contains(&0) {
            return Err(OracleError::InvalidGraph("weights must be positive".into()));
        }
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(OracleError::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range"
                )));
            }
            if u == v {
                return Err(OracleError::InvalidGraph(format!("loop at node {u}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        let neighbors = adjacency.iter().map(|row| row.ones().collect()).collect();
        Ok(WeightedGraph {
            adjacency,
            neighbors,
            weights,
        })
    }

    /// All weights 1.
    pub fn unweighted(
        nodes: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, OracleError> {
        Self::new(vec![1; nodes], edges)
    }

    pub fn node_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// The same graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> WeightedGraph {
        let mut weights = vec![0; self.node_count()];
        for (v, &w) in self.weights.iter().enumerate() {
            weights[perm[v]] = w;
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        WeightedGraph::new(weights, edges).expect("relabeling preserves validity")
    }

    /// Subgraph induced on `nodes`; node `i` of the result is `nodes[i]`.
    pub fn induced(&self, nodes: &[usize]) -> WeightedGraph {
        let weights = nodes.iter().map(|&v| self.weights[v]).collect();
        let mut edges = Vec::new();
        for (i, &u) in nodes.iter().enumerate() {
            for (j, &v) in nodes.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    edges.push((i, j));
                }
            }
        }
        WeightedGraph::new(weights, edges).expect("induced subgraph is valid")
    }

    /// Connected components ordered by smallest node, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                for &w in &self.neighbors[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether `map` (node `v` goes to `map[v]`) is a weight- and
    /// adjacency-preserving bijection onto `other`.
    pub fn is_isomorphism_to(&self, other: &WeightedGraph, map: &[usize]) -> bool {
        let n = self.node_count();
        if other.node_count() != n || map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &m in map {
            if m >= n || hit[m] {
                return false;
            }
            hit[m] = true;
        }
        for u in 0..n {
            if self.weights[u] != other.weights[map[u]] {
                return false;
            }
            for v in u + 1..n {
                if self.adjacent(u, v) != other.adjacent(map[u], map[v]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        self.is_isomorphism_to(self, map)
    }
}

fn check_size(g: &WeightedGraph, caps: &Caps) -> Result<(), OracleError> {
    if g.node_count() > caps.max_nodes {
        return Err(OracleError::TooManyNodes {
            nodes: g.node_count(),
            max: caps.max_nodes,
        });
    }
    Ok(())
}

/// Exact number of automorphisms, or an explicit "unknown" when a cap is hit.
pub fn count_automorphisms(g: &WeightedGraph, caps: &Caps) -> Result<BigUint, OracleError> {
    check_size(g, caps)?;
    let chain = search::stabilizer_chain(g);
    if chain.order > BigUint::from(caps.max_count) {
        return Err(OracleError::CountCapExceeded {
            max: caps.max_count,
        });
    }
    Ok(chain.order)
}

/// Every automorphism, as node maps in lexicographic order.
pub fn enumerate_automorphisms(
    g: &WeightedGraph,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>, OracleError> {
    check_size(g, caps)?;
    let mut out = search::enumerate(g, caps.max_count)?;
    out.sort();
    Ok(out)
}

/// A verified isomorphism `a -> b` when one exists.
pub fn are_isomorphic(
    a: &WeightedGraph,
    b: &WeightedGraph,
    caps: &Caps,
) -> Result<Option<Vec<usize>>, OracleError> {
    check_size(a, caps)?;
    check_size(b, caps)?;
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let witness = search::find_isomorphism(a, b);
    if let Some(map) = &witness {
        assert!(
            a.is_isomorphism_to(b, map),
            "search returned a non-isomorphism"
        );
    }
    Ok(witness)
}

/// Orbits of the full automorphism group on nodes, ordered by smallest
/// member.
pub fn vertex_orbits(g: &WeightedGraph, caps: &Caps) -> Result<Vec<Vec<usize>>, OracleError> {
    check_size(g, caps)?;
    Ok(search::stabilizer_chain(g).orbits)
}

/// A generating set of the automorphism group (possibly empty when the
/// group is trivial), each generator verified.
pub fn automorphism_generators(
    g: &WeightedGraph,
    caps: &Caps,
) -> Result<Vec<Vec<usize>>, OracleError> {
    check_size(g, caps)?;
    Ok(search::stabilizer_chain(g).generators)
}

/// The stable colouring the search starts from, as class ids per node.
/// Automorphisms never map a node to a node of another class.
pub fn stable_coloring(g: &WeightedGraph) -> Vec<u32> {
    search::root_coloring(g)
}
