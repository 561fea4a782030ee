//! The undirected power graph on the nontrivial elements of a group.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("the trivial group has an empty power graph")]
    TrivialGroup,
}

/// Vertex `v` is the group element with index `v + 1`; the identity is not
/// a vertex.
#[derive(Debug, Clone)]
pub struct PowerGraph {
    elements: Vec<usize>,
    adjacency: Vec<FixedBitSet>,
    neighbors: Vec<Vec<usize>>,
    group: String,
}

pub fn build_power_graph(g: &FiniteGroup) -> Result<PowerGraph, GraphError> {
    if g.size() < 2 {
        return Err(GraphError::TrivialGroup);
    }
    let n = g.size() - 1;
    let elements: Vec<usize> = (1..g.size()).collect();
    let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
    for v in 0..n {
        let x = elements[v];
        // every nontrivial power of x other than x itself
        let mut y = g.mul(x, x);
        while y != 0 {
            if y != x {
                adjacency[v].insert(y - 1);
                adjacency[y - 1].insert(v);
            }
            y = g.mul(y, x);
        }
    }
    let neighbors = adjacency.iter().map(|row| row.ones().collect()).collect();
    Ok(PowerGraph {
        elements,
        adjacency,
        neighbors,
        group: g.description().to_string(),
    })
}

impl PowerGraph {
    pub fn vertex_count(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, v: usize) -> usize {
        self.elements[v]
    }

    /// `None` for the identity.
    pub fn vertex_of(&self, element: usize) -> Option<usize> {
        element.checked_sub(1).filter(|&v| v < self.elements.len())
    }

    pub fn group_description(&self) -> &str {
        &self.group
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

    /// `N[v]` as a bitset over vertices.
    pub fn closed_neighborhood_bits(&self, v: usize) -> FixedBitSet {
        let mut bits = self.adjacency[v].clone();
        bits.insert(v);
        bits
    }

    /// `N[v]` in increasing vertex order.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        self.closed_neighborhood_bits(v).ones().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Components ordered by smallest vertex; each component sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut i = 0;
            while i < component.len() {
                for &w in &self.neighbors[component[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                    }
                }
                i += 1;
            }
            component.sort_unstable();
            out.push(component);
        }
        out
    }
}
