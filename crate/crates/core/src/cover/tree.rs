use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::error::Result;
use crate::graph::{Colour, ColouredGraph, Component, Vertex};
use crate::hypergraph::connectivity_hypergraph;
use crate::rational::Rational;

use super::transversal::{exact_transversal, greedy_degree_transversal};

/// A monochromatic spanning tree of one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub colour: Colour,
    /// Ordinal of the component within its colour.
    pub component: usize,
    pub root: Vertex,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCoverCertificate {
    pub trees: Vec<SpanningTree>,
    pub covered: Vec<Vertex>,
}

impl TreeCoverCertificate {
    pub fn size(&self) -> usize {
        self.trees.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    Exact,
    Greedy,
}

/// BFS tree of a component, rooted at its least member.
pub fn spanning_tree(g: &ColouredGraph, comp: &Component) -> SpanningTree {
    let root = comp.members[0];
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut edges = Vec::new();
    while let Some(v) = queue.pop_front() {
        for w in g.neighbours_in(v, comp.colour) {
            if !seen[w] {
                seen[w] = true;
                edges.push((v.min(w), v.max(w)));
                queue.push_back(w);
            }
        }
    }
    SpanningTree { colour: comp.colour, component: comp.index, root, vertices: comp.members.clone(), edges }
}

/// Tree cover from a transversal of `C(G)`: exact minimum, or the degree
/// threshold set for the given δ.
pub fn tree_cover(
    g: &ColouredGraph,
    mode: CoverMode,
    delta: &Rational,
    budget: &Budget,
) -> Result<Outcome<TreeCoverCertificate>> {
    let c = connectivity_hypergraph(g);
    let chosen = match mode {
        CoverMode::Exact => match exact_transversal(&c.hypergraph, budget) {
            Outcome::Solved(t) => t.vertices,
            Outcome::Unknown { nodes } => return Ok(Outcome::Unknown { nodes }),
        },
        CoverMode::Greedy => greedy_degree_transversal(&c.hypergraph, delta, g.r())?.transversal.vertices,
    };
    let trees: Vec<SpanningTree> = chosen.iter().map(|&i| spanning_tree(g, &c.components[i])).collect();
    let mut covered: Vec<Vertex> = trees.iter().flat_map(|t| t.vertices.iter().copied()).collect();
    covered.sort_unstable();
    covered.dedup();
    Ok(Outcome::Solved(TreeCoverCertificate { trees, covered }))
}

/// `tc(G)` by the exact transversal of `C(G)`.
pub fn tree_cover_number(g: &ColouredGraph, budget: &Budget) -> Outcome<usize> {
    let c = connectivity_hypergraph(g);
    exact_transversal(&c.hypergraph, budget).map(|t| t.size())
}
