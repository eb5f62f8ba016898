//! Uncoloured simple graphs, used for contracted graphs and colour classes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { n, adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::input(format!("self-loop at {u}")));
            }
            g.adj[u].push(v);
            g.adj[v].push(u);
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        SimpleGraph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbours(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Adjacency rows as bitmasks; `None` for more than 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect(),
        )
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> SimpleGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                let mut row: Vec<Vertex> =
                    self.adj[v].iter().filter(|&&u| index[u] != usize::MAX).map(|&u| index[u]).collect();
                row.sort_unstable();
                row
            })
            .collect();
        SimpleGraph { n: vertices.len(), adj }
    }

    pub fn complement(&self) -> SimpleGraph {
        let adj = (0..self.n)
            .map(|v| (0..self.n).filter(|&u| u != v && !self.has_edge(u, v)).collect())
            .collect();
        SimpleGraph { n: self.n, adj }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }
}
