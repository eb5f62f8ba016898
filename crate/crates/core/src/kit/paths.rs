use serde::{Deserialize, Serialize};

use crate::graph::Vertex;
use crate::simple::SimpleGraph;

/// Vertex sets up to this size get the exact subset DP.
pub const EXACT_PATH_LIMIT: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LongestPath {
    pub path: Vec<Vertex>,
    /// True when the path is certified longest.
    pub exact: bool,
}

/// A longest path in `G[vertices]`: exact for at most [`EXACT_PATH_LIMIT`]
/// vertices, a rotation heuristic above that.
pub fn longest_path(g: &SimpleGraph, vertices: &[Vertex]) -> LongestPath {
    if vertices.is_empty() {
        return LongestPath { path: Vec::new(), exact: true };
    }
    let h = g.induced(vertices);
    let local = if vertices.len() <= EXACT_PATH_LIMIT { exact_longest(&h) } else { heuristic_longest(&h) };
    LongestPath { path: local.iter().map(|&i| vertices[i]).collect(), exact: vertices.len() <= EXACT_PATH_LIMIT }
}

fn exact_longest(h: &SimpleGraph) -> Vec<Vertex> {
    let n = h.n();
    let adj: Vec<u32> = (0..n).map(|v| h.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1usize;
    for s in 1usize..1 << n {
        let mut e = ends[s];
        if e == 0 {
            continue;
        }
        if (s.count_ones() as usize) > (best.count_ones() as usize) {
            best = s;
        }
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut next = adj[v] & !(s as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[s | 1 << w] |= 1 << w;
            }
        }
    }
    let mut s = best;
    let mut end = ends[s].trailing_zeros() as usize;
    let mut path = vec![end];
    while s != 1 << end {
        let rest = s & !(1 << end);
        let prev = (0..n).find(|&u| ends[rest] >> u & 1 == 1 && adj[u] >> end & 1 == 1).expect("table is consistent");
        path.push(prev);
        s = rest;
        end = prev;
    }
    path.reverse();
    path
}

/// Extends at the tail, rotating on a chord when stuck; repeats from the head.
fn grow(h: &SimpleGraph, start: Vertex) -> Vec<Vertex> {
    let n = h.n();
    let mut on = vec![false; n];
    on[start] = true;
    let mut path = vec![start];
    for _pass in 0..2 {
        let mut rotations = 0;
        loop {
            let end = *path.last().expect("non-empty");
            // fewest free neighbours first keeps later options open
            let next = h
                .neighbours(end)
                .iter()
                .copied()
                .filter(|&w| !on[w])
                .min_by_key(|&w| h.neighbours(w).iter().filter(|&&x| !on[x]).count());
            if let Some(w) = next {
                on[w] = true;
                path.push(w);
                continue;
            }
            if rotations >= 2 * n {
                break;
            }
            let k = path.len();
            let pivot = (0..k.saturating_sub(2))
                .rev()
                .find(|&i| h.has_edge(path[i], end) && h.neighbours(path[i + 1]).iter().any(|&w| !on[w]));
            match pivot {
                Some(i) => {
                    path[i + 1..].reverse();
                    rotations += 1;
                }
                None => break,
            }
        }
        path.reverse();
    }
    path
}

fn heuristic_longest(h: &SimpleGraph) -> Vec<Vertex> {
    let n = h.n();
    let mut starts: Vec<Vertex> = (0..n).collect();
    starts.sort_by_key(|&v| (h.degree(v), v));
    starts.truncate(4);
    let mut best = Vec::new();
    for s in starts {
        let p = grow(h, s);
        if p.len() > best.len() {
            best = p;
        }
        if best.len() == n {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_path(g: &SimpleGraph, p: &[Vertex]) -> bool {
        let mut s = p.to_vec();
        s.sort_unstable();
        s.dedup();
        s.len() == p.len() && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    #[test]
    fn exact_on_star_and_path() {
        let star = SimpleGraph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        let lp = longest_path(&star, &[0, 1, 2, 3, 4]);
        assert_eq!(lp.path.len(), 3);
        assert!(lp.exact && is_path(&star, &lp.path));
        let line = SimpleGraph::from_edges(6, (0..5).map(|i| (i, i + 1))).unwrap();
        assert_eq!(longest_path(&line, &[5, 4, 3, 2, 1, 0]).path.len(), 6);
    }

    #[test]
    fn heuristic_on_complete_bipartite() {
        let edges = (0..15).flat_map(|i| (15..40).map(move |j| (i, j)));
        let g = SimpleGraph::from_edges(40, edges).unwrap();
        let all: Vec<_> = (0..40).collect();
        let lp = longest_path(&g, &all);
        assert!(!lp.exact);
        assert!(is_path(&g, &lp.path));
        assert_eq!(lp.path.len(), 31);
    }
}
