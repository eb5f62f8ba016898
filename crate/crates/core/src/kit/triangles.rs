use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::simple::SimpleGraph;

/// Vertices of a triangle; the first one is its representative.
pub type Triangle = [Vertex; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PackingMode {
    Exact,
    Greedy,
}

/// Largest graph accepted by the exact packing search.
pub const MAX_PACKING_VERTICES: usize = 128;

struct Packing<'a> {
    masks: &'a [u128],
    budget: &'a Budget,
    cap: usize,
    best: Vec<Triangle>,
    current: Vec<Triangle>,
    out_of_budget: bool,
}

impl Packing<'_> {
    fn run(&mut self, free: u128) {
        if self.out_of_budget || self.best.len() == self.cap {
            return;
        }
        if !self.budget.charge() {
            self.out_of_budget = true;
            return;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.current.len() + free.count_ones() as usize / 3 <= self.best.len() || free == 0 {
            return;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1u128 << v);
        let mut xs = self.masks[v] & rest;
        while xs != 0 {
            let x = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            let mut ys = self.masks[v] & self.masks[x] & rest & !((2u128 << x) - 1);
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                self.current.push([v, x, y]);
                self.run(rest & !(1u128 << x) & !(1u128 << y));
                self.current.pop();
            }
        }
        // leave v uncovered
        self.run(rest);
    }
}

fn greedy_packing(g: &SimpleGraph) -> Vec<Triangle> {
    let n = g.n();
    let mut free = vec![true; n];
    let mut out = Vec::new();
    for v in 0..n {
        if !free[v] {
            continue;
        }
        let found = g.neighbours(v).iter().filter(|&&x| x > v && free[x]).find_map(|&x| {
            g.neighbours(x).iter().find(|&&y| y > x && free[y] && g.has_edge(v, y)).map(|&y| (x, y))
        });
        if let Some((x, y)) = found {
            free[v] = false;
            free[x] = false;
            free[y] = false;
            out.push([v, x, y]);
        }
    }
    out
}

/// Vertex-disjoint triangles: a maximum packing (exact) or a maximal one (greedy).
///
/// In exact mode a graph with `δ(G) ≥ 2n/3` must yield `⌊n/3⌋` triangles;
/// anything less is reported as an internal error.
pub fn triangle_packing(g: &SimpleGraph, mode: PackingMode, budget: &Budget) -> Result<Outcome<Vec<Triangle>>> {
    let n = g.n();
    match mode {
        PackingMode::Greedy => Ok(Outcome::Solved(greedy_packing(g))),
        PackingMode::Exact => {
            if n > MAX_PACKING_VERTICES {
                return Err(Error::Size(format!("exact packing supports n ≤ {MAX_PACKING_VERTICES}, got {n}")));
            }
            let masks: Vec<u128> =
                (0..n).map(|v| g.neighbours(v).iter().fold(0u128, |m, &w| m | 1u128 << w)).collect();
            let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
            let mut search = Packing {
                masks: &masks,
                budget,
                cap: n / 3,
                best: greedy_packing(g),
                current: Vec::new(),
                out_of_budget: false,
            };
            search.run(all);
            if search.out_of_budget {
                return Ok(Outcome::Unknown { nodes: budget.used() });
            }
            if n > 0 && 3 * g.min_degree() >= 2 * n && search.best.len() != n / 3 {
                return Err(Error::Internal(format!(
                    "min degree {} ≥ 2n/3 but only {} disjoint triangles found",
                    g.min_degree(),
                    search.best.len()
                )));
            }
            Ok(Outcome::Solved(search.best))
        }
    }
}
