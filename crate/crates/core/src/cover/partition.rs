use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColouredGraph, DegenerateCycle, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePartitionCertificate {
    pub cycles: Vec<DegenerateCycle>,
}

impl CyclePartitionCertificate {
    pub fn size(&self) -> usize {
        self.cycles.len()
    }
}

/// Largest graph the subset tables are built for.
pub const MAX_PARTITION_VERTICES: usize = 20;

/// Per colour, `ends[S]` is the set of `v` such that a path in that colour
/// runs from the least vertex of `S` to `v` through all of `S`.
struct PathTables {
    ends: Vec<Vec<u32>>,
    adj: Vec<Vec<u32>>,
}

impl PathTables {
    fn build(g: &ColouredGraph, budget: &Budget) -> Option<Self> {
        let n = g.n();
        let mut adj = vec![vec![0u32; n]; g.r()];
        for (u, v, c) in g.edges() {
            adj[c as usize - 1][u] |= 1 << v;
            adj[c as usize - 1][v] |= 1 << u;
        }
        let mut ends = Vec::with_capacity(g.r());
        for a in &adj {
            let mut table = vec![0u32; 1 << n];
            for v in 0..n {
                table[1 << v] = 1 << v;
            }
            for s in 1u32..(1 << n) {
                if !budget.charge_many(n as u64) {
                    return None;
                }
                let mut e = table[s as usize];
                let low = s.trailing_zeros();
                while e != 0 {
                    let v = e.trailing_zeros() as usize;
                    e &= e - 1;
                    let mut next = a[v] & !s & !((1u32 << (low + 1)) - 1);
                    while next != 0 {
                        let w = next.trailing_zeros();
                        next &= next - 1;
                        table[(s | 1 << w) as usize] |= 1 << w;
                    }
                }
            }
            ends.push(table);
        }
        Some(PathTables { ends, adj })
    }

    /// Least colour in which `s` spans a (possibly degenerate) cycle.
    fn cycle_colour(&self, g: &ColouredGraph, s: u32) -> Option<Option<Colour>> {
        match s.count_ones() {
            1 => Some(None),
            2 => {
                let u = s.trailing_zeros() as usize;
                let v = 31 - s.leading_zeros() as usize;
                g.colour(u, v).map(Some)
            }
            _ => {
                let low = s.trailing_zeros() as usize;
                (0..self.adj.len())
                    .find(|&c| self.ends[c][s as usize] & self.adj[c][low] != 0)
                    .map(|c| Some(c as Colour + 1))
            }
        }
    }

    /// Vertex order of a colour-`c` Hamiltonian cycle on `s`.
    fn cycle_order(&self, c: Colour, s: u32) -> Vec<Vertex> {
        let c = c as usize - 1;
        let low = s.trailing_zeros() as usize;
        let mut end = (self.ends[c][s as usize] & self.adj[c][low]).trailing_zeros() as usize;
        let mut rest = s;
        let mut order = Vec::new();
        while rest != 1 << low {
            order.push(end);
            rest &= !(1 << end);
            let prev = self.ends[c][rest as usize] & self.adj[c][end];
            end = prev.trailing_zeros() as usize;
        }
        order.push(low);
        order.reverse();
        order
    }
}

/// Minimum partition into monochromatic (degenerate) cycles.
///
/// Each step removes a cycle through the least uncovered vertex; results are
/// memoised on the uncovered set.
pub fn exact_cycle_partition(g: &ColouredGraph, budget: &Budget) -> Result<Outcome<CyclePartitionCertificate>> {
    let n = g.n();
    if n > MAX_PARTITION_VERTICES {
        return Err(Error::Size(format!("exact cycle partition supports n ≤ {MAX_PARTITION_VERTICES}, got {n}")));
    }
    if n == 0 {
        return Ok(Outcome::Solved(CyclePartitionCertificate { cycles: Vec::new() }));
    }
    let unknown = || Ok(Outcome::Unknown { nodes: budget.used() });
    let Some(tables) = PathTables::build(g, budget) else { return unknown() };
    let full = ((1u64 << n) - 1) as u32;
    let mut best = vec![u8::MAX; 1 << n];
    let mut choice = vec![0u32; 1 << n];
    best[0] = 0;
    // explicit stack of masks whose value is still pending
    let mut stack = vec![full];
    while let Some(&mask) = stack.last() {
        if best[mask as usize] != u8::MAX {
            stack.pop();
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        let mut pending = false;
        let mut sub = rest;
        let mut top = (u8::MAX, 0u32);
        loop {
            if !budget.charge() {
                return unknown();
            }
            let s = sub | low;
            if tables.cycle_colour(g, s).is_some() {
                let remaining = mask & !s;
                match best[remaining as usize] {
                    u8::MAX => {
                        stack.push(remaining);
                        pending = true;
                    }
                    b if b + 1 < top.0 => top = (b + 1, s),
                    _ => {}
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        if !pending {
            best[mask as usize] = top.0;
            choice[mask as usize] = top.1;
            stack.pop();
        }
    }
    let mut cycles = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let s = choice[mask as usize];
        let cycle = match tables.cycle_colour(g, s).expect("chosen set spans a cycle") {
            None => DegenerateCycle::vertex(s.trailing_zeros() as usize),
            Some(c) if s.count_ones() == 2 => {
                let u = s.trailing_zeros() as usize;
                DegenerateCycle::new(vec![u, 31 - s.leading_zeros() as usize], Some(c))
            }
            Some(c) => DegenerateCycle::new(tables.cycle_order(c, s), Some(c)),
        };
        cycles.push(cycle);
        mask &= !s;
    }
    Ok(Outcome::Solved(CyclePartitionCertificate { cycles }))
}
