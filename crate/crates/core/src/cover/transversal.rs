use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::error::{Error, Result};
use crate::hypergraph::MultiHypergraph;
use crate::rational::{self, Rational};

/// A set of hypergraph vertices meeting every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub vertices: Vec<usize>,
    pub labels: Vec<String>,
    /// For each distinct edge, the least chosen vertex in it.
    pub witness: Vec<usize>,
}

impl Transversal {
    pub fn new(h: &MultiHypergraph, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&v) = vertices.iter().find(|&&v| v >= h.vertex_count()) {
            return Err(Error::input(format!("vertex {v} not in hypergraph")));
        }
        let mut chosen = vec![false; h.vertex_count()];
        for &v in &vertices {
            chosen[v] = true;
        }
        let mut witness = Vec::with_capacity(h.distinct_edge_count());
        for (i, e) in h.edges().iter().enumerate() {
            match e.members.iter().find(|&&v| chosen[v]) {
                Some(&v) => witness.push(v),
                None => {
                    let names: Vec<&str> = e.members.iter().map(|&v| h.label_of(v)).collect();
                    return Err(Error::Precondition(format!("edge {i} {names:?} is not hit")));
                }
            }
        }
        let labels = vertices.iter().map(|&v| h.label_of(v).to_string()).collect();
        Ok(Transversal { vertices, labels, witness })
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

type Bits = Vec<u64>;

fn bit(set: &Bits, v: usize) -> bool {
    set[v / 64] >> (v % 64) & 1 == 1
}

fn set_bit(set: &mut Bits, v: usize, on: bool) {
    if on {
        set[v / 64] |= 1 << (v % 64);
    } else {
        set[v / 64] &= !(1 << (v % 64));
    }
}

struct Aborted;

/// Hitting-set decision search over inclusion-minimal edges.
struct Solver<'a> {
    words: usize,
    edges: Vec<Bits>,
    budget: &'a Budget,
}

impl<'a> Solver<'a> {
    fn new(h: &MultiHypergraph, budget: &'a Budget) -> Self {
        let words = h.vertex_count().div_ceil(64).max(1);
        let mut edges: Vec<Bits> = h
            .edges()
            .iter()
            .map(|e| {
                let mut b = vec![0; words];
                for &v in &e.members {
                    set_bit(&mut b, v, true);
                }
                b
            })
            .collect();
        edges.sort_by_key(|e| e.iter().map(|w| w.count_ones()).sum::<u32>());
        edges.dedup();
        // any transversal of the minimal edges hits their supersets
        let mut minimal: Vec<Bits> = Vec::new();
        for e in edges {
            if !minimal.iter().any(|m| m.iter().zip(&e).all(|(a, b)| a & !b == 0)) {
                minimal.push(e);
            }
        }
        Solver { words, edges: minimal, budget }
    }

    fn empty(&self) -> Bits {
        vec![0; self.words]
    }

    /// Allowed parts of the edges not yet hit by `chosen`.
    fn open_edges(&self, chosen: &Bits, forbidden: &Bits) -> Vec<Bits> {
        self.edges
            .iter()
            .filter(|e| e.iter().zip(chosen).all(|(a, b)| a & b == 0))
            .map(|e| e.iter().zip(forbidden).map(|(a, f)| a & !f).collect())
            .collect()
    }

    /// Size of a greedy family of pairwise disjoint open edges.
    fn packing_bound(open: &[Bits]) -> usize {
        let mut order: Vec<&Bits> = open.iter().collect();
        order.sort_by_key(|e| e.iter().map(|w| w.count_ones()).sum::<u32>());
        let mut used: Bits = vec![0; open.first().map_or(0, Vec::len)];
        let mut count = 0;
        for e in order {
            if e.iter().zip(&used).all(|(a, b)| a & b == 0) {
                count += 1;
                for (u, a) in used.iter_mut().zip(e) {
                    *u |= a;
                }
            }
        }
        count
    }

    fn lower_bound(&self) -> usize {
        Self::packing_bound(&self.open_edges(&self.empty(), &self.empty()))
    }

    /// Can `k` more vertices outside `forbidden` hit every open edge?
    fn feasible(&self, k: usize, chosen: &mut Bits, forbidden: &mut Bits) -> std::result::Result<bool, Aborted> {
        if !self.budget.charge() {
            return Err(Aborted);
        }
        let open = self.open_edges(chosen, forbidden);
        if open.is_empty() {
            return Ok(true);
        }
        if k == 0 || open.iter().any(|e| e.iter().all(|&w| w == 0)) {
            return Ok(false);
        }
        if Self::packing_bound(&open) > k {
            return Ok(false);
        }
        let pivot = open
            .iter()
            .min_by_key(|e| e.iter().map(|w| w.count_ones()).sum::<u32>())
            .expect("open is non-empty");
        let mut branch: Vec<usize> = (0..self.words * 64).filter(|&v| bit(pivot, v)).collect();
        let hits = |v: usize| open.iter().filter(|e| bit(e, v)).count();
        branch.sort_by_key(|&v| (std::cmp::Reverse(hits(v)), v));
        let mut banned = Vec::new();
        let mut found = Ok(false);
        for v in branch {
            set_bit(chosen, v, true);
            let r = self.feasible(k - 1, chosen, forbidden);
            set_bit(chosen, v, false);
            match r {
                Ok(true) => {
                    found = Ok(true);
                    break;
                }
                Ok(false) => {}
                Err(a) => {
                    found = Err(a);
                    break;
                }
            }
            set_bit(forbidden, v, true);
            banned.push(v);
        }
        for v in banned {
            set_bit(forbidden, v, false);
        }
        found
    }
}

/// Minimum transversal by branch and bound; the lexicographically least
/// optimal set is returned. Reports `Unknown` when the budget runs out.
pub fn exact_transversal(h: &MultiHypergraph, budget: &Budget) -> Outcome<Transversal> {
    let solver = Solver::new(h, budget);
    let unknown = || Outcome::Unknown { nodes: budget.used() };
    let mut chosen = solver.empty();
    let mut forbidden = solver.empty();
    let mut tau = solver.lower_bound();
    loop {
        match solver.feasible(tau, &mut chosen, &mut forbidden) {
            Ok(true) => break,
            Ok(false) => tau += 1,
            Err(Aborted) => return unknown(),
        }
    }
    let mut picked = Vec::new();
    for v in 0..h.vertex_count() {
        if solver.open_edges(&chosen, &forbidden).is_empty() {
            break;
        }
        set_bit(&mut chosen, v, true);
        match solver.feasible(tau - picked.len() - 1, &mut chosen, &mut forbidden) {
            Ok(true) => picked.push(v),
            Ok(false) => {
                set_bit(&mut chosen, v, false);
                set_bit(&mut forbidden, v, true);
            }
            Err(Aborted) => return unknown(),
        }
    }
    match Transversal::new(h, picked) {
        Ok(t) if t.size() == tau => Outcome::Solved(t),
        _ => unreachable!("search returned an inconsistent transversal"),
    }
}

/// Degree-threshold transversal together with its bound check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreedyTransversal {
    pub transversal: Transversal,
    #[serde(with = "rational::serde_rational")]
    pub threshold: Rational,
    /// `2r²/ln(1/δ)`, reported for `1/2 ≤ δ < 1`.
    pub bound: Option<f64>,
    pub within_bound: Option<bool>,
}

/// `X = {v : deg(v) ≥ (1−δ)/r · e(H)}`.
///
/// Errors with the offending edge when `X` misses one, which can only happen
/// when `H` is not δ-intersecting.
pub fn greedy_degree_transversal(h: &MultiHypergraph, delta: &Rational, r: usize) -> Result<GreedyTransversal> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if *delta < zero || *delta >= one {
        return Err(Error::input(format!("δ = {delta} outside [0, 1)")));
    }
    if r == 0 {
        return Err(Error::input("r must be positive"));
    }
    let threshold = (one - delta) / Rational::from_integer(r as i128) * Rational::from_integer(h.edge_count() as i128);
    let deg = h.degrees();
    let chosen: Vec<usize> = (0..h.vertex_count())
        .filter(|&v| rational::at_least(deg[v] as usize, &threshold))
        .collect();
    let transversal = Transversal::new(h, chosen)?;
    let (bound, within_bound) = if *delta >= rational::ratio(1, 2) {
        let b = 2.0 * (r * r) as f64 / (1.0 / rational::to_f64(delta)).ln();
        (Some(b), Some(transversal.size() as f64 <= b + 1e-9))
    } else {
        (None, None)
    };
    Ok(GreedyTransversal { transversal, threshold, bound, within_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn hyper(n: usize, edges: &[&[usize]]) -> MultiHypergraph {
        let mut h = MultiHypergraph::unlabelled(n);
        for e in edges {
            h.add_edge(e, 1).unwrap();
        }
        h
    }

    fn brute(h: &MultiHypergraph) -> usize {
        let n = h.vertex_count();
        (0u32..1 << n)
            .filter(|&m| h.is_transversal(&(0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>()))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn single_edge_and_matching() {
        let h = hyper(2, &[&[0, 1]]);
        let t = exact_transversal(&h, &Budget::default()).solved().unwrap();
        assert_eq!(t.vertices, vec![0]);
        let h = hyper(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        assert_eq!(exact_transversal(&h, &Budget::default()).solved().unwrap().size(), 3);
    }

    #[test]
    fn lex_least_choice() {
        let h = hyper(4, &[&[1, 2], &[2, 3], &[0, 3]]);
        let t = exact_transversal(&h, &Budget::default()).solved().unwrap();
        assert_eq!(t.vertices, vec![0, 2]);
    }

    #[test]
    fn matches_brute_force() {
        let mut x = 99u64;
        for _ in 0..40 {
            let mut h = MultiHypergraph::unlabelled(10);
            for _ in 0..8 {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let mut e: Vec<usize> = (0..3).map(|i| (x >> (20 + 10 * i)) as usize % 10).collect();
                e.sort_unstable();
                e.dedup();
                h.add_edge(&e, 1).unwrap();
            }
            assert_eq!(exact_transversal(&h, &Budget::default()).solved().unwrap().size(), brute(&h));
        }
    }

    #[test]
    fn budget_gives_unknown() {
        let edges: Vec<Vec<usize>> = (0..12).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let refs: Vec<&[usize]> = edges.iter().map(Vec::as_slice).collect();
        let h = hyper(24, &refs);
        assert!(!exact_transversal(&h, &Budget::nodes(1)).is_solved());
    }

    #[test]
    fn greedy_on_single_edge() {
        let mut h = MultiHypergraph::new(vec!["a".into(), "b".into()], Some(vec![vec![0], vec![1]])).unwrap();
        h.add_edge(&[0, 1], 1).unwrap();
        let g = greedy_degree_transversal(&h, &ratio(1, 2), 2).unwrap();
        assert_eq!(g.transversal.labels, vec!["a", "b"]);
        assert_eq!(g.threshold, ratio(1, 4));
        assert_eq!(g.within_bound, Some(true));
    }

    #[test]
    fn greedy_reports_unhit_edge() {
        let h = hyper(4, &[&[0, 1], &[2, 3]]);
        assert!(matches!(greedy_degree_transversal(&h, &ratio(0, 1), 1), Err(Error::Precondition(_))));
    }
}
