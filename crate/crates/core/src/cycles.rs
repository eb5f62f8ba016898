//! Cycle covers that avoid regularity: contracted graphs, Pósa covers,
//! the bipartite coneighbour cover and the signature cover.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColourSet, ColouredGraph, DegenerateCycle, Vertex};
use crate::rational::{self, int, Rational};
use crate::simple::SimpleGraph;

/// Largest graph the independence number search accepts.
pub const MAX_ALPHA_VERTICES: usize = 128;

/// `G̃(A, B, k)`: vertices of `A` joined when their codegree into `B` is at least `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractedGraph {
    pub a: Vec<Vertex>,
    #[serde(with = "rational::serde_rational")]
    pub threshold: Rational,
    pub colours: Vec<Colour>,
    /// Graph on `0..a.len()`, vertex `i` standing for `a[i]`.
    pub graph: SimpleGraph,
}

impl ContractedGraph {
    /// Edges in terms of the original vertices.
    pub fn vertex_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.graph.edges().map(|(i, j)| (self.a[i], self.a[j])).collect()
    }
}

/// Checks that `a` and `b` are disjoint, duplicate-free and in range.
pub(crate) fn check_classes(g: &ColouredGraph, a: &[Vertex], b: &[Vertex]) -> Result<()> {
    let mut side = vec![0u8; g.n()];
    for (mark, class, name) in [(1u8, a, "A"), (2u8, b, "B")] {
        for &v in class {
            if v >= g.n() {
                return Err(Error::input(format!("vertex {v} in {name} out of range for n = {}", g.n())));
            }
            match side[v] {
                0 => side[v] = mark,
                m if m == mark => return Err(Error::input(format!("vertex {v} listed twice in {name}"))),
                _ => return Err(Error::input(format!("vertex {v} lies in both A and B"))),
            }
        }
    }
    Ok(())
}

fn colour_set(g: &ColouredGraph, colours: &[Colour]) -> Result<ColourSet> {
    if let Some(&c) = colours.iter().find(|&&c| c == 0 || c as usize > g.r()) {
        return Err(Error::input(format!("colour {c} outside 1..={}", g.r())));
    }
    Ok(if colours.is_empty() { ColourSet::all(g.r()) } else { colours.iter().copied().collect() })
}

/// Neighbourhoods of each `a`-vertex inside `B`, as sorted lists, restricted to `colours`.
fn b_neighbourhoods(g: &ColouredGraph, a: &[Vertex], in_b: &[bool], colours: ColourSet) -> Vec<Vec<Vertex>> {
    a.iter()
        .map(|&v| g.neighbours(v).iter().filter(|&&(w, c)| in_b[w] && colours.contains(c)).map(|&(w, _)| w).collect())
        .collect()
}

fn sorted_intersection_len(x: &[Vertex], y: &[Vertex]) -> usize {
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < x.len() && j < y.len() {
        match x[i].cmp(&y[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                k += 1;
                i += 1;
                j += 1;
            }
        }
    }
    k
}

/// Contracted graph over `a` with codegrees counted in `b`.
///
/// An empty `colours` list means all colours; otherwise only edges whose
/// colour is listed count towards codegrees.
pub fn contracted_graph(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    threshold: &Rational,
    colours: &[Colour],
) -> Result<ContractedGraph> {
    check_classes(g, a, b)?;
    let set = colour_set(g, colours)?;
    let mut in_b = vec![false; g.n()];
    for &v in b {
        in_b[v] = true;
    }
    let nbhd = b_neighbourhoods(g, a, &in_b, set);
    let mut edges = Vec::new();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if rational::at_least(sorted_intersection_len(&nbhd[i], &nbhd[j]), threshold) {
                edges.push((i, j));
            }
        }
    }
    let graph = SimpleGraph::from_edges(a.len(), edges)?;
    Ok(ContractedGraph { a: a.to_vec(), threshold: *threshold, colours: set.iter().collect(), graph })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependentSet {
    pub size: usize,
    pub vertices: Vec<Vertex>,
}

struct AlphaSearch<'a> {
    masks: &'a [u128],
    budget: &'a Budget,
    best: u128,
    out_of_budget: bool,
}

impl AlphaSearch<'_> {
    fn run(&mut self, chosen: u128, cand: u128) {
        if self.out_of_budget || !self.budget.charge() {
            self.out_of_budget = true;
            return;
        }
        if cand == 0 {
            if chosen.count_ones() > self.best.count_ones() {
                self.best = chosen;
            }
            return;
        }
        if chosen.count_ones() + cand.count_ones() <= self.best.count_ones() {
            return;
        }
        // some maximum set meets the closed neighbourhood of a min-degree candidate
        let mut pivot = cand.trailing_zeros() as usize;
        let mut pivot_deg = u32::MAX;
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.masks[v] & cand).count_ones();
            if d < pivot_deg {
                pivot = v;
                pivot_deg = d;
            }
        }
        let mut branch = (self.masks[pivot] | 1u128 << pivot) & cand;
        while branch != 0 {
            let w = branch.trailing_zeros() as usize;
            branch &= branch - 1;
            self.run(chosen | 1u128 << w, cand & !self.masks[w] & !(1u128 << w));
        }
    }
}

/// Exact `α(G)` by branch and bound with a deterministic witness.
pub fn independence_number(g: &SimpleGraph, budget: &Budget) -> Result<Outcome<IndependentSet>> {
    let n = g.n();
    if n > MAX_ALPHA_VERTICES {
        return Err(Error::Size(format!("independence number supports n ≤ {MAX_ALPHA_VERTICES}, got {n}")));
    }
    let masks: Vec<u128> =
        (0..n).map(|v| g.neighbours(v).iter().fold(0u128, |m, &w| m | 1u128 << w)).collect();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut search = AlphaSearch { masks: &masks, budget, best: 0, out_of_budget: false };
    search.run(0, all);
    if search.out_of_budget {
        return Ok(Outcome::Unknown { nodes: budget.used() });
    }
    let vertices: Vec<Vertex> = (0..n).filter(|&v| search.best >> v & 1 == 1).collect();
    Ok(Outcome::Solved(IndependentSet { size: vertices.len(), vertices }))
}

/// Vertex-disjoint cycles covering `G`, at most `α(G)` of them.
///
/// Each round grows a path from the least remaining vertex by prepending
/// until its front vertex `v₀` has no neighbour off the path, then removes
/// the cycle closed by `v₀` and its furthest path neighbour. Since `v₀` has no
/// neighbour outside that cycle, `α` drops by one each round.
pub fn posa_cycle_cover(g: &SimpleGraph) -> Vec<DegenerateCycle> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut cycles = Vec::new();
    while remaining > 0 {
        let start = (0..n).find(|&v| alive[v]).expect("a live vertex remains");
        let mut on_path = vec![false; n];
        on_path[start] = true;
        // stored back to front: path[last] is v₀
        let mut path = vec![start];
        loop {
            let front = *path.last().expect("non-empty path");
            match g.neighbours(front).iter().find(|&&w| alive[w] && !on_path[w]) {
                Some(&w) => {
                    on_path[w] = true;
                    path.push(w);
                }
                None => break,
            }
        }
        path.reverse();
        let v0 = path[0];
        let furthest = (1..path.len()).rev().find(|&i| g.has_edge(v0, path[i])).unwrap_or(0);
        let cycle: Vec<Vertex> = path[..=furthest].to_vec();
        for &v in &cycle {
            alive[v] = false;
        }
        remaining -= cycle.len();
        cycles.push(DegenerateCycle::new(cycle, None));
    }
    cycles
}

/// The common colour of a vertex sequence read as a cycle, if there is one.
fn common_colour(g: &ColouredGraph, cycle: &DegenerateCycle) -> Option<Colour> {
    let mut colours = cycle.edges().into_iter().map(|(u, v)| g.colour(u, v));
    let first = colours.next()??;
    colours.all(|c| c == Some(first)).then_some(first)
}

/// Covers `A` with at most `2k` vertex-disjoint cycles of `G[A, B]`.
///
/// Contracts `A` at threshold `|B|/(5k²)`, covers the contracted graph with
/// [`posa_cycle_cover`] and threads a fresh coneighbour from `B` between each
/// consecutive pair. Only edges whose colour is in `colours` are used (all
/// colours when empty); cycles that come out monochromatic carry their colour.
pub fn bipartite_cycle_cover(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    k: usize,
    colours: &[Colour],
    budget: &Budget,
) -> Result<Vec<DegenerateCycle>> {
    check_classes(g, a, b)?;
    if k == 0 {
        return Err(Error::input("k must be at least 1"));
    }
    let set = colour_set(g, colours)?;
    let threshold = Rational::new(b.len() as i128, 5 * (k as i128) * (k as i128));
    if int(a.len() as i128) > threshold {
        return Err(Error::input(format!(
            "|A| = {} exceeds |B|/(5k²) = {}",
            a.len(),
            rational::format_rational(&threshold)
        )));
    }
    let mut in_b = vec![false; g.n()];
    for &v in b {
        in_b[v] = true;
    }
    let nbhd = b_neighbourhoods(g, a, &in_b, set);
    let need = Rational::new(b.len() as i128, k as i128);
    if let Some(i) = (0..a.len()).find(|&i| !rational::at_least(nbhd[i].len(), &need)) {
        return Err(Error::input(format!(
            "deg({}, B) = {} is below |B|/k = {}",
            a[i],
            nbhd[i].len(),
            rational::format_rational(&need)
        )));
    }
    let contracted = contracted_graph(g, a, b, &threshold, &set.iter().collect::<Vec<_>>())?;
    if let Outcome::Solved(alpha) = independence_number(&contracted.graph, budget)? {
        if alpha.size >= 2 * k {
            return Err(Error::Internal(format!(
                "contracted graph has an independent set of size {} ≥ 2k = {}",
                alpha.size,
                2 * k
            )));
        }
    }
    let mut used = vec![false; g.n()];
    let mut out = Vec::new();
    for cycle in posa_cycle_cover(&contracted.graph) {
        let xs: Vec<Vertex> = cycle.vertices.clone();
        if xs.len() == 1 {
            out.push(DegenerateCycle::vertex(a[xs[0]]));
            continue;
        }
        let pairs: Vec<(usize, usize)> = if xs.len() == 2 {
            vec![(xs[0], xs[1]), (xs[1], xs[0])]
        } else {
            (0..xs.len()).map(|i| (xs[i], xs[(i + 1) % xs.len()])).collect()
        };
        let mut seq = Vec::with_capacity(2 * pairs.len());
        for (x, y) in pairs {
            let co = nbhd[x]
                .iter()
                .copied()
                .find(|&w| !used[w] && nbhd[y].binary_search(&w).is_ok())
                .ok_or_else(|| {
                    Error::Internal(format!("no unused coneighbour left for {} and {}", a[x], a[y]))
                })?;
            used[co] = true;
            seq.push(a[x]);
            seq.push(co);
        }
        let mut expanded = DegenerateCycle::new(seq, None);
        expanded.colour = common_colour(g, &expanded);
        out.push(expanded);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureClass {
    pub signature: Vec<Colour>,
    pub members: Vec<Vertex>,
}

/// Per `u ∈ B`, the colour of `u a_i` for each `a_i ∈ A` (`r + 1` for a non-edge).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureTable {
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub signatures: Vec<Vec<Colour>>,
    /// Classes in order of signature.
    pub classes: Vec<SignatureClass>,
}

impl SignatureTable {
    pub fn build(g: &ColouredGraph, a: &[Vertex], b: &[Vertex]) -> Result<Self> {
        check_classes(g, a, b)?;
        let none = g.r() as Colour + 1;
        let signatures: Vec<Vec<Colour>> =
            b.iter().map(|&u| a.iter().map(|&v| g.colour(u, v).unwrap_or(none)).collect()).collect();
        let mut map: BTreeMap<&[Colour], Vec<Vertex>> = BTreeMap::new();
        for (sig, &u) in signatures.iter().zip(b) {
            map.entry(sig.as_slice()).or_default().push(u);
        }
        let classes = map
            .into_iter()
            .map(|(s, mut members)| {
                members.sort_unstable();
                SignatureClass { signature: s.to_vec(), members }
            })
            .collect();
        Ok(SignatureTable { a: a.to_vec(), b: b.to_vec(), signatures, classes })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureStep {
    pub pivot: Vertex,
    pub live_before: usize,
    pub pivot_degree: usize,
    pub live_after: usize,
    pub cycles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureCover {
    pub cycles: Vec<DegenerateCycle>,
    pub steps: Vec<SignatureStep>,
    /// `|B'|` after dropping classes of size at most `|A|`.
    pub b_prime: usize,
    /// `|B| − |A|(r+1)^{|A|}`, saturating at `i128::MIN`.
    pub b_prime_lower: i128,
    /// `r ⌈3Kr ln r / ln(1/δ)⌉`.
    pub bound: u64,
}

fn signature_bound(r: usize, delta: &Rational, big_k: u32) -> u64 {
    let ratio = 3.0 * big_k as f64 * r as f64 * (r as f64).ln() / (1.0 / rational::to_f64(delta)).ln();
    r as u64 * ratio.ceil().max(0.0) as u64
}

/// `r^{Kr}` if it fits in `usize`.
fn power_bound(r: usize, big_k: u32) -> Option<usize> {
    (r as u32).checked_mul(big_k).and_then(|e| r.checked_pow(e))
}

/// Covers `A` with monochromatic cycles by repeatedly pivoting on a
/// signature-class vertex of large live degree.
pub fn signature_cover(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    delta: &Rational,
    big_k: u32,
) -> Result<SignatureCover> {
    check_classes(g, a, b)?;
    if *delta <= int(0) || *delta > rational::ratio(1, 4) {
        return Err(Error::input(format!("δ = {} outside (0, 1/4]", rational::format_rational(delta))));
    }
    if let Some(cap) = power_bound(g.r(), big_k) {
        if a.len() > cap {
            return Err(Error::input(format!("|A| = {} exceeds r^(Kr) = {cap}", a.len())));
        }
    }
    let need = (int(1) - delta) * int(b.len() as i128);
    for &v in a {
        let d = g.colour_degree(v, ColourSet::all(g.r()), b)?;
        if !rational::at_least(d, &need) {
            return Err(Error::input(format!(
                "deg({v}, B) = {d} is below (1 − δ)|B| = {}",
                rational::format_rational(&need)
            )));
        }
    }
    let r = g.r();
    let table = SignatureTable::build(g, a, b)?;
    let mut class_of = vec![usize::MAX; g.n()];
    let mut in_b_prime = vec![false; g.n()];
    for (i, class) in table.classes.iter().enumerate() {
        for &u in &class.members {
            class_of[u] = i;
            in_b_prime[u] = class.members.len() > a.len();
        }
    }
    let b_prime = b.iter().filter(|&&u| in_b_prime[u]).count();
    let b_prime_lower = (r as i128 + 1)
        .checked_pow(a.len() as u32)
        .and_then(|p| p.checked_mul(a.len() as i128))
        .map_or(i128::MIN, |loss| b.len() as i128 - loss);

    let mut a_live = vec![false; g.n()];
    for &v in a {
        a_live[v] = true;
    }
    let mut live_count = a.len();
    let mut b_live = in_b_prime.clone();
    let mut cycles = Vec::new();
    let mut steps = Vec::new();
    while live_count > 0 {
        let mut pivot: Option<Vertex> = None;
        let mut best = 0;
        for &u in b.iter().filter(|&&u| b_live[u]) {
            let d = g.neighbours(u).iter().filter(|&&(w, _)| a_live[w]).count();
            if pivot.is_none_or(|p| d > best || (d == best && u < p)) {
                pivot = Some(u);
                best = d;
            }
        }
        let want = (int(1) - delta * int(2)) * int(live_count as i128);
        let pivot = match pivot {
            Some(u) if best > 0 && rational::at_least(best, &want) => u,
            _ => {
                return Err(Error::Internal(format!(
                    "no pivot in B' with (1 − 2δ)|A*| = {} live neighbours",
                    rational::format_rational(&want)
                )))
            }
        };
        let mut pool: Vec<Vertex> =
            table.classes[class_of[pivot]].members.iter().copied().filter(|&w| b_live[w]).collect();
        pool.reverse();
        let before = live_count;
        let mut made = 0;
        for c in 1..=r as Colour {
            let xs: Vec<Vertex> = g.neighbours_in(pivot, c).filter(|&w| a_live[w]).collect();
            if xs.is_empty() {
                continue;
            }
            let cycle = if xs.len() == 1 {
                DegenerateCycle::vertex(xs[0])
            } else {
                if pool.len() < xs.len() {
                    return Err(Error::Internal(format!(
                        "signature class of {pivot} has {} live vertices, {} needed",
                        pool.len(),
                        xs.len()
                    )));
                }
                let mut seq = Vec::with_capacity(2 * xs.len());
                for &x in &xs {
                    let y = pool.pop().expect("pool size checked");
                    b_live[y] = false;
                    seq.push(x);
                    seq.push(y);
                }
                DegenerateCycle::new(seq, Some(c))
            };
            for &x in &xs {
                a_live[x] = false;
            }
            live_count -= xs.len();
            made += 1;
            cycles.push(cycle);
        }
        if int(live_count as i128) > delta * int(2 * before as i128) {
            return Err(Error::Internal(format!("leftover {live_count} exceeds 2δ·{before}")));
        }
        steps.push(SignatureStep { pivot, live_before: before, pivot_degree: best, live_after: live_count, cycles: made });
    }
    Ok(SignatureCover { cycles, steps, b_prime, b_prime_lower, bound: signature_bound(r, delta, big_k) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn complete_bipartite(na: usize, nb: usize, colour: impl Fn(usize, usize) -> Colour, r: usize) -> ColouredGraph {
        let edges = (0..na).flat_map(|i| (0..nb).map(move |j| (i, na + j)));
        let edges: Vec<_> = edges.map(|(u, v)| (u, v, colour(u, v))).collect();
        ColouredGraph::from_edges(na + nb, r, edges).unwrap()
    }

    fn petersen() -> SimpleGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((i + 5, (i + 2) % 5 + 5));
        }
        SimpleGraph::from_edges(10, e).unwrap()
    }

    fn alpha(g: &SimpleGraph) -> usize {
        independence_number(g, &Budget::default()).unwrap().solved().unwrap().size
    }

    /// α by trying every subset.
    fn alpha_brute(g: &SimpleGraph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn alpha_small_graphs() {
        let c5 = SimpleGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(alpha(&c5), 2);
        assert_eq!(alpha(&SimpleGraph::complete(7)), 1);
        assert_eq!(alpha(&petersen()), 4);
        assert_eq!(alpha_brute(&petersen()), 4);
        assert_eq!(alpha(&SimpleGraph::empty(0)), 0);
    }

    #[test]
    fn alpha_witness_is_independent() {
        let g = petersen();
        let w = independence_number(&g, &Budget::default()).unwrap().solved().unwrap();
        assert!(g.edges().all(|(u, v)| !(w.vertices.contains(&u) && w.vertices.contains(&v))));
    }

    #[test]
    fn alpha_budget() {
        let g = SimpleGraph::empty(40);
        assert!(!independence_number(&g, &Budget::nodes(3)).unwrap().is_solved());
    }

    #[test]
    fn contracted_thresholds() {
        let g = complete_bipartite(3, 4, |_, _| 1, 1);
        let a = [0, 1, 2];
        let b = [3, 4, 5, 6];
        assert_eq!(contracted_graph(&g, &a, &b, &int(4), &[]).unwrap().graph.edge_count(), 3);
        assert_eq!(contracted_graph(&g, &a, &b, &int(5), &[]).unwrap().graph.edge_count(), 0);
        assert!(contracted_graph(&g, &a, &[2, 3], &int(1), &[]).is_err());
    }

    #[test]
    fn contracted_planted_pair() {
        // codeg(0,1) = 2, codeg(0,2) = codeg(1,2) = 3
        let edges = [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 6), (2, 3), (2, 4), (2, 5), (2, 6)];
        let g = ColouredGraph::from_edges(7, 1, edges.iter().map(|&(u, v)| (u, v, 1))).unwrap();
        let cg = contracted_graph(&g, &[0, 1, 2], &[3, 4, 5, 6], &int(3), &[]).unwrap();
        assert_eq!(cg.vertex_edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn posa_basic() {
        let tri = SimpleGraph::complete(3);
        let c = posa_cycle_cover(&tri);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, crate::graph::CycleKind::ProperCycle);
        let p3 = SimpleGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(posa_cycle_cover(&p3).len() <= 2);
    }

    fn check_cover(g: &SimpleGraph, cycles: &[DegenerateCycle]) {
        let mut seen = vec![false; g.n()];
        for c in cycles {
            for &v in &c.vertices {
                assert!(!std::mem::replace(&mut seen[v], true));
            }
            for (u, v) in c.edges() {
                assert!(g.has_edge(u, v));
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn posa_within_alpha_on_random_graphs() {
        for seed in 0..100 {
            let g = crate::graph::random_coloured_graph(12, 1, 0.5, seed).uncoloured();
            let cycles = posa_cycle_cover(&g);
            check_cover(&g, &cycles);
            assert!(cycles.len() <= alpha_brute(&g), "seed {seed}");
        }
    }

    #[test]
    fn bipartite_k2_10() {
        let g = complete_bipartite(2, 10, |_, _| 1, 1);
        let b: Vec<_> = (2..12).collect();
        let cycles = bipartite_cycle_cover(&g, &[0, 1], &b, 1, &[], &Budget::default()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices.len(), 4);
        assert_eq!(cycles[0].colour, Some(1));
        assert!(cycles[0].check_in(&g).is_ok());
    }

    #[test]
    fn bipartite_single_vertex() {
        let g = complete_bipartite(1, 5, |_, _| 1, 1);
        let cycles = bipartite_cycle_cover(&g, &[0], &[1, 2, 3, 4, 5], 1, &[], &Budget::default()).unwrap();
        assert_eq!(cycles, vec![DegenerateCycle::vertex(0)]);
    }

    #[test]
    fn bipartite_precondition_errors() {
        let g = complete_bipartite(3, 10, |_, _| 1, 1);
        let b: Vec<_> = (3..13).collect();
        let err = bipartite_cycle_cover(&g, &[0, 1, 2], &b, 1, &[], &Budget::default()).unwrap_err();
        assert!(err.to_string().contains("|A|"));
    }

    #[test]
    fn signature_trivial_cases() {
        let g = complete_bipartite(1, 4, |_, _| 1, 2);
        let cover = signature_cover(&g, &[], &[1, 2, 3, 4], &ratio(1, 4), 1).unwrap();
        assert!(cover.cycles.is_empty());
        let cover = signature_cover(&g, &[0], &[1, 2, 3, 4], &ratio(1, 4), 1).unwrap();
        assert_eq!(cover.cycles.len(), 1);
    }

    #[test]
    fn signature_planted() {
        // A = 0..6, B = 6..606; vertex a_i misses B-vertices with (j + i) % 20 == 0,
        // colour of a_i b_j is 1 + (i + j / 100) % 2.
        let na = 6;
        let nb = 600;
        let mut edges = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                if (j / 30 + i) % 20 != 0 {
                    edges.push((i, na + j, 1 + ((i + j / 100) % 2) as Colour));
                }
            }
        }
        let g = ColouredGraph::from_edges(na + nb, 2, edges).unwrap();
        let a: Vec<_> = (0..na).collect();
        let b: Vec<_> = (na..na + nb).collect();
        let delta = ratio(1, 4);
        let cover = signature_cover(&g, &a, &b, &delta, 3).unwrap();
        assert_eq!(cover.bound, 18);
        assert!(cover.cycles.len() as u64 <= cover.bound);
        let mut seen = vec![false; g.n()];
        for c in &cover.cycles {
            assert!(c.check_in(&g).is_ok());
            for &v in &c.vertices {
                assert!(!std::mem::replace(&mut seen[v], true));
            }
        }
        assert!(a.iter().all(|&v| seen[v]));
        for s in &cover.steps {
            assert!(s.live_after as f64 <= 0.5 * s.live_before as f64);
        }
        let table = SignatureTable::build(&g, &a, &b).unwrap();
        assert_eq!(table.classes.iter().map(|c| c.members.len()).sum::<usize>(), nb);
        assert!(cover.b_prime as i128 >= cover.b_prime_lower);
    }

    #[test]
    fn signature_rejects_low_degree() {
        let g = complete_bipartite(1, 4, |_, _| 1, 1);
        let mut h = ColouredGraph::new(5, 1).unwrap();
        h.add_edge(0, 1, 1).unwrap();
        assert!(signature_cover(&h, &[0], &[1, 2, 3, 4], &ratio(1, 4), 1).is_err());
        assert!(signature_cover(&g, &[0], &[1, 2, 3, 4], &ratio(1, 2), 1).is_err());
    }
}
