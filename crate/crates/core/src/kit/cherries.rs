use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::cover::tree::{tree_cover, CoverMode};
use crate::cycles::check_classes;
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::graph::{Colour, ColourSet, ColouredGraph, Vertex};
use crate::rational::{self, int, Rational};
use crate::simple::SimpleGraph;

use super::paths::longest_path;

/// A 3-vertex path `leaves[0] – centre – leaves[1]` in one colour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cherry {
    pub centre: Vertex,
    pub leaves: [Vertex; 2],
    pub colour: Colour,
}

impl Cherry {
    pub fn check_in(&self, g: &ColouredGraph) -> std::result::Result<(), String> {
        let [x, y] = self.leaves;
        if x == y || x == self.centre || y == self.centre {
            return Err(format!("cherry at {} repeats a vertex", self.centre));
        }
        for leaf in self.leaves {
            match g.colour(self.centre, leaf) {
                Some(c) if c == self.colour => {}
                Some(c) => return Err(format!("edge {{{}, {leaf}}} has colour {c}, expected {}", self.centre, self.colour)),
                None => return Err(format!("pair {{{}, {leaf}}} is not an edge", self.centre)),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherryRound {
    /// Colours whose components received cherries this round.
    pub colours: Vec<Colour>,
    pub covered: usize,
    pub live_before: usize,
    pub live_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherryCover {
    pub cherries: Vec<Cherry>,
    /// Distinct monochromatic components of `G` containing a cherry.
    pub components: usize,
    /// 1 when `δ ≥ 1/(12r)`, else 2.
    pub case: u8,
    pub rounds: Vec<CherryRound>,
    /// Size of the exact tree cover of the auxiliary graph.
    pub residual_trees: usize,
    /// Components charged by the rounds plus `residual_trees`.
    pub ceiling: usize,
}

struct State<'a> {
    g: &'a ColouredGraph,
    a_live: Vec<bool>,
    b_live: Vec<bool>,
    live_count: usize,
    cherries: Vec<Cherry>,
}

impl State<'_> {
    fn take(&mut self, centre: Vertex, leaves: [Vertex; 2], colour: Colour) {
        self.a_live[centre] = false;
        self.b_live[leaves[0]] = false;
        self.b_live[leaves[1]] = false;
        self.live_count -= 1;
        self.cherries.push(Cherry { centre, leaves, colour });
    }

    /// Two live `B` vertices joined to `x` in colour `c`, least first, among `allowed`.
    fn two_leaves(&self, x: Vertex, c: Colour, allowed: impl Fn(Vertex) -> bool) -> Option<[Vertex; 2]> {
        let mut it = self.g.neighbours_in(x, c).filter(|&w| self.b_live[w] && allowed(w));
        Some([it.next()?, it.next()?])
    }

    fn live_a(&self, a: &[Vertex]) -> Vec<Vertex> {
        a.iter().copied().filter(|&v| self.a_live[v]).collect()
    }

    fn live_b(&self, b: &[Vertex]) -> Vec<Vertex> {
        b.iter().copied().filter(|&v| self.b_live[v]).collect()
    }

    /// Number of colour-`c` edges from `x` into live `B`.
    fn live_colour_degree(&self, x: Vertex, c: Colour) -> usize {
        self.g.neighbours_in(x, c).filter(|&w| self.b_live[w]).count()
    }
}

/// Disjoint cherries along `path` with centres in `A`, taken greedily from the front.
fn cherries_on_path(path: &[Vertex], is_a: &[bool]) -> Vec<(Vertex, [Vertex; 2])> {
    let mut out = Vec::new();
    let mut i = 1;
    while i + 1 < path.len() {
        if is_a[path[i]] {
            out.push((path[i], [path[i - 1], path[i + 1]]));
            i += 4;
        } else {
            i += 1;
        }
    }
    out
}

/// One round of the large-δ case: the best colour component by longest path.
fn round_case_one(st: &mut State, a: &[Vertex], b: &[Vertex], is_a: &[bool]) -> Option<CherryRound> {
    let g = st.g;
    let live: Vec<Vertex> = st.live_a(a).into_iter().chain(st.live_b(b)).collect();
    let before = st.live_count;
    let mut best: Option<(Colour, Vec<(Vertex, [Vertex; 2])>)> = None;
    for c in 1..=g.r() as Colour {
        let edges = live
            .iter()
            .filter(|&&v| is_a[v])
            .flat_map(|&v| g.neighbours_in(v, c).filter(|&w| st.b_live[w]).map(move |w| (v, w)));
        let edges: Vec<(Vertex, Vertex)> = edges.collect();
        let mut dsu = DisjointSets::new(g.n());
        for &(u, v) in &edges {
            dsu.union(u, v);
        }
        let roots: BTreeSet<Vertex> = edges.iter().map(|&(u, _)| dsu.find(u)).collect();
        let h = SimpleGraph::from_edges(g.n(), edges.iter().copied()).expect("edges of g");
        for root in roots {
            let members: Vec<Vertex> = live.iter().copied().filter(|&v| dsu.find(v) == root).collect();
            let path = longest_path(&h, &members).path;
            let found = cherries_on_path(&path, is_a);
            if found.len() > best.as_ref().map_or(0, |b| b.1.len()) {
                best = Some((c, found));
            }
        }
    }
    let (colour, found) = best?;
    for (centre, leaves) in found {
        st.take(centre, leaves, colour);
    }
    Some(CherryRound { colours: vec![colour], covered: before - st.live_count, live_before: before, live_after: st.live_count })
}

/// One round of the small-δ case: pivot on a `B` vertex of large filtered degree.
fn round_case_two(st: &mut State, a: &[Vertex], b: &[Vertex]) -> Option<CherryRound> {
    let g = st.g;
    let live_a = st.live_a(a);
    let before = st.live_count;
    let need = 2 * live_a.len();
    let mut kept = vec![ColourSet::EMPTY; g.n()];
    for &x in &live_a {
        for c in 1..=g.r() as Colour {
            if st.live_colour_degree(x, c) >= need {
                kept[x].insert(c);
            }
        }
    }
    let filtered = |u: Vertex, x: Vertex| g.colour(u, x).filter(|&c| kept[x].contains(c));
    let mut pivot: Option<(Vertex, usize)> = None;
    for u in st.live_b(b) {
        let d = live_a.iter().filter(|&&x| filtered(u, x).is_some()).count();
        if pivot.is_none_or(|(p, best)| d > best || (d == best && u < p)) {
            pivot = Some((u, d));
        }
    }
    let (u, _) = pivot.filter(|&(_, d)| d > 0)?;
    let mut colours = Vec::new();
    for c in 1..=g.r() as Colour {
        let xs: Vec<Vertex> = live_a.iter().copied().filter(|&x| filtered(u, x) == Some(c)).collect();
        let mut any = false;
        for x in xs {
            if let Some(leaves) = st.two_leaves(x, c, |_| true) {
                st.take(x, leaves, c);
                any = true;
            }
        }
        if any {
            colours.push(c);
        }
    }
    (before > st.live_count).then(|| CherryRound {
        colours,
        covered: before - st.live_count,
        live_before: before,
        live_after: st.live_count,
    })
}

/// Covers the remaining `A` through a tree cover of the auxiliary graph on
/// live `A ∪ B`: `B` a clique in colour `r + 1`, and `ab` kept in colour `c`
/// when `a` has at least `2|A'|` live colour-`c` edges.
fn residual_phase(st: &mut State, a: &[Vertex], b: &[Vertex], budget: &Budget) -> Result<Outcome<usize>> {
    let g = st.g;
    let r = g.r();
    let a1 = st.live_a(a);
    if a1.is_empty() {
        return Ok(Outcome::Solved(0));
    }
    let b1 = st.live_b(b);
    let vertices: Vec<Vertex> = a1.iter().chain(&b1).copied().collect();
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        index[v] = i;
    }
    let extra = Colour::try_from(r + 1).map_err(|_| Error::input("too many colours for the auxiliary graph"))?;
    let mut aux = ColouredGraph::new(vertices.len(), r + 1)?;
    for i in 0..b1.len() {
        for j in i + 1..b1.len() {
            aux.add_edge(a1.len() + i, a1.len() + j, extra)?;
        }
    }
    let need = 2 * a1.len();
    for &x in &a1 {
        for c in 1..=r as Colour {
            if st.live_colour_degree(x, c) >= need {
                for w in g.neighbours_in(x, c).filter(|&w| st.b_live[w]) {
                    aux.add_edge(index[x], index[w], c)?;
                }
            }
        }
    }
    let cert = match tree_cover(&aux, CoverMode::Exact, &int(0), budget)? {
        Outcome::Solved(c) => c,
        Outcome::Unknown { nodes } => return Ok(Outcome::Unknown { nodes }),
    };
    for tree in &cert.trees {
        let members: Vec<Vertex> = tree.vertices.iter().map(|&i| vertices[i]).collect();
        let in_tree: BTreeSet<Vertex> = members.iter().copied().collect();
        let centres: Vec<Vertex> = members.iter().copied().filter(|&x| index[x] < a1.len()).collect();
        for x in centres {
            if !st.a_live[x] {
                continue;
            }
            let placed = if tree.colour != extra && members.len() > 1 {
                st.two_leaves(x, tree.colour, |w| in_tree.contains(&w) && aux.has_edge(index[x], index[w]))
                    .map(|l| (l, tree.colour))
            } else {
                None
            };
            let placed = placed.or_else(|| {
                // singleton or exhausted component: richest colour among live edges
                (1..=r as Colour)
                    .filter_map(|c| st.two_leaves(x, c, |_| true).map(|l| (st.live_colour_degree(x, c), l, c)))
                    .max_by_key(|&(d, _, c)| (d, std::cmp::Reverse(c)))
                    .map(|(_, l, c)| (l, c))
            });
            let (leaves, c) = placed.ok_or_else(|| {
                Error::Internal(format!("no two unused neighbours of {x} in a single colour"))
            })?;
            st.take(x, leaves, c);
        }
    }
    Ok(Outcome::Solved(cert.size()))
}

/// Vertex-disjoint cherries centred in `A` covering `A`.
///
/// Requires `deg(v, B) ≥ (1 − δ)|B|` for `v ∈ A` and `|A| ≤ max{δ|B|, |B|/(12r)}`.
pub fn cherry_cover(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    delta: &Rational,
    budget: &Budget,
) -> Result<Outcome<CherryCover>> {
    check_classes(g, a, b)?;
    if *delta < int(0) || *delta >= int(1) {
        return Err(Error::input(format!("δ = {} outside [0, 1)", rational::format_rational(delta))));
    }
    let r = g.r();
    let nb = int(b.len() as i128);
    let need = (int(1) - delta) * nb;
    for &v in a {
        let d = g.colour_degree(v, ColourSet::all(r), b)?;
        if !rational::at_least(d, &need) {
            return Err(Error::input(format!(
                "deg({v}, B) = {d} is below (1 − δ)|B| = {}",
                rational::format_rational(&need)
            )));
        }
    }
    let small = Rational::new(1, 12 * r as i128);
    let cap = std::cmp::max(delta * nb, small * nb);
    if int(a.len() as i128) > cap {
        return Err(Error::input(format!(
            "|A| = {} exceeds max{{δ|B|, |B|/(12r)}} = {}",
            a.len(),
            rational::format_rational(&cap)
        )));
    }
    let mut is_a = vec![false; g.n()];
    let mut a_live = vec![false; g.n()];
    let mut b_live = vec![false; g.n()];
    for &v in a {
        is_a[v] = true;
        a_live[v] = true;
    }
    for &v in b {
        b_live[v] = true;
    }
    let mut st = State { g, a_live, b_live, live_count: a.len(), cherries: Vec::new() };
    let case = if *delta >= small { 1 } else { 2 };
    let stop = delta * nb / int(r as i128);
    let mut rounds = Vec::new();
    while int(st.live_count as i128) > stop {
        if !budget.charge() {
            return Ok(Outcome::Unknown { nodes: budget.used() });
        }
        let round = if case == 1 { round_case_one(&mut st, a, b, &is_a) } else { round_case_two(&mut st, a, b) };
        match round {
            Some(round) => rounds.push(round),
            None => break,
        }
    }
    let residual_trees = match residual_phase(&mut st, a, b, budget)? {
        Outcome::Solved(t) => t,
        Outcome::Unknown { nodes } => return Ok(Outcome::Unknown { nodes }),
    };
    let labels: Vec<Vec<usize>> = (1..=r as Colour).map(|c| g.colour_labels(c)).collect();
    let used: BTreeSet<(Colour, usize)> =
        st.cherries.iter().map(|ch| (ch.colour, labels[ch.colour as usize - 1][ch.centre])).collect();
    let ceiling = rounds.iter().map(|r: &CherryRound| r.colours.len()).sum::<usize>() + residual_trees;
    Ok(Outcome::Solved(CherryCover {
        cherries: st.cherries,
        components: used.len(),
        case,
        rounds,
        residual_trees,
        ceiling,
    }))
}
