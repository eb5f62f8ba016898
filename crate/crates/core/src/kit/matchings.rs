use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::graph::{Colour, ColouredGraph, Vertex};
use crate::rational::Rational;

/// A matching inside one colour-`colour` component of the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectedMatching {
    pub colour: Colour,
    /// Ordinal of the component among colour-`colour` components of the whole graph.
    pub component: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingRound {
    pub colour: Colour,
    pub edges: usize,
    pub live_before: usize,
    pub live_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingCover {
    pub matchings: Vec<ConnectedMatching>,
    pub rounds: Vec<MatchingRound>,
    pub uncovered: Vec<Vertex>,
}

/// Maximum colour-`c` matching inside each component of `G_c[live]`; returns the largest.
fn best_in_colour(g: &ColouredGraph, c: Colour, live: &[bool]) -> Vec<(Vertex, Vertex)> {
    let n = g.n();
    let mut dsu = DisjointSets::new(n);
    let edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v, col)| col == c && live[u] && live[v])
        .map(|(u, v, _)| (u, v))
        .collect();
    for &(u, v) in &edges {
        dsu.union(u, v);
    }
    let mut groups: std::collections::BTreeMap<Vertex, Vec<(Vertex, Vertex)>> = Default::default();
    for &(u, v) in &edges {
        groups.entry(dsu.find(u)).or_default().push((u, v));
    }
    // order components by least member for deterministic tie-breaks
    let mut comps: Vec<Vec<(Vertex, Vertex)>> = groups.into_values().collect();
    comps.sort_by_key(|es| es.iter().map(|&(u, _)| u).min());
    let mut best = Vec::new();
    for es in comps {
        if es.len() <= best.len() {
            continue;
        }
        let mut local = std::collections::BTreeMap::new();
        let mut graph: UnGraph<Vertex, ()> = UnGraph::new_undirected();
        for &(u, v) in &es {
            for x in [u, v] {
                local.entry(x).or_insert_with(|| graph.add_node(x));
            }
            graph.add_edge(local[&u], local[&v], ());
        }
        let m = maximum_matching(&graph);
        if m.len() > best.len() {
            let mut found: Vec<(Vertex, Vertex)> = m
                .edges()
                .map(|(a, b): (NodeIndex, NodeIndex)| {
                    let (x, y) = (graph[a], graph[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            found.sort_unstable();
            best = found;
        }
    }
    best
}

/// Repeatedly removes a largest monochromatic connected matching until at
/// most `stop_fraction · n` vertices remain uncovered or nothing is left to match.
pub fn greedy_connected_matching_cover(g: &ColouredGraph, stop_fraction: &Rational) -> MatchingCover {
    let n = g.n();
    let limit = stop_fraction * Rational::from_integer(n as i128);
    let labels: Vec<Vec<usize>> = (1..=g.r() as Colour).map(|c| g.colour_labels(c)).collect();
    let mut live = vec![true; n];
    let mut live_count = n;
    let mut matchings = Vec::new();
    let mut rounds = Vec::new();
    while Rational::from_integer(live_count as i128) > limit {
        let mut best: Option<(Colour, Vec<(Vertex, Vertex)>)> = None;
        for c in 1..=g.r() as Colour {
            let m = best_in_colour(g, c, &live);
            if m.len() > best.as_ref().map_or(0, |b| b.1.len()) {
                best = Some((c, m));
            }
        }
        let Some((colour, edges)) = best else { break };
        let before = live_count;
        for &(u, v) in &edges {
            live[u] = false;
            live[v] = false;
        }
        live_count -= 2 * edges.len();
        rounds.push(MatchingRound { colour, edges: edges.len(), live_before: before, live_after: live_count });
        let component = labels[colour as usize - 1][edges[0].0];
        matchings.push(ConnectedMatching { colour, component, edges });
    }
    let uncovered = (0..n).filter(|&v| live[v]).collect();
    MatchingCover { matchings, rounds, uncovered }
}
