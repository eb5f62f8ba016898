//! Edge-coloured simple graphs and their monochromatic components.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::simple::SimpleGraph;

pub type Vertex = usize;

/// Colours are labelled `1..=r`.
pub type Colour = u8;

/// Upper limit on `r`; one colour is kept spare for auxiliary `r + 1` graphs.
pub const MAX_COLOURS: usize = 62;

/// A subset of `[r]` stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourSet(u64);

impl ColourSet {
    pub const EMPTY: ColourSet = ColourSet(0);

    pub fn all(r: usize) -> Self {
        ColourSet(((1u64 << r) - 1) << 1)
    }

    pub fn single(c: Colour) -> Self {
        ColourSet(1u64 << c)
    }

    pub fn contains(self, c: Colour) -> bool {
        (c as u32) < 64 && self.0 & (1u64 << c) != 0
    }

    pub fn insert(&mut self, c: Colour) {
        self.0 |= 1u64 << c;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn max(self) -> Option<Colour> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as Colour)
    }

    pub fn iter(self) -> impl Iterator<Item = Colour> {
        (1..64u8).filter(move |&c| self.contains(c))
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        let mut s = ColourSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// A simple graph on `0..n` with each edge coloured by one of `1..=r`.
#[derive(Clone, PartialEq, Eq)]
pub struct ColouredGraph {
    n: usize,
    r: usize,
    adj: Vec<Vec<(Vertex, Colour)>>,
    edge_count: usize,
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColouredGraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges())
            .finish()
    }
}

impl ColouredGraph {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if r == 0 || r > MAX_COLOURS + 1 {
            return Err(Error::input(format!("colour count r = {r} outside 1..={}", MAX_COLOURS + 1)));
        }
        Ok(ColouredGraph { n, r, adj: vec![Vec::new(); n], edge_count: 0 })
    }

    pub fn from_edges(
        n: usize,
        r: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Colour)>,
    ) -> Result<Self> {
        let mut g = Self::new(n, r)?;
        for (u, v, c) in edges {
            g.check_edge(u, v, c)?;
            g.adj[u].push((v, c));
            g.adj[v].push((u, c));
            g.edge_count += 1;
        }
        for v in 0..n {
            g.adj[v].sort_unstable();
            if let Some(w) = g.adj[v].windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::input(format!("duplicate edge {{{v}, {}}}", w[0].0)));
            }
        }
        Ok(g)
    }

    fn check_edge(&self, u: Vertex, v: Vertex, c: Colour) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::input(format!("edge ({u}, {v}) out of range for n = {}", self.n)));
        }
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        if c == 0 || c as usize > self.r {
            return Err(Error::input(format!("colour {c} outside 1..={}", self.r)));
        }
        Ok(())
    }

    /// Adds an edge; rejects duplicates, loops and out-of-range colours.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, c: Colour) -> Result<()> {
        self.check_edge(u, v, c)?;
        match self.adj[u].binary_search_by_key(&v, |&(w, _)| w) {
            Ok(_) => return Err(Error::input(format!("duplicate edge {{{u}, {v}}}"))),
            Err(pos) => self.adj[u].insert(pos, (v, c)),
        }
        let pos = self.adj[v].binary_search_by_key(&u, |&(w, _)| w).unwrap_err();
        self.adj[v].insert(pos, (u, c));
        self.edge_count += 1;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn colour(&self, u: Vertex, v: Vertex) -> Option<Colour> {
        self.adj
            .get(u)?
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.adj[u][i].1)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.colour(u, v).is_some()
    }

    /// Neighbours of `v` with edge colours, sorted by neighbour.
    pub fn neighbours(&self, v: Vertex) -> &[(Vertex, Colour)] {
        &self.adj[v]
    }

    pub fn neighbours_in(&self, v: Vertex, c: Colour) -> impl Iterator<Item = Vertex> + '_ {
        self.adj[v].iter().filter(move |&&(_, col)| col == c).map(|&(u, _)| u)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// `deg_C(v, S)`: neighbours of `v` in `within` joined by an edge with colour in `colours`.
    pub fn colour_degree(&self, v: Vertex, colours: ColourSet, within: &[Vertex]) -> Result<usize> {
        if v >= self.n {
            return Err(Error::input(format!("vertex {v} out of range for n = {}", self.n)));
        }
        if let Some(c) = colours.max() {
            if c as usize > self.r {
                return Err(Error::input(format!("colour {c} outside 1..={}", self.r)));
            }
        }
        let mut count = 0;
        for &w in within {
            if w >= self.n {
                return Err(Error::input(format!("vertex {w} out of range for n = {}", self.n)));
            }
            if let Some(c) = self.colour(v, w) {
                if colours.contains(c) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// Counts neighbours `w` of `v` with `member[w]` whose edge colour is in `colours`.
    pub fn degree_into(&self, v: Vertex, colours: ColourSet, member: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&(w, c)| member[w] && colours.contains(c)).count()
    }

    /// All edges as `(u, v, c)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex, Colour)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&(v, _)| u < v).map(|&(v, c)| (u, v, c)));
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// The uncoloured graph underlying `G`.
    pub fn uncoloured(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, self.edges().into_iter().map(|(u, v, _)| (u, v)))
            .expect("edges of a valid graph")
    }

    /// `G_C` as an uncoloured graph.
    pub fn colour_class(&self, colours: ColourSet) -> SimpleGraph {
        let edges = self.edges().into_iter().filter(|e| colours.contains(e.2)).map(|(u, v, _)| (u, v));
        SimpleGraph::from_edges(self.n, edges).expect("edges of a valid graph")
    }

    /// Per-vertex component ordinals of `G_c`, numbered by smallest member.
    pub fn colour_labels(&self, c: Colour) -> Vec<usize> {
        let mut dsu = DisjointSets::new(self.n);
        for (u, list) in self.adj.iter().enumerate() {
            for &(v, col) in list {
                if col == c && u < v {
                    dsu.union(u, v);
                }
            }
        }
        dsu.labels()
    }

    /// `labels[c - 1][v]` is the ordinal of the colour-`c` component containing `v`.
    pub fn component_labels(&self) -> Vec<Vec<usize>> {
        (1..=self.r as Colour).map(|c| self.colour_labels(c)).collect()
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> ColouredGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj: Vec<Vec<(Vertex, Colour)>> = vertices
            .iter()
            .map(|&v| {
                let mut row: Vec<_> = self.adj[v]
                    .iter()
                    .filter(|&&(u, _)| index[u] != usize::MAX)
                    .map(|&(u, c)| (index[u], c))
                    .collect();
                row.sort_unstable();
                row
            })
            .collect();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        ColouredGraph { n: vertices.len(), r: self.r, adj, edge_count }
    }

    /// Same graph viewed with a larger palette.
    pub fn with_colours(&self, r: usize) -> Result<ColouredGraph> {
        if r < self.r {
            return Err(Error::input(format!("cannot shrink palette from {} to {r}", self.r)));
        }
        let mut g = self.clone();
        g.r = r;
        Ok(g)
    }
}

/// A colour-`c` component; `members` and `edges` are sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub colour: Colour,
    pub index: usize,
    pub members: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

/// All monochromatic components, including singletons, ordered by colour and then smallest member.
pub fn monochromatic_components(g: &ColouredGraph) -> Vec<Component> {
    let mut out = Vec::new();
    for c in 1..=g.r() as Colour {
        let labels = g.colour_labels(c);
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut comps: Vec<Component> = (0..count)
            .map(|index| Component { colour: c, index, members: Vec::new(), edges: Vec::new() })
            .collect();
        for (v, &l) in labels.iter().enumerate() {
            comps[l].members.push(v);
        }
        for (u, v, col) in g.edges() {
            if col == c {
                comps[labels[u]].edges.push((u, v));
            }
        }
        out.extend(comps);
    }
    out
}

/// How the edges inside each blob of a blow-up are coloured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntraColourRule {
    Fixed(Colour),
    /// Uniform colours from a seeded generator.
    Seeded(u64),
}

impl Default for IntraColourRule {
    fn default() -> Self {
        IntraColourRule::Fixed(1)
    }
}

/// Replaces each vertex `v` by the clique `{v*b, .., v*b + b - 1}`.
///
/// Blobs of adjacent vertices become complete to each other in the colour of
/// the original edge.
pub fn blow_up(g: &ColouredGraph, b: usize, rule: IntraColourRule) -> Result<ColouredGraph> {
    if b == 0 {
        return Err(Error::input("blob size must be at least 1"));
    }
    if let IntraColourRule::Fixed(c) = rule {
        if c == 0 || c as usize > g.r() {
            return Err(Error::input(format!("intra-blob colour {c} outside 1..={}", g.r())));
        }
    }
    let mut rng = match rule {
        IntraColourRule::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        IntraColourRule::Fixed(_) => None,
    };
    let mut edges = Vec::new();
    for v in 0..g.n() {
        for i in 0..b {
            for j in i + 1..b {
                let c = match (&mut rng, rule) {
                    (Some(rng), _) => rng.random_range(1..=g.r() as Colour),
                    (None, IntraColourRule::Fixed(c)) => c,
                    _ => unreachable!(),
                };
                edges.push((v * b + i, v * b + j, c));
            }
        }
    }
    for (u, v, c) in g.edges() {
        for i in 0..b {
            for j in 0..b {
                edges.push((u * b + i, v * b + j, c));
            }
        }
    }
    ColouredGraph::from_edges(g.n() * b, g.r(), edges)
}

/// Shape of a (possibly degenerate) cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleKind {
    Empty,
    SingleVertex,
    SingleEdge,
    ProperCycle,
}

/// A cycle in the broad sense: empty, a vertex, an edge, or a proper cycle.
///
/// `colour` is `None` for the empty and single-vertex cases, and for cycles
/// found in uncoloured graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateCycle {
    pub kind: CycleKind,
    pub vertices: Vec<Vertex>,
    pub colour: Option<Colour>,
}

impl DegenerateCycle {
    pub fn new(vertices: Vec<Vertex>, colour: Option<Colour>) -> Self {
        let kind = match vertices.len() {
            0 => CycleKind::Empty,
            1 => CycleKind::SingleVertex,
            2 => CycleKind::SingleEdge,
            _ => CycleKind::ProperCycle,
        };
        let colour = if vertices.len() < 2 { None } else { colour };
        DegenerateCycle { kind, vertices, colour }
    }

    pub fn vertex(v: Vertex) -> Self {
        Self::new(vec![v], None)
    }

    /// Consecutive vertex pairs, closing the cycle for proper cycles.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let k = self.vertices.len();
        match k {
            0 | 1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..k).map(|i| (self.vertices[i], self.vertices[(i + 1) % k])).collect(),
        }
    }

    /// Checks shape, distinctness and that every edge lies in `g`, in the
    /// stated colour when one is given.
    pub fn check_in(&self, g: &ColouredGraph) -> std::result::Result<(), String> {
        let expected = DegenerateCycle::new(self.vertices.clone(), self.colour).kind;
        if expected != self.kind {
            return Err(format!("kind {:?} does not match {} vertices", self.kind, self.vertices.len()));
        }
        let mut sorted = self.vertices.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err("repeated vertex".into());
        }
        if let Some(&v) = sorted.iter().find(|&&v| v >= g.n()) {
            return Err(format!("vertex {v} out of range"));
        }
        for (u, v) in self.edges() {
            match (g.colour(u, v), self.colour) {
                (None, _) => return Err(format!("pair {{{u}, {v}}} is not an edge")),
                (Some(c), Some(want)) if c != want => {
                    return Err(format!("edge {{{u}, {v}}} has colour {c}, expected {want}"))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    r: usize,
    edges: Vec<(i64, i64, i64)>,
}

/// Line and column (1-based) of the `k`-th element of the top-level `"edges"` array.
fn edge_position(text: &str, k: usize) -> Option<(usize, usize)> {
    let start = text.find("\"edges\"")?;
    let bytes = text.as_bytes();
    let mut i = start + text[start..].find('[')?;
    let mut depth = 0usize;
    let mut seen = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'[' => {
                depth += 1;
                if depth == 2 {
                    if seen == k {
                        let line = text[..i].matches('\n').count() + 1;
                        let col = i - text[..i].rfind('\n').map_or(0, |p| p + 1) + 1;
                        return Some((line, col));
                    }
                    seen += 1;
                }
            }
            b']' => {
                depth -= 1;
                if depth == 0 {
                    return None;
                }
            }
            _ => {}
        }
        i += 1;
    }
    None
}

impl ColouredGraph {
    /// Loads `{"n": .., "r": .., "edges": [[u, v, c], ..]}`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Json {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let mut g = ColouredGraph::new(raw.n, raw.r)?;
        let mut seen = std::collections::HashMap::new();
        for (k, &(u, v, c)) in raw.edges.iter().enumerate() {
            let location = match edge_position(text, k) {
                Some((line, col)) => format!("edges[{k}] (line {line} column {col})"),
                None => format!("edges[{k}]"),
            };
            let fail = |message: String| Error::Json { location: location.clone(), message };
            if u < 0 || v < 0 || u as usize >= raw.n || v as usize >= raw.n {
                return Err(fail(format!("vertex out of range 0..{}", raw.n)));
            }
            if c < 1 || c as usize > raw.r {
                return Err(fail(format!("colour {c} outside 1..={}", raw.r)));
            }
            if u == v {
                return Err(fail(format!("self-loop at vertex {u}")));
            }
            let key = (u.min(v) as usize, u.max(v) as usize);
            if let Some(first) = seen.insert(key, k) {
                return Err(fail(format!("duplicate pair {{{}, {}}} (first at edges[{first}])", key.0, key.1)));
            }
            g.add_edge(key.0, key.1, c as Colour)?;
        }
        Ok(g)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = GraphJson {
            n: self.n,
            r: self.r,
            edges: self.edges().into_iter().map(|(u, v, c)| (u as i64, v as i64, c as i64)).collect(),
        };
        serde_json::to_value(raw).expect("graph serializes")
    }

    /// Canonical compact JSON: edges sorted, no whitespace.
    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }
}

impl Serialize for ColouredGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColouredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let edges = raw.edges.into_iter().map(|(u, v, c)| (u as usize, v as usize, c as Colour));
        ColouredGraph::from_edges(raw.n, raw.r, edges).map_err(serde::de::Error::custom)
    }
}

/// Random `r`-coloured graph: each pair is an edge with probability `p`, colour uniform.
pub fn random_coloured_graph(n: usize, r: usize, p: f64, seed: u64) -> ColouredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v, rng.random_range(1..=r as Colour)));
            }
        }
    }
    ColouredGraph::from_edges(n, r, edges).expect("random graph is valid")
}
