//! Multi-hypergraphs, the connectivity hypergraph of a coloured graph, and
//! the δ-intersecting test.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{monochromatic_components, Colour, ColouredGraph, Component};
use crate::rational::Rational;

/// A distinct edge with its multiplicity. `members` is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperEdge {
    pub members: Vec<usize>,
    pub mult: u64,
}

/// A multiset of vertex subsets over labelled vertices `0..labels.len()`.
///
/// Repeated edges are stored once with a multiplicity. When `parts` is set,
/// every edge meets every part in exactly one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiHypergraph {
    labels: Vec<String>,
    parts: Option<Vec<Vec<usize>>>,
    edges: Vec<HyperEdge>,
    index: HashMap<Vec<usize>, usize>,
    part_of: Vec<Option<usize>>,
}

impl MultiHypergraph {
    pub fn new(labels: Vec<String>, parts: Option<Vec<Vec<usize>>>) -> Result<Self> {
        let mut part_of = vec![None; labels.len()];
        if let Some(parts) = &parts {
            for (p, part) in parts.iter().enumerate() {
                for &v in part {
                    if v >= labels.len() {
                        return Err(Error::input(format!("part {p} names unknown vertex {v}")));
                    }
                    if part_of[v].replace(p).is_some() {
                        return Err(Error::input(format!("vertex {} lies in two parts", labels[v])));
                    }
                }
            }
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.as_str(), i) {
                return Err(Error::input(format!("label {l:?} used by vertices {j} and {i}")));
            }
        }
        Ok(MultiHypergraph { labels, parts, edges: Vec::new(), index: HashMap::new(), part_of })
    }

    /// Hypergraph with vertices labelled `"0"`, `"1"`, ... and no partition.
    pub fn unlabelled(vertex_count: usize) -> Self {
        Self::new((0..vertex_count).map(|i| i.to_string()).collect(), None).expect("distinct labels")
    }

    /// Adds `mult` copies of the edge `members`.
    pub fn add_edge(&mut self, members: &[usize], mult: u64) -> Result<()> {
        if mult == 0 {
            return Err(Error::input("edge multiplicity must be positive"));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        if members.is_empty() {
            return Err(Error::input("empty hyperedge"));
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!("repeated vertex in edge {members:?}")));
        }
        if let Some(&v) = members.iter().find(|&&v| v >= self.labels.len()) {
            return Err(Error::input(format!("edge names unknown vertex {v}")));
        }
        if let Some(parts) = &self.parts {
            let mut hit = vec![false; parts.len()];
            for &v in &members {
                match self.part_of[v] {
                    Some(p) if !hit[p] => hit[p] = true,
                    Some(_) => {
                        return Err(Error::input(format!("edge {members:?} meets a part twice")))
                    }
                    None => return Err(Error::input(format!("vertex {v} lies in no part"))),
                }
            }
            if members.len() != parts.len() {
                return Err(Error::input(format!("edge {members:?} misses a part")));
            }
        }
        match self.index.get(&members) {
            Some(&i) => self.edges[i].mult += mult,
            None => {
                self.index.insert(members.clone(), self.edges.len());
                self.edges.push(HyperEdge { members, mult });
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parts(&self) -> Option<&[Vec<usize>]> {
        self.parts.as_deref()
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.part_of[v]
    }

    /// Distinct edges in insertion order.
    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    /// `e(H)`, counting multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges.iter().map(|e| e.mult).sum()
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Multiplicity-weighted degree of every vertex.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0; self.labels.len()];
        for e in &self.edges {
            for &v in &e.members {
                deg[v] += e.mult;
            }
        }
        deg
    }

    /// Index of the first distinct edge missed by `set`, if any.
    pub fn first_unhit(&self, set: &[usize]) -> Option<usize> {
        let mut chosen = vec![false; self.labels.len()];
        for &v in set {
            if v < chosen.len() {
                chosen[v] = true;
            }
        }
        self.edges.iter().position(|e| !e.members.iter().any(|&v| chosen[v]))
    }

    pub fn is_transversal(&self, set: &[usize]) -> bool {
        self.first_unhit(set).is_none()
    }

    /// True when a partition is present (every edge then meets each part once).
    pub fn is_partite(&self) -> bool {
        self.parts.is_some()
    }

    /// Drops vertices lying in no edge, relabelling the rest in order.
    pub fn without_isolated(&self) -> MultiHypergraph {
        let deg = self.degrees();
        let keep: Vec<usize> = (0..self.labels.len()).filter(|&v| deg[v] > 0).collect();
        let mut new_id = vec![usize::MAX; self.labels.len()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let parts = self.parts.as_ref().map(|parts| {
            parts
                .iter()
                .map(|p| p.iter().filter(|&&v| deg[v] > 0).map(|&v| new_id[v]).collect())
                .collect()
        });
        let mut h = MultiHypergraph::new(labels, parts).expect("subset of a valid hypergraph");
        for e in &self.edges {
            let members: Vec<usize> = e.members.iter().map(|&v| new_id[v]).collect();
            h.add_edge(&members, e.mult).expect("subset of a valid hypergraph");
        }
        h
    }

    pub fn label_of(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// The connectivity hypergraph together with the components its vertices stand for.
#[derive(Debug, Clone)]
pub struct ConnectivityHypergraph {
    pub hypergraph: MultiHypergraph,
    /// `components[i]` is hypergraph vertex `i`.
    pub components: Vec<Component>,
    /// `edge_of[v]` is the distinct edge holding graph vertex `v`.
    pub edge_of: Vec<usize>,
}

/// `C(G)`: one vertex per monochromatic component (labelled `"c:index"`), one
/// edge per graph vertex listing its component in every colour.
pub fn connectivity_hypergraph(g: &ColouredGraph) -> ConnectivityHypergraph {
    let components = monochromatic_components(g);
    let labels: Vec<String> = components.iter().map(|c| format!("{}:{}", c.colour, c.index)).collect();
    let mut parts = vec![Vec::new(); g.r()];
    let mut offset = vec![0usize; g.r() + 1];
    for (i, comp) in components.iter().enumerate() {
        parts[comp.colour as usize - 1].push(i);
    }
    for c in 0..g.r() {
        offset[c + 1] = offset[c] + parts[c].len();
    }
    let mut h = MultiHypergraph::new(labels, Some(parts)).expect("component labels are distinct");
    let labels_per_colour: Vec<Vec<usize>> = (1..=g.r() as Colour).map(|c| g.colour_labels(c)).collect();
    let mut edge_of = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let members: Vec<usize> = (0..g.r()).map(|c| offset[c] + labels_per_colour[c][v]).collect();
        h.add_edge(&members, 1).expect("one component per colour");
        let mut sorted = members;
        sorted.sort_unstable();
        edge_of.push(h.index[&sorted]);
    }
    ConnectivityHypergraph { hypergraph: h, components, edge_of }
}

/// Per distinct edge, the multiplicity-weighted number of edges it meets,
/// itself included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionProfile {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl IntersectionProfile {
    pub fn min_count(&self) -> u64 {
        self.counts.iter().copied().min().unwrap_or(0)
    }
}

/// Largest edge size for which counts go through inclusion-exclusion.
const INCLUSION_EXCLUSION_MAX_SIZE: usize = 12;
/// Below this many distinct edges the pairwise count is used.
const PAIRWISE_MAX_EDGES: usize = 1500;

fn pairwise_profile(h: &MultiHypergraph) -> Vec<u64> {
    let n = h.vertex_count();
    let mut member = vec![false; n];
    h.edges
        .iter()
        .map(|e| {
            for &v in &e.members {
                member[v] = true;
            }
            let count = h
                .edges
                .iter()
                .filter(|f| f.members.iter().any(|&v| member[v]))
                .map(|f| f.mult)
                .sum();
            for &v in &e.members {
                member[v] = false;
            }
            count
        })
        .collect()
}

/// Counts via `|{f : f ∩ e ≠ ∅}| = Σ_{∅≠S⊆e} (-1)^{|S|+1} N(S)`, where `N(S)`
/// is the total multiplicity of edges containing `S`.
fn inclusion_exclusion_profile(h: &MultiHypergraph) -> Vec<u64> {
    let mut containing: HashMap<Vec<u32>, u64> = HashMap::new();
    let mut buf = Vec::new();
    for e in &h.edges {
        let k = e.members.len();
        for mask in 1u32..(1 << k) {
            buf.clear();
            buf.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| e.members[i] as u32));
            *containing.entry(buf.clone()).or_insert(0) += e.mult;
        }
    }
    h.edges
        .iter()
        .map(|e| {
            let k = e.members.len();
            let mut total: i128 = 0;
            for mask in 1u32..(1 << k) {
                buf.clear();
                buf.extend((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| e.members[i] as u32));
                let n = containing[&buf] as i128;
                total += if mask.count_ones() % 2 == 1 { n } else { -n };
            }
            total as u64
        })
        .collect()
}

/// Intersection counts for every distinct edge.
pub fn intersection_profile(h: &MultiHypergraph) -> IntersectionProfile {
    let max_size = h.edges.iter().map(|e| e.members.len()).max().unwrap_or(0);
    let counts = if h.edges.len() > PAIRWISE_MAX_EDGES && max_size <= INCLUSION_EXCLUSION_MAX_SIZE {
        inclusion_exclusion_profile(h)
    } else {
        pairwise_profile(h)
    };
    IntersectionProfile { counts, total: h.edge_count() }
}

/// Whether every edge meets at least `(1 - δ)·e(H)` edges, decided exactly.
pub fn is_delta_intersecting(h: &MultiHypergraph, delta: &Rational) -> Result<(bool, IntersectionProfile)> {
    if h.edges.is_empty() {
        return Err(Error::input("δ-intersection is undefined for an empty hypergraph"));
    }
    if *delta < Rational::from_integer(0) || *delta > Rational::from_integer(1) {
        return Err(Error::input(format!("δ = {delta} outside [0, 1]")));
    }
    let profile = intersection_profile(h);
    let need = (Rational::from_integer(1) - delta) * Rational::from_integer(profile.total as i128);
    let ok = profile.counts.iter().all(|&c| Rational::from_integer(c as i128) >= need);
    Ok((ok, profile))
}

/// Same vertex set, every distinct edge kept once.
pub fn flatten(h: &MultiHypergraph) -> MultiHypergraph {
    let mut out = h.clone();
    for e in &mut out.edges {
        e.mult = 1;
    }
    out
}

/// Multiplies every multiplicity by `k`.
pub fn duplicate_edges(h: &MultiHypergraph, k: u64) -> Result<MultiHypergraph> {
    if k == 0 {
        return Err(Error::input("duplication factor must be at least 1"));
    }
    let mut out = h.clone();
    for e in &mut out.edges {
        e.mult = e
            .mult
            .checked_mul(k)
            .ok_or_else(|| Error::Size(format!("multiplicity {} times {k} overflows", e.mult)))?;
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    members: Vec<String>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    vertices: Vec<String>,
    parts: Option<Vec<Vec<String>>>,
    edges: Vec<EdgeJson>,
}

impl MultiHypergraph {
    pub fn to_json_value(&self) -> serde_json::Value {
        let name = |v: &usize| self.labels[*v].clone();
        let raw = HypergraphJson {
            vertices: self.labels.clone(),
            parts: self.parts.as_ref().map(|ps| ps.iter().map(|p| p.iter().map(name).collect()).collect()),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson { members: e.members.iter().map(name).collect(), mult: e.mult })
                .collect(),
        };
        serde_json::to_value(raw).expect("hypergraph serializes")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: HypergraphJson = serde_json::from_str(text).map_err(|e| Error::Json {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let ids: HashMap<&str, usize> = raw.vertices.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |l: &str, at: String| {
            ids.get(l).copied().ok_or_else(|| Error::Json { location: at, message: format!("unknown vertex {l:?}") })
        };
        let parts = match &raw.parts {
            None => None,
            Some(ps) => {
                let mut out = Vec::new();
                for (p, part) in ps.iter().enumerate() {
                    let mut ids = Vec::new();
                    for (j, l) in part.iter().enumerate() {
                        ids.push(lookup(l, format!("parts[{p}][{j}]"))?);
                    }
                    out.push(ids);
                }
                Some(out)
            }
        };
        let mut h = MultiHypergraph::new(raw.vertices.clone(), parts)?;
        for (k, e) in raw.edges.iter().enumerate() {
            let mut members = Vec::new();
            for (j, l) in e.members.iter().enumerate() {
                members.push(lookup(l, format!("edges[{k}].members[{j}]"))?);
            }
            h.add_edge(&members, e.mult)
                .map_err(|err| Error::Json { location: format!("edges[{k}]"), message: err.to_string() })?;
        }
        Ok(h)
    }
}

impl Serialize for MultiHypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiHypergraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        MultiHypergraph::from_json_str(&value.to_string()).map_err(serde::de::Error::custom)
    }
}
