//! Tagged certificates and an independent checker for them.

use serde::{Deserialize, Serialize};

use crate::cover::{CyclePartitionCertificate, TreeCoverCertificate};
use crate::dsu::DisjointSets;
use crate::graph::{Colour, ColouredGraph, DegenerateCycle, Vertex};
use crate::kit::{Cherry, ConnectedMatching};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    TreeCover(TreeCoverCertificate),
    CyclePartition(CyclePartitionCertificate),
    /// Disjoint cycles covering `target` (not necessarily all of `V`).
    CycleCover { target: Vec<Vertex>, cycles: Vec<DegenerateCycle> },
    /// Disjoint cherries whose centres are exactly `target`.
    CherryCover { target: Vec<Vertex>, cherries: Vec<Cherry> },
    MatchingCover { matchings: Vec<ConnectedMatching> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Disjointness,
    Subgraph,
    Colour,
    Coverage,
    Acyclic,
    Connected,
    Shape,
    Component,
}

impl ViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            ViolationKind::Disjointness => "disjointness",
            ViolationKind::Subgraph => "subgraph",
            ViolationKind::Colour => "colour",
            ViolationKind::Coverage => "coverage",
            ViolationKind::Acyclic => "acyclic",
            ViolationKind::Connected => "connected",
            ViolationKind::Shape => "shape",
            ViolationKind::Component => "component",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, detail: impl Into<String>) {
        self.violations.push(Violation { kind, detail: detail.into() });
    }
}

struct Checker<'a> {
    g: &'a ColouredGraph,
    report: VerificationReport,
    owner: Vec<Option<usize>>,
}

impl Checker<'_> {
    fn in_range(&mut self, v: Vertex) -> bool {
        if v >= self.g.n() {
            self.report.push(ViolationKind::Shape, format!("vertex {v} out of range for n = {}", self.g.n()));
            return false;
        }
        true
    }

    /// Marks `v` as used by structure `id`; reports a clash.
    fn claim(&mut self, v: Vertex, id: usize) {
        if !self.in_range(v) {
            return;
        }
        match self.owner[v] {
            Some(other) if other != id => {
                self.report.push(ViolationKind::Disjointness, format!("vertex {v} used by structures {other} and {id}"))
            }
            Some(_) => self.report.push(ViolationKind::Shape, format!("vertex {v} repeated in structure {id}")),
            None => self.owner[v] = Some(id),
        }
    }

    /// Checks `{u, v}` is an edge of `g`, of colour `want` when given; returns its colour.
    fn edge(&mut self, u: Vertex, v: Vertex, want: Option<Colour>) -> Option<Colour> {
        if u >= self.g.n() || v >= self.g.n() {
            self.report.push(ViolationKind::Shape, format!("pair {{{u}, {v}}} out of range"));
            return None;
        }
        match (self.g.colour(u, v), want) {
            (None, _) => {
                self.report.push(ViolationKind::Subgraph, format!("pair {{{u}, {v}}} is not an edge"));
                None
            }
            (Some(c), Some(w)) if c != w => {
                self.report.push(ViolationKind::Colour, format!("edge {{{u}, {v}}} has colour {c}, expected {w}"));
                Some(c)
            }
            (Some(c), _) => Some(c),
        }
    }

    fn cycle(&mut self, cycle: &DegenerateCycle, id: usize) {
        for &v in &cycle.vertices {
            self.claim(v, id);
        }
        let expected = DegenerateCycle::new(cycle.vertices.clone(), None).kind;
        if expected != cycle.kind {
            self.report.push(
                ViolationKind::Shape,
                format!("cycle {id} has kind {:?} but {} vertices", cycle.kind, cycle.vertices.len()),
            );
        }
        if cycle.vertices.len() < 2 && cycle.colour.is_some() {
            self.report.push(ViolationKind::Shape, format!("cycle {id} has a colour but no edges"));
        }
        let mut seen = None;
        for (u, v) in cycle.edges() {
            if let Some(c) = self.edge(u, v, cycle.colour) {
                match seen {
                    None => seen = Some(c),
                    Some(s) if s != c => {
                        self.report.push(ViolationKind::Colour, format!("cycle {id} mixes colours {s} and {c}"));
                        seen = Some(c);
                    }
                    _ => {}
                }
            }
        }
    }

    fn coverage(&mut self, target: impl IntoIterator<Item = Vertex>) {
        for v in target {
            if self.in_range(v) && self.owner[v].is_none() {
                self.report.push(ViolationKind::Coverage, format!("vertex {v} is not covered"));
            }
        }
    }
}

fn check_trees(ck: &mut Checker, cert: &TreeCoverCertificate) {
    let g = ck.g;
    let mut covered = vec![false; g.n()];
    for (id, tree) in cert.trees.iter().enumerate() {
        if tree.colour == 0 || tree.colour as usize > g.r() {
            ck.report.push(ViolationKind::Colour, format!("tree {id} has colour {} outside 1..={}", tree.colour, g.r()));
            continue;
        }
        let mut vs = tree.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != tree.vertices.len() {
            ck.report.push(ViolationKind::Shape, format!("tree {id} repeats a vertex"));
        }
        if vs.iter().any(|&v| !ck.in_range(v)) {
            continue;
        }
        let mut dsu = DisjointSets::new(g.n());
        let mut acyclic = true;
        for &(u, v) in &tree.edges {
            ck.edge(u, v, Some(tree.colour));
            if u >= g.n() || v >= g.n() {
                continue;
            }
            if vs.binary_search(&u).is_err() || vs.binary_search(&v).is_err() {
                ck.report.push(ViolationKind::Shape, format!("tree {id} edge {{{u}, {v}}} leaves its vertex list"));
                continue;
            }
            if !dsu.union(u, v) {
                acyclic = false;
            }
        }
        if !acyclic {
            ck.report.push(ViolationKind::Acyclic, format!("tree {id} contains a cycle"));
        }
        if let Some(&first) = vs.first() {
            let root = dsu.find(first);
            if vs.iter().any(|&v| dsu.find(v) != root) {
                ck.report.push(ViolationKind::Connected, format!("tree {id} is disconnected"));
            }
            let labels = g.colour_labels(tree.colour);
            let comp: Vec<Vertex> = (0..g.n()).filter(|&v| labels[v] == labels[first]).collect();
            if comp != vs || labels[first] != tree.component {
                ck.report.push(
                    ViolationKind::Component,
                    format!("tree {id} does not span colour-{} component {}", tree.colour, tree.component),
                );
            }
            if vs.binary_search(&tree.root).is_err() {
                ck.report.push(ViolationKind::Shape, format!("tree {id} root {} is not a tree vertex", tree.root));
            }
        }
        for v in vs {
            covered[v] = true;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| !covered[v]) {
        ck.report.push(ViolationKind::Coverage, format!("vertex {v} is in no tree"));
    }
    let mut listed = cert.covered.clone();
    listed.sort_unstable();
    listed.dedup();
    let actual: Vec<Vertex> = (0..g.n()).filter(|&v| covered[v]).collect();
    if listed != actual {
        ck.report.push(ViolationKind::Coverage, "covered list differs from the union of tree vertices");
    }
}

fn check_cherries(ck: &mut Checker, target: &[Vertex], cherries: &[Cherry]) {
    let mut is_target = vec![false; ck.g.n()];
    for &v in target {
        if ck.in_range(v) {
            is_target[v] = true;
        }
    }
    for (id, ch) in cherries.iter().enumerate() {
        for v in [ch.centre, ch.leaves[0], ch.leaves[1]] {
            ck.claim(v, id);
        }
        for leaf in ch.leaves {
            ck.edge(ch.centre, leaf, Some(ch.colour));
        }
        if ch.centre < ck.g.n() && !is_target[ch.centre] {
            ck.report.push(ViolationKind::Shape, format!("cherry {id} centre {} is outside the target set", ch.centre));
        }
    }
    let mut centre = vec![false; ck.g.n()];
    for ch in cherries {
        if ch.centre < ck.g.n() {
            centre[ch.centre] = true;
        }
    }
    for &v in target {
        if v < ck.g.n() && !centre[v] {
            ck.report.push(ViolationKind::Coverage, format!("target vertex {v} is not a cherry centre"));
        }
    }
}

fn check_matchings(ck: &mut Checker, matchings: &[ConnectedMatching]) {
    let g = ck.g;
    for (id, m) in matchings.iter().enumerate() {
        if m.colour == 0 || m.colour as usize > g.r() {
            ck.report.push(ViolationKind::Colour, format!("matching {id} has colour {} outside 1..={}", m.colour, g.r()));
            continue;
        }
        let labels = g.colour_labels(m.colour);
        for &(u, v) in &m.edges {
            ck.claim(u, id);
            ck.claim(v, id);
            if ck.edge(u, v, Some(m.colour)) == Some(m.colour) && labels[u] != m.component {
                ck.report.push(
                    ViolationKind::Component,
                    format!("matching {id} edge {{{u}, {v}}} lies outside colour-{} component {}", m.colour, m.component),
                );
            }
        }
    }
}

/// Re-checks every structural claim of `cert` against `g`.
pub fn verify_certificate(g: &ColouredGraph, cert: &Certificate) -> VerificationReport {
    let mut ck = Checker { g, report: VerificationReport::default(), owner: vec![None; g.n()] };
    match cert {
        Certificate::TreeCover(t) => check_trees(&mut ck, t),
        Certificate::CyclePartition(p) => {
            for (id, c) in p.cycles.iter().enumerate() {
                ck.cycle(c, id);
            }
            ck.coverage(0..g.n());
        }
        Certificate::CycleCover { target, cycles } => {
            for (id, c) in cycles.iter().enumerate() {
                ck.cycle(c, id);
            }
            ck.coverage(target.iter().copied());
        }
        Certificate::CherryCover { target, cherries } => check_cherries(&mut ck, target, cherries),
        Certificate::MatchingCover { matchings } => check_matchings(&mut ck, matchings),
    }
    ck.report
}
