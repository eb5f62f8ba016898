use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Outcome};
use crate::cycles::{check_classes, contracted_graph};
use crate::error::{Error, Result};
use crate::graph::{Colour, ColourSet, ColouredGraph, Vertex};
use crate::rational::{self, at_least, int, ratio, serde_rational, Rational};
use crate::simple::SimpleGraph;

/// Graphs up to this size are checked over every vertex subset.
pub const MAX_EXHAUSTIVE_EXPANDER: usize = 22;

/// Random subsets tried beyond the exhaustive range.
const EXPANDER_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpanderParams {
    #[serde(with = "serde_rational")]
    pub eps: Rational,
    #[serde(with = "serde_rational")]
    pub t: Rational,
}

impl ExpanderParams {
    pub fn new(eps: Rational, t: Rational) -> Result<Self> {
        if eps <= int(0) || t <= int(0) {
            return Err(Error::input("expander parameters eps and t must be positive"));
        }
        Ok(ExpanderParams { eps, t })
    }

    /// `ρ(x) = ε / ln²(15x/t)` in floating point, for display only.
    pub fn rho(&self, x: f64) -> f64 {
        let l = (15.0 * x / rational::to_f64(&self.t)).ln();
        rational::to_f64(&self.eps) / (l * l)
    }

    /// Smallest sets that must expand.
    pub fn min_size(&self) -> usize {
        rational::ceil(&(self.t / int(2))).max(1) as usize
    }

    /// Least integer `b` with `b ≥ ρ(k)·k`, decided exactly.
    pub fn required_boundary(&self, k: usize) -> usize {
        let q = int(15 * k as i128) / self.t;
        let rhs = self.eps * int(k as i128);
        let l = rational::to_f64(&q).ln();
        let mut b = ((rational::to_f64(&rhs) / (l * l)).floor() as i64 - 1).max(0) as usize;
        while !rational::log_squared_at_least(&int(b as i128), &q, &rhs) {
            b += 1;
        }
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum ExpanderVerdict {
    Expander,
    Violated { witness: Vec<Vertex>, boundary: usize, required: usize },
    /// Too large for the exhaustive check and no violating set was sampled.
    Unknown { samples: usize },
}

impl ExpanderVerdict {
    pub fn is_expander(&self) -> bool {
        matches!(self, ExpanderVerdict::Expander)
    }
}

fn boundary_of(g: &SimpleGraph, set: &[Vertex], mark: &mut [u32], stamp: u32) -> usize {
    for &v in set {
        mark[v] = stamp;
    }
    let mut count = 0;
    for &v in set {
        for &w in g.neighbours(v) {
            if mark[w] != stamp && mark[w] != stamp + 1 {
                mark[w] = stamp + 1;
                count += 1;
            }
        }
    }
    count
}

/// Decides whether `g` is an `(ε, t)`-expander.
///
/// Exhaustive up to [`MAX_EXHAUSTIVE_EXPANDER`] vertices; above that a
/// seeded search over connected pieces, BFS balls and random sets either
/// finds a violating set or reports unknown.
pub fn is_expander(g: &SimpleGraph, params: &ExpanderParams) -> ExpanderVerdict {
    let n = g.n();
    let lo = params.min_size();
    let hi = n / 2;
    if lo > hi {
        return ExpanderVerdict::Expander;
    }
    let required: Vec<usize> = (0..=hi).map(|k| if k < lo { 0 } else { params.required_boundary(k) }).collect();
    if n <= MAX_EXHAUSTIVE_EXPANDER {
        let adj: Vec<u32> = (0..n).map(|v| g.neighbours(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
        for mask in 1u32..1 << n {
            let k = mask.count_ones() as usize;
            if k < lo || k > hi {
                continue;
            }
            let mut reach = 0u32;
            let mut rest = mask;
            while rest != 0 {
                reach |= adj[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            let boundary = (reach & !mask).count_ones() as usize;
            if boundary < required[k] {
                let witness = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                return ExpanderVerdict::Violated { witness, boundary, required: required[k] };
            }
        }
        return ExpanderVerdict::Expander;
    }

    let mut mark = vec![0u32; n];
    let mut stamp = 0u32;
    let mut check = |set: &[Vertex]| -> Option<ExpanderVerdict> {
        let k = set.len();
        if k < lo || k > hi {
            return None;
        }
        stamp += 2;
        let boundary = boundary_of(g, set, &mut mark, stamp);
        (boundary < required[k]).then(|| {
            let mut witness = set.to_vec();
            witness.sort_unstable();
            ExpanderVerdict::Violated { witness, boundary, required: required[k] }
        })
    };
    let mut samples = 0;
    // every prefix of a BFS order from each vertex
    for s in 0..n {
        let mut seen = vec![false; n];
        let mut order = vec![s];
        seen[s] = true;
        let mut head = 0;
        while head < order.len() && order.len() < hi {
            let v = order[head];
            head += 1;
            for &w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        for k in lo..=order.len().min(hi) {
            samples += 1;
            if let Some(v) = check(&order[..k]) {
                return v;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut all: Vec<Vertex> = (0..n).collect();
    for _ in 0..EXPANDER_SAMPLES {
        let k = rng.random_range(lo..=hi);
        all.shuffle(&mut rng);
        samples += 1;
        if let Some(v) = check(&all[..k]) {
            return v;
        }
    }
    ExpanderVerdict::Unknown { samples }
}

/// The parameter block `(r, t, m, ε)` shared by hubs and linked families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HubParams {
    pub r: usize,
    pub t: usize,
    pub m: usize,
    #[serde(with = "serde_rational")]
    pub eps: Rational,
}

impl HubParams {
    pub fn new(r: usize, t: usize, m: usize, eps: Rational) -> Result<Self> {
        if r == 0 || t == 0 || m == 0 || eps <= int(0) {
            return Err(Error::input("hub parameters need r, t, m ≥ 1 and eps > 0"));
        }
        Ok(HubParams { r, t, m, eps })
    }

    /// `m/(10r)`, the colour-degree threshold into a core.
    fn link_threshold(&self) -> Rational {
        ratio(self.m as i128, 10 * self.r as i128)
    }
}

/// A triple `(C, S, T)`: `routing[i]` is the routing set of `colours[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectingHub {
    pub colours: Vec<Colour>,
    pub core: Vec<Vertex>,
    pub routing: Vec<Vec<Vertex>>,
}

impl ConnectingHub {
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.core.iter().chain(self.routing.iter().flatten()).copied().collect();
        vs.sort_unstable();
        vs
    }

    pub fn routing_set(&self, c: Colour) -> Option<&[Vertex]> {
        self.colours.iter().position(|&d| d == c).and_then(|i| self.routing.get(i)).map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkedHubFamily {
    pub hubs: Vec<ConnectingHub>,
}

/// A hub or family together with the bipartition and the covered set `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HubDocument {
    pub params: HubParams,
    pub a: Vec<Vertex>,
    pub b: Vec<Vertex>,
    pub x: Vec<Vertex>,
    pub hubs: Vec<ConnectingHub>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HubViolationKind {
    Shape,
    ColourSetRange,
    CoreSize,
    CoreOutsideB,
    RoutingSetSize,
    RoutingOutside,
    RoutingOverlap,
    Expansion,
    CoreDegree,
    Dichotomy,
    HubOverlap,
    LinkSetSize,
}

impl HubViolationKind {
    pub fn label(self) -> &'static str {
        match self {
            HubViolationKind::Shape => "shape",
            HubViolationKind::ColourSetRange => "colour set",
            HubViolationKind::CoreSize => "core size",
            HubViolationKind::CoreOutsideB => "core outside B",
            HubViolationKind::RoutingSetSize => "routing set size",
            HubViolationKind::RoutingOutside => "routing outside A∖X",
            HubViolationKind::RoutingOverlap => "routing overlap",
            HubViolationKind::Expansion => "H1 expansion",
            HubViolationKind::CoreDegree => "H2 degree",
            HubViolationKind::Dichotomy => "H3 degree",
            HubViolationKind::HubOverlap => "hub overlap",
            HubViolationKind::LinkSetSize => "link set size",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HubViolation {
    pub kind: HubViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HubReport {
    pub violations: Vec<HubViolation>,
    /// Expansion checks that could not be decided (routing set too large).
    pub undecided: Vec<String>,
}

impl HubReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.undecided.is_empty()
    }

    pub fn has(&self, kind: HubViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: HubViolationKind, detail: String) {
        self.violations.push(HubViolation { kind, detail });
    }

    fn absorb(&mut self, prefix: &str, other: HubReport) {
        for v in other.violations {
            self.push(v.kind, format!("{prefix}{}", v.detail));
        }
        self.undecided.extend(other.undecided.into_iter().map(|d| format!("{prefix}{d}")));
    }
}

fn membership(n: usize, set: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

fn check_vertices(g: &ColouredGraph, what: &str, set: &[Vertex]) -> Result<()> {
    match set.iter().find(|&&v| v >= g.n()) {
        Some(v) => Err(Error::input(format!("{what} vertex {v} out of range (n = {})", g.n()))),
        None => Ok(()),
    }
}

fn has_duplicates(set: &[Vertex]) -> bool {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.windows(2).any(|w| w[0] == w[1])
}

/// Checks one hub for `X` in `G[A, B]` against every size, disjointness and H1–H3 condition.
pub fn verify_hub(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    x: &[Vertex],
    hub: &ConnectingHub,
    params: &HubParams,
) -> Result<HubReport> {
    use HubViolationKind::*;
    check_classes(g, a, b)?;
    check_vertices(g, "X", x)?;
    check_vertices(g, "core", &hub.core)?;
    for t in &hub.routing {
        check_vertices(g, "routing", t)?;
    }
    let n = g.n();
    let (in_a, in_b, in_x) = (membership(n, a), membership(n, b), membership(n, x));
    let mut report = HubReport::default();
    if let Some(&v) = x.iter().find(|&&v| !in_a[v]) {
        return Err(Error::input(format!("X vertex {v} is not in A")));
    }
    if hub.routing.len() != hub.colours.len() {
        report.push(Shape, format!("{} colours but {} routing sets", hub.colours.len(), hub.routing.len()));
    }
    let mut seen = ColourSet::EMPTY;
    for &c in &hub.colours {
        if c == 0 || c as usize > params.r || seen.contains(c) {
            report.push(ColourSetRange, format!("colour {c} is repeated or outside 1..={}", params.r));
        } else {
            seen.insert(c);
        }
    }
    if hub.core.len() != params.m || has_duplicates(&hub.core) {
        report.push(CoreSize, format!("core has {} entries, expected {} distinct", hub.core.len(), params.m));
    }
    for &v in &hub.core {
        if !in_b[v] {
            report.push(CoreOutsideB, format!("core vertex {v} is not in B"));
        }
    }
    let cap = 80 * params.r * params.t;
    let mut owner = vec![None; n];
    let mut valid = vec![true; hub.routing.len()];
    for (i, t) in hub.routing.iter().enumerate() {
        let c = hub.colours.get(i).copied().unwrap_or(0);
        if t.len() < params.t || t.len() > cap || has_duplicates(t) {
            report.push(RoutingSetSize, format!("T_{c} has {} entries, allowed {}..={cap}", t.len(), params.t));
        }
        for &v in t {
            if !in_a[v] || in_x[v] {
                report.push(RoutingOutside, format!("vertex {v} of T_{c}"));
                valid[i] = false;
            }
            match owner[v] {
                Some(j) if j != i => {
                    report.push(RoutingOverlap, format!("vertex {v} lies in T_{c} and another routing set"));
                }
                _ => owner[v] = Some(i),
            }
        }
    }
    let core_ok = hub.core.iter().all(|&v| in_b[v]);
    for (i, (&c, t)) in hub.colours.iter().zip(&hub.routing).enumerate() {
        if c == 0 || c as usize > params.r || !valid[i] || has_duplicates(t) {
            continue;
        }
        // H1
        let contracted = contracted_graph(g, t, b, &int(params.m as i128), &[c])?;
        let ep = ExpanderParams { eps: params.eps, t: int(1) };
        match is_expander(&contracted.graph, &ep) {
            ExpanderVerdict::Expander => {}
            ExpanderVerdict::Violated { witness, boundary, required } => {
                let set: Vec<Vertex> = witness.iter().map(|&j| t[j]).collect();
                report.push(Expansion, format!("colour {c}: set {set:?} has boundary {boundary} < {required}"));
            }
            ExpanderVerdict::Unknown { samples } => {
                report.undecided.push(format!("colour {c}: |T_c| = {} too large, {samples} sets sampled", t.len()));
            }
        }
        // H2
        if core_ok {
            let in_t = membership(n, t);
            let threshold = ratio(t.len() as i128, 20 * params.r as i128);
            for &v in &hub.core {
                let d = g.degree_into(v, ColourSet::single(c), &in_t);
                if !at_least(d, &threshold) {
                    report.push(
                        CoreDegree,
                        format!("vertex {v}, colour {c}: degree {d} < {}", rational::format_rational(&threshold)),
                    );
                }
            }
        }
    }
    // H3
    let in_s = membership(n, &hub.core);
    let s = hub.core.len();
    let threshold = ratio(s as i128, 10 * params.r as i128);
    let all = ColourSet::all(g.r());
    for &v in x {
        let d = g.degree_into(v, all, &in_s);
        if 2 * d <= s {
            continue;
        }
        let rich = hub.colours.iter().any(|&c| {
            c >= 1 && c as usize <= g.r() && at_least(g.degree_into(v, ColourSet::single(c), &in_s), &threshold)
        });
        if !rich {
            report.push(Dichotomy, format!("vertex {v}: deg(v, S) = {d} > {s}/2 with no rich colour"));
        }
    }
    Ok(report)
}

/// `L_c(i, j)`: vertices of `X` with colour-`c` degree at least `m/(10r)` into both cores.
pub fn c_links(
    g: &ColouredGraph,
    x: &[Vertex],
    family: &LinkedHubFamily,
    i: usize,
    j: usize,
    c: Colour,
    params: &HubParams,
) -> Result<Vec<Vertex>> {
    if i == j {
        return Err(Error::input("c-links need two distinct hubs"));
    }
    let len = family.hubs.len();
    let (Some(hi), Some(hj)) = (family.hubs.get(i), family.hubs.get(j)) else {
        return Err(Error::input(format!("hub index out of range (family has {len})")));
    };
    if c == 0 || c as usize > g.r() {
        return Err(Error::input(format!("colour {c} outside 1..={}", g.r())));
    }
    check_vertices(g, "X", x)?;
    check_vertices(g, "core", &hi.core)?;
    check_vertices(g, "core", &hj.core)?;
    let (si, sj) = (membership(g.n(), &hi.core), membership(g.n(), &hj.core));
    let threshold = params.link_threshold();
    let one = ColourSet::single(c);
    let mut out: Vec<Vertex> = x
        .iter()
        .copied()
        .filter(|&v| at_least(g.degree_into(v, one, &si), &threshold) && at_least(g.degree_into(v, one, &sj), &threshold))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Checks every hub, pairwise vertex-disjointness and the link-set sizes.
pub fn verify_linked_family(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    x: &[Vertex],
    family: &LinkedHubFamily,
    params: &HubParams,
) -> Result<HubReport> {
    let mut report = HubReport::default();
    for (i, hub) in family.hubs.iter().enumerate() {
        let r = verify_hub(g, a, b, x, hub, params)?;
        report.absorb(&format!("hub {i}: "), r);
    }
    let mut owner = vec![None; g.n()];
    for (i, hub) in family.hubs.iter().enumerate() {
        let mut vs = hub.vertices();
        vs.dedup();
        for v in vs {
            match owner[v] {
                Some(j) => report.push(HubViolationKind::HubOverlap, format!("vertex {v} lies in hubs {j} and {i}")),
                None => owner[v] = Some(i),
            }
        }
    }
    for i in 0..family.hubs.len() {
        for j in i + 1..family.hubs.len() {
            for c in 1..=params.r.min(g.r()) as Colour {
                let links = c_links(g, x, family, i, j, c, params)?;
                if !links.is_empty() && links.len() < params.t {
                    report.push(
                        HubViolationKind::LinkSetSize,
                        format!("L_{c}({i}, {j}) has {} vertices, need 0 or ≥ {}", links.len(), params.t),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// `R(X, F)` on local ids: `X` first, then the cores in family order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplifiedGraph {
    /// Original vertex behind each local id.
    pub vertices: Vec<Vertex>,
    pub x_len: usize,
    pub graph: ColouredGraph,
}

/// Builds the simplified graph; colour ties pick the least qualifying colour.
pub fn simplified_graph(
    g: &ColouredGraph,
    x: &[Vertex],
    family: &LinkedHubFamily,
    params: &HubParams,
) -> Result<SimplifiedGraph> {
    check_vertices(g, "X", x)?;
    let mut vertices = x.to_vec();
    let mut ranges = Vec::new();
    for hub in &family.hubs {
        check_vertices(g, "core", &hub.core)?;
        let start = vertices.len();
        vertices.extend_from_slice(&hub.core);
        ranges.push(start..vertices.len());
    }
    if has_duplicates(&vertices) {
        return Err(Error::input("X and the cores must be pairwise disjoint"));
    }
    let r = g.r();
    let mut out = ColouredGraph::new(vertices.len(), r + 1)?;
    let cores = x.len()..vertices.len();
    for u in cores.clone() {
        for v in u + 1..cores.end {
            out.add_edge(u, v, (r + 1) as Colour)?;
        }
    }
    let threshold = params.link_threshold();
    let all = ColourSet::all(r);
    for (i, hub) in family.hubs.iter().enumerate() {
        let in_s = membership(g.n(), &hub.core);
        let mut colours = hub.colours.clone();
        colours.sort_unstable();
        for (lx, &v) in x.iter().enumerate() {
            let d = g.degree_into(v, all, &in_s);
            if 2 * d <= params.m {
                continue;
            }
            let c = colours
                .iter()
                .copied()
                .filter(|&c| c >= 1 && c as usize <= r)
                .find(|&c| at_least(g.degree_into(v, ColourSet::single(c), &in_s), &threshold))
                .ok_or_else(|| {
                    Error::Precondition(format!("vertex {v} has deg {d} > m/2 into core {i} but no rich colour"))
                })?;
            for ls in ranges[i].clone() {
                out.add_edge(lx, ls, c)?;
            }
        }
    }
    Ok(SimplifiedGraph { vertices, x_len: x.len(), graph: out })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundHub {
    pub hub: ConnectingHub,
    /// The set `X′ ⊆ A` the hub serves.
    pub covered: Vec<Vertex>,
    /// `|A ∖ X′|`.
    pub excluded: usize,
    pub report: HubReport,
}

/// Greedy hub search: colours are added one at a time while a routing set
/// with an expanding contracted graph and a large enough core pool exists.
///
/// The returned hub always passes [`verify_hub`]; no size guarantee is made.
pub fn hub_search_heuristic(
    g: &ColouredGraph,
    a: &[Vertex],
    b: &[Vertex],
    params: &HubParams,
    budget: &Budget,
) -> Result<Outcome<Option<FoundHub>>> {
    check_classes(g, a, b)?;
    if b.len() < params.m {
        return Ok(Outcome::Solved(None));
    }
    let n = g.n();
    let cap = (80 * params.r * params.t).min(MAX_EXHAUSTIVE_EXPANDER);
    let mut pool: Vec<Vertex> = b.to_vec();
    pool.sort_unstable();
    let mut used = vec![false; n];
    let mut colours = Vec::new();
    let mut routing: Vec<Vec<Vertex>> = Vec::new();
    for c in 1..=params.r.min(g.r()) as Colour {
        if !budget.charge() {
            return Ok(Outcome::Unknown { nodes: budget.used() });
        }
        let in_pool = membership(n, &pool);
        let one = ColourSet::single(c);
        let mut ranked: Vec<(usize, Vertex)> = a
            .iter()
            .filter(|&&v| !used[v])
            .map(|&v| (g.degree_into(v, one, &in_pool), v))
            .filter(|&(d, _)| d > 0)
            .collect();
        ranked.sort_by(|p, q| q.0.cmp(&p.0).then(p.1.cmp(&q.1)));
        for k in params.t..=cap.min(ranked.len()) {
            if !budget.charge() {
                return Ok(Outcome::Unknown { nodes: budget.used() });
            }
            let t: Vec<Vertex> = ranked[..k].iter().map(|&(_, v)| v).collect();
            let in_t = membership(n, &t);
            let threshold = ratio(k as i128, 20 * params.r as i128);
            let next: Vec<Vertex> =
                pool.iter().copied().filter(|&u| at_least(g.degree_into(u, one, &in_t), &threshold)).collect();
            if next.len() < params.m {
                continue;
            }
            let contracted = contracted_graph(g, &t, b, &int(params.m as i128), &[c])?;
            let ep = ExpanderParams { eps: params.eps, t: int(1) };
            if !budget.charge_many(1 << k.min(20)) {
                return Ok(Outcome::Unknown { nodes: budget.used() });
            }
            if is_expander(&contracted.graph, &ep).is_expander() {
                for &v in &t {
                    used[v] = true;
                }
                colours.push(c);
                routing.push(t);
                pool = next;
                break;
            }
        }
    }
    let core: Vec<Vertex> = pool[..params.m].to_vec();
    let hub = ConnectingHub { colours, core, routing };
    let in_s = membership(n, &hub.core);
    let threshold = params.link_threshold();
    let all = ColourSet::all(g.r());
    let covered: Vec<Vertex> = a
        .iter()
        .copied()
        .filter(|&v| !used[v])
        .filter(|&v| {
            2 * g.degree_into(v, all, &in_s) <= params.m
                || hub.colours.iter().any(|&c| at_least(g.degree_into(v, ColourSet::single(c), &in_s), &threshold))
        })
        .collect();
    let report = verify_hub(g, a, b, &covered, &hub, params)?;
    if !report.is_ok() {
        return Ok(Outcome::Solved(None));
    }
    let excluded = a.len() - covered.len();
    Ok(Outcome::Solved(Some(FoundHub { hub, covered, excluded, report })))
}
