//! Lower-bound objects: `H_{r,t,m}`, the reduction from partite hypergraphs
//! to coloured graphs, and the star and blow-up instance families.

use serde::{Deserialize, Serialize};

use crate::cover::DeltaValue;
use crate::error::{Error, Result};
use crate::graph::{blow_up, Colour, ColouredGraph, IntraColourRule, Vertex};
use crate::hamilton::hamiltonian_path;
use crate::hypergraph::{is_delta_intersecting, MultiHypergraph};
use crate::rational::{self, Rational};

/// Largest `H_{r,t,m}` the builder will materialise, in edges.
pub const MAX_HRTM_EDGES: u64 = 500_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrtmSpec {
    pub r: usize,
    pub t: usize,
    pub m: usize,
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k.min(n));
    (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

impl HrtmSpec {
    pub fn new(r: usize, t: usize, m: usize) -> Result<Self> {
        if r < 2 || t == 0 || t >= r || m == 0 {
            return Err(Error::input(format!("H_(r,t,m) needs r ≥ 2, 1 ≤ t < r, m ≥ 1; got ({r}, {t}, {m})")));
        }
        Ok(HrtmSpec { r, t, m })
    }

    /// `C(r, r−t) · m^{r−t}`, or `None` on overflow.
    pub fn edge_count(&self) -> Option<u64> {
        let choose = binomial(self.r as u64, (self.r - self.t) as u64)?;
        choose.checked_mul((self.m as u64).checked_pow((self.r - self.t) as u32)?)
    }

    /// `r·m + t·e(H)`.
    pub fn vertex_count(&self) -> Option<u64> {
        let e = self.edge_count()?;
        ((self.r * self.m) as u64).checked_add((self.t as u64).checked_mul(e)?)
    }

    /// `(t + 1) m`.
    pub fn transversal_number(&self) -> usize {
        (self.t + 1) * self.m
    }

    /// `t = ⌊r/3⌋` and `m = ⌊r / (5 ln(1/δ))⌋`.
    pub fn intersecting_parameters(r: usize, delta: &DeltaValue) -> (usize, usize) {
        let m = delta.floor_over_log(&rational::ratio(r as i128, 5)).max(0) as usize;
        (r / 3, m)
    }
}

/// Builds `H_{r,t,m}`. Important vertices are labelled `U{part}:{j}` and the
/// private vertices of edge `e` are labelled `P{e}:{part}`, parts from 1.
pub fn build_hrtm(spec: &HrtmSpec) -> Result<MultiHypergraph> {
    let HrtmSpec { r, t, m } = *spec;
    let edges = spec.edge_count().filter(|&e| e <= MAX_HRTM_EDGES).ok_or_else(|| {
        Error::Size(format!(
            "H_({r},{t},{m}) has {} edges and {} vertices; limit is {MAX_HRTM_EDGES} edges",
            spec.edge_count().map_or("too many".into(), |e| e.to_string()),
            spec.vertex_count().map_or("too many".into(), |v| v.to_string()),
        ))
    })? as usize;
    let mut labels = Vec::with_capacity(r * m + t * edges);
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); r];
    for (p, part) in parts.iter_mut().enumerate() {
        for j in 0..m {
            part.push(labels.len());
            labels.push(format!("U{}:{j}", p + 1));
        }
    }
    let mut edge_lists = Vec::with_capacity(edges);
    let k = r - t;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut choice = vec![0usize; k];
        loop {
            let mut members: Vec<usize> = subset.iter().zip(&choice).map(|(&p, &j)| p * m + j).collect();
            let e = edge_lists.len();
            for p in (0..r).filter(|p| !subset.contains(p)) {
                parts[p].push(labels.len());
                members.push(labels.len());
                labels.push(format!("P{e}:{}", p + 1));
            }
            edge_lists.push(members);
            // next tuple of important vertices, last coordinate fastest
            let Some(pos) = (0..k).rev().find(|&i| choice[i] + 1 < m) else { break };
            choice[pos] += 1;
            choice[pos + 1..].iter_mut().for_each(|c| *c = 0);
        }
        // next k-subset of parts in lexicographic order
        let Some(pos) = (0..k).rev().find(|&i| subset[i] < r - k + i) else { break };
        subset[pos] += 1;
        for i in pos + 1..k {
            subset[i] = subset[i - 1] + 1;
        }
    }
    let mut h = MultiHypergraph::new(labels, Some(parts))?;
    for members in edge_lists {
        h.add_edge(&members, 1)?;
    }
    Ok(h)
}

/// Whether `H_{r,t,m}` is δ-intersecting.
pub fn check_hrtm_delta(spec: &HrtmSpec, delta: &Rational) -> Result<bool> {
    let h = build_hrtm(spec)?;
    Ok(is_delta_intersecting(&h, delta)?.0)
}

/// What the reduction did: the colour-by-colour linear forests and the fill-in edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Copies of every edge.
    pub duplication: u64,
    /// `forests[i]` lists the colour-`(i+1)` paths, one per vertex of part `i`.
    pub forests: Vec<Vec<Vec<Vertex>>>,
    pub fill_in: Vec<(Vertex, Vertex, Colour)>,
    /// Distinct hyperedge (of the input) carried by each graph vertex.
    pub vertex_edge: Vec<usize>,
    /// `max_degree_after[i]` is `Δ(G^{i+1})` after laying forest `i`.
    pub max_degree_after: Vec<usize>,
    pub min_degree: usize,
}

/// Turns an `r`-partite `r`-uniform hypergraph into an `r`-coloured graph
/// whose connectivity hypergraph is `H` with every edge copied `4r` times.
pub fn hypergraph_to_graph(h: &MultiHypergraph) -> Result<(ColouredGraph, ReductionTrace)> {
    let parts = h.parts().ok_or_else(|| Error::Precondition("hypergraph has no partition".into()))?;
    let r = parts.len();
    if r < 1 || h.distinct_edge_count() == 0 {
        return Err(Error::Precondition("reduction needs a non-empty partite hypergraph".into()));
    }
    let dup = 4 * r as u64;
    // W: one vertex per edge copy, grouped by distinct edge
    let mut vertex_edge = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        for _ in 0..e.mult * dup {
            vertex_edge.push(i);
        }
    }
    let n = vertex_edge.len();
    // member of W's edge in part p
    let in_part = |w: Vertex, p: usize| -> usize {
        *h.edges()[vertex_edge[w]].members.iter().find(|&&v| h.part_of(v) == Some(p)).expect("partite edge")
    };
    let mut g = ColouredGraph::new(n, r)?;
    let mut forests = Vec::with_capacity(r);
    let mut max_degree_after = Vec::with_capacity(r);
    for p in 0..r {
        let colour = (p + 1) as Colour;
        let mut blocks: Vec<Vec<Vertex>> = vec![Vec::new(); h.vertex_count()];
        for w in 0..n {
            blocks[in_part(w, p)].push(w);
        }
        let mut forest = Vec::new();
        for block in blocks.into_iter().filter(|b| !b.is_empty()) {
            let order = hamiltonian_path(block.len(), |a, b| a != b && !g.has_edge(block[a], block[b]))
                .ok_or_else(|| {
                    Error::Internal(format!("no Hamiltonian path in a block of size {} for colour {colour}", block.len()))
                })?;
            let path: Vec<Vertex> = order.iter().map(|&i| block[i]).collect();
            for pair in path.windows(2) {
                g.add_edge(pair[0], pair[1], colour)?;
            }
            forest.push(path);
        }
        forests.push(forest);
        max_degree_after.push((0..n).map(|v| g.degree(v)).max().unwrap_or(0));
    }
    let mut fill_in = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if g.has_edge(x, y) {
                continue;
            }
            if let Some(p) = (0..r).find(|&p| in_part(x, p) == in_part(y, p)) {
                let c = (p + 1) as Colour;
                g.add_edge(x, y, c)?;
                fill_in.push((x, y, c));
            }
        }
    }
    check_reduction(h, &g, &vertex_edge)?;
    let min_degree = g.min_degree();
    Ok((g, ReductionTrace { duplication: dup, forests, fill_in, vertex_edge, max_degree_after, min_degree }))
}

/// Each colour-`c` component must be exactly the copies meeting one vertex of part `c`.
fn check_reduction(h: &MultiHypergraph, g: &ColouredGraph, vertex_edge: &[usize]) -> Result<()> {
    for p in 0..g.r() {
        let labels = g.colour_labels((p + 1) as Colour);
        let mut component_of_vertex = std::collections::HashMap::new();
        for (w, &l) in labels.iter().enumerate() {
            let e = &h.edges()[vertex_edge[w]];
            let v = *e.members.iter().find(|&&v| h.part_of(v) == Some(p)).expect("partite edge");
            if let Some(prev) = component_of_vertex.insert(v, l) {
                if prev != l {
                    return Err(Error::Internal(format!("colour {} splits the copies of {}", p + 1, h.label_of(v))));
                }
            }
        }
        let distinct: std::collections::HashSet<_> = component_of_vertex.values().collect();
        if distinct.len() != component_of_vertex.len() {
            return Err(Error::Internal(format!("colour {} merges two hypergraph vertices", p + 1)));
        }
    }
    Ok(())
}

/// Which construction a lower-bound instance came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `r` independent vertices, each complete to a clique in its own colour.
    Star,
    /// A perfect matching hypergraph, reduced and blown up (`r = 2`).
    Matching,
    /// `H_{r,⌊r/3⌋,m}` at `δ²`, reduced and blown up (`r ≥ 3`).
    Hypergraph,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LowerBoundInstance {
    pub graph: ColouredGraph,
    pub branch: Branch,
    /// The hypergraph fed to the reduction (blow-up branches only).
    pub source: Option<MultiHypergraph>,
    /// The reduced graph before blowing up.
    pub base: Option<ColouredGraph>,
    pub blob: usize,
    pub hrtm: Option<HrtmSpec>,
    /// `τ` of the source, known in closed form.
    pub expected_tc: usize,
}

/// The star instance on `n` vertices: vertices `0..r` are independent and
/// vertex `i` is complete to `r..n` in colour `i + 1`.
pub fn star_instance(r: usize, n: usize, rule: IntraColourRule) -> Result<ColouredGraph> {
    if r < 1 || n <= r {
        return Err(Error::Size(format!("star instance needs n > r, got n = {n}, r = {r}")));
    }
    let mut edges = Vec::new();
    for i in 0..r {
        for v in r..n {
            edges.push((i, v, (i + 1) as Colour));
        }
    }
    let core = blow_up(&ColouredGraph::new(1, r)?, n - r, rule)?;
    edges.extend(core.edges().into_iter().map(|(u, v, c)| (u + r, v + r, c)));
    ColouredGraph::from_edges(n, r, edges)
}

/// Exact check of `δ(G) ≥ (1−δ)|V(G)|`.
pub fn meets_degree_condition(g: &ColouredGraph, delta: &DeltaValue) -> bool {
    let n = g.n() as i128;
    if n == 0 {
        return true;
    }
    // δ(G) ≥ (1−δ)n  iff  δ ≥ 1 − δ(G)/n
    delta.at_least(&(rational::int(1) - Rational::new(g.min_degree() as i128, n)))
}

/// The case split of the lower-bound construction.
pub fn select_branch(r: usize, delta: &DeltaValue) -> Branch {
    // δ ≤ e^{−r/60} iff ln(1/δ) ≥ r/60
    let star = match delta {
        DeltaValue::ExpNeg(x) => *x >= rational::ratio(r as i128, 60),
        DeltaValue::Exact(d) => DeltaValue::ExpNeg(rational::ratio(r as i128, 60)).at_least(d),
    };
    if star {
        Branch::Star
    } else if r == 2 {
        Branch::Matching
    } else {
        Branch::Hypergraph
    }
}

/// Builds a lower-bound instance. For the star branch `n` is the vertex
/// count; for the blow-up branches it is the blob size.
///
/// `branch` overrides the case split; the result is still checked against
/// `δ(G) ≥ (1−δ)|V(G)|`.
pub fn lower_bound_instance(
    r: usize,
    delta: &DeltaValue,
    n: usize,
    branch: Option<Branch>,
    rule: IntraColourRule,
) -> Result<LowerBoundInstance> {
    if r < 2 {
        return Err(Error::input(format!("r must be at least 2, got {r}")));
    }
    if !delta.in_unit_interval() {
        return Err(Error::input(format!("δ = {delta} outside (0, 1)")));
    }
    let branch = branch.unwrap_or_else(|| select_branch(r, delta));
    let instance = match branch {
        Branch::Star => {
            let graph = star_instance(r, n, rule)?;
            LowerBoundInstance { graph, branch, source: None, base: None, blob: 1, hrtm: None, expected_tc: r }
        }
        Branch::Matching | Branch::Hypergraph => {
            let (source, hrtm, expected) = if branch == Branch::Matching {
                if r != 2 {
                    return Err(Error::input("the matching branch is for r = 2"));
                }
                // m' = ⌊1/(1−δ²)⌋ = largest k with δ² ≥ 1 − 1/k
                let sq = delta.squared();
                let mut k = 1usize;
                while k < 1_000_000 && sq.at_least(&(rational::int(1) - Rational::new(1, k as i128 + 1))) {
                    k += 1;
                }
                let labels = (0..k).map(|i| format!("L{i}")).chain((0..k).map(|i| format!("R{i}"))).collect();
                let mut h = MultiHypergraph::new(labels, Some(vec![(0..k).collect(), (k..2 * k).collect()]))?;
                for i in 0..k {
                    h.add_edge(&[i, k + i], 1)?;
                }
                (h, None, k)
            } else {
                let (t, m) = HrtmSpec::intersecting_parameters(r, &delta.squared());
                if m == 0 {
                    return Err(Error::Size(format!("m = ⌊r/(5 ln(1/δ²))⌋ is 0 for r = {r}, δ = {delta}")));
                }
                let spec = HrtmSpec::new(r, t, m)?;
                (build_hrtm(&spec)?, Some(spec), spec.transversal_number())
            };
            let (base, _) = hypergraph_to_graph(&source)?;
            if n == 0 {
                return Err(Error::Size("blob size must be at least 1".into()));
            }
            let graph = blow_up(&base, n, rule)?;
            LowerBoundInstance { graph, branch, source: Some(source), base: Some(base), blob: n, hrtm, expected_tc: expected }
        }
    };
    if !meets_degree_condition(&instance.graph, delta) {
        let hint = match branch {
            Branch::Star => format!("n must be at least ⌈r/δ⌉ ≈ {}", (r as f64 / delta.to_f64()).ceil()),
            _ => "increase the blob size".to_string(),
        };
        return Err(Error::Size(format!(
            "{branch:?} instance with {} vertices has δ(G) = {} < (1−δ)|V(G)|; {hint}",
            instance.graph.n(),
            instance.graph.min_degree()
        )));
    }
    Ok(instance)
}
