//! Acceptance suite. Prints one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use chroma_core::constructions::{
    build_hrtm, check_hrtm_delta, hypergraph_to_graph, lower_bound_instance, star_instance, Branch, HrtmSpec,
    MAX_HRTM_EDGES,
};
use chroma_core::hypergraph::intersection_profile;
use chroma_core::kit::{barbell_b_matching, cherry_cover, triangle_b_matching, Barbell, BMatching, DemandFunction};
use chroma_core::rational::{int, ratio, rational_above, to_f64};
use chroma_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::result::Result;

/// Absolute tolerance for the floating bound in criterion 6.
const FLOAT_TOL: f64 = 1e-9;
/// Wall-clock limit for criterion 1.
const HRTM_SECONDS: f64 = 60.0;
/// Wall-clock limit for the exhaustive part of criterion 10.
const LATTICE_SECONDS: f64 = 10.0;
/// Instances whose tree cover is brute-forced stay below this many components.
const BRUTE_COMPONENT_LIMIT: usize = 40;

type Check = Result<Value, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Monochromatic components as vertex bitmasks, recomputed by BFS.
fn components_by_bfs(g: &ColouredGraph) -> Vec<u64> {
    let n = g.n();
    let mut out = Vec::new();
    for c in 1..=g.r() as Colour {
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut mask = 0u64;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                mask |= 1 << v;
                for w in g.neighbours_in(v, c) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(mask);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest number of monochromatic components covering every vertex.
fn brute_tree_cover(g: &ColouredGraph) -> Option<usize> {
    if g.n() > 63 {
        return None;
    }
    let comps = components_by_bfs(g);
    if comps.len() > BRUTE_COMPONENT_LIMIT {
        return None;
    }
    let full = if g.n() == 0 { 0 } else { (1u64 << g.n()) - 1 };
    fn search(comps: &[u64], full: u64, covered: u64, k: usize, start: usize) -> bool {
        if covered == full {
            return true;
        }
        if k == 0 {
            return false;
        }
        let missing = (full & !covered).trailing_zeros();
        (start..comps.len()).any(|i| comps[i] >> missing & 1 == 1 && search(comps, full, covered | comps[i], k - 1, 0))
    }
    (0..=g.n()).find(|&k| search(&comps, full, 0, k, 0))
}

/// Vertex-disjoint cycles inside `g` covering `target`, via the certificate verifier.
fn check_cycle_family(g: &ColouredGraph, cycles: &[DegenerateCycle], target: &[Vertex]) -> Result<(), String> {
    let cert = Certificate::CycleCover { target: target.to_vec(), cycles: cycles.to_vec() };
    let report = verify_certificate(g, &cert);
    ensure(report.is_ok(), || format!("{:?}", report.violations))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_edges(n, edges).unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut rows = Vec::new();
    for r in 2..=5 {
        for t in 1..=2 {
            for m in 1..=2 {
                if t >= r {
                    continue;
                }
                let spec = HrtmSpec::new(r, t, m).map_err(|e| e.to_string())?;
                let edges = spec.edge_count().unwrap_or(u64::MAX);
                if edges > 5000 {
                    rows.push(json!({"r": r, "t": t, "m": m, "edges": edges, "skipped": true}));
                    continue;
                }
                let h = build_hrtm(&spec).map_err(|e| e.to_string())?;
                let tau = exact_transversal(&h, &Budget::unlimited()).solved().ok_or("budget")?.size();
                ensure(tau == (t + 1) * m, || format!("H_({r},{t},{m}): τ = {tau}, expected {}", (t + 1) * m))?;
                rows.push(json!({"r": r, "t": t, "m": m, "edges": edges, "tau": tau}));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < HRTM_SECONDS, || format!("took {secs:.1}s"))?;
    Ok(json!(rows))
}

fn criterion_2() -> Check {
    let mut checked = 0;
    for seed in 0..240u64 {
        let n = 3 + (seed % 7) as usize;
        let r = 1 + (seed % 3) as usize;
        let p = [0.3, 0.5, 0.7][(seed / 3 % 3) as usize];
        let g = random_coloured_graph(n, r, p, seed);
        let brute = brute_tree_cover(&g).ok_or("instance too large for brute force")?;
        let tau = exact_transversal(&connectivity_hypergraph(&g).hypergraph, &Budget::unlimited())
            .solved()
            .ok_or("budget")?
            .size();
        ensure(brute == tau, || format!("seed {seed}: brute force {brute} vs τ(C(G)) = {tau}"))?;
        checked += 1;
    }
    Ok(json!({"instances": checked, "mismatches": 0}))
}

fn random_partite(rng: &mut ChaCha8Rng) -> MultiHypergraph {
    let r = rng.random_range(2..=3usize);
    let per = 2;
    let labels = (0..r * per).map(|i| format!("v{i}")).collect();
    let parts = (0..r).map(|c| (c * per..(c + 1) * per).collect()).collect();
    let mut h = MultiHypergraph::new(labels, Some(parts)).unwrap();
    let edges = rng.random_range(2..=4);
    let mut seen = BTreeSet::new();
    while seen.len() < edges {
        let members: Vec<usize> = (0..r).map(|c| c * per + rng.random_range(0..per)).collect();
        if seen.insert(members.clone()) {
            h.add_edge(&members, rng.random_range(1..=3)).unwrap();
        }
    }
    h
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut rows = Vec::new();
    for i in 0..24 {
        let h = random_partite(&mut rng);
        let profile = intersection_profile(&h);
        let delta = int(1) - ratio(profile.min_count() as i128, profile.total as i128);
        let (ok, _) = is_delta_intersecting(&h, &delta).map_err(|e| e.to_string())?;
        ensure(ok, || format!("input {i} is not δ-intersecting at its own δ"))?;
        let (g, _) = hypergraph_to_graph(&h).map_err(|e| e.to_string())?;
        let n = g.n() as i128;
        ensure(int(g.min_degree() as i128) >= (int(1) - delta) * int(n) - int(1), || {
            format!("input {i}: δ(G) = {} below (1−δ)|V| − 1 with δ = {delta}, |V| = {n}", g.min_degree())
        })?;
        let tau = exact_transversal(&h, &Budget::unlimited()).solved().ok_or("budget")?.size();
        let tc = match brute_tree_cover(&g) {
            Some(tc) => tc,
            None => tree_cover_number(&g, &Budget::unlimited()).solved().ok_or("budget")?,
        };
        ensure(tc == tau, || format!("input {i}: tc(G) = {tc}, τ(H) = {tau}"))?;
        rows.push(json!({"edges": h.edge_count(), "delta": rational::format_rational(&delta), "n": n, "tc": tc}));
    }
    Ok(json!(rows))
}

fn criterion_4() -> Check {
    let mut rows = Vec::new();
    for r in 3..=6usize {
        let deltas = [rational_above((-(r as f64) / 5.0).exp(), 12), ratio(9, 10), ratio(99, 100)];
        for delta in deltas {
            let t = r / 3;
            let m = (r as f64 / (5.0 * (1.0 / to_f64(&delta)).ln())).floor() as usize;
            let d = rational::format_rational(&delta);
            if m < 1 {
                rows.push(json!({"r": r, "delta": d, "m": m, "skipped": "m < 1"}));
                continue;
            }
            let spec = HrtmSpec::new(r, t, m).map_err(|e| e.to_string())?;
            if spec.edge_count().is_none_or(|e| e > MAX_HRTM_EDGES) {
                rows.push(json!({"r": r, "delta": d, "m": m, "skipped": "too large"}));
                continue;
            }
            let ok = check_hrtm_delta(&spec, &delta).map_err(|e| e.to_string())?;
            ensure(ok, || format!("H_({r},{t},{m}) is not {d}-intersecting"))?;
            rows.push(json!({"r": r, "delta": d, "t": t, "m": m, "ok": ok}));
        }
    }
    Ok(json!(rows))
}

fn criterion_5() -> Check {
    let mut rows = Vec::new();
    let tenth = DeltaValue::Exact(ratio(1, 10));
    for r in 2..=4 {
        let n = 10 * r;
        let g = star_instance(r, n, IntraColourRule::default()).map_err(|e| e.to_string())?;
        let tc = tree_cover_number(&g, &Budget::unlimited()).solved().ok_or("budget")?;
        ensure(tc == r, || format!("star r = {r}: tc = {tc}"))?;
        ensure(g.min_degree() == n - r, || format!("star r = {r}: δ(G) = {}", g.min_degree()))?;
        ensure(chroma_core::constructions::meets_degree_condition(&g, &tenth), || {
            format!("star r = {r}: degree condition fails at δ = 1/10")
        })?;
        rows.push(json!({"r": r, "n": n, "tc": tc}));
    }
    let inst = lower_bound_instance(
        3,
        &DeltaValue::Exact(ratio(9, 10)),
        2,
        Some(Branch::Hypergraph),
        IntraColourRule::default(),
    )
    .map_err(|e| e.to_string())?;
    let source = inst.source.as_ref().ok_or("no source hypergraph")?;
    let base = inst.base.as_ref().ok_or("no base graph")?;
    let tau = exact_transversal(source, &Budget::unlimited()).solved().ok_or("budget")?.size();
    let tc_base = tree_cover_number(base, &Budget::unlimited()).solved().ok_or("budget")?;
    let tc_blow = tree_cover_number(&inst.graph, &Budget::unlimited()).solved().ok_or("budget")?;
    ensure(tc_blow == tc_base && tc_base == tau, || format!("tc(blow-up) {tc_blow}, tc(base) {tc_base}, τ {tau}"))?;
    rows.push(json!({"r": 3, "delta": "9/10", "tau": tau, "tc_base": tc_base, "tc_blow_up": tc_blow}));
    Ok(json!(rows))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances: Vec<(MultiHypergraph, usize)> = Vec::new();
    for r in 3..=5 {
        for (t, m) in [(1, 1), (1, 2), (2, 1)] {
            if t < r {
                let h = build_hrtm(&HrtmSpec::new(r, t, m).unwrap()).unwrap();
                instances.push((h, r));
            }
        }
    }
    for _ in 0..60 {
        let n = rng.random_range(4..=9);
        let r = rng.random_range(1..=3);
        let g = random_coloured_graph(n, r, rng.random_range(0.2..0.9), rng.random());
        instances.push((connectivity_hypergraph(&g).hypergraph, r));
    }
    for _ in 0..40 {
        let h = random_partite(&mut rng);
        let r = h.parts().unwrap().len();
        instances.push((h, r));
    }
    let mut used = 0;
    let mut worst: f64 = 0.0;
    for (i, (h, r)) in instances.iter().enumerate() {
        let profile = intersection_profile(h);
        let delta = int(1) - ratio(profile.min_count() as i128, profile.total as i128);
        if delta < ratio(1, 2) {
            continue;
        }
        if delta >= int(1) {
            continue;
        }
        used += 1;
        let greedy = greedy_degree_transversal(h, &delta, *r).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(h.is_transversal(&greedy.transversal.vertices), || format!("instance {i}: not a transversal"))?;
        let bound = 2.0 * (*r as f64).powi(2) / (1.0 / to_f64(&delta)).ln();
        let size = greedy.transversal.size() as f64;
        ensure(size <= bound + FLOAT_TOL, || format!("instance {i}: |X| = {size} > {bound}"))?;
        worst = worst.max(size / bound);
    }
    ensure(used >= 20, || format!("only {used} instances with δ ≥ 1/2"))?;
    Ok(json!({"instances": used, "worst_ratio": format!("{worst:.6}")}))
}

/// Random bipartite instance meeting the cover's preconditions for `k`.
fn planted_bipartite(k: usize, rng: &mut ChaCha8Rng) -> (ColouredGraph, Vec<Vertex>, Vec<Vertex>) {
    let nb = rng.random_range(45..=300usize);
    let na = rng.random_range(1..=(nb / (5 * k * k)).max(1));
    let r = rng.random_range(1..=3usize);
    let need = nb.div_ceil(k);
    let mut edges = Vec::new();
    // half the instances tie each a to one of k blocks of B, so the contracted graph splits
    let blocks = rng.random_bool(0.5);
    for i in 0..na {
        if blocks {
            let block = rng.random_range(0..k);
            for j in block * nb / k..(block + 1) * nb / k {
                edges.push((i, na + j, rng.random_range(1..=r as Colour)));
            }
            let short = need.saturating_sub(nb / k);
            for j in 0..short {
                edges.push((i, na + (j + (block + 1) * nb / k) % nb, 1));
            }
            continue;
        }
        let d = if rng.random_bool(0.7) { need } else { rng.random_range(need..=nb) };
        let mut pool: Vec<usize> = (0..nb).collect();
        for j in 0..d {
            let pick = rng.random_range(j..nb);
            pool.swap(j, pick);
            edges.push((i, na + pool[j], rng.random_range(1..=r as Colour)));
        }
    }
    let g = ColouredGraph::from_edges(na + nb, r, edges).unwrap();
    (g, (0..na).collect(), (na..na + nb).collect())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut rows = Vec::new();
    for i in 0..120 {
        let k = 1 + i % 3;
        let (g, a, b) = planted_bipartite(k, &mut rng);
        let cycles = bipartite_cycle_cover(&g, &a, &b, k, &[], &Budget::unlimited()).map_err(|e| format!("{i}: {e}"))?;
        ensure(cycles.len() <= 2 * k, || format!("instance {i}: {} cycles > 2k = {}", cycles.len(), 2 * k))?;
        // the cover is colour-blind: check it in the graph with every edge recoloured 1
        let flat = ColouredGraph::from_edges(g.n(), 1, g.edges().into_iter().map(|(u, v, _)| (u, v, 1))).unwrap();
        let cycles: Vec<DegenerateCycle> = cycles.into_iter().map(|c| DegenerateCycle::new(c.vertices, Some(1))).collect();
        check_cycle_family(&flat, &cycles, &a).map_err(|e| format!("instance {i}: {e}"))?;
        let threshold = ratio(b.len() as i128, 5 * (k * k) as i128);
        let contracted = contracted_graph(&g, &a, &b, &threshold, &[]).map_err(|e| e.to_string())?;
        let alpha = independence_number(&contracted.graph, &Budget::unlimited())
            .map_err(|e| e.to_string())?
            .solved()
            .ok_or("budget")?
            .size;
        ensure(alpha < 2 * k, || format!("instance {i}: α = {alpha} ≥ 2k"))?;
        rows.push(json!([k, a.len(), b.len(), cycles.len(), alpha]));
    }
    Ok(json!(rows))
}

fn criterion_8() -> Check {
    let mut rows = Vec::new();
    for (pi, p) in [0.3, 0.5, 0.8].into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(800 + pi as u64);
        let mut within = 0;
        for i in 0..100 {
            let g = gnp(12, p, &mut rng);
            let cycles = posa_cycle_cover(&g);
            let mut seen = [false; 12];
            for c in &cycles {
                for &v in &c.vertices {
                    ensure(!std::mem::replace(&mut seen[v], true), || format!("p = {p}, {i}: vertex {v} repeated"))?;
                }
                for (u, v) in c.edges() {
                    ensure(g.has_edge(u, v), || format!("p = {p}, {i}: {u}{v} is not an edge"))?;
                }
            }
            ensure(seen.iter().all(|&s| s), || format!("p = {p}, {i}: not spanning"))?;
            let alpha = independence_number(&g, &Budget::unlimited()).map_err(|e| e.to_string())?.solved().ok_or("budget")?;
            ensure(cycles.len() <= alpha.size, || format!("p = {p}, {i}: {} cycles > α = {}", cycles.len(), alpha.size))?;
            within += 1;
        }
        rows.push(json!({"p": p, "within": within, "of": 100}));
    }
    Ok(json!(rows))
}

/// `B` is cut into blocks; every block has one random signature, and each
/// `a` misses at most a `δ` fraction of `B`.
fn planted_signature(rng: &mut ChaCha8Rng) -> (ColouredGraph, Vec<Vertex>, Vec<Vertex>, usize) {
    let r = rng.random_range(2..=3usize);
    let na = rng.random_range(1..=8usize);
    let nb = rng.random_range(200..=800usize);
    let blocks = rng.random_range(2..=6usize);
    let block_of = |j: usize| j * blocks / nb;
    let sig: Vec<Vec<Colour>> =
        (0..blocks).map(|_| (0..na).map(|_| rng.random_range(1..=r as Colour)).collect()).collect();
    // at most nb/4 non-edges per a: a window of nb/8 positions
    let gaps: Vec<usize> = (0..na).map(|_| rng.random_range(0..nb)).collect();
    let width = nb / 8;
    let mut edges = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            if (j + nb - gaps[i]) % nb >= width {
                edges.push((i, na + j, sig[block_of(j)][i]));
            }
        }
    }
    let g = ColouredGraph::from_edges(na + nb, r, edges).unwrap();
    (g, (0..na).collect(), (na..na + nb).collect(), r)
}

fn criterion_9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let big_k = 3;
    let mut rows = Vec::new();
    for i in 0..60 {
        let (g, a, b, r) = planted_signature(&mut rng);
        let delta = ratio(1, 4);
        let cover = signature_cover(&g, &a, &b, &delta, big_k).map_err(|e| format!("instance {i}: {e}"))?;
        check_cycle_family(&g, &cover.cycles, &a).map_err(|e| format!("instance {i}: {e}"))?;
        for c in &cover.cycles {
            ensure(c.vertices.len() <= 2 || c.colour.is_some(), || format!("instance {i}: cycle not monochromatic"))?;
        }
        let bound = r as f64 * (3.0 * big_k as f64 * r as f64 * (r as f64).ln() / 4f64.ln()).ceil();
        ensure(cover.cycles.len() as f64 <= bound, || format!("instance {i}: {} cycles > {bound}", cover.cycles.len()))?;
        for s in &cover.steps {
            ensure(int(s.live_after as i128) <= int(2) * delta * int(s.live_before as i128), || {
                format!("instance {i}: leftover {} > 2δ·{}", s.live_after, s.live_before)
            })?;
        }
        rows.push(json!([r, a.len(), b.len(), cover.cycles.len(), cover.steps.len()]));
    }
    Ok(json!(rows))
}

fn check_matching(m: &BMatching, demands: &[(Vertex, u64)], n: u64) -> Result<(), String> {
    for &(v, d) in demands {
        ensure(m.load(v) == d, || format!("n = {n}: load({v}) = {} ≠ {d}", m.load(v)))?;
    }
    let w = m.min_weight().ok_or("empty b-matching")?;
    ensure(10 * w >= n, || format!("n = {n}: weight {w} < n/10"))
}

fn even_range(lo_tenths: u64, n: u64) -> Vec<u64> {
    let lo = (lo_tenths * n).div_ceil(10);
    (lo..=n).filter(|x| x % 2 == 0).collect()
}

fn barbell() -> Barbell {
    Barbell { left: [0, 1, 2], right: [3, 4, 5], bridge: 6 }
}

fn criterion_10() -> Check {
    let start = Instant::now();
    let mut exhaustive = 0u64;
    for n in [20u64, 30] {
        let low = even_range(3, n);
        let high = even_range(9, n);
        for &x in &low {
            for &y in &high {
                for &z in &high {
                    let b = DemandFunction::new(n, [(0, x), (1, y), (2, z)]);
                    let m = triangle_b_matching([0, 1, 2], &b).map_err(|e| e.to_string())?;
                    check_matching(&m, &[(0, x), (1, y), (2, z)], n)?;
                    exhaustive += 1;
                }
            }
        }
        let k = high.len();
        for code in 0..k.pow(7) {
            let values: Vec<(Vertex, u64)> = (0..7).map(|v| (v, high[code / k.pow(v as u32) % k])).collect();
            let m = barbell_b_matching(&barbell(), &DemandFunction::new(n, values.clone())).map_err(|e| e.to_string())?;
            check_matching(&m, &values, n)?;
            exhaustive += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < LATTICE_SECONDS, || format!("lattice took {secs:.1}s"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut sampled = 0u64;
    for n in [40u64, 100] {
        let low = even_range(3, n);
        let high = even_range(9, n);
        for _ in 0..50_000 {
            let pick = |r: &mut ChaCha8Rng, xs: &[u64]| xs[r.random_range(0..xs.len())];
            if rng.random_bool(0.5) {
                let d = [(0, pick(&mut rng, &low)), (1, pick(&mut rng, &high)), (2, pick(&mut rng, &high))];
                let m = triangle_b_matching([0, 1, 2], &DemandFunction::new(n, d)).map_err(|e| e.to_string())?;
                check_matching(&m, &d, n)?;
            } else {
                let d: Vec<(Vertex, u64)> = (0..7).map(|v| (v, pick(&mut rng, &high))).collect();
                let m = barbell_b_matching(&barbell(), &DemandFunction::new(n, d.clone())).map_err(|e| e.to_string())?;
                check_matching(&m, &d, n)?;
            }
            sampled += 1;
        }
    }
    Ok(json!({"exhaustive": exhaustive, "sampled": sampled}))
}

/// Random `r`-coloured bipartite graph missing about 2% of the `A`–`B` pairs.
fn planted_cherry(na: usize, nb: usize, r: usize, rng: &mut ChaCha8Rng) -> ColouredGraph {
    let mut edges = Vec::new();
    for i in 0..na {
        for j in 0..nb {
            if rng.random_range(0..100) < 98 {
                edges.push((i, na + j, rng.random_range(1..=r as Colour)));
            }
        }
    }
    ColouredGraph::from_edges(na + nb, r, edges).unwrap()
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut counts = [0usize; 2];
    let mut attempts = 0;
    while counts.iter().any(|&c| c < 30) {
        attempts += 1;
        ensure(attempts < 400, || format!("could not plant enough instances: {counts:?}"))?;
        let want_case_two = counts[1] < 30 && (counts[0] >= 30 || attempts % 2 == 0);
        let (na, nb, delta) = if want_case_two {
            (rng.random_range(4..=12), rng.random_range(250..=400), ratio(1, 25))
        } else {
            (rng.random_range(3..=12), rng.random_range(60..=120), ratio(1, 5))
        };
        let g = planted_cherry(na, nb, 2, &mut rng);
        let a: Vec<Vertex> = (0..na).collect();
        let b: Vec<Vertex> = (na..na + nb).collect();
        let cover = match cherry_cover(&g, &a, &b, &delta, &Budget::unlimited()) {
            Ok(out) => out.solved().ok_or("budget")?,
            Err(Error::Input(_)) => continue,
            Err(e) => return Err(format!("attempt {attempts}: {e}")),
        };
        let mut seen = vec![false; g.n()];
        let mut centres: Vec<Vertex> = Vec::new();
        let mut audit = BTreeSet::new();
        for ch in &cover.cherries {
            ch.check_in(&g).map_err(|e| format!("attempt {attempts}: {e}"))?;
            for v in [ch.centre, ch.leaves[0], ch.leaves[1]] {
                ensure(!std::mem::replace(&mut seen[v], true), || format!("attempt {attempts}: {v} reused"))?;
            }
            centres.push(ch.centre);
            audit.insert((ch.colour, g.colour_labels(ch.colour)[ch.centre]));
        }
        centres.sort_unstable();
        ensure(centres == a, || format!("attempt {attempts}: centres do not cover A exactly"))?;
        ensure(audit.len() == cover.components, || {
            format!("attempt {attempts}: audit {} vs logged {}", audit.len(), cover.components)
        })?;
        counts[cover.case as usize - 1] += 1;
    }
    Ok(json!({"case_one": counts[0], "case_two": counts[1]}))
}

mod hubs {
    use super::*;
    use chroma_core::hub::ConnectingHub;

    pub struct Planted {
        pub g: ColouredGraph,
        pub a: Vec<Vertex>,
        pub b: Vec<Vertex>,
        pub x: Vec<Vertex>,
        pub hubs: Vec<ConnectingHub>,
        pub params: HubParams,
    }

    /// `hubs` hubs on disjoint cores; every routing vertex is complete to its
    /// core in its colour, every `X` vertex is rich towards at most one core,
    /// and `t` link vertices join cores 0 and 1 in colour 1.
    pub fn planted(hubs: usize, rng: &mut ChaCha8Rng) -> Planted {
        let r = rng.random_range(2..=3usize);
        let t = rng.random_range(1..=3usize);
        let m = rng.random_range(6..=12usize);
        let mut colour_sets: Vec<Vec<Colour>> = Vec::new();
        for _ in 0..hubs {
            let mut cs: Vec<Colour> = (1..=r as Colour).filter(|_| rng.random_bool(0.5)).collect();
            if hubs > 1 && !cs.contains(&1) {
                cs.insert(0, 1);
            }
            colour_sets.push(cs);
        }
        let routing_sizes: Vec<Vec<usize>> =
            colour_sets.iter().map(|cs| cs.iter().map(|_| rng.random_range(t..=t + 2)).collect()).collect();
        let n_routing: usize = routing_sizes.iter().flatten().sum();
        let n_plain = rng.random_range(3..=8usize);
        let n_links = if hubs > 1 { t } else { 0 };
        let na = n_routing + n_plain + n_links;
        let nb = hubs * m + rng.random_range(0..=10usize);
        let n = na + nb;
        let a: Vec<Vertex> = (0..na).collect();
        let b: Vec<Vertex> = (na..n).collect();
        let cores: Vec<Vec<Vertex>> = (0..hubs).map(|i| (na + i * m..na + (i + 1) * m).collect()).collect();
        let mut edges = Vec::new();
        let mut next = 0;
        let mut out = Vec::new();
        for i in 0..hubs {
            let mut routing = Vec::new();
            for (ci, &c) in colour_sets[i].iter().enumerate() {
                let set: Vec<Vertex> = (next..next + routing_sizes[i][ci]).collect();
                next += set.len();
                for &v in &set {
                    for &s in &cores[i] {
                        edges.push((v, s, c));
                    }
                }
                routing.push(set);
            }
            out.push(ConnectingHub { colours: colour_sets[i].clone(), core: cores[i].clone(), routing });
        }
        let mut x = Vec::new();
        for v in next..next + n_plain {
            x.push(v);
            let target = rng.random_range(0..hubs);
            let rich = !colour_sets[target].is_empty() && rng.random_bool(0.5);
            for (i, core) in cores.iter().enumerate() {
                if rich && i == target {
                    let c = colour_sets[i][rng.random_range(0..colour_sets[i].len())];
                    let k = rng.random_range(m / 2 + 1..=m);
                    for &s in &core[..k] {
                        edges.push((v, s, c));
                    }
                } else if i == target {
                    // at most m/2 edges into the core, colours arbitrary; zero colour-1
                    // edges so no accidental link forms
                    let k = rng.random_range(0..=m / 2);
                    for &s in &core[..k] {
                        edges.push((v, s, rng.random_range(2..=r as Colour)));
                    }
                }
            }
        }
        next += n_plain;
        for v in next..next + n_links {
            x.push(v);
            for core in &cores[..2] {
                for &s in core {
                    edges.push((v, s, 1));
                }
            }
        }
        let g = ColouredGraph::from_edges(n, r, edges).unwrap();
        let params = HubParams::new(r, t, m, ratio(1, 4)).unwrap();
        Planted { g, a, b, x, hubs: out, params }
    }

    /// Fixed instance for the mutants: `r = 2`, `t = 2`, `m = 10`.
    ///
    /// `A = 0..10`, `B = 10..42`, core `10..20`, `T_1 = {0, 1}`, `T_2 = {2, 3}`.
    pub fn base() -> (ColouredGraph, Vec<Vertex>, Vec<Vertex>, ConnectingHub, HubParams) {
        let mut e = Vec::new();
        for v in [0, 1] {
            e.extend((10..26).map(|s| (v, s, 1)));
            e.extend((26..42).map(|s| (v, s, 2)));
        }
        for v in [2, 3] {
            e.extend((10..42).map(|s| (v, s, 2)));
        }
        e.extend((10..20).map(|s| (4, s, 1)));
        e.extend((10..16).map(|s| (6, s, 2)));
        e.extend([19, 32, 33].map(|s| (7, s, 1)));
        e.extend((10..15).map(|s| (8, s, 1)));
        e.extend((26..42).map(|s| (9, s, 2)));
        let g = ColouredGraph::from_edges(42, 2, e).unwrap();
        let hub = ConnectingHub { colours: vec![1, 2], core: (10..20).collect(), routing: vec![vec![0, 1], vec![2, 3]] };
        (g, (0..10).collect(), (10..42).collect(), hub, HubParams::new(2, 2, 10, ratio(1, 4)).unwrap())
    }

    /// Independent exhaustive expander check with floating ρ.
    pub fn duplicate_expander(g: &SimpleGraph, eps: f64, t: f64) -> bool {
        use itertools::Itertools;
        let n = g.n();
        let lo = (t / 2.0).ceil().max(1.0) as usize;
        (lo..=n / 2).all(|k| {
            (0..n).combinations(k).all(|u| {
                let inside: BTreeSet<Vertex> = u.iter().copied().collect();
                let outside: BTreeSet<Vertex> =
                    u.iter().flat_map(|&v| g.neighbours(v).iter().copied()).filter(|w| !inside.contains(w)).collect();
                let rho = eps / (15.0 * k as f64 / t).ln().powi(2);
                outside.len() as f64 >= rho * k as f64
            })
        })
    }
}

fn criterion_12() -> Check {
    use chroma_core::hub::ConnectingHub;
    use HubViolationKind as K;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..25 {
        let p = hubs::planted(1, &mut rng);
        let report = verify_hub(&p.g, &p.a, &p.b, &p.x, &p.hubs[0], &p.params).map_err(|e| e.to_string())?;
        ensure(report.is_ok(), || format!("planted hub {i} rejected: {:?}", report))?;
    }
    for i in 0..25 {
        let p = hubs::planted(rng.random_range(2..=3), &mut rng);
        let family = LinkedHubFamily { hubs: p.hubs.clone() };
        let report = verify_linked_family(&p.g, &p.a, &p.b, &p.x, &family, &p.params).map_err(|e| e.to_string())?;
        ensure(report.is_ok(), || format!("planted family {i} rejected: {:?}", report))?;
    }

    let (g, a, b, hub, params) = hubs::base();
    let x = vec![4, 5, 6, 7];
    let base_report = verify_hub(&g, &a, &b, &x, &hub, &params).map_err(|e| e.to_string())?;
    ensure(base_report.is_ok(), || format!("mutant base rejected: {base_report:?}"))?;
    let with = |f: &dyn Fn(&mut ConnectingHub)| {
        let mut h = hub.clone();
        f(&mut h);
        h
    };
    let hub_mutants: Vec<(&str, ConnectingHub, Vec<Vertex>, K)> = vec![
        ("drop T_2", with(&|h| { h.routing.pop(); }), x.clone(), K::Shape),
        ("colour 3", with(&|h| h.colours[1] = 3), vec![4, 5, 7], K::ColourSetRange),
        ("core of 9", with(&|h| { h.core.pop(); }), x.clone(), K::CoreSize),
        ("core vertex in A", with(&|h| h.core[9] = 7), vec![4, 5, 6], K::CoreOutsideB),
        ("T_1 of size 1", with(&|h| h.routing[0] = vec![0]), x.clone(), K::RoutingSetSize),
        ("T_1 meets X", with(&|h| h.routing[0] = vec![0, 4]), x.clone(), K::RoutingOutside),
        ("T_2 meets T_1", with(&|h| h.routing[1] = vec![2, 3, 0]), x.clone(), K::RoutingOverlap),
        ("T_1 not expanding", with(&|h| h.routing[0] = vec![0, 1, 8]), x.clone(), K::Expansion),
        ("core vertex without T_1 edges", with(&|h| h.core[9] = 41), x.clone(), K::CoreDegree),
        ("drop colour 2", with(&|h| { h.colours.pop(); h.routing.pop(); }), x.clone(), K::Dichotomy),
    ];
    let mut labels = Vec::new();
    for (name, h, xs, kind) in hub_mutants {
        let report = verify_hub(&g, &a, &b, &xs, &h, &params).map_err(|e| e.to_string())?;
        let mut kinds: Vec<K> = report.violations.iter().map(|v| v.kind).collect();
        kinds.dedup();
        ensure(kinds == vec![kind], || format!("mutant {name}: expected [{}], got {kinds:?}", kind.label()))?;
        labels.push(kind.label());
    }
    let second = ConnectingHub { colours: vec![], core: (30..40).collect(), routing: vec![] };
    let family = |core: Vec<Vertex>| LinkedHubFamily { hubs: vec![hub.clone(), ConnectingHub { core, ..second.clone() }] };
    let fam_x = vec![4, 5, 6];
    let ok = verify_linked_family(&g, &a, &b, &fam_x, &family((30..40).collect()), &params).map_err(|e| e.to_string())?;
    ensure(ok.is_ok(), || format!("family base rejected: {ok:?}"))?;
    let mut shared = family((30..40).collect());
    shared.hubs[1].colours = vec![2];
    shared.hubs[1].routing = vec![vec![2, 3]];
    let family_mutants = [
        ("shared routing set", shared, fam_x.clone(), K::HubOverlap),
        ("one c-link", family((32..42).collect()), x.clone(), K::LinkSetSize),
    ];
    for (name, fam, xs, kind) in family_mutants {
        let report = verify_linked_family(&g, &a, &b, &xs, &fam, &params).map_err(|e| e.to_string())?;
        let mut kinds: Vec<K> = report.violations.iter().map(|v| v.kind).collect();
        kinds.dedup();
        ensure(kinds == vec![kind], || format!("mutant {name}: expected [{}], got {kinds:?}", kind.label()))?;
        labels.push(kind.label());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1212);
    let settings = [(ratio(1, 4), 1), (int(1), 1), (int(4), 2), (int(8), 1), (ratio(1, 2), 3)];
    let mut agree = 0;
    for i in 0..10_000 {
        let n = rng.random_range(1..=8);
        let g = gnp(n, rng.random_range(0.1..0.9), &mut rng);
        let (eps, t) = settings[i % settings.len()];
        let fast = is_expander(&g, &ExpanderParams::new(eps, int(t)).unwrap()).is_expander();
        let slow = hubs::duplicate_expander(&g, to_f64(&eps), t as f64);
        ensure(fast == slow, || format!("graph {i}: checker {fast}, duplicate {slow}"))?;
        agree += 1;
    }
    Ok(json!({"planted_hubs": 25, "planted_families": 25, "mutant_labels": labels, "expander_agreements": agree}))
}

type Criterion = (u32, &'static str, fn() -> Check);

const CRITERIA: [Criterion; 12] = [
    (1, "H_{r,t,m} transversal identity", criterion_1),
    (2, "tree cover equals transversal of C(G)", criterion_2),
    (3, "hypergraph-to-graph postconditions", criterion_3),
    (4, "H_{r,t,m} is δ-intersecting", criterion_4),
    (5, "lower-bound instances", criterion_5),
    (6, "greedy transversal bound", criterion_6),
    (7, "bipartite cycle cover", criterion_7),
    (8, "Pósa cover within α", criterion_8),
    (9, "signature-vector cover", criterion_9),
    (10, "b-matching lattice", criterion_10),
    (11, "cherry cover shape", criterion_11),
    (12, "hub layer soundness", criterion_12),
];

fn run_all() -> Vec<(u32, &'static str, Check)> {
    CRITERIA.iter().map(|&(id, name, f)| (id, name, f())).collect()
}

fn bundle(results: &[(u32, &'static str, Check)]) -> String {
    let items: Vec<Value> = results
        .iter()
        .map(|(id, name, res)| match res {
            Ok(v) => json!({"criterion": id, "name": name, "pass": true, "report": v}),
            Err(e) => json!({"criterion": id, "name": name, "pass": false, "error": e}),
        })
        .collect();
    serde_json::to_string_pretty(&items).unwrap()
}

/// Reports contain wall-clock checks only as pass/fail, so bundles compare byte for byte.
fn main() {
    let first = run_all();
    let mut failed = Vec::new();
    for (id, name, res) in &first {
        match res {
            Ok(_) => println!("criterion {id:>2} PASS  {name}"),
            Err(e) => {
                println!("criterion {id:>2} FAIL  {name}: {e}");
                failed.push(*id);
            }
        }
    }
    let second = run_all();
    let (b1, b2) = (bundle(&first), bundle(&second));
    if let Ok(path) = std::env::var("ACCEPTANCE_BUNDLE") {
        std::fs::write(path, &b1).expect("bundle written");
    }
    if b1 == b2 {
        println!("criterion 13 PASS  deterministic report bundle ({} bytes)", b1.len());
    } else {
        println!("criterion 13 FAIL  report bundles differ between runs");
        failed.push(13);
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
