use std::collections::BTreeSet;

use chroma_core::hub::{hub_search_heuristic, ConnectingHub};
use chroma_core::rational::{int, ratio};
use chroma_core::*;
use itertools::Itertools;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exhaustive expander check written against the definition, floating ρ.
fn slow_expander(n: usize, adj: &[BTreeSet<usize>], eps: f64, t: f64) -> bool {
    let lo = (t / 2.0).ceil().max(1.0) as usize;
    (lo..=n / 2).all(|k| {
        (0..n).combinations(k).all(|u| {
            let set: BTreeSet<usize> = u.iter().copied().collect();
            let boundary = u.iter().flat_map(|&v| adj[v].iter()).filter(|w| !set.contains(w)).collect::<BTreeSet<_>>();
            boundary.len() as f64 >= eps / (15.0 * k as f64 / t).ln().powi(2) * k as f64
        })
    })
}

fn simple(n: usize, edges: &[(usize, usize)]) -> (SimpleGraph, Vec<BTreeSet<usize>>) {
    let mut adj = vec![BTreeSet::new(); n];
    for &(u, v) in edges {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    (SimpleGraph::from_edges(n, edges.iter().copied()).unwrap(), adj)
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        (Just(n), proptest::sample::subsequence(pairs, 0..=len))
    })
}

proptest! {
    #[test]
    fn expander_matches_duplicate((n, edges) in arb_graph(8), eps_i in 0usize..4, t in 1i128..4) {
        let eps = [ratio(1, 8), ratio(1, 2), int(3), int(9)][eps_i];
        let (g, adj) = simple(n, &edges);
        let fast = is_expander(&g, &ExpanderParams::new(eps, int(t)).unwrap());
        let slow = slow_expander(n, &adj, rational::to_f64(&eps), t as f64);
        prop_assert_eq!(fast.is_expander(), slow);
        if let ExpanderVerdict::Violated { witness, boundary, required } = fast {
            let set: BTreeSet<usize> = witness.iter().copied().collect();
            let real = witness.iter().flat_map(|&v| adj[v].iter()).filter(|w| !set.contains(w)).collect::<BTreeSet<_>>();
            prop_assert_eq!(real.len(), boundary);
            prop_assert!(boundary < required);
        }
    }
}

/// Random bipartite `r`-coloured graph plus a hub candidate built around a
/// planted core; edges are then thinned so that some candidates fail.
fn random_instance(seed: u64) -> (ColouredGraph, Vec<Vertex>, Vec<Vertex>, Vec<Vertex>, ConnectingHub, HubParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.random_range(1..=3usize);
    let t = rng.random_range(1..=2usize);
    let m = rng.random_range(4..=8usize);
    let na = rng.random_range(4..=10usize);
    let nb = m + rng.random_range(0..=6usize);
    let a: Vec<Vertex> = (0..na).collect();
    let b: Vec<Vertex> = (na..na + nb).collect();
    let core: Vec<Vertex> = b[..m].to_vec();
    let colours: Vec<Colour> = (1..=r as Colour).filter(|_| rng.random_bool(0.6)).collect();
    let mut next = 0;
    let mut routing = Vec::new();
    for _ in &colours {
        let size = rng.random_range(t..=t + 1).min(na - next);
        routing.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let mut edges = Vec::new();
    for v in 0..na {
        let owner = routing.iter().position(|t| t.contains(&v));
        for &u in &b {
            let keep = rng.random_bool(if owner.is_some() { 0.9 } else { 0.5 });
            if keep {
                let c = match owner {
                    Some(i) if rng.random_bool(0.9) => colours[i],
                    _ => rng.random_range(1..=r as Colour),
                };
                edges.push((v, u, c));
            }
        }
    }
    let g = ColouredGraph::from_edges(na + nb, r, edges).unwrap();
    let x: Vec<Vertex> = (next..na).filter(|_| rng.random_bool(0.7)).collect();
    let hub = ConnectingHub { colours, core, routing };
    (g, a, b, x, hub, HubParams::new(r, t, m, ratio(1, 4)).unwrap())
}

/// Re-derives every condition of an accepted hub from raw adjacency.
fn recheck(g: &ColouredGraph, a: &[Vertex], b: &[Vertex], x: &[Vertex], hub: &ConnectingHub, p: &HubParams) {
    let (r, t, m) = (p.r as i128, p.t, p.m);
    let core: BTreeSet<Vertex> = hub.core.iter().copied().collect();
    assert_eq!(core.len(), m);
    assert!(core.iter().all(|v| b.contains(v)));
    let mut used = BTreeSet::new();
    for (&c, set) in hub.colours.iter().zip(&hub.routing) {
        assert!(c >= 1 && (c as usize) <= p.r);
        assert!(set.len() >= t && set.len() <= 80 * p.r * t);
        for &v in set {
            assert!(a.contains(&v) && !x.contains(&v));
            assert!(used.insert(v));
        }
        // H1 with a hand-rolled contracted graph
        let nb = |v: Vertex| -> BTreeSet<Vertex> { b.iter().copied().filter(|&u| g.colour(v, u) == Some(c)).collect() };
        let mut adj = vec![BTreeSet::new(); set.len()];
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                if nb(set[i]).intersection(&nb(set[j])).count() >= m {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        assert!(slow_expander(set.len(), &adj, 0.25, 1.0));
        // H2: 20 r deg ≥ |T_c|
        for &v in &core {
            let d = set.iter().filter(|&&w| g.colour(v, w) == Some(c)).count() as i128;
            assert!(20 * r * d >= set.len() as i128);
        }
    }
    // H3: 2 deg ≤ |S| or 10 r deg_c ≥ |S|
    for &v in x {
        let d = core.iter().filter(|&&u| g.has_edge(v, u)).count();
        let rich = hub.colours.iter().any(|&c| {
            10 * r * core.iter().filter(|&&u| g.colour(v, u) == Some(c)).count() as i128 >= m as i128
        });
        assert!(2 * d <= m || rich);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn verify_hub_is_sound(seed in any::<u64>()) {
        let (g, a, b, x, hub, p) = random_instance(seed);
        let report = verify_hub(&g, &a, &b, &x, &hub, &p).unwrap();
        if report.is_ok() {
            recheck(&g, &a, &b, &x, &hub, &p);
        }
    }

    #[test]
    fn search_returns_verified_hubs(seed in any::<u64>()) {
        let (g, a, b, _, _, p) = random_instance(seed);
        if let Some(found) = hub_search_heuristic(&g, &a, &b, &p, &Budget::nodes(100_000)).unwrap().solved().flatten() {
            recheck(&g, &a, &b, &found.covered, &found.hub, &p);
            prop_assert_eq!(found.excluded, a.len() - found.covered.len());
        }
    }
}

/// Linked family meeting the minimum-degree lemma's hypotheses: `B` is the
/// union of `ℓ` cores of size `m`, each hub has one singleton routing set in
/// colour 1, and every `x ∈ X` misses at most `δ|B|` vertices of `B`.
fn lemma_instance(seed: u64) -> (ColouredGraph, Vec<Vertex>, Vec<Vertex>, Vec<Vertex>, LinkedHubFamily, HubParams, Rational) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, m, r) = (4usize, 10usize, 2usize);
    let n = l * m;
    let delta = ratio(1, 4);
    let nx = rng.random_range(1..=10usize);
    let na = l + nx;
    let a: Vec<Vertex> = (0..na).collect();
    let b: Vec<Vertex> = (na..na + n).collect();
    let cores: Vec<Vec<Vertex>> = (0..l).map(|i| b[i * m..(i + 1) * m].to_vec()).collect();
    let mut edges = Vec::new();
    let mut hubs = Vec::new();
    for (i, core) in cores.iter().enumerate() {
        edges.extend(core.iter().map(|&u| (i, u, 1)));
        hubs.push(ConnectingHub { colours: vec![1], core: core.clone(), routing: vec![vec![i]] });
    }
    let x: Vec<Vertex> = (l..na).collect();
    for &v in &x {
        let missing: BTreeSet<Vertex> = (0..rng.random_range(0..=n / 4)).map(|_| b[rng.random_range(0..n)]).collect();
        for (j, &u) in b.iter().enumerate() {
            if !missing.contains(&u) {
                // colour 2 only on the last vertex of each core, so colour 1 stays rich
                let c = if j % m == m - 1 && rng.random_bool(0.5) { 2 } else { 1 };
                edges.push((v, u, c));
            }
        }
    }
    let g = ColouredGraph::from_edges(na + n, r, edges).unwrap();
    (g, a, b, x, LinkedHubFamily { hubs }, HubParams::new(r, 1, m, ratio(1, 4)).unwrap(), delta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplified_graph_lemma(seed in any::<u64>()) {
        let (g, a, b, x, family, p, delta) = lemma_instance(seed);
        let report = verify_linked_family(&g, &a, &b, &x, &family, &p).unwrap();
        prop_assert!(report.is_ok(), "{:?}", report);
        for &v in &x {
            prop_assert!(int(g.degree(v) as i128) >= (int(1) - delta) * int(b.len() as i128));
        }
        let s = simplified_graph(&g, &x, &family, &p).unwrap();
        let size = s.graph.n() as i128;
        prop_assert!(int(s.graph.min_degree() as i128) >= (int(1) - int(6) * delta) * int(size));
        for (u, v, c) in s.graph.edges() {
            let (in_x_u, in_x_v) = (u < s.x_len, v < s.x_len);
            prop_assert!(!(in_x_u && in_x_v));
            if in_x_u || in_x_v {
                prop_assert!((c as usize) <= p.r);
            } else {
                prop_assert_eq!(c as usize, p.r + 1);
            }
        }
    }
}

#[test]
fn simplified_graph_without_x_is_a_clique() {
    let (g, _, _, _, family, p, _) = lemma_instance(5);
    let s = simplified_graph(&g, &[], &family, &p).unwrap();
    let k = s.graph.n();
    assert_eq!(s.graph.edge_count(), k * (k - 1) / 2);
}

#[test]
fn link_threshold_is_exact() {
    // r = 1, m = 25: threshold 5/2, so two edges into a core are not enough
    let mut g = ColouredGraph::new(2 + 50, 1).unwrap();
    for u in 2..27 {
        g.add_edge(0, u, 1).unwrap();
    }
    for u in 27..52 {
        g.add_edge(0, u, 1).unwrap();
    }
    for u in [2, 3, 4, 27, 28] {
        g.add_edge(1, u, 1).unwrap();
    }
    let p = HubParams::new(1, 1, 25, ratio(1, 4)).unwrap();
    let hub = |core: Vec<Vertex>| ConnectingHub { colours: vec![], core, routing: vec![] };
    let family = LinkedHubFamily { hubs: vec![hub((2..27).collect()), hub((27..52).collect())] };
    assert_eq!(c_links(&g, &[0, 1], &family, 0, 1, 1, &p).unwrap(), vec![0]);
}

#[test]
fn random_instances_cover_both_verdicts() {
    let verdicts: Vec<bool> = (0..300)
        .map(|seed| {
            let (g, a, b, x, hub, p) = random_instance(seed);
            verify_hub(&g, &a, &b, &x, &hub, &p).unwrap().is_ok()
        })
        .collect();
    let accepted = verdicts.iter().filter(|&&ok| ok).count();
    assert!((20..=280).contains(&accepted), "accepted {accepted} of 300");
}
