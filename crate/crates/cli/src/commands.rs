use std::collections::BTreeSet;

use chroma_core::constructions::{
    build_hrtm, hypergraph_to_graph, lower_bound_instance, star_instance, Branch, HrtmSpec,
};
use chroma_core::cycles::MAX_ALPHA_VERTICES;
use chroma_core::hub::HubDocument;
use chroma_core::kit::{
    barbell_b_matching, cherry_cover, greedy_connected_matching_cover, triangle_b_matching, triangle_packing,
    Barbell, DemandFunction, PackingMode,
};
use chroma_core::rational::{format_rational, int, parse_rational};
use chroma_core::{
    bipartite_cycle_cover, evaluate_bounds, exact_cycle_partition, exact_transversal, greedy_degree_transversal,
    hub_search_heuristic, independence_number, posa_cycle_cover, random_coloured_graph, signature_cover,
    simplified_graph, tree_cover, verify_certificate, verify_hub, verify_linked_family, BoundReport, Certificate,
    Colour, ColouredGraph, CoverMode, DegenerateCycle, DeltaValue, HubParams, HubReport, IntraColourRule,
    LinkedHubFamily, Outcome, Rational, VerificationReport, Vertex,
};
use serde_json::json;

use crate::args::*;
use crate::io::{self, read_graph, read_hypergraph, read_json, vertex_list};
use crate::{CliError, ReportBundle, Verdict, EXIT_VERIFIED};

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::usage(format!("--{name}: {e}")))
}

fn delta_arg(text: &str) -> Result<DeltaValue, CliError> {
    DeltaValue::parse(text).map_err(|e| CliError::usage(format!("--delta: {e}")))
}

fn rule(intra_seed: Option<u64>) -> IntraColourRule {
    intra_seed.map_or(IntraColourRule::Fixed(1), IntraColourRule::Seeded)
}

fn graph_digest(g: &ColouredGraph) -> String {
    io::digest(g.to_json_string().as_bytes())
}

fn bound_report(r: usize, p: &BoundParams) -> Result<Option<BoundReport>, CliError> {
    match &p.delta {
        None => Ok(None),
        Some(d) => Ok(Some(evaluate_bounds(r, &delta_arg(d)?, &rational_arg("k", &p.k)?, &rational_arg("big-k", &p.big_k)?)?)),
    }
}

fn absorb(verdict: &mut Verdict, report: &VerificationReport) {
    for v in &report.violations {
        verdict.violations.push(format!("{}: {}", v.kind.label(), v.detail));
    }
}

fn absorb_hub(verdict: &mut Verdict, report: &HubReport) {
    for v in &report.violations {
        verdict.violations.push(format!("{}: {}", v.kind.label(), v.detail));
    }
    verdict.undecided.extend(report.undecided.iter().cloned());
}

fn emit_instance(out: &OutArgs, instance: String, trace: serde_json::Value) -> Result<u8, CliError> {
    io::emit(out.output.as_deref(), &(instance + "\n"))?;
    if let Some(path) = &out.trace {
        io::emit(Some(path), &io::pretty(&trace))?;
    }
    Ok(EXIT_VERIFIED)
}

pub fn gen(cmd: GenCommand) -> Result<u8, CliError> {
    let config = serde_json::to_value(&cmd).expect("config serializes");
    match cmd {
        GenCommand::Hrtm { r, t, m, reduce, out } => {
            let spec = HrtmSpec::new(r, t, m)?;
            let h = build_hrtm(&spec)?;
            let summary = json!({
                "edge_count": spec.edge_count(),
                "vertex_count": spec.vertex_count(),
                "transversal_number": spec.transversal_number(),
            });
            if reduce {
                let (g, trace) = hypergraph_to_graph(&h)?;
                let trace = json!({"config": config, "spec": spec, "closed_form": summary, "reduction": trace});
                emit_instance(&out, g.to_json_string(), trace)
            } else {
                emit_instance(&out, h.to_json_string(), json!({"config": config, "spec": spec, "closed_form": summary}))
            }
        }
        GenCommand::LowerBound { r, delta, n, branch, intra_seed, out } => {
            let branch = branch.map(|b| match b {
                BranchArg::Star => Branch::Star,
                BranchArg::Matching => Branch::Matching,
                BranchArg::Hypergraph => Branch::Hypergraph,
            });
            let inst = lower_bound_instance(r, &delta_arg(&delta)?, n, branch, rule(intra_seed))?;
            let trace = json!({
                "config": config,
                "branch": inst.branch,
                "blob": inst.blob,
                "hrtm": inst.hrtm,
                "expected_tc": inst.expected_tc,
                "source": inst.source.as_ref().map(|h| h.to_json_value()),
                "base": inst.base.as_ref().map(|g| g.to_json_value()),
            });
            emit_instance(&out, inst.graph.to_json_string(), trace)
        }
        GenCommand::Star { r, n, intra_seed, out } => {
            let g = star_instance(r, n, rule(intra_seed))?;
            emit_instance(&out, g.to_json_string(), json!({"config": config, "expected_tc": r}))
        }
        GenCommand::Random { n, r, p, seed, out } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::usage(format!("--p {p} outside [0, 1]")));
            }
            let g = random_coloured_graph(n, r, p, seed);
            emit_instance(&out, g.to_json_string(), json!({"config": config}))
        }
    }
}

pub fn tc(a: TcArgs) -> Result<u8, CliError> {
    let g = read_graph(&a.io.input)?;
    let mut bundle = ReportBundle::new("tc", &a);
    bundle.instance_digest = Some(graph_digest(&g));
    bundle.bounds = bound_report(g.r(), &a.bounds)?;
    let (mode, delta) = if a.greedy {
        let d = a.bounds.delta.as_deref().ok_or_else(|| CliError::usage("--greedy needs --delta"))?;
        (CoverMode::Greedy, rational_arg("delta", d)?)
    } else {
        (CoverMode::Exact, int(0))
    };
    let budget = io::budget(&a.budget);
    match tree_cover(&g, mode, &delta, &budget)? {
        Outcome::Solved(cert) => {
            bundle.result = json!({"mode": mode, "size": cert.size(), "n": g.n(), "r": g.r()});
            let cert = Certificate::TreeCover(cert);
            absorb(&mut bundle.verdict, &verify_certificate(&g, &cert));
            bundle.certificate = Some(cert);
        }
        Outcome::Unknown { nodes } => {
            bundle.result = json!({"mode": mode, "nodes": nodes});
            bundle.verdict.unknown(format!("budget exhausted after {nodes} nodes"));
        }
    }
    bundle.write(a.io.output.as_deref())
}

pub fn cp(a: CpArgs) -> Result<u8, CliError> {
    let g = read_graph(&a.io.input)?;
    let mut bundle = ReportBundle::new("cp", &a);
    bundle.instance_digest = Some(graph_digest(&g));
    bundle.bounds = bound_report(g.r(), &a.bounds)?;
    match exact_cycle_partition(&g, &io::budget(&a.budget))? {
        Outcome::Solved(cert) => {
            bundle.result = json!({"mode": "exact", "size": cert.size(), "n": g.n(), "r": g.r()});
            let cert = Certificate::CyclePartition(cert);
            absorb(&mut bundle.verdict, &verify_certificate(&g, &cert));
            bundle.certificate = Some(cert);
        }
        Outcome::Unknown { nodes } => {
            bundle.result = json!({"mode": "exact", "nodes": nodes});
            bundle.verdict.unknown(format!("budget exhausted after {nodes} nodes"));
        }
    }
    bundle.write(a.io.output.as_deref())
}

pub fn transversal(a: TransversalArgs) -> Result<u8, CliError> {
    let h = read_hypergraph(&a.io.input)?;
    let mut bundle = ReportBundle::new("transversal", &a);
    bundle.instance_digest = Some(io::digest(h.to_json_string().as_bytes()));
    if a.greedy {
        let d = a.delta.as_deref().ok_or_else(|| CliError::usage("--greedy needs --delta"))?;
        let r = a
            .r
            .or_else(|| h.parts().map(<[_]>::len))
            .or_else(|| h.edges().iter().map(|e| e.members.len()).max())
            .unwrap_or(1);
        let g = greedy_degree_transversal(&h, &rational_arg("delta", d)?, r)?;
        bundle.verdict.check(h.is_transversal(&g.transversal.vertices), || "greedy set misses an edge".into());
        if g.within_bound == Some(false) {
            bundle.verdict.violations.push(format!(
                "size {} exceeds 2r²/ln(1/δ) = {}",
                g.transversal.size(),
                g.bound.unwrap_or(f64::NAN)
            ));
        }
        bundle.result = json!({
            "mode": "greedy",
            "r": r,
            "size": g.transversal.size(),
            "vertices": g.transversal.vertices,
            "labels": g.transversal.labels,
            "threshold": format_rational(&g.threshold),
            "bound": g.bound,
        });
    } else {
        match exact_transversal(&h, &io::budget(&a.budget)) {
            Outcome::Solved(t) => {
                bundle.verdict.check(h.is_transversal(&t.vertices), || "returned set misses an edge".into());
                bundle.result =
                    json!({"mode": "exact", "size": t.size(), "vertices": t.vertices, "labels": t.labels});
            }
            Outcome::Unknown { nodes } => {
                bundle.result = json!({"mode": "exact", "nodes": nodes});
                bundle.verdict.unknown(format!("budget exhausted after {nodes} nodes"));
            }
        }
    }
    bundle.write(a.io.output.as_deref())
}

/// The graph with every edge in colour 1 and the cycles restated in that colour.
fn colour_blind(g: &ColouredGraph, cycles: &[DegenerateCycle]) -> (ColouredGraph, Vec<DegenerateCycle>) {
    let mono = ColouredGraph::from_edges(g.n(), 1, g.edges().into_iter().map(|(u, v, _)| (u, v, 1)))
        .expect("recolouring keeps the graph simple");
    let cycles = cycles.iter().map(|c| DegenerateCycle::new(c.vertices.clone(), Some(1))).collect();
    (mono, cycles)
}

fn monochromatic(cycles: &[DegenerateCycle]) -> bool {
    cycles.iter().all(|c| c.vertices.len() < 2 || c.colour.is_some())
}

/// Attaches a cycle-cover certificate when every cycle is monochromatic,
/// otherwise checks the cycles in the colour-blind graph.
fn cycle_verdict(bundle: &mut ReportBundle, g: &ColouredGraph, target: Vec<Vertex>, cycles: Vec<DegenerateCycle>) {
    if monochromatic(&cycles) {
        let cert = Certificate::CycleCover { target, cycles };
        absorb(&mut bundle.verdict, &verify_certificate(g, &cert));
        bundle.certificate = Some(cert);
    } else {
        let (mono, recoloured) = colour_blind(g, &cycles);
        let cert = Certificate::CycleCover { target, cycles: recoloured };
        absorb(&mut bundle.verdict, &verify_certificate(&mono, &cert));
    }
}

pub fn cover(cmd: CoverCommand) -> Result<u8, CliError> {
    match &cmd {
        CoverCommand::Bipartite { io: files, classes, k, colours, budget } => {
            let g = read_graph(&files.input)?;
            let (a, b) = (vertex_list(&classes.a)?, vertex_list(&classes.b)?);
            let mut bundle = ReportBundle::new("cover bipartite", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let colours: Vec<Colour> = colours.clone();
            let cycles = bipartite_cycle_cover(&g, &a, &b, *k, &colours, &io::budget(budget))?;
            bundle.verdict.check(cycles.len() <= 2 * k, || format!("{} cycles exceed 2k = {}", cycles.len(), 2 * k));
            bundle.result = json!({
                "count": cycles.len(),
                "monochromatic": monochromatic(&cycles),
                "cycles": cycles,
            });
            cycle_verdict(&mut bundle, &g, a, cycles);
            bundle.write(files.output.as_deref())
        }
        CoverCommand::Signature { io: files, classes, delta, big_k } => {
            let g = read_graph(&files.input)?;
            let (a, b) = (vertex_list(&classes.a)?, vertex_list(&classes.b)?);
            let delta = rational_arg("delta", delta)?;
            let mut bundle = ReportBundle::new("cover signature", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let sc = signature_cover(&g, &a, &b, &delta, *big_k)?;
            let count = sc.cycles.len() as u64;
            bundle.verdict.check(count <= sc.bound, || format!("{count} cycles exceed the bound {}", sc.bound));
            for (i, s) in sc.steps.iter().enumerate() {
                let ok = int(s.live_after as i128) <= int(2) * delta * int(s.live_before as i128);
                bundle.verdict.check(ok, || {
                    format!("step {i}: {} live vertices left of {}, above 2δ times", s.live_after, s.live_before)
                });
            }
            bundle.result = json!({"count": count, "bound": sc.bound, "b_prime": sc.b_prime, "steps": sc.steps});
            cycle_verdict(&mut bundle, &g, a, sc.cycles);
            bundle.write(files.output.as_deref())
        }
        CoverCommand::Posa { io: files, budget } => {
            let g = read_graph(&files.input)?;
            let mut bundle = ReportBundle::new("cover posa", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let simple = g.uncoloured();
            let cycles = posa_cycle_cover(&simple);
            let alpha = if g.n() <= MAX_ALPHA_VERTICES {
                match independence_number(&simple, &io::budget(budget))? {
                    Outcome::Solved(s) => Some(s.size),
                    Outcome::Unknown { nodes } => {
                        bundle.verdict.unknown(format!("α undecided after {nodes} nodes"));
                        None
                    }
                }
            } else {
                bundle.verdict.unknown(format!("α not computed above {MAX_ALPHA_VERTICES} vertices"));
                None
            };
            if let Some(alpha) = alpha {
                bundle.verdict.check(cycles.len() <= alpha, || format!("{} cycles exceed α = {alpha}", cycles.len()));
            }
            bundle.result = json!({"count": cycles.len(), "alpha": alpha, "cycles": cycles});
            let (mono, recoloured) = colour_blind(&g, &cycles);
            let cert = Certificate::CycleCover { target: (0..g.n()).collect(), cycles: recoloured };
            absorb(&mut bundle.verdict, &verify_certificate(&mono, &cert));
            bundle.write(files.output.as_deref())
        }
    }
}

fn shape_graph(shape: Shape) -> (ColouredGraph, Option<Barbell>) {
    match shape {
        Shape::Triangle => (ColouredGraph::from_edges(3, 1, [(0, 1, 1), (0, 2, 1), (1, 2, 1)]).expect("triangle"), None),
        Shape::Barbell => {
            let bb = Barbell { left: [0, 1, 2], right: [3, 4, 5], bridge: 6 };
            let edges = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 6), (3, 6)];
            let g = ColouredGraph::from_edges(7, 1, edges.iter().map(|&(u, v)| (u, v, 1))).expect("barbell");
            (g, Some(bb))
        }
    }
}

pub fn kit(cmd: KitCommand) -> Result<u8, CliError> {
    match &cmd {
        KitCommand::Bmatch { shape, n, demands, output } => {
            let (g, bb) = shape_graph(*shape);
            if demands.len() != g.n() {
                return Err(CliError::usage(format!("--demands needs {} values, got {}", g.n(), demands.len())));
            }
            let b = DemandFunction::new(*n, demands.iter().copied().enumerate());
            let m = match &bb {
                None => triangle_b_matching([0, 1, 2], &b)?,
                Some(bb) => barbell_b_matching(bb, &b)?,
            };
            let mut bundle = ReportBundle::new("kit bmatch", &cmd);
            for (v, &want) in demands.iter().enumerate() {
                let load = m.load(v);
                bundle.verdict.check(load == want, || format!("vertex {v}: load {load}, demand {want}"));
            }
            for (&(u, v), &w) in &m.weights {
                bundle.verdict.check(g.has_edge(u, v), || format!("weight on non-edge {{{u}, {v}}}"));
                bundle.verdict.check(10 * w >= *n, || format!("ω({u}{v}) = {w} below n/10"));
            }
            bundle.result = json!({"shape": shape, "n": n, "weights": m});
            bundle.write(output.as_deref())
        }
        KitCommand::Triangles { io: files, greedy, budget } => {
            let g = read_graph(&files.input)?;
            let mut bundle = ReportBundle::new("kit triangles", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let mode = if *greedy { PackingMode::Greedy } else { PackingMode::Exact };
            match triangle_packing(&g.uncoloured(), mode, &io::budget(budget))? {
                Outcome::Solved(tris) => {
                    let mut seen = BTreeSet::new();
                    for t in &tris {
                        for (u, v) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                            bundle.verdict.check(g.has_edge(u, v), || format!("triangle {t:?}: {{{u}, {v}}} missing"));
                        }
                        for &v in t {
                            bundle.verdict.check(seen.insert(v), || format!("vertex {v} in two triangles"));
                        }
                    }
                    bundle.result = json!({"mode": mode, "count": tris.len(), "triangles": tris});
                }
                Outcome::Unknown { nodes } => {
                    bundle.result = json!({"mode": mode, "nodes": nodes});
                    bundle.verdict.unknown(format!("budget exhausted after {nodes} nodes"));
                }
            }
            bundle.write(files.output.as_deref())
        }
        KitCommand::Cherries { io: files, classes, delta, budget } => {
            let g = read_graph(&files.input)?;
            let (a, b) = (vertex_list(&classes.a)?, vertex_list(&classes.b)?);
            let delta = rational_arg("delta", delta)?;
            let mut bundle = ReportBundle::new("kit cherries", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            match cherry_cover(&g, &a, &b, &delta, &io::budget(budget))? {
                Outcome::Solved(cover) => {
                    let labels: Vec<Vec<usize>> = (1..=g.r() as Colour).map(|c| g.colour_labels(c)).collect();
                    let audit: BTreeSet<(Colour, usize)> = cover
                        .cherries
                        .iter()
                        .filter(|ch| (ch.colour as usize) >= 1 && (ch.colour as usize) <= g.r() && ch.centre < g.n())
                        .map(|ch| (ch.colour, labels[ch.colour as usize - 1][ch.centre]))
                        .collect();
                    bundle.verdict.check(audit.len() == cover.components, || {
                        format!("{} components touched, {} logged", audit.len(), cover.components)
                    });
                    bundle.result = json!({
                        "case": cover.case,
                        "count": cover.cherries.len(),
                        "components": cover.components,
                        "ceiling": cover.ceiling,
                        "rounds": cover.rounds,
                    });
                    let cert = Certificate::CherryCover { target: a, cherries: cover.cherries };
                    absorb(&mut bundle.verdict, &verify_certificate(&g, &cert));
                    bundle.certificate = Some(cert);
                }
                Outcome::Unknown { nodes } => {
                    bundle.result = json!({"nodes": nodes});
                    bundle.verdict.unknown(format!("budget exhausted after {nodes} nodes"));
                }
            }
            bundle.write(files.output.as_deref())
        }
        KitCommand::Matchings { io: files, stop } => {
            let g = read_graph(&files.input)?;
            let stop = rational_arg("stop", stop)?;
            if stop < int(0) || stop > int(1) {
                return Err(CliError::usage("--stop must lie in [0, 1]"));
            }
            let mut bundle = ReportBundle::new("kit matchings", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let cover = greedy_connected_matching_cover(&g, &stop);
            let left = cover.uncovered.len();
            let limit = stop * int(g.n() as i128);
            bundle.result = json!({
                "count": cover.matchings.len(),
                "reached_stop": int(left as i128) <= limit,
                "uncovered": cover.uncovered,
                "rounds": cover.rounds,
            });
            let cert = Certificate::MatchingCover { matchings: cover.matchings };
            absorb(&mut bundle.verdict, &verify_certificate(&g, &cert));
            bundle.certificate = Some(cert);
            bundle.write(files.output.as_deref())
        }
    }
}

pub fn hub(cmd: HubCommand) -> Result<u8, CliError> {
    match &cmd {
        HubCommand::Verify(input) => {
            let g = read_graph(&input.io.input)?;
            let doc: HubDocument = read_json(&input.hub)?;
            let mut bundle = ReportBundle::new("hub verify", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let report = match doc.hubs.as_slice() {
                [] => return Err(CliError::usage("hub document lists no hubs")),
                [one] => verify_hub(&g, &doc.a, &doc.b, &doc.x, one, &doc.params)?,
                _ => {
                    let family = LinkedHubFamily { hubs: doc.hubs.clone() };
                    verify_linked_family(&g, &doc.a, &doc.b, &doc.x, &family, &doc.params)?
                }
            };
            absorb_hub(&mut bundle.verdict, &report);
            bundle.result = json!({"hubs": doc.hubs.len(), "report": report});
            bundle.write(input.io.output.as_deref())
        }
        HubCommand::Search { io: files, classes, t, m, eps, budget } => {
            let g = read_graph(&files.input)?;
            let (a, b) = (vertex_list(&classes.a)?, vertex_list(&classes.b)?);
            let params = HubParams::new(g.r(), *t, *m, rational_arg("eps", eps)?)?;
            let mut bundle = ReportBundle::new("hub search", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            match hub_search_heuristic(&g, &a, &b, &params, &io::budget(budget))? {
                Outcome::Solved(Some(found)) => {
                    let report = verify_hub(&g, &a, &b, &found.covered, &found.hub, &params)?;
                    absorb_hub(&mut bundle.verdict, &report);
                    let doc = HubDocument { params, a, b, x: found.covered, hubs: vec![found.hub] };
                    bundle.result = json!({"found": true, "excluded": found.excluded, "document": doc});
                }
                Outcome::Solved(None) => {
                    bundle.result = json!({"found": false});
                    bundle.verdict.unknown("no hub found");
                }
                Outcome::Unknown { nodes } => {
                    bundle.result = json!({"found": false, "nodes": nodes});
                    bundle.verdict.unknown(format!("budget exhausted after {nodes} nodes"));
                }
            }
            bundle.write(files.output.as_deref())
        }
        HubCommand::Simplify(input) => {
            let g = read_graph(&input.io.input)?;
            let doc: HubDocument = read_json(&input.hub)?;
            let mut bundle = ReportBundle::new("hub simplify", &cmd);
            bundle.instance_digest = Some(graph_digest(&g));
            let family = LinkedHubFamily { hubs: doc.hubs.clone() };
            let s = simplified_graph(&g, &doc.x, &family, &doc.params)?;
            let cores = s.vertices.len() - s.x_len;
            bundle.verdict.check(s.graph.r() == doc.params.r + 1, || "simplified graph must use r + 1 colours".into());
            bundle.result = json!({"vertices": s.vertices, "x_len": s.x_len, "core_vertices": cores, "graph": s.graph});
            bundle.write(input.io.output.as_deref())
        }
    }
}

/// Number of pieces a certificate claims.
fn certificate_size(cert: &Certificate) -> usize {
    match cert {
        Certificate::TreeCover(c) => c.trees.len(),
        Certificate::CyclePartition(c) => c.cycles.len(),
        Certificate::CycleCover { cycles, .. } => cycles.len(),
        Certificate::CherryCover { cherries, .. } => cherries.len(),
        Certificate::MatchingCover { matchings } => matchings.len(),
    }
}

pub fn verify(a: VerifyArgs) -> Result<u8, CliError> {
    let g = read_graph(&a.io.input)?;
    let value: serde_json::Value = read_json(&a.certificate)?;
    let (cert_value, claimed) = match value.get("certificate") {
        Some(c) if c.is_object() => {
            let claimed = value.pointer("/result/size").or_else(|| value.pointer("/result/count")).and_then(|v| v.as_u64());
            (c.clone(), claimed)
        }
        Some(_) => return Err(CliError::usage("bundle carries no certificate")),
        None => (value, None),
    };
    let cert: Certificate =
        serde_json::from_value(cert_value).map_err(|e| CliError::usage(format!("certificate: {e}")))?;
    let mut bundle = ReportBundle::new("verify", &a);
    bundle.instance_digest = Some(graph_digest(&g));
    let report = verify_certificate(&g, &cert);
    absorb(&mut bundle.verdict, &report);
    let size = certificate_size(&cert);
    if let Some(claimed) = claimed {
        bundle.verdict.check(claimed == size as u64, || format!("bundle claims size {claimed}, certificate has {size}"));
    }
    bundle.result = json!({"size": size, "claimed": claimed, "violations": report.violations.len()});
    bundle.write(a.io.output.as_deref())
}

pub fn bounds(a: BoundsArgs) -> Result<u8, CliError> {
    let report = evaluate_bounds(a.r, &delta_arg(&a.delta)?, &rational_arg("k", &a.k)?, &rational_arg("big-k", &a.big_k)?)?;
    let mut bundle = ReportBundle::new("bounds", &a);
    let ok = |v: Option<f64>| v.is_none_or(f64::is_finite);
    let values = [report.cp_lower, report.cp_upper, report.tc_lower, report.tc_upper];
    bundle.verdict.check(values.iter().all(|v| ok(v.value())), || "non-finite bound".into());
    bundle.result = json!({"log_inverse_delta": report.log_inverse_delta});
    bundle.bounds = Some(report);
    bundle.write(a.output.as_deref())
}
