use crate::{emit, load_graph, read, CliError, CliResult, Common, Loaded, Method, Status, SystemArgs};
use pathmetric::circle_maps::{
    chain_rule_defect, compatibility_defect, compatible_density_from_derivative, invariance_defect, involution_defect,
    is_crossing, SampledCircleMap, SampledDensity,
};
use pathmetric::enumerate::Enumerator;
use pathmetric::graph::{biconnected_components, Graph};
use pathmetric::metrize::{
    build_derived_system, decide_detailed, decide_metrizable, lift_suspended_path, metrize_cycle, metrize_outerplanar, min_margin,
    perturbation_radius, verify_certificate, verify_weights, Certificate, Chosen, Split, Verdict,
};
use pathmetric::minors::{decide_graph_with, screen_catalog, screen_structural, Budget, GraphVerdict, MetReason, NonMetReason};
use pathmetric::path_system::{classify_cycle_system, crossing_function_of, persistent_edges, quotient as contract, CycleClass};
use pathmetric::weights::{fmt_rational, Rational};
use pathmetric::{fixtures, Error, PathSystem, WeightFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::Path;

fn edge_name(g: &Graph, e: usize) -> String {
    let (u, v) = g.edge(e);
    format!("w_{{{u},{v}}}")
}

fn weights_json(g: &Graph, w: &WeightFunction) -> Value {
    Value::Array(
        g.edges()
            .iter()
            .zip(w.values())
            .map(|(&(u, v), x)| json!({ "u": u, "v": v, "weight": fmt_rational(x) }))
            .collect(),
    )
}

fn certificate_json(c: &Certificate) -> Value {
    serde_json::to_value(c).expect("json")
}

/// Coefficient summary of a certificate: forced edges or the `0 < 0`
/// form.
fn describe_certificate(g: &Graph, c: &Certificate) -> String {
    let Some(coef) = c.coefficients(g) else { return "certificate uses non-edges".into() };
    let forced = c.forced_edges(g);
    if forced.is_empty() {
        return format!("coefficient vector is 0 with multiplier sum {}: 0 < 0", fmt_rational(&c.multiplier_sum()));
    }
    let terms: Vec<String> = forced
        .iter()
        .map(|&e| {
            let k = &coef[e];
            if *k == Rational::from_integer(1.into()) {
                edge_name(g, e)
            } else {
                format!("{} {}", fmt_rational(k), edge_name(g, e))
            }
        })
        .collect();
    format!("{} {} 0", terms.join(" + "), if c.strict { "<" } else { "<=" })
}

pub fn check_system(common: &Common, sys: &SystemArgs) -> CliResult<Status> {
    let (consistent, detail) = match sys.load()? {
        Loaded::Full(ps) => match ps.check_consistency() {
            Ok(()) => (true, None),
            Err(v) => (false, Some(v)),
        },
        Loaded::Partial(pps) => (pps.is_consistent_partial(), None),
    };
    match &detail {
        Some(v) => println!(
            "inconsistent: the chosen path {:?} runs through {} and {} but differs from the chosen {}-{} path",
            v.path, v.x, v.y, v.x, v.y
        ),
        None => println!("{}", if consistent { "consistent" } else { "inconsistent" }),
    }
    emit(common, || format!("consistent={}\n", consistent as u8), || json!({ "consistent": consistent, "violation": detail }))?;
    Ok(if consistent { Status::Ok } else { Status::Negative })
}

pub fn metrize(common: &Common, sys: &SystemArgs, strict: bool, perturb: Option<usize>, method: Method) -> CliResult<Status> {
    let loaded = sys.load()?;
    if method != Method::Lp {
        let Loaded::Full(ps) = &loaded else {
            return Err(CliError::Usage("constructive methods need a full --system".into()));
        };
        let g = ps.graph();
        let w = match method {
            Method::Outerplanar => metrize_outerplanar(g, ps, strict)?,
            _ => metrize_cycle(ps, strict)?,
        };
        let ok = verify_weights(ps, &w, strict);
        let mode = if strict { "strict" } else { "non-strict" };
        println!("{mode}: {} (constructed)", if ok { "induced" } else { "constructed weights do NOT induce" });
        print!("{}", w.to_text(g));
        emit(common, || w.to_text(g), || json!({ "verdict": "weights", "strict": strict, "weights": weights_json(g, &w) }))?;
        return Ok(if ok { Status::Ok } else { Status::Negative });
    }
    let (ps_dyn, full): (&dyn Chosen, Option<&PathSystem>) = match &loaded {
        Loaded::Full(ps) => (ps, Some(ps)),
        Loaded::Partial(pps) => (pps, None),
    };
    let g = ps_dyn.graph().clone();
    let d = decide_detailed(ps_dyn, strict)?;
    let mode = if strict { "strict" } else { "non-strict" };
    match &d.verdict {
        Verdict::Weights(w) => {
            println!("{mode}: induced (slack {}, {} rounds, {} rows)", fmt_rational(&d.slack), d.rounds, d.rows);
            print!("{}", w.to_text(&g));
            if let Some(k) = perturb {
                let ps = full.ok_or_else(|| CliError::Usage("--perturb needs a full --system".into()))?;
                if !strict {
                    return Err(CliError::Usage("--perturb needs --strict".into()));
                }
                let ok = perturb_check(ps, w, k, common.seed)?;
                println!("{k} random bumps within the perturbation radius: {}", if ok { "all strict" } else { "FAILED" });
                if !ok {
                    return Ok(Status::Negative);
                }
            }
            emit(common, || w.to_text(&g), || json!({ "verdict": "weights", "strict": strict, "weights": weights_json(&g, w) }))?;
        }
        Verdict::Infeasible(c) => {
            println!("{mode}: not induced by any positive weights ({} rounds, {} rows)", d.rounds, d.rows);
            print!("{c}");
            println!("{}", describe_certificate(&g, c));
            emit(common, || c.to_string(), || json!({ "verdict": "infeasible", "certificate": certificate_json(c) }))?;
        }
    }
    Ok(Status::Ok)
}

/// `k` random bumps, each edge raised by a random fraction of the
/// perturbation radius; true when every bumped function stays strict.
pub fn perturb_check(ps: &PathSystem, w: &WeightFunction, k: usize, seed: u64) -> CliResult<bool> {
    let r = perturbation_radius(ps, w)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..k {
        let vals = w
            .values()
            .iter()
            .map(|x| {
                // either direction, flipped when going down would leave zero
                let d = &r * Rational::new(rng.gen_range(-1000..=1000i64).into(), 1000.into());
                if x + &d > Rational::from_integer(0.into()) { x + d } else { x - d }
            })
            .collect();
        let bumped = WeightFunction::new(ps.graph(), vals)?;
        if !verify_weights(ps, &bumped, true) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_cert(common: &Common, sys: &SystemArgs, cert: &Path) -> CliResult<Status> {
    let loaded = sys.load()?;
    let ps: &dyn Chosen = match &loaded {
        Loaded::Full(ps) => ps,
        Loaded::Partial(pps) => pps,
    };
    let c = Certificate::parse(&read(cert)?)?;
    let ok = verify_certificate(ps, &c);
    if ok {
        println!("certificate verifies: {}", describe_certificate(ps.graph(), &c));
    } else {
        println!("certificate does NOT verify");
    }
    emit(common, || format!("valid={}\n", ok as u8), || json!({ "valid": ok }))?;
    Ok(if ok { Status::Ok } else { Status::Negative })
}

pub fn verify_weights_cmd(common: &Common, sys: &SystemArgs, weights: &Path, strict: bool) -> CliResult<Status> {
    let loaded = sys.load()?;
    let ps: &dyn Chosen = match &loaded {
        Loaded::Full(ps) => ps,
        Loaded::Partial(pps) => pps,
    };
    let w = WeightFunction::parse(&read(weights)?, ps.graph())?;
    let ok = verify_weights(ps, &w, strict);
    let margin = min_margin(ps, w.values());
    let m = margin.as_ref().map_or("none".to_string(), fmt_rational);
    println!("{} (minimum margin {m})", if ok { "weights induce the system" } else { "weights do NOT induce the system" });
    emit(common, || format!("valid={}\n", ok as u8), || json!({ "valid": ok, "strict": strict, "min_margin": m }))?;
    Ok(if ok { Status::Ok } else { Status::Negative })
}

pub fn enumerate(common: &Common, graph: &Path, limit: Option<usize>, show: bool, max_vertices: usize) -> CliResult<Status> {
    let g = load_graph(graph)?;
    let en = Enumerator::with_bound(&g, max_vertices)?;
    let want_systems = show || common.out.is_some();
    if !want_systems {
        let count = match limit {
            None => en.count_parallel(common.jobs),
            Some(l) => en.iter().take(l).count() as u64,
        };
        println!("{count} consistent path systems");
        return Ok(Status::Ok);
    }
    let systems = en.collect_parallel(common.jobs, limit);
    println!("{} consistent path systems", systems.len());
    if show {
        for (i, ps) in systems.iter().enumerate() {
            println!("# system {i}");
            print!("{ps}");
        }
    }
    emit(
        common,
        || systems.iter().enumerate().map(|(i, ps)| format!("# system {i}\n{ps}")).collect(),
        || json!({ "count": systems.len(), "systems": systems.iter().map(system_json).collect::<Vec<_>>() }),
    )?;
    Ok(Status::Ok)
}

fn system_json(ps: &PathSystem) -> Value {
    Value::Array(ps.iter().map(|((u, v), p)| json!({ "u": u, "v": v, "path": p })).collect())
}

fn met_summary(r: &MetReason) -> String {
    match r {
        MetReason::Small => "at most 4 vertices".into(),
        MetReason::Outerplanar => "outerplanar".into(),
        MetReason::Exhaustive { systems, not_strict } => match not_strict {
            None => format!("all {systems} consistent systems decided"),
            Some(_) => format!("all {systems} consistent systems induced, one not strictly"),
        },
        MetReason::Blocks(bs) => {
            bs.iter().map(|(v, r)| format!("block {v:?}: {}", met_summary(r))).collect::<Vec<_>>().join("; ")
        }
    }
}

fn explain_met(r: &MetReason) {
    match r {
        MetReason::Exhaustive { not_strict: Some(b), .. } => {
            println!("system induced but not strictly:");
            print!("{}", b.0);
            print!("{}", b.1);
            println!("{}", describe_certificate(b.0.graph(), &b.1));
        }
        MetReason::Blocks(bs) => bs.iter().for_each(|(_, r)| explain_met(r)),
        _ => {}
    }
}

pub fn decide_graph(
    common: &Common,
    graph: &Path,
    strict: bool,
    budget: u64,
    explain: bool,
    exhaustive: bool,
) -> CliResult<Status> {
    let g = load_graph(graph)?;
    let budget = Budget { max_systems: budget, jobs: common.jobs, exhaustive, ..Budget::default() };
    let v = decide_graph_with(&g, strict, budget);
    match &v {
        GraphVerdict::StrictlyMetrizable(r) | GraphVerdict::Metrizable(r) => {
            println!("{} ({})", v.label(), met_summary(r));
            if explain {
                explain_met(r);
            }
        }
        GraphVerdict::NonMetrizable { block, reason } => {
            let why = match reason {
                NonMetReason::Structural(rule) => format!("rule {rule}"),
                NonMetReason::Catalog { entry, .. } => format!("contains a subdivision of catalog graph {entry}"),
                NonMetReason::System(_) => "a consistent system is not induced".into(),
            };
            println!("NonMetrizable (block {block:?}: {why})");
            if explain {
                match reason {
                    NonMetReason::Structural(rule) => println!("rule {}", rule.id()),
                    NonMetReason::Catalog { entry, witness } => {
                        println!("catalog entry {entry}; branch vertices (in block ids) {:?}", witness.branch_map);
                        for p in &witness.path_map {
                            println!("  {p:?}");
                        }
                    }
                    NonMetReason::System(b) => {
                        print!("{}", b.0);
                        print!("{}", b.1);
                        println!("{}", describe_certificate(b.0.graph(), &b.1));
                    }
                }
            }
        }
        GraphVerdict::Unknown(why) => println!("Unknown ({why})"),
    }
    emit(common, || format!("{}\n", v.label()), || serde_json::to_value(&v).expect("json"))?;
    Ok(match v {
        GraphVerdict::Unknown(_) => Status::Unknown,
        _ => Status::Ok,
    })
}

pub fn screen(common: &Common, graph: &Path) -> CliResult<Status> {
    let g = load_graph(graph)?;
    if !g.is_connected() {
        return Err(Error::DisconnectedInput.into());
    }
    let mut report = Vec::new();
    for b in biconnected_components(&g)? {
        if b.graph.n() < 3 {
            continue;
        }
        let rule = screen_structural(&b.graph)?;
        let hit = screen_catalog(&b.graph)?;
        println!(
            "block {:?}: structural {}; catalog {}",
            b.vertices,
            rule.map_or("none".to_string(), |r| r.to_string()),
            hit.as_ref().map_or("none".to_string(), |(id, _)| format!("graph {id}"))
        );
        if let Some((id, w)) = &hit {
            let branch: Vec<usize> = w.branch_map.iter().map(|&v| b.vertices[v]).collect();
            println!("  catalog {id} branch vertices {branch:?}");
        }
        report.push(json!({
            "block": b.vertices,
            "rule": rule.map(|r| r.id().to_string()),
            "catalog": hit.map(|(id, w)| json!({ "entry": id, "witness": w })),
        }));
    }
    emit(common, || serde_json::to_string_pretty(&report).expect("json") + "\n", || Value::Array(report.clone()))?;
    Ok(Status::Ok)
}

pub fn quotient(common: &Common, sys: &SystemArgs, edges: Option<&str>, graph_out: Option<&Path>) -> CliResult<Status> {
    let ps = sys.load_full()?;
    let g = ps.graph();
    let persistent = persistent_edges(&ps)?;
    let pe: Vec<_> = persistent.iter().map(|&e| g.edge(e)).collect();
    println!("persistent edges {pe:?}");
    let chosen = match edges {
        None => persistent,
        Some(text) => text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|pair| {
                let v: Vec<usize> = pair.split_whitespace().map(|t| t.parse()).collect::<Result<_, _>>().map_err(|_| {
                    CliError::Usage(format!("bad edge `{pair}` in --edges"))
                })?;
                match v[..] {
                    [a, b] => Ok(g.require_edge(a, b)?),
                    _ => Err(CliError::Usage(format!("bad edge `{pair}` in --edges"))),
                }
            })
            .collect::<CliResult<_>>()?,
    };
    let q = contract(&ps, &chosen)?;
    println!("quotient on {} vertices, vertex map {:?}", q.system.n(), q.vertex_map);
    print!("{}", q.system);
    if let Some(p) = graph_out {
        std::fs::write(p, q.system.graph().to_string()).map_err(|e| CliError::Io(p.to_path_buf(), e))?;
    }
    emit(
        common,
        || q.system.to_string(),
        || json!({ "persistent": pe, "vertex_map": q.vertex_map, "graph": q.system.graph(), "system": system_json(&q.system) }),
    )?;
    Ok(Status::Ok)
}

pub fn cycle_classify(common: &Common, sys: &SystemArgs) -> CliResult<Status> {
    let ps = sys.load_full()?;
    let g = ps.graph();
    let order = g.cycle_order()?;
    let c = crossing_function_of(&ps)?;
    let n = g.n();
    println!("cycle order {order:?}");
    for (i, &e) in c.f.iter().enumerate() {
        println!("f({}) = {}-{}", order[i], order[e], order[(e + 1) % n]);
    }
    let persistent = persistent_edges(&ps)?;
    let pe: Vec<_> = persistent.iter().map(|&e| g.edge(e)).collect();
    println!("persistent edges {pe:?}");
    let class = classify_cycle_system(&ps)?;
    let label = match &class {
        CycleClass::Trivial => "trivial".to_string(),
        CycleClass::Reduced { m, .. } => format!("reduces to the shorter-arc system on C_{m}"),
    };
    println!("{label}");
    let w = metrize_cycle(&ps, true)?;
    println!("strict weights:");
    print!("{}", w.to_text(g));
    emit(
        common,
        || w.to_text(g),
        || json!({ "crossing_function": c.f, "cycle_order": order, "persistent": pe, "class": label, "weights": weights_json(g, &w) }),
    )?;
    Ok(Status::Ok)
}

pub fn suspended_lift(common: &Common, sys: &SystemArgs, path: &str) -> CliResult<Status> {
    let ps = sys.load_full()?;
    let q: Vec<usize> = path
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("bad vertex {s} in --path"))))
        .collect::<CliResult<_>>()?;
    let g = ps.graph();
    let split = Split::new(g, &q)?;
    let (ph, pc) = (
        ps.restricts_to(&split.h, &split.h_vertices)
            .ok_or_else(|| CliError::Lib(Error::PreconditionViolated("system does not restrict to H".into())))?,
        ps.restricts_to(&split.c, &split.c_vertices)
            .ok_or_else(|| CliError::Lib(Error::PreconditionViolated("system does not restrict to C".into())))?,
    );
    let Verdict::Weights(w_h) = decide_metrizable(&ph, true)? else {
        println!("the restriction to H is not strictly induced; no lift");
        return Ok(Status::Negative);
    };
    let w_c = metrize_cycle(&pc, true)?;
    let w = match build_derived_system(&ps, &q) {
        Err(Error::EmptyFiber) => {
            println!("no vertex of C is cut at xy: gluing H and C");
            lift_suspended_path(&ps, &q, &w_h, &w_c, None)?
        }
        Err(e) => return Err(e.into()),
        Ok(derived) => {
            println!("derived graph on {} vertices, Q' = {:?}", derived.graph.n(), derived.q_prime);
            let Verdict::Weights(wp) = decide_metrizable(&derived.system, true)? else {
                println!("the derived system is not strictly induced; no lift");
                return Ok(Status::Negative);
            };
            lift_suspended_path(&ps, &q, &w_h, &w_c, Some(&wp))?
        }
    };
    let strict = verify_weights(&ps, &w, true);
    println!("lifted weights ({}):", if strict { "strictly inducing" } else { "inducing" });
    print!("{}", w.to_text(g));
    emit(common, || w.to_text(g), || json!({ "strict": strict, "weights": weights_json(g, &w) }))?;
    Ok(Status::Ok)
}

pub fn circle_check(common: &Common, map: &Path, density: Option<&Path>, tol: f64) -> CliResult<Status> {
    let t = SampledCircleMap::parse(&read(map)?)?;
    let n = t.resolution();
    let cr = is_crossing(&t)?;
    let inv = involution_defect(&t);
    println!("resolution {n}");
    match cr.witness {
        None => println!("crossing: yes"),
        Some((x, y)) => println!("crossing: NO (chords at samples {x} and {y} miss)"),
    }
    println!("involution: max |T(T(x)) - x| = {inv:e} ({})", pass(inv <= tol));
    println!("chain rule: max |T'(x) T'(T(x)) - 1| = {:e}", chain_rule_defect(&t));
    let (mu, derived) = match density {
        Some(p) => (Some(SampledDensity::parse(&read(p)?)?), false),
        None => match compatible_density_from_derivative(&t) {
            Ok(d) => (Some(d), true),
            Err(e) => {
                println!("no density from the derivative: {e}");
                (None, false)
            }
        },
    };
    let mut ok = cr.crossing && inv <= tol;
    let mut out = json!({ "resolution": n, "crossing": cr.crossing, "witness": cr.witness, "involution_defect": inv });
    if let Some(mu) = &mu {
        let c = compatibility_defect(&t, mu)?;
        let i = invariance_defect(&t, mu)?;
        let src = if derived { "sqrt(T') density" } else { "given density" };
        println!("{src}: compatibility defect {c:e} ({}), invariance defect {i:e} ({})", pass(c <= tol), pass(i <= tol));
        ok &= c <= tol && i <= tol;
        out["compatibility_defect"] = json!(c);
        out["invariance_defect"] = json!(i);
    } else {
        ok = false;
    }
    emit(
        common,
        || mu.as_ref().map(|m| m.to_string()).unwrap_or_default(),
        || {
            if let Some(m) = &mu {
                out["density"] = json!(m.values());
            }
            out
        },
    )?;
    Ok(if ok { Status::Ok } else { Status::Negative })
}

fn pass(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn fixtures_list() -> CliResult<Status> {
    for name in fixtures::GRAPHS {
        let g = fixtures::graph(name)?;
        println!("{name}: {} vertices, {} edges", g.n(), g.m());
    }
    Ok(Status::Ok)
}

pub fn fixtures_export(dir: &Path) -> CliResult<Status> {
    for f in fixtures::file_names() {
        let p = dir.join(f);
        if let Some(parent) = p.parent() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::Io(parent.to_path_buf(), e))?;
        }
        std::fs::write(&p, fixtures::raw(f)?).map_err(|e| CliError::Io(p.clone(), e))?;
    }
    for e in pathmetric::minors::catalog()? {
        for (ext, body) in [("g", e.graph.to_string()), ("ps", e.system.to_string()), ("cert", e.certificate.to_string())] {
            let p = dir.join(format!("catalog/graph{:02}.{ext}", e.id));
            std::fs::create_dir_all(dir.join("catalog")).map_err(|er| CliError::Io(dir.to_path_buf(), er))?;
            std::fs::write(&p, body).map_err(|er| CliError::Io(p.clone(), er))?;
        }
    }
    println!("wrote bundled fixtures to {}", dir.display());
    Ok(Status::Ok)
}
