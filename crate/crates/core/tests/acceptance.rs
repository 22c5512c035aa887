//! One PASS/FAIL line per acceptance criterion, with wall time against
//! the allowed budget.

mod common;

use pathmetric::circle_maps::{
    check_involution, compatible_density_from_derivative, is_crossing, mobius_density, verify_compatibility, verify_invariance,
    SampledCircleMap, SampledDensity,
};
use pathmetric::enumerate::enumerate_consistent_systems;
use pathmetric::graph::subdivide_edge;
use pathmetric::metrize::{
    decide_metrizable, metrize_cycle, metrize_outerplanar, perturbation_radius, verify_certificate, verify_weights, Certificate,
    Verdict,
};
use pathmetric::minors::{
    catalog, decide_graph, decide_graph_with, kn2_family_check, screen_catalog, screen_structural, Budget, GraphVerdict, MetReason,
    Rule,
};
use pathmetric::path_system::{
    classify_cycle_system, induce_from_weights, persistent_edges, quotient, system_of_crossing, CrossingFunction, CycleClass,
};
use pathmetric::weights::{int, ratio, Rational};
use pathmetric::{fixtures, Graph, PartialPathSystem, PathSystem, WeightFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    ok.then_some(()).ok_or_else(|| msg.into())
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn infeasible(ps: &PathSystem, strict: bool) -> Result<Certificate, String> {
    match decide_metrizable(ps, strict).map_err(e2s)? {
        Verdict::Infeasible(c) => Ok(c),
        Verdict::Weights(_) => Err("weights found".into()),
    }
}

fn c1_petersen() -> Check {
    let ps = fixtures::system("petersen").map_err(e2s)?;
    ensure(ps.is_consistent(), "inconsistent")?;
    let c = infeasible(&ps, false)?;
    ensure(verify_certificate(&ps, &c), "certificate does not verify")?;
    let g = ps.graph();
    let coef = c.coefficients(g).ok_or("certificate leaves the graph")?;
    // 1-based labels {6,8},{7,9},{8,10},{6,9},{7,10}, shifted to 0-based
    let inner = [(5, 7), (6, 8), (7, 9), (5, 8), (6, 9)];
    for (e, k) in coef.iter().enumerate() {
        let want = int(inner.contains(&g.edge(e)) as i64);
        ensure(*k == want, format!("coefficient {k} on {:?}", g.edge(e)))?;
    }
    Ok("coefficients exactly 1 on the inner pentagram".into())
}

fn c2_not_strict() -> Check {
    let ps = fixtures::system("prism").map_err(e2s)?;
    ensure(verify_weights(&ps, &WeightFunction::unit(ps.graph()), false), "unit weights do not induce")?;
    let c = infeasible(&ps, true)?;
    let coef = c.coefficients(ps.graph()).ok_or("certificate leaves the graph")?;
    ensure(coef.iter().all(|k| *k == int(0)), "coefficient vector is not 0")?;
    ensure(c.multiplier_sum() > int(0) && verify_certificate(&ps, &c), "not a valid 0 < 0 certificate")?;
    Ok(format!("0 < 0 with sum of multipliers {}", c.multiplier_sum()))
}

fn c3_catalog() -> Check {
    let entries = catalog().map_err(e2s)?;
    ensure(entries.len() == 11, format!("{} entries", entries.len()))?;
    for e in entries {
        ensure(e.system.is_consistent(), format!("graph {}: inconsistent", e.id))?;
        ensure(verify_certificate(&e.system, &e.certificate), format!("graph {}: bundled certificate", e.id))?;
        let c = infeasible(&e.system, false).map_err(|m| format!("graph {}: {m}", e.id))?;
        let forced: Vec<_> = c.forced_edges(&e.graph).iter().map(|&f| e.graph.edge(f)).collect();
        ensure(forced.contains(&e.forced_edge), format!("graph {}: forced {forced:?}", e.id))?;
    }
    Ok("11 systems infeasible, stated edges forced".into())
}

fn c4_small_graphs() -> Check {
    let budget = Budget { exhaustive: true, ..Budget::default() };
    let (mut graphs, mut systems) = (0, 0);
    for n in 1..=4 {
        for g in common::connected_graphs(n) {
            match decide_graph_with(&g, true, budget) {
                GraphVerdict::StrictlyMetrizable(_) => {}
                v => return Err(format!("{g:?}: {}", v.label())),
            }
            for ps in enumerate_consistent_systems(&g, None).map_err(e2s)? {
                match decide_metrizable(&ps, true).map_err(e2s)? {
                    Verdict::Weights(w) if verify_weights(&ps, &w, true) => systems += 1,
                    _ => return Err(format!("{g:?}: system not strictly induced\n{ps}")),
                }
            }
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs, {systems} systems, all strict"))
}

fn c5_met_quotient() -> Check {
    let ps = fixtures::system("met_quotient").map_err(e2s)?;
    let e = ps.graph().edge_id(0, 1).ok_or("no edge {1,2}")?;
    ensure(persistent_edges(&ps).map_err(e2s)?.contains(&e), "{1,2} not persistent")?;
    infeasible(&ps, false)?;
    let q = quotient(&ps, &[e]).map_err(e2s)?;
    match decide_metrizable(&q.system, false).map_err(e2s)? {
        Verdict::Weights(w) if verify_weights(&q.system, &w, false) => Ok("original infeasible, quotient induced".into()),
        _ => Err("quotient not induced".into()),
    }
}

fn c6_edge_contraction() -> Check {
    let ps = fixtures::system("edge_contraction_a").map_err(e2s)?;
    let c = infeasible(&ps, false)?;
    let g = ps.graph();
    ensure(c.forced_edges(g).iter().any(|&f| g.edge(f) == (2, 3)), "w_{3,4} not forced")?;
    ensure(matches!(decide_graph(g, false), GraphVerdict::NonMetrizable { .. }), "graph (a) not rejected")?;
    let b = fixtures::graph("edge_contraction_b").map_err(e2s)?;
    match decide_graph(&b, false) {
        GraphVerdict::Metrizable(MetReason::Exhaustive { systems, .. }) => {
            Ok(format!("(a) rejected; (b) metrizable, {systems} systems enumerated"))
        }
        v => Err(format!("graph (b): {}", v.label())),
    }
}

fn c7_cycles() -> Check {
    let mut total = 0;
    for n in 3..=8 {
        let fs = CrossingFunction::all(n);
        let mut from_f = HashSet::new();
        for f in &fs {
            let ps = system_of_crossing(f).map_err(e2s)?;
            match classify_cycle_system(&ps).map_err(e2s)? {
                CycleClass::Trivial => ensure(f.f.iter().all(|&e| e == f.f[0]), format!("{f:?} called trivial"))?,
                CycleClass::Reduced { m, quotient } => {
                    ensure(m % 2 == 1 && quotient.system.graph().is_cycle(), format!("{f:?}: quotient C_{m}"))?;
                    ensure(persistent_edges(&quotient.system).map_err(e2s)?.is_empty(), format!("{f:?}: quotient not reduced"))?;
                }
            }
            let w = metrize_cycle(&ps, true).map_err(e2s)?;
            ensure(verify_weights(&ps, &w, true), format!("{f:?}: weights not strict"))?;
            from_f.insert(ps.to_string());
        }
        let listed: HashSet<String> =
            enumerate_consistent_systems(&Graph::cycle(n), None).map_err(e2s)?.map(|ps| ps.to_string()).collect();
        ensure(listed == from_f && from_f.len() == fs.len(), format!("C_{n}: enumeration differs"))?;
        total += fs.len();
    }
    Ok(format!("{total} cycle systems for n = 3..8"))
}

fn c8_outerplanar() -> Check {
    let mut total = 0;
    for (n, chord) in [(6, (0, 2)), (6, (0, 3)), (7, (0, 2)), (7, (0, 3))] {
        let g = common::cycle_with(n, &[chord]);
        for ps in enumerate_consistent_systems(&g, None).map_err(e2s)? {
            let w = metrize_outerplanar(&g, &ps, true).map_err(|e| format!("{g:?}: {e}"))?;
            ensure(verify_weights(&ps, &w, true), format!("{g:?}: weights fail\n{ps}"))?;
            ensure(decide_metrizable(&ps, true).map_err(e2s)?.is_feasible(), format!("LP disagrees\n{ps}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} systems on C_6 and C_7 plus a chord"))
}

fn c9_kn2() -> Check {
    ensure(kn2_family_check(2).map_err(e2s)? == (true, true), "K_{2,2}")?;
    ensure(kn2_family_check(4).map_err(e2s)? == (true, false), "K_{2,4}")?;
    let ps = fixtures::system("k24").map_err(e2s)?;
    ensure(ps.is_neighborly() && decide_metrizable(&ps, false).map_err(e2s)?.is_feasible(), "neighborly system not induced")?;
    let c = infeasible(&ps, true)?;
    ensure(verify_certificate(&ps, &c), "strict certificate does not verify")?;
    Ok("K_{2,2} strict; K_{2,4} metrizable, neighborly system not strict".into())
}

fn c10_screens() -> Check {
    ensure(screen_structural(&Graph::complete(7)).map_err(e2s)? == Some(Rule::A), "K_7")?;
    ensure(screen_structural(&Graph::petersen()).map_err(e2s)? == Some(Rule::C), "Petersen")?;
    let mut hits = 0;
    for e in catalog().map_err(e2s)? {
        for &edge in e.graph.edges() {
            let s = subdivide_edge(&e.graph, edge, 1).map_err(e2s)?;
            ensure(screen_catalog(&s).map_err(e2s)?.is_some(), format!("graph {}: {edge:?} subdivided", e.id))?;
            hits += 1;
        }
    }
    Ok(format!("{hits} single subdivisions all hit"))
}

fn c11_circle() -> Check {
    const N: usize = 1024;
    let t = SampledCircleMap::antipodal(N);
    ensure(is_crossing(&t).map_err(e2s)?.crossing && check_involution(&t, 1e-9), "antipodal map")?;
    let u = SampledDensity::uniform(N);
    ensure(verify_compatibility(&t, &u, 1e-6).map_err(e2s)?, "uniform not compatible at 1e-6")?;
    ensure(verify_invariance(&t, &u, 1e-6).map_err(e2s)?, "uniform not invariant at 1e-6")?;
    let mut pairs = 0;
    for name in ["antipodal", "mobius"] {
        let m = fixtures::circle_map(name).map_err(e2s)?;
        let mut ds = vec![fixtures::density("uniform").map_err(e2s)?, fixtures::density("perturbed").map_err(e2s)?];
        ds.push(compatible_density_from_derivative(&m).map_err(e2s)?);
        if name == "mobius" {
            ds.push(SampledDensity::from_fn(N, |x| mobius_density(0.3, x)).map_err(e2s)?);
        }
        for d in ds {
            let c = verify_compatibility(&m, &d, 1e-2).map_err(e2s)?;
            let i = verify_invariance(&m, &d, 1e-2).map_err(e2s)?;
            ensure(c == i, format!("{name}: compatibility {c}, invariance {i}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} smooth map/density pairs agree at 1e-2"))
}

fn c12_properties() -> Check {
    // soundness over the fixtures, the catalog and a seeded random corpus
    let mut corpus: Vec<PathSystem> = fixtures::GRAPHS.iter().filter_map(|n| fixtures::system(n).ok()).collect();
    corpus.extend(catalog().map_err(e2s)?.iter().map(|e| e.system.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 3..=6 {
        for g in common::connected_graphs(n).into_iter().step_by(3) {
            let w = WeightFunction::new(&g, (0..g.m()).map(|_| ratio(rng.gen_range(1..30), rng.gen_range(1..4))).collect())
                .map_err(e2s)?;
            corpus.push(induce_from_weights(&g, &w));
            corpus.extend(enumerate_consistent_systems(&g, Some(5)).map_err(e2s)?);
        }
    }
    let mut bumped = 0;
    for (i, ps) in corpus.iter().enumerate() {
        for strict in [false, true] {
            match decide_metrizable(ps, strict).map_err(e2s)? {
                Verdict::Weights(w) => {
                    ensure(verify_weights(ps, &w, strict), format!("unsound weights\n{ps}"))?;
                    if strict && bumped < 100 {
                        let r = perturbation_radius(ps, &w).map_err(e2s)?;
                        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
                        let vals: Vec<Rational> = w
                            .values()
                            .iter()
                            .map(|x| {
                                let d = &r * ratio(rng.gen_range(-1000..=1000), 1000);
                                if x + &d > int(0) { x + d } else { x - d }
                            })
                            .collect();
                        let b = WeightFunction::new(ps.graph(), vals).map_err(e2s)?;
                        ensure(verify_weights(ps, &b, true), format!("bump {bumped} left the strict region\n{ps}"))?;
                        bumped += 1;
                    }
                }
                Verdict::Infeasible(c) => ensure(verify_certificate(ps, &c), format!("unsound certificate\n{ps}"))?,
            }
        }
        let g = ps.graph();
        ensure(Graph::parse(&g.to_string()).map_err(e2s)? == *g, "graph text round trip")?;
        ensure(PathSystem::parse(&ps.to_string(), g.clone()).map_err(e2s)? == *ps, "system text round trip")?;
        let pps = ps.to_partial();
        ensure(PartialPathSystem::parse(&pps.to_string(), g.clone()).map_err(e2s)? == pps, "partial round trip")?;
        let w = WeightFunction::unit(g);
        ensure(WeightFunction::parse(&w.to_text(g), g).map_err(e2s)? == w, "weights round trip")?;
        if let Verdict::Infeasible(c) = decide_metrizable(ps, true).map_err(e2s)? {
            ensure(Certificate::parse(&c.to_string()).map_err(e2s)? == c, "certificate round trip")?;
        }
    }
    ensure(bumped == 100, format!("only {bumped} strict bumps"))?;
    for name in ["antipodal", "mobius", "step7", "trivial8"] {
        let m = fixtures::circle_map(name).map_err(e2s)?;
        ensure(SampledCircleMap::parse(&m.to_string()).map_err(e2s)? == m, format!("{name} round trip"))?;
    }
    for name in ["uniform", "perturbed", "half"] {
        let d = fixtures::density(name).map_err(e2s)?;
        ensure(SampledDensity::parse(&d.to_string()).map_err(e2s)? == d, format!("{name} round trip"))?;
    }
    Ok(format!("{} systems sound, 100 bumps strict, formats round-trip", corpus.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 12] = [
        ("Petersen certificate", 5, c1_petersen),
        ("induced but not strictly (0 < 0)", 5, c2_not_strict),
        ("catalog certificates and forced edges", 60, c3_catalog),
        ("graphs on <= 4 vertices strictly metrizable", 120, c4_small_graphs),
        ("persistent-edge quotient becomes induced", 10, c5_met_quotient),
        ("edge contraction pair", 1800, c6_edge_contraction),
        ("cycle systems and crossing functions", 120, c7_cycles),
        ("outerplanar construction matches the LP", 600, c8_outerplanar),
        ("K_{2,n} family", 60, c9_kn2),
        ("structural and catalog screens", 60, c10_screens),
        ("circle maps and densities", 30, c11_circle),
        ("soundness, perturbation and round trips", 600, c12_properties),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed();
        let r = match r {
            Ok(msg) if secs > Duration::from_secs(limit) => Err(format!("{msg}, but over the {limit} s limit")),
            r => r,
        };
        match r {
            Ok(msg) => println!("PASS {:>2}  {:8.2}s / {limit:>4}s  {name}: {msg}", i + 1, secs.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2}  {:8.2}s / {limit:>4}s  {name}: {msg}", i + 1, secs.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
