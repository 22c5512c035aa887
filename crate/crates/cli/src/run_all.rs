//! `fixtures run-all`: recompute every published example from the bundled
//! data and print one row per check.

use crate::{CliResult, Status};
use pathmetric::circle_maps::{
    check_involution, compatible_density_from_derivative, is_crossing, verify_compatibility, verify_invariance,
    SampledCircleMap, SampledDensity,
};
use pathmetric::metrize::{decide_metrizable, verify_certificate, verify_weights, Verdict};
use pathmetric::minors::{catalog, decide_graph, kn2_family_check, screen_structural, GraphVerdict, MetReason, Rule};
use pathmetric::path_system::{canonical_odd_system, classify_cycle_system, persistent_edges, quotient, CycleClass};
use pathmetric::{fixtures, Graph, Rational, WeightFunction};
use std::time::Instant;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: pathmetric::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn petersen() -> Check {
    let ps = lib(fixtures::system("petersen"))?;
    ensure(ps.is_consistent(), "system inconsistent")?;
    let Verdict::Infeasible(c) = lib(decide_metrizable(&ps, false))? else { return Err("weights found".into()) };
    let g = ps.graph();
    let coef = c.coefficients(g).ok_or("certificate uses non-edges")?;
    let inner = [(5, 7), (5, 8), (6, 8), (6, 9), (7, 9)];
    for (e, k) in coef.iter().enumerate() {
        let want = if inner.contains(&g.edge(e)) { 1 } else { 0 };
        ensure(*k == Rational::from_integer(want.into()), format!("coefficient {k} on edge {:?}", g.edge(e)))?;
    }
    Ok(())
}

fn not_strict(name: &str) -> Check {
    let ps = lib(fixtures::system(name))?;
    ensure(verify_weights(&ps, &WeightFunction::unit(ps.graph()), false), "unit weights do not induce")?;
    let Verdict::Infeasible(c) = lib(decide_metrizable(&ps, true))? else { return Err("strict weights found".into()) };
    ensure(c.forced_edges(ps.graph()).is_empty() && c.multiplier_sum() > Rational::from_integer(0.into()), "not the 0 < 0 form")
}

fn catalog_entries() -> Check {
    for e in lib(catalog())? {
        ensure(verify_certificate(&e.system, &e.certificate), format!("graph {}: bundled certificate", e.id))?;
        let Verdict::Infeasible(c) = lib(decide_metrizable(&e.system, false))? else {
            return Err(format!("graph {}: weights found", e.id));
        };
        let forced: Vec<_> = c.forced_edges(&e.graph).iter().map(|&f| e.graph.edge(f)).collect();
        ensure(forced.contains(&e.forced_edge), format!("graph {}: forced {forced:?}", e.id))?;
    }
    Ok(())
}

fn met_quotient() -> Check {
    let ps = lib(fixtures::system("met_quotient"))?;
    let e = ps.graph().edge_id(0, 1).ok_or("no edge 0-1")?;
    ensure(lib(persistent_edges(&ps))?.contains(&e), "edge 0-1 not persistent")?;
    ensure(!lib(decide_metrizable(&ps, false))?.is_feasible(), "original is induced")?;
    let q = lib(quotient(&ps, &[e]))?;
    ensure(lib(decide_metrizable(&q.system, false))?.is_feasible(), "quotient not induced")
}

fn edge_contraction_a() -> Check {
    let ps = lib(fixtures::system("edge_contraction_a"))?;
    let Verdict::Infeasible(c) = lib(decide_metrizable(&ps, false))? else { return Err("weights found".into()) };
    let g = ps.graph();
    ensure(c.forced_edges(g).iter().any(|&f| g.edge(f) == (2, 3)), "w_{2,3} not forced")?;
    ensure(matches!(decide_graph(g, false), GraphVerdict::NonMetrizable { .. }), "graph not rejected")
}

fn edge_contraction_b() -> Check {
    let g = lib(fixtures::graph("edge_contraction_b"))?;
    match decide_graph(&g, false) {
        GraphVerdict::Metrizable(MetReason::Exhaustive { .. }) | GraphVerdict::StrictlyMetrizable(MetReason::Exhaustive { .. }) => Ok(()),
        v => Err(format!("verdict {}", v.label())),
    }
}

fn small_graphs() -> Check {
    ensure(matches!(decide_graph(&Graph::complete(4), true), GraphVerdict::StrictlyMetrizable(_)), "K4")
}

fn odd_cycles() -> Check {
    for n in [3, 5, 7] {
        let ps = lib(canonical_odd_system(n))?;
        ensure(matches!(lib(classify_cycle_system(&ps))?, CycleClass::Reduced { m, .. } if m == n), format!("C_{n}"))?;
    }
    Ok(())
}

fn kn2() -> Check {
    ensure(lib(kn2_family_check(2))? == (true, true), "K_{2,2}")?;
    ensure(lib(kn2_family_check(4))? == (true, false), "K_{2,4}")
}

fn screens() -> Check {
    ensure(lib(screen_structural(&Graph::complete(7)))? == Some(Rule::A), "K7")?;
    ensure(lib(screen_structural(&Graph::petersen()))? == Some(Rule::C), "Petersen")
}

fn circle() -> Check {
    let t = SampledCircleMap::antipodal(1024);
    let u = SampledDensity::uniform(1024);
    ensure(lib(is_crossing(&t))?.crossing && check_involution(&t, 1e-9), "antipodal map")?;
    ensure(lib(verify_compatibility(&t, &u, 1e-6))? && lib(verify_invariance(&t, &u, 1e-6))?, "uniform density")?;
    let m = lib(fixtures::circle_map("mobius"))?;
    let d = lib(compatible_density_from_derivative(&m))?;
    ensure(lib(verify_compatibility(&m, &d, 1e-3))?, "sqrt(T') density")
}

pub fn run_all() -> CliResult<Status> {
    let checks: [(&str, fn() -> Check); 11] = [
        ("Petersen system: certificate on the five inner edges", petersen),
        ("prism system: induced, not strictly (0 < 0)", || not_strict("prism")),
        ("K_{2,4} neighborly system: induced, not strictly", || not_strict("k24")),
        ("eleven catalog systems: certificates and forced edges", catalog_entries),
        ("persistent edge 0-1: quotient becomes induced", met_quotient),
        ("edge contraction (a): w_{2,3} <= 0", edge_contraction_a),
        ("edge contraction (b): metrizable by enumeration", edge_contraction_b),
        ("K_4 strictly metrizable", small_graphs),
        ("odd cycles: shorter-arc systems are reduced", odd_cycles),
        ("K_{2,n}: n = 2 strict, n = 4 not strict", kn2),
        ("screens: K_7 rule (a), Petersen rule (c)", screens),
    ];
    let mut all = true;
    let mut rows: Vec<(&str, Check, f64)> = Vec::new();
    for (name, f) in checks {
        let t = Instant::now();
        let r = f();
        rows.push((name, r, t.elapsed().as_secs_f64()));
    }
    let t = Instant::now();
    let r = circle();
    rows.push(("circle: antipodal map, uniform and sqrt(T') densities", r, t.elapsed().as_secs_f64()));
    for (name, r, secs) in &rows {
        match r {
            Ok(()) => println!("PASS  {secs:8.3}s  {name}"),
            Err(msg) => {
                all = false;
                println!("FAIL  {secs:8.3}s  {name}: {msg}");
            }
        }
    }
    Ok(if all { Status::Ok } else { Status::Negative })
}
