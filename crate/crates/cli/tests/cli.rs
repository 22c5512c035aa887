mod common;

use common::{code, fx, run, scratch, stdout, write};
use pathmetric::metrize::{verify_certificate, verify_weights, Certificate};
use pathmetric::{Graph, PathSystem, WeightFunction};

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn load(g: &str, ps: &str) -> PathSystem {
    let g = Graph::parse(&std::fs::read_to_string(g).unwrap()).unwrap();
    PathSystem::parse(&std::fs::read_to_string(ps).unwrap(), g).unwrap()
}

#[test]
fn petersen_certificate_from_the_command_line() {
    let dir = scratch("petersen");
    let out = dir.join("cert.txt");
    let o = run(&["metrize", "--graph", &fx("petersen.g"), "--system", &fx("petersen.ps"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("w_{5,7} + w_{5,8} + w_{6,8} + w_{6,9} + w_{7,9} <= 0"), "{}", stdout(&o));
    let cert = Certificate::parse(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(verify_certificate(&load(&fx("petersen.g"), &fx("petersen.ps")), &cert));
    let o = run(&["verify-cert", "--graph", &fx("petersen.g"), "--system", &fx("petersen.ps"), "--cert", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
}

#[test]
fn corrupted_certificate_is_rejected() {
    let dir = scratch("corrupt");
    let text = std::fs::read_to_string(fx("catalog/graph01.cert")).unwrap();
    let bad = text.replacen("1/1 |", "2/1 |", 1);
    assert_ne!(bad, text);
    let cert = write(&dir, "bad.cert", &bad);
    let o = run(&["verify-cert", "--graph", &fx("catalog/graph01.g"), "--system", &fx("catalog/graph01.ps"), "--cert", &cert]);
    assert_eq!(code(&o), 1);
}

#[test]
fn weights_round_trip_through_files() {
    let dir = scratch("weights");
    for format in ["text", "json"] {
        let out = dir.join(format!("w.{format}"));
        let o = run(&[
            "metrize", "--graph", &fx("k24.g"), "--system", &fx("k24.ps"), "--out", out.to_str().unwrap(), "--format", format,
        ]);
        assert_eq!(code(&o), 0);
        let body = std::fs::read_to_string(&out).unwrap();
        if format == "text" {
            let ps = load(&fx("k24.g"), &fx("k24.ps"));
            let w = WeightFunction::parse(&body, ps.graph()).unwrap();
            assert!(verify_weights(&ps, &w, false));
            let ok = run(&["verify-weights", "--graph", &fx("k24.g"), "--system", &fx("k24.ps"), "--weights", out.to_str().unwrap()]);
            assert_eq!(code(&ok), 0);
            // the neighborly system is only non-strictly induced
            let strict = run(&[
                "verify-weights", "--graph", &fx("k24.g"), "--system", &fx("k24.ps"), "--weights", out.to_str().unwrap(), "--strict",
            ]);
            assert_eq!(code(&strict), 1);
        } else {
            let v: serde_json::Value = serde_json::from_str(&body).unwrap();
            assert!(v.to_string().contains("weight"), "{v}");
        }
    }
}

#[test]
fn strict_metrize_with_perturbation() {
    let dir = scratch("perturb");
    let g = write(&dir, "k4.g", K4);
    let ps = write(&dir, "k4.ps", "pathsystem 4\n0 1 : 0 1\n0 2 : 0 2\n0 3 : 0 3\n1 2 : 1 2\n1 3 : 1 3\n2 3 : 2 3\n");
    let o = run(&["metrize", "--graph", &g, "--system", &ps, "--strict", "--perturb", "25", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let again = run(&["metrize", "--graph", &g, "--system", &ps, "--strict", "--perturb", "25", "--seed", "3"]);
    assert_eq!(stdout(&o), stdout(&again));
}

#[test]
fn graph_decisions_and_budget() {
    let dir = scratch("decide");
    let k4 = write(&dir, "k4.g", K4);
    let o = run(&["decide-graph", "--graph", &k4, "--strict"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("StrictlyMetrizable"));
    let o = run(&["decide-graph", "--graph", &fx("petersen.g")]);
    assert!(stdout(&o).starts_with("NonMetrizable"), "{}", stdout(&o));
    let o = run(&["decide-graph", "--graph", &fx("edge_contraction_b.g"), "--budget-systems", "100"]);
    assert_eq!(code(&o), 3);
    let out = dir.join("verdict.json");
    let o = run(&["decide-graph", "--graph", &fx("edge_contraction_a.g"), "--out", out.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(v.to_string().contains("NonMetrizable"), "{v}");
}

#[test]
fn enumeration_counts() {
    let dir = scratch("enumerate");
    let k4 = write(&dir, "k4.g", K4);
    let o = run(&["enumerate", "--graph", &k4]);
    assert_eq!(code(&o), 0);
    let expected = pathmetric::enumerate::count_consistent_systems(&Graph::complete(4)).unwrap();
    assert!(stdout(&o).starts_with(&format!("{expected} ")), "{}", stdout(&o));
    let o = run(&["enumerate", "--graph", &k4, "--limit", "3", "--show"]);
    assert_eq!(stdout(&o).matches("pathsystem 4").count(), 3);
    let c5 = write(&dir, "c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let a = stdout(&run(&["enumerate", "--graph", &c5, "--show"]));
    let b = stdout(&run(&["enumerate", "--graph", &c5, "--show", "--jobs", "2"]));
    assert_eq!(a, b);
}

#[test]
fn quotient_then_metrize() {
    let dir = scratch("quotient");
    let (qg, qs) = (dir.join("q.g"), dir.join("q.ps"));
    let o = run(&[
        "quotient", "--graph", &fx("met_quotient.g"), "--system", &fx("met_quotient.ps"), "--out", qs.to_str().unwrap(),
        "--graph-out", qg.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&["metrize", "--graph", qg.to_str().unwrap(), "--system", qs.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("induced"));
    let o = run(&["quotient", "--graph", &fx("met_quotient.g"), "--system", &fx("met_quotient.ps"), "--edges", "0 2"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn screens_and_cycles() {
    let dir = scratch("screens");
    let o = run(&["screen", "--graph", &fx("petersen.g")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("(c)"));
    let c5 = write(&dir, "c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let s5 = write(
        &dir,
        "s5.ps",
        "pathsystem 5\n0 1 : 0 1\n0 2 : 0 1 2\n0 3 : 0 4 3\n0 4 : 0 4\n1 2 : 1 2\n1 3 : 1 2 3\n1 4 : 1 0 4\n2 3 : 2 3\n2 4 : 2 3 4\n3 4 : 3 4\n",
    );
    let o = run(&["cycle-classify", "--graph", &c5, "--system", &s5]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["metrize", "--graph", &c5, "--system", &s5, "--strict", "--method", "cycle"]);
    assert_eq!(code(&o), 0);
    let o = run(&["metrize", "--graph", &c5, "--system", &s5, "--strict", "--method", "outerplanar"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn partial_systems() {
    let o = run(&["check-system", "--graph", &fx("nonextendable.g"), "--partial", &fx("nonextendable.pps")]);
    assert_eq!(code(&o), 0);
    let o = run(&["metrize", "--graph", &fx("nonextendable.g"), "--partial", &fx("nonextendable.pps"), "--strict"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("0 < 0") || stdout(&o).contains("<= 0"), "{}", stdout(&o));
}

#[test]
fn circle_checks() {
    let o = run(&["circle-check", "--map", &fx("circle/antipodal.map"), "--density", &fx("circle/uniform.density"), "--tol", "1e-6"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["circle-check", "--map", &fx("circle/antipodal.map"), "--density", &fx("circle/perturbed.density")]);
    assert_eq!(code(&o), 1);
    let o = run(&["circle-check", "--map", &fx("circle/mobius.map")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn input_errors_exit_2() {
    let dir = scratch("errors");
    assert_eq!(code(&run(&["check-system", "--graph", "/nonexistent.g", "--system", "/nonexistent.ps"])), 2);
    let bad = write(&dir, "bad.g", "3 2\n0 1\n");
    assert_eq!(code(&run(&["decide-graph", "--graph", &bad])), 2);
    assert_eq!(code(&run(&["check-system", "--graph", &fx("petersen.g")])), 2);
    assert_eq!(code(&run(&["no-such-command"])), 2);
    let big = write(&dir, "k10.g", &{
        let mut s = String::from("10 45\n");
        for a in 0..10 {
            for b in a + 1..10 {
                s += &format!("{a} {b}\n");
            }
        }
        s
    });
    assert_eq!(code(&run(&["enumerate", "--graph", &big])), 2);
}

#[test]
fn inconsistent_system_is_a_negative_answer() {
    let dir = scratch("inconsistent");
    let c4 = write(&dir, "c4.g", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let ps = write(&dir, "c4.ps", "pathsystem 4\n0 1 : 0 3 2 1\n0 2 : 0 1 2\n0 3 : 0 3\n1 2 : 1 2\n1 3 : 1 2 3\n2 3 : 2 3\n");
    let o = run(&["check-system", "--graph", &c4, "--system", &ps]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn fixtures_list() {
    let o = run(&["fixtures", "list"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("petersen"));
}
