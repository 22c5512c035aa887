use pathmetric::enumerate::enumerate_consistent_systems;
use pathmetric::metrize::{decide_metrizable, lift_quotient_weights, metrize_cycle, verify_weights};
use pathmetric::path_system::{
    canonical_odd_system, classify_cycle_system, crossing_function_of, persistent_edges, quotient, system_of_crossing,
    CrossingFunction, CycleClass,
};
use pathmetric::weights::{int, path_weight};
use pathmetric::{Graph, PathSystem, WeightFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// |w(P_{x,a}) - w(P_{x,b})| < w(ab) for every x, where ab = f(x).
fn arc_criterion(ps: &PathSystem, f: &CrossingFunction, w: &WeightFunction) -> bool {
    let g = ps.graph();
    let n = g.n();
    (0..n).all(|x| {
        let (a, b) = (f.f[x], (f.f[x] + 1) % n);
        let arm = |t: usize| if t == x { int(0) } else { path_weight(g, w.values(), ps.get(x, t)) };
        let diff = arm(a) - arm(b);
        let ab = w.get(g.edge_id(a, b).unwrap()).clone();
        diff < ab && -diff < ab
    })
}

#[test]
fn cycle_systems_are_the_crossing_functions() {
    for n in 3..=8 {
        let fs = CrossingFunction::all(n);
        let mut from_f = HashSet::new();
        for f in &fs {
            assert!(f.is_valid());
            let ps = system_of_crossing(f).unwrap();
            assert!(ps.is_consistent());
            assert_eq!(&crossing_function_of(&ps).unwrap(), f);
            from_f.insert(ps.to_string());
        }
        assert_eq!(from_f.len(), fs.len());
        let enumerated: HashSet<String> =
            enumerate_consistent_systems(&Graph::cycle(n), None).unwrap().map(|ps| ps.to_string()).collect();
        assert_eq!(enumerated, from_f, "C_{n}");
    }
}

#[test]
fn every_cycle_system_is_trivial_or_reduces_to_an_odd_cycle() {
    for n in 3..=8 {
        for f in CrossingFunction::all(n) {
            let ps = system_of_crossing(&f).unwrap();
            match classify_cycle_system(&ps).unwrap() {
                CycleClass::Trivial => assert!(f.f.iter().all(|&e| e == f.f[0])),
                CycleClass::Reduced { m, quotient } => {
                    assert!(m % 2 == 1 && m >= 3);
                    let q = &quotient.system;
                    assert!(q.graph().is_cycle() && q.n() == m);
                    assert!(persistent_edges(q).unwrap().is_empty());
                    let mut fq = crossing_function_of(q).unwrap().f;
                    fq.sort_unstable();
                    assert_eq!(fq, (0..m).collect::<Vec<_>>(), "quotient f is not a bijection");
                }
            }
        }
    }
}

#[test]
fn constructed_cycle_weights_are_strict_and_meet_the_arc_criterion() {
    for n in 3..=8 {
        for f in CrossingFunction::all(n) {
            let ps = system_of_crossing(&f).unwrap();
            let w = metrize_cycle(&ps, true).unwrap();
            assert!(verify_weights(&ps, &w, true), "{f:?}");
            assert!(arc_criterion(&ps, &f, &w), "{f:?}");
        }
    }
}

#[test]
fn arc_criterion_matches_strict_verification() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut yes, mut no) = (0, 0);
    for n in 3..=8 {
        for f in CrossingFunction::all(n) {
            let ps = system_of_crossing(&f).unwrap();
            // strict weights scaled up and jittered land on both sides
            let base = metrize_cycle(&ps, true).unwrap();
            for i in 0..8 {
                let vals = if i % 2 == 0 {
                    (0..n).map(|_| int(rng.gen_range(1..=6))).collect()
                } else {
                    base.values().iter().map(|x| x * int(4) + int(rng.gen_range(0..=3))).collect()
                };
                let w = WeightFunction::new(ps.graph(), vals).unwrap();
                let strict = verify_weights(&ps, &w, true);
                assert_eq!(strict, arc_criterion(&ps, &f, &w), "{f:?} {:?}", w.values());
                if strict { yes += 1 } else { no += 1 }
            }
        }
    }
    assert!(yes > 100 && no > 100, "{yes} {no}");
}

#[test]
fn lifted_quotient_weights_stay_strict() {
    let mut lifted = 0;
    for n in 3..=7 {
        for f in CrossingFunction::all(n) {
            let ps = system_of_crossing(&f).unwrap();
            for e in persistent_edges(&ps).unwrap() {
                let q = quotient(&ps, &[e]).unwrap();
                let wq = match decide_metrizable(&q.system, true).unwrap() {
                    pathmetric::metrize::Verdict::Weights(w) => w,
                    _ => panic!("cycle quotient not strict"),
                };
                let w = lift_quotient_weights(&ps, e, &wq).unwrap();
                assert!(verify_weights(&ps, &w, true));
                lifted += 1;
            }
        }
    }
    assert!(lifted > 0);
}

#[test]
fn even_cycles_have_no_shorter_arc_system() {
    assert!(canonical_odd_system(6).is_err());
    let s5 = canonical_odd_system(5).unwrap();
    assert!(persistent_edges(&s5).unwrap().is_empty());
}
