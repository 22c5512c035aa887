//! Weight constructions for cycles and for contracted persistent edges.

use super::{min_margin, verify_weights};
use crate::error::{Error, Result};
use crate::path_system::{classify_cycle_system, persistent_edges, quotient, CycleClass, PathSystem};
use crate::weights::{int, Rational, WeightFunction};
use num_traits::{One, Signed};

/// Largest uniform bump bound that keeps `w` strictly inducing: the
/// minimum strict margin divided by `2n`. A path has fewer than `n`
/// edges, so bumping each edge by at most this much moves any
/// difference `w(Q) - w(P)` by less than half the margin. 1 when no
/// chosen path has a competitor.
pub fn perturbation_radius(ps: &PathSystem, w: &WeightFunction) -> Result<Rational> {
    if !verify_weights(ps, w, true) {
        return Err(Error::NotStrictlyInducing);
    }
    Ok(match min_margin(ps, w.values()) {
        Some(m) => m / int(2 * ps.n() as i64),
        None => Rational::one(),
    })
}

/// Strict weights for `ps` from strict weights on `ps / e`.
///
/// Edges used by some chosen path keep the weight of their image, unused
/// edges get `N = 1 + sum w~`, and `e` itself gets a small `delta`.
/// `delta = min(margin, min w~, 1) / (4|V|)`: below the quotient margin,
/// below the weight of any quotient cycle a competitor could wrap
/// around, and small enough that `N` exceeds every chosen path.
pub fn lift_quotient_weights(ps: &PathSystem, e: usize, w_quotient: &WeightFunction) -> Result<WeightFunction> {
    let g = ps.graph();
    if e >= g.m() {
        return Err(Error::PreconditionViolated(format!("edge id {e} out of range")));
    }
    let q = quotient(ps, &[e])?;
    if w_quotient.values().len() != q.system.graph().m() || !verify_weights(&q.system, w_quotient, true) {
        return Err(Error::QuotientNotStrict);
    }
    let wq = w_quotient.values();
    let used = ps.used_edges();
    let mut claimed = vec![false; wq.len()];
    for f in 0..g.m() {
        if f != e && used[f] {
            let img = q.edge_map[f].expect("only e is contracted");
            if std::mem::replace(&mut claimed[img], true) {
                let (a, b) = g.edge(f);
                return Err(Error::PreconditionViolated(format!("two used preimages of the quotient edge through {a}-{b}")));
            }
        }
    }
    let big = Rational::one() + w_quotient.total();
    let mut small = min_margin(&q.system, wq).unwrap_or_else(Rational::one);
    small = small.min(wq.iter().min().cloned().unwrap_or_else(Rational::one)).min(Rational::one());
    let delta = small / int(4 * g.n() as i64);
    let values = (0..g.m())
        .map(|f| {
            if f == e {
                delta.clone()
            } else if used[f] {
                wq[q.edge_map[f].unwrap()].clone()
            } else {
                big.clone()
            }
        })
        .collect();
    let w = WeightFunction::new(g, values)?;
    if !verify_weights(ps, &w, true) {
        return Err(Error::Failed("lifted weights are not strictly inducing".into()));
    }
    Ok(w)
}

/// Strict weights for a consistent system on a cycle: unit weights on
/// the fully contracted shorter-arc system, lifted back one persistent
/// edge at a time. Strict weights also induce, so `strict` only exists
/// for symmetry with the other builders.
pub fn metrize_cycle(ps: &PathSystem, strict: bool) -> Result<WeightFunction> {
    let _ = strict;
    let g = ps.graph();
    if !g.is_cycle() {
        return Err(Error::NotACycle);
    }
    ps.require_consistent()?;
    match classify_cycle_system(ps)? {
        CycleClass::Trivial => {
            let used = ps.used_edges();
            let heavy = int(g.n() as i64);
            WeightFunction::new(g, used.iter().map(|&u| if u { Rational::one() } else { heavy.clone() }).collect())
        }
        CycleClass::Reduced { .. } => {
            let mut chain = vec![ps.clone()];
            let mut contracted = Vec::new();
            loop {
                let cur = chain.last().unwrap();
                let Some(&e) = persistent_edges(cur)?.first() else { break };
                let next = quotient(cur, &[e])?.system;
                contracted.push(e);
                chain.push(next);
            }
            let mut w = WeightFunction::unit(chain.last().unwrap().graph());
            for (sys, &e) in chain.iter().rev().skip(1).zip(contracted.iter().rev()) {
                w = lift_quotient_weights(sys, e, &w)?;
            }
            debug_assert!(w.values().iter().all(|x| x.is_positive()));
            Ok(w)
        }
    }
}
