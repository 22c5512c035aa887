//! Cutting-plane feasibility LP.
//!
//! Variables `x_e >= 1` (written `x = 1 + y`) and a slack `t <= 1`
//! (written `t = 1 - s`); one row `x(P) - x(Q) <= -t` per generated
//! (chosen, competitor) pair; maximise `t`. At the optimum `t*`, the
//! system is induced iff `t* >= 0` and strictly induced iff `t* > 0`
//! once no competitor row is violated. Rows are generated by the
//! shortest-competitor search at each optimum.
//!
//! The LP dual gives multipliers `lambda >= 0` with
//! `c = sum lambda a_r >= 0`, `sum lambda <= 1` and `t* = 1 - sum c - sum lambda`, so a
//! negative (resp. non-positive) optimum yields a certificate directly.

use super::simplex::{solve, LpOutcome};
use super::{min_margin, verify_certificate, verify_weights, Certificate, CertificatePair, Chosen};
use crate::enumerate::simple_paths;
use crate::error::Result;
use crate::path_system::{PartialPathSystem, PathSystem};
use crate::weights::{best_competitor, int, path_weight, Rational, WeightFunction};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Weights(WeightFunction),
    Infeasible(Certificate),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Weights(_))
    }
}

/// A verdict together with LP statistics.
#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    /// optimal slack of the last LP solved; for `Weights` this is the
    /// achieved minimum margin when every row is present, and may be 0
    /// in non-strict mode
    pub slack: Rational,
    pub rounds: usize,
    pub rows: usize,
}

struct Row {
    chosen: Vec<usize>,
    competitor: Vec<usize>,
    coef: Vec<i64>,
}

fn make_row(ps: &(impl Chosen + ?Sized), chosen: &[usize], competitor: Vec<usize>) -> Row {
    let g = ps.graph();
    let mut coef = vec![0i64; g.m()];
    for s in chosen.windows(2) {
        coef[g.edge_id(s[0], s[1]).unwrap()] += 1;
    }
    for s in competitor.windows(2) {
        coef[g.edge_id(s[0], s[1]).unwrap()] -= 1;
    }
    Row { chosen: chosen.to_vec(), competitor, coef }
}

struct Solution {
    x: Vec<Rational>,
    t: Rational,
    duals: Vec<Rational>,
}

fn solve_rows(m: usize, rows: &[Row]) -> Solution {
    // columns y_0..y_{m-1}, s
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.coef.iter().map(|&c| int(c)).chain(std::iter::once(int(-1))).collect())
        .collect();
    let b: Vec<Rational> = rows.iter().map(|r| int(-r.coef.iter().sum::<i64>() - 1)).collect();
    let mut c = vec![Rational::zero(); m + 1];
    c[m] = int(-1);
    match solve(&a, &b, &c) {
        LpOutcome::Optimal { z, value, duals } => Solution {
            x: z[..m].iter().map(|y| y + Rational::one()).collect(),
            t: Rational::one() + value,
            duals,
        },
        // s large is always feasible and -s <= 0 bounds the objective
        other => unreachable!("feasibility LP is always solvable: {other:?}"),
    }
}

/// Scale positive multipliers to coprime integers.
fn normalise(lams: Vec<Rational>) -> Vec<Rational> {
    let l = lams.iter().filter(|x| x.is_positive()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = lams.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rational::new(x, g.clone())).collect()
}

fn certificate_from(rows: &[Row], duals: &[Rational], strict: bool) -> Certificate {
    let lams = normalise(duals.to_vec());
    let pairs = rows
        .iter()
        .zip(lams)
        .filter(|(_, l)| l.is_positive())
        .map(|(r, multiplier)| CertificatePair { chosen: r.chosen.clone(), competitor: r.competitor.clone(), multiplier })
        .collect();
    Certificate { strict, pairs }
}

/// Decide (strict) metrizability of a consistent path system.
pub fn decide_metrizable(ps: &PathSystem, strict: bool) -> Result<Verdict> {
    decide_detailed(ps, strict).map(|d| d.verdict)
}

/// Same question for a partial system: only the given pairs constrain
/// the weights.
pub fn decide_partial(pps: &PartialPathSystem, strict: bool) -> Result<Verdict> {
    decide_detailed(pps, strict).map(|d| d.verdict)
}

pub fn decide_detailed<S: Chosen + ?Sized>(ps: &S, strict: bool) -> Result<Decision> {
    ps.require_consistent()?;
    let g = ps.graph();
    let m = g.m();
    let chosen = ps.chosen_paths();
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    let mut rows: Vec<Row> = Vec::new();
    let unit = vec![Rational::one(); m];
    for p in &chosen {
        if let Some((_, q)) = best_competitor(g, &unit, p) {
            seen.insert((p.to_vec(), q.clone()));
            rows.push(make_row(ps, p, q));
        }
    }
    let mut rounds = 0;
    loop {
        rounds += 1;
        let sol = if rows.is_empty() {
            Solution { x: unit.clone(), t: Rational::one(), duals: Vec::new() }
        } else {
            solve_rows(m, &rows)
        };
        let infeasible = if strict { !sol.t.is_positive() } else { sol.t.is_negative() };
        if infeasible {
            let cert = certificate_from(&rows, &sol.duals, strict);
            debug_assert!(verify_certificate(ps, &cert), "extracted certificate fails verification");
            return Ok(Decision { verdict: Verdict::Infeasible(cert), slack: sol.t, rounds, rows: rows.len() });
        }
        // add every chosen path's best competitor whose row is violated
        let mut added = false;
        for p in &chosen {
            let Some((qw, q)) = best_competitor(g, &sol.x, p) else { continue };
            if qw - path_weight(g, &sol.x, p) < sol.t {
                let key = (p.to_vec(), q);
                if seen.insert(key.clone()) {
                    rows.push(make_row(ps, p, key.1));
                    added = true;
                }
            }
        }
        if !added {
            let w = WeightFunction::new(g, sol.x).expect("x >= 1");
            debug_assert!(verify_weights(ps, &w, strict));
            debug_assert!(min_margin(ps, w.values()).map_or(true, |mm| mm >= sol.t));
            return Ok(Decision { verdict: Verdict::Weights(w), slack: sol.t, rounds, rows: rows.len() });
        }
    }
}

/// Reference implementation: the same LP with every competitor path
/// listed up front. Exponential; for cross-checking on tiny graphs.
pub fn naive_decide<S: Chosen + ?Sized>(ps: &S, strict: bool) -> Result<bool> {
    ps.require_consistent()?;
    let g = ps.graph();
    let mut rows = Vec::new();
    for p in ps.chosen_paths() {
        for q in simple_paths(g, p[0], *p.last().unwrap()) {
            if q != p {
                rows.push(make_row(ps, p, q));
            }
        }
    }
    if rows.is_empty() {
        return Ok(true);
    }
    let t = solve_rows(g.m(), &rows).t;
    Ok(if strict { t.is_positive() } else { !t.is_negative() })
}
