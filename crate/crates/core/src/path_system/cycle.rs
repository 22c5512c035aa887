//! Path systems on cycles. On C_n every tree T_v is the cycle minus one
//! edge f(v), and consistency of the system is exactly the crossing
//! condition on f.

use super::{persistent_edges, quotient, PathSystem, Quotient};
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// f on the standard cycle: vertex i, edge i joining i and i+1 (mod n).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingFunction {
    pub f: Vec<usize>,
}

impl CrossingFunction {
    pub fn cycle_length(&self) -> usize {
        self.f.len()
    }

    /// First pair (x, y) breaking the crossing condition. Put vertex i at
    /// position 2i and the midpoint of edge j at 2j+1 on a circle of 2n
    /// points; the condition asks that f(x) = f(y) or that the chord from
    /// x to f(x) separates y from f(y).
    pub fn violation(&self) -> Option<(usize, usize)> {
        let n = self.f.len();
        let m = 2 * n;
        for x in 0..n {
            let a = 2 * x;
            let span = (2 * self.f[x] + 1 + m - a) % m;
            let side = |p: usize| (p + m - a) % m < span;
            for y in 0..n {
                if y == x || self.f[x] == self.f[y] {
                    continue;
                }
                if side(2 * y) == side(2 * self.f[y] + 1) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.f.len() >= 3 && self.f.iter().all(|&e| e < self.f.len()) && self.violation().is_none()
    }

    /// Every crossing function on C_n, in lexicographic order of f.
    pub fn all(n: usize) -> Vec<CrossingFunction> {
        let mut out = Vec::new();
        let mut f = vec![0; n];
        loop {
            let c = CrossingFunction { f: f.clone() };
            if c.violation().is_none() {
                out.push(c);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                f[i] += 1;
                if f[i] < n {
                    break;
                }
                f[i] = 0;
            }
        }
    }
}

/// The crossing function of a consistent system on a cycle graph, in
/// cycle-position terms (see [`Graph::cycle_order`]).
pub fn crossing_function_of(ps: &PathSystem) -> Result<CrossingFunction> {
    let g = ps.graph();
    let order = g.cycle_order()?;
    ps.require_consistent()?;
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut f = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        let mut used = vec![false; n];
        for u in (0..n).filter(|&u| u != v) {
            for w in ps.get(v, u).windows(2) {
                let (a, b) = (pos[w[0]], pos[w[1]]);
                let e = if (a + 1) % n == b { a } else { b };
                used[e] = true;
            }
        }
        f[i] = used.iter().position(|&u| !u).expect("a tree misses one cycle edge");
    }
    let c = CrossingFunction { f };
    debug_assert!(c.is_valid());
    Ok(c)
}

/// P_{u,v} is the u-v path in C_n minus f(u).
pub fn system_of_crossing(c: &CrossingFunction) -> Result<PathSystem> {
    let n = c.cycle_length();
    if n < 3 {
        return Err(Error::NotACycle);
    }
    if let Some((x, y)) = c.violation() {
        return Err(Error::CrossingViolation(x, y));
    }
    PathSystem::from_fn(Graph::cycle(n), |u, v| {
        // walk forward from u unless that crosses f(u)
        let cut = c.f[u];
        let forward_len = (v + n - u) % n;
        let crosses = (cut + n - u) % n < forward_len;
        let step = if crosses { n - 1 } else { 1 };
        let mut p = vec![u];
        while *p.last().unwrap() != v {
            p.push((p.last().unwrap() + step) % n);
        }
        p
    })
}

/// Structure of a consistent cycle system.
#[derive(Clone, Debug)]
pub enum CycleClass {
    /// all trees coincide
    Trivial,
    /// contracting the persistent edges leaves the shorter-arc system on
    /// an odd cycle of length m
    Reduced { m: usize, quotient: Quotient },
}

/// Chosen paths all shorter than half the cycle (odd cycles only).
fn is_shorter_arc(ps: &PathSystem) -> bool {
    let n = ps.n();
    n % 2 == 1 && ps.graph().is_cycle() && ps.iter().all(|(_, p)| p.len() - 1 <= n / 2)
}

pub fn classify_cycle_system(ps: &PathSystem) -> Result<CycleClass> {
    let c = crossing_function_of(ps)?;
    if c.f.iter().all(|&e| e == c.f[0]) {
        return Ok(CycleClass::Trivial);
    }
    let q = quotient(ps, &persistent_edges(ps)?)?;
    let m = q.system.n();
    if !is_shorter_arc(&q.system) {
        return Err(Error::InconsistentInput(format!("quotient on {m} vertices is not the shorter-arc system")));
    }
    Ok(CycleClass::Reduced { m, quotient: q })
}

/// Shorter-arc system on the odd cycle C_n.
pub fn canonical_odd_system(n: usize) -> Result<PathSystem> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::EvenLength(n));
    }
    PathSystem::from_fn(Graph::cycle(n), |u, v| {
        if v - u <= n / 2 {
            (u..=v).collect()
        } else {
            let mut p = vec![u];
            while *p.last().unwrap() != v {
                p.push((p.last().unwrap() + n - 1) % n);
            }
            p
        }
    })
}
