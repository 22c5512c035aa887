//! Deciding (strict) metrizability of path systems and building inducing
//! weights.
//!
//! A system is induced by `w` when every chosen path is a `w`-shortest
//! path, strictly induced when it is the unique one. The decision
//! procedure is a cutting-plane LP over exact rationals whose separation
//! step is the shortest-competitor search of [`crate::weights`]; when the
//! LP is infeasible its dual values form a [`Certificate`].

mod certificate;
mod constructive;
mod lp;
mod outerplanar;
pub mod simplex;
mod suspended;

pub use certificate::{verify_certificate, Certificate, CertificatePair};
pub use constructive::{lift_quotient_weights, metrize_cycle, perturbation_radius};
pub use outerplanar::metrize_outerplanar;
pub use suspended::{build_derived_system, lift_suspended_path, DerivedSystem, Split};
pub use lp::{decide_detailed, decide_metrizable, decide_partial, naive_decide, Decision, Verdict};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path_system::{PartialPathSystem, PathSystem};
use crate::weights::{best_competitor, path_weight, Rational, WeightFunction};
use num_traits::{One, Signed, Zero};

/// Anything that assigns chosen paths to some vertex pairs.
pub trait Chosen {
    fn graph(&self) -> &Graph;
    /// Chosen paths, smaller endpoint first, in pair order.
    fn chosen_paths(&self) -> Vec<&[usize]>;
    fn chosen(&self, u: usize, v: usize) -> Option<&[usize]>;
    fn require_consistent(&self) -> Result<()>;
}

impl Chosen for PathSystem {
    fn graph(&self) -> &Graph {
        PathSystem::graph(self)
    }
    fn chosen_paths(&self) -> Vec<&[usize]> {
        self.iter().map(|(_, p)| p).collect()
    }
    fn chosen(&self, u: usize, v: usize) -> Option<&[usize]> {
        (u != v && u.max(v) < self.n()).then(|| self.get(u, v))
    }
    fn require_consistent(&self) -> Result<()> {
        PathSystem::require_consistent(self)
    }
}

impl Chosen for PartialPathSystem {
    fn graph(&self) -> &Graph {
        &self.graph
    }
    fn chosen_paths(&self) -> Vec<&[usize]> {
        self.paths.values().map(|p| p.as_slice()).collect()
    }
    fn chosen(&self, u: usize, v: usize) -> Option<&[usize]> {
        self.get(u, v)
    }
    fn require_consistent(&self) -> Result<()> {
        if self.is_consistent_partial() {
            Ok(())
        } else {
            Err(Error::InconsistentInput("partial paths disagree on a shared subpath".into()))
        }
    }
}

/// Smallest `w(Q) - w(P)` over chosen paths `P` and competitors `Q`;
/// `None` when no chosen path has a competitor.
pub fn min_margin<S: Chosen + ?Sized>(ps: &S, w: &[Rational]) -> Option<Rational> {
    let g = ps.graph();
    ps.chosen_paths()
        .into_iter()
        .filter_map(|p| best_competitor(g, w, p).map(|(q, _)| q - path_weight(g, w, p)))
        .min()
}

/// Every chosen path is a `w`-geodesic (the unique one if `strict`).
pub fn verify_weights<S: Chosen + ?Sized>(ps: &S, w: &WeightFunction, strict: bool) -> bool {
    if w.values().len() != ps.graph().m() || w.values().iter().any(|x| !x.is_positive()) {
        return false;
    }
    match min_margin(ps, w.values()) {
        None => true,
        Some(m) if strict => m.is_positive(),
        Some(m) => !m.is_negative(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Ok,
    Violated {
        pair: (usize, usize),
        chosen: Vec<usize>,
        competitor: Vec<usize>,
        /// `w(P) - w(Q) + k`, with `k = 1` in strict mode and 0 otherwise
        amount: Rational,
    },
}

/// Checks `w(P) - w(Q) <= -k` for all chosen `P` and competitors `Q`
/// (`k = 1` strict, `0` otherwise) and reports the most violated one,
/// earliest pair on ties. `w` may contain zeros.
pub fn separation_oracle<S: Chosen + ?Sized>(ps: &S, w: &[Rational], strict: bool) -> Separation {
    let g = ps.graph();
    let k = if strict { Rational::one() } else { Rational::zero() };
    let mut worst = Separation::Ok;
    for p in ps.chosen_paths() {
        let Some((qw, q)) = best_competitor(g, w, p) else { continue };
        let amount = path_weight(g, w, p) - qw + &k;
        if !amount.is_positive() {
            continue;
        }
        let better = match &worst {
            Separation::Ok => true,
            Separation::Violated { amount: a, .. } => amount > *a,
        };
        if better {
            worst = Separation::Violated { pair: (p[0], *p.last().unwrap()), chosen: p.to_vec(), competitor: q, amount };
        }
    }
    worst
}
