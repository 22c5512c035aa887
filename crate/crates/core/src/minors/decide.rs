//! Graph-level metrizability decisions.

use super::screen::{screen_catalog, screen_structural, Rule};
use crate::enumerate::{Enumerator, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{biconnected_components, is_outerplanar, Graph, SubdivisionWitness};
use crate::metrize::{decide_metrizable, Certificate, Verdict};
use crate::path_system::PathSystem;
use rayon::prelude::*;
use serde::Serialize;

/// Why a block (or graph) is metrizable.
#[derive(Clone, Debug, Serialize)]
pub enum MetReason {
    /// at most four vertices
    Small,
    Outerplanar,
    /// every consistent system was decided; in strict mode,
    /// `not_strict` holds a system that is induced but never strictly
    Exhaustive { systems: u64, not_strict: Option<Box<(PathSystem, Certificate)>> },
    /// conjunction over biconnected blocks (block vertex lists in the
    /// input graph's ids)
    Blocks(Vec<(Vec<usize>, MetReason)>),
}

#[derive(Clone, Debug, Serialize)]
pub enum NonMetReason {
    Structural(Rule),
    Catalog { entry: usize, witness: SubdivisionWitness },
    /// a consistent system with its infeasibility certificate
    System(Box<(PathSystem, Certificate)>),
}

#[derive(Clone, Debug, Serialize)]
pub enum GraphVerdict {
    /// `block` lists the offending block's vertices in the input graph
    NonMetrizable { block: Vec<usize>, reason: NonMetReason },
    /// metrizable; strictness not established, or refuted when the
    /// reason carries a `not_strict` system
    Metrizable(MetReason),
    StrictlyMetrizable(MetReason),
    Unknown(String),
}

impl GraphVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            GraphVerdict::NonMetrizable { .. } => "NonMetrizable",
            GraphVerdict::Metrizable(_) => "Metrizable",
            GraphVerdict::StrictlyMetrizable(_) => "StrictlyMetrizable",
            GraphVerdict::Unknown(_) => "Unknown",
        }
    }
}

/// Limits for the exhaustive stage.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// total systems decided across all blocks
    pub max_systems: u64,
    /// largest block handed to enumeration
    pub max_vertices: usize,
    pub jobs: usize,
    /// skip the size, outerplanarity and screening shortcuts and
    /// enumerate every block
    pub exhaustive: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_systems: 1_000_000, max_vertices: MAX_VERTICES, jobs: 1, exhaustive: false }
    }
}

/// [`decide_graph_with`] under the default budget.
pub fn decide_graph(g: &Graph, strict: bool) -> GraphVerdict {
    decide_graph_with(g, strict, Budget::default())
}

/// Decide whether every consistent path system of `g` is (strictly)
/// induced by positive weights.
///
/// Blocks are decided independently: at most four vertices or
/// outerplanar means strictly metrizable; then the structural rules and
/// the catalog screen; then exhaustive enumeration within `budget`,
/// stopping at the first infeasible system. Components are treated
/// alike (a disconnected graph has no path systems to violate).
pub fn decide_graph_with(g: &Graph, strict: bool, budget: Budget) -> GraphVerdict {
    let mut remaining = budget.max_systems;
    let mut reasons = Vec::new();
    let mut all_strict = true;
    let mut unknown: Option<String> = None;
    for (verts, block) in blocks_of(g) {
        match decide_block(&block, strict, &budget, &mut remaining) {
            Err(e) => unknown = unknown.or(Some(format!("block {verts:?}: {e}"))),
            Ok(GraphVerdict::NonMetrizable { reason, .. }) => return GraphVerdict::NonMetrizable { block: verts, reason },
            Ok(GraphVerdict::Unknown(why)) => unknown = unknown.or(Some(format!("block {verts:?}: {why}"))),
            Ok(GraphVerdict::StrictlyMetrizable(r)) => reasons.push((verts, r)),
            Ok(GraphVerdict::Metrizable(r)) => {
                all_strict = false;
                reasons.push((verts, r));
            }
        }
    }
    if let Some(why) = unknown {
        return GraphVerdict::Unknown(why);
    }
    let reason = if reasons.len() == 1 { reasons.pop().unwrap().1 } else { MetReason::Blocks(reasons) };
    if all_strict {
        GraphVerdict::StrictlyMetrizable(reason)
    } else {
        GraphVerdict::Metrizable(reason)
    }
}

/// Biconnected blocks of every component with at least one edge.
fn blocks_of(g: &Graph) -> Vec<(Vec<usize>, Graph)> {
    let comp = g.components();
    let mut out = Vec::new();
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..ncomp {
        let verts: Vec<usize> = (0..g.n()).filter(|&v| comp[v] == c).collect();
        let (sub, _) = g.induced(&verts);
        if sub.m() == 0 {
            continue;
        }
        for b in biconnected_components(&sub).expect("component is connected") {
            out.push((b.vertices.iter().map(|&v| verts[v]).collect(), b.graph));
        }
    }
    out
}

fn decide_block(b: &Graph, strict: bool, budget: &Budget, remaining: &mut u64) -> Result<GraphVerdict> {
    if budget.exhaustive {
        if b.n() > budget.max_vertices {
            return Ok(GraphVerdict::Unknown(format!("{} vertices exceed the enumeration bound {}", b.n(), budget.max_vertices)));
        }
        return exhaustive(b, strict, budget, remaining);
    }
    if b.n() <= 4 {
        return Ok(GraphVerdict::StrictlyMetrizable(MetReason::Small));
    }
    if is_outerplanar(b) {
        return Ok(GraphVerdict::StrictlyMetrizable(MetReason::Outerplanar));
    }
    if let Some(rule) = screen_structural(b)? {
        return Ok(GraphVerdict::NonMetrizable { block: Vec::new(), reason: NonMetReason::Structural(rule) });
    }
    if let Some((entry, witness)) = screen_catalog(b)? {
        return Ok(GraphVerdict::NonMetrizable { block: Vec::new(), reason: NonMetReason::Catalog { entry, witness } });
    }
    if b.n() > budget.max_vertices {
        return Ok(GraphVerdict::Unknown(format!("{} vertices exceed the enumeration bound {}", b.n(), budget.max_vertices)));
    }
    exhaustive(b, strict, budget, remaining)
}

enum Outcome {
    Fine,
    NotStrict(Certificate),
    Infeasible(Certificate),
}

fn judge(ps: &PathSystem, strict: bool) -> Outcome {
    let v = decide_metrizable(ps, strict).expect("enumerated systems are consistent");
    match v {
        Verdict::Weights(_) => Outcome::Fine,
        Verdict::Infeasible(c) if !strict => Outcome::Infeasible(c),
        Verdict::Infeasible(sc) => match decide_metrizable(ps, false).expect("consistent") {
            Verdict::Weights(_) => Outcome::NotStrict(sc),
            Verdict::Infeasible(c) => Outcome::Infeasible(c),
        },
    }
}

const BATCH: usize = 256;

fn exhaustive(b: &Graph, strict: bool, budget: &Budget, remaining: &mut u64) -> Result<GraphVerdict> {
    let en = Enumerator::with_bound(b, budget.max_vertices)?;
    let pool = (budget.jobs > 1)
        .then(|| rayon::ThreadPoolBuilder::new().num_threads(budget.jobs).build().map_err(|e| Error::Failed(e.to_string())))
        .transpose()?;
    let mut it = en.iter();
    let mut seen = 0u64;
    let mut not_strict: Option<Box<(PathSystem, Certificate)>> = None;
    loop {
        let want = (BATCH as u64).min(*remaining) as usize;
        let batch: Vec<PathSystem> = it.by_ref().take(want).collect();
        if batch.is_empty() {
            if want == 0 && it.next().is_some() {
                return Ok(GraphVerdict::Unknown(format!(
                    "budget exhausted after {seen} systems without finding an infeasible one"
                )));
            }
            break;
        }
        *remaining -= batch.len() as u64;
        seen += batch.len() as u64;
        let outcomes: Vec<Outcome> = match &pool {
            Some(p) => p.install(|| batch.par_iter().map(|ps| judge(ps, strict)).collect()),
            None => batch.iter().map(|ps| judge(ps, strict)).collect(),
        };
        for (ps, o) in batch.into_iter().zip(outcomes) {
            match o {
                Outcome::Fine => {}
                Outcome::NotStrict(c) => {
                    not_strict.get_or_insert_with(|| Box::new((ps, c)));
                }
                Outcome::Infeasible(c) => {
                    return Ok(GraphVerdict::NonMetrizable {
                        block: Vec::new(),
                        reason: NonMetReason::System(Box::new((ps, c))),
                    })
                }
            }
        }
    }
    let reason = |ns| MetReason::Exhaustive { systems: seen, not_strict: ns };
    Ok(match (strict, not_strict) {
        (true, None) => GraphVerdict::StrictlyMetrizable(reason(None)),
        (_, ns) => GraphVerdict::Metrizable(reason(ns)),
    })
}

/// `(metrizable, strictly metrizable)` for `K_{2,n}` by exhaustive
/// decision over all its consistent systems.
pub fn kn2_family_check(n: usize) -> Result<(bool, bool)> {
    if n < 2 {
        return Err(Error::PreconditionViolated("K_{2,n} needs n >= 2".into()));
    }
    if n > 4 {
        return Err(Error::TooLarge(n, 4));
    }
    let g = Graph::complete_bipartite(2, n);
    let mut strict = true;
    for ps in Enumerator::new(&g)?.iter() {
        match judge(&ps, true) {
            Outcome::Fine => {}
            Outcome::NotStrict(_) => strict = false,
            Outcome::Infeasible(_) => return Ok((false, false)),
        }
    }
    Ok((true, strict))
}
