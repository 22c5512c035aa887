//! Constructive weights for 2-connected outerplanar graphs, by induction
//! on the number of independent cycles.

use super::constructive::metrize_cycle;
use super::suspended::{build_derived_system, lift_suspended_path, Split};
use super::verify_weights;
use crate::error::{Error, Result};
use crate::graph::{is_biconnected, is_outerplanar, Graph};
use crate::path_system::PathSystem;
use crate::weights::{Rational, WeightFunction};
use num_traits::One;

/// A chord `xy` (edge id) and a suspended `x`–`y` path of `g - xy` such
/// that `g - xy` stays 2-connected. Exists in every 2-connected
/// outerplanar graph that is not a cycle: take a leaf face of the weak
/// dual.
fn find_ear(g: &Graph) -> Option<(usize, Vec<usize>)> {
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        if g.degree(x) < 3 || g.degree(y) < 3 {
            continue;
        }
        for &start in g.neighbors(x) {
            if start == y || g.degree(start) != 2 {
                continue;
            }
            let mut path = vec![x, start];
            while g.degree(*path.last().unwrap()) == 2 {
                let cur = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let next = *g.neighbors(cur).iter().find(|&&z| z != prev).unwrap();
                path.push(next);
            }
            if *path.last().unwrap() == y && is_biconnected(&g.remove_edge(e)) {
                return Some((e, path));
            }
        }
    }
    None
}

/// Weights on `sub` (vertex i = `vertices[i]` of `g`) as a partial
/// assignment on `g`'s edges.
fn pull_back(g: &Graph, sub: &Graph, vertices: &[usize], w: &WeightFunction, out: &mut [Option<Rational>]) {
    for (e, &(a, b)) in sub.edges().iter().enumerate() {
        out[g.edge_id(vertices[a], vertices[b]).unwrap()] = Some(w.get(e).clone());
    }
}

/// Weights inducing `ps` (strictly, if `strict`) on a 2-connected
/// outerplanar graph.
///
/// Cycles are handled by [`metrize_cycle`]. Otherwise pick a chord `xy`
/// next to a suspended path `Q` and recurse: if `xy` is unused the system
/// lives on `g - xy` and `xy` gets a prohibitive weight; if an edge of
/// `Q` is unused the system lives on `H` plus pendant paths; otherwise
/// the pieces `H`, `C = Q + xy` and, if needed, the derived graph are
/// solved and combined by [`lift_suspended_path`].
pub fn metrize_outerplanar(g: &Graph, ps: &PathSystem, strict: bool) -> Result<WeightFunction> {
    if ps.graph() != g {
        return Err(Error::PreconditionViolated("system is on a different graph".into()));
    }
    if !is_outerplanar(g) {
        return Err(Error::NotOuterplanar);
    }
    if !is_biconnected(g) {
        return Err(Error::NotBiconnected);
    }
    ps.require_consistent()?;
    let w = solve(ps)?;
    if !verify_weights(ps, &w, strict) {
        return Err(Error::Failed("constructed weights do not induce the system".into()));
    }
    Ok(w)
}

fn solve(ps: &PathSystem) -> Result<WeightFunction> {
    let g = ps.graph();
    if g.is_cycle() {
        return metrize_cycle(ps, true);
    }
    let (xy, q) = find_ear(g).ok_or_else(|| Error::Failed("no chord beside a suspended path".into()))?;
    let used = ps.used_edges();
    let q_edges: Vec<usize> = q.windows(2).map(|s| g.edge_id(s[0], s[1]).unwrap()).collect();

    if !used[xy] {
        let sub = g.remove_edge(xy);
        let keep: Vec<usize> = (0..g.m()).filter(|&e| e != xy).collect();
        let sub_ps = PathSystem::from_fn(sub.clone(), |u, v| ps.get(u, v).to_vec())?;
        let w_sub = solve(&sub_ps)?;
        return heavy_completion(g, keep.iter().map(|&e| (e, w_sub.get(sub.edge_id(g.edge(e).0, g.edge(e).1).unwrap()).clone())), &[xy]);
    }

    let split = Split::new(g, &q)?;
    let p_h = ps
        .restricts_to(&split.h, &split.h_vertices)
        .ok_or_else(|| Error::Failed("system does not restrict to H".into()))?;
    let w_h = solve(&p_h)?;

    if let Some(&unused) = q_edges.iter().find(|&&e| !used[e]) {
        // H plus pendant paths: the remaining edges of Q are forced
        let mut assigned: Vec<Option<Rational>> = vec![None; g.m()];
        pull_back(g, &split.h, &split.h_vertices, &w_h, &mut assigned);
        for &e in &q_edges {
            if e != unused {
                assigned[e] = Some(Rational::one());
            }
        }
        let known = assigned.iter().enumerate().filter_map(|(e, w)| w.clone().map(|w| (e, w)));
        return heavy_completion(g, known, &[unused]);
    }

    let p_c = ps
        .restricts_to(&split.c, &split.c_vertices)
        .ok_or_else(|| Error::Failed("system does not restrict to C".into()))?;
    let w_c = metrize_cycle(&p_c, true)?;
    match build_derived_system(ps, &q) {
        Err(Error::EmptyFiber) => lift_suspended_path(ps, &q, &w_h, &w_c, None),
        Err(e) => Err(e),
        Ok(derived) => {
            let w_prime = solve(&derived.system)?;
            lift_suspended_path(ps, &q, &w_h, &w_c, Some(&w_prime))
        }
    }
}

/// Given weights for all edges but `rest`, give each edge of `rest`
/// weight `1 + sum of the given weights`, so no geodesic can use it.
fn heavy_completion(g: &Graph, known: impl Iterator<Item = (usize, Rational)>, rest: &[usize]) -> Result<WeightFunction> {
    let mut vals: Vec<Option<Rational>> = vec![None; g.m()];
    for (e, w) in known {
        vals[e] = Some(w);
    }
    let heavy = Rational::one() + vals.iter().flatten().sum::<Rational>();
    for &e in rest {
        vals[e] = Some(heavy.clone());
    }
    let vals: Option<Vec<Rational>> = vals.into_iter().collect();
    WeightFunction::new(g, vals.ok_or_else(|| Error::Failed("edge left without weight".into()))?)
}
