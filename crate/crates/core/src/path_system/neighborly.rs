use super::PathSystem;
use crate::error::{Error, Result};
use crate::graph::{norm, Graph};
use std::collections::HashMap;

/// Extend a consistent neighborly system on the induced subgraph
/// `g[sub]` (sub vertex i is g vertex `sub[i]`) to all of `g`.
///
/// Vertices are added one at a time, always one adjacent to the processed
/// set, so the processed set stays connected. A new vertex v is joined
/// directly to its neighbours; any other x heads towards the lowest-id
/// neighbour u0 of v along its chosen path and hops to v at the first
/// neighbour of v it meets.
pub fn extend_neighborly(g: &Graph, sub: &[usize], ps_sub: &PathSystem) -> Result<PathSystem> {
    if sub.is_empty() || !g.is_connected() {
        return Err(Error::PreconditionViolated("need a non-empty subgraph of a connected graph".into()));
    }
    let (induced, _) = g.induced(sub);
    let mut want: Vec<_> = induced.edges().to_vec();
    let mut have: Vec<_> = ps_sub.graph().edges().iter().map(|&(a, b)| norm(a, b)).collect();
    want.sort_unstable();
    have.sort_unstable();
    if ps_sub.n() != sub.len() || want != have {
        return Err(Error::NotInducedSubgraph);
    }
    ps_sub.require_consistent()?;
    if !ps_sub.is_neighborly() {
        return Err(Error::NotNeighborly);
    }

    let mut paths: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (_, p) in ps_sub.iter() {
        let q: Vec<usize> = p.iter().map(|&x| sub[x]).collect();
        insert(&mut paths, q);
    }
    let mut inside = vec![false; g.n()];
    let mut members: Vec<usize> = sub.to_vec();
    for &v in sub {
        inside[v] = true;
    }
    while members.len() < g.n() {
        let v = (0..g.n()).find(|&v| !inside[v] && g.neighbors(v).iter().any(|&w| inside[w])).unwrap();
        let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| inside[w]).collect();
        let u0 = *nbrs.iter().min().unwrap();
        let mut fresh = Vec::new();
        for &x in &members {
            let p = if nbrs.contains(&x) {
                vec![x, v]
            } else {
                let toward = get(&paths, x, u0);
                let cut = toward.iter().position(|z| nbrs.contains(z)).unwrap();
                let mut p = toward[..=cut].to_vec();
                p.push(v);
                p
            };
            fresh.push(p);
        }
        for p in fresh {
            insert(&mut paths, p);
        }
        inside[v] = true;
        members.push(v);
    }
    let ps = PathSystem::from_fn(g.clone(), |a, b| get(&paths, a, b))?;
    debug_assert!(ps.is_consistent() && ps.is_neighborly());
    Ok(ps)
}

fn insert(paths: &mut HashMap<(usize, usize), Vec<usize>>, p: Vec<usize>) {
    let (a, b) = (p[0], *p.last().unwrap());
    let p = if a < b { p } else { p.into_iter().rev().collect() };
    paths.insert(norm(a, b), p);
}

/// Path from a to b.
fn get(paths: &HashMap<(usize, usize), Vec<usize>>, a: usize, b: usize) -> Vec<usize> {
    let mut p = paths[&norm(a, b)].clone();
    if a > b {
        p.reverse();
    }
    p
}
