use super::PathSystem;
use crate::error::{Error, Result};
use crate::graph::{contract_edge, Graph};
use serde::{Deserialize, Serialize};

const ROOT: usize = usize::MAX;

/// One spanning tree per root, stored as parent arrays pointing towards
/// the root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSystem {
    pub graph: Graph,
    /// parents[root][v]; `usize::MAX` at the root itself
    pub parents: Vec<Vec<usize>>,
}

impl TreeSystem {
    /// Edge ids of the tree rooted at `r`, sorted.
    pub fn tree_edges(&self, r: usize) -> Vec<usize> {
        let mut e: Vec<usize> = (0..self.graph.n())
            .filter(|&v| v != r)
            .map(|v| self.graph.edge_id(v, self.parents[r][v]).unwrap())
            .collect();
        e.sort_unstable();
        e
    }

    /// Path from `r` to `v` in the tree rooted at `r`.
    pub fn tree_path(&self, r: usize, v: usize) -> Vec<usize> {
        let mut p = vec![v];
        while *p.last().unwrap() != r {
            p.push(self.parents[r][*p.last().unwrap()]);
        }
        p.reverse();
        p
    }
}

/// T_u is the union of the chosen paths out of u.
pub fn to_tree_system(ps: &PathSystem) -> Result<TreeSystem> {
    ps.require_consistent()?;
    let g = ps.graph();
    let n = g.n();
    let mut parents = vec![vec![ROOT; n]; n];
    for u in 0..n {
        for v in 0..n {
            if v != u {
                let p = ps.oriented(u, v);
                parents[u][v] = p[p.len() - 2];
            }
        }
        // parent pointers must lead back to u
        for v in 0..n {
            let mut x = v;
            let mut steps = 0;
            while x != u {
                x = parents[u][x];
                steps += 1;
                if steps > n {
                    return Err(Error::InconsistentInput(format!("paths from {u} do not form a tree")));
                }
            }
        }
    }
    Ok(TreeSystem { graph: g.clone(), parents })
}

/// Inverse of [`to_tree_system`]; the trees must agree on every u-v path.
pub fn to_path_system(ts: &TreeSystem) -> Result<PathSystem> {
    let mut bad = None;
    let ps = PathSystem::from_fn(ts.graph.clone(), |u, v| {
        let a = ts.tree_path(u, v);
        let mut b = ts.tree_path(v, u);
        b.reverse();
        if a != b && bad.is_none() {
            bad = Some((u, v));
        }
        a
    })?;
    match bad {
        Some((u, v)) => Err(Error::InconsistentInput(format!("trees at {u} and {v} disagree on their path"))),
        None => Ok(ps),
    }
}

/// Edges lying in every tree T_u, equivalently edges that for every u lie
/// on some chosen path out of u. Sorted edge ids.
pub fn persistent_edges(ps: &PathSystem) -> Result<Vec<usize>> {
    ps.require_consistent()?;
    let g = ps.graph();
    let n = g.n();
    let mut count = vec![0usize; g.m()];
    for u in 0..n {
        let mut in_tree = vec![false; g.m()];
        for v in (0..n).filter(|&v| v != u) {
            for w in ps.get(u, v).windows(2) {
                in_tree[g.edge_id(w[0], w[1]).unwrap()] = true;
            }
        }
        for (e, &t) in in_tree.iter().enumerate() {
            count[e] += usize::from(t);
        }
    }
    Ok((0..g.m()).filter(|&e| count[e] == n).collect())
}

/// A contracted system with the bookkeeping needed to lift weights back.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub system: PathSystem,
    /// original vertex -> quotient vertex
    pub vertex_map: Vec<usize>,
    /// original edge id -> quotient edge id (`None` when contracted)
    pub edge_map: Vec<Option<usize>>,
}

/// Contract the given persistent edges one at a time in ascending edge-id
/// order. Parallel edges created by a contraction are merged.
pub fn quotient(ps: &PathSystem, f_edges: &[usize]) -> Result<Quotient> {
    let persistent = persistent_edges(ps)?;
    let mut order = f_edges.to_vec();
    order.sort_unstable();
    order.dedup();
    if let Some(&e) = order.iter().find(|e| !persistent.contains(e)) {
        let (u, v) = ps.graph().edge(e);
        return Err(Error::NonPersistentEdge(u, v));
    }
    let g0 = ps.graph();
    let mut vertex_map: Vec<usize> = (0..g0.n()).collect();
    let mut cur = ps.clone();
    for e in order {
        let (a, b) = g0.edge(e);
        let (x, y) = (vertex_map[a], vertex_map[b]);
        let (h, step) = contract_edge(cur.graph(), (x, y))?;
        // representative preimage of each new vertex
        let mut rep = vec![usize::MAX; h.n()];
        for v in 0..cur.n() {
            if rep[step[v]] == usize::MAX {
                rep[step[v]] = v;
            }
        }
        let next = PathSystem::from_fn(h.clone(), |s, t| {
            let mut p: Vec<usize> = cur.oriented(rep[s], rep[t]).iter().map(|&z| step[z]).collect();
            p.dedup();
            p
        })?;
        for m in vertex_map.iter_mut() {
            *m = step[*m];
        }
        cur = next;
    }
    let g = cur.graph();
    let edge_map = g0
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (x, y) = (vertex_map[u], vertex_map[v]);
            (x != y).then(|| g.edge_id(x, y).unwrap())
        })
        .collect();
    debug_assert!(cur.is_consistent());
    Ok(Quotient { system: cur, vertex_map, edge_map })
}
