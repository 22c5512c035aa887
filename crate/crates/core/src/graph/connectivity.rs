use super::Graph;
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// Maximum number of internally vertex-disjoint s-t paths, capped at `cap`.
/// Unit-capacity flow on the split graph (v_in -> v_out).
fn local_connectivity(g: &Graph, s: usize, t: usize, cap: usize) -> usize {
    let n = g.n();
    // node 2v = in, 2v+1 = out
    let nodes = 2 * n;
    let mut head: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut to = Vec::new();
    let mut capv = Vec::new();
    let mut add = |a: usize, b: usize, c: usize, head: &mut Vec<Vec<usize>>| {
        head[a].push(to.len());
        to.push(b);
        capv.push(c);
        head[b].push(to.len());
        to.push(a);
        capv.push(0);
    };
    let big = n + 1;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add(2 * v, 2 * v + 1, c, &mut head);
    }
    for &(u, v) in g.edges() {
        add(2 * u + 1, 2 * v, big, &mut head);
        add(2 * v + 1, 2 * u, big, &mut head);
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < cap {
        let mut prev = vec![usize::MAX; nodes];
        let mut seen = vec![false; nodes];
        seen[src] = true;
        let mut q = VecDeque::from([src]);
        while let Some(a) = q.pop_front() {
            if a == dst {
                break;
            }
            for &arc in &head[a] {
                let b = to[arc];
                if capv[arc] > 0 && !seen[b] {
                    seen[b] = true;
                    prev[b] = arc;
                    q.push_back(b);
                }
            }
        }
        if !seen[dst] {
            break;
        }
        let mut b = dst;
        while b != src {
            let arc = prev[b];
            capv[arc] -= 1;
            capv[arc ^ 1] += 1;
            b = to[arc ^ 1];
        }
        flow += 1;
    }
    flow
}

/// Vertex connectivity κ(g); K_n gives n-1, a disconnected graph 0.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = n - 1;
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.min(local_connectivity(g, i, j, best));
            }
        }
    }
    Ok(best)
}

/// 2-connected: at least 3 vertices, connected, no cut vertex.
pub fn is_biconnected(g: &Graph) -> bool {
    g.n() >= 3 && g.is_connected() && super::articulation_points(g).is_empty()
}
