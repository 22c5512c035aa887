use super::{norm, Edge, Graph};
use crate::error::{Error, Result};

/// Replace edge `e` by a path with `k` new internal vertices, numbered
/// from `g.n()` upward. The new edges are appended after the others.
pub fn subdivide_edge(g: &Graph, e: Edge, k: usize) -> Result<Graph> {
    let id = g.require_edge(e.0, e.1)?;
    let (u, v) = g.edge(id);
    let mut edges: Vec<Edge> = g.edges().iter().enumerate().filter(|&(i, _)| i != id).map(|(_, &x)| x).collect();
    let chain: Vec<usize> = std::iter::once(u).chain(g.n()..g.n() + k).chain(std::iter::once(v)).collect();
    edges.extend(chain.windows(2).map(|w| norm(w[0], w[1])));
    Graph::new(g.n() + k, edges)
}

/// Bookkeeping from [`suppress_degree2`].
#[derive(Clone, Debug)]
pub struct Suppression {
    /// old vertex -> new vertex, `None` for suppressed vertices
    pub vertex_map: Vec<Option<usize>>,
    /// new edge id -> the original vertex path it replaces
    pub edge_paths: Vec<Vec<usize>>,
}

/// Suppress degree-2 vertices until every remaining one has adjacent
/// neighbours (suppressing it would create a parallel edge, so it is
/// kept; so are cycle components of length 3).
pub fn suppress_degree2(g: &Graph) -> (Graph, Suppression) {
    // chains between kept vertices, as original vertex sequences
    let mut chains: Vec<Vec<usize>> = g.edges().iter().map(|&(u, v)| vec![u, v]).collect();
    let mut alive = vec![true; g.n()];
    loop {
        let mut deg = vec![0usize; g.n()];
        for c in &chains {
            deg[c[0]] += 1;
            deg[*c.last().unwrap()] += 1;
        }
        let ends = |c: &Vec<usize>| norm(c[0], *c.last().unwrap());
        let pick = (0..g.n()).filter(|&z| alive[z] && deg[z] == 2).find_map(|z| {
            let at: Vec<usize> = (0..chains.len()).filter(|&i| chains[i][0] == z || *chains[i].last().unwrap() == z).collect();
            let other = |i: usize| if chains[i][0] == z { *chains[i].last().unwrap() } else { chains[i][0] };
            let (a, b) = (other(at[0]), other(at[1]));
            let blocked = a == b || chains.iter().any(|c| ends(c) == norm(a, b));
            (!blocked).then_some((z, at[0], at[1]))
        });
        let Some((z, i, j)) = pick else { break };
        let mut left = chains[i].clone();
        if *left.last().unwrap() != z {
            left.reverse();
        }
        let mut right = chains[j].clone();
        if right[0] != z {
            right.reverse();
        }
        left.extend_from_slice(&right[1..]);
        if left[0] > *left.last().unwrap() {
            left.reverse();
        }
        let (hi, lo) = (i.max(j), i.min(j));
        chains.remove(hi);
        chains[lo] = left;
        alive[z] = false;
    }
    let mut vertex_map = vec![None; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if alive[v] {
            vertex_map[v] = Some(next);
            next += 1;
        }
    }
    let edges = chains.iter().map(|c| norm(vertex_map[c[0]].unwrap(), vertex_map[*c.last().unwrap()].unwrap()));
    let h = Graph::new(next, edges).expect("suppression keeps the graph simple");
    (h, Suppression { vertex_map, edge_paths: chains })
}

/// Contract `e`, keeping the smaller endpoint; the larger endpoint is
/// removed and later ids shift down. Returns old -> new vertex map.
pub fn contract_edge(g: &Graph, e: Edge) -> Result<(Graph, Vec<usize>)> {
    let id = g.require_edge(e.0, e.1)?;
    let (a, b) = g.edge(id);
    let map: Vec<usize> = (0..g.n()).map(|v| if v == b { a } else if v > b { v - 1 } else { v }).collect();
    let mut edges: Vec<Edge> = Vec::new();
    for &(u, v) in g.edges() {
        let f = norm(map[u], map[v]);
        if f.0 != f.1 && !edges.contains(&f) {
            edges.push(f);
        }
    }
    Ok((Graph::new(g.n() - 1, edges)?, map))
}

/// Maximal suspended paths with at least one internal vertex, oriented
/// so the sequence is lexicographically no larger than its reverse and
/// sorted. A chain that leaves and returns to the same branch vertex is
/// reported with equal endpoints.
pub fn suspended_paths(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let comp = g.components();
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..ncomp {
        if (0..g.n()).filter(|&v| comp[v] == c).all(|v| g.degree(v) == 2) {
            return Err(Error::CycleComponent);
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        if g.degree(s) == 2 {
            continue;
        }
        for &w in g.neighbors(s) {
            if g.degree(w) != 2 {
                continue;
            }
            let mut path = vec![s, w];
            while g.degree(*path.last().unwrap()) == 2 {
                let cur = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let nb = g.neighbors(cur);
                path.push(if nb[0] == prev { nb[1] } else { nb[0] });
            }
            let rev: Vec<usize> = path.iter().rev().copied().collect();
            out.push(if rev < path { rev } else { path });
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn subdivide_then_suppress_round_trip() {
        let k4 = Graph::complete(4);
        for &e in k4.edges() {
            for k in 1..=3 {
                let s = subdivide_edge(&k4, e, k).unwrap();
                assert_eq!(s.n(), 4 + k);
                let (back, sup) = suppress_degree2(&s);
                assert!(is_isomorphic(&back, &k4));
                assert_eq!(sup.edge_paths.iter().map(|p| p.len() - 1).sum::<usize>(), s.m());
            }
        }
    }

    #[test]
    fn contract_c4() {
        let (g, map) = contract_edge(&Graph::cycle(4), (0, 1)).unwrap();
        assert!(g.is_cycle() && g.n() == 3);
        assert_eq!(map, vec![0, 0, 1, 2]);
        assert_eq!(contract_edge(&Graph::cycle(4), (0, 2)).unwrap_err(), Error::MissingEdge(0, 2));
    }

    #[test]
    fn suspended_paths_of_chorded_cycle() {
        // C5 with chord 0-2: chains 0-1-2 and 2-3-4-0
        let g = Graph::cycle(5).add_edge(0, 2).unwrap();
        let p = suspended_paths(&g).unwrap();
        assert_eq!(p, vec![vec![0, 1, 2], vec![0, 4, 3, 2]]);
        assert!(suspended_paths(&Graph::complete(4)).unwrap().is_empty());
        assert_eq!(suspended_paths(&Graph::cycle(5)).unwrap_err(), Error::CycleComponent);
    }

    #[test]
    fn triangle_is_not_suppressed() {
        let (h, _) = suppress_degree2(&Graph::cycle(3));
        assert!(h.is_cycle() && h.n() == 3);
        let (h, _) = suppress_degree2(&Graph::cycle(7));
        assert_eq!(h.n(), 3);
    }
}
