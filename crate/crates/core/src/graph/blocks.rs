use super::{norm, Graph};
use crate::error::{Error, Result};

/// A block of the decomposition together with its embedding into the
/// parent graph.
#[derive(Clone, Debug)]
pub struct Block {
    pub graph: Graph,
    /// block vertex id -> parent vertex id
    pub vertices: Vec<usize>,
    /// block edge id -> parent edge id
    pub edges: Vec<usize>,
}

/// Tarjan's lowpoint algorithm with an explicit edge stack; iterative so
/// deep paths do not blow the call stack.
fn blocks_raw(g: &Graph) -> (Vec<Vec<usize>>, Vec<bool>) {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent edge id, next neighbour index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (u, pe, ref mut i)) = stack.last_mut() {
            if *i < g.neighbors(u).len() {
                let w = g.neighbors(u)[*i];
                *i += 1;
                let e = g.edge_id(u, w).unwrap();
                if e == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    estack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, e, 0));
                } else if disc[w] < disc[u] {
                    estack.push(e);
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (blocks, is_cut)
}

/// Block decomposition of a connected graph. Edge sets of the returned
/// blocks partition the edge set; block order is deterministic.
pub fn biconnected_components(g: &Graph) -> Result<Vec<Block>> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    if g.n() == 1 {
        return Ok(vec![Block { graph: Graph::empty(1), vertices: vec![0], edges: vec![] }]);
    }
    let (raw, _) = blocks_raw(g);
    let mut out: Vec<Block> = raw
        .into_iter()
        .map(|mut edges| {
            edges.sort_unstable();
            let mut vertices: Vec<usize> = edges.iter().flat_map(|&e| [g.edge(e).0, g.edge(e).1]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let pos = |v: usize| vertices.binary_search(&v).unwrap();
            let local = edges.iter().map(|&e| {
                let (a, b) = g.edge(e);
                norm(pos(a), pos(b))
            });
            let graph = Graph::new(vertices.len(), local).expect("block");
            Block { graph, vertices: vertices.clone(), edges }
        })
        .collect();
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(out)
}

pub fn articulation_points(g: &Graph) -> Vec<usize> {
    let (_, cut) = blocks_raw(g);
    (0..g.n()).filter(|&v| cut[v]).collect()
}
