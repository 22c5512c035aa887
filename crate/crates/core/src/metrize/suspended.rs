//! Adding an edge `xy` next to a suspended `x`–`y` path.
//!
//! Setting: `g_plus = G + xy` where `q` is a suspended path of `G` from
//! `x` to `y`. `C = q + xy` is a cycle and `H` is `g_plus` without the
//! interior of `q`. When the system uses every edge of `C` it restricts
//! to both; weights for `H` and `C` are glued when no vertex of `C` has
//! `xy` as its crossing edge, and otherwise the system is transported to
//! a derived graph `G'` (the blocks of `C` other than the fiber over
//! `xy` suppressed) whose weights are spread back over `C`.

use super::{min_margin, verify_weights};
use crate::error::{Error, Result};
use crate::graph::{norm, Graph};
use crate::path_system::PathSystem;
use crate::weights::{int, path_weight, Rational, WeightFunction};
use num_traits::{Signed, Zero};

/// `H` and `C` as standalone graphs; local vertex `i` is
/// `vertices[i]` of `g_plus`, local edges follow `g_plus`'s edge order.
#[derive(Clone, Debug)]
pub struct Split {
    pub x: usize,
    pub y: usize,
    /// edge id of `xy` in `g_plus`
    pub xy: usize,
    /// the suspended path, `x` first
    pub q: Vec<usize>,
    pub h: Graph,
    pub h_vertices: Vec<usize>,
    pub c: Graph,
    pub c_vertices: Vec<usize>,
}

impl Split {
    pub fn new(g_plus: &Graph, q: &[usize]) -> Result<Split> {
        let bad = |m: &str| Error::PreconditionViolated(m.to_string());
        if q.len() < 3 || !g_plus.is_simple_path(q) {
            return Err(bad("suspended path must be a simple path with an interior vertex"));
        }
        let (x, y) = (q[0], *q.last().unwrap());
        let xy = g_plus.edge_id(x, y).ok_or_else(|| bad("x and y are not adjacent"))?;
        if q[1..q.len() - 1].iter().any(|&z| g_plus.degree(z) != 2) {
            return Err(bad("path interior has a vertex of degree other than 2"));
        }
        let mut inner = vec![false; g_plus.n()];
        for &z in &q[1..q.len() - 1] {
            inner[z] = true;
        }
        let h_vertices: Vec<usize> = (0..g_plus.n()).filter(|&v| !inner[v]).collect();
        let mut c_vertices = q.to_vec();
        c_vertices.sort_unstable();
        let (h, _) = g_plus.induced(&h_vertices);
        let (c, _) = g_plus.induced(&c_vertices);
        Ok(Split { x, y, xy, q: q.to_vec(), h, h_vertices, c, c_vertices })
    }

    fn restrict(&self, ps: &PathSystem) -> Result<(PathSystem, PathSystem)> {
        let ph = ps.restricts_to(&self.h, &self.h_vertices);
        let pc = ps.restricts_to(&self.c, &self.c_vertices);
        match (ph, pc) {
            (Some(ph), Some(pc)) => Ok((ph, pc)),
            _ => Err(Error::PreconditionViolated("system does not restrict to H and C".into())),
        }
    }
}

/// Blocks of `C` along `q` from `y` to `x`: maximal runs of equal
/// crossing edge. `blocks[n]` is the fiber over `xy`.
struct Layout {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl Layout {
    fn alpha(&self) -> usize {
        self.blocks[self.n][0]
    }
    fn beta(&self) -> usize {
        *self.blocks[self.n].last().unwrap()
    }
    fn fiber(&self) -> &[usize] {
        &self.blocks[self.n]
    }
}

/// `None` when no vertex of `C` has crossing edge `xy`.
fn layout(g_plus: &Graph, ps: &PathSystem, split: &Split) -> Result<Option<Layout>> {
    let cyc: Vec<usize> = split.q.windows(2).map(|s| g_plus.edge_id(s[0], s[1]).unwrap()).chain([split.xy]).collect();
    // crossing edge of z: the cycle edge missing from the union of z's paths
    let crossing = |z: usize| -> Result<usize> {
        let mut hit = vec![false; g_plus.m()];
        for &v in &split.q {
            if v != z {
                for e in g_plus.path_edges(ps.get(z, v)).unwrap() {
                    hit[e] = true;
                }
            }
        }
        let missing: Vec<usize> = cyc.iter().copied().filter(|&e| !hit[e]).collect();
        match missing[..] {
            [e] => Ok(e),
            _ => Err(Error::PreconditionViolated(format!("paths from {z} do not form a spanning tree of C"))),
        }
    };
    let walk: Vec<usize> = split.q.iter().rev().copied().collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    for &z in &walk {
        let f = crossing(z)?;
        if labels.last() == Some(&f) {
            blocks.last_mut().unwrap().push(z);
        } else {
            blocks.push(vec![z]);
            labels.push(f);
        }
    }
    if !labels.contains(&split.xy) {
        return Ok(None);
    }
    let n = blocks.len() / 2;
    if blocks.len() % 2 == 0 || labels[n] != split.xy || blocks.len() < 3 {
        return Err(Error::PreconditionViolated("crossing blocks of C are not arranged around the fiber over xy".into()));
    }
    Ok(Some(Layout { blocks, n }))
}

/// Both paths concatenated at their shared end vertex.
fn concat(a: Vec<usize>, b: &[usize]) -> Vec<usize> {
    debug_assert_eq!(a.last(), b.first());
    let mut a = a;
    a.extend_from_slice(&b[1..]);
    a
}

fn seg(ps: &PathSystem, a: usize, b: usize) -> Vec<usize> {
    if a == b {
        vec![a]
    } else {
        ps.oriented(a, b)
    }
}

/// The derived instance `(G', P')`; vertex `i` of `graph` is
/// `vertices[i]` of `g_plus`.
#[derive(Clone, Debug)]
pub struct DerivedSystem {
    pub graph: Graph,
    pub system: PathSystem,
    pub vertices: Vec<usize>,
    /// `Q' = x beta .. alpha y` in `g_plus` ids
    pub q_prime: Vec<usize>,
}

impl DerivedSystem {
    fn local(&self, v: usize) -> usize {
        self.vertices.binary_search(&v).expect("vertex of G'")
    }
    fn edge(&self, u: usize, v: usize) -> usize {
        self.graph.edge_id(self.local(u), self.local(v)).expect("edge of G'")
    }
}

fn require_cycle_used(ps: &PathSystem, split: &Split) -> Result<()> {
    let used = ps.used_edges();
    let g = ps.graph();
    if !split.q.windows(2).all(|s| used[g.edge_id(s[0], s[1]).unwrap()]) || !used[split.xy] {
        return Err(Error::PreconditionViolated("system omits an edge of C".into()));
    }
    Ok(())
}

/// Transport `ps` to `G'`: replace `q` by `Q' = x beta .. alpha y`, drop
/// `xy`, and reroute chosen paths through `Q'` in place of `xy` or the
/// suppressed blocks.
pub fn build_derived_system(ps: &PathSystem, q: &[usize]) -> Result<DerivedSystem> {
    let g_plus = ps.graph();
    ps.require_consistent()?;
    let split = Split::new(g_plus, q)?;
    require_cycle_used(ps, &split)?;
    split.restrict(ps)?;
    let lay = layout(g_plus, ps, &split)?.ok_or(Error::EmptyFiber)?;
    derived_from_layout(ps, &split, &lay)
}

fn derived_from_layout(ps: &PathSystem, split: &Split, lay: &Layout) -> Result<DerivedSystem> {
    let g_plus = ps.graph();
    let (x, y) = (split.x, split.y);
    let (alpha, beta) = (lay.alpha(), lay.beta());
    let in_u = |v: usize| lay.fiber().contains(&v);
    let mut vertices: Vec<usize> = split.h_vertices.iter().copied().chain(lay.fiber().iter().copied()).collect();
    vertices.sort_unstable();
    let pos = |v: usize| vertices.binary_search(&v).ok();
    let mut edges: Vec<(usize, usize)> = g_plus
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| e != split.xy)
        .filter_map(|(_, &(a, b))| Some(norm(pos(a)?, pos(b)?)))
        .collect();
    for (a, b) in [(y, alpha), (beta, x)] {
        let e = norm(pos(a).unwrap(), pos(b).unwrap());
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    let graph = Graph::new(vertices.len(), edges)?;
    let mut q_prime = vec![x];
    q_prime.extend(lay.fiber().iter().rev());
    q_prime.push(y);

    let path_for = |u: usize, v: usize| -> Vec<usize> {
        let p = ps.oriented(u, v);
        match (in_u(u), in_u(v)) {
            (true, true) => p,
            (false, false) => {
                // replace a traversal of xy by Q'
                match p.windows(2).position(|s| (s[0] == x && s[1] == y) || (s[0] == y && s[1] == x)) {
                    None => p,
                    Some(i) => {
                        let mut mid = q_prime.clone();
                        if p[i] == y {
                            mid.reverse();
                        }
                        let mut out = p[..i].to_vec();
                        out.extend(mid);
                        out.extend_from_slice(&p[i + 2..]);
                        out
                    }
                }
            }
            (true, false) => {
                if p.contains(&x) {
                    concat(concat(seg(ps, u, beta), &[beta, x]), &seg(ps, x, v))
                } else {
                    concat(concat(seg(ps, u, alpha), &[alpha, y]), &seg(ps, y, v))
                }
            }
            (false, true) => {
                let mut r = {
                    let p = ps.oriented(v, u);
                    if p.contains(&x) {
                        concat(concat(seg(ps, v, beta), &[beta, x]), &seg(ps, x, u))
                    } else {
                        concat(concat(seg(ps, v, alpha), &[alpha, y]), &seg(ps, y, u))
                    }
                };
                r.reverse();
                r
            }
        }
    };
    let system = PathSystem::from_fn(graph.clone(), |a, b| {
        path_for(vertices[a], vertices[b]).iter().map(|&z| pos(z).expect("path stays in G'")).collect()
    })
    .map_err(|e| Error::PreconditionViolated(format!("derived paths invalid: {e}")))?;
    if !system.is_consistent() {
        return Err(Error::PreconditionViolated("derived system is inconsistent".into()));
    }
    Ok(DerivedSystem { graph, system, vertices, q_prime })
}

/// Weights inducing `ps` on `g_plus` from weights for the pieces.
///
/// `w_h` and `w_c` live on the [`Split`] graphs `H` and `C` and induce
/// the restrictions; they are only needed (and only read) when no vertex
/// of `C` has crossing edge `xy`, in which case they are glued after
/// rescaling `w_c` to agree on `xy`. Otherwise `w_prime` must induce the
/// [`build_derived_system`] instance and the three-stage spread over
/// `C` is applied. The result is checked to induce `ps`.
pub fn lift_suspended_path(
    ps: &PathSystem,
    q: &[usize],
    w_h: &WeightFunction,
    w_c: &WeightFunction,
    w_prime: Option<&WeightFunction>,
) -> Result<WeightFunction> {
    let g_plus = ps.graph();
    ps.require_consistent()?;
    let split = Split::new(g_plus, q)?;
    require_cycle_used(ps, &split)?;
    let (ph, pc) = split.restrict(ps)?;
    let bad = |m: &str| Error::PreconditionViolated(m.to_string());
    let w = match layout(g_plus, ps, &split)? {
        None => {
            if w_h.values().len() != split.h.m() || w_c.values().len() != split.c.m() {
                return Err(bad("piece weights do not match H and C"));
            }
            if !verify_weights(&ph, w_h, false) || !verify_weights(&pc, w_c, false) {
                return Err(bad("piece weights do not induce the restrictions"));
            }
            glue(g_plus, &split, w_h, w_c)
        }
        Some(lay) => {
            let derived = derived_from_layout(ps, &split, &lay)?;
            let wp = w_prime.ok_or_else(|| bad("weights for the derived system are required"))?;
            if wp.values().len() != derived.graph.m() || !verify_weights(&derived.system, wp, false) {
                return Err(bad("w_prime does not induce the derived system"));
            }
            spread(g_plus, &split, &lay, &derived, wp, &pc)?
        }
    };
    if !verify_weights(ps, &w, false) {
        return Err(Error::Failed("suspended-path lift does not induce the system".into()));
    }
    Ok(w)
}

fn glue(g_plus: &Graph, split: &Split, w_h: &WeightFunction, w_c: &WeightFunction) -> WeightFunction {
    let lh = |v: usize| split.h_vertices.binary_search(&v).ok();
    let lc = |v: usize| split.c_vertices.binary_search(&v).unwrap();
    let (x, y) = (split.x, split.y);
    let xy_h = split.h.edge_id(lh(x).unwrap(), lh(y).unwrap()).unwrap();
    let scale = w_h.get(xy_h) / w_c.get(split.c.edge_id(lc(x), lc(y)).unwrap());
    let values = g_plus
        .edges()
        .iter()
        .map(|&(a, b)| match (lh(a), lh(b)) {
            (Some(i), Some(j)) => w_h.get(split.h.edge_id(i, j).unwrap()).clone(),
            _ => w_c.get(split.c.edge_id(lc(a), lc(b)).unwrap()) * &scale,
        })
        .collect();
    WeightFunction::new(g_plus, values).expect("positive pieces")
}

fn spread(
    g_plus: &Graph,
    split: &Split,
    lay: &Layout,
    derived: &DerivedSystem,
    wp: &WeightFunction,
    pc: &PathSystem,
) -> Result<WeightFunction> {
    let (x, y, alpha, beta) = (split.x, split.y, lay.alpha(), lay.beta());
    let wpv = wp.values();
    let loc_q: Vec<usize> = derived.q_prime.iter().map(|&v| derived.local(v)).collect();
    let k = path_weight(&derived.graph, wpv, &loc_q);
    let w_xbeta = wpv[derived.edge(beta, x)].clone();
    let w_yalpha = wpv[derived.edge(y, alpha)].clone();
    let r = w_xbeta.clone().min(w_yalpha.clone()) / int(2);
    let half_k_r = &k / int(2) + &r;

    let eid = |a: usize, b: usize| g_plus.edge_id(a, b).unwrap();
    let n = lay.n;
    let e1 = eid(beta, lay.blocks[n + 1][0]);
    let e2n1 = eid(*lay.blocks[n - 1].last().unwrap(), alpha);

    // w1 and w2 in one pass: H edges and U edges from w', xy gets K, the
    // two edges at U get w'(..) + r, other block-joining edges K/2 + r,
    // edges inside the other blocks 0
    let mut w2 = vec![Rational::zero(); g_plus.m()];
    let h_local = |v: usize| split.h_vertices.binary_search(&v).ok();
    for (e, &(a, b)) in g_plus.edges().iter().enumerate() {
        if e == split.xy {
            continue;
        }
        if let (Some(_), Some(_)) = (h_local(a), h_local(b)) {
            w2[e] = wpv[derived.edge(a, b)].clone();
        }
    }
    w2[split.xy] = k.clone();
    for s in lay.fiber().windows(2) {
        w2[eid(s[0], s[1])] = wpv[derived.edge(s[0], s[1])].clone();
    }
    w2[e1] = &w_xbeta + &r;
    w2[e2n1] = &w_yalpha + &r;
    for i in 0..lay.blocks.len() - 1 {
        let e = eid(*lay.blocks[i].last().unwrap(), lay.blocks[i + 1][0]);
        if e != e1 && e != e2n1 {
            w2[e] = half_k_r.clone();
        }
    }

    // perturb: delta on edges inside the other blocks, balanced on e1 and
    // e_{2n+1}; every bump stays below the cycle system's strict radius
    let w2_c: Vec<Rational> = split.c.edges().iter().map(|&(a, b)| w2[eid(split.c_vertices[a], split.c_vertices[b])].clone()).collect();
    let margin_c = min_margin(pc, &w2_c).unwrap_or_else(|| int(1));
    if !margin_c.is_positive() {
        return Err(Error::Failed("intermediate weights do not strictly induce the cycle system".into()));
    }
    let inner_edges = |bs: &[Vec<usize>]| bs.iter().map(|b| b.len() - 1).sum::<usize>();
    let n1 = inner_edges(&lay.blocks[..n]);
    let n2 = inner_edges(&lay.blocks[n + 1..]);
    let eps_c = margin_c / int(2 * split.c.n() as i64);
    let delta = eps_c / int(n1.max(n2).max(1) as i64);
    let mut w = w2;
    for (i, b) in lay.blocks.iter().enumerate() {
        if i != n {
            for s in b.windows(2) {
                w[eid(s[0], s[1])] = delta.clone();
            }
        }
    }
    w[e1] += &delta * int(n1 as i64);
    w[e2n1] += &delta * int(n2 as i64);
    WeightFunction::new(g_plus, w).map_err(|_| Error::Failed("spread weights are not positive".into()))
}
