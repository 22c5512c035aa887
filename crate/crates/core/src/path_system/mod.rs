//! Path systems, tree systems and the structure theory around them.

mod cycle;
mod neighborly;
mod tree;

pub use cycle::{canonical_odd_system, classify_cycle_system, crossing_function_of, system_of_crossing, CrossingFunction, CycleClass};
pub use neighborly::extend_neighborly;
pub use tree::{persistent_edges, quotient, to_path_system, to_tree_system, Quotient, TreeSystem};

use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::weights::{tie_broken_tree, WeightFunction};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Position of the pair `u < v` in lexicographic pair order.
#[inline]
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Orientation with the smaller endpoint first.
pub fn canonical(mut p: Vec<usize>) -> Vec<usize> {
    if p.first() > p.last() {
        p.reverse();
    }
    p
}

/// Where consistency first fails: the stored `path` has `x` and `y` on
/// it but its x..y stretch differs from the stored path for {x, y}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub path: Vec<usize>,
    pub x: usize,
    pub y: usize,
}

/// One simple path per unordered pair. Consistency is not enforced by
/// construction; see [`PathSystem::check_consistency`].
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct PathSystem {
    graph: Graph,
    /// indexed by [`pair_index`], smaller endpoint first
    paths: Vec<Vec<usize>>,
}

/// JSON shape shared by full and partial systems: the graph plus a list
/// of paths (JSON objects cannot be keyed by pairs).
#[derive(Serialize, Deserialize)]
struct SystemRepr {
    graph: Graph,
    paths: Vec<Vec<usize>>,
}

impl TryFrom<SystemRepr> for PathSystem {
    type Error = Error;
    fn try_from(r: SystemRepr) -> Result<PathSystem> {
        PathSystem::new(r.graph, r.paths)
    }
}

impl From<PathSystem> for SystemRepr {
    fn from(ps: PathSystem) -> Self {
        SystemRepr { graph: ps.graph, paths: ps.paths }
    }
}

impl TryFrom<SystemRepr> for PartialPathSystem {
    type Error = Error;
    fn try_from(r: SystemRepr) -> Result<PartialPathSystem> {
        PartialPathSystem::new(r.graph, r.paths)
    }
}

impl From<PartialPathSystem> for SystemRepr {
    fn from(ps: PartialPathSystem) -> Self {
        SystemRepr { graph: ps.graph, paths: ps.paths.into_values().collect() }
    }
}

fn validate_path(g: &Graph, u: usize, v: usize, p: &[usize]) -> Result<()> {
    if p.first() != Some(&u) || p.last() != Some(&v) || !g.is_simple_path(p) {
        return Err(Error::InvalidSystem(format!("{p:?} is not a simple {u}-{v} path")));
    }
    Ok(())
}

impl PathSystem {
    /// `paths` in lexicographic pair order, either orientation.
    pub fn new(graph: Graph, paths: Vec<Vec<usize>>) -> Result<PathSystem> {
        let n = graph.n();
        if paths.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidSystem(format!("{} paths for {n} vertices", paths.len())));
        }
        let paths: Vec<Vec<usize>> = paths.into_iter().map(canonical).collect();
        for ((u, v), p) in pairs(n).zip(&paths) {
            validate_path(&graph, u, v, p)?;
        }
        Ok(PathSystem { graph, paths })
    }

    /// Caller guarantees `paths` are valid, canonical and in pair order.
    pub(crate) fn from_parts_unchecked(graph: Graph, paths: Vec<Vec<usize>>) -> PathSystem {
        debug_assert_eq!(paths.len(), graph.n() * graph.n().saturating_sub(1) / 2);
        PathSystem { graph, paths }
    }

    pub fn from_fn(graph: Graph, mut f: impl FnMut(usize, usize) -> Vec<usize>) -> Result<PathSystem> {
        let paths = pairs(graph.n()).map(|(u, v)| f(u, v)).collect();
        PathSystem::new(graph, paths)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The chosen path for {u, v}, smaller endpoint first.
    pub fn get(&self, u: usize, v: usize) -> &[usize] {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        &self.paths[pair_index(self.n(), a, b)]
    }

    /// The chosen path for {u, v}, running from u to v.
    pub fn oriented(&self, u: usize, v: usize) -> Vec<usize> {
        let mut p = self.get(u, v).to_vec();
        if u > v {
            p.reverse();
        }
        p
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &[usize])> {
        pairs(self.n()).zip(self.paths.iter().map(|p| p.as_slice()))
    }

    /// First violation in lexicographic pair order, scanning subpaths of
    /// each path by start then end position.
    pub fn check_consistency(&self) -> std::result::Result<(), Violation> {
        for (_, p) in self.iter() {
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    let sub = &p[i..=j];
                    let stored = self.get(sub[0], sub[sub.len() - 1]);
                    let same = if sub[0] < sub[sub.len() - 1] {
                        stored == sub
                    } else {
                        stored.iter().eq(sub.iter().rev())
                    };
                    if !same {
                        return Err(Violation { path: p.to_vec(), x: p[i], y: p[j] });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_consistent(&self) -> bool {
        self.check_consistency().is_ok()
    }

    pub fn require_consistent(&self) -> Result<()> {
        self.check_consistency()
            .map_err(|v| Error::InconsistentInput(format!("path {:?} disagrees with P[{},{}]", v.path, v.x, v.y)))
    }

    /// Every edge is its own chosen path.
    pub fn is_neighborly(&self) -> bool {
        self.graph.edges().iter().all(|&(u, v)| self.get(u, v).len() == 2)
    }

    /// Edge ids lying on at least one chosen path.
    pub fn used_edges(&self) -> Vec<bool> {
        let mut used = vec![false; self.graph.m()];
        for (_, p) in self.iter() {
            for w in p.windows(2) {
                used[self.graph.edge_id(w[0], w[1]).unwrap()] = true;
            }
        }
        used
    }

    pub fn to_partial(&self) -> PartialPathSystem {
        PartialPathSystem {
            graph: self.graph.clone(),
            paths: self.iter().map(|(k, p)| (k, p.to_vec())).collect(),
        }
    }

    /// The restriction to a subgraph `h` given as a vertex list of the
    /// host plus `h`'s own graph on those vertices (h vertex i is host
    /// vertex `vertices[i]`). `None` unless every chosen path between
    /// vertices of `h` runs inside `h`.
    pub fn restricts_to(&self, h: &Graph, vertices: &[usize]) -> Option<PathSystem> {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        PathSystem::from_fn(h.clone(), |a, b| {
            let p = self.oriented(vertices[a], vertices[b]);
            p.iter().map(|&x| local[x]).collect()
        })
        .ok()
        .filter(|r| r.iter().all(|(_, p)| p.iter().all(|&x| x != usize::MAX)))
    }

    pub fn parse(text: &str, graph: Graph) -> Result<PathSystem> {
        let partial = PartialPathSystem::parse(text, graph)?;
        let n = partial.graph.n();
        if partial.paths.len() != n * n.saturating_sub(1) / 2 {
            return Err(parse_err(0, format!("{} of {} pairs present", partial.paths.len(), n * n.saturating_sub(1) / 2)));
        }
        Ok(PathSystem { graph: partial.graph, paths: partial.paths.into_values().collect() })
    }
}

impl fmt::Display for PathSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pathsystem {}", self.n())?;
        for ((u, v), p) in self.iter() {
            writeln!(f, "{u} {v} : {}", join(p))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PathSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn join(p: &[usize]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Paths for some of the pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr", into = "SystemRepr")]
pub struct PartialPathSystem {
    pub graph: Graph,
    pub paths: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PartialPathSystem {
    pub fn new(graph: Graph, paths: impl IntoIterator<Item = Vec<usize>>) -> Result<PartialPathSystem> {
        let mut map = BTreeMap::new();
        for p in paths {
            let p = canonical(p);
            let (u, v) = (*p.first().ok_or_else(|| Error::InvalidSystem("empty path".into()))?, *p.last().unwrap());
            validate_path(&graph, u, v, &p)?;
            if u == v || map.insert((u, v), p).is_some() {
                return Err(Error::InvalidSystem(format!("pair {u}-{v} given twice or degenerate")));
            }
        }
        Ok(PartialPathSystem { graph, paths: map })
    }

    pub fn get(&self, u: usize, v: usize) -> Option<&[usize]> {
        self.paths.get(&(u.min(v), u.max(v))).map(|p| p.as_slice())
    }

    /// Any two stored paths agree between every pair of shared vertices.
    pub fn is_consistent_partial(&self) -> bool {
        let ps: Vec<&Vec<usize>> = self.paths.values().collect();
        for (i, p) in ps.iter().enumerate() {
            for q in &ps[i..] {
                let posq: BTreeMap<usize, usize> = q.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                let shared: Vec<(usize, usize)> =
                    p.iter().enumerate().filter_map(|(i, v)| posq.get(v).map(|&j| (i, j))).collect();
                for a in 0..shared.len() {
                    for b in a + 1..shared.len() {
                        let (pi, qi) = shared[a];
                        let (pj, qj) = shared[b];
                        let sp = &p[pi..=pj];
                        let same = if qi <= qj { q[qi..=qj] == *sp } else { q[qj..=qi].iter().rev().eq(sp.iter()) };
                        if !same {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn parse(text: &str, graph: Graph) -> Result<PartialPathSystem> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let n: usize = header
            .strip_prefix("pathsystem")
            .and_then(|r| r.trim().parse().ok())
            .ok_or_else(|| parse_err(ln, "header must be `pathsystem n`"))?;
        if n != graph.n() {
            return Err(parse_err(ln, format!("system has {n} vertices, graph {}", graph.n())));
        }
        let mut prev: Option<(usize, usize)> = None;
        let mut paths = BTreeMap::new();
        for (ln, line) in lines {
            let (head, body) = line.split_once(':').ok_or_else(|| parse_err(ln, "expected `u v : path`"))?;
            let hv = parse_usizes(ln, head)?;
            let [u, v] = hv[..] else {
                return Err(parse_err(ln, "expected two endpoints"));
            };
            if u >= v {
                return Err(parse_err(ln, "pairs must have u < v"));
            }
            if prev.is_some_and(|p| p >= (u, v)) {
                return Err(parse_err(ln, "pairs must be in lexicographic order"));
            }
            prev = Some((u, v));
            let p = parse_usizes(ln, body)?;
            validate_path(&graph, u, v, &p).map_err(|e| parse_err(ln, e.to_string()))?;
            paths.insert((u, v), p);
        }
        Ok(PartialPathSystem { graph, paths })
    }
}

impl fmt::Display for PartialPathSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pathsystem {}", self.graph.n())?;
        for ((u, v), p) in &self.paths {
            writeln!(f, "{u} {v} : {}", join(p))?;
        }
        Ok(())
    }
}

/// The system of w-geodesics, ties broken by comparing sorted edge-id
/// sequences lexicographically (edge ids follow the graph's edge list).
/// Tie-breaking this way acts like an infinitesimal additive perturbation
/// of the weights, so the result is always consistent.
pub fn induce_from_weights(g: &Graph, w: &WeightFunction) -> PathSystem {
    let trees: Vec<Vec<Vec<usize>>> = (0..g.n()).map(|s| tie_broken_tree(g, w.values(), s)).collect();
    PathSystem::from_fn(g.clone(), |u, v| trees[u][v].clone()).expect("connected graph")
}
