//! Simple undirected graphs on dense vertex ids, plus the structural
//! queries the rest of the crate leans on.

mod blocks;
mod canon;
mod connectivity;
mod ops;
mod subdivision;

pub use blocks::{articulation_points, biconnected_components, Block};
pub use canon::{canonical_form, is_isomorphic};
pub use connectivity::{is_biconnected, vertex_connectivity};
pub use ops::{contract_edge, subdivide_edge, suppress_degree2, suspended_paths, Suppression};
pub use subdivision::{contains_subdivision, is_outerplanar, is_planar, SubdivisionWitness};

use crate::error::{parse_err, Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Edge = (usize, usize);

#[inline]
pub fn norm(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Finite simple graph. Edge ids are positions in `edges`; each stored
/// edge has `u < v`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    labels: Option<Vec<String>>,
    adj: Vec<Vec<usize>>,
    // n*n table of edge ids, usize::MAX when absent
    eid: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertex_count: usize,
    edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Graph> {
        let g = Graph::new(r.vertex_count, r.edges)?;
        match r.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { vertex_count: g.n, edges: g.edges, labels: g.labels }
    }
}

const NONE: usize = usize::MAX;

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range for {n} vertices")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u}-{v}")));
            }
            g.push_edge(u, v);
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph { n, edges: Vec::new(), labels: None, adj: vec![Vec::new(); n], eid: vec![NONE; n * n] }
    }

    fn push_edge(&mut self, u: usize, v: usize) -> usize {
        let id = self.edges.len();
        self.edges.push(norm(u, v));
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.eid[u * self.n + v] = id;
        self.eid[v * self.n + u] = id;
        id
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n {
            return Err(Error::InvalidGraph("label count differs from vertex count".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a vertex: its label if present, else the id.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.eid[u * self.n + v] != NONE
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let id = self.eid[u * self.n + v];
        (id != NONE).then_some(id)
    }

    pub fn require_edge(&self, u: usize, v: usize) -> Result<usize> {
        self.edge_id(u, v).ok_or(Error::MissingEdge(u.min(v), u.max(v)))
    }

    /// Edge ids along a vertex sequence; `None` if some step is not an edge.
    pub fn path_edges(&self, path: &[usize]) -> Option<Vec<usize>> {
        path.windows(2).map(|w| self.edge_id(w[0], w[1])).collect()
    }

    pub fn is_simple_path(&self, path: &[usize]) -> bool {
        if path.is_empty() || path.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &v in path {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().iter().all(|&c| c == 0)
    }

    /// Component index per vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![NONE; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if comp[s] != NONE {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == NONE {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Hop distances from `s` (usize::MAX when unreachable).
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![NONE; self.n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Graph minus one edge; other edge ids above `id` shift down by one.
    pub fn remove_edge(&self, id: usize) -> Graph {
        let edges = self.edges.iter().enumerate().filter(|&(i, _)| i != id).map(|(_, &e)| e);
        let mut g = Graph::new(self.n, edges).expect("subgraph of a valid graph");
        g.labels = self.labels.clone();
        g
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied().chain([norm(u, v)]))
    }

    /// Subgraph induced by `vertices` (in the given order); returns the
    /// subgraph and the map from new ids to old ids.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut pos = vec![NONE; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != NONE && pos[v] != NONE)
            .map(|&(u, v)| norm(pos[u], pos[v]));
        let mut g = Graph::new(vertices.len(), edges).expect("induced subgraph");
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        (g, vertices.to_vec())
    }

    /// Relabel by `perm` (old id -> new id).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| norm(perm[u], perm[v]))).expect("permutation")
    }

    /// The graph with its edge list sorted.
    pub fn sorted(&self) -> Graph {
        let mut e = self.edges.clone();
        e.sort_unstable();
        let mut g = Graph::new(self.n, e).expect("same edges");
        g.labels = self.labels.clone();
        g
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.m() == self.n && self.is_connected() && (0..self.n).all(|v| self.degree(v) == 2)
    }

    /// Vertices of a cycle graph in cyclic order starting at 0, heading
    /// to the smaller neighbour first.
    pub fn cycle_order(&self) -> Result<Vec<usize>> {
        if !self.is_cycle() {
            return Err(Error::NotACycle);
        }
        let mut order = vec![0];
        let mut prev = 0;
        let mut cur = *self.adj[0].iter().min().unwrap();
        while cur != 0 {
            order.push(cur);
            let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    // --- families ---

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|i| norm(i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// K_{a,b} with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
    }

    /// Wheel with hub 0 and rim 1..=k.
    pub fn wheel(k: usize) -> Graph {
        let rim = (0..k).map(|i| norm(1 + i, 1 + (i + 1) % k));
        Graph::new(k + 1, (1..=k).map(|i| (0, i)).chain(rim)).unwrap()
    }

    /// Triangular prism: triangles 0,1,2 and 3,4,5 joined by i -- i+3.
    pub fn prism() -> Graph {
        Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    /// Petersen graph: outer 5-cycle 0..4, spokes i -- i+5, inner pentagram.
    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| norm(i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| norm(5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    // --- text format ---

    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
        let nums = parse_usizes(ln, header)?;
        let [n, m] = nums[..] else {
            return Err(parse_err(ln, "header must be `n m`"));
        };
        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines {
            let nums = parse_usizes(ln, line)?;
            let [u, v] = nums[..] else {
                return Err(parse_err(ln, "edge line must be `u v`"));
            };
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(parse_err(0, format!("header promises {m} edges, found {}", edges.len())));
        }
        Graph::new(n, edges)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.m())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.n, self.edges)
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_usizes(ln: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(ln, format!("bad integer `{t}`"))))
        .collect()
}
