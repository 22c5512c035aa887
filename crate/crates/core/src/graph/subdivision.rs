use super::Graph;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Embedding of a subdivision of `pattern` into a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionWitness {
    /// pattern vertex -> host vertex
    pub branch_map: Vec<usize>,
    /// pattern edge id -> host path from the image of its first endpoint
    /// to the image of its second
    pub path_map: Vec<Vec<usize>>,
}

impl SubdivisionWitness {
    /// Structural check: injective branch map, valid host paths with the
    /// right ends, internal vertices pairwise disjoint and off the branch
    /// images.
    pub fn validate(&self, host: &Graph, pattern: &Graph) -> bool {
        if self.branch_map.len() != pattern.n() || self.path_map.len() != pattern.m() {
            return false;
        }
        let mut owner = vec![false; host.n()];
        for &h in &self.branch_map {
            if h >= host.n() || std::mem::replace(&mut owner[h], true) {
                return false;
            }
        }
        for (i, path) in self.path_map.iter().enumerate() {
            let (a, b) = pattern.edge(i);
            if path.len() < 2
                || path[0] != self.branch_map[a]
                || *path.last().unwrap() != self.branch_map[b]
                || !host.is_simple_path(path)
            {
                return false;
            }
            for &v in &path[1..path.len() - 1] {
                if std::mem::replace(&mut owner[v], true) {
                    return false;
                }
            }
        }
        true
    }
}

const MAX_PATTERN: usize = 12;

enum Job {
    /// map a pattern vertex with no earlier neighbour
    Free(usize),
    /// map pattern vertex `p` by growing a path from an earlier vertex
    Grow { p: usize, edge: usize },
    /// connect two mapped vertices
    Route { edge: usize },
}

struct Search<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    jobs: Vec<Job>,
    // job index at which each pattern edge gets routed
    edge_job: Vec<usize>,
    free: u64,
    img: Vec<usize>,
    paths: Vec<Vec<usize>>,
    walk: Vec<usize>,
}

impl<'a> Search<'a> {
    fn is_free(&self, v: usize) -> bool {
        self.free >> v & 1 == 1
    }

    /// Every mapped vertex must still have room for its pending edges.
    fn feasible(&self, at: usize) -> bool {
        for q in 0..self.pattern.n() {
            if self.img[q] == usize::MAX {
                continue;
            }
            let mut pending = 0;
            let mut direct = 0u64;
            for &r in self.pattern.neighbors(q) {
                let e = self.pattern.edge_id(q, r).unwrap();
                if self.edge_job[e] >= at {
                    pending += 1;
                    if self.img[r] != usize::MAX {
                        direct |= 1 << self.img[r];
                    }
                }
            }
            if pending == 0 {
                continue;
            }
            let cap = self.host.neighbors(self.img[q]).iter().filter(|&&w| self.is_free(w) || direct >> w & 1 == 1).count();
            if cap < pending {
                return false;
            }
        }
        true
    }

    fn run(&mut self, at: usize) -> bool {
        if at == self.jobs.len() {
            return true;
        }
        if !self.feasible(at) {
            return false;
        }
        match self.jobs[at] {
            Job::Free(p) => {
                for h in 0..self.host.n() {
                    if self.is_free(h) && self.host.degree(h) >= self.pattern.degree(p) {
                        self.img[p] = h;
                        self.free &= !(1 << h);
                        if self.run(at + 1) {
                            return true;
                        }
                        self.free |= 1 << h;
                        self.img[p] = usize::MAX;
                    }
                }
                false
            }
            Job::Grow { p, edge } => {
                let (a, b) = self.pattern.edge(edge);
                let q = if a == p { b } else { a };
                self.walk = vec![self.img[q]];
                self.grow(at, p, edge)
            }
            Job::Route { edge } => {
                let (a, _) = self.pattern.edge(edge);
                self.walk = vec![self.img[a]];
                self.route(at, edge)
            }
        }
    }

    fn grow(&mut self, at: usize, p: usize, edge: usize) -> bool {
        let cur = *self.walk.last().unwrap();
        let nbrs: Vec<usize> = self.host.neighbors(cur).to_vec();
        for w in nbrs {
            if !self.is_free(w) {
                continue;
            }
            self.walk.push(w);
            self.free &= !(1 << w);
            if self.host.degree(w) >= self.pattern.degree(p) {
                self.img[p] = w;
                let mut path = self.walk.clone();
                if self.pattern.edge(edge).0 == p {
                    path.reverse();
                }
                let saved = std::mem::replace(&mut self.paths[edge], path);
                let walk = self.walk.clone();
                if self.run(at + 1) {
                    return true;
                }
                self.walk = walk;
                self.paths[edge] = saved;
                self.img[p] = usize::MAX;
            }
            if self.grow(at, p, edge) {
                return true;
            }
            self.free |= 1 << w;
            self.walk.pop();
        }
        false
    }

    fn route(&mut self, at: usize, edge: usize) -> bool {
        let target = self.img[self.pattern.edge(edge).1];
        let cur = *self.walk.last().unwrap();
        let nbrs: Vec<usize> = self.host.neighbors(cur).to_vec();
        for w in nbrs {
            if w == target {
                let mut path = self.walk.clone();
                path.push(w);
                self.paths[edge] = path;
                let walk = self.walk.clone();
                if self.run(at + 1) {
                    return true;
                }
                self.walk = walk;
                continue;
            }
            if !self.is_free(w) {
                continue;
            }
            self.walk.push(w);
            self.free &= !(1 << w);
            if self.route(at, edge) {
                return true;
            }
            self.free |= 1 << w;
            self.walk.pop();
        }
        false
    }
}

/// Search for a subdivision of `pattern` inside `host`. Exhaustive
/// backtracking: branch vertices are placed by growing a path out of an
/// already placed neighbour, remaining edges are routed through unused
/// vertices, and a capacity check prunes placements whose free degree
/// cannot carry the edges still owed.
pub fn contains_subdivision(host: &Graph, pattern: &Graph) -> Result<Option<SubdivisionWitness>> {
    if pattern.n() > MAX_PATTERN {
        return Err(Error::PatternTooLarge(pattern.n()));
    }
    assert!(host.n() <= 64, "host graphs are limited to 64 vertices");
    if pattern.n() > host.n() || pattern.m() > host.m() {
        return Ok(None);
    }
    // degree sequence domination
    let mut hd: Vec<usize> = (0..host.n()).map(|v| host.degree(v)).collect();
    let mut pd: Vec<usize> = (0..pattern.n()).map(|v| pattern.degree(v)).collect();
    hd.sort_unstable_by(|a, b| b.cmp(a));
    pd.sort_unstable_by(|a, b| b.cmp(a));
    if pd.iter().zip(&hd).any(|(p, h)| p > h) {
        return Ok(None);
    }
    // cyclomatic number can only drop when passing to a subgraph
    let cyclo = |g: &Graph| {
        let comps = g.components().iter().copied().max().map_or(0, |c| c + 1);
        g.m() + comps - g.n()
    };
    if cyclo(pattern) > cyclo(host) {
        return Ok(None);
    }

    // host vertices that can carry anything: when the pattern has no
    // vertex of degree <= 1, strip the host's pendant trees
    let mut free: u64 = if host.n() == 64 { u64::MAX } else { (1u64 << host.n()) - 1 };
    if pattern.min_degree() >= 2 {
        let mut deg: Vec<usize> = (0..host.n()).map(|v| host.degree(v)).collect();
        let mut stack: Vec<usize> = (0..host.n()).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if free >> v & 1 == 0 {
                continue;
            }
            free &= !(1 << v);
            for &w in host.neighbors(v) {
                if free >> w & 1 == 1 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        stack.push(w);
                    }
                }
            }
        }
    }

    // vertex order: start at max degree, then most placed neighbours
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut jobs = Vec::new();
    let mut edge_job = vec![usize::MAX; pattern.m()];
    for _ in 0..n {
        let p = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = pattern.neighbors(v).iter().filter(|&&w| placed[w]).count();
                (back, pattern.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        let mut back: Vec<usize> = pattern.neighbors(p).iter().copied().filter(|&w| placed[w]).collect();
        back.sort_unstable();
        placed[p] = true;
        match back.split_first() {
            None => jobs.push(Job::Free(p)),
            Some((&q, rest)) => {
                let e = pattern.edge_id(p, q).unwrap();
                edge_job[e] = jobs.len();
                jobs.push(Job::Grow { p, edge: e });
                for &r in rest {
                    let e = pattern.edge_id(p, r).unwrap();
                    edge_job[e] = jobs.len();
                    jobs.push(Job::Route { edge: e });
                }
            }
        }
    }
    let mut s = Search {
        host,
        pattern,
        jobs,
        edge_job,
        free,
        img: vec![usize::MAX; n],
        paths: vec![Vec::new(); pattern.m()],
        walk: Vec::new(),
    };
    if !s.run(0) {
        return Ok(None);
    }
    let w = SubdivisionWitness { branch_map: s.img, path_map: s.paths };
    debug_assert!(w.validate(host, pattern));
    Ok(Some(w))
}

fn has(host: &Graph, pattern: &Graph) -> bool {
    contains_subdivision(host, pattern).expect("fixed small pattern").is_some()
}

/// No subdivision of K_4 or K_{2,3}.
pub fn is_outerplanar(g: &Graph) -> bool {
    !has(g, &Graph::complete(4)) && !has(g, &Graph::complete_bipartite(2, 3))
}

/// Kuratowski: no subdivision of K_5 or K_{3,3}.
pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    !has(g, &Graph::complete(5)) && !has(g, &Graph::complete_bipartite(3, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_in_k5() {
        let w = contains_subdivision(&Graph::complete(5), &Graph::complete(4)).unwrap().unwrap();
        assert!(w.validate(&Graph::complete(5), &Graph::complete(4)));
    }

    #[test]
    fn nothing_in_a_cycle() {
        assert!(contains_subdivision(&Graph::cycle(8), &Graph::complete(4)).unwrap().is_none());
    }

    #[test]
    fn petersen_is_not_planar() {
        let p = Graph::petersen();
        let k33 = Graph::complete_bipartite(3, 3);
        let w = contains_subdivision(&p, &k33).unwrap().unwrap();
        assert!(w.validate(&p, &k33));
        assert!(contains_subdivision(&p, &Graph::complete(5)).unwrap().is_none());
        assert!(!is_planar(&p));
    }

    #[test]
    fn planarity_and_outerplanarity() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(!is_planar(&Graph::complete(5)));
        assert!(is_outerplanar(&Graph::cycle(7)));
        assert!(!is_outerplanar(&Graph::complete(4)));
        assert!(!is_outerplanar(&Graph::complete_bipartite(2, 3)));
        assert!(is_planar(&Graph::prism()));
        assert!(is_planar(&Graph::wheel(6)));
    }

    #[test]
    fn pattern_size_limit() {
        assert_eq!(
            contains_subdivision(&Graph::complete(14), &Graph::cycle(13)).unwrap_err(),
            Error::PatternTooLarge(13)
        );
    }

    #[test]
    fn subdivided_pattern_is_found() {
        let g = crate::graph::subdivide_edge(&Graph::complete(4), (0, 1), 3).unwrap();
        let w = contains_subdivision(&g, &Graph::complete(4)).unwrap().unwrap();
        assert!(w.validate(&g, &Graph::complete(4)));
        assert!(w.path_map.iter().any(|p| p.len() == 5));
    }
}
