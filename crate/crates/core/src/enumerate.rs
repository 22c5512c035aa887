//! Exhaustive generation of every consistent path system of a small
//! graph.
//!
//! Pairs are visited in order of hop distance. Choosing a path for a pair
//! also fixes the chosen path of every pair of vertices on it (their
//! subpath), so a candidate is admissible only if it agrees with every
//! subpath already fixed. Each consistent system corresponds to exactly
//! one branch of this search.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path_system::{pair_index, pairs, PathSystem};
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::Arc;

/// Default bound on the vertex count.
pub const MAX_VERTICES: usize = 9;

const NONE: u32 = u32::MAX;

struct Candidate {
    path: Vec<usize>,
    /// (pair, candidate) for every sub-pair of the path, itself included
    subs: Vec<(u32, u32)>,
}

struct Context {
    graph: Graph,
    order: Vec<usize>,
    cands: Vec<Vec<Candidate>>,
}

/// All simple u-v paths, shortest first then lexicographic.
pub fn simple_paths(g: &Graph, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, t: usize, p: &mut Vec<usize>, seen: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let x = *p.last().unwrap();
        if x == t {
            out.push(p.clone());
            return;
        }
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                p.push(y);
                go(g, t, p, seen, out);
                p.pop();
                seen[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    go(g, v, &mut vec![u], &mut seen, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

impl Context {
    fn new(g: &Graph) -> Context {
        let n = g.n();
        let raw: Vec<Vec<Vec<usize>>> = pairs(n).map(|(u, v)| simple_paths(g, u, v)).collect();
        let lookup: Vec<HashMap<&[usize], u32>> =
            raw.iter().map(|ps| ps.iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32)).collect()).collect();
        let cands = raw
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|p| {
                        let mut subs = Vec::new();
                        for i in 0..p.len() {
                            for j in i + 1..p.len() {
                                let mut s = p[i..=j].to_vec();
                                if s[0] > s[s.len() - 1] {
                                    s.reverse();
                                }
                                let k = pair_index(n, s[0], s[s.len() - 1]);
                                subs.push((k as u32, lookup[k][s.as_slice()]));
                            }
                        }
                        Candidate { path: p.clone(), subs }
                    })
                    .collect()
            })
            .collect();
        let dist: Vec<Vec<usize>> = (0..n).map(|s| g.bfs(s)).collect();
        let mut order: Vec<usize> = (0..raw.len()).collect();
        let pl: Vec<(usize, usize)> = pairs(n).collect();
        order.sort_by_key(|&k| (dist[pl[k].0][pl[k].1], k));
        Context { graph: g.clone(), order, cands }
    }
}

/// Deterministic enumeration handle; see [`Enumerator::iter`].
#[derive(Clone)]
pub struct Enumerator {
    ctx: Arc<Context>,
}

impl Enumerator {
    pub fn new(g: &Graph) -> Result<Enumerator> {
        Enumerator::with_bound(g, MAX_VERTICES)
    }

    /// Enumerator with an explicit vertex bound (the override knob).
    pub fn with_bound(g: &Graph, max_vertices: usize) -> Result<Enumerator> {
        if g.n() > max_vertices {
            return Err(Error::TooLarge(g.n(), max_vertices));
        }
        if !g.is_connected() {
            return Err(Error::DisconnectedInput);
        }
        Ok(Enumerator { ctx: Arc::new(Context::new(g)) })
    }

    pub fn iter(&self) -> SystemIter {
        SystemIter::new(self.ctx.clone(), None)
    }

    /// Number of top-level branches (choices for the first pair).
    pub fn branches(&self) -> usize {
        self.ctx.order.first().map_or(0, |&k| self.ctx.cands[k].len())
    }

    /// Systems whose first pair takes its `b`-th candidate path.
    pub fn branch(&self, b: usize) -> SystemIter {
        SystemIter::new(self.ctx.clone(), Some(b))
    }

    pub fn count(&self) -> u64 {
        self.iter().count() as u64
    }

    /// Count with `jobs` worker threads splitting the top-level branches.
    pub fn count_parallel(&self, jobs: usize) -> u64 {
        if jobs <= 1 || self.branches() == 0 {
            return self.count();
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        pool.install(|| (0..self.branches()).into_par_iter().map(|b| self.branch(b).count() as u64).sum())
    }

    /// Up to `limit` systems, branches explored in parallel and merged in
    /// branch order, so the output equals the sequential order.
    pub fn collect_parallel(&self, jobs: usize, limit: Option<usize>) -> Vec<PathSystem> {
        if jobs <= 1 || self.branches() == 0 {
            return self.iter().take(limit.unwrap_or(usize::MAX)).collect();
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
        let parts: Vec<Vec<PathSystem>> = pool.install(|| {
            (0..self.branches())
                .into_par_iter()
                .map(|b| self.branch(b).take(limit.unwrap_or(usize::MAX)).collect())
                .collect()
        });
        parts.into_iter().flatten().take(limit.unwrap_or(usize::MAX)).collect()
    }
}

struct Frame {
    pos: usize,
    next: usize,
    trail_len: usize,
}

/// Depth-first stream of consistent systems.
pub struct SystemIter {
    ctx: Arc<Context>,
    assigned: Vec<u32>,
    trail: Vec<u32>,
    frames: Vec<Frame>,
    started: bool,
    finished: bool,
    root: Option<usize>,
}

impl SystemIter {
    fn new(ctx: Arc<Context>, root: Option<usize>) -> SystemIter {
        let npairs = ctx.cands.len();
        SystemIter { ctx, assigned: vec![NONE; npairs], trail: Vec::new(), frames: Vec::new(), started: false, finished: false, root }
    }

    fn first_unassigned(&self, from: usize) -> Option<usize> {
        (from..self.ctx.order.len()).find(|&p| self.assigned[self.ctx.order[p]] == NONE)
    }

    fn compatible(&self, c: &Candidate) -> bool {
        c.subs.iter().all(|&(k, i)| {
            let a = self.assigned[k as usize];
            a == NONE || a == i
        })
    }

    fn build(&self) -> PathSystem {
        let paths = self.assigned.iter().enumerate().map(|(k, &c)| self.ctx.cands[k][c as usize].path.clone()).collect();
        PathSystem::from_parts_unchecked(self.ctx.graph.clone(), paths)
    }
}

impl Iterator for SystemIter {
    type Item = PathSystem;

    fn next(&mut self) -> Option<PathSystem> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            match self.first_unassigned(0) {
                None => {
                    self.finished = true;
                    return (self.root.is_none() || self.root == Some(0)).then(|| self.build());
                }
                Some(pos) => self.frames.push(Frame { pos, next: 0, trail_len: 0 }),
            }
        }
        loop {
            let Some(top) = self.frames.last() else {
                self.finished = true;
                return None;
            };
            let (pos, start, trail_len) = (top.pos, top.next, top.trail_len);
            while self.trail.len() > trail_len {
                let k = self.trail.pop().unwrap();
                self.assigned[k as usize] = NONE;
            }
            let ctx = self.ctx.clone();
            let pair = ctx.order[pos];
            let cands = &ctx.cands[pair];
            let at_root = self.frames.len() == 1;
            let found = (start..cands.len())
                .filter(|&c| !at_root || self.root.map_or(true, |r| r == c))
                .find(|&c| self.compatible(&cands[c]));
            let Some(c) = found else {
                self.frames.pop();
                continue;
            };
            self.frames.last_mut().unwrap().next = c + 1;
            for &(k, i) in &cands[c].subs {
                if self.assigned[k as usize] == NONE {
                    self.assigned[k as usize] = i;
                    self.trail.push(k);
                }
            }
            match self.first_unassigned(pos + 1) {
                None => return Some(self.build()),
                Some(p) => {
                    let t = self.trail.len();
                    self.frames.push(Frame { pos: p, next: 0, trail_len: t });
                }
            }
        }
    }
}

/// Stream of every consistent system of `g`, optionally truncated.
pub fn enumerate_consistent_systems(g: &Graph, limit: Option<usize>) -> Result<impl Iterator<Item = PathSystem>> {
    Ok(Enumerator::new(g)?.iter().take(limit.unwrap_or(usize::MAX)))
}

pub fn count_consistent_systems(g: &Graph) -> Result<u64> {
    Ok(Enumerator::new(g)?.count())
}
