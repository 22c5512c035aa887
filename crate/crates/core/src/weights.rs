//! Exact rational edge weights and the shortest-path machinery built on
//! them.

use crate::error::{parse_err, Error, Result};
use crate::graph::{content_lines, Graph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q` with `q >= 1`, always written with the slash.
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
    };
    (!q.is_zero()).then(|| Rational::new(p, q))
}

/// Positive weight per edge id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFunction {
    #[serde(with = "rational_strings")]
    values: Vec<Rational>,
}

/// Serde helpers writing rationals as `p/q` strings.
pub mod rational_strings {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).ok_or_else(|| D::Error::custom(format!("bad rational `{t}`"))))
            .collect()
    }
}

/// Serde helpers for a single rational as a `p/q` string.
pub mod rational_string {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let t = String::deserialize(d)?;
        parse_rational(&t).ok_or_else(|| D::Error::custom(format!("bad rational `{t}`")))
    }
}

impl WeightFunction {
    pub fn new(g: &Graph, values: Vec<Rational>) -> Result<WeightFunction> {
        if values.len() != g.m() {
            return Err(Error::InvalidGraph(format!("{} weights for {} edges", values.len(), g.m())));
        }
        if let Some(i) = values.iter().position(|x| !x.is_positive()) {
            let (u, v) = g.edge(i);
            return Err(Error::Failed(format!("weight of edge {u}-{v} is not positive")));
        }
        Ok(WeightFunction { values })
    }

    pub fn unit(g: &Graph) -> WeightFunction {
        WeightFunction { values: vec![Rational::one(); g.m()] }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, e: usize) -> &Rational {
        &self.values[e]
    }

    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scaled(&self, k: &Rational) -> WeightFunction {
        assert!(k.is_positive());
        WeightFunction { values: self.values.iter().map(|x| x * k).collect() }
    }

    pub fn parse(text: &str, g: &Graph) -> Result<WeightFunction> {
        let mut values: Vec<Option<Rational>> = vec![None; g.m()];
        for (ln, line) in content_lines(text) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [u, v, w] = toks[..] else {
                return Err(parse_err(ln, "weight line must be `u v p/q`"));
            };
            let u: usize = u.parse().map_err(|_| parse_err(ln, "bad vertex"))?;
            let v: usize = v.parse().map_err(|_| parse_err(ln, "bad vertex"))?;
            let e = g.edge_id(u, v).ok_or_else(|| parse_err(ln, format!("{u}-{v} is not an edge")))?;
            let w = parse_rational(w).ok_or_else(|| parse_err(ln, "bad rational"))?;
            if values[e].replace(w).is_some() {
                return Err(parse_err(ln, "edge listed twice"));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| parse_err(0, format!("no weight for edge {:?}", g.edge(i)))))
            .collect::<Result<Vec<_>>>()?;
        WeightFunction::new(g, values)
    }

    pub fn to_text(&self, g: &Graph) -> String {
        g.edges().iter().zip(&self.values).map(|(&(u, v), w)| format!("{u} {v} {}\n", fmt_rational(w))).collect()
    }
}

pub fn path_weight(g: &Graph, w: &[Rational], path: &[usize]) -> Rational {
    path.windows(2).fold(Rational::zero(), |acc, s| acc + &w[g.edge_id(s[0], s[1]).expect("path edge")])
}

/// Single-source shortest paths over nonnegative weights, avoiding the
/// vertices in `blocked` (bitmask) and the edge `skip`. Array-based
/// label setting; graphs here are small.
pub fn dijkstra(g: &Graph, w: &[Rational], src: usize, blocked: u64, skip: Option<usize>) -> (Vec<Option<Rational>>, Vec<usize>) {
    let n = g.n();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[src] = Some(Rational::zero());
    loop {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            if let Some(d) = &dist[v] {
                if best.map_or(true, |b| d < dist[b].as_ref().unwrap()) {
                    best = Some(v);
                }
            }
        }
        let Some(u) = best else { break };
        done[u] = true;
        let du = dist[u].clone().unwrap();
        for &x in g.neighbors(u) {
            if done[x] || blocked >> x & 1 == 1 {
                continue;
            }
            let e = g.edge_id(u, x).unwrap();
            if Some(e) == skip {
                continue;
            }
            let nd = &du + &w[e];
            if dist[x].as_ref().map_or(true, |d| nd < *d) {
                dist[x] = Some(nd);
                pred[x] = u;
            }
        }
    }
    (dist, pred)
}

fn walk_back(pred: &[usize], src: usize, dst: usize) -> Vec<usize> {
    let mut p = vec![dst];
    while *p.last().unwrap() != src {
        p.push(pred[*p.last().unwrap()]);
    }
    p.reverse();
    p
}

/// Cheapest simple path between the ends of `path` other than `path`
/// itself, with its weight. Every other simple path leaves `path` for the
/// first time at some vertex `path[i]`; for each i the best such path is
/// the prefix plus a shortest spur avoiding the prefix and the next edge
/// of `path`. `None` when `path` is the only route.
pub fn best_competitor(g: &Graph, w: &[Rational], path: &[usize]) -> Option<(Rational, Vec<usize>)> {
    let target = *path.last().unwrap();
    let mut best: Option<(Rational, Vec<usize>)> = None;
    let mut prefix_w = Rational::zero();
    let mut blocked = 0u64;
    for i in 0..path.len() - 1 {
        let a = path[i];
        let skip = g.edge_id(a, path[i + 1]);
        let (dist, pred) = dijkstra(g, w, a, blocked, skip);
        if let Some(d) = &dist[target] {
            let total = &prefix_w + d;
            if best.as_ref().map_or(true, |(b, _)| total < *b) {
                let mut q = path[..i].to_vec();
                q.extend(walk_back(&pred, a, target));
                best = Some((total, q));
            }
        }
        blocked |= 1 << a;
        prefix_w += &w[skip.unwrap()];
    }
    best
}

/// `w(Q) - w(P)` minimised over simple paths `Q != P` with the same ends;
/// `None` when there is no other path.
pub fn margin(g: &Graph, w: &[Rational], path: &[usize]) -> Option<Rational> {
    best_competitor(g, w, path).map(|(q, _)| q - path_weight(g, w, path))
}

/// Total order on edge-index sets used to break weight ties: compare the
/// sorted index sequences lexicographically.
pub fn tie_order(a: &[usize], b: &[usize]) -> Ordering {
    a.cmp(b)
}

/// For every target, the w-shortest path from `src`, ties broken by
/// [`tie_order`] on edge sets. The combined key is additive along paths,
/// so label setting stays exact.
pub fn tie_broken_tree(g: &Graph, w: &[Rational], src: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    // (weight, sorted edge ids, vertex path)
    let mut label: Vec<Option<(Rational, Vec<usize>, Vec<usize>)>> = vec![None; n];
    let mut done = vec![false; n];
    label[src] = Some((Rational::zero(), Vec::new(), vec![src]));
    let key_lt = |a: &(Rational, Vec<usize>, Vec<usize>), b: &(Rational, Vec<usize>, Vec<usize>)| {
        a.0.cmp(&b.0).then_with(|| tie_order(&a.1, &b.1)) == Ordering::Less
    };
    loop {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if !done[v] && label[v].is_some() && best.map_or(true, |b| key_lt(label[v].as_ref().unwrap(), label[b].as_ref().unwrap())) {
                best = Some(v);
            }
        }
        let Some(u) = best else { break };
        done[u] = true;
        let lu = label[u].clone().unwrap();
        for &x in g.neighbors(u) {
            if done[x] {
                continue;
            }
            let e = g.edge_id(u, x).unwrap();
            let mut set = lu.1.clone();
            let pos = set.binary_search(&e).unwrap_err();
            set.insert(pos, e);
            let mut p = lu.2.clone();
            p.push(x);
            let cand = (&lu.0 + &w[e], set, p);
            if label[x].as_ref().map_or(true, |cur| key_lt(&cand, cur)) {
                label[x] = Some(cand);
            }
        }
    }
    label.into_iter().map(|l| l.map(|l| l.2).unwrap_or_default()).collect()
}
