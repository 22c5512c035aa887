//! Non-metrizability screens: proven size bounds for well-connected
//! graphs, and subdivisions of catalog graphs.

use super::data::catalog;
use crate::error::{Error, Result};
use crate::graph::{contains_subdivision, is_biconnected, is_planar, vertex_connectivity, Graph, SubdivisionWitness};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Structural rules, each a theorem bounding the order of metrizable
/// graphs with some property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// 4-connected, at least 7 vertices
    A,
    /// 2-connected and non-planar, at least 8 vertices
    B,
    /// 3-connected, at least 8 vertices
    C,
    /// 2-connected with minimum degree 3, at least 13 vertices
    D,
    /// contains a subdivision of the 5-wheel, at least 8 vertices
    E,
    /// contains a subdivision of the triangular prism, at least 7 vertices
    F,
}

impl Rule {
    pub fn id(self) -> char {
        match self {
            Rule::A => 'a',
            Rule::B => 'b',
            Rule::C => 'c',
            Rule::D => 'd',
            Rule::E => 'e',
            Rule::F => 'f',
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Rule::A => "4-connected with at least 7 vertices",
            Rule::B => "non-planar 2-connected with at least 8 vertices",
            Rule::C => "3-connected with at least 8 vertices",
            Rule::D => "minimum degree 3 with at least 13 vertices",
            Rule::E => "contains a subdivided 5-wheel and has at least 8 vertices",
            Rule::F => "contains a subdivided prism and has at least 7 vertices",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.id(), self.description())
    }
}

/// First rule, in order (a), (c), (b), (d), (e), (f), showing the 2-connected graph `g` is
/// not metrizable.
pub fn screen_structural(g: &Graph) -> Result<Option<Rule>> {
    if !is_biconnected(g) {
        return Err(Error::NotBiconnected);
    }
    let n = g.n();
    if n < 7 {
        return Ok(None);
    }
    let kappa = vertex_connectivity(g)?;
    if kappa >= 4 {
        return Ok(Some(Rule::A));
    }
    // connectivity rules before planarity, so a 3-connected non-planar
    // graph reports (c)
    if n >= 8 && kappa >= 3 {
        return Ok(Some(Rule::C));
    }
    if n >= 8 && !is_planar(g) {
        return Ok(Some(Rule::B));
    }
    if n >= 13 && g.min_degree() >= 3 {
        return Ok(Some(Rule::D));
    }
    if n >= 8 && contains_subdivision(g, &Graph::wheel(5))?.is_some() {
        return Ok(Some(Rule::E));
    }
    if contains_subdivision(g, &Graph::prism())?.is_some() {
        return Ok(Some(Rule::F));
    }
    Ok(None)
}

/// The first catalog graph (by id) that `g` contains as a topological
/// minor, with the embedding.
pub fn screen_catalog(g: &Graph) -> Result<Option<(usize, SubdivisionWitness)>> {
    for entry in catalog()? {
        if entry.graph.n() > g.n() || entry.graph.m() > g.m() {
            continue;
        }
        if let Some(w) = contains_subdivision(g, &entry.graph)? {
            return Ok(Some((entry.id, w)));
        }
    }
    Ok(None)
}
