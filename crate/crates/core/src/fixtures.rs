//! Named example graphs and systems bundled with the crate.

use crate::circle_maps::{SampledCircleMap, SampledDensity};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path_system::{PartialPathSystem, PathSystem};

macro_rules! text {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/", $name)))
    };
}

const FILES: &[(&str, &str)] = &[
    text!("petersen.g"),
    text!("petersen.ps"),
    text!("prism.g"),
    text!("prism.ps"),
    text!("k24.g"),
    text!("k24.ps"),
    text!("nonextendable.g"),
    text!("nonextendable.pps"),
    text!("met_quotient.g"),
    text!("met_quotient.ps"),
    text!("edge_contraction_a.g"),
    text!("edge_contraction_a.ps"),
    text!("edge_contraction_b.g"),
    text!("circle/antipodal.map"),
    text!("circle/mobius.map"),
    text!("circle/step7.map"),
    text!("circle/trivial8.map"),
    text!("circle/uniform.density"),
    text!("circle/perturbed.density"),
    text!("circle/half.density"),
];

/// Names accepted by [`graph`]; each also has a system except
/// `edge_contraction_b` (only a graph) and `nonextendable` (a partial
/// system).
pub const GRAPHS: &[&str] =
    &["petersen", "prism", "k24", "nonextendable", "met_quotient", "edge_contraction_a", "edge_contraction_b"];

/// Every bundled file name, relative to the fixture directory.
pub fn file_names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

/// Raw text of a bundled file, e.g. `"prism.ps"` or `"circle/mobius.map"`.
pub fn raw(file: &str) -> Result<&'static str> {
    FILES
        .iter()
        .find(|(n, _)| *n == file)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::PreconditionViolated(format!("no bundled fixture {file}")))
}

pub fn graph(name: &str) -> Result<Graph> {
    Graph::parse(raw(&format!("{name}.g"))?)
}

pub fn system(name: &str) -> Result<PathSystem> {
    PathSystem::parse(raw(&format!("{name}.ps"))?, graph(name)?)
}

pub fn partial_system(name: &str) -> Result<PartialPathSystem> {
    PartialPathSystem::parse(raw(&format!("{name}.pps"))?, graph(name)?)
}

pub fn circle_map(name: &str) -> Result<SampledCircleMap> {
    SampledCircleMap::parse(raw(&format!("circle/{name}.map"))?)
}

pub fn density(name: &str) -> Result<SampledDensity> {
    SampledDensity::parse(raw(&format!("circle/{name}.density"))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_parses() {
        for name in GRAPHS {
            graph(name).unwrap();
        }
        for name in ["petersen", "prism", "k24", "met_quotient", "edge_contraction_a"] {
            assert!(system(name).unwrap().is_consistent(), "{name}");
        }
        assert!(partial_system("nonextendable").unwrap().is_consistent_partial());
        for m in ["antipodal", "mobius", "step7", "trivial8"] {
            circle_map(m).unwrap();
        }
        for d in ["uniform", "perturbed", "half"] {
            density(d).unwrap();
        }
    }
}
