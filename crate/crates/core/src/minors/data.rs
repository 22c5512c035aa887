//! Loading and validating the bundled catalog.

use crate::error::{Error, Result};
use crate::graph::{content_lines, parse_usizes, Graph};
use crate::metrize::{decide_metrizable, verify_certificate, Certificate, Verdict};
use crate::path_system::PathSystem;
use sha2::{Digest, Sha256};
use std::sync::OnceLock;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// 1..=11
    pub id: usize,
    pub graph: Graph,
    pub system: PathSystem,
    pub certificate: Certificate,
    /// the edge whose weight the certificate forces to be `<= 0`
    pub forced_edge: (usize, usize),
}

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../../fixtures/catalog/", $name)))
    };
}

const FILES: &[(&str, &str)] = &[
    fixture!("index.txt"),
    fixture!("graph01.g"),
    fixture!("graph01.ps"),
    fixture!("graph01.cert"),
    fixture!("graph02.g"),
    fixture!("graph02.ps"),
    fixture!("graph02.cert"),
    fixture!("graph03.g"),
    fixture!("graph03.ps"),
    fixture!("graph03.cert"),
    fixture!("graph04.g"),
    fixture!("graph04.ps"),
    fixture!("graph04.cert"),
    fixture!("graph05.g"),
    fixture!("graph05.ps"),
    fixture!("graph05.cert"),
    fixture!("graph06.g"),
    fixture!("graph06.ps"),
    fixture!("graph06.cert"),
    fixture!("graph07.g"),
    fixture!("graph07.ps"),
    fixture!("graph07.cert"),
    fixture!("graph08.g"),
    fixture!("graph08.ps"),
    fixture!("graph08.cert"),
    fixture!("graph09.g"),
    fixture!("graph09.ps"),
    fixture!("graph09.cert"),
    fixture!("graph10.g"),
    fixture!("graph10.ps"),
    fixture!("graph10.cert"),
    fixture!("graph11.g"),
    fixture!("graph11.ps"),
    fixture!("graph11.cert"),
];

const SUMS: &str = include_str!("../../fixtures/catalog/SHA256SUMS");

fn corrupt(m: impl Into<String>) -> Error {
    Error::CorruptData(m.into())
}

fn file(name: &str) -> Result<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).ok_or_else(|| corrupt(format!("missing {name}")))
}

fn check_sums() -> Result<()> {
    let mut listed = 0;
    for line in SUMS.lines().filter(|l| !l.trim().is_empty()) {
        let (hash, name) = line.split_once("  ").ok_or_else(|| corrupt("malformed checksum line"))?;
        let got = format!("{:x}", Sha256::digest(file(name.trim())?.as_bytes()));
        if got != hash {
            return Err(corrupt(format!("checksum mismatch for {name}")));
        }
        listed += 1;
    }
    if listed != FILES.len() {
        return Err(corrupt("checksum list does not cover every fixture"));
    }
    Ok(())
}

fn load_entry(id: usize, forced: (usize, usize)) -> Result<CatalogEntry> {
    let ctx = |e: Error| corrupt(format!("entry {id}: {e}"));
    let graph = Graph::parse(file(&format!("graph{id:02}.g"))?).map_err(ctx)?;
    let system = PathSystem::parse(file(&format!("graph{id:02}.ps"))?, graph.clone()).map_err(ctx)?;
    let certificate = Certificate::parse(file(&format!("graph{id:02}.cert"))?).map_err(ctx)?;
    if !system.is_consistent() {
        return Err(corrupt(format!("entry {id}: system is inconsistent")));
    }
    if !verify_certificate(&system, &certificate) {
        return Err(corrupt(format!("entry {id}: certificate does not verify")));
    }
    let e = graph.edge_id(forced.0, forced.1).ok_or_else(|| corrupt(format!("entry {id}: forced edge missing")))?;
    if !certificate.forced_edges(&graph).contains(&e) {
        return Err(corrupt(format!("entry {id}: certificate does not force the stated edge")));
    }
    if let Verdict::Weights(_) = decide_metrizable(&system, false).map_err(ctx)? {
        return Err(corrupt(format!("entry {id}: system is metrizable")));
    }
    Ok(CatalogEntry { id, graph, system, certificate, forced_edge: forced })
}

fn load() -> Result<Vec<CatalogEntry>> {
    check_sums()?;
    let mut out = Vec::new();
    for (ln, line) in content_lines(file("index.txt")?) {
        let v = parse_usizes(ln, line).map_err(|e| corrupt(e.to_string()))?;
        let [id, a, b] = v[..] else { return Err(corrupt("index lines are `id u v`")) };
        out.push(load_entry(id, (a, b))?);
    }
    if out.len() != 11 || out.iter().enumerate().any(|(i, e)| e.id != i + 1) {
        return Err(corrupt("index must list entries 1..=11 in order"));
    }
    Ok(out)
}

/// The eleven catalog entries, validated on first use.
pub fn catalog() -> Result<&'static [CatalogEntry]> {
    static CATALOG: OnceLock<Result<Vec<CatalogEntry>>> = OnceLock::new();
    CATALOG.get_or_init(load).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_eleven_entries() {
        let c = catalog().unwrap();
        assert_eq!(c.len(), 11);
        // entry 2 forces w(3,4), entry 1 forces w(6,7) in 1-based labels
        assert_eq!(c[1].forced_edge, (2, 3));
        assert_eq!(c[0].forced_edge, (5, 6));
        assert!(c.iter().all(|e| e.certificate.pairs.iter().all(|p| p.multiplier == crate::weights::int(1))));
    }
}
