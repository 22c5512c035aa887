#![allow(dead_code)]

use pathmetric::graph::{canonical_form, is_biconnected, is_outerplanar};
use pathmetric::Graph;
use std::collections::BTreeSet;

/// Connected graphs on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << all.len()) {
        let edges = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i]);
        let g = Graph::new(n, edges).unwrap();
        if g.is_connected() && seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// 2-connected outerplanar graphs on `n` vertices up to isomorphism: the
/// cycle 0..n plus pairwise non-crossing chords.
pub fn biconnected_outerplanar(n: usize) -> Vec<Graph> {
    let chords: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (a + 2..n).map(move |b| (a, b))).filter(|&(a, b)| !(a == 0 && b == n - 1)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << chords.len()) {
        let cs: Vec<_> = (0..chords.len()).filter(|i| mask >> i & 1 == 1).map(|i| chords[i]).collect();
        if cs.iter().any(|&(a, b)| cs.iter().any(|&(c, d)| a < c && c < b && b < d)) {
            continue;
        }
        let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend(cs);
        let g = Graph::new(n, edges).unwrap();
        debug_assert!(is_outerplanar(&g) && is_biconnected(&g));
        if seen.insert(canonical_form(&g)) {
            out.push(g);
        }
    }
    out
}

/// C_n plus the given chords.
pub fn cycle_with(n: usize, chords: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend_from_slice(chords);
    Graph::new(n, edges).unwrap()
}
