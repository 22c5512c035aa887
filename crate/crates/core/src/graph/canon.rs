use super::{norm, Edge, Graph};

/// Equitable refinement: repeatedly split colour classes by the multiset
/// of neighbour colours. Colours stay ranks 0..k in an isomorphism
/// invariant order.
fn refine(g: &Graph, colors: &mut [usize]) {
    let n = g.n();
    let mut classes = count(colors);
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        rank(&keys, colors);
        let c = count(colors);
        if c == classes {
            return;
        }
        classes = c;
    }
}

fn count(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m + 1)
}

fn rank<K: Ord + Clone>(keys: &[K], colors: &mut [usize]) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    for (v, k) in keys.iter().enumerate() {
        colors[v] = sorted.binary_search(k).unwrap();
    }
}

fn search(g: &Graph, mut colors: Vec<usize>, best: &mut Option<Vec<Edge>>) {
    refine(g, &mut colors);
    let n = g.n();
    if count(&colors) == n {
        let mut e: Vec<Edge> = g.edges().iter().map(|&(u, v)| norm(colors[u], colors[v])).collect();
        e.sort_unstable();
        if best.as_ref().map_or(true, |b| e < *b) {
            *best = Some(e);
        }
        return;
    }
    // first smallest non-singleton cell
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let cell = (0..n).filter(|&c| sizes[c] > 1).min_by_key(|&c| (sizes[c], c)).unwrap();
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        // twins are interchangeable by an automorphism; branch once
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let keys: Vec<(usize, usize)> = (0..n).map(|u| (colors[u], usize::from(colors[u] == cell && u != v))).collect();
        let mut c2 = colors.clone();
        rank(&keys, &mut c2);
        search(g, c2, best);
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let mut a: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| w != v).collect();
    let mut b: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != u).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Canonical sorted edge list: isomorphic graphs (and only those) with
/// the same vertex count get equal forms.
pub fn canonical_form(g: &Graph) -> (usize, Vec<Edge>) {
    let mut best = None;
    search(g, vec![0; g.n()], &mut best);
    (g.n(), best.unwrap_or_default())
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.m() == b.m() && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn brute_iso(a: &Graph, b: &Graph) -> bool {
        a.n() == b.n()
            && a.m() == b.m()
            && (0..a.n()).permutations(a.n()).any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
    }

    #[test]
    fn relabelling_preserves_form() {
        let g = Graph::petersen();
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert!(is_isomorphic(&g, &g.permuted(&perm)));
        assert!(!is_isomorphic(&g, &Graph::prism()));
        let k7 = Graph::complete(7);
        assert!(is_isomorphic(&k7, &k7.permuted(&[6, 5, 4, 3, 2, 1, 0])));
    }

    #[test]
    fn agrees_with_brute_force_on_five_vertices() {
        // all graphs on 5 vertices with 5 edges, pairwise
        let all: Vec<(usize, usize)> = (0..5).tuple_combinations().collect();
        let gs: Vec<Graph> = all.iter().copied().combinations(5).map(|e| Graph::new(5, e).unwrap()).collect();
        for (i, a) in gs.iter().enumerate().step_by(7) {
            for b in gs.iter().skip(i).step_by(5) {
                assert_eq!(is_isomorphic(a, b), brute_iso(a, b));
            }
        }
    }
}
