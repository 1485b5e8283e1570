mod common;

use common::*;
use proptest::prelude::*;
use qgm_core::graph::{maximal_cliques, neighbors, separator_triples, SiteGraph, VertexSet};

fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
    (1u32..(1 << n)).map(move |mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
}

fn is_clique_oracle(g: &SiteGraph, s: &VertexSet) -> bool {
    s.iter().all(|&a| s.iter().all(|&b| a == b || g.has_edge(a, b)))
}

/// All maximal cliques by checking every subset.
fn cliques_oracle(g: &SiteGraph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let cliques: Vec<VertexSet> = subsets(n).filter(|s| is_clique_oracle(g, s)).collect();
    let mut maximal: Vec<VertexSet> = cliques
        .iter()
        .filter(|s| !cliques.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .cloned()
        .collect();
    maximal.sort();
    maximal
}

/// Depth-first search for any path from `a` to `c` avoiding `b`.
fn path_avoiding(g: &SiteGraph, a: &VertexSet, b: &VertexSet, c: &VertexSet) -> bool {
    let mut stack: Vec<usize> = a.iter().copied().collect();
    let mut seen: VertexSet = a.clone();
    while let Some(v) = stack.pop() {
        if c.contains(&v) {
            return true;
        }
        for w in 0..g.vertex_count() {
            if g.has_edge(v, w) && !b.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    false
}

#[test]
fn cliques_match_subset_enumeration() {
    let mut r = rng(11);
    for case in 0..300 {
        let n = 1 + case % 8;
        let p = [0.2, 0.5, 0.8][case % 3];
        let g = random_graph(&mut r, n, p, 2);
        assert_eq!(maximal_cliques(&g), cliques_oracle(&g), "case {case}");
    }
}

#[test]
fn path_triples_match_oracle() {
    let g = SiteGraph::path(5, 2).unwrap();
    let got = separator_triples(&g, 2);
    // Oracle: every connected A with |A| <= 2, B = vertices adjacent to A,
    // C = rest, kept when C is non-empty and no path avoids B.
    let mut want = Vec::new();
    for a in subsets(5).filter(|s| s.len() <= 2) {
        let connected = a.len() == 1 || {
            let v: Vec<usize> = a.iter().copied().collect();
            g.has_edge(v[0], v[1])
        };
        if !connected {
            continue;
        }
        let b: VertexSet = (0..5).filter(|w| !a.contains(w) && a.iter().any(|&u| g.has_edge(u, *w))).collect();
        let c: VertexSet = (0..5).filter(|w| !a.contains(w) && !b.contains(w)).collect();
        if c.is_empty() {
            continue;
        }
        assert!(!path_avoiding(&g, &a, &b, &c));
        want.push((a, b, c));
    }
    let mut got_sets: Vec<_> = got.into_iter().map(|t| (t.a, t.b, t.c)).collect();
    got_sets.sort();
    want.sort();
    assert_eq!(got_sets, want);
    assert_eq!(want.len(), 9);
}

#[test]
fn emitted_triples_separate() {
    let mut r = rng(12);
    for case in 0..200 {
        let n = 2 + case % 9;
        let g = random_graph(&mut r, n, 0.35, 2);
        for t in separator_triples(&g, 3) {
            t.check_partition(n).unwrap();
            assert!(!t.a.is_empty() && !t.c.is_empty());
            assert!(g.separates(&t), "case {case}: {t:?}");
            assert!(!path_avoiding(&g, &t.a, &t.b, &t.c), "case {case}: {t:?}");
            assert!(g.is_connected_set(&t.a));
        }
    }
}

proptest! {
    #[test]
    fn neighbors_exclude_the_set(seed in any::<u64>(), n in 1usize..10, mask in any::<u32>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n, 0.4, 2);
        let u: VertexSet = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        let nb = neighbors(&g, &u).unwrap();
        prop_assert!(nb.is_disjoint(&u));
        for v in nb {
            prop_assert!(u.iter().any(|&w| g.has_edge(v, w)));
        }
    }
}
