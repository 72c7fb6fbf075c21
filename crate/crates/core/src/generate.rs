//! Random decompositions without multicolored triangles, for test corpora.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{cycle_edges, ColoredGraph, Cycle};
use crate::solver::enumerate_candidate_cycles;

const NONE: usize = usize::MAX;

/// Adds candidate 5-cycles of `K_n` in random order, keeping each one that
/// is edge-disjoint from the classes so far and creates no multicolored
/// triangle. The result is maximal.
pub fn greedy_free_packing<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ColoredGraph {
    let mut candidates = if n >= 5 {
        enumerate_candidate_cycles(n, None)
    } else {
        Vec::new()
    };
    candidates.shuffle(rng);
    let mut color = vec![vec![NONE; n]; n];
    let mut classes: Vec<Cycle> = Vec::new();
    for c in candidates {
        let edges = cycle_edges(&c);
        if edges.iter().any(|&(u, v)| color[u][v] != NONE) {
            continue;
        }
        let k = classes.len();
        for &(u, v) in &edges {
            color[u][v] = k;
            color[v][u] = k;
        }
        if creates_multicolored(&color, &edges) {
            for &(u, v) in &edges {
                color[u][v] = NONE;
                color[v][u] = NONE;
            }
        } else {
            classes.push(c);
        }
    }
    ColoredGraph::new(n, classes).expect("greedy keeps classes edge-disjoint")
}

fn creates_multicolored(color: &[Vec<usize>], new_edges: &[(usize, usize)]) -> bool {
    new_edges.iter().any(|&(u, v)| {
        let c = color[u][v];
        (0..color.len()).any(|w| {
            let (a, b) = (color[u][w], color[v][w]);
            a != NONE && b != NONE && a != b && a != c && b != c
        })
    })
}

/// A greedy packing on a random `n` in `n_range`, truncated to a random
/// number of its classes so that sparse instances appear too.
pub fn random_free_instance<R: Rng + ?Sized>(n_range: std::ops::RangeInclusive<usize>, rng: &mut R) -> ColoredGraph {
    let n = rng.gen_range(n_range);
    let g = greedy_free_packing(n, rng);
    let keep = rng.gen_range(0..=g.k());
    let mut classes = g.classes().to_vec();
    classes.truncate(keep);
    ColoredGraph::new(n, classes).expect("sub-decomposition")
}
