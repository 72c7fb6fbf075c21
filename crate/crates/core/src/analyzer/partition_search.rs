//! Search for a partition `A_1 … A_5` maximizing the number of structured
//! edges (edges between cyclically consecutive parts).

use rand::Rng;

use crate::graph::ColoredGraph;
use crate::partition::{consecutive, BlowupPartition, PARTS};

pub const DEFAULT_RESTARTS: usize = 32;

/// Best partition found and its structured edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSearch {
    pub partition: BlowupPartition,
    pub structured: usize,
    /// True when every assignment was (implicitly) examined.
    pub exact: bool,
}

/// Local search with random restarts, followed by exhaustive branch and
/// bound when `5^n ≤ budget`.
pub fn best_blowup_partition<R: Rng + ?Sized>(g: &ColoredGraph, budget: u64, rng: &mut R) -> PartitionSearch {
    let n = g.n();
    let adj = Adjacency::new(g);

    let mut best = vec![0usize; n];
    let mut best_score = adj.score(&best);
    for _ in 0..DEFAULT_RESTARTS {
        let mut parts: Vec<usize> = (0..n).map(|_| rng.gen_range(0..PARTS)).collect();
        let score = local_optimum(&adj, &mut parts);
        if score > best_score {
            best_score = score;
            best = parts;
        }
    }

    let exhaustive = fits_budget(n, budget);
    if exhaustive && n > 0 {
        let mut search = Exhaustive::new(&adj, best_score);
        search.run();
        if let Some(found) = search.best {
            best = found;
            best_score = search.best_score;
        }
    }

    PartitionSearch {
        partition: BlowupPartition::new(best).expect("parts below 5"),
        structured: best_score,
        exact: exhaustive,
    }
}

fn fits_budget(n: usize, budget: u64) -> bool {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = match total.checked_mul(PARTS as u64) {
            Some(t) if t <= budget => t,
            _ => return false,
        };
    }
    true
}

struct Adjacency {
    neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    fn new(g: &ColoredGraph) -> Self {
        Self {
            neighbors: (0..g.n()).map(|v| g.neighbors(v).iter().collect()).collect(),
        }
    }

    fn score(&self, parts: &[usize]) -> usize {
        self.neighbors
            .iter()
            .enumerate()
            .map(|(v, ns)| ns.iter().filter(|&&u| u > v && consecutive(parts[u], parts[v])).count())
            .sum()
    }

    fn part_degrees(&self, v: usize, parts: &[usize]) -> [usize; PARTS] {
        let mut d = [0; PARTS];
        for &u in &self.neighbors[v] {
            d[parts[u]] += 1;
        }
        d
    }
}

/// Structured edges at `v` if it sits in part `p`.
fn gain(d: &[usize; PARTS], p: usize) -> usize {
    d[(p + 1) % PARTS] + d[(p + PARTS - 1) % PARTS]
}

/// Cyclic orders of the five part labels, one per rotation/reflection class.
fn relabelings() -> Vec<[usize; PARTS]> {
    let mut out = Vec::new();
    let mut perm = [0, 1, 2, 3, 4];
    permute(&mut perm, 1, &mut out);
    out
}

fn permute(perm: &mut [usize; PARTS], k: usize, out: &mut Vec<[usize; PARTS]>) {
    if k == PARTS {
        // Fixing 0 first and requiring perm[1] < perm[4] removes rotations
        // and reflections.
        if perm[1] < perm[4] {
            out.push(*perm);
        }
        return;
    }
    for i in k..PARTS {
        perm.swap(k, i);
        permute(perm, k + 1, out);
        perm.swap(k, i);
    }
}

/// Steepest ascent over single-vertex moves and part relabelings until
/// neither improves the score.
fn local_optimum(adj: &Adjacency, parts: &mut [usize]) -> usize {
    let orders = relabelings();
    let mut score = adj.score(parts);
    loop {
        let mut best_move: Option<(usize, usize, usize)> = None;
        for v in 0..parts.len() {
            let d = adj.part_degrees(v, parts);
            let here = gain(&d, parts[v]);
            for p in 0..PARTS {
                let g = gain(&d, p);
                if g > here && best_move.is_none_or(|(_, _, b)| g - here > b) {
                    best_move = Some((v, p, g - here));
                }
            }
        }
        if let Some((v, p, delta)) = best_move {
            parts[v] = p;
            score += delta;
            continue;
        }

        let mut improved = false;
        for order in &orders {
            let relabeled: Vec<usize> = parts.iter().map(|&p| order[p]).collect();
            let s = adj.score(&relabeled);
            if s > score {
                parts.copy_from_slice(&relabeled);
                score = s;
                improved = true;
                break;
            }
        }
        if !improved {
            return score;
        }
    }
}

struct Exhaustive<'a> {
    adj: &'a Adjacency,
    // Edges from each vertex to lower-numbered vertices.
    back_edges: Vec<Vec<usize>>,
    // suffix[i]: edges whose larger endpoint is ≥ i.
    suffix: Vec<usize>,
    parts: Vec<usize>,
    best: Option<Vec<usize>>,
    best_score: usize,
}

impl<'a> Exhaustive<'a> {
    fn new(adj: &'a Adjacency, incumbent: usize) -> Self {
        let n = adj.neighbors.len();
        let back_edges: Vec<Vec<usize>> = (0..n)
            .map(|v| adj.neighbors[v].iter().copied().filter(|&u| u < v).collect())
            .collect();
        let mut suffix = vec![0; n + 1];
        for v in (0..n).rev() {
            suffix[v] = suffix[v + 1] + back_edges[v].len();
        }
        Self {
            adj,
            back_edges,
            suffix,
            parts: vec![0; n],
            best: None,
            best_score: incumbent,
        }
    }

    fn run(&mut self) {
        // Rotating the labels preserves the score, so vertex 0 sits in part 0.
        self.parts[0] = 0;
        self.extend(1, 0);
    }

    fn extend(&mut self, v: usize, score: usize) {
        let n = self.adj.neighbors.len();
        if v == n {
            if score > self.best_score {
                self.best_score = score;
                self.best = Some(self.parts.clone());
            }
            return;
        }
        if score + self.suffix[v] <= self.best_score {
            return;
        }
        for p in 0..PARTS {
            let add = self.back_edges[v]
                .iter()
                .filter(|&&u| consecutive(self.parts[u], p))
                .count();
            self.parts[v] = p;
            self.extend(v + 1, score + add);
        }
    }
}
