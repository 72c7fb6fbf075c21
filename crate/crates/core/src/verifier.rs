//! Certificate checks: decomposition validity, absence of multicolored
//! triangles, and the inequalities that hold for every multicolored-triangle
//! free C5 decomposition (neighborhood edge bound, per-color degree-sum
//! bound, and the degree double count).

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{ColoredGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("graph contains the multicolored triangle {0:?}")]
    PreconditionViolated([Vertex; 3]),
}

/// Triangle counts split by how many edges of each color they contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleCensus {
    /// `one_edge[i]`: triangles with exactly one edge of color `i`.
    pub one_edge: Vec<u64>,
    /// `two_edges[i]`: triangles with exactly two edges of color `i`.
    pub two_edges: Vec<u64>,
    /// Triangles with all three edges in one color (impossible for C5 classes).
    pub monochromatic: u64,
    pub triangle_count: u64,
    pub multicolored_count: u64,
}

impl TriangleCensus {
    /// `Σ_i (Δ¹_i + 2Δ²_i) + 3·monochromatic`, which must equal three times
    /// the triangle count.
    pub fn weighted_color_sum(&self) -> u64 {
        let per_color: u64 = self.one_edge.iter().zip(&self.two_edges).map(|(a, b)| a + 2 * b).sum();
        per_color + 3 * self.monochromatic
    }
}

pub fn triangle_census(g: &ColoredGraph) -> TriangleCensus {
    let mut census = TriangleCensus {
        one_edge: vec![0; g.k()],
        two_edges: vec![0; g.k()],
        monochromatic: 0,
        triangle_count: 0,
        multicolored_count: 0,
    };
    for u in 0..g.n() {
        for v in g.neighbors(u).iter().filter(|&v| v > u) {
            let common = g.neighbors(u).intersection(g.neighbors(v));
            for w in common.iter().filter(|&w| w > v) {
                let c = [g.color(u, v), g.color(v, w), g.color(u, w)].map(|c| c.expect("triangle edges are present"));
                census.triangle_count += 1;
                if c[0] == c[1] && c[1] == c[2] {
                    census.monochromatic += 1;
                } else if c[0] != c[1] && c[1] != c[2] && c[0] != c[2] {
                    census.multicolored_count += 1;
                    for x in c {
                        census.one_edge[x] += 1;
                    }
                } else {
                    // Two edges share a color, the third differs.
                    let (pair, single) = if c[0] == c[1] {
                        (c[0], c[2])
                    } else if c[0] == c[2] {
                        (c[0], c[1])
                    } else {
                        (c[1], c[0])
                    };
                    census.two_edges[pair] += 1;
                    census.one_edge[single] += 1;
                }
            }
        }
    }
    census
}

/// One color's degree-sum inequality `Σ_{v ∈ C_i} d(v) ≤ 2n + 2Δ²_i + Δ¹_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSlack {
    pub color: usize,
    pub lhs: u64,
    pub rhs: u64,
}

impl ColorSlack {
    pub fn slack(&self) -> i64 {
        self.rhs as i64 - self.lhs as i64
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// Per-color degree-sum check. Only meaningful (and only run) on graphs
/// without a multicolored triangle.
pub fn check_kovacs_nagy(g: &ColoredGraph) -> Result<Vec<ColorSlack>, VerifyError> {
    if let Some(t) = g.find_multicolored_triangle() {
        return Err(VerifyError::PreconditionViolated(t));
    }
    let census = triangle_census(g);
    Ok(color_slacks(g, &census))
}

fn color_slacks(g: &ColoredGraph, census: &TriangleCensus) -> Vec<ColorSlack> {
    let n = g.n() as u64;
    (0..g.k())
        .into_par_iter()
        .map(|i| ColorSlack {
            color: i,
            lhs: g.class(i).iter().map(|&v| g.degree(v) as u64).sum(),
            rhs: 2 * n + 2 * census.two_edges[i] + census.one_edge[i],
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCount {
    /// `Σ_i Σ_{v ∈ C_i} d(v)`, summed class by class.
    pub by_cycles: u64,
    /// `Σ_v d(v)² / 2`, summed vertex by vertex.
    pub by_degrees: u64,
}

impl DoubleCount {
    pub fn equal(&self) -> bool {
        self.by_cycles == self.by_degrees
    }
}

pub fn double_count_check(g: &ColoredGraph) -> DoubleCount {
    let by_cycles = g
        .classes()
        .iter()
        .flat_map(|c| c.iter())
        .map(|&v| g.degree(v) as u64)
        .sum();
    let by_degrees = (0..g.n())
        .map(|v| {
            let d = g.degree(v) as u64;
            d * d
        })
        .sum::<u64>()
        / 2;
    DoubleCount { by_cycles, by_degrees }
}

/// Vertices whose neighborhood spans more than `⌊3d(v)/2⌋` edges.
pub fn neighborhood_bound_violations(g: &ColoredGraph) -> Vec<Vertex> {
    (0..g.n())
        .into_par_iter()
        .filter(|&v| g.edges_inside_neighborhood(v) > 3 * g.degree(v) / 2)
        .collect()
}

/// Re-derives the decomposition invariants from scratch.
fn decomposition_ok(g: &ColoredGraph) -> bool {
    let mut seen = std::collections::HashSet::new();
    let edges_ok = g
        .edges()
        .all(|(u, v, c)| seen.insert((u, v)) && g.color(u, v) == Some(c));
    let counts_ok = seen.len() == 5 * g.k();
    let vertices_ok = (0..g.n()).all(|v| {
        let colors = g.colors_at(v);
        colors.len().is_multiple_of(2)
            && colors.chunks(2).all(|p| p[0] == p[1])
            && colors.windows(3).all(|w| !(w[0] == w[1] && w[1] == w[2]))
    });
    edges_ok && counts_ok && vertices_ok
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    /// Decomposition is sound and there is no multicolored triangle.
    pub valid: bool,
    pub decomposition_ok: bool,
    pub k: usize,
    pub multicolored_triangle: Option<[Vertex; 3]>,
    pub neighborhood_violations: Vec<Vertex>,
    /// Colors failing the degree-sum bound; empty when a multicolored
    /// triangle exists, since the bound is not claimed then.
    pub kn_violations: Vec<usize>,
    pub double_count: DoubleCount,
    pub census: TriangleCensus,
}

impl VerifyReport {
    pub fn double_count_ok(&self) -> bool {
        self.double_count.equal()
    }

    /// No multicolored triangle and no violated inequality.
    pub fn clean(&self) -> bool {
        self.valid && self.neighborhood_violations.is_empty() && self.kn_violations.is_empty() && self.double_count_ok()
    }
}

pub fn verify(g: &ColoredGraph) -> VerifyReport {
    let decomposition_ok = decomposition_ok(g);
    let multicolored_triangle = g.find_multicolored_triangle();
    let census = triangle_census(g);
    let kn_violations = if multicolored_triangle.is_none() {
        color_slacks(g, &census)
            .into_iter()
            .filter(|s| !s.holds())
            .map(|s| s.color)
            .collect()
    } else {
        Vec::new()
    };
    VerifyReport {
        valid: decomposition_ok && multicolored_triangle.is_none(),
        decomposition_ok,
        k: g.k(),
        multicolored_triangle,
        neighborhood_violations: neighborhood_bound_violations(g),
        kn_violations,
        double_count: double_count_check(g),
        census,
    }
}
