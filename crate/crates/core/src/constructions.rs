//! Lower-bound constructions: packings of 5-cycles into blow-ups of `C5`,
//! the crossing-edge perturbation of the balanced blow-up, and the
//! "K5-star" family on which the neighborhood edge bound is tight.
//!
//! Part `p` (1-based `A_p`) of a blow-up with sizes `a` occupies the vertex
//! block `a_1 + … + a_{p-1} .. a_1 + … + a_p`, and `v^p_j` is the `j`-th vertex
//! of that block.

use thiserror::Error;

use crate::graph::{ColoredGraph, Cycle, Vertex};
use crate::partition::{BlowupPartition, PARTS};
use crate::solver::{solve_exact, SearchOptions, SolveError};

/// Node budget for the unequal-part packing search.
pub const DEFAULT_PACKING_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("every part must be non-empty, got {0:?}")]
    EmptyPart([u64; PARTS]),
    #[error("no packing with {target} classes found in the blow-up with parts {sizes:?}: {reason}")]
    PackingNotFound {
        sizes: [u64; PARTS],
        target: u64,
        reason: String,
    },
    #[error("n = {0} must be a multiple of 5 with n/5 >= 2")]
    BadN(u64),
    #[error("blade count must be at least 1")]
    NoBlades,
}

/// Part sizes `(a_1, …, a_5)` of a blow-up of `C5`, indices mod 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartSizes(pub [u64; PARTS]);

impl PartSizes {
    pub fn equal(q: u64) -> Self {
        Self([q; PARTS])
    }

    /// Balanced sizes for `n` vertices that attain `t(n)`: the parts of size
    /// `q + 1` are spread so that no two parts of size `q` are adjacent when
    /// that is possible.
    pub fn balanced(n: u64) -> Self {
        let (q, r) = (n / 5, n % 5);
        let big: &[usize] = match r {
            0 => &[],
            1 => &[0],
            2 => &[0, 2],
            3 => &[0, 2, 4],
            _ => &[0, 1, 2, 3],
        };
        let mut a = [q; PARTS];
        for &i in big {
            a[i] += 1;
        }
        Self(a)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `min_i a_i a_{i+1}`: the fewest edges between two consecutive parts,
    /// and the most classes a packing inside the blow-up can have.
    pub fn bottleneck(&self) -> u64 {
        (0..PARTS)
            .map(|i| self.0[i] * self.0[(i + 1) % PARTS])
            .min()
            .expect("five parts")
    }

    fn offsets(&self) -> [usize; PARTS] {
        let mut off = [0; PARTS];
        for p in 1..PARTS {
            off[p] = off[p - 1] + self.0[p - 1] as usize;
        }
        off
    }

    /// Vertex index of `v^part_j` (both 0-based).
    pub fn vertex(&self, part: usize, j: usize) -> Vertex {
        self.offsets()[part] + j
    }

    pub fn partition(&self) -> BlowupPartition {
        BlowupPartition::from_sizes(self.0.map(|s| s as usize))
    }

    /// Every edge of the complete blow-up `C5(A_1, …, A_5)`.
    pub fn blowup_edges(&self) -> Vec<(Vertex, Vertex)> {
        let off = self.offsets();
        let mut edges = Vec::new();
        for p in 0..PARTS {
            let next = (p + 1) % PARTS;
            for i in 0..self.0[p] as usize {
                for j in 0..self.0[next] as usize {
                    let (u, v) = (off[p] + i, off[next] + j);
                    edges.push((u.min(v), u.max(v)));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// `t(n) = max { b(a) : a_1 + … + a_5 = n }` with `n = 5q + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TnValue {
    pub n: u64,
    pub q: u64,
    pub r: u64,
    pub t: u64,
}

impl TnValue {
    pub fn of(n: u64) -> Self {
        let (q, r) = (n / 5, n % 5);
        let t = if r >= 3 { q * (q + 1) } else { q * q };
        Self { n, q, r, t }
    }
}

/// The cycle `F_{i,j} = v^1_i v^2_j v^3_i v^4_j v^5_{i+j}` (1-based labels,
/// `i + j` reduced into `1..=q`), written with 0-based `i, j`.
fn balanced_class(q: usize, i: usize, j: usize) -> Cycle {
    let v = |part: usize, idx: usize| part * q + idx;
    [v(0, i), v(1, j), v(2, i), v(3, j), v(4, (i + j + 1) % q)]
}

/// `b(a)` edge-disjoint 5-cycles inside the blow-up with part sizes `a`.
pub fn blowup_packing(a: PartSizes) -> Result<ColoredGraph, ConstructionError> {
    blowup_packing_with_budget(a, DEFAULT_PACKING_BUDGET)
}

pub fn blowup_packing_with_budget(a: PartSizes, budget: u64) -> Result<ColoredGraph, ConstructionError> {
    if a.0.contains(&0) {
        return Err(ConstructionError::EmptyPart(a.0));
    }
    let n = a.total() as usize;
    if a.0.iter().all(|&s| s == a.0[0]) {
        let q = a.0[0] as usize;
        let classes = (0..q)
            .flat_map(|i| (0..q).map(move |j| balanced_class(q, i, j)))
            .collect();
        return Ok(ColoredGraph::new(n, classes).expect("F_{i,j} are edge-disjoint"));
    }

    // Unequal parts: search the blow-up's own edge set for b(a) classes.
    let target = a.bottleneck();
    let not_found = |reason: String| ConstructionError::PackingNotFound {
        sizes: a.0,
        target,
        reason,
    };
    let opts = SearchOptions {
        node_budget: budget.max(1),
        parallel_width: 1,
        symmetry_breaking: false,
        restrict_to_edges: Some(a.blowup_edges()),
        stop_at: Some(target as usize),
    };
    let found = match solve_exact(n, &opts) {
        Ok(r) => r,
        Err(SolveError::BudgetExhausted(r)) => *r,
        Err(e) => return Err(not_found(e.to_string())),
    };
    if found.k_star as u64 >= target {
        Ok(found.witness)
    } else {
        Err(not_found(format!(
            "best found has {} classes after {} nodes",
            found.k_star, found.nodes_explored
        )))
    }
}

/// Balanced blow-up packing on `n = 5q` vertices with each `F_{i,i}`
/// replaced by `v^1_i v^3_i v^2_i v^4_i v^5_{2i}` under the same color.
pub fn perturbed_construction(n: u64) -> Result<ColoredGraph, ConstructionError> {
    if !n.is_multiple_of(5) || n < 10 {
        return Err(ConstructionError::BadN(n));
    }
    let q = (n / 5) as usize;
    let v = |part: usize, idx: usize| part * q + idx;
    let classes = (0..q)
        .flat_map(|i| (0..q).map(move |j| (i, j)))
        .map(|(i, j)| {
            if i == j {
                [v(0, i), v(2, i), v(1, i), v(3, i), v(4, (2 * i + 1) % q)]
            } else {
                balanced_class(q, i, j)
            }
        })
        .collect();
    Ok(ColoredGraph::new(n as usize, classes).expect("the switch keeps classes edge-disjoint"))
}

/// The `2q` edges `v^1_i v^3_i` and `v^2_i v^4_i` introduced by the perturbation.
pub fn crossing_edges(n: u64) -> Result<Vec<(Vertex, Vertex)>, ConstructionError> {
    if !n.is_multiple_of(5) || n < 10 {
        return Err(ConstructionError::BadN(n));
    }
    let q = (n / 5) as usize;
    Ok((0..q).flat_map(|i| [(i, 2 * q + i), (q + i, 3 * q + i)]).collect())
}

/// `m` copies of `K5` glued at vertex 0, each split into two pentagon classes.
pub fn k5_star(m: usize) -> Result<ColoredGraph, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::NoBlades);
    }
    let classes = (0..m)
        .flat_map(|b| {
            let x = [0, 4 * b + 1, 4 * b + 2, 4 * b + 3, 4 * b + 4];
            [[x[0], x[1], x[2], x[3], x[4]], [x[0], x[2], x[4], x[1], x[3]]]
        })
        .collect();
    Ok(ColoredGraph::new(4 * m + 1, classes).expect("pentagon and pentagram partition K5"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::consecutive;

    #[test]
    fn bottleneck_examples() {
        assert_eq!(PartSizes([1, 1, 1, 1, 1]).bottleneck(), 1);
        assert_eq!(PartSizes([2, 2, 2, 2, 2]).bottleneck(), 4);
        assert_eq!(PartSizes([3, 2, 2, 2, 1]).bottleneck(), 2);
    }

    #[test]
    fn tn_examples() {
        assert_eq!(
            TnValue::of(10),
            TnValue {
                n: 10,
                q: 2,
                r: 0,
                t: 4
            }
        );
        assert_eq!(
            TnValue::of(13),
            TnValue {
                n: 13,
                q: 2,
                r: 3,
                t: 6
            }
        );
        assert_eq!(TnValue::of(5), TnValue { n: 5, q: 1, r: 0, t: 1 });
        assert_eq!(TnValue::of(0).t, 0);
    }

    // Independent oracle for t(n): every composition of n into five parts.
    fn tn_brute(n: u64) -> u64 {
        let mut best = 0;
        for a in 0..=n {
            for b in 0..=n - a {
                for c in 0..=n - a - b {
                    for d in 0..=n - a - b - c {
                        let e = n - a - b - c - d;
                        best = best.max(PartSizes([a, b, c, d, e]).bottleneck());
                    }
                }
            }
        }
        best
    }

    #[test]
    fn tn_matches_enumeration() {
        for n in 0..=30 {
            assert_eq!(TnValue::of(n).t, tn_brute(n), "n = {n}");
            assert_eq!(PartSizes::balanced(n).bottleneck(), TnValue::of(n).t, "n = {n}");
            assert_eq!(PartSizes::balanced(n).total(), n);
        }
    }

    fn assert_inside_blowup(g: &ColoredGraph, a: PartSizes) {
        let p = a.partition();
        for (u, v, _) in g.edges() {
            assert!(consecutive(p.part(u), p.part(v)), "edge {u}-{v} leaves the blow-up");
        }
    }

    #[test]
    fn equal_part_packing() {
        let a = PartSizes::equal(2);
        let g = blowup_packing(a).unwrap();
        assert_eq!(g.k(), 4);
        assert_eq!(g.edge_count(), 20);
        assert_inside_blowup(&g, a);

        let single = blowup_packing(PartSizes::equal(1)).unwrap();
        assert_eq!(single.k(), 1);

        for q in 3..=6 {
            let a = PartSizes::equal(q);
            let g = blowup_packing(a).unwrap();
            assert_eq!(g.k() as u64, q * q);
            assert_inside_blowup(&g, a);
            // q^2 classes use every blow-up edge exactly once.
            assert_eq!(g.edge_count(), a.blowup_edges().len());
        }
    }

    #[test]
    fn unequal_part_packing_via_search() {
        let a = PartSizes([2, 1, 2, 1, 2]);
        assert_eq!(a.bottleneck(), 2);
        let g = blowup_packing(a).unwrap();
        assert_eq!(g.k(), 2);
        assert_inside_blowup(&g, a);

        for n in [11, 12, 13, 14] {
            let a = PartSizes::balanced(n);
            let g = blowup_packing(a).unwrap();
            assert_eq!(g.k() as u64, TnValue::of(n).t, "n = {n}");
            assert_inside_blowup(&g, a);
        }
    }

    #[test]
    fn empty_part_rejected() {
        assert!(matches!(
            blowup_packing(PartSizes([1, 0, 1, 1, 1])),
            Err(ConstructionError::EmptyPart(_))
        ));
    }

    #[test]
    fn perturbed_basic_shape() {
        let g = perturbed_construction(10).unwrap();
        assert_eq!(g.k(), 4);
        assert_eq!(g.edge_count(), 20);
        for v in 0..10 {
            assert_eq!(g.degree(v), 4);
        }
        assert_eq!(g.find_multicolored_triangle(), None);

        let crossing = crossing_edges(10).unwrap();
        assert_eq!(crossing.len(), 4);
        let p = PartSizes::equal(2).partition();
        for &(u, v) in &crossing {
            assert!(g.has_edge(u, v));
            assert!(!p.is_structured(u, v));
        }
        let mut ends: Vec<_> = crossing.iter().flat_map(|&(u, v)| [u, v]).collect();
        ends.sort();
        ends.dedup();
        assert_eq!(ends.len(), 8, "crossing edges form a matching");

        let g15 = perturbed_construction(15).unwrap();
        assert_eq!(g15.k(), 9);
        assert_eq!(crossing_edges(15).unwrap().len(), 6);
        assert_eq!(g15.find_multicolored_triangle(), None);
    }

    #[test]
    fn perturbed_keeps_unperturbed_degrees() {
        for q in 2..=6u64 {
            let g = perturbed_construction(5 * q).unwrap();
            let base = blowup_packing(PartSizes::equal(q)).unwrap();
            assert_eq!(g.degrees(), base.degrees());
        }
    }

    #[test]
    fn perturbed_rejects_bad_n() {
        for n in [0, 5, 7, 12] {
            assert!(matches!(perturbed_construction(n), Err(ConstructionError::BadN(_))));
        }
    }

    #[test]
    fn k5_star_hub() {
        for m in 1..=4 {
            let g = k5_star(m).unwrap();
            assert_eq!(g.n(), 4 * m + 1);
            assert_eq!(g.k(), 2 * m);
            assert_eq!(g.degree(0), 4 * m);
            assert_eq!(g.edges_inside_neighborhood(0), 6 * m);
            assert_eq!(g.find_multicolored_triangle(), None);
        }
        assert!(matches!(k5_star(0), Err(ConstructionError::NoBlades)));
    }
}
