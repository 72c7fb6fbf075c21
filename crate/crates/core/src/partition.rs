//! Vertex partitions `A_1 ∪ … ∪ A_5` and the structured/unstructured edge split
//! they induce on a colored graph.
//!
//! Parts are stored 0-based (`0..5`); the certificate format and reports use
//! the 1-based labels `1..=5`. An edge is *structured* when its endpoints lie
//! in cyclically consecutive parts.

use thiserror::Error;

use crate::graph::{ColoredGraph, Vertex};

pub const PARTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {vertex} assigned to part {part}, parts are 0..5")]
    BadPart { vertex: Vertex, part: usize },
    #[error("partition covers {got} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlowupPartition {
    part_of: Vec<u8>,
}

/// True when parts `a` and `b` are cyclically adjacent.
#[inline]
pub fn consecutive(a: usize, b: usize) -> bool {
    let d = (a + PARTS - b) % PARTS;
    d == 1 || d == PARTS - 1
}

impl BlowupPartition {
    pub fn new(part_of: Vec<usize>) -> Result<Self, PartitionError> {
        let part_of = part_of
            .into_iter()
            .enumerate()
            .map(|(vertex, part)| {
                if part < PARTS {
                    Ok(part as u8)
                } else {
                    Err(PartitionError::BadPart { vertex, part })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { part_of })
    }

    /// Consecutive blocks of the given sizes: `A_1 = 0..a_1`, and so on.
    pub fn from_sizes(sizes: [usize; PARTS]) -> Self {
        let part_of = sizes
            .iter()
            .enumerate()
            .flat_map(|(p, &s)| std::iter::repeat_n(p as u8, s))
            .collect();
        Self { part_of }
    }

    pub fn len(&self) -> usize {
        self.part_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.part_of.is_empty()
    }

    #[inline]
    pub fn part(&self, v: Vertex) -> usize {
        self.part_of[v] as usize
    }

    pub fn assignment(&self) -> Vec<usize> {
        self.part_of.iter().map(|&p| p as usize).collect()
    }

    pub fn part_sizes(&self) -> [usize; PARTS] {
        let mut sizes = [0; PARTS];
        for &p in &self.part_of {
            sizes[p as usize] += 1;
        }
        sizes
    }

    pub fn members(&self, part: usize) -> Vec<Vertex> {
        (0..self.len()).filter(|&v| self.part(v) == part).collect()
    }

    pub fn check_covers(&self, g: &ColoredGraph) -> Result<(), PartitionError> {
        if self.len() != g.n() {
            return Err(PartitionError::SizeMismatch {
                expected: g.n(),
                got: self.len(),
            });
        }
        Ok(())
    }

    #[inline]
    pub fn is_structured(&self, u: Vertex, v: Vertex) -> bool {
        consecutive(self.part(u), self.part(v))
    }

    /// `e(A_i, A_{i+1})` for `i = 0..5`.
    pub fn structured_counts(&self, g: &ColoredGraph) -> [usize; PARTS] {
        let mut counts = [0; PARTS];
        for (u, v, _) in g.edges() {
            let (a, b) = (self.part(u), self.part(v));
            if (a + 1) % PARTS == b {
                counts[a] += 1;
            } else if (b + 1) % PARTS == a {
                counts[b] += 1;
            }
        }
        counts
    }

    pub fn structured_total(&self, g: &ColoredGraph) -> usize {
        g.edges().filter(|&(u, v, _)| self.is_structured(u, v)).count()
    }

    /// The edge set `M`: edges not between consecutive parts, as `(u, v, color)`.
    pub fn unstructured_edges(&self, g: &ColoredGraph) -> Vec<(Vertex, Vertex, usize)> {
        let mut m: Vec<_> = g.edges().filter(|&(u, v, _)| !self.is_structured(u, v)).collect();
        m.sort_unstable();
        m
    }

    /// Applies a relabeling `new_part = perm[old_part]`.
    pub fn relabeled(&self, perm: &[usize; PARTS]) -> Self {
        Self {
            part_of: self.part_of.iter().map(|&p| perm[p as usize] as u8).collect(),
        }
    }
}
