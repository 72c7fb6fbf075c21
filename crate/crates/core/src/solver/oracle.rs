//! Unpruned reference search, kept deliberately naive so it shares no logic
//! with the branch and bound: its own cycle enumeration (all vertex
//! permutations, deduplicated by edge set), hash-set edge bookkeeping, and a
//! full triple loop over vertices for every packing it visits.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::SolveError;

pub const ORACLE_MAX_N: usize = 7;

type Edge = (usize, usize);

fn edge(a: usize, b: usize) -> Edge {
    (a.min(b), a.max(b))
}

fn all_five_cycles(n: usize) -> Vec<Vec<Edge>> {
    let mut seen: HashSet<BTreeSet<Edge>> = HashSet::new();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(5);
    permutations(n, &mut perm, &mut |p| {
        let edges: BTreeSet<Edge> = (0..5).map(|i| edge(p[i], p[(i + 1) % 5])).collect();
        if seen.insert(edges.clone()) {
            out.push(edges.into_iter().collect());
        }
    });
    out
}

fn permutations(n: usize, prefix: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if prefix.len() == 5 {
        visit(prefix);
        return;
    }
    for v in 0..n {
        if !prefix.contains(&v) {
            prefix.push(v);
            permutations(n, prefix, visit);
            prefix.pop();
        }
    }
}

fn has_multicolored_triangle(n: usize, color: &HashMap<Edge, usize>) -> bool {
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let ab = color.get(&edge(a, b));
                let bc = color.get(&edge(b, c));
                let ac = color.get(&edge(a, c));
                if let (Some(x), Some(y), Some(z)) = (ab, bc, ac) {
                    if x != y && y != z && x != z {
                        return true;
                    }
                }
            }
        }
    }
    false
}

struct Oracle {
    n: usize,
    cycles: Vec<Vec<Edge>>,
    color: HashMap<Edge, usize>,
    depth: usize,
    best: usize,
}

impl Oracle {
    fn visit(&mut self, start: usize) {
        if !has_multicolored_triangle(self.n, &self.color) {
            self.best = self.best.max(self.depth);
        }
        for i in start..self.cycles.len() {
            if self.cycles[i].iter().any(|e| self.color.contains_key(e)) {
                continue;
            }
            for &e in &self.cycles[i] {
                self.color.insert(e, self.depth);
            }
            self.depth += 1;
            self.visit(i + 1);
            self.depth -= 1;
            for e in &self.cycles[i] {
                self.color.remove(e);
            }
        }
    }
}

/// Maximum class count over every set of edge-disjoint 5-cycles in `K_n`
/// that has no multicolored triangle. Exponential; `n ≤ 7` only.
pub fn brute_force_oracle(n: usize) -> Result<usize, SolveError> {
    if n > ORACLE_MAX_N {
        return Err(SolveError::TooLarge(format!(
            "oracle handles n ≤ {ORACLE_MAX_N}, got {n}"
        )));
    }
    let mut oracle = Oracle {
        n,
        cycles: all_five_cycles(n),
        color: HashMap::new(),
        depth: 0,
        best: 0,
    };
    oracle.visit(0);
    Ok(oracle.best)
}
