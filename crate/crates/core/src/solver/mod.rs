//! Exact search for the largest multicolored-triangle-free packing of
//! edge-disjoint 5-cycles in `K_n` (or in an explicit host edge set).
//!
//! The search is a branch and bound over canonical candidate cycles taken in
//! increasing order, so each packing is generated once up to the order of
//! its colors. A partial packing is cut off when
//!
//! * a candidate shares an edge with a chosen class,
//! * adding it closes a triangle whose three edges have distinct colors
//!   (only triangles through the new class are inspected), or
//! * the even-degree capacity bound cannot beat the incumbent: the final
//!   graph has even degrees, so vertex `v` ends with at most
//!   `deg(v) + free(v)` rounded down to even, and the number of classes is at
//!   most a fifth of half that sum.
//!
//! Parallel runs split the tree into fixed depth-two prefix blocks. Each block
//! reports the lexicographically first packing of its own best size, and the
//! reduction keeps the earliest block of maximum size, so the witness does not
//! depend on the number of workers.

mod oracle;

pub use oracle::{brute_force_oracle, ORACLE_MAX_N};

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::constructions::TnValue;
use crate::graph::{cycle_edges, ordered, ColoredGraph, Cycle, Vertex};

/// Host graphs are limited to this many edges (edge sets are `u128` masks).
pub const MAX_HOST_EDGES: usize = 128;
/// Host vertex limit (adjacency rows are `u64` masks).
pub const MAX_HOST_VERTICES: usize = 64;

const NO_COLOR: u16 = u16::MAX;
const FLUSH_EVERY: u64 = 1 << 10;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search budget exhausted after {} nodes; best found has {} classes", .0.nodes_explored, .0.k_star)]
    BudgetExhausted(Box<SolveResult>),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid search options: {0}")]
    InvalidOptions(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
    pub parallel_width: usize,
    pub symmetry_breaking: bool,
    /// Search inside this edge set instead of `K_n`.
    pub restrict_to_edges: Option<Vec<(Vertex, Vertex)>>,
    /// Stop as soon as a packing with this many classes is found.
    pub stop_at: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            node_budget: 1 << 34,
            parallel_width: 1,
            symmetry_breaking: true,
            restrict_to_edges: None,
            stop_at: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub n: usize,
    pub k_star: usize,
    pub witness: ColoredGraph,
    /// True when the search space was exhausted (or `stop_at` was reached).
    pub complete: bool,
    pub nodes_explored: u64,
    pub runtime: Duration,
    /// `t(n)` for searches in `K_n`; zero for restricted host graphs.
    pub lower_bound_used: u64,
}

/// All 5-cycles of `K_n`, or of the graph spanned by `restrict`, each given
/// by its lexicographically least rotation/reflection, sorted.
pub fn enumerate_candidate_cycles(n: usize, restrict: Option<&[(Vertex, Vertex)]>) -> Vec<Cycle> {
    let mut adj = vec![vec![false; n]; n];
    match restrict {
        Some(edges) => {
            for &(u, v) in edges {
                if u != v && u < n && v < n {
                    adj[u][v] = true;
                    adj[v][u] = true;
                }
            }
        }
        None => {
            for (u, row) in adj.iter_mut().enumerate() {
                for (v, cell) in row.iter_mut().enumerate() {
                    *cell = u != v;
                }
            }
        }
    }

    let mut out = Vec::new();
    let mut path = [0usize; 5];
    // The smallest vertex starts the tuple; the second entry is smaller
    // than the last, which fixes the direction.
    for s in 0..n {
        path[0] = s;
        extend_path(&adj, s, 1, &mut path, &mut out);
    }
    out.sort_unstable();
    out
}

fn extend_path(adj: &[Vec<bool>], s: usize, len: usize, path: &mut [usize; 5], out: &mut Vec<Cycle>) {
    let last = path[len - 1];
    for next in s + 1..adj.len() {
        if !adj[last][next] || path[1..len].contains(&next) {
            continue;
        }
        path[len] = next;
        if len == 4 {
            if adj[next][s] && path[1] < next {
                out.push(*path);
            }
        } else {
            extend_path(adj, s, len + 1, path, out);
        }
    }
}

/// The canonical representative of a cycle (least rotation/reflection).
pub fn canonical_cycle(c: &Cycle) -> Cycle {
    let mut best = *c;
    for start in 0..5 {
        for dir in [1usize, 4] {
            let cand: Cycle = std::array::from_fn(|i| c[(start + i * dir) % 5]);
            best = best.min(cand);
        }
    }
    best
}

struct Candidate {
    cycle: Cycle,
    mask: u128,
    edges: [(usize, usize); 5],
}

struct Instance {
    n: usize,
    candidates: Vec<Candidate>,
    host_mask: u128,
    incident: Vec<u128>,
}

impl Instance {
    fn build(n: usize, restrict: Option<&[(Vertex, Vertex)]>) -> Result<Self, SolveError> {
        if n > MAX_HOST_VERTICES {
            return Err(SolveError::TooLarge(format!(
                "n = {n} exceeds {MAX_HOST_VERTICES} vertices"
            )));
        }
        let mut host: Vec<(usize, usize)> = match restrict {
            Some(edges) => {
                for &(u, v) in edges {
                    if u == v || u >= n || v >= n {
                        return Err(SolveError::InvalidOptions(format!(
                            "restricted edge {{{u}, {v}}} is not a pair of distinct vertices below {n}"
                        )));
                    }
                }
                edges.iter().map(|&(u, v)| ordered(u, v)).collect()
            }
            None => (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect(),
        };
        host.sort_unstable();
        host.dedup();
        if host.len() > MAX_HOST_EDGES {
            return Err(SolveError::TooLarge(format!(
                "host graph has {} edges, at most {MAX_HOST_EDGES} supported",
                host.len()
            )));
        }

        let mut index = vec![usize::MAX; n * n];
        let mut incident = vec![0u128; n];
        let mut host_mask = 0u128;
        for (i, &(u, v)) in host.iter().enumerate() {
            index[u * n + v] = i;
            index[v * n + u] = i;
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
            host_mask |= 1 << i;
        }

        let candidates = enumerate_candidate_cycles(n, restrict)
            .into_iter()
            .map(|cycle| {
                let edges = cycle_edges(&cycle);
                let mask = edges.iter().fold(0u128, |m, &(u, v)| m | 1 << index[u * n + v]);
                Candidate { cycle, mask, edges }
            })
            .collect();

        Ok(Self {
            n,
            candidates,
            host_mask,
            incident,
        })
    }
}

struct Shared {
    global_best: AtomicUsize,
    nodes: AtomicU64,
    budget: u64,
    stop_at: Option<usize>,
    stopped: AtomicBool,
    exhausted: AtomicBool,
}

impl Shared {
    fn halted(&self) -> bool {
        self.stopped.load(Ordering::Relaxed)
    }
}

struct Worker<'a> {
    inst: &'a Instance,
    shared: &'a Shared,
    used: u128,
    adj: Vec<u64>,
    color: Vec<u16>,
    degree: Vec<u32>,
    chosen: Vec<u32>,
    best: Vec<u32>,
    pending_nodes: u64,
    nodes: u64,
}

impl<'a> Worker<'a> {
    fn new(inst: &'a Instance, shared: &'a Shared) -> Self {
        let n = inst.n;
        Self {
            inst,
            shared,
            used: 0,
            adj: vec![0; n],
            color: vec![NO_COLOR; n * n],
            degree: vec![0; n],
            chosen: Vec::new(),
            best: Vec::new(),
            pending_nodes: 0,
            nodes: 0,
        }
    }

    /// True if adding candidate `idx` would close a multicolored triangle.
    /// A triangle with two edges of the new class repeats a color, so only
    /// triangles with exactly one new edge matter.
    fn closes_triangle(&self, idx: usize) -> bool {
        let n = self.inst.n;
        self.inst.candidates[idx].edges.iter().any(|&(u, v)| {
            let mut common = self.adj[u] & self.adj[v];
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                common &= common - 1;
                if self.color[u * n + w] != self.color[v * n + w] {
                    return true;
                }
            }
            false
        })
    }

    fn fits(&self, idx: usize) -> bool {
        self.inst.candidates[idx].mask & self.used == 0 && !self.closes_triangle(idx)
    }

    fn push(&mut self, idx: usize) {
        let n = self.inst.n;
        let color = self.chosen.len() as u16;
        let cand = &self.inst.candidates[idx];
        self.used |= cand.mask;
        for &(u, v) in &cand.edges {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
            self.color[u * n + v] = color;
            self.color[v * n + u] = color;
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
        self.chosen.push(idx as u32);
    }

    fn pop(&mut self) {
        let n = self.inst.n;
        let idx = self.chosen.pop().expect("pop on empty packing") as usize;
        let cand = &self.inst.candidates[idx];
        self.used &= !cand.mask;
        for &(u, v) in &cand.edges {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
            self.color[u * n + v] = NO_COLOR;
            self.color[v * n + u] = NO_COLOR;
            self.degree[u] -= 1;
            self.degree[v] -= 1;
        }
    }

    /// Upper bound on the class count of any completion of the current packing.
    fn capacity_bound(&self) -> usize {
        let free = self.inst.host_mask & !self.used;
        let degree_sum: u32 = (0..self.inst.n)
            .map(|v| (self.degree[v] + (self.inst.incident[v] & free).count_ones()) & !1)
            .sum();
        (degree_sum / 2 / 5) as usize
    }

    fn should_prune(&self, bound: usize) -> bool {
        bound <= self.best.len() || bound < self.shared.global_best.load(Ordering::Relaxed)
    }

    fn count_node(&mut self) {
        self.nodes += 1;
        self.pending_nodes += 1;
        if self.pending_nodes >= FLUSH_EVERY {
            self.flush_nodes();
        }
    }

    fn flush_nodes(&mut self) {
        let total = self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
        self.pending_nodes = 0;
        if total > self.shared.budget {
            self.shared.exhausted.store(true, Ordering::Relaxed);
            self.shared.stopped.store(true, Ordering::Relaxed);
        }
    }

    fn record(&mut self) {
        if self.chosen.len() > self.best.len() {
            self.best.clone_from(&self.chosen);
            self.shared.global_best.fetch_max(self.best.len(), Ordering::Relaxed);
            if self.shared.stop_at.is_some_and(|t| self.best.len() >= t) {
                self.shared.stopped.store(true, Ordering::Relaxed);
            }
        }
    }

    fn dfs(&mut self, start: usize) {
        self.count_node();
        self.record();
        if self.shared.halted() {
            return;
        }
        let bound = self.capacity_bound();
        if self.should_prune(bound) {
            return;
        }
        for idx in start..self.inst.candidates.len() {
            if self.shared.halted() {
                return;
            }
            if !self.fits(idx) {
                continue;
            }
            self.push(idx);
            self.dfs(idx + 1);
            self.pop();
            if self.should_prune(bound) {
                return;
            }
        }
    }

    /// Search the subtree below a fixed prefix of candidate indices.
    fn run_block(mut self, prefix: &[usize]) -> (Vec<u32>, u64) {
        for &idx in prefix {
            self.push(idx);
        }
        let start = prefix.last().map_or(0, |&i| i + 1);
        self.dfs(start);
        self.flush_nodes();
        (self.best, self.nodes)
    }
}

/// Largest number of edge-disjoint 5-cycles in the host graph with no
/// multicolored triangle, together with a witness packing.
pub fn solve_exact(n: usize, opts: &SearchOptions) -> Result<SolveResult, SolveError> {
    let started = Instant::now();
    if opts.node_budget == 0 {
        return Err(SolveError::InvalidOptions("node budget must be at least 1".into()));
    }
    if opts.parallel_width == 0 {
        return Err(SolveError::InvalidOptions("parallel width must be at least 1".into()));
    }
    let restrict = opts.restrict_to_edges.as_deref();
    let inst = Instance::build(n, restrict)?;
    let shared = Shared {
        global_best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        budget: opts.node_budget,
        stop_at: opts.stop_at,
        stopped: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
    };

    // K_n is vertex-transitive: any nonempty packing can be relabeled so that
    // (0,1,2,3,4), the least canonical cycle, is one of its classes.
    let vertex_symmetry = opts.symmetry_breaking && restrict.is_none();
    let first_level: Vec<usize> = if vertex_symmetry {
        (0..inst.candidates.len().min(1)).collect()
    } else {
        (0..inst.candidates.len()).collect()
    };

    // Depth 0 and 1 are settled here; deeper nodes live in prefix blocks.
    let mut best: Vec<u32> = first_level.first().map(|&i| vec![i as u32]).unwrap_or_default();
    shared.global_best.store(best.len(), Ordering::Relaxed);
    let mut nodes = 1 + first_level.len() as u64;

    let mut blocks: Vec<[usize; 2]> = Vec::new();
    if opts.stop_at.is_none_or(|t| best.len() < t) {
        for &a in &first_level {
            let mut probe = Worker::new(&inst, &shared);
            probe.push(a);
            for b in a + 1..inst.candidates.len() {
                if probe.fits(b) {
                    blocks.push([a, b]);
                }
            }
        }
    }

    let run = |block: &[usize; 2]| Worker::new(&inst, &shared).run_block(block);
    let results: Vec<(Vec<u32>, u64)> = if opts.parallel_width == 1 {
        blocks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel_width)
            .build()
            .map_err(|e| SolveError::InvalidOptions(e.to_string()))?;
        pool.install(|| blocks.par_iter().map(run).collect())
    };

    for (block_best, block_nodes) in results {
        nodes += block_nodes;
        if block_best.len() > best.len() {
            best = block_best;
        }
    }

    let cycles: Vec<Cycle> = best.iter().map(|&i| inst.candidates[i as usize].cycle).collect();
    let witness = ColoredGraph::new(n, cycles).expect("search keeps classes edge-disjoint");
    let result = SolveResult {
        n,
        k_star: best.len(),
        witness,
        complete: !shared.exhausted.load(Ordering::Relaxed),
        nodes_explored: nodes,
        runtime: started.elapsed(),
        lower_bound_used: if restrict.is_none() { TnValue::of(n as u64).t } else { 0 },
    };
    if result.complete {
        Ok(result)
    } else {
        Err(SolveError::BudgetExhausted(Box::new(result)))
    }
}
