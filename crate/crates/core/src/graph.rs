//! Edge-colored graphs whose color classes are edge-disjoint 5-cycles.
//!
//! A [`ColoredGraph`] is the union `G = F_1 ∪ … ∪ F_k` of `k` edge-disjoint
//! copies of `C5` on the vertex set `0..n`. Class `i` is stored exactly as
//! given (rotation and reflection are preserved) and doubles as color `i`.
//! A subgraph is *multicolored* when no two of its edges share a color.

use thiserror::Error;

use crate::bitset::VertexSet;

pub type Vertex = usize;

/// One color class: the cycle `x0 x1 x2 x3 x4` with edges `x_i x_{i+1 mod 5}`.
pub type Cycle = [Vertex; 5];

/// Patterns with more vertices than this are rejected by the exhaustive search.
pub const MAX_PATTERN_VERTICES: usize = 8;

const NO_COLOR: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("class {class}: vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { class: usize, vertex: Vertex, n: usize },
    #[error("class {class}: vertex {vertex} is repeated")]
    RepeatedVertex { class: usize, vertex: Vertex },
    #[error("edge {{{u}, {v}}} appears in classes {first} and {second}")]
    DuplicateEdge {
        u: Vertex,
        v: Vertex,
        first: usize,
        second: usize,
    },
    #[error("pattern has {0} vertices, at most {MAX_PATTERN_VERTICES} are supported")]
    PatternTooLarge(usize),
    #[error("invalid pattern: {0}")]
    BadPattern(String),
}

impl GraphError {
    /// True for the `BadClass` family (a malformed 5-tuple).
    pub fn is_bad_class(&self) -> bool {
        matches!(
            self,
            GraphError::VertexOutOfRange { .. } | GraphError::RepeatedVertex { .. }
        )
    }
}

/// The five edges of a cycle, each as `(min, max)`.
pub fn cycle_edges(c: &Cycle) -> [(Vertex, Vertex); 5] {
    std::array::from_fn(|i| ordered(c[i], c[(i + 1) % 5]))
}

#[inline]
pub(crate) fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[inline]
fn pair_index(u: Vertex, v: Vertex) -> usize {
    let (a, b) = ordered(u, v);
    b * (b - 1) / 2 + a
}

#[derive(Clone, Debug)]
pub struct ColoredGraph {
    n: usize,
    classes: Vec<Cycle>,
    adjacency: Vec<VertexSet>,
    // Lower-triangular, indexed by `pair_index`.
    edge_color: Vec<u32>,
}

impl ColoredGraph {
    /// Validates `classes` as an edge-disjoint C5 decomposition on `0..n`.
    pub fn new(n: usize, classes: Vec<Cycle>) -> Result<Self, GraphError> {
        let mut adjacency = vec![VertexSet::new(n); n];
        let mut edge_color = vec![NO_COLOR; n * n.saturating_sub(1) / 2];

        for (index, class) in classes.iter().enumerate() {
            for (i, &x) in class.iter().enumerate() {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange {
                        class: index,
                        vertex: x,
                        n,
                    });
                }
                if class[..i].contains(&x) {
                    return Err(GraphError::RepeatedVertex {
                        class: index,
                        vertex: x,
                    });
                }
            }
            for (u, v) in cycle_edges(class) {
                let slot = &mut edge_color[pair_index(u, v)];
                if *slot != NO_COLOR {
                    return Err(GraphError::DuplicateEdge {
                        u,
                        v,
                        first: *slot as usize,
                        second: index,
                    });
                }
                *slot = index as u32;
                adjacency[u].insert(v);
                adjacency[v].insert(u);
            }
        }

        Ok(Self {
            n,
            classes,
            adjacency,
            edge_color,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self::new(n, Vec::new()).expect("empty decomposition is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of color classes.
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        5 * self.classes.len()
    }

    pub fn classes(&self) -> &[Cycle] {
        &self.classes
    }

    pub fn class(&self, color: usize) -> &Cycle {
        &self.classes[color]
    }

    pub fn neighbors(&self, v: Vertex) -> &VertexSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.adjacency[u].contains(v)
    }

    /// Color (class index) of the edge `uv`, if present.
    #[inline]
    pub fn color(&self, u: Vertex, v: Vertex) -> Option<usize> {
        if u == v || u >= self.n || v >= self.n {
            return None;
        }
        match self.edge_color[pair_index(u, v)] {
            NO_COLOR => None,
            c => Some(c as usize),
        }
    }

    /// All edges as `(u, v, color)` with `u < v`, grouped by class.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, usize)> + '_ {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(c, cycle)| cycle_edges(cycle).into_iter().map(move |(u, v)| (u, v, c)))
    }

    /// Number of edges of G with both endpoints in `N(v)`.
    pub fn edges_inside_neighborhood(&self, v: Vertex) -> usize {
        let nv = &self.adjacency[v];
        let twice: usize = nv.iter().map(|u| self.adjacency[u].intersection_len(nv)).sum();
        twice / 2
    }

    /// Colors of the edges at `v`, each appearing twice, in class order.
    pub fn colors_at(&self, v: Vertex) -> Vec<usize> {
        let mut colors: Vec<usize> = self.adjacency[v].iter().filter_map(|u| self.color(v, u)).collect();
        colors.sort_unstable();
        colors
    }

    /// Some triangle whose three edges carry three distinct colors.
    pub fn find_multicolored_triangle(&self) -> Option<[Vertex; 3]> {
        for u in 0..self.n {
            for v in self.adjacency[u].iter().filter(|&v| v > u) {
                let cuv = self.color(u, v);
                let common = self.adjacency[u].intersection(&self.adjacency[v]);
                for w in common.iter().filter(|&w| w > v) {
                    let (cuw, cvw) = (self.color(u, w), self.color(v, w));
                    if cuv != cuw && cuv != cvw && cuw != cvw {
                        return Some([u, v, w]);
                    }
                }
            }
        }
        None
    }

    /// Exhaustive search for an injective map `H → G` whose image edges
    /// carry pairwise distinct colors. Returns the image of each pattern vertex.
    pub fn find_multicolored_copy(&self, pattern: &PatternGraph) -> Result<Option<Vec<Vertex>>, GraphError> {
        if pattern.m > MAX_PATTERN_VERTICES {
            return Err(GraphError::PatternTooLarge(pattern.m));
        }
        if pattern.m > self.n {
            return Ok(None);
        }
        let order = pattern.search_order();
        let mut search = CopySearch {
            host: self,
            pattern,
            order: &order,
            image: vec![usize::MAX; pattern.m],
            used_colors: Vec::with_capacity(pattern.edges.len()),
            used_vertices: VertexSet::new(self.n),
        };
        Ok(search.extend(0).then_some(search.image))
    }
}

struct CopySearch<'a> {
    host: &'a ColoredGraph,
    pattern: &'a PatternGraph,
    order: &'a [usize],
    image: Vec<Vertex>,
    used_colors: Vec<usize>,
    used_vertices: VertexSet,
}

impl CopySearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let placed: Vec<Vertex> = self.order[..depth]
            .iter()
            .filter(|&&w| self.pattern.has_edge(p, w))
            .map(|&w| self.image[w])
            .collect();

        let candidates: Vec<Vertex> = match placed.split_first() {
            Some((&first, rest)) => {
                let mut set = self.host.neighbors(first).clone();
                for &x in rest {
                    set.intersect_with(self.host.neighbors(x));
                }
                set.iter().collect()
            }
            None => (0..self.host.n()).collect(),
        };

        for c in candidates {
            if self.used_vertices.contains(c) {
                continue;
            }
            let before = self.used_colors.len();
            let mut feasible = true;
            for &x in &placed {
                let color = self.host.color(c, x).expect("candidate is adjacent");
                if self.used_colors.contains(&color) {
                    feasible = false;
                    break;
                }
                self.used_colors.push(color);
            }
            if feasible {
                self.image[p] = c;
                self.used_vertices.insert(c);
                if self.extend(depth + 1) {
                    return true;
                }
                self.used_vertices.remove(c);
            }
            self.used_colors.truncate(before);
        }
        false
    }
}

/// A small simple graph `H` to look for in multicolored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    m: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl PatternGraph {
    pub fn new(m: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        let mut seen = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u == v {
                return Err(GraphError::BadPattern(format!("loop at {u}")));
            }
            if u >= m || v >= m {
                return Err(GraphError::BadPattern(format!(
                    "edge {{{u}, {v}}} out of range for m = {m}"
                )));
            }
            let e = ordered(u, v);
            if seen.contains(&e) {
                return Err(GraphError::BadPattern(format!("duplicate edge {{{u}, {v}}}")));
            }
            seen.push(e);
        }
        Ok(Self { m, edges })
    }

    pub fn triangle() -> Self {
        Self::new(3, vec![(0, 1), (1, 2), (0, 2)]).expect("triangle is simple")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&(u, v)) || self.edges.contains(&(v, u))
    }

    // Greedy order: next vertex has the most already-ordered neighbors, so
    // candidate sets come from neighborhood intersections as early as possible.
    fn search_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.m);
        let mut remaining: Vec<usize> = (0..self.m).collect();
        while !remaining.is_empty() {
            let (pos, _) = remaining
                .iter()
                .enumerate()
                .max_by_key(|&(_, &p)| {
                    let back = order.iter().filter(|&&w| self.has_edge(p, w)).count();
                    let deg = (0..self.m).filter(|&w| self.has_edge(p, w)).count();
                    (back, deg, std::cmp::Reverse(p))
                })
                .expect("non-empty");
            order.push(remaining.remove(pos));
        }
        order
    }
}
