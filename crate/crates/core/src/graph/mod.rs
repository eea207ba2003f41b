//! Simple undirected graphs on vertices `0..n`, the edge-counting primitives
//! `|E(X)|` and `|∇(Y,Z)|`, and component scans.

mod gnp;
mod io;
pub mod named;
mod set;

pub use gnp::{gen_gnp, GnpParams, GENERATOR_NAME};
pub use set::{Ones, VertexSet};

use crate::error::{Error, Result};

/// Graphs up to this many vertices also keep one adjacency bitset per vertex.
pub const DENSE_LIMIT: usize = 1 << 15;

/// Immutable simple graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, in lexicographic order.
/// Sorted adjacency lists are always present; bitset rows are added when
/// `n <= DENSE_LIMIT`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
    rows: Option<Vec<VertexSet>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    /// Builds a graph from an arbitrary edge list.
    ///
    /// Endpoint order does not matter; self-loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::input("vertex count exceeds u32 range"));
        }
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a},{b}) out of range 0..{n}")));
            }
            if a == b {
                return Err(Error::input(format!("self-loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            list.push((u as u32, v as u32));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!(
                "duplicate edge ({},{})",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    /// `edges` must be strictly increasing with `u < v < n`.
    pub(crate) fn from_sorted_unique(n: usize, edges: Vec<(u32, u32)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && (v as usize) < n));
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut adj: Vec<Vec<u32>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        let rows = (n <= DENSE_LIMIT).then(|| {
            let mut rows = vec![VertexSet::new(n); n];
            for &(u, v) in &edges {
                rows[u as usize].insert(v as usize);
                rows[v as usize].insert(u as usize);
            }
            rows
        });
        Graph { n, edges, adj, rows }
    }

    /// The spanning subgraph keeping only `edges` (which must be edges of `self`).
    pub fn subgraph(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        Graph::from_edges(self.n, edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    #[cfg(test)]
    pub(crate) fn raw_edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Sorted neighbours of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    /// Adjacency bitset of `v`, present when `n <= DENSE_LIMIT`.
    #[inline]
    pub fn row(&self, v: usize) -> Option<&VertexSet> {
        self.rows.as_ref().map(|r| &r[v])
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        match self.row(v) {
            Some(r) => r.clone(),
            None => VertexSet::from_iter_in(self.n, self.adj[v].iter().map(|&u| u as usize)),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(rows) => rows[u].contains(v),
            None => self.adj[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    /// `d_X(v)`: number of neighbours of `v` inside `x`.
    pub fn degree_into(&self, v: usize, x: &VertexSet) -> usize {
        let list = &self.adj[v];
        match self.row(v) {
            Some(row) if list.len() * 8 > self.n / 8 => row.intersection_len(x),
            _ => list.iter().filter(|&&u| x.contains(u as usize)).count(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of vertices with at least one incident edge.
    pub fn support_size(&self) -> usize {
        self.adj.iter().filter(|a| !a.is_empty()).count()
    }

    fn check_universe(&self, x: &VertexSet) -> Result<()> {
        if x.universe() != self.n {
            return Err(Error::input(format!(
                "vertex set over 0..{} used with a graph on {} vertices",
                x.universe(),
                self.n
            )));
        }
        Ok(())
    }
}

/// `|E(X)|`: edges with both endpoints in `x`.
pub fn edges_within(g: &Graph, x: &VertexSet) -> Result<usize> {
    g.check_universe(x)?;
    Ok(edges_within_unchecked(g, x))
}

pub(crate) fn edges_within_unchecked(g: &Graph, x: &VertexSet) -> usize {
    let twice: usize = x.iter().map(|v| g.degree_into(v, x)).sum();
    twice / 2
}

/// `|∇(Y,Z)|`: edges joining the disjoint sets `y` and `z`.
pub fn edges_between(g: &Graph, y: &VertexSet, z: &VertexSet) -> Result<usize> {
    g.check_universe(y)?;
    g.check_universe(z)?;
    if !y.is_disjoint(z) {
        return Err(Error::input("edges_between needs disjoint vertex sets"));
    }
    Ok(edges_between_unchecked(g, y, z))
}

pub(crate) fn edges_between_unchecked(g: &Graph, y: &VertexSet, z: &VertexSet) -> usize {
    let (small, big) = if y.len() <= z.len() { (y, z) } else { (z, y) };
    small.iter().map(|v| g.degree_into(v, big)).sum()
}

/// A connected component of `G - removed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Members in increasing order.
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.vertices.len() % 2 == 1
    }

    pub fn smallest(&self) -> usize {
        self.vertices[0]
    }

    pub fn to_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_in(n, self.vertices.iter().copied())
    }
}

/// Connected components of the subgraph induced on `V \ removed`,
/// ordered by smallest member.
pub fn components(g: &Graph, removed: &VertexSet) -> Result<Vec<Component>> {
    g.check_universe(removed)?;
    let (labels, count) = component_labels(g, removed);
    let mut out: Vec<Component> = (0..count)
        .map(|_| Component {
            vertices: Vec::new(),
        })
        .collect();
    for (v, &l) in labels.iter().enumerate() {
        if l != u32::MAX {
            out[l as usize].vertices.push(v);
        }
    }
    Ok(out)
}

/// Labels every kept vertex with its component index (numbered in order of
/// smallest member); removed vertices get `u32::MAX`.
pub(crate) fn component_labels(g: &Graph, removed: &VertexSet) -> (Vec<u32>, usize) {
    let mut label = vec![u32::MAX; g.n];
    let mut count = 0u32;
    let mut stack = Vec::new();
    for s in 0..g.n {
        if label[s] != u32::MAX || removed.contains(s) {
            continue;
        }
        label[s] = count;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &u in &g.adj[v] {
                let u = u as usize;
                if label[u] == u32::MAX && !removed.contains(u) {
                    label[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    (label, count as usize)
}

/// Bipartition of the graph, if one exists (colour 0 for the smallest
/// vertex of every component).
pub fn two_coloring(g: &Graph) -> Option<Vec<u8>> {
    let mut color = vec![u8::MAX; g.n];
    let mut stack = Vec::new();
    for s in 0..g.n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &u in &g.adj[v] {
                let u = u as usize;
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    stack.push(u);
                } else if color[u] == color[v] {
                    return None;
                }
            }
        }
    }
    Some(color)
}
