//! Maximum matching, Tutte–Berge witnesses and the vertex cover number.

mod blossom;
mod cover;
mod witness;

pub use cover::{vertex_cover_number, vertex_cover_number_with_budget, DEFAULT_COVER_BUDGET};
pub use witness::{tutte_berge_witness, TbWitness, WitnessMode, N_EXACT};

use serde::Serialize;

use crate::graph::{component_labels, Graph, VertexSet};

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges, stored as a mate array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<usize>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![NONE; n],
        }
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|&&m| m != NONE).count() / 2
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        let m = self.mate[v];
        (m != NONE).then_some(m)
    }

    pub fn is_exposed(&self, v: usize) -> bool {
        self.mate[v] == NONE
    }

    /// Matched pairs `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(v, &m)| m != NONE && v < m)
            .map(|(v, &m)| (v, m))
            .collect()
    }

    /// Checks that every pair is an edge of `g` and the mate array is symmetric.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.mate.len() == g.n()
            && self.mate.iter().enumerate().all(|(v, &m)| {
                m == NONE || (m < g.n() && self.mate[m] == v && g.has_edge(v, m))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingSummary {
    pub nu: usize,
}

/// Maximum matching by Edmonds' blossom-contraction search.
pub fn max_matching(g: &Graph) -> Matching {
    blossom::Search::new(g).maximum()
}

/// `ν(G)`.
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).size()
}

/// Vertices missed by at least one maximum matching (the `D` set of the
/// Gallai–Edmonds structure), found as the outer vertices of the alternating
/// forest grown from every exposed vertex of `m`.
///
/// `m` must be a maximum matching of `g`.
pub fn missable_vertices(g: &Graph, m: &Matching) -> VertexSet {
    blossom::Search::with_matching(g, m.clone()).outer_vertices()
}

/// True when some exposed vertex of `m` still has an augmenting path.
pub fn has_augmenting_path(g: &Graph, m: &Matching) -> bool {
    let mut s = blossom::Search::with_matching(g, m.clone());
    (0..g.n()).any(|v| m.is_exposed(v) && s.augmenting_end(v).is_some())
}

pub fn is_forest(g: &Graph) -> bool {
    let (_, count) = component_labels(g, &VertexSet::new(g.n()));
    g.m() + count == g.n()
}
