//! Small named graphs used by tests, examples and constructions.

use super::Graph;

pub fn complete(n: usize) -> Graph {
    let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &e).expect("valid edges")
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &e).expect("valid edges")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut e: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    e.push((0, n - 1));
    Graph::from_edges(n, &e).expect("valid edges")
}

/// `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edges(leaves + 1, &e).expect("valid edges")
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &e).expect("valid edges")
}

/// Vertex-disjoint union, relabelling the second graph after the first.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let e: Vec<_> = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + off, v + off)))
        .collect();
    Graph::from_edges(a.n() + b.n(), &e).expect("valid edges")
}

pub fn disjoint_union_all(parts: &[Graph]) -> Graph {
    parts
        .iter()
        .fold(Graph::empty(0), |acc, g| disjoint_union(&acc, g))
}
