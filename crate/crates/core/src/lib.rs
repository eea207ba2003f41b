//! Largest subgraphs with a prescribed matching number.
//!
//! The crate covers maximum matchings and Tutte–Berge witnesses, partitions
//! `V = S ∪ A₁ ∪ … ∪ A_d` with odd blocks and the subgraphs they induce,
//! exact extremal search on small graphs, the local improvement moves that
//! turn a partition into one of the two canonical shapes, binomial tail and
//! union-bound arithmetic, and a seeded Monte Carlo harness over `G(n, p)`.

pub mod error;
pub mod graph;
pub mod matching;
pub mod decomposition;
pub mod moves;
pub mod bounds;
pub mod harness;
pub(crate) mod serde_util;

pub use error::{Error, Result};
pub use graph::{
    components, edges_between, edges_within, gen_gnp, Component, GnpParams, Graph, VertexSet,
};
pub use matching::{
    is_forest, matching_number, max_matching, tutte_berge_witness, vertex_cover_number,
    Matching, TbWitness, WitnessMode,
};
