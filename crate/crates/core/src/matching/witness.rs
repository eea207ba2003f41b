use serde::Serialize;

use super::{max_matching, missable_vertices};
use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexSet};

/// Default vertex limit for the exhaustive witness scan (2^20 subsets).
pub const N_EXACT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessMode {
    /// Scan every `S ⊆ V`; refuses graphs with more than `max_n` vertices.
    Exhaustive { max_n: usize },
    /// Take `S = N(D) \ D` where `D` is the set of vertices missed by some
    /// maximum matching.
    Structural,
}

impl Default for WitnessMode {
    fn default() -> Self {
        WitnessMode::Exhaustive { max_n: N_EXACT }
    }
}

/// A set `S` together with `o(G - S)` and `o(G - S) - |S|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TbWitness {
    #[serde(serialize_with = "crate::serde_util::set_as_list")]
    pub s_set: VertexSet,
    pub odd_count: usize,
    pub deficiency: i64,
    /// Found by exhaustive scan.
    pub exhaustive: bool,
    /// `deficiency == n - 2ν(G)`, i.e. the witness is optimal.
    pub certified: bool,
}

pub fn tutte_berge_witness(g: &Graph, mode: WitnessMode) -> Result<TbWitness> {
    match mode {
        WitnessMode::Exhaustive { max_n } => exhaustive(g, max_n),
        WitnessMode::Structural => Ok(structural(g)),
    }
}

fn odd_components(g: &Graph, s: &VertexSet) -> usize {
    components(g, s)
        .expect("set built over the graph's universe")
        .iter()
        .filter(|c| c.is_odd())
        .count()
}

fn structural(g: &Graph) -> TbWitness {
    let n = g.n();
    let m = max_matching(g);
    let d = missable_vertices(g, &m);
    let mut s = VertexSet::new(n);
    for v in d.iter() {
        for &u in g.neighbors(v) {
            if !d.contains(u as usize) {
                s.insert(u as usize);
            }
        }
    }
    let odd = odd_components(g, &s);
    let deficiency = odd as i64 - s.len() as i64;
    TbWitness {
        certified: deficiency == n as i64 - 2 * m.size() as i64,
        s_set: s,
        odd_count: odd,
        deficiency,
        exhaustive: false,
    }
}

/// Odd components of `G[keep]` where adjacency is given as bitmasks.
fn odd_components_mask(adj: &[u32], keep: u32) -> u32 {
    let mut rest = keep;
    let mut odd = 0;
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            next &= keep & !comp;
            comp |= next;
            frontier = next;
        }
        odd += comp.count_ones() & 1;
        rest &= !comp;
    }
    odd
}

/// Scans subsets by increasing size, then increasing bitmask value; the first
/// maximiser in that order is returned.
fn exhaustive(g: &Graph, max_n: usize) -> Result<TbWitness> {
    let n = g.n();
    if n > max_n.min(31) {
        return Err(Error::capability(format!(
            "exhaustive Tutte-Berge scan limited to n <= {}, got n = {n}",
            max_n.min(31)
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &u| acc | 1 << u))
        .collect();
    let full = ((1u64 << n) - 1) as u32;

    let mut best_mask = 0u32;
    let mut best = odd_components_mask(&adj, full) as i64;
    for size in 1..=n {
        if (n as i64) - 2 * (size as i64) <= best {
            break;
        }
        // Gosper's hack over masks with `size` bits.
        let mut s: u64 = (1u64 << size) - 1;
        while s < 1u64 << n {
            let mask = s as u32;
            let val = odd_components_mask(&adj, full & !mask) as i64 - size as i64;
            if val > best {
                best = val;
                best_mask = mask;
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }

    let s_set = VertexSet::from_iter_in(n, (0..n).filter(|&v| best_mask >> v & 1 == 1));
    let nu = max_matching(g).size();
    Ok(TbWitness {
        odd_count: (best + s_set.len() as i64) as usize,
        certified: best == n as i64 - 2 * nu as i64,
        s_set,
        deficiency: best,
        exhaustive: true,
    })
}
