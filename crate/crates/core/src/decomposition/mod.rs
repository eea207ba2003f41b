//! Partitions `V = S ∪ A₁ ∪ … ∪ A_d` with odd blocks and the subgraphs they
//! induce: every edge meeting `S` plus every edge inside a block.

mod extremal;
mod forms;

pub use extremal::{
    eg_check, eg_check_all, extremal, EgVerdict, ExtremalMode, ExtremalOptions, ExtremalResult,
    Maximizer, N_EXACT_EXTREMAL,
};
pub use forms::{best_form1, best_form2, Form, FormChoice, FORM_ENUM_BUDGET};
pub(crate) use forms::binomial;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::matching::matching_number;

const IN_S: u32 = u32::MAX;

/// A partition of the vertex set into `S` and odd blocks `A₁ … A_d`.
///
/// Blocks are kept sorted by size, largest first, with ties broken by the
/// smallest member; members of every part are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    n: usize,
    s: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    label: Vec<u32>,
}

/// Counts attached to a decomposition. `B` is the union of all blocks but
/// the first and `y = |B| - (d - 1)` is the number of excess vertices in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: usize,
    pub s: usize,
    pub d: usize,
    pub r: i64,
    pub a: usize,
    pub b: usize,
    pub y: i64,
}

#[derive(Serialize, Deserialize)]
struct PiJson {
    #[serde(rename = "S")]
    s: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Validates that `s` and `blocks` partition `0..n`, that every block is
    /// odd and non-empty, and that `d ≥ s`.
    pub fn new(n: usize, mut s: Vec<usize>, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut label = vec![u32::MAX - 1; n];
        let place = |v: usize, l: u32, label: &mut Vec<u32>| -> Result<()> {
            if v >= n {
                return Err(Error::input(format!("vertex {v} out of range for n = {n}")));
            }
            if label[v] != u32::MAX - 1 {
                return Err(Error::input(format!("vertex {v} appears twice")));
            }
            label[v] = l;
            Ok(())
        };
        for &v in &s {
            place(v, IN_S, &mut label)?;
        }
        for b in &blocks {
            if b.len() % 2 == 0 {
                return Err(Error::input(format!("block of even size {}", b.len())));
            }
        }
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                place(v, i as u32, &mut label)?;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == u32::MAX - 1) {
            return Err(Error::input(format!("vertex {v} is not covered")));
        }
        if blocks.len() < s.len() {
            return Err(Error::input(format!(
                "d = {} is smaller than s = {}",
                blocks.len(),
                s.len()
            )));
        }
        s.sort_unstable();
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                label[v] = i as u32;
            }
        }
        Ok(Decomposition {
            n,
            s,
            blocks,
            label,
        })
    }

    /// Builds from a per-vertex label: `None` for `S`, `Some(i)` for block `i`.
    pub fn from_labels(labels: &[Option<usize>]) -> Result<Self> {
        let n = labels.len();
        let mut s = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, l) in labels.iter().enumerate() {
            match *l {
                None => s.push(v),
                Some(i) => {
                    if blocks.len() <= i {
                        blocks.resize_with(i + 1, Vec::new);
                    }
                    blocks[i].push(v);
                }
            }
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::input("block labels must be contiguous"));
        }
        Decomposition::new(n, s, blocks)
    }

    /// `S = ∅`, one block `W` and every other vertex a singleton.
    pub fn form_a(n: usize, w: &[usize]) -> Result<Self> {
        let inside = VertexSet::from_members(n, w)?;
        let mut blocks = vec![w.to_vec()];
        blocks.extend((0..n).filter(|&v| !inside.contains(v)).map(|v| vec![v]));
        Decomposition::new(n, Vec::new(), blocks)
    }

    /// `S = T` and every other vertex a singleton.
    pub fn form_b(n: usize, t: &[usize]) -> Result<Self> {
        let inside = VertexSet::from_members(n, t)?;
        let blocks = (0..n).filter(|&v| !inside.contains(v)).map(|v| vec![v]).collect();
        Decomposition::new(n, t.to_vec(), blocks)
    }

    pub fn from_json(n: usize, text: &str) -> Result<Self> {
        let raw: PiJson = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("bad decomposition JSON: {e}")))?;
        Decomposition::new(n, raw.s, raw.blocks)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain integers serialize")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s_members(&self) -> &[usize] {
        &self.s
    }

    pub fn s_set(&self) -> VertexSet {
        VertexSet::from_iter_in(self.n, self.s.iter().copied())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of the block holding `v`, or `None` if `v ∈ S`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        let l = self.label[v];
        (l != IN_S).then_some(l as usize)
    }

    pub fn stats(&self) -> Stats {
        let d = self.blocks.len();
        let a = self.blocks.first().map_or(0, Vec::len);
        let b = self.n - self.s.len() - a;
        Stats {
            n: self.n,
            s: self.s.len(),
            d,
            r: d as i64 - self.s.len() as i64,
            a,
            b,
            y: b as i64 - (d as i64 - 1).max(0),
        }
    }

    /// `S = ∅` and every block after the first is a singleton.
    pub fn is_form_a(&self) -> bool {
        self.s.is_empty() && self.blocks.iter().skip(1).all(|b| b.len() == 1)
    }

    /// Every block is a singleton.
    pub fn is_form_b(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn is_canonical(&self) -> bool {
        self.is_form_a() || self.is_form_b()
    }

    /// Whether the edge `{u, v}` belongs to the induced subgraph.
    #[inline]
    pub fn keeps(&self, u: usize, v: usize) -> bool {
        let (lu, lv) = (self.label[u], self.label[v]);
        lu == IN_S || lv == IN_S || lu == lv
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.n() != self.n {
            return Err(Error::input(format!(
                "decomposition is on {} vertices, graph on {}",
                self.n,
                g.n()
            )));
        }
        Ok(())
    }
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PiJson {
            s: self.s.clone(),
            blocks: self.blocks.clone(),
        }
        .serialize(ser)
    }
}

/// The edges of `g` that meet `S` or lie inside a block.
pub fn edge_set(g: &Graph, pi: &Decomposition) -> Result<Vec<(usize, usize)>> {
    pi.check_graph(g)?;
    Ok(g.edges().filter(|&(u, v)| pi.keeps(u, v)).collect())
}

/// `|Π|`, the number of edges in [`edge_set`].
pub fn size(g: &Graph, pi: &Decomposition) -> Result<usize> {
    pi.check_graph(g)?;
    Ok(g.edges().filter(|&(u, v)| pi.keeps(u, v)).count())
}

/// Matching number of the induced subgraph; never more than `(n - r) / 2`.
pub fn nu_of_decomposition(g: &Graph, pi: &Decomposition) -> Result<usize> {
    let h = g.subgraph(&edge_set(g, pi)?)?;
    Ok(matching_number(&h))
}
