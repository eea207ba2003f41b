//! Largest subgraphs with matching number exactly `k`.
//!
//! Every largest such subgraph is induced by a partition `(S, A₁ … A_d)` with
//! `d − |S| = n − 2k`. The exact search therefore ranges over `S` and, for
//! the remaining set `U = V ∖ S`, over partitions of `U` into exactly `d`
//! odd blocks. The second part is a subset DP: `best[U][d]` is the largest
//! number of edges inside blocks, obtained by fixing the block of the lowest
//! vertex of `U`. Maximizers are then read back out of the table and
//! deduplicated by edge set.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use super::forms::{best_form1, best_form2, Form};
use super::{size, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{components, Graph, VertexSet};
use crate::matching::{matching_number, tutte_berge_witness, WitnessMode};
use crate::moves::{improve, ImproveOptions};

/// Default vertex limit for the exact search.
pub const N_EXACT_EXTREMAL: usize = 12;

/// Edge sets are `u128` masks, which caps the exact search at 16 vertices.
const HARD_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug)]
pub struct ExtremalOptions {
    pub max_n: usize,
    /// Distinct maximizers collected before giving up with a capability error.
    pub max_maximizers: usize,
    /// Steps allowed to the improvement loop in heuristic mode.
    pub improve_steps: usize,
    pub seed: u64,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions {
            max_n: N_EXACT_EXTREMAL,
            max_maximizers: 200_000,
            improve_steps: 100,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Maximizer {
    pub edges: Vec<(usize, usize)>,
    /// Every shape the edge set has; empty means neither.
    pub forms: Vec<Form>,
}

impl Maximizer {
    pub fn is_canonical(&self) -> bool {
        !self.forms.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalResult {
    pub k: usize,
    pub size: usize,
    pub mode: ExtremalMode,
    /// In heuristic mode `size` is only a lower bound.
    pub exact: bool,
    pub maximizer_count: usize,
    pub maximizers: Vec<Maximizer>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EgVerdict {
    pub k: usize,
    pub holds: bool,
    pub size: usize,
    pub maximizer_count: usize,
    /// The shapes of each maximizer, in the order of `ExtremalResult::maximizers`.
    pub forms: Vec<Vec<Form>>,
    /// A maximizer with neither shape, when the property fails.
    pub counterexample: Option<Vec<(usize, usize)>>,
}

impl From<&ExtremalResult> for EgVerdict {
    fn from(r: &ExtremalResult) -> Self {
        let bad = r.maximizers.iter().find(|m| !m.is_canonical());
        EgVerdict {
            k: r.k,
            holds: bad.is_none(),
            size: r.size,
            maximizer_count: r.maximizer_count,
            forms: r.maximizers.iter().map(|m| m.forms.clone()).collect(),
            counterexample: bad.map(|m| m.edges.clone()),
        }
    }
}

pub fn extremal(
    g: &Graph,
    k: usize,
    mode: ExtremalMode,
    opts: &ExtremalOptions,
) -> Result<ExtremalResult> {
    match mode {
        ExtremalMode::Exact => Exact::new(g, opts)?.solve(k),
        ExtremalMode::Heuristic => heuristic(g, k, opts),
    }
}

/// Whether every largest subgraph with matching number `k` has one of the
/// two shapes. Needs the exact search.
pub fn eg_check(g: &Graph, k: usize, opts: &ExtremalOptions) -> Result<EgVerdict> {
    Ok(EgVerdict::from(&Exact::new(g, opts)?.solve(k)?))
}

/// [`eg_check`] for every `k` from 0 to `ν(G)`.
pub fn eg_check_all(g: &Graph, opts: &ExtremalOptions) -> Result<Vec<EgVerdict>> {
    let solver = Exact::new(g, opts)?;
    (0..=solver.nu)
        .map(|k| solver.solve(k).map(|r| EgVerdict::from(&r)))
        .collect()
}

struct Exact<'g> {
    g: &'g Graph,
    n: usize,
    nu: usize,
    max_maximizers: usize,
    edges: Vec<(usize, usize)>,
    /// Edge mask of `E(X)` for every vertex mask `X`.
    inside: Vec<u128>,
    /// Edge mask of the edges meeting `X`.
    meet: Vec<u128>,
    /// `best[U * (n + 1) + d]`, or -1 when `U` has no partition into `d` odd blocks.
    best: Vec<i16>,
}

type Memo = HashMap<(u32, usize), Rc<Vec<u128>>>;

impl<'g> Exact<'g> {
    fn new(g: &'g Graph, opts: &ExtremalOptions) -> Result<Self> {
        let n = g.n();
        let limit = opts.max_n.min(HARD_LIMIT);
        if n > limit {
            return Err(Error::capability(format!(
                "exact extremal search limited to n <= {limit}, got n = {n}"
            )));
        }
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut incident = vec![0u128; n];
        let mut bit = vec![0u128; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            incident[u] |= 1 << i;
            incident[v] |= 1 << i;
            bit[u * n + v] = 1 << i;
        }

        let subsets = 1usize << n;
        let mut inside = vec![0u128; subsets];
        let mut meet = vec![0u128; subsets];
        for x in 1..subsets {
            // Peel the highest vertex so every edge is charged from its lower end.
            let top = usize::BITS as usize - 1 - x.leading_zeros() as usize;
            let rest = x ^ (1 << top);
            meet[x] = meet[rest] | incident[top];
            inside[x] = (0..top)
                .filter(|&low| rest >> low & 1 == 1)
                .fold(inside[rest], |acc, low| acc | bit[low * n + top]);
        }

        let stride = n + 1;
        let mut best = vec![-1i16; subsets * stride];
        best[0] = 0;
        for u in 1..subsets {
            let low = u & u.wrapping_neg();
            let others = u ^ low;
            let mut sub = others;
            loop {
                let a = sub | low;
                if a.count_ones() & 1 == 1 {
                    let rest = u ^ a;
                    let ea = inside[a].count_ones() as i16;
                    let rest_max = rest.count_ones() as usize;
                    for d_rest in 0..=rest_max {
                        let br = best[rest * stride + d_rest];
                        if br >= 0 {
                            let slot = &mut best[u * stride + d_rest + 1];
                            *slot = (*slot).max(ea + br);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & others;
            }
        }

        Ok(Exact {
            g,
            n,
            nu: matching_number(g),
            max_maximizers: opts.max_maximizers,
            edges,
            inside,
            meet,
            best,
        })
    }

    fn best_at(&self, u: usize, d: usize) -> i16 {
        if d > self.n {
            -1
        } else {
            self.best[u * (self.n + 1) + d]
        }
    }

    /// All edge masks `⋃ E(A_i)` over optimal partitions of `u` into `d` odd blocks.
    fn optimal_sets(&self, u: u32, d: usize, memo: &mut Memo) -> Result<Rc<Vec<u128>>> {
        if let Some(hit) = memo.get(&(u, d)) {
            return Ok(hit.clone());
        }
        let target = self.best_at(u as usize, d);
        let mut out = BTreeSet::new();
        if u == 0 {
            if d == 0 {
                out.insert(0u128);
            }
        } else if target >= 0 {
            let low = u & u.wrapping_neg();
            let others = u ^ low;
            let mut sub = others;
            loop {
                let a = sub | low;
                if a.count_ones() & 1 == 1 && d >= 1 {
                    let rest = u ^ a;
                    let ea = self.inside[a as usize];
                    let br = self.best_at(rest as usize, d - 1);
                    if br >= 0 && ea.count_ones() as i16 + br == target {
                        for &r in self.optimal_sets(rest, d - 1, memo)?.iter() {
                            out.insert(ea | r);
                        }
                        if out.len() > self.max_maximizers {
                            return Err(too_many(self.max_maximizers));
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & others;
            }
        }
        let rc = Rc::new(out.into_iter().collect::<Vec<_>>());
        memo.insert((u, d), rc.clone());
        Ok(rc)
    }

    fn solve(&self, k: usize) -> Result<ExtremalResult> {
        let n = self.n;
        if k > self.nu {
            return Err(Error::input(format!("k = {k} exceeds nu(G) = {}", self.nu)));
        }
        let full = ((1u64 << n) - 1) as u32;
        let candidates: Vec<(u32, usize, i32)> = (0..=full)
            .filter(|s| s.count_ones() as usize <= k)
            .filter_map(|s| {
                let d = n - 2 * k + s.count_ones() as usize;
                let b = self.best_at((full ^ s) as usize, d);
                (b >= 0).then(|| (s, d, self.meet[s as usize].count_ones() as i32 + b as i32))
            })
            .collect();
        let opt = candidates
            .iter()
            .map(|c| c.2)
            .max()
            .ok_or_else(|| Error::structural("no partition with the required r"))?;

        let mut memo = Memo::new();
        let mut found = BTreeSet::new();
        for &(s, d, val) in &candidates {
            if val != opt {
                continue;
            }
            for &h in self.optimal_sets(full ^ s, d, &mut memo)?.iter() {
                found.insert(self.meet[s as usize] | h);
            }
            if found.len() > self.max_maximizers {
                return Err(too_many(self.max_maximizers));
            }
        }

        let mut maximizers = Vec::with_capacity(found.len());
        for h in found {
            let edges = self.edge_list(h);
            let sub = self.g.subgraph(&edges)?;
            if matching_number(&sub) != k {
                return Err(Error::structural(format!(
                    "maximizer with matching number {} at k = {k}",
                    matching_number(&sub)
                )));
            }
            maximizers.push(Maximizer {
                forms: self.forms_of(h, k),
                edges,
            });
        }
        maximizers.sort_by(|a, b| a.edges.cmp(&b.edges));
        Ok(ExtremalResult {
            k,
            size: opt as usize,
            mode: ExtremalMode::Exact,
            exact: true,
            maximizer_count: maximizers.len(),
            maximizers,
            notes: Vec::new(),
        })
    }

    fn edge_list(&self, h: u128) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| h >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    }

    fn mask_to_set(&self, x: u32) -> VertexSet {
        VertexSet::from_iter_in(self.n, (0..self.n).filter(|&v| x >> v & 1 == 1))
    }

    /// First `W ⊇ support(H)` with `E(W) = H` and first `T` with the edges
    /// meeting `T` equal to `H`, each in lexicographic order of the added
    /// vertices.
    fn forms_of(&self, h: u128, k: usize) -> Vec<Form> {
        let n = self.n;
        let mut forms = Vec::new();

        let support = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| h >> i & 1 == 1)
            .fold(0u32, |acc, (_, &(u, v))| acc | 1 << u | 1 << v);
        let t = (2 * k + 1).min(n);
        let have = support.count_ones() as usize;
        if have <= t {
            let free: Vec<usize> = (0..n).filter(|&v| support >> v & 1 == 0).collect();
            let w = first_combination(free.len(), t - have, |c| {
                let w = c.iter().fold(support, |acc, &i| acc | 1 << free[i]);
                (self.inside[w as usize] == h).then_some(w)
            });
            if let Some(w) = w {
                forms.push(Form::Form1(self.mask_to_set(w)));
            }
        }

        let t2 = first_combination(n, k, |c| {
            let t = c.iter().fold(0u32, |acc, &v| acc | 1 << v);
            (self.meet[t as usize] == h).then_some(t)
        });
        if let Some(t) = t2 {
            forms.push(Form::Form2(self.mask_to_set(t)));
        }
        forms
    }
}

fn too_many(cap: usize) -> Error {
    Error::capability(format!("more than {cap} distinct maximizers"))
}

/// First `Some` returned by `f` over the `t`-subsets of `0..n` in
/// lexicographic order.
fn first_combination<T>(n: usize, t: usize, mut f: impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    if t > n {
        return None;
    }
    let mut c: Vec<usize> = (0..t).collect();
    loop {
        if let Some(x) = f(&c) {
            return Some(x);
        }
        let i = (0..t).rev().find(|&i| c[i] != i + n - t)?;
        c[i] += 1;
        for j in i + 1..t {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// The partition read off a Tutte–Berge witness of `G` itself: its edge set
/// is all of `G`, with `r = n − 2ν(G)`.
fn witness_partition(g: &Graph) -> Result<Decomposition> {
    let n = g.n();
    let w = tutte_berge_witness(g, WitnessMode::Structural)?;
    let comps = components(g, &w.s_set)?;
    let (odd, even): (Vec<_>, Vec<_>) = comps.into_iter().partition(|c| c.is_odd());
    if odd.is_empty() {
        // Perfect matching: one vertex in S, everything else one odd block.
        let rest: Vec<usize> = (1..n).collect();
        return Decomposition::new(n, vec![0], vec![rest]);
    }
    let mut blocks: Vec<Vec<usize>> = odd.into_iter().map(|c| c.vertices).collect();
    for c in even {
        blocks[0].extend(c.vertices);
    }
    Decomposition::new(n, w.s_set.to_vec(), blocks)
}

fn heuristic(g: &Graph, k: usize, opts: &ExtremalOptions) -> Result<ExtremalResult> {
    let n = g.n();
    let nu = matching_number(g);
    if k > nu {
        return Err(Error::input(format!("k = {k} exceeds nu(G) = {nu}")));
    }
    let mut notes = vec!["heuristic: size is a lower bound".to_string()];
    let mut cands: Vec<(usize, Decomposition, Vec<Form>)> = Vec::new();

    if 2 * k < n {
        let f1 = best_form1(g, k)?;
        if !f1.exact {
            notes.push("form1 set from local search".into());
        }
        let pi = Decomposition::form_a(n, &f1.set.to_vec())?;
        cands.push((f1.size, pi, vec![Form::Form1(f1.set)]));
    }
    let f2 = best_form2(g, k)?;
    if !f2.exact {
        notes.push("form2 set from local search".into());
    }
    let pi = Decomposition::form_b(n, &f2.set.to_vec())?;
    cands.push((f2.size, pi, vec![Form::Form2(f2.set)]));

    if k == nu && n > 0 {
        let pi = witness_partition(g)?;
        let before = size(g, &pi)?;
        let iopts = ImproveOptions {
            max_steps: opts.improve_steps,
            seed: opts.seed,
        };
        let out = improve(g, &pi, &iopts)?;
        let fin = &out.final_pi;
        let mut forms = Vec::new();
        if fin.is_form_a() {
            forms.push(Form::Form1(VertexSet::from_iter_in(n, fin.blocks()[0].iter().copied())));
        }
        if fin.is_form_b() {
            forms.push(Form::Form2(fin.s_set()));
        }
        cands.push((out.final_size.max(before), out.final_pi, forms));
    }

    let best = cands.iter().map(|c| c.0).max().expect("form2 candidate");
    let mut maximizers: Vec<Maximizer> = Vec::new();
    for (sz, pi, forms) in cands {
        if sz != best {
            continue;
        }
        let edges = super::edge_set(g, &pi)?;
        if let Some(m) = maximizers.iter_mut().find(|m| m.edges == edges) {
            m.forms.extend(forms);
        } else {
            maximizers.push(Maximizer { edges, forms });
        }
    }
    Ok(ExtremalResult {
        k,
        size: best,
        mode: ExtremalMode::Heuristic,
        exact: false,
        maximizer_count: maximizers.len(),
        maximizers,
        notes,
    })
}
