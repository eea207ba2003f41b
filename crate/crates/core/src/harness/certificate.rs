use serde::Serialize;

use crate::error::Error;
use crate::graph::{component_labels, Graph, VertexSet};
use crate::matching::{matching_number, vertex_cover_number_with_budget};

/// Node budget for the independence search behind [`has_empty_half`].
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Three-valued answer; `Unknown` carries the limit that was hit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ternary {
    Yes,
    No,
    Unknown(String),
}

impl Ternary {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Ternary::Yes
        } else {
            Ternary::No
        }
    }

    pub fn known(&self) -> Option<bool> {
        match self {
            Ternary::Yes => Some(true),
            Ternary::No => Some(false),
            Ternary::Unknown(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Ternary::Yes => "yes",
            Ternary::No => "no",
            Ternary::Unknown(_) => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P3Count {
    pub count: usize,
    /// The first two isolated paths found, middle vertex second.
    pub witnesses: Vec<[usize; 3]>,
}

/// Components that are exactly a path on three vertices.
pub fn count_isolated_p3(g: &Graph) -> P3Count {
    let (label, k) = component_labels(g, &VertexSet::new(g.n()));
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for v in 0..g.n() {
        let c = &mut members[label[v] as usize];
        if c.len() < 4 {
            c.push(v);
        }
    }
    let mut count = 0;
    let mut witnesses = Vec::new();
    for c in members.iter().filter(|c| c.len() == 3) {
        let deg: Vec<usize> = c.iter().map(|&v| g.degree(v)).collect();
        // A connected triple has two or three edges.
        if deg.iter().sum::<usize>() != 4 {
            continue;
        }
        count += 1;
        if witnesses.len() < 2 {
            let mid = (0..3).find(|&i| deg[i] == 2).expect("a path has a middle");
            let ends: Vec<usize> = (0..3).filter(|&i| i != mid).map(|i| c[i]).collect();
            witnesses.push([ends[0], c[mid], ends[1]]);
        }
    }
    P3Count { count, witnesses }
}

/// Whether some `⌈n/2⌉` vertices span no edge, i.e. `α(G) ≥ ⌈n/2⌉`.
///
/// Branch and bound over independent sets, bounded by a greedy partition of
/// the candidates into cliques. Needs the adjacency bitsets, so graphs above
/// the dense size limit are `Unknown`.
pub fn has_empty_half(g: &Graph, node_budget: u64) -> Ternary {
    let n = g.n();
    let target = n.div_ceil(2);
    if target == 0 {
        return Ternary::Yes;
    }
    if g.row(0).is_none() {
        return Ternary::Unknown(format!("no adjacency bitsets at n = {n}"));
    }
    // A maximum matching has one endpoint per edge outside any independent
    // set, so α ≤ n − ν.
    if n - matching_number(g) < target {
        return Ternary::No;
    }
    if greedy_independent(g) >= target {
        return Ternary::Yes;
    }
    let mut s = Search { g, target, nodes: 0, budget: node_budget };
    let all = VertexSet::full(n);
    match s.expand(all.words().to_vec(), 0) {
        Some(true) => Ternary::Yes,
        Some(false) => Ternary::No,
        None => Ternary::Unknown(format!("independence search exceeded {node_budget} nodes")),
    }
}

fn greedy_independent(g: &Graph) -> usize {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut blocked = vec![false; g.n()];
    let mut size = 0;
    for v in order {
        if !blocked[v] {
            size += 1;
            blocked[v] = true;
            for &u in g.neighbors(v) {
                blocked[u as usize] = true;
            }
        }
    }
    size
}

struct Search<'a> {
    g: &'a Graph,
    target: usize,
    nodes: u64,
    budget: u64,
}

fn first_one(words: &[u64]) -> Option<usize> {
    words.iter().position(|&w| w != 0).map(|i| i * 64 + words[i].trailing_zeros() as usize)
}

fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

impl Search<'_> {
    /// `Some(true)` once an independent set of the target size is found,
    /// `None` when the budget runs out.
    fn expand(&mut self, mut cand: Vec<u64>, size: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if size >= self.target {
            return Some(true);
        }
        if size + count(&cand) < self.target {
            return Some(false);
        }
        // Colour classes are cliques of G, so each holds at most one vertex
        // of an independent set.
        let mut order: Vec<(usize, usize)> = Vec::new();
        let mut left = cand.clone();
        let mut colour = 0;
        while left.iter().any(|&w| w != 0) {
            colour += 1;
            let mut q = left.clone();
            while let Some(v) = first_one(&q) {
                q[v / 64] &= !(1u64 << (v % 64));
                left[v / 64] &= !(1u64 << (v % 64));
                let row = self.g.row(v).expect("checked by caller").words();
                for (qw, rw) in q.iter_mut().zip(row) {
                    *qw &= rw;
                }
                order.push((v, colour));
            }
        }
        for &(v, c) in order.iter().rev() {
            if size + c < self.target {
                return Some(false);
            }
            cand[v / 64] &= !(1u64 << (v % 64));
            let row = self.g.row(v).expect("checked by caller").words();
            let next: Vec<u64> = cand.iter().zip(row).map(|(a, r)| a & !r).collect();
            match self.expand(next, size + 1) {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuCheck {
    pub nu: usize,
    /// Number of non-isolated vertices.
    pub support: usize,
    /// Every edge fits inside `2ν + 1` vertices.
    pub form1: bool,
    pub tau: Option<usize>,
    /// `τ = ν`: every edge meets some `ν` vertices.
    pub form2: Ternary,
    pub verdict: Verdict,
    /// Which of the two shapes is ruled out.
    pub violated: Vec<String>,
}

/// At `k = ν(G)` the only largest subgraph is `G` itself, so the property
/// fails exactly when `G` fits neither shape.
pub fn eg_fails_at_nu(g: &Graph, cover_budget: u64) -> NuCheck {
    let nu = matching_number(g);
    let support = g.support_size();
    let form1 = support <= 2 * nu + 1;
    let mut violated = Vec::new();
    if !form1 {
        violated.push(format!("form1: {support} non-isolated vertices exceed 2ν + 1 = {}", 2 * nu + 1));
    }
    let (tau, form2) = if form1 {
        // Not needed for the verdict; skip the cover search.
        (None, Ternary::Unknown("not evaluated: form1 holds".into()))
    } else {
        match vertex_cover_number_with_budget(g, cover_budget) {
            Ok(t) => (Some(t), Ternary::from_bool(t == nu)),
            Err(Error::Capability { reason, .. }) => (None, Ternary::Unknown(reason)),
            Err(e) => (None, Ternary::Unknown(e.to_string())),
        }
    };
    if let Some(t) = tau.filter(|&t| t != nu) {
        violated.push(format!("form2: τ = {t} ≠ ν = {nu}"));
    }
    let verdict = match (form1, form2.known()) {
        (true, _) | (_, Some(true)) => Verdict::Holds,
        (false, Some(false)) => Verdict::Fails,
        (false, None) => Verdict::Unknown,
    };
    NuCheck { nu, support, form1, tau, form2, verdict, violated }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureCertificate {
    pub p3_pair: [[usize; 3]; 2],
    /// Every `⌈n/2⌉`-set spans an edge.
    pub empty_half_absent: bool,
    pub conclusion: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifyReport {
    pub p3: P3Count,
    pub empty_half: Ternary,
    pub certificate: Option<FailureCertificate>,
}

/// Two isolated `P₃`s force the support past `2ν + 1`, and `α < ⌈n/2⌉`
/// forces `τ = n − α > ⌊n/2⌋ ≥ ν`; together the property fails at `ν`.
pub fn certify(g: &Graph, node_budget: u64) -> CertifyReport {
    let p3 = count_isolated_p3(g);
    let empty_half = if p3.count >= 2 {
        has_empty_half(g, node_budget)
    } else {
        Ternary::Unknown("not evaluated: fewer than two isolated P3".into())
    };
    let certificate = (p3.count >= 2 && empty_half == Ternary::No).then(|| FailureCertificate {
        p3_pair: [p3.witnesses[0], p3.witnesses[1]],
        empty_half_absent: true,
        conclusion: "largest subgraph with matching number ν fits neither shape".into(),
    });
    CertifyReport { p3, empty_half, certificate }
}
