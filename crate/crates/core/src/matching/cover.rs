//! Exact vertex cover number by kernelization plus branch and bound.
//!
//! Degree-0/degree-1 rules run on the whole graph with adjacency lists; what
//! remains is split into connected components and each is solved on dense
//! bitset rows with the dominance rule, a greedy-matching lower bound and
//! branching on a maximum-degree vertex.

use super::max_matching;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_COVER_BUDGET: u64 = 10_000_000;

/// Components larger than this after kernelization are not attempted.
const MAX_DENSE_COMPONENT: usize = 4096;

/// `τ(G)` with the default node budget.
pub fn vertex_cover_number(g: &Graph) -> Result<usize> {
    vertex_cover_number_with_budget(g, DEFAULT_COVER_BUDGET)
}

/// `τ(G)`, or a capability error carrying `(ν(G), greedy cover size)` when
/// the search would exceed `budget` branch nodes.
pub fn vertex_cover_number_with_budget(g: &Graph, budget: u64) -> Result<usize> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut cover = 0usize;

    // Pendant rule: a leaf's neighbour belongs to some minimum cover.
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || deg[v] != 1 {
            continue;
        }
        let u = g
            .neighbors(v)
            .iter()
            .map(|&u| u as usize)
            .find(|&u| alive[u])
            .expect("degree-1 vertex has a live neighbour");
        cover += 1;
        alive[u] = false;
        alive[v] = false;
        for &w in g.neighbors(u) {
            let w = w as usize;
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }

    let mut seen = vec![false; n];
    let mut nodes = 0u64;
    for s in 0..n {
        if !alive[s] || seen[s] || deg[s] == 0 {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &u in g.neighbors(v) {
                let u = u as usize;
                if alive[u] && !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
        }
        if comp.len() > MAX_DENSE_COMPONENT {
            return Err(budget_error(g, "component too large for exact cover search"));
        }
        comp.sort_unstable();
        let mut solver = Dense::new(g, &comp);
        let full = solver.full();
        match solver.solve(&full, comp.len() + 1, &mut nodes, budget) {
            Ok(Some(c)) => cover += c,
            Ok(None) => unreachable!("a cover of size |C| always exists"),
            Err(()) => return Err(budget_error(g, "vertex cover node budget exceeded")),
        }
    }
    Ok(cover)
}

fn budget_error(g: &Graph, reason: &str) -> Error {
    Error::Capability {
        reason: reason.to_string(),
        bounds: Some((max_matching(g).size(), greedy_cover(g))),
    }
}

fn greedy_cover(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut left = g.m();
    let mut size = 0;
    while left > 0 {
        let v = (0..n).filter(|&v| alive[v]).max_by_key(|&v| deg[v]).unwrap();
        alive[v] = false;
        size += 1;
        for &u in g.neighbors(v) {
            let u = u as usize;
            if alive[u] {
                deg[u] -= 1;
                left -= 1;
            }
        }
    }
    size
}

type Bits = Vec<u64>;

struct Dense {
    rows: Vec<Bits>,
    len: usize,
}

impl Dense {
    fn new(g: &Graph, comp: &[usize]) -> Self {
        let len = comp.len();
        let words = len.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; len];
        for (i, &v) in comp.iter().enumerate() {
            for &u in g.neighbors(v) {
                if let Ok(j) = comp.binary_search(&(u as usize)) {
                    rows[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        Dense { rows, len }
    }

    fn full(&self) -> Bits {
        let mut b = vec![0u64; self.len.div_ceil(64)];
        for i in 0..self.len {
            b[i / 64] |= 1 << (i % 64);
        }
        b
    }

    fn degree(&self, v: usize, alive: &Bits) -> usize {
        self.rows[v]
            .iter()
            .zip(alive)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Size of a greedy maximal matching inside `alive`.
    fn matching_bound(&self, alive: &Bits) -> usize {
        let mut free = alive.clone();
        let mut size = 0;
        for v in ones(alive) {
            if !get(&free, v) {
                continue;
            }
            if let Some(u) = self.rows[v]
                .iter()
                .zip(&free)
                .enumerate()
                .find_map(|(w, (a, b))| {
                    let x = a & b;
                    (x != 0).then(|| w * 64 + x.trailing_zeros() as usize)
                })
            {
                clear(&mut free, v);
                clear(&mut free, u);
                size += 1;
            }
        }
        size
    }

    /// Minimum cover of the subgraph induced by `alive`, if it is `< ub`.
    fn solve(
        &mut self,
        alive: &Bits,
        ub: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> std::result::Result<Option<usize>, ()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(());
        }
        let mut alive = alive.clone();
        let mut taken = 0usize;

        loop {
            let mut changed = false;
            for v in ones(&alive.clone()) {
                if !get(&alive, v) {
                    continue;
                }
                let d = self.degree(v, &alive);
                if d == 0 {
                    clear(&mut alive, v);
                    changed = true;
                } else if d == 1 {
                    let u = first_common(&self.rows[v], &alive);
                    clear(&mut alive, u);
                    clear(&mut alive, v);
                    taken += 1;
                    changed = true;
                } else if let Some(u) = self.dominator(v, &alive) {
                    clear(&mut alive, u);
                    taken += 1;
                    changed = true;
                }
                if taken >= ub {
                    return Ok(None);
                }
            }
            if !changed {
                break;
            }
        }

        if alive.iter().all(|&w| w == 0) {
            return Ok((taken < ub).then_some(taken));
        }
        if taken + self.matching_bound(&alive) >= ub {
            return Ok(None);
        }

        let v = ones(&alive)
            .max_by_key(|&v| (self.degree(v, &alive), std::cmp::Reverse(v)))
            .unwrap();
        let mut best = ub - taken;

        let mut without_v = alive.clone();
        clear(&mut without_v, v);
        if best > 1 {
            if let Some(c) = self.solve(&without_v, best - 1, nodes, budget)? {
                best = c + 1;
            }
        }

        let nbrs: Vec<usize> = ones(&self.rows[v].clone())
            .filter(|&u| get(&alive, u))
            .collect();
        if nbrs.len() < best {
            let mut rest = without_v;
            for &u in &nbrs {
                clear(&mut rest, u);
            }
            if let Some(c) = self.solve(&rest, best - nbrs.len(), nodes, budget)? {
                best = c + nbrs.len();
            }
        }

        Ok((best < ub - taken).then_some(taken + best))
    }

    /// A neighbour `u` of `v` with `N[v] ⊆ N[u]` inside `alive`.
    fn dominator(&self, v: usize, alive: &Bits) -> Option<usize> {
        ones(&self.rows[v])
            .filter(|&u| get(alive, u))
            .find(|&u| {
                self.rows[v].iter().zip(&self.rows[u]).zip(alive).enumerate().all(
                    |(w, ((rv, ru), a))| {
                        let self_v = if w == v / 64 { 1u64 << (v % 64) } else { 0 };
                        let self_u = if w == u / 64 { 1u64 << (u % 64) } else { 0 };
                        ((rv | self_v) & a) & !(ru | self_u) == 0
                    },
                )
            })
    }
}

fn ones(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            (x != 0).then(|| {
                let t = x.trailing_zeros() as usize;
                x &= x - 1;
                w * 64 + t
            })
        })
    })
}

#[inline]
fn get(b: &Bits, v: usize) -> bool {
    b[v / 64] >> (v % 64) & 1 == 1
}

#[inline]
fn clear(b: &mut Bits, v: usize) {
    b[v / 64] &= !(1 << (v % 64));
}

fn first_common(a: &Bits, b: &Bits) -> usize {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(w, (x, y))| {
            let z = x & y;
            (z != 0).then(|| w * 64 + z.trailing_zeros() as usize)
        })
        .expect("non-empty intersection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{gen_gnp, two_coloring, GnpParams};
    use crate::matching::matching_number;

    /// τ by checking every vertex subset.
    fn brute_tau(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|mask| g.edges().all(|(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(vertex_cover_number(&star(3)).unwrap(), 1);
        assert_eq!(vertex_cover_number(&cycle(5)).unwrap(), 3);
        assert_eq!(vertex_cover_number(&complete(6)).unwrap(), 5);
        assert_eq!(vertex_cover_number(&petersen()).unwrap(), 6);
        assert_eq!(vertex_cover_number(&Graph::empty(4)).unwrap(), 0);
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..250 {
            let n = 1 + (seed % 13) as usize;
            let p = [0.2, 0.4, 0.7][seed as usize % 3];
            let g = gen_gnp(&GnpParams::new(n, p, 77 + seed).unwrap()).unwrap();
            let tau = vertex_cover_number(&g).unwrap();
            assert_eq!(tau, brute_tau(&g), "seed {seed}");
            let nu = matching_number(&g);
            assert!(nu <= tau && tau <= 2 * nu);
            if two_coloring(&g).is_some() {
                assert_eq!(tau, nu, "König fails on seed {seed}");
            }
        }
    }

    #[test]
    fn forests_are_solved_by_kernelization() {
        let g = gen_gnp(&GnpParams::new(5000, 0.5 / 5000.0, 3).unwrap()).unwrap();
        assert!(crate::matching::is_forest(&g));
        assert_eq!(vertex_cover_number_with_budget(&g, 1).unwrap(), matching_number(&g));
    }

    #[test]
    fn budget_exhaustion_reports_bounds() {
        let g = gen_gnp(&GnpParams::new(120, 0.1, 1).unwrap()).unwrap();
        match vertex_cover_number_with_budget(&g, 3) {
            Err(Error::Capability { bounds: Some((lo, hi)), .. }) => {
                assert!(lo <= hi);
                assert_eq!(lo, matching_number(&g));
            }
            other => panic!("expected capability error, got {other:?}"),
        }
    }
}
