use std::collections::VecDeque;

use super::{Matching, NONE};
use crate::graph::{Graph, VertexSet};

/// Edmonds' augmenting-path search with blossom contraction.
///
/// Per-search state is reset lazily: only vertices that entered the current
/// alternating forest are touched, so repeated searches on large sparse
/// graphs cost time proportional to the explored region.
pub(super) struct Search<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    outer: Vec<bool>,
    touched_flag: Vec<bool>,
    touched: Vec<usize>,
    in_blossom: Vec<bool>,
    blossom_marks: Vec<usize>,
    path_mark: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'g> Search<'g> {
    pub(super) fn new(g: &'g Graph) -> Self {
        Self::with_matching(g, Matching::empty(g.n()))
    }

    pub(super) fn with_matching(g: &'g Graph, m: Matching) -> Self {
        let n = g.n();
        Search {
            g,
            mate: m.mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            outer: vec![false; n],
            touched_flag: vec![false; n],
            touched: Vec::new(),
            in_blossom: vec![false; n],
            blossom_marks: Vec::new(),
            path_mark: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    pub(super) fn maximum(mut self) -> Matching {
        self.greedy();
        for v in 0..self.g.n() {
            if self.mate[v] == NONE {
                if let Some(end) = self.grow(&[v]) {
                    self.augment(end);
                }
            }
        }
        self.reset();
        Matching { mate: self.mate }
    }

    /// End of an augmenting path starting at the exposed vertex `root`.
    pub(super) fn augmenting_end(&mut self, root: usize) -> Option<usize> {
        let r = self.grow(&[root]);
        self.reset();
        r
    }

    /// Outer vertices of the forest grown from all exposed vertices at once.
    pub(super) fn outer_vertices(mut self) -> VertexSet {
        let roots: Vec<usize> = (0..self.g.n()).filter(|&v| self.mate[v] == NONE).collect();
        let end = self.grow(&roots);
        debug_assert!(end.is_none(), "matching was not maximum");
        let n = self.g.n();
        VertexSet::from_iter_in(n, (0..n).filter(|&v| self.outer[v]))
    }

    fn greedy(&mut self) {
        for v in 0..self.g.n() {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&u) = self
                .g
                .neighbors(v)
                .iter()
                .find(|&&u| self.mate[u as usize] == NONE)
            {
                let u = u as usize;
                self.mate[v] = u;
                self.mate[u] = v;
            }
        }
    }

    #[inline]
    fn touch(&mut self, v: usize) {
        if !self.touched_flag[v] {
            self.touched_flag[v] = true;
            self.touched.push(v);
        }
    }

    fn reset(&mut self) {
        for &v in &self.touched {
            self.parent[v] = NONE;
            self.base[v] = v;
            self.outer[v] = false;
            self.touched_flag[v] = false;
        }
        self.touched.clear();
        self.queue.clear();
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
        self.reset();
    }

    fn is_outer_target(&self, to: usize) -> bool {
        let m = self.mate[to];
        if m == NONE {
            self.outer[to]
        } else {
            self.parent[m] != NONE
        }
    }

    fn grow(&mut self, roots: &[usize]) -> Option<usize> {
        self.reset();
        for &r in roots {
            self.outer[r] = true;
            self.touch(r);
            self.queue.push_back(r);
        }
        while let Some(v) = self.queue.pop_front() {
            for i in 0..self.g.neighbors(v).len() {
                let to = self.g.neighbors(v)[i] as usize;
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if self.is_outer_target(to) {
                    let Some(cur) = self.lca(v, to) else {
                        // Outer vertices of two different trees are adjacent.
                        return Some(NONE);
                    };
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for j in 0..self.touched.len() {
                        let w = self.touched[j];
                        if self.in_blossom[self.base[w]] {
                            self.base[w] = cur;
                            if !self.outer[w] {
                                self.outer[w] = true;
                                self.queue.push_back(w);
                            }
                        }
                    }
                    for &b in &self.blossom_marks {
                        self.in_blossom[b] = false;
                    }
                    self.blossom_marks.clear();
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    self.touch(to);
                    let w = self.mate[to];
                    if w == NONE {
                        return Some(to);
                    }
                    self.outer[w] = true;
                    self.touch(w);
                    self.queue.push_back(w);
                }
            }
        }
        None
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> Option<usize> {
        let mut marked = Vec::new();
        loop {
            a = self.base[a];
            self.path_mark[a] = true;
            marked.push(a);
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        let found = loop {
            b = self.base[b];
            if self.path_mark[b] {
                break Some(b);
            }
            if self.mate[b] == NONE {
                break None;
            }
            b = self.parent[self.mate[b]];
        };
        for x in marked {
            self.path_mark[x] = false;
        }
        found
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let bv = self.base[v];
            let bm = self.base[self.mate[v]];
            for x in [bv, bm] {
                if !self.in_blossom[x] {
                    self.in_blossom[x] = true;
                    self.blossom_marks.push(x);
                }
            }
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }
}
