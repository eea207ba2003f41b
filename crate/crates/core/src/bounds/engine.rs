//! Certified log-space summation over integer rectangles.
//!
//! The sum `Σ exp f(i, j)` is refined branch-and-bound style. Each pending
//! rectangle carries an upper bound `area · exp(max f)` supplied by the
//! summand, the rectangle with the largest bound is split or evaluated
//! exactly, and the loop stops once every pending bound together is below
//! a relative tolerance of the exact part. What is left pending is reported
//! as a tail bound, so the true sum always lies in
//! `[value, value + tail]`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use statrs::function::factorial::ln_factorial;

/// `ln C(n, k)`, or `−∞` when `k > n`.
pub fn ln_binom(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Largest `ln C(n, k)` over `k ∈ [lo, hi]`.
pub(crate) fn max_ln_binom(n: u64, lo: u64, hi: u64) -> f64 {
    ln_binom(n, (n / 2).clamp(lo, hi.min(n)))
}

pub(crate) fn ln_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Inclusive rectangle `[i0, i1] × [j0, j1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Rect {
    pub i0: u64,
    pub i1: u64,
    pub j0: u64,
    pub j1: u64,
}

impl Rect {
    pub fn line(i0: u64, i1: u64) -> Self {
        Rect { i0, i1, j0: 0, j1: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.i0 > self.i1 || self.j0 > self.j1
    }

    fn area(&self) -> f64 {
        (self.i1 - self.i0 + 1) as f64 * (self.j1 - self.j0 + 1) as f64
    }

    fn split(&self) -> (Rect, Rect) {
        if self.i1 - self.i0 >= self.j1 - self.j0 {
            let m = self.i0 + (self.i1 - self.i0) / 2;
            (Rect { i1: m, ..*self }, Rect { i0: m + 1, ..*self })
        } else {
            let m = self.j0 + (self.j1 - self.j0) / 2;
            (Rect { j1: m, ..*self }, Rect { j0: m + 1, ..*self })
        }
    }
}

pub(crate) trait Summand {
    /// `ln` of the term at `(i, j)`; `−∞` when the point is outside the
    /// summation range.
    fn term(&self, i: u64, j: u64) -> f64;

    /// An upper bound on `term` over the rectangle; `−∞` only when no point
    /// of it is in range.
    fn upper(&self, r: &Rect) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct CertSum {
    /// `ln` of the exactly evaluated part.
    pub ln_value: f64,
    /// `ln` of an upper bound on everything not evaluated.
    pub ln_tail: f64,
    pub terms: u64,
    /// The tolerance was met within the term budget.
    pub complete: bool,
}

struct Pending {
    key: f64,
    rect: Rect,
}

impl PartialEq for Pending {
    fn eq(&self, o: &Self) -> bool {
        self.key.total_cmp(&o.key) == Ordering::Equal
    }
}
impl Eq for Pending {}
impl PartialOrd for Pending {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Pending {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key.total_cmp(&o.key)
    }
}

const LEAF_AREA: f64 = 64.0;

pub(crate) fn certified_sum(s: &impl Summand, root: Rect, rel_tol: f64, max_terms: u64) -> CertSum {
    let mut heap = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<Pending>, rect: Rect| {
        let u = s.upper(&rect);
        if u > f64::NEG_INFINITY {
            heap.push(Pending { key: u + rect.area().ln(), rect });
        }
    };
    if !root.is_empty() {
        push(&mut heap, root);
    }
    let ln_tol = rel_tol.ln();
    let (mut ln_value, mut terms) = (f64::NEG_INFINITY, 0u64);
    let mut iter = 0u64;
    loop {
        let Some(top) = heap.peek() else {
            break;
        };
        // Cheap test: every pending bound is at most the largest one.
        if top.key + (heap.len() as f64).ln() <= ln_tol + ln_value {
            break;
        }
        iter += 1;
        if iter % 1024 == 0 && tail_of(&heap) <= ln_tol + ln_value {
            break;
        }
        if terms >= max_terms {
            break;
        }
        let Pending { rect, .. } = heap.pop().expect("peeked");
        if rect.area() <= LEAF_AREA {
            for i in rect.i0..=rect.i1 {
                for j in rect.j0..=rect.j1 {
                    ln_value = ln_add(ln_value, s.term(i, j));
                    terms += 1;
                }
            }
        } else {
            let (a, b) = rect.split();
            push(&mut heap, a);
            push(&mut heap, b);
        }
    }
    let ln_tail = tail_of(&heap);
    CertSum {
        ln_value,
        ln_tail,
        terms,
        complete: ln_tail <= ln_tol + ln_value,
    }
}

fn tail_of(heap: &BinaryHeap<Pending>) -> f64 {
    heap.iter().fold(f64::NEG_INFINITY, |acc, p| ln_add(acc, p.key))
}
