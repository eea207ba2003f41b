//! Union-bound budgets: the finite-`n` value of each summed failure
//! probability behind the density statements and the last improvement case.
//!
//! Every sum is evaluated term by term with exact `ln C(n, k)`, before any
//! of the majorizations used to show it vanishes.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::engine::{certified_sum, ln_add, ln_binom, max_ln_binom, CertSum, Rect, Summand};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_TERMS: u64 = 20_000_000;
const REL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BudgetTag {
    /// Sets of size `w > εn` whose edge count leaves `(1 ± ε) C(w,2) p`.
    P24a,
    /// Sets of size `w > ln n/(150p)` with more than `300 C(w,2) p` edges.
    P24b,
    /// Sets of size `w ∈ [2 ln n/3, ln n/(150p)]` with at least `w ln n/3`
    /// edges.
    P25,
    /// Disjoint `Y, Z` with `|Y| > εn`, `|Z| > n/√ln n` and a crossing count
    /// off by more than `ε`.
    P26,
    /// Partitions `A ∪ B ∪ C` with few `A`–`B` edges, plus the minimum
    /// degree event.
    P27a,
    /// Pairs `B, C` of size at least `n/√ln n` with more than `3bcp`
    /// crossing edges.
    P27b,
    /// Two-part partitions with no crossing edge.
    Cut,
    /// Bad events of the last case with `|B| > n/1000`.
    C7a,
    /// Bad events of the last case with `|B| ≤ n/1000`.
    C7b,
}

impl BudgetTag {
    pub const ALL: [BudgetTag; 9] = [
        BudgetTag::P24a,
        BudgetTag::P24b,
        BudgetTag::P25,
        BudgetTag::P26,
        BudgetTag::P27a,
        BudgetTag::P27b,
        BudgetTag::Cut,
        BudgetTag::C7a,
        BudgetTag::C7b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BudgetTag::P24a => "P24a",
            BudgetTag::P24b => "P24b",
            BudgetTag::P25 => "P25",
            BudgetTag::P26 => "P26",
            BudgetTag::P27a => "P27a",
            BudgetTag::P27b => "P27b",
            BudgetTag::Cut => "CUT",
            BudgetTag::C7a => "C7a",
            BudgetTag::C7b => "C7b",
        }
    }

    /// Whether the sum depends on `ε`.
    pub fn uses_epsilon(self) -> bool {
        matches!(self, BudgetTag::P24a | BudgetTag::P26)
    }
}

impl fmt::Display for BudgetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BudgetTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BudgetTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::input(format!("unknown budget tag {s:?}")))
    }
}

impl Serialize for BudgetTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BudgetQuery {
    pub tag: BudgetTag,
    pub n: u64,
    pub p: f64,
    pub epsilon: f64,
}

impl BudgetQuery {
    pub fn new(tag: BudgetTag, n: u64, p: f64, epsilon: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::input(format!("n = {n} must be at least 2")));
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::input(format!("p = {p} must lie in (0, 1]")));
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::input(format!("epsilon = {epsilon} must lie in (0, 1)")));
        }
        Ok(BudgetQuery { tag, n, p, epsilon })
    }

    /// `p = 8 ln n / n`, capped at one.
    pub fn dense(tag: BudgetTag, n: u64, epsilon: f64) -> Result<Self> {
        Self::new(tag, n, dense_p(n), epsilon)
    }
}

pub fn dense_p(n: u64) -> f64 {
    (8.0 * (n as f64).ln() / n as f64).min(1.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetReport {
    pub tag: BudgetTag,
    pub n: u64,
    pub p: f64,
    pub epsilon: f64,
    /// `log₁₀` of the evaluated sum; `−∞` (serialized as `null`) for an empty
    /// or zero sum.
    pub value_log10: f64,
    /// `log₁₀` of a bound on the terms left unevaluated.
    pub tail_log10: f64,
    pub terms: u64,
    /// The truncation tail is within the relative tolerance.
    pub complete: bool,
    /// The value is at least one.
    pub vacuous: bool,
    pub notes: Vec<String>,
}

impl BudgetReport {
    pub fn value(&self) -> f64 {
        10f64.powf(self.value_log10)
    }

    /// Upper end of the certified interval, `log₁₀(value + tail)`.
    pub fn upper_log10(&self) -> f64 {
        ln_add(self.value_log10 * LN10, self.tail_log10 * LN10) / LN10
    }
}

const LN10: f64 = std::f64::consts::LN_10;

/// Evaluates the selected sum with the default term budget.
pub fn union_budget(q: &BudgetQuery) -> Result<BudgetReport> {
    union_budget_with(q, DEFAULT_MAX_TERMS)
}

pub fn union_budget_with(q: &BudgetQuery, max_terms: u64) -> Result<BudgetReport> {
    let q = BudgetQuery::new(q.tag, q.n, q.p, q.epsilon)?;
    let (n, p, eps) = (q.n, q.p, q.epsilon);
    let nf = n as f64;
    let ln_n = nf.ln();
    let sqrt_ln = ln_n.sqrt();
    let ln_q = (-p).ln_1p();
    let mut notes = Vec::new();
    let mut extra = f64::NEG_INFINITY;

    let cs: CertSum = match q.tag {
        BudgetTag::P24a => {
            notes.push(
                "exponent (ε²/2)·C(w,2)·p as in the summed line; the single-set estimate \
                 before it states ε²/3"
                    .into(),
            );
            let c = eps * eps / 2.0 * p;
            let f = Line::new(n, move |w| -c * pairs(w));
            certified_sum(&f, Rect::line(floor_above(eps * nf), n), REL_TOL, max_terms)
        }
        BudgetTag::P24b => {
            let c = 300.0 * (300f64.ln() - 1.0) * p;
            // Sets with fewer than two vertices span no edge.
            let lo = floor_above(ln_n / (150.0 * p)).max(2);
            let f = Line::new(n, move |w| -c * pairs(w));
            certified_sum(&f, Rect::line(lo, n), REL_TOL, max_terms)
        }
        BudgetTag::P25 => {
            let lo = ((2.0 * ln_n / 3.0).ceil() as u64).max(1);
            let hi = ((ln_n / (150.0 * p)).floor() as u64).min(n);
            if lo > hi {
                notes.push("size range [2 ln n/3, ln n/(150p)] is empty".into());
            }
            let k = 2.0 * ln_n / (3.0 * std::f64::consts::E * p);
            let f = P25 { n, k, ln_n };
            certified_sum(&f, Rect::line(lo, hi), REL_TOL, max_terms)
        }
        BudgetTag::P26 => {
            let f = P26 { n, c: eps * eps / 3.0 * p };
            let r = Rect { i0: floor_above(eps * nf), i1: n, j0: floor_above(nf / sqrt_ln), j1: n };
            certified_sum(&f, r, REL_TOL, max_terms)
        }
        BudgetTag::P27a => {
            extra = ln_n - nf * p / 6.0;
            notes.push("includes the minimum degree term n·exp(−np/6)".into());
            let f = P27a { n, p, a_min: (33 * n) / 50 + 1 };
            let r = Rect { i0: (sqrt_ln.ceil() as u64).max(1), i1: n, j0: 0, j1: n };
            certified_sum(&f, r, REL_TOL, max_terms)
        }
        BudgetTag::P27b => {
            notes.push("no constraint on |A|: only b, c ≥ n/√ln n and c ≤ b + 1".into());
            let lo = (nf / sqrt_ln).ceil() as u64;
            let f = P27b { n, c: 1.2 * p };
            certified_sum(&f, Rect { i0: lo, i1: n, j0: lo, j1: n }, REL_TOL, max_terms)
        }
        BudgetTag::Cut => {
            let f = Cut { n, ln_q };
            certified_sum(&f, Rect::line(1, n / 2), REL_TOL, max_terms)
        }
        BudgetTag::C7a | BudgetTag::C7b => {
            let large = q.tag == BudgetTag::C7a;
            notes.push(format!(
                "summed over (s, b) with a = n − s − b odd, s ≤ b + 1, 100a > 399b, b² ≥ ln n, s·√ln n < n, {}",
                if large { "1000b > n" } else { "1000b ≤ n" }
            ));
            let f = Case7 { n, p, large };
            let s_hi = ((nf / sqrt_ln).ceil() as u64).saturating_sub(1);
            let b_lo = ((sqrt_ln).ceil() as u64).max(1);
            certified_sum(&f, Rect { i0: 1, i1: s_hi, j0: b_lo, j1: n }, REL_TOL, max_terms)
        }
    };

    let ln_value = ln_add(cs.ln_value, extra);
    if !cs.complete {
        notes.push(format!("term budget {max_terms} reached before the tolerance"));
    }
    Ok(BudgetReport {
        tag: q.tag,
        n,
        p,
        epsilon: eps,
        value_log10: ln_value / LN10,
        tail_log10: cs.ln_tail / LN10,
        terms: cs.terms,
        complete: cs.complete,
        vacuous: ln_value >= 0.0,
        notes,
    })
}

fn pairs(w: u64) -> f64 {
    w as f64 * (w as f64 - 1.0) / 2.0
}

/// Smallest integer strictly above `x` (and at least zero).
fn floor_above(x: f64) -> u64 {
    (x.floor() + 1.0).max(0.0) as u64
}

/// `ln C(n, w) + g(w)` with `g` non-increasing.
struct Line<G> {
    n: u64,
    g: G,
}

impl<G: Fn(u64) -> f64> Line<G> {
    fn new(n: u64, g: G) -> Self {
        Line { n, g }
    }
}

impl<G: Fn(u64) -> f64> Summand for Line<G> {
    fn term(&self, w: u64, _: u64) -> f64 {
        ln_binom(self.n, w) + (self.g)(w)
    }
    fn upper(&self, r: &Rect) -> f64 {
        max_ln_binom(self.n, r.i0, r.i1) + (self.g)(r.i0)
    }
}

/// `ln C(n, w) − (1/3) w ln n · ln(k/w)`, `k = 2 ln n/(3ep)`.
struct P25 {
    n: u64,
    k: f64,
    ln_n: f64,
}

impl Summand for P25 {
    fn term(&self, w: u64, _: u64) -> f64 {
        let wf = w as f64;
        ln_binom(self.n, w) - self.ln_n / 3.0 * wf * (self.k / wf).ln()
    }
    fn upper(&self, r: &Rect) -> f64 {
        // w ln(k/w) ≥ w₀ ln(k/w₁) while the logarithm is positive.
        let lg = (self.k / r.i1 as f64).ln();
        let pen = if lg >= 0.0 { r.i0 as f64 * lg } else { r.i1 as f64 * lg };
        max_ln_binom(self.n, r.i0, r.i1) - self.ln_n / 3.0 * pen
    }
}

struct P26 {
    n: u64,
    c: f64,
}

impl Summand for P26 {
    fn term(&self, y: u64, z: u64) -> f64 {
        if y + z > self.n {
            return f64::NEG_INFINITY;
        }
        ln_binom(self.n, y) + ln_binom(self.n, z) - self.c * y as f64 * z as f64
    }
    fn upper(&self, r: &Rect) -> f64 {
        if r.i0 + r.j0 > self.n {
            return f64::NEG_INFINITY;
        }
        max_ln_binom(self.n, r.i0, r.i1) + max_ln_binom(self.n, r.j0, r.j1)
            - self.c * r.i0 as f64 * r.j0 as f64
    }
}

/// `i = b`, `j = c`, `a = n − b − c`.
struct P27a {
    n: u64,
    p: f64,
    a_min: u64,
}

impl P27a {
    const COEF: f64 = 0.9 * 0.9 / 2.0;
}

impl Summand for P27a {
    fn term(&self, b: u64, c: u64) -> f64 {
        if c > b + 1 || b + c >= self.n {
            return f64::NEG_INFINITY;
        }
        let a = self.n - b - c;
        if a < self.a_min || b >= a {
            return f64::NEG_INFINITY;
        }
        ln_binom(self.n, c) + ln_binom(self.n, b) - Self::COEF * (a * b) as f64 * self.p
    }
    fn upper(&self, r: &Rect) -> f64 {
        if r.j0 > r.i1 + 1 || r.i0 + r.j0 >= self.n {
            return f64::NEG_INFINITY;
        }
        let a_max = self.n - r.i0 - r.j0;
        if a_max < self.a_min || r.i0 >= a_max {
            return f64::NEG_INFINITY;
        }
        let a_min = self.n.saturating_sub(r.i1 + r.j1).max(self.a_min);
        max_ln_binom(self.n, r.j0, r.j1) + max_ln_binom(self.n, r.i0, r.i1)
            - Self::COEF * (a_min * r.i0) as f64 * self.p
    }
}

/// `i = b`, `j = c`.
struct P27b {
    n: u64,
    c: f64,
}

impl Summand for P27b {
    fn term(&self, b: u64, c: u64) -> f64 {
        if c > b + 1 || b + c > self.n {
            return f64::NEG_INFINITY;
        }
        ln_binom(self.n, c) + ln_binom(self.n, b) - self.c * (b * c) as f64
    }
    fn upper(&self, r: &Rect) -> f64 {
        if r.j0 > r.i1 + 1 || r.i0 + r.j0 > self.n {
            return f64::NEG_INFINITY;
        }
        max_ln_binom(self.n, r.j0, r.j1) + max_ln_binom(self.n, r.i0, r.i1)
            - self.c * (r.i0 * r.j0) as f64
    }
}

/// `C(n, c) (1 − p)^{c(n−c)}` for `1 ≤ c ≤ n/2`.
struct Cut {
    n: u64,
    ln_q: f64,
}

impl Summand for Cut {
    fn term(&self, c: u64, _: u64) -> f64 {
        ln_binom(self.n, c) + (c * (self.n - c)) as f64 * self.ln_q
    }
    fn upper(&self, r: &Rect) -> f64 {
        // c(n − c) increases up to n/2.
        max_ln_binom(self.n, r.i0, r.i1) + (r.i0 * (self.n - r.i0)) as f64 * self.ln_q
    }
}

/// `i = s`, `j = b`, `a = n − s − b`. Each point adds the bound for few
/// `A₁`–`B` edges (summed over `B`) and the bound for many `S`–`B` edges.
struct Case7 {
    n: u64,
    p: f64,
    large: bool,
}

impl Case7 {
    fn coef(&self) -> f64 {
        if self.large {
            0.1 * 0.1 / 2.0
        } else {
            0.9 * 0.9 / 2.0
        }
    }

    fn in_band(&self, b: u64) -> bool {
        (1000 * b > self.n) == self.large
    }

    /// `(.9a − b)² / (2(b + (.9a − b)/3))`, increasing in `a` and decreasing
    /// in `b` where positive.
    fn g(a: f64, b: f64) -> f64 {
        let u = 0.9 * a - b;
        if u <= 0.0 {
            return 0.0;
        }
        u * u / (2.0 * (b + u / 3.0))
    }

    /// `a ln(a/(10eb))`.
    fn h(a: f64, b: f64) -> f64 {
        a * (a / (10.0 * std::f64::consts::E * b)).ln()
    }
}

impl Summand for Case7 {
    fn term(&self, s: u64, b: u64) -> f64 {
        if s + b >= self.n || s > b + 1 || !self.in_band(b) {
            return f64::NEG_INFINITY;
        }
        let a = self.n - s - b;
        if a % 2 == 0 || 100 * a <= 399 * b {
            return f64::NEG_INFINITY;
        }
        let (af, bf, sf) = (a as f64, b as f64, s as f64);
        let ls = ln_binom(self.n, s);
        let t1 = ls + ln_binom(self.n, b) - self.coef() * af * bf * self.p;
        let t2 = if self.large {
            ls - sf * self.p * Self::g(af, bf)
        } else {
            ls - 0.1 * sf * self.p * Self::h(af, bf)
        };
        ln_add(t1, t2)
    }

    fn upper(&self, r: &Rect) -> f64 {
        if r.i0 + r.j0 >= self.n || r.i0 > r.j1 + 1 {
            return f64::NEG_INFINITY;
        }
        if self.large && 1000 * r.j1 <= self.n || !self.large && 1000 * r.j0 > self.n {
            return f64::NEG_INFINITY;
        }
        let a_max = self.n - r.i0 - r.j0;
        if 100 * a_max <= 399 * r.j0 {
            return f64::NEG_INFINITY;
        }
        let a_min = self.n.saturating_sub(r.i1 + r.j1).max(1) as f64;
        let (b0, b1) = (r.j0 as f64, r.j1 as f64);
        let (s0, s1) = (r.i0 as f64, r.i1 as f64);
        let ls = max_ln_binom(self.n, r.i0, r.i1);
        let t1 = ls + max_ln_binom(self.n, r.j0, r.j1) - self.coef() * a_min * b0 * self.p;
        let t2 = if self.large {
            ls - s0 * self.p * Self::g(a_min, b1)
        } else {
            // a ln(a/(10eb)) is decreasing in b, increasing in a above 10b,
            // and never below −10b.
            let h_lb = if a_min >= 10.0 * b1 { Self::h(a_min, b1) } else { -10.0 * b1 };
            let s = if h_lb >= 0.0 { s0 } else { s1 };
            ls - 0.1 * s * self.p * h_lb
        };
        ln_add(t1, t2)
    }
}
