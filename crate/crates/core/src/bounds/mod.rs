//! Binomial tail bounds, exact tails, union-bound budgets, extremal size
//! formulas and the moments of the isolated `P₃` count.

mod budget;
mod engine;

pub use budget::{dense_p, union_budget, union_budget_with, BudgetQuery, BudgetReport, BudgetTag, DEFAULT_MAX_TERMS};
pub use engine::ln_binom;

use serde::Serialize;
use statrs::function::factorial::ln_factorial;

use crate::decomposition::binomial;
use crate::error::{Error, Result};

/// `φ(x) = (1+x) ln(1+x) − x`, with `φ(−1) = 1`.
pub fn phi(x: f64) -> Result<f64> {
    if x.is_nan() || x < -1.0 {
        return Err(Error::Domain(format!("phi is undefined at {x}")));
    }
    if x == -1.0 {
        return Ok(1.0);
    }
    // ln_1p keeps precision near zero, where φ(x) ≈ x²/2.
    Ok((1.0 + x) * x.ln_1p() - x)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailQuery {
    pub m: u64,
    pub q: f64,
    pub lambda: f64,
    /// Multiplier for [`large_deviation`]; ignored by the Chernoff bounds.
    pub k_factor: f64,
}

impl TailQuery {
    pub fn new(m: u64, q: f64, lambda: f64) -> Result<Self> {
        Self::with_k(m, q, lambda, 1.0)
    }

    pub fn with_k(m: u64, q: f64, lambda: f64, k_factor: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("m must be at least 1"));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::input(format!("q = {q} is not a probability")));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::input(format!("lambda = {lambda} must be a finite non-negative number")));
        }
        Ok(TailQuery { m, q, lambda, k_factor })
    }

    pub fn mu(&self) -> f64 {
        self.m as f64 * self.q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundPair {
    /// `exp[−μ φ(±λ/μ)]`.
    pub phi_form: f64,
    /// `exp[−λ²/(2(μ + λ/3))]` above the mean, `exp[−λ²/(2μ)]` below.
    pub quadratic_form: f64,
    /// The mean was zero, so the bound is exact rather than a Chernoff bound.
    pub degenerate: bool,
    /// `λ > μ` below the mean was replaced by `λ = μ`.
    pub clamped: bool,
}

/// Bounds on `Pr(X > μ + λ)` for `X ~ Bin(m, q)`.
pub fn chernoff_upper(t: &TailQuery) -> BoundPair {
    let (mu, l) = (t.mu(), t.lambda);
    if l == 0.0 {
        return BoundPair { phi_form: 1.0, quadratic_form: 1.0, degenerate: mu == 0.0, clamped: false };
    }
    if mu == 0.0 {
        // X = 0 almost surely.
        return BoundPair { phi_form: 0.0, quadratic_form: 0.0, degenerate: true, clamped: false };
    }
    BoundPair {
        phi_form: (-mu * phi(l / mu).expect("λ/μ ≥ 0")).exp(),
        quadratic_form: (-l * l / (2.0 * (mu + l / 3.0))).exp(),
        degenerate: false,
        clamped: false,
    }
}

/// Bounds on `Pr(X < μ − λ)`; `λ` beyond `μ` is clamped to `μ`.
pub fn chernoff_lower(t: &TailQuery) -> BoundPair {
    let mu = t.mu();
    let clamped = t.lambda > mu;
    let l = t.lambda.min(mu);
    if l == 0.0 {
        return BoundPair { phi_form: 1.0, quadratic_form: 1.0, degenerate: mu == 0.0, clamped };
    }
    BoundPair {
        phi_form: (-mu * phi(-l / mu).expect("−λ/μ ≥ −1")).exp(),
        quadratic_form: (-l * l / (2.0 * mu)).exp(),
        degenerate: false,
        clamped,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LargeDeviation {
    /// `exp[−Kμ ln(K/e)]`, as is.
    pub value: f64,
    /// `K ≤ e`, so the value is at least one.
    pub vacuous: bool,
}

/// The bound on `Pr(X > Kμ)`.
pub fn large_deviation(t: &TailQuery) -> Result<LargeDeviation> {
    let k = t.k_factor;
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::input(format!("K = {k} must be positive")));
    }
    let value = (-k * t.mu() * (k.ln() - 1.0)).exp();
    Ok(LargeDeviation { value, vacuous: value >= 1.0 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSide {
    /// `X > t`
    Above,
    /// `X ≥ t`
    AtLeast,
    /// `X < t`
    Below,
    /// `X ≤ t`
    AtMost,
}

fn ln_pmf(m: u64, q: f64, j: u64) -> f64 {
    let ln_c = ln_factorial(m) - ln_factorial(j) - ln_factorial(m - j);
    let a = if j == 0 { 0.0 } else { j as f64 * q.ln() };
    let b = if j == m { 0.0 } else { (m - j) as f64 * (-q).ln_1p() };
    ln_c + a + b
}

/// `Pr(X ⋈ t)` for `X ~ Bin(m, q)` by summing the probability mass function.
/// Terms are scaled by the largest one and added with Neumaier compensation.
pub fn binom_tail_exact(m: u64, q: f64, t: f64, side: TailSide) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::input(format!("q = {q} is not a probability")));
    }
    if t.is_nan() {
        return Err(Error::input("threshold is NaN"));
    }
    // Integer range [lo, hi] of outcomes in the tail.
    let (lo, hi) = match side {
        TailSide::Above => (t.floor() + 1.0, m as f64),
        TailSide::AtLeast => (t.ceil(), m as f64),
        TailSide::Below => (0.0, t.ceil() - 1.0),
        TailSide::AtMost => (0.0, t.floor()),
    };
    let (lo, hi) = (lo.max(0.0), hi.min(m as f64));
    if lo > hi {
        return Ok(0.0);
    }
    let (lo, hi) = (lo as u64, hi as u64);
    if q == 0.0 || q == 1.0 {
        let at = if q == 0.0 { 0 } else { m };
        return Ok(if (lo..=hi).contains(&at) { 1.0 } else { 0.0 });
    }
    let logs: Vec<f64> = (lo..=hi).map(|j| ln_pmf(m, q, j)).collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for l in logs {
        let x = (l - top).exp();
        let s = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - s) + x } else { (x - s) + sum };
        sum = s;
    }
    Ok(((sum + comp).ln() + top).exp().min(1.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SizeBranch {
    /// `C(l(k+1)−1, l)`: every edge inside one set.
    Clique,
    /// `C(n, l) − C(n−k, l)`: every edge meeting a `k`-set.
    Star,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeFormula {
    pub value: u128,
    pub clique: u128,
    pub star: u128,
    pub branch: SizeBranch,
    /// `l(k+1) − 1 > n`, so the clique branch was taken on all `n` vertices.
    pub capped: bool,
}

/// `max{C(l(k+1)−1, l), C(n, l) − C(n−k, l)}`, the largest number of
/// `l`-edges with matching number `k`. The clique set is capped at `n`.
pub fn eg_size_formula(n: usize, k: usize, l: usize) -> Result<SizeFormula> {
    if l < 2 {
        return Err(Error::input(format!("l = {l} must be at least 2")));
    }
    if l.checked_mul(k).map_or(true, |lk| lk > n) {
        return Err(Error::input(format!("lk = {l}·{k} exceeds n = {n}")));
    }
    let want = l * (k + 1) - 1;
    let capped = want > n;
    let clique = binomial(want.min(n), l);
    let star = binomial(n, l) - binomial(n - k, l);
    if clique == u128::MAX || binomial(n, l) == u128::MAX {
        return Err(Error::capability("binomial coefficient overflows 128 bits"));
    }
    let branch = match clique.cmp(&star) {
        std::cmp::Ordering::Greater => SizeBranch::Clique,
        std::cmp::Ordering::Less => SizeBranch::Star,
        std::cmp::Ordering::Equal => SizeBranch::Both,
    };
    Ok(SizeFormula { value: clique.max(star), clique, star, branch, capped })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct P3Moments {
    pub mean: f64,
    pub second_moment: f64,
    /// `E X² / (E X)²`; `None` when the mean is zero.
    pub ratio: Option<f64>,
}

/// `E X = 3 C(n,3) p² (1−p)^{3n−8}` and
/// `E X² = E X + 9 C(n,3) C(n−3,3) p⁴ (1−p)^{6n−25}` for `X` the number of
/// isolated `P₃`s in `G(n, p)`.
pub fn p3_moments(n: usize, p: f64) -> Result<P3Moments> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("p = {p} is not a probability")));
    }
    if n < 3 || p == 0.0 || p == 1.0 {
        return Ok(P3Moments { mean: 0.0, second_moment: 0.0, ratio: None });
    }
    let (nf, lp, lq) = (n as f64, p.ln(), (-p).ln_1p());
    let mean = (3f64.ln() + ln_binom(n as u64, 3) + 2.0 * lp + (3.0 * nf - 8.0) * lq).exp();
    let pair = if n >= 6 {
        (9f64.ln() + ln_binom(n as u64, 3) + ln_binom(n as u64 - 3, 3) + 4.0 * lp + (6.0 * nf - 25.0) * lq).exp()
    } else {
        0.0
    };
    let second_moment = mean + pair;
    Ok(P3Moments { mean, second_moment, ratio: (mean > 0.0).then(|| second_moment / (mean * mean)) })
}
