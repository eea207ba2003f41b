//! Local moves that take a non-canonical partition to a larger one with the
//! same `r = d − s`.
//!
//! A partition falls into one of seven cases according to `|A₁|`, `|B|`,
//! `y` and `s`, compared against thresholds that scale with `n`. Each case
//! has its own move; [`improve`] classifies and applies until the partition
//! is canonical or a move stops paying off.

mod cases;

pub use cases::{
    apply_case, apply_case1, apply_case2, apply_case3, apply_case4, apply_case5, apply_case6,
    apply_case7,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decomposition::{Decomposition, Stats};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The cut-offs separating the cases, as real numbers for reporting.
///
/// Classification itself uses exact integer comparisons where it can:
/// `|A₁| < n/2000` is `2000|A₁| < n` and `|A₁| ≤ 3.99|B|` is
/// `100|A₁| ≤ 399|B|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CaseThresholds {
    pub n: usize,
    pub frac_small: f64,
    pub ratio: f64,
    pub y_small: f64,
    pub log_half: f64,
    pub s_cut: f64,
}

impl CaseThresholds {
    pub fn new(n: usize) -> Self {
        let ln = (n.max(1) as f64).ln();
        let log_half = ln.sqrt();
        CaseThresholds {
            n,
            frac_small: n as f64 / 2000.0,
            ratio: 3.99,
            y_small: 1e-4 * n as f64,
            log_half,
            s_cut: if log_half > 0.0 { n as f64 / log_half } else { f64::INFINITY },
        }
    }
}

/// Which case a partition with these counts falls into. Guards are tried in
/// order 1 to 7 and the first match wins. The only real-valued comparisons
/// are against `√ln n`: `|B| < √ln n` is tested as `|B|² < ln n` and
/// `s > n/√ln n` as `s·√ln n > n`. When neither branch of case 6 applies
/// the partition is case 7, which absorbs the measure-zero tie
/// `s = n/√ln n`.
pub fn classify_stats(st: &Stats) -> usize {
    let n = st.n as u128;
    let (a, b) = (st.a as u128, st.b as u128);
    let y = st.y.max(0) as u128;
    let ln = (st.n.max(1) as f64).ln();
    let a_small = 2000 * a < n;
    let y_small = 2000 * y < n;
    let a_dominant = 100 * a > 399 * b;
    if a_small {
        return if y_small { 2 } else { 1 };
    }
    if !a_dominant {
        return 3;
    }
    if 10_000 * y >= n {
        return 4;
    }
    if y > 0 {
        return 5;
    }
    let s_large = st.s as f64 * ln.sqrt() > st.n as f64;
    let b_small = ((st.b * st.b) as f64) < ln;
    if s_large || b_small {
        6
    } else {
        7
    }
}

/// The case of a non-canonical partition; canonical ones are an input error.
pub fn classify_case(g: &Graph, pi: &Decomposition) -> Result<usize> {
    pi.check_graph(g)?;
    if pi.is_canonical() {
        return Err(Error::input("partition is already canonical"));
    }
    Ok(classify_stats(&pi.stats()))
}

#[derive(Clone, Debug, Serialize)]
pub struct MoveReport {
    pub case_id: usize,
    pub pi_before: Decomposition,
    pub pi_after: Decomposition,
    pub size_before: usize,
    pub size_after: usize,
    /// `|H ∖ H′|`.
    pub removed: usize,
    /// `|H′ ∖ H|`.
    pub added: usize,
    /// Vertices that changed part: the merged `M_i` of cases 1 and 4, `x`, `v`
    /// and `z` in case 2, the half of `A₁` sent to `S` in case 3, and `M` in
    /// cases 5 to 7.
    pub moved_set: Vec<usize>,
    /// How the free choices of the move were made.
    pub choice: String,
    pub thresholds: CaseThresholds,
}

impl MoveReport {
    pub fn improved(&self) -> bool {
        self.size_after > self.size_before
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Canonical,
    /// The last attempted move did not increase the size and was discarded.
    NoImprovement,
    MaxSteps,
    /// A move could not be formed (for instance `s > |B|` in cases 6/7).
    Stuck,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImproveOutcome {
    pub final_pi: Decomposition,
    pub initial_size: usize,
    pub final_size: usize,
    /// Accepted moves, in order.
    pub trace: Vec<MoveReport>,
    /// The move that stopped the loop without being accepted, if any.
    pub rejected: Option<MoveReport>,
    pub stop: StopReason,
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct ImproveOptions {
    pub max_steps: usize,
    /// Drives the random split of case 3.
    pub seed: u64,
}

impl Default for ImproveOptions {
    fn default() -> Self {
        ImproveOptions {
            max_steps: 100,
            seed: 0,
        }
    }
}

/// Classify and apply moves until the partition is canonical, a move fails
/// to increase the size, or `max_steps` moves have been accepted.
pub fn improve(g: &Graph, pi: &Decomposition, opts: &ImproveOptions) -> Result<ImproveOutcome> {
    pi.check_graph(g)?;
    let initial_size = crate::decomposition::size(g, pi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cur = pi.clone();
    let mut cur_size = initial_size;
    let mut trace = Vec::new();
    let mut rejected = None;
    let mut note = None;

    let stop = loop {
        if cur.is_canonical() {
            break StopReason::Canonical;
        }
        if trace.len() >= opts.max_steps {
            break StopReason::MaxSteps;
        }
        let case = classify_stats(&cur.stats());
        let report = match cases::apply_with(g, &cur, case, &mut rng) {
            Ok(r) => r,
            Err(e) => {
                note = Some(e.to_string());
                break StopReason::Stuck;
            }
        };
        debug_assert_eq!(report.size_before, cur_size);
        if !report.improved() {
            rejected = Some(report);
            break StopReason::NoImprovement;
        }
        cur = report.pi_after.clone();
        cur_size = report.size_after;
        trace.push(report);
    };

    Ok(ImproveOutcome {
        final_pi: cur,
        initial_size,
        final_size: cur_size,
        trace,
        rejected,
        stop,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(n: usize, s: usize, d: usize, a: usize, b: usize) -> Stats {
        Stats {
            n,
            s,
            d,
            r: d as i64 - s as i64,
            a,
            b,
            y: b as i64 - (d as i64 - 1),
        }
    }

    #[test]
    fn guard_arithmetic_at_twenty_thousand() {
        // |A₁| = 5 and y = 20: five blocks of five, everything else singletons.
        let b = 20000 - 5;
        assert_eq!(classify_stats(&stats(20000, 0, b - 20 + 1, 5, b)), 1);
        // 9000 ≤ 3.99 · 6000.
        assert_eq!(classify_stats(&stats(20000, 5000, 6001, 9000, 6000)), 3);
        // y = 0, |B| = 900, s = 100.
        assert_eq!(classify_stats(&stats(20000, 100, 901, 19000, 900)), 7);
        assert_eq!(classify_stats(&stats(20000, 1, 3, 19997, 2)), 6);
        assert_eq!(classify_stats(&stats(20000, 1240, 3560, 15001, 3759)), 4);
        // |A₁| = 9, one triple in B, the rest singletons: y = 2.
        assert_eq!(classify_stats(&stats(20000, 1000, 18990, 9, 18991)), 2);
    }

    #[test]
    fn small_n_never_reaches_the_first_two_cases() {
        for a in (1..40).step_by(2) {
            for b in 0..40 {
                let c = classify_stats(&stats(100, 0, b + 1, a, b));
                assert!(c >= 3, "a={a} b={b} gave {c}");
            }
        }
    }

    #[test]
    fn thresholds() {
        let t = CaseThresholds::new(20000);
        assert!((t.frac_small - 10.0).abs() < 1e-12);
        assert!((t.log_half - 3.1469).abs() < 1e-3);
        assert!((t.s_cut - 6355.4).abs() < 1.0);
        assert!(CaseThresholds::new(1).s_cut.is_infinite());
    }
}
