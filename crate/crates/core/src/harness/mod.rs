//! Seeded Monte Carlo experiments over `G(n, p)`, density audits, and the
//! deterministic failure certificate.

mod audit;
mod certificate;

pub use audit::{check_density_event, density_audit, DensityAudit, DensityEvent, EventAudit, EventCheck};
pub use certificate::{
    certify, count_isolated_p3, eg_fails_at_nu, has_empty_half, CertifyReport, FailureCertificate,
    NuCheck, P3Count, Ternary, Verdict, DEFAULT_NODE_BUDGET,
};

use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::{eg_check_all, Decomposition, ExtremalOptions};
use crate::error::{Error, Result};
use crate::graph::{gen_gnp, GnpParams, GENERATOR_NAME};
use crate::matching::{is_forest, matching_number, vertex_cover_number_with_budget, DEFAULT_COVER_BUDGET};
use crate::moves::{improve, ImproveOptions, StopReason};

pub const SCHEMA: &str = "eg-matchlab/1";
pub const CSV_HEADER: &str = "trial,seed,n,p,m,nu,is_forest,p3_count,empty_half,tau_eq_nu,eg_all,notes";

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum PRule {
    /// `8 ln n / n`.
    Dense,
    /// `c / n`.
    Forest { c: f64 },
    /// An explicit `p`, compared against `(4 ln(2e)/n, ln n/(3n))`.
    Middle { p: f64 },
    Custom { p: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MiddleInterval {
    pub lo: f64,
    pub hi: f64,
    /// The interval is non-empty, which needs `ln n > 12 ln(2e)`.
    pub feasible: bool,
    pub contains_p: bool,
}

impl MiddleInterval {
    pub fn new(n: usize, p: f64) -> Self {
        let nf = n as f64;
        let lo = 4.0 * (2.0 * std::f64::consts::E).ln() / nf;
        let hi = nf.ln() / (3.0 * nf);
        MiddleInterval { lo, hi, feasible: lo < hi, contains_p: lo < p && p < hi }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResolvedP {
    pub p: f64,
    /// The rule asked for more than one.
    pub clamped: bool,
    pub middle: Option<MiddleInterval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityChecks {
    pub epsilon: f64,
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Checks {
    /// Exact `eg_check_all` when `n ≤ exact_cutoff`.
    pub eg_exact: bool,
    pub exact_cutoff: usize,
    pub tau: bool,
    pub empty_half: bool,
    pub density: Option<DensityChecks>,
    pub moves: bool,
    pub cover_budget: u64,
    pub node_budget: u64,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            eg_exact: true,
            exact_cutoff: 12,
            tau: true,
            empty_half: true,
            density: None,
            moves: false,
            cover_budget: DEFAULT_COVER_BUDGET,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegimeSpec {
    pub n: usize,
    pub p_rule: PRule,
    pub trials: usize,
    pub master_seed: u64,
    pub checks: Checks,
}

impl RegimeSpec {
    pub fn new(n: usize, p_rule: PRule, trials: usize, master_seed: u64) -> Self {
        RegimeSpec { n, p_rule, trials, master_seed, checks: Checks::default() }
    }

    pub fn resolve_p(&self) -> Result<ResolvedP> {
        if self.n == 0 {
            return Err(Error::input("n must be at least 1"));
        }
        let nf = self.n as f64;
        let (raw, middle) = match self.p_rule {
            PRule::Dense => (if self.n == 1 { 0.0 } else { 8.0 * nf.ln() / nf }, None),
            PRule::Forest { c } => (c / nf, None),
            PRule::Middle { p } => (p, Some(MiddleInterval::new(self.n, p))),
            PRule::Custom { p } => (p, None),
        };
        if !(raw >= 0.0) {
            return Err(Error::input(format!("edge probability {raw} is negative")));
        }
        let clamped = raw > 1.0;
        if clamped && !matches!(self.p_rule, PRule::Dense) {
            return Err(Error::input(format!("edge probability {raw} exceeds one")));
        }
        let p = raw.min(1.0);
        let middle = middle.map(|_| MiddleInterval::new(self.n, p));
        Ok(ResolvedP { p, clamped, middle })
    }

    fn regime(&self) -> &'static str {
        match self.p_rule {
            PRule::Dense => "dense",
            PRule::Forest { .. } => "forest",
            PRule::Middle { .. } => "middle",
            PRule::Custom { .. } => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MoveStats {
    pub k: usize,
    pub initial_size: usize,
    pub final_size: usize,
    pub steps: usize,
    pub stop: StopReason,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub p: f64,
    pub m: usize,
    pub nu: usize,
    pub is_forest: bool,
    pub p3_count: usize,
    pub empty_half: Option<Ternary>,
    pub tau_eq_nu: Option<Ternary>,
    /// `Yes` when the property holds at every `k`; `None` when skipped.
    pub eg_all: Option<Ternary>,
    pub certificate: Option<FailureCertificate>,
    /// With a certificate: whether the direct check at `ν` agrees.
    pub certificate_confirmed: Option<bool>,
    pub density: Option<DensityAudit>,
    pub moves: Option<MoveStats>,
    pub notes: Vec<String>,
}

/// A random partition with `r = n − 2k`: `s ≤ k` vertices in `S` and the
/// `2(k − s)` spare vertices spread over the blocks in pairs.
pub fn random_decomposition(n: usize, k: usize, rng: &mut impl Rng) -> Result<Decomposition> {
    if 2 * k > n {
        return Err(Error::input(format!("2k = {} exceeds n = {n}", 2 * k)));
    }
    // With n = 2k an empty S would leave no blocks.
    let s = rng.gen_range(usize::from(n == 2 * k)..=k);
    let d = n - 2 * k + s;
    let mut sizes = vec![1usize; d];
    for _ in 0..k - s {
        sizes[rng.gen_range(0..d)] += 2;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let (sv, mut rest) = perm.split_at(s);
    let mut blocks = Vec::with_capacity(d);
    for len in sizes {
        let (b, r) = rest.split_at(len);
        blocks.push(b.to_vec());
        rest = r;
    }
    Decomposition::new(n, sv.to_vec(), blocks)
}

fn run_one(spec: &RegimeSpec, p: f64, trial: usize) -> Result<TrialRecord> {
    let seed = trial_seed(spec.master_seed, trial as u64);
    let g = gen_gnp(&GnpParams::new(spec.n, p, seed)?)?;
    let ck = &spec.checks;
    let nu = matching_number(&g);
    let mut notes = Vec::new();
    let p3 = count_isolated_p3(&g);

    // The certificate only needs the independence search with two isolated P3s.
    let empty_half = (ck.empty_half || p3.count >= 2).then(|| has_empty_half(&g, ck.node_budget));
    let tau_eq_nu = ck.tau.then(|| match vertex_cover_number_with_budget(&g, ck.cover_budget) {
        Ok(t) => Ternary::from_bool(t == nu),
        Err(e) => Ternary::Unknown(e.to_string()),
    });
    let eg_all = (ck.eg_exact && spec.n <= ck.exact_cutoff).then(|| {
        match eg_check_all(&g, &ExtremalOptions { max_n: ck.exact_cutoff, ..Default::default() }) {
            Ok(v) => Ternary::from_bool(v.iter().all(|x| x.holds)),
            Err(e) => Ternary::Unknown(e.to_string()),
        }
    });

    let certificate = (p3.count >= 2 && empty_half == Some(Ternary::No)).then(|| FailureCertificate {
        p3_pair: [p3.witnesses[0], p3.witnesses[1]],
        empty_half_absent: true,
        conclusion: "largest subgraph with matching number ν fits neither shape".into(),
    });
    let certificate_confirmed = certificate.as_ref().and_then(|_| {
        match eg_fails_at_nu(&g, ck.cover_budget).verdict {
            Verdict::Fails => Some(true),
            Verdict::Holds => Some(false),
            Verdict::Unknown => {
                notes.push("certificate present but τ search ran out of budget".into());
                None
            }
        }
    });

    let mut aux = ChaCha8Rng::seed_from_u64(trial_seed(seed, 1));
    let density = ck.density.map(|d| density_audit(&g, p, d.epsilon, d.samples, aux.gen()));
    let moves = if ck.moves && nu > 0 {
        let k = aux.gen_range(1..=nu);
        let pi = random_decomposition(spec.n, k, &mut aux)?;
        let out = improve(&g, &pi, &ImproveOptions { max_steps: 100, seed: aux.gen() })?;
        Some(MoveStats {
            k,
            initial_size: out.initial_size,
            final_size: out.final_size,
            steps: out.trace.len(),
            stop: out.stop,
        })
    } else {
        None
    };
    if ck.eg_exact && eg_all.is_none() {
        notes.push(format!("exact check skipped above n = {}", ck.exact_cutoff));
    }

    Ok(TrialRecord {
        trial,
        seed,
        n: spec.n,
        p,
        m: g.m(),
        nu,
        is_forest: is_forest(&g),
        p3_count: p3.count,
        empty_half,
        tau_eq_nu,
        eg_all,
        certificate,
        certificate_confirmed,
        density,
        moves,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rate {
    pub name: &'static str,
    pub successes: usize,
    /// Trials where the quantity was known.
    pub total: usize,
    pub rate: Option<f64>,
    /// 95% Wilson score interval.
    pub wilson: Option<(f64, f64)>,
}

impl Rate {
    pub fn new(name: &'static str, successes: usize, total: usize) -> Self {
        let (rate, wilson) = if total == 0 {
            (None, None)
        } else {
            let (k, t) = (successes as f64, total as f64);
            (Some(k / t), Some(wilson(k, t)))
        };
        Rate { name, successes, total, rate, wilson }
    }
}

const Z95: f64 = 1.959_963_984_540_054;

fn wilson(k: f64, t: f64) -> (f64, f64) {
    let ph = k / t;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / t;
    let centre = (ph + z2 / (2.0 * t)) / denom;
    let half = Z95 * (ph * (1.0 - ph) / t + z2 / (4.0 * t * t)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub schema: &'static str,
    pub generator: &'static str,
    pub regime: &'static str,
    pub spec: RegimeSpec,
    pub p: ResolvedP,
    pub trials: usize,
    /// No trials were run.
    pub degenerate: bool,
    pub rates: Vec<Rate>,
    pub unknown: Vec<(&'static str, usize)>,
    /// Trials where a certificate was present but the direct check held.
    pub certificate_violations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRun {
    pub summary: Summary,
    pub records: Vec<TrialRecord>,
}

/// Runs every trial of `spec` in parallel; records come back in trial order.
pub fn run_trials(spec: &RegimeSpec) -> Result<TrialRun> {
    let resolved = spec.resolve_p()?;
    let records = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_one(spec, resolved.p, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialRun { summary: summarize(spec, resolved, &records), records })
}

pub fn summarize(spec: &RegimeSpec, p: ResolvedP, records: &[TrialRecord]) -> Summary {
    let tern = |f: &dyn Fn(&TrialRecord) -> Option<&Ternary>| {
        let known: Vec<bool> = records.iter().filter_map(|r| f(r).and_then(|t| t.known())).collect();
        let unknown = records.iter().filter(|r| matches!(f(r), Some(Ternary::Unknown(_)))).count();
        (known.iter().filter(|&&b| b).count(), known.len(), unknown)
    };
    let total = records.len();
    let (eh, eh_t, eh_u) = tern(&|r| r.empty_half.as_ref());
    let (tn, tn_t, tn_u) = tern(&|r| r.tau_eq_nu.as_ref());
    let (eg, eg_t, eg_u) = tern(&|r| r.eg_all.as_ref());
    let moves: Vec<&MoveStats> = records.iter().filter_map(|r| r.moves.as_ref()).collect();
    let rates = vec![
        Rate::new("is_forest", records.iter().filter(|r| r.is_forest).count(), total),
        Rate::new("p3_at_least_two", records.iter().filter(|r| r.p3_count >= 2).count(), total),
        Rate::new("empty_half", eh, eh_t),
        Rate::new("tau_eq_nu", tn, tn_t),
        Rate::new("eg_all_holds", eg, eg_t),
        Rate::new("certificate", records.iter().filter(|r| r.certificate.is_some()).count(), total),
        Rate::new(
            "moves_reach_canonical",
            moves.iter().filter(|m| m.stop == StopReason::Canonical).count(),
            moves.len(),
        ),
    ];
    Summary {
        schema: SCHEMA,
        generator: GENERATOR_NAME,
        regime: spec.regime(),
        spec: *spec,
        p,
        trials: total,
        degenerate: total == 0,
        rates,
        unknown: vec![("empty_half", eh_u), ("tau_eq_nu", tn_u), ("eg_all", eg_u)],
        certificate_violations: records.iter().filter(|r| r.certificate_confirmed == Some(false)).count(),
    }
}

fn csv_field(t: &Option<Ternary>, yes: &str, no: &str) -> String {
    match t {
        None => "skipped".into(),
        Some(Ternary::Yes) => yes.into(),
        Some(Ternary::No) => no.into(),
        Some(Ternary::Unknown(_)) => "unknown".into(),
    }
}

/// One header line and one row per record.
pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        let mut notes = r.notes.clone();
        for t in [&r.empty_half, &r.tau_eq_nu, &r.eg_all].into_iter().flatten() {
            if let Ternary::Unknown(why) = t {
                notes.push(why.clone());
            }
        }
        w.write_record([
            r.trial.to_string(),
            r.seed.to_string(),
            r.n.to_string(),
            r.p.to_string(),
            r.m.to_string(),
            r.nu.to_string(),
            r.is_forest.to_string(),
            r.p3_count.to_string(),
            csv_field(&r.empty_half, "yes", "no"),
            csv_field(&r.tau_eq_nu, "yes", "no"),
            csv_field(&r.eg_all, "holds", "fails"),
            notes.join("; "),
        ])?;
    }
    w.flush()
}
