use eg_matchlab::bounds::{union_budget, BudgetQuery, BudgetTag};
use eg_matchlab::decomposition::{best_form1, best_form2, extremal, size, ExtremalMode, ExtremalOptions};
use eg_matchlab::harness::{density_audit, random_decomposition, run_trials, Checks, PRule, RegimeSpec};
use eg_matchlab::matching::{tutte_berge_witness, WitnessMode};
use eg_matchlab::moves::{improve, ImproveOptions, StopReason};
use eg_matchlab::{gen_gnp, matching_number, GnpParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn structural_witness_certifies_large_graphs() {
    for (n, p, seed) in [(300, 0.004, 1), (500, 0.01, 2), (2000, 0.001, 3)] {
        let g = gen_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
        let w = tutte_berge_witness(&g, WitnessMode::Structural).unwrap();
        assert!(w.certified);
        assert_eq!(w.deficiency, n as i64 - 2 * matching_number(&g) as i64);
    }
}

#[test]
fn forest_regime_is_mostly_forests() {
    let mut spec = RegimeSpec::new(1000, PRule::Forest { c: 0.1 }, 100, 11);
    spec.checks = Checks { eg_exact: false, tau: false, empty_half: false, ..Checks::default() };
    let run = run_trials(&spec).unwrap();
    let forest = &run.summary.rates.iter().find(|r| r.name == "is_forest").unwrap();
    assert!(forest.rate.unwrap() >= 0.95);
}

#[test]
fn dense_small_regime_reports_a_rate() {
    let spec = RegimeSpec::new(10, PRule::Custom { p: 0.9 }, 20, 4);
    let run = run_trials(&spec).unwrap();
    let eg = run.summary.rates.iter().find(|r| r.name == "eg_all_holds").unwrap();
    assert_eq!(eg.total, 20);
    let (lo, hi) = eg.wilson.unwrap();
    assert!(lo <= eg.rate.unwrap() && eg.rate.unwrap() <= hi);
}

#[test]
fn density_violations_within_budget() {
    let n = 2000;
    let p = 8.0 * (n as f64).ln() / n as f64;
    let g = gen_gnp(&GnpParams::new(n, p, 77).unwrap()).unwrap();
    let samples = 300;
    let audit = density_audit(&g, p, 0.5, samples, 9);
    for (event, tag) in [("dense_sets", BudgetTag::P24a), ("heavy_sets", BudgetTag::P24b)] {
        let b = union_budget(&BudgetQuery::new(tag, n as u64, p, 0.5).unwrap()).unwrap().value().min(1.0);
        let sigma = (b * (1.0 - b) / samples as f64).sqrt();
        let e = audit.events.iter().find(|e| e.event == event).unwrap();
        let rate = e.violations as f64 / e.checked as f64;
        assert!(rate <= b + 3.0 * sigma, "{event}: {rate} vs {b}");
    }
}

#[test]
fn improvement_reaches_a_canonical_shape() {
    let n = 20_000;
    let p = 8.0 * (n as f64).ln() / n as f64;
    let g = gen_gnp(&GnpParams::new(n, p, 5).unwrap()).unwrap();
    let nu = matching_number(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let trials = 20;
    let mut canonical = 0;
    for t in 0..trials {
        let k = 1 + (t * 997) % nu;
        let pi = random_decomposition(n, k, &mut rng).unwrap();
        let out = improve(&g, &pi, &ImproveOptions { max_steps: 100, seed: t as u64 }).unwrap();
        assert!(out.final_size >= out.initial_size);
        assert_eq!(out.final_pi.stats().r, pi.stats().r);
        canonical += usize::from(out.stop == StopReason::Canonical);
    }
    assert!(canonical * 100 >= 95 * trials, "{canonical}/{trials}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extremal_dominates_both_shapes(n in 3usize..10, p in 0.1f64..0.9, seed in 0u64..1000) {
        let g = gen_gnp(&GnpParams::new(n, p, seed).unwrap()).unwrap();
        let opts = ExtremalOptions::default();
        for k in 0..=matching_number(&g) {
            let r = extremal(&g, k, ExtremalMode::Exact, &opts).unwrap();
            let f2 = best_form2(&g, k).unwrap().size;
            let f1 = if 2 * k + 1 <= n { best_form1(&g, k).unwrap().size } else { 0 };
            prop_assert!(r.size >= f1.max(f2));
            let h = extremal(&g, k, ExtremalMode::Heuristic, &opts).unwrap();
            prop_assert!(h.size <= r.size);
        }
    }

    #[test]
    fn random_partitions_are_valid(n in 1usize..60, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen_gnp(&GnpParams::new(n, 0.2, seed).unwrap()).unwrap();
        let k = (seed as usize) % (n / 2 + 1);
        let pi = random_decomposition(n, k, &mut rng).unwrap();
        let st = pi.stats();
        prop_assert_eq!(st.r, n as i64 - 2 * k as i64);
        prop_assert_eq!(st.y.rem_euclid(2), 0);
        prop_assert!(size(&g, &pi).is_ok());
    }
}
