use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::trial_seed;
use crate::graph::{edges_between_unchecked, edges_within_unchecked, Graph, VertexSet};

/// One density statement applied to concrete sets.
#[derive(Clone, Debug)]
pub enum DensityEvent {
    /// `|E(X)| = (1 ± ε) C(|X|,2) p` for `|X| > εn`.
    Dense(VertexSet),
    /// `|E(X)| ≤ 300 C(|X|,2) p` for `|X| > ln n/(150p)`.
    Heavy(VertexSet),
    /// `|E(X)| ≤ |X| ln n/3` for `|X| ≤ ln n/(150p)`.
    Sparse(VertexSet),
    /// `|∇(Y,Z)| = (1 ± ε)|Y||Z|p` for disjoint `|Y| > εn`, `|Z| > n/√ln n`.
    Between(VertexSet, VertexSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EventCheck {
    /// The sets meet the size condition of the statement.
    pub applicable: bool,
    pub holds: bool,
}

/// Checks one event against reference probability `p`.
pub fn check_density_event(g: &Graph, p: f64, eps: f64, ev: &DensityEvent) -> EventCheck {
    let n = g.n() as f64;
    let ln_n = n.ln();
    let pairs = |w: f64| w * (w - 1.0) / 2.0;
    match ev {
        DensityEvent::Dense(x) => {
            let w = x.len() as f64;
            let e = edges_within_unchecked(g, x) as f64;
            let c = pairs(w) * p;
            EventCheck { applicable: w > eps * n, holds: (1.0 - eps) * c < e && e < (1.0 + eps) * c }
        }
        DensityEvent::Heavy(x) => {
            let w = x.len() as f64;
            let e = edges_within_unchecked(g, x) as f64;
            EventCheck { applicable: w > ln_n / (150.0 * p), holds: e <= 300.0 * pairs(w) * p }
        }
        DensityEvent::Sparse(x) => {
            let w = x.len() as f64;
            let e = edges_within_unchecked(g, x) as f64;
            EventCheck { applicable: w <= ln_n / (150.0 * p), holds: e <= w * ln_n / 3.0 }
        }
        DensityEvent::Between(y, z) => {
            let (a, b) = (y.len() as f64, z.len() as f64);
            let e = edges_between_unchecked(g, y, z) as f64;
            let c = a * b * p;
            EventCheck {
                applicable: y.is_disjoint(z) && a > eps * n && b > n / ln_n.sqrt(),
                holds: (1.0 - eps) * c < e && e < (1.0 + eps) * c,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventAudit {
    pub event: &'static str,
    pub checked: usize,
    pub violations: usize,
    /// Why no sets were drawn, when the size range is empty.
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityAudit {
    pub n: usize,
    pub p: f64,
    pub epsilon: f64,
    pub samples: usize,
    pub seed: u64,
    pub events: Vec<EventAudit>,
}

impl DensityAudit {
    pub fn violations(&self) -> usize {
        self.events.iter().map(|e| e.violations).sum()
    }
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, size: usize) -> VertexSet {
    VertexSet::from_iter_in(n, sample(rng, n, size).into_iter())
}

/// Draws `samples` random sets (or pairs) in the size range of each statement
/// and counts those on which it fails. Set sizes are uniform over the range;
/// sample `i` of event `e` uses its own seeded stream.
pub fn density_audit(g: &Graph, p: f64, eps: f64, samples: usize, seed: u64) -> DensityAudit {
    let n = g.n();
    let nf = n as f64;
    let ln_n = nf.ln();
    let small_cut = ln_n / (150.0 * p);

    // Inclusive size ranges; empty when lo > hi.
    let above = |x: f64| (x.floor() + 1.0).max(0.0) as usize;
    let dense = (above(eps * nf), n);
    let heavy = (above(small_cut).max(1), n);
    let sparse = (1, (small_cut.floor().max(0.0) as usize).min(n));
    let y_range = (above(eps * nf), n);
    let z_lo = above(nf / ln_n.sqrt());

    let run = |tag: u64, name: &'static str, range: (usize, usize), pair: bool| -> EventAudit {
        let feasible = range.0 <= range.1 && (!pair || range.0 + z_lo <= n);
        if !feasible || samples == 0 {
            return EventAudit {
                event: name,
                checked: 0,
                violations: 0,
                skipped: (!feasible).then(|| "size range is empty".to_string()),
            };
        }
        let violations = (0..samples)
            .into_par_iter()
            .filter(|&i| {
                let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed ^ tag, i as u64));
                let ev = if pair {
                    // |Y| first, then |Z| in what is left.
                    let a = rng.gen_range(range.0..=n - z_lo);
                    let b = rng.gen_range(z_lo..=n - a);
                    let idx = sample(&mut rng, n, a + b).into_vec();
                    let y = VertexSet::from_iter_in(n, idx[..a].iter().copied());
                    let z = VertexSet::from_iter_in(n, idx[a..].iter().copied());
                    DensityEvent::Between(y, z)
                } else {
                    let w = rng.gen_range(range.0..=range.1);
                    let x = random_set(&mut rng, n, w);
                    match tag {
                        1 => DensityEvent::Dense(x),
                        2 => DensityEvent::Heavy(x),
                        _ => DensityEvent::Sparse(x),
                    }
                };
                !check_density_event(g, p, eps, &ev).holds
            })
            .count();
        EventAudit { event: name, checked: samples, violations, skipped: None }
    };

    let events = vec![
        run(1, "dense_sets", dense, false),
        run(2, "heavy_sets", heavy, false),
        run(3, "sparse_sets", sparse, false),
        run(4, "crossing_pairs", y_range, true),
    ];
    DensityAudit { n, p, epsilon: eps, samples, seed, events }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::complete;
    use crate::graph::{gen_gnp, GnpParams};

    #[test]
    fn complete_graph_is_exactly_dense() {
        let g = complete(40);
        let x = VertexSet::from_iter_in(40, 0..30);
        let c = check_density_event(&g, 1.0, 1e-9, &DensityEvent::Dense(x));
        assert!(c.applicable && c.holds);
        let a = density_audit(&g, 1.0, 0.01, 50, 1);
        assert_eq!(a.events[0].violations, 0);
    }

    #[test]
    fn empty_graph_sparse_event_holds() {
        let g = Graph::empty(500);
        let x = VertexSet::from_iter_in(500, 0..3);
        let c = check_density_event(&g, 0.01, 0.5, &DensityEvent::Sparse(x));
        assert!(c.applicable && c.holds);
        let a = density_audit(&g, 0.01, 0.5, 40, 2);
        assert_eq!(a.events[2].violations, 0);
        assert_eq!(a.events[2].checked, 40);
    }

    #[test]
    fn dense_random_graph_has_no_violations() {
        let n = 2000;
        let p = 8.0 * (n as f64).ln() / n as f64;
        let g = gen_gnp(&GnpParams::new(n, p, 11).unwrap()).unwrap();
        let a = density_audit(&g, p, 0.5, 200, 5);
        assert_eq!(a.events[0].violations, 0);
        assert_eq!(a.events[1].violations, 0);
        // n/1200 < 2 leaves only singletons.
        assert_eq!((a.events[2].checked, a.events[2].violations), (200, 0));
        assert_eq!(a, density_audit(&g, p, 0.5, 200, 5));
    }

    #[test]
    fn between_requires_disjoint_sets() {
        let g = complete(20);
        let y = VertexSet::from_iter_in(20, 0..12);
        let z = VertexSet::from_iter_in(20, 8..20);
        let c = check_density_event(&g, 1.0, 0.5, &DensityEvent::Between(y, z));
        assert!(!c.applicable);
    }
}
