use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Recorded in experiment metadata next to every seed.
pub const GENERATOR_NAME: &str = "chacha8/geometric-skip";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GnpParams {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GnpParams {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self> {
        let params = GnpParams { n, p, seed };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::input("G(n,p) needs n >= 1"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::input(format!("edge probability {} not in [0,1]", self.p)));
        }
        Ok(())
    }
}

/// Samples `G(n,p)`.
///
/// Pairs are visited in lexicographic order and the gap to the next present
/// pair is drawn from a geometric distribution, which is equivalent to an
/// independent coin per pair. The output depends only on `params`.
pub fn gen_gnp(params: &GnpParams) -> Result<Graph> {
    params.validate()?;
    let n = params.n;
    let total = (n as u64) * (n as u64 - 1) / 2;
    if params.p == 0.0 || total == 0 {
        return Ok(Graph::empty(n));
    }
    if params.p == 1.0 {
        let edges = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        return Ok(Graph::from_sorted_unique(n, edges));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let gap = Geometric::new(params.p).map_err(|e| Error::input(e.to_string()))?;
    let mut edges = Vec::with_capacity((total as f64 * params.p * 1.05) as usize + 16);

    let mut row = 0u64;
    let mut row_start = 0u64;
    let mut idx = 0u64;
    loop {
        idx = match idx.checked_add(gap.sample(&mut rng)) {
            Some(i) if i < total => i,
            _ => break,
        };
        while idx >= row_start + (n as u64 - 1 - row) {
            row_start += n as u64 - 1 - row;
            row += 1;
        }
        let col = row + 1 + (idx - row_start);
        edges.push((row as u32, col as u32));
        idx += 1;
    }
    Ok(Graph::from_sorted_unique(n, edges))
}
