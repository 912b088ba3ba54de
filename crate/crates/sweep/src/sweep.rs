//! Grid driver: evaluates every (t, n) point on a worker pool.

use std::fmt;

use rayon::prelude::*;

use crate::config::SweepConfig;
use crate::record::{evaluate_point, PointParams, ResultRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct PointError {
    pub t: f64,
    pub n: f64,
    pub source: bec_entangle::Error,
}

impl fmt::Display for PointError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "point t = {}, n = {:e}: {}", self.t, self.n, self.source)
    }
}

impl std::error::Error for PointError {}

/// SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Oracle seed of grid point `index`.
pub fn point_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

/// (t, n) pairs in t-major order.
pub fn grid(cfg: &SweepConfig) -> Vec<(f64, f64)> {
    cfg.temperatures()
        .into_iter()
        .flat_map(|t| cfg.densities.iter().map(move |&n| (t, n)))
        .collect()
}

/// Evaluates explicit points with the sweep's parameters and seeding.
pub fn run_points(cfg: &SweepConfig, points: &[(f64, f64)]) -> Result<Vec<ResultRecord>, PointError> {
    let params = PointParams::from_config(cfg);
    let eval = || {
        points
            .par_iter()
            .enumerate()
            .map(|(i, &(t, n))| evaluate_point(&params, t, n, point_seed(cfg.seed, i)).map_err(|source| PointError { t, n, source }))
            .collect::<Result<Vec<_>, _>>()
    };
    match cfg.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(w).build().expect("thread pool");
            pool.install(eval)
        }
        None => eval(),
    }
}

/// One record per grid point, t-major then density order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ResultRecord>, PointError> {
    run_points(cfg, &grid(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate_config;

    fn small(workers: usize) -> SweepConfig {
        let text = format!(
            "gamma = 2.4e-5\nradius = 1e-4\nn_total = 1e6\nt_steps = 4\nn_steps = 3\noracle_samples = 10000\nworkers = {workers}\n"
        );
        validate_config(&text).unwrap()
    }

    #[test]
    fn order_is_t_major() {
        let cfg = small(2);
        let recs = run_sweep(&cfg).unwrap();
        assert_eq!(recs.len(), 12);
        assert_eq!((recs[0].t, recs[0].n), (0.2, 1e13));
        assert_eq!((recs[1].t, recs[1].n), (0.2, cfg.densities[1]));
        assert_eq!((recs[11].t, recs[11].n), (2.0, 2e14));
    }

    #[test]
    fn worker_count_does_not_change_results() {
        assert_eq!(run_sweep(&small(1)).unwrap(), run_sweep(&small(3)).unwrap());
    }

    #[test]
    fn seeds_differ_per_point() {
        let s: std::collections::HashSet<u64> = (0..1000).map(|i| point_seed(7, i)).collect();
        assert_eq!(s.len(), 1000);
    }
}
