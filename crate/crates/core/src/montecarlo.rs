//! Brute-force Monte Carlo evaluation of ∫∫ρ₁(|r − r′|)² over probe spheres.
//!
//! Points inside a sphere are drawn with radius R·u^{1/3} and a direction
//! from a normalized Gaussian triple. The on-site integrand has a 1/s²
//! singularity, so for that target the partner point is r + s with |s|
//! uniform on [0, 2R] and isotropic direction (density 1/(8πR s²)); samples
//! with r + s outside the sphere contribute zero. The weight then only
//! involves (s·ρ₁(s))², which is bounded.
//!
//! Randomness is ChaCha8 with one stream per chunk of [`CHUNK_SAMPLES`]
//! draws. Chunk statistics are merged in chunk order, so the estimate depends
//! only on (seed, samples) and not on the number of worker threads.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::correlation::RadialDensity;
use crate::error::{domain, Result};
use crate::integrals::{RegionSpec, Separation};

/// Draws per independent random stream.
pub const CHUNK_SAMPLES: u64 = 1 << 16;

/// Smallest accepted sample budget.
pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Both points in region A.
    OnSite,
    /// One point in A, one in B.
    Cross,
}

/// Streaming mean and variance (Welford), mergeable with Chan's update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.count < 2 { 0.0 } else { self.m2 / (self.count - 1) as f64 }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 { 0.0 } else { (self.variance() / self.count as f64).sqrt() }
    }
}

/// Mean and standard error of one estimated quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    fn from_stats(s: &RunningStats) -> Self {
        Self { value: s.mean(), std_error: s.std_error() }
    }

    /// |value − reference| in units of the standard error.
    pub fn deviation(&self, reference: f64) -> f64 {
        let d = (self.value - reference).abs();
        if d == 0.0 { 0.0 } else { d / self.std_error }
    }
}

/// The whole integral and its split ρ₁² = Y² + 2cY + c², all from the same draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub total: Estimate,
    pub singular_sq: Estimate,
    pub cross_term: Estimate,
    pub plateau_sq: Estimate,
    pub samples: u64,
}

impl McEstimate {
    pub fn estimate(&self) -> f64 {
        self.total.value
    }

    pub fn std_error(&self) -> f64 {
        self.total.std_error
    }
}

/// Uniform point in the ball of radius `radius` centred at the origin.
pub fn sample_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> [f64; 3] {
    let d = sample_direction(rng);
    let r = radius * rng.gen::<f64>().cbrt();
    [r * d[0], r * d[1], r * d[2]]
}

/// Uniform unit vector.
pub fn sample_direction<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-300 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Random stream for chunk `chunk` of a run seeded with `seed`.
pub fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn norm(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[derive(Default, Clone, Copy)]
struct ChunkStats {
    total: RunningStats,
    terms: [RunningStats; 3],
}

impl ChunkStats {
    /// Records weight·(a + b)² with a = singular part, b = plateau part.
    fn push(&mut self, weight: f64, a: f64, b: f64) {
        let (ss, cr, pp) = (weight * a * a, 2.0 * weight * a * b, weight * b * b);
        self.total.push(ss + cr + pp);
        self.terms[0].push(ss);
        self.terms[1].push(cr);
        self.terms[2].push(pp);
    }

    fn merge(&mut self, other: &ChunkStats) {
        self.total.merge(&other.total);
        for (a, b) in self.terms.iter_mut().zip(other.terms.iter()) {
            a.merge(b);
        }
    }
}

fn run_chunk<K: RadialDensity>(kernel: &K, region: &RegionSpec<f64>, target: Target, seed: u64, chunk: u64, draws: u64) -> ChunkStats {
    let mut rng = chunk_rng(seed, chunk);
    let radius = region.radius;
    let omega = region.omega();
    let c = kernel.plateau();
    let mut stats = ChunkStats::default();
    match (target, region.separation) {
        (Target::OnSite, _) => {
            let weight = omega * 8.0 * PI * radius;
            for _ in 0..draws {
                let p = sample_ball(&mut rng, radius);
                let s = 2.0 * radius * rng.gen::<f64>();
                let d = sample_direction(&mut rng);
                let q = [p[0] + s * d[0], p[1] + s * d[1], p[2] + s * d[2]];
                if norm(q) <= radius {
                    stats.push(weight, kernel.singular_times_r(s), c * s);
                } else {
                    stats.push(weight, 0.0, 0.0);
                }
            }
        }
        (Target::Cross, Separation::Finite(l)) => {
            let weight = omega * omega;
            for _ in 0..draws {
                let p = sample_ball(&mut rng, radius);
                let q = sample_ball(&mut rng, radius);
                let s = norm([q[0] + l - p[0], q[1] - p[1], q[2] - p[2]]);
                stats.push(weight, kernel.singular_times_r(s) / s, c);
            }
        }
        (Target::Cross, Separation::Infinite) => {
            let weight = omega * omega;
            for _ in 0..draws {
                stats.push(weight, 0.0, c);
            }
        }
    }
    stats
}

/// Monte Carlo estimate of the requested double integral of ρ₁².
pub fn mc_oracle<K: RadialDensity>(kernel: &K, region: &RegionSpec<f64>, target: Target, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples < MIN_SAMPLES {
        return Err(domain("samples", samples, "samples >= 10^4"));
    }
    let chunks = samples.div_ceil(CHUNK_SAMPLES);
    let parts: Vec<ChunkStats> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let draws = CHUNK_SAMPLES.min(samples - chunk * CHUNK_SAMPLES);
            run_chunk(kernel, region, target, seed, chunk, draws)
        })
        .collect();
    let mut all = ChunkStats::default();
    for p in &parts {
        all.merge(p);
    }
    Ok(McEstimate {
        total: Estimate::from_stats(&all.total),
        singular_sq: Estimate::from_stats(&all.terms[0]),
        cross_term: Estimate::from_stats(&all.terms[1]),
        plateau_sq: Estimate::from_stats(&all.terms[2]),
        samples,
    })
}
