//! One-body density matrix and pair distribution of the ideal gas.
//!
//! The continuum form is the low-momentum Yukawa kernel plus the
//! condensate plateau,
//!
//! ρ₁(r) = (z/λ²) e^{−κr/2} / r + n₀,
//!
//! which diverges at r = 0. The diagonal ρ₁(r, r) is the exact density n
//! and is exposed separately as [`CorrelationKernel::diagonal_density`].

use crate::error::{domain, Result};
use crate::scalar::{lit, Real};
use crate::thermo::ThermoState;

/// Radially symmetric ρ₁ split into a 1/r-singular part and a constant.
///
/// ρ₁(r) = `singular_times_r(r)` / r + `plateau()`.
pub trait RadialDensity: Sync {
    /// r·(singular part of ρ₁), finite at r = 0.
    fn singular_times_r(&self, r: f64) -> f64;
    /// Long-distance limit of ρ₁.
    fn plateau(&self) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationKernel<T> {
    pub thermo: ThermoState<T>,
    /// Particle density [cm⁻³].
    pub n: T,
}

impl<T: Real> CorrelationKernel<T> {
    pub fn new(thermo: ThermoState<T>, n: T) -> Self {
        Self { thermo, n }
    }

    /// Inverse decay length of ρ₁ itself, κ/2 = √(4π(1 − z))/λ.
    pub fn decay_rate(&self) -> T {
        self.thermo.kappa * lit(0.5)
    }

    /// r·Yukawa(r) = (z/λ²) e^{−κr/2}.
    pub fn yukawa_times_r(&self, r: T) -> T {
        let th = &self.thermo;
        th.z / (th.lambda * th.lambda) * (-self.decay_rate() * r).exp()
    }

    /// Yukawa part of ρ₁ at separation r > 0.
    pub fn yukawa(&self, r: T) -> Result<T> {
        if !(r > T::zero()) {
            return Err(domain("r", r, "r > 0 (continuum rho1 diverges at r = 0)"));
        }
        Ok(self.yukawa_times_r(r) / r)
    }

    /// Continuum ρ₁(r) [cm⁻³]; n₀ is nonzero only below T_C.
    pub fn rho1_continuum(&self, r: T) -> Result<T> {
        Ok(self.yukawa(r)? + self.thermo.n0)
    }

    /// lim_{r→∞} ρ₁(r).
    pub fn rho1_at_infinity(&self) -> T {
        self.thermo.n0
    }

    /// ρ₁(r, r) = n.
    pub fn diagonal_density(&self) -> T {
        self.n
    }

    /// g(r) = 1 + (ρ₁(r)/n)².
    pub fn pair_distribution(&self, r: T) -> Result<T> {
        let x = self.rho1_continuum(r)? / self.n;
        Ok(T::one() + x * x)
    }

    pub fn pair_distribution_at_infinity(&self) -> T {
        let x = self.rho1_at_infinity() / self.n;
        T::one() + x * x
    }
}

impl RadialDensity for CorrelationKernel<f64> {
    fn singular_times_r(&self, r: f64) -> f64 {
        self.yukawa_times_r(r)
    }

    fn plateau(&self) -> f64 {
        self.thermo.n0
    }
}

/// A constant ρ₁ = c, the trivial integrand check for the Monte Carlo oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantDensity(pub f64);

impl RadialDensity for ConstantDensity {
    fn singular_times_r(&self, _r: f64) -> f64 {
        0.0
    }

    fn plateau(&self) -> f64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::{build_thermo_state, GasSpec, ZetaConstant};

    fn kernel(n: f64, t: f64) -> CorrelationKernel<f64> {
        let spec = GasSpec::new(n, 1e6, t).unwrap();
        CorrelationKernel::new(build_thermo_state(&spec, ZetaConstant::Rounded).unwrap(), n)
    }

    #[test]
    fn diverges_at_origin() {
        let k = kernel(1e14, 1.5);
        assert!(k.rho1_continuum(0.0).is_err());
        assert!(k.pair_distribution(-1.0).is_err());
        assert_eq!(k.diagonal_density(), 1e14);
    }

    #[test]
    fn long_distance_limits() {
        let above = kernel(1e14, 1.5);
        let r = 1e3 * above.thermo.lambda;
        assert!(above.rho1_continuum(r).unwrap() <= 1e-12 * above.n);
        assert!((above.pair_distribution(r).unwrap() - 1.0).abs() < 1e-24);

        // below T_C the Yukawa range is ~ λ√N₀, so go a thousand decay lengths out
        let below = kernel(1e14, 0.5);
        let r = 1e3 / below.decay_rate();
        let rho = below.rho1_continuum(r).unwrap();
        assert!((rho - below.thermo.n0).abs() <= 1e-12 * below.n);
        assert!(below.thermo.n0 > 0.0);
        let g_inf = 1.0 + (below.thermo.n0 / below.n).powi(2);
        assert!((below.pair_distribution(r).unwrap() - g_inf).abs() < 1e-12);
        assert_eq!(below.pair_distribution_at_infinity(), g_inf);
    }

    #[test]
    fn pair_distribution_identity() {
        for t in [0.3, 0.9, 1.2, 2.5] {
            let k = kernel(5e13, t);
            for m in [0.1, 1.0, 7.0] {
                let r = m * k.thermo.lambda;
                let rho = k.rho1_continuum(r).unwrap();
                let g = k.pair_distribution(r).unwrap();
                assert!(g >= 1.0);
                assert!(((g - 1.0) - (rho / k.n).powi(2)).abs() <= 1e-15 * g);
            }
        }
    }

    #[test]
    fn yukawa_strictly_decreasing() {
        let k = kernel(1e14, 1.1);
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let y = k.yukawa(f64::from(i) * 0.05 * k.thermo.lambda).unwrap();
            assert!(y < prev);
            prev = y;
        }
    }
}
