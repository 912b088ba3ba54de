//! Grand-canonical ideal Bose gas in reduced units.
//!
//! Everything is parameterized by the density n [cm⁻³], the total particle
//! number N and the reduced temperature t = T/T_C. Neither the particle mass
//! nor ħ is needed: the thermal wavelength follows from the T_C relation as
//! λ = (ζ/n)^{1/3} t^{−1/2}.

use crate::error::{domain, Error, Result};
use crate::polylog::{polylog_three_halves, ROUNDED_ZETA_THREE_HALVES, ZETA_THREE_HALVES};
use crate::scalar::{lit, Real};

/// Which value of ζ(3/2) enters the λ and T_C relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZetaConstant {
    /// The rounded 2.612 of the textbook relations.
    #[default]
    Rounded,
    /// Full double precision ζ(3/2).
    Exact,
}

impl ZetaConstant {
    pub fn value<T: Real>(self) -> T {
        match self {
            ZetaConstant::Rounded => lit(ROUNDED_ZETA_THREE_HALVES),
            ZetaConstant::Exact => lit(ZETA_THREE_HALVES),
        }
    }
}

/// Physical inputs of one gas state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasSpec<T> {
    /// Particle density [cm⁻³].
    pub n: T,
    /// Total particle number.
    pub n_total: T,
    /// Reduced temperature T/T_C.
    pub t: T,
}

impl<T: Real> GasSpec<T> {
    pub fn new(n: T, n_total: T, t: T) -> Result<Self> {
        let spec = Self { n, n_total, t };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.n > T::zero() && self.n.is_finite()) {
            return Err(domain("n", self.n, "n > 0"));
        }
        if !(self.n_total >= T::one() && self.n_total.is_finite()) {
            return Err(domain("n_total", self.n_total, "N >= 1"));
        }
        if !(self.t > T::zero() && self.t.is_finite()) {
            return Err(domain("t", self.t, "t > 0"));
        }
        Ok(())
    }
}

/// Derived thermodynamic quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoState<T> {
    pub t: T,
    /// Fugacity, strictly inside (0, 1).
    pub z: T,
    /// Thermal wavelength [cm].
    pub lambda: T,
    /// Condensate density [cm⁻³].
    pub n0: T,
    /// Condensate occupation number.
    pub n0_count: T,
    /// Decay rate of ρ₁² [cm⁻¹]: κ = 2√(4π(1 − z))/λ.
    pub kappa: T,
}

impl<T: Real> ThermoState<T> {
    /// Whether the state carries a condensate.
    pub fn is_condensed(&self) -> bool {
        self.n0 > T::zero()
    }
}

/// Fugacity together with the condensate occupation it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fugacity<T> {
    pub z: T,
    pub n0_count: T,
}

/// κ = 2√(4π(1 − z))/λ.
pub fn screening_parameter<T: Real>(z: T, lambda: T) -> T {
    lit::<T>(2.0) * (lit::<T>(4.0) * T::PI() * (T::one() - z)).sqrt() / lambda
}

/// Condensate occupation N·(1 − t^{3/2}) for t < 1, zero otherwise.
pub fn condensate_count<T: Real>(t: T, n_total: T) -> T {
    if t < T::one() {
        (n_total * (T::one() - t.powf(lit(1.5)))).max(T::zero())
    } else {
        T::zero()
    }
}

/// Solves for the fugacity at reduced temperature `t`.
///
/// Condensed phase (N₀ > 0): z = N₀/(N₀ + 1), the μ = −k_BT ln(1 + 1/N₀)
/// correction. Otherwise z solves g_{3/2}(z) = ζ t^{−3/2} by bisection,
/// run until the bracket collapses to neighbouring floats.
pub fn solve_fugacity<T: Real>(t: T, n_total: T, zeta: ZetaConstant) -> Result<Fugacity<T>> {
    if !(t > T::zero() && t.is_finite()) {
        return Err(domain("t", t, "t > 0"));
    }
    if !(n_total >= T::one() && n_total.is_finite()) {
        return Err(domain("n_total", n_total, "N >= 1"));
    }
    let n0_count = condensate_count(t, n_total);
    if n0_count > T::zero() {
        let z = n0_count / (n0_count + T::one());
        return Ok(Fugacity { z, n0_count });
    }

    let target = zeta.value::<T>() * t.powf(lit(-1.5));
    let below_one = T::one() - T::epsilon() * lit(0.5);
    if target >= polylog_three_halves(below_one)? {
        return Ok(Fugacity { z: below_one, n0_count: T::zero() });
    }
    let (mut lo, mut hi) = (T::zero(), below_one);
    for _ in 0..4096 {
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            return Ok(Fugacity { z: mid, n0_count: T::zero() });
        }
        let g = polylog_three_halves(mid)?;
        if !g.is_finite() {
            return Err(Error::NoConvergence(format!("g_3/2 not finite at z = {mid}")));
        }
        if g < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(format!("bracket [{lo}, {hi}] did not collapse")))
}

/// λ = (ζ/n)^{1/3} t^{−1/2} [cm].
pub fn thermal_wavelength<T: Real>(n: T, t: T, zeta: ZetaConstant) -> T {
    (zeta.value::<T>() / n).cbrt() / t.sqrt()
}

/// n₀ = n(1 − t^{3/2}) below T_C and 0 at or above it.
pub fn ground_state_density<T: Real>(n: T, t: T) -> T {
    if t < T::one() {
        (n * (T::one() - t.powf(lit(1.5)))).max(T::zero())
    } else {
        T::zero()
    }
}

pub fn build_thermo_state<T: Real>(spec: &GasSpec<T>, zeta: ZetaConstant) -> Result<ThermoState<T>> {
    spec.validate()?;
    let fug = solve_fugacity(spec.t, spec.n_total, zeta)?;
    let lambda = thermal_wavelength(spec.n, spec.t, zeta);
    let n0 = if fug.n0_count > T::zero() { ground_state_density(spec.n, spec.t) } else { T::zero() };
    Ok(ThermoState {
        t: spec.t,
        z: fug.z,
        lambda,
        n0,
        n0_count: fug.n0_count,
        kappa: screening_parameter(fug.z, lambda),
    })
}
