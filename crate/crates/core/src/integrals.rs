//! Sphere-sphere double integrals of ρ₁² entering the probe moments.
//!
//! With x = κR the on-site integral above T_C is
//!
//! I₁ᴬᴬ = (2π²z²/κ⁴λ⁴)·[1 − 2x² + (8/3)x³ − (1 + 2x)e^{−2x}]
//!
//! and the condensate cross term (the integral of 2·Yukawa over one sphere pair) is
//!
//! I′ = (128π²z/κ⁵λ²)·[4 − x² + x³/3 − (4 + 4x + x²)e^{−x}].
//!
//! Both brackets cancel through their leading powers (2x⁴ and x⁵/30), so
//! they are stored divided by x⁴ resp. x⁵ and evaluated from their Taylor
//! series for x < [`SERIES_SWITCH`].

use crate::correlation::CorrelationKernel;
use crate::error::{Error, Result};
use crate::scalar::{lit, CompensatedSum, Real};
use crate::thermo::ThermoState;

/// κR below which the Taylor series replace the closed brackets.
pub const SERIES_SWITCH: f64 = 1.0;

const MAX_SERIES_TERMS: usize = 200;

/// Distance between the two probe regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Separation<T> {
    Infinite,
    Finite(T),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec<T> {
    /// Sphere radius R [cm].
    pub radius: T,
    pub separation: Separation<T>,
}

impl<T: Real> RegionSpec<T> {
    pub fn new(radius: T, separation: Separation<T>) -> Result<Self> {
        if !(radius > T::zero() && radius.is_finite()) {
            return Err(crate::error::domain("R", radius, "R > 0"));
        }
        if let Separation::Finite(l) = separation {
            if !(l > lit::<T>(2.0) * radius) || !l.is_finite() {
                return Err(Error::Geometry(format!("L_AB = {l} must exceed 2R = {}", lit::<T>(2.0) * radius)));
            }
        }
        Ok(Self { radius, separation })
    }

    /// Ω = (4π/3) R³.
    pub fn omega(&self) -> T {
        lit::<T>(4.0) / lit(3.0) * T::PI() * self.radius.powi(3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralMethod {
    ClosedForm,
    MonteCarlo,
}

/// The two double integrals ∫_A∫_A ρ₁² and ∫_A∫_B ρ₁² (dimensionless).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSet<T> {
    pub i_aa: T,
    pub i_ab: T,
    pub method: IntegralMethod,
}

/// [1 − 2x² + (8/3)x³ − (1 + 2x)e^{−2x}] / x⁴ evaluated as written.
pub fn onsite_bracket_closed<T: Real>(x: T) -> T {
    let two = lit::<T>(2.0);
    let b = T::one() - two * x * x + lit::<T>(8.0) / lit(3.0) * x.powi(3) - (T::one() + two * x) * (-two * x).exp();
    b / x.powi(4)
}

/// Taylor series of [`onsite_bracket_closed`]: Σ_j (−2)^{j+4}(j+3)/(j+4)! x^j.
pub fn onsite_bracket_series<T: Real>(x: T) -> T {
    // term_j = (−2)^{j+4} (j+3)/(j+4)! x^j, built from g_j = (−2x)^j 16/(j+4)!
    let mut g = lit::<T>(16.0) / lit(24.0);
    let mut acc = CompensatedSum::new();
    for j in 0..MAX_SERIES_TERMS {
        let term = g * lit(j as f64 + 3.0);
        acc.add(term);
        if term.abs() <= T::epsilon() * lit(1e-3) * acc.value().abs() {
            break;
        }
        g = g * (-lit::<T>(2.0) * x) / lit(j as f64 + 5.0);
    }
    acc.value()
}

/// [4 − x² + x³/3 − (4 + 4x + x²)e^{−x}] / x⁵ evaluated as written.
pub fn condensate_bracket_closed<T: Real>(x: T) -> T {
    let four = lit::<T>(4.0);
    let c = four - x * x + x.powi(3) / lit(3.0) - (four + four * x + x * x) * (-x).exp();
    c / x.powi(5)
}

/// Taylor series of [`condensate_bracket_closed`]: Σ_{m≥5} −(−1)^m (m−1)(m−4)/m! x^{m−5}.
pub fn condensate_bracket_series<T: Real>(x: T) -> T {
    // h_m = (−x)^{m−5}/m!, term_m = (m−1)(m−4) h_m (the overall sign of m = 5 is +)
    let mut h = T::one() / lit(120.0);
    let mut acc = CompensatedSum::new();
    for m in 5..(5 + MAX_SERIES_TERMS) {
        let mf = m as f64;
        let term = h * lit((mf - 1.0) * (mf - 4.0));
        acc.add(term);
        if term.abs() <= T::epsilon() * lit(1e-3) * acc.value().abs() {
            break;
        }
        h = h * (-x) / lit(mf + 1.0);
    }
    acc.value()
}

pub fn onsite_bracket<T: Real>(x: T) -> T {
    if x < lit(SERIES_SWITCH) { onsite_bracket_series(x) } else { onsite_bracket_closed(x) }
}

pub fn condensate_bracket<T: Real>(x: T) -> T {
    if x < lit(SERIES_SWITCH) { condensate_bracket_series(x) } else { condensate_bracket_closed(x) }
}

/// I₁ᴬᴬ without condensate: (2π²z²R⁴/λ⁴)·B(κR)/(κR)⁴.
pub fn i1_aa_above<T: Real>(thermo: &ThermoState<T>, region: &RegionSpec<T>) -> T {
    let r = region.radius;
    let pi2 = T::PI() * T::PI();
    let prefactor = lit::<T>(2.0) * pi2 * thermo.z * thermo.z * (r / thermo.lambda).powi(4);
    prefactor * onsite_bracket(thermo.kappa * r)
}

/// I′ = (128π²zR⁵/λ²)·C(κR)/(κR)⁵ [cm³].
pub fn i1_prime<T: Real>(thermo: &ThermoState<T>, region: &RegionSpec<T>) -> T {
    let r = region.radius;
    let pi2 = T::PI() * T::PI();
    let prefactor = lit::<T>(128.0) * pi2 * thermo.z * r.powi(5) / (thermo.lambda * thermo.lambda);
    prefactor * condensate_bracket(thermo.kappa * r)
}

/// I₁ᴬᴬ = n₀²Ω² + I₁ᴬᴬ(T > T_C) + n₀I′.
pub fn i1_aa<T: Real>(thermo: &ThermoState<T>, region: &RegionSpec<T>) -> T {
    let above = i1_aa_above(thermo, region);
    if thermo.n0 > T::zero() {
        let c = thermo.n0 * region.omega();
        c * c + above + thermo.n0 * i1_prime(thermo, region)
    } else {
        above
    }
}

/// I₁ᴬᴮ: n₀²Ω² for infinitely separated regions, otherwise Ω²ρ₁(L_AB)²
/// with |r − r′| frozen at L_AB.
pub fn i1_ab<T: Real>(thermo: &ThermoState<T>, region: &RegionSpec<T>) -> Result<T> {
    let omega = region.omega();
    match region.separation {
        Separation::Infinite => Ok((thermo.n0 * omega).powi(2)),
        Separation::Finite(l) => {
            if !(l > lit::<T>(2.0) * region.radius) {
                return Err(Error::Geometry(format!("L_AB = {l} must exceed 2R")));
            }
            // the density n does not enter ρ₁ off the diagonal
            let kernel = CorrelationKernel::new(*thermo, T::one());
            Ok((omega * kernel.rho1_continuum(l)?).powi(2))
        }
    }
}

pub fn closed_form_integrals<T: Real>(thermo: &ThermoState<T>, region: &RegionSpec<T>) -> Result<IntegralSet<T>> {
    Ok(IntegralSet {
        i_aa: i1_aa(thermo, region),
        i_ab: i1_ab(thermo, region)?,
        method: IntegralMethod::ClosedForm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::{build_thermo_state, GasSpec, ZetaConstant};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn state(n: f64, t: f64) -> ThermoState<f64> {
        build_thermo_state(&GasSpec::new(n, 1e6, t).unwrap(), ZetaConstant::Rounded).unwrap()
    }

    #[test]
    fn bracket_leading_orders() {
        assert_relative_eq!(onsite_bracket_series(0.0f64), 2.0, max_relative = 1e-15);
        assert_relative_eq!(condensate_bracket_series(0.0f64), 1.0 / 30.0, max_relative = 1e-15);
        assert_relative_eq!(onsite_bracket_series(1e-3f64), 2.0 - 16.0 / 15.0 * 1e-3, max_relative = 1e-6);
        assert_relative_eq!(condensate_bracket_series(1e-3f64), 1.0 / 30.0 - 1e-3 / 72.0, max_relative = 1e-6);
    }

    #[test]
    fn branches_agree_where_closed_form_is_well_conditioned() {
        for x in [0.5f64, 0.8, 1.0, 1.5, 3.0] {
            assert_relative_eq!(onsite_bracket_series(x), onsite_bracket_closed(x), max_relative = 1e-13);
            assert_relative_eq!(condensate_bracket_series(x), condensate_bracket_closed(x), max_relative = 1e-11);
        }
    }

    #[test]
    fn small_kappa_r_limit() {
        let mut th = state(1e14, 1.3);
        th.kappa = 0.0;
        let region = RegionSpec::new(1e-4, Separation::Infinite).unwrap();
        let expected = 4.0 * PI * PI * th.z * th.z * (1e-4 / th.lambda).powi(4);
        assert_relative_eq!(i1_aa_above(&th, &region), expected, max_relative = 1e-15);
        let expected = 128.0 * PI * PI * th.z * 1e-20 / (30.0 * th.lambda * th.lambda);
        assert_relative_eq!(i1_prime(&th, &region), expected, max_relative = 1e-15);
    }

    #[test]
    fn vanishing_fugacity() {
        let mut th = state(1e14, 1.3);
        th.z = 0.0;
        let region = RegionSpec::new(1e-4, Separation::Infinite).unwrap();
        assert_eq!(i1_aa_above(&th, &region), 0.0);
        assert_eq!(i1_prime(&th, &region), 0.0);
    }

    #[test]
    fn above_tc_reduces_to_yukawa_term() {
        let th = state(1e14, 1.6);
        let region = RegionSpec::new(1e-4, Separation::Infinite).unwrap();
        assert_eq!(i1_aa(&th, &region), i1_aa_above(&th, &region));
        assert_eq!(i1_ab(&th, &region).unwrap(), 0.0);
    }

    #[test]
    fn below_tc_cross_term_is_condensate() {
        let th = state(1e14, 0.5);
        let region = RegionSpec::new(1e-4, Separation::Infinite).unwrap();
        let omega = region.omega();
        assert_eq!(i1_ab(&th, &region).unwrap(), (th.n0 * omega).powi(2));
        // condensate dominates the on-site integral
        let aa = i1_aa(&th, &region);
        assert!(aa >= (th.n0 * omega).powi(2));
        assert!(aa >= i1_ab(&th, &region).unwrap());
    }

    #[test]
    fn finite_separation() {
        let th = state(1e14, 1.5);
        let l = 10.0 * th.lambda;
        let region = RegionSpec::new(1e-5, Separation::Finite(l)).unwrap();
        let omega = region.omega();
        let rho = th.z / th.lambda.powi(2) * (-th.kappa * l / 2.0).exp() / l;
        assert_relative_eq!(i1_ab(&th, &region).unwrap(), (omega * rho).powi(2), max_relative = 1e-14);
        assert!(matches!(RegionSpec::new(1e-4, Separation::Finite(1.9e-4)), Err(Error::Geometry(_))));
    }

    #[test]
    fn continuity_at_tc() {
        let region = RegionSpec::new(1e-4, Separation::Infinite).unwrap();
        let mut th = state(1e14, 1.0);
        let above = i1_aa(&th, &region);
        // same coherence parameters, condensate switched on with vanishing weight
        th.n0 = 1e14 * (1.0 - (1.0 - 1e-12f64).powf(1.5));
        let below = i1_aa(&th, &region);
        assert!(((below - above) / above).abs() < 1e-6);
    }

    #[test]
    fn decreases_with_temperature() {
        let region = RegionSpec::new(1e-4, Separation::Infinite).unwrap();
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let v = i1_aa_above(&state(1e14, 1.02 + 0.05 * f64::from(i)), &region);
            assert!(v < prev);
            prev = v;
        }
    }

    #[test]
    fn generic_scalar() {
        let r = RegionSpec::new(1e-4f32, Separation::Infinite).unwrap();
        let th = build_thermo_state(&GasSpec::new(1e14f32, 1e6, 1.5).unwrap(), ZetaConstant::Rounded).unwrap();
        let v32 = i1_aa(&th, &r);
        let v64 = i1_aa(&state(1e14, 1.5), &RegionSpec::new(1e-4, Separation::Infinite).unwrap());
        assert!(((f64::from(v32) - v64) / v64).abs() < 1e-4);
    }
}
