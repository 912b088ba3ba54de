//! Oracle suite: closed-form integrals against Monte Carlo, continuum ρ₁
//! against the finite-box mode sum.

use bec_entangle::modesum::BoxSpec;
use bec_entangle::montecarlo::Estimate;
use bec_entangle::{
    build_thermo_state, closed_form_integrals, mc_oracle, rho1_mode_sum, CorrelationKernel, Error, GasSpec, RegionSpec,
    Separation, Target, ZetaConstant,
};
use rayon::prelude::*;

use crate::sweep::point_seed;

pub const VALIDATION_TEMPERATURES: [f64; 5] = [0.5, 0.8, 1.2, 1.5, 2.0];
/// Capped at 10¹⁴ so that a separation of 10λ still clears 2R = 2×10⁻⁴ cm
/// at every validation temperature.
pub const VALIDATION_DENSITIES: [f64; 5] = [1e13, 2.5e13, 5e13, 7.5e13, 1e14];
/// Finite separation used by the cross check, in thermal wavelengths.
pub const FINITE_SEPARATION_LAMBDAS: f64 = 10.0;
/// Sphere radius for the finite-separation check as a fraction of the
/// separation. The closed form assumes ρ₁ is constant across both spheres,
/// so its bias grows like (R/L)²; at this ratio it stays below the Monte
/// Carlo noise of 10⁶ draws.
pub const FINITE_RADIUS_RATIO: f64 = 1e-5;
pub const ORACLE_SIGMA: f64 = 3.0;

pub const RHO1_TEMPERATURES: [f64; 2] = [1.2, 1.5];
pub const RHO1_RADII_LAMBDAS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
pub const RHO1_DENSITY: f64 = 1e14;
pub const RHO1_TOLERANCE: f64 = 0.01;
/// Below-T_C temperature and distance (fraction of the box edge) of the
/// condensate plateau check.
pub const PLATEAU_TEMPERATURE: f64 = 0.5;
pub const PLATEAU_DISTANCE: f64 = 0.45;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    OnSite,
    CrossInfinite,
    CrossFinite,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::OnSite => "i_aa",
            Quantity::CrossInfinite => "i_ab(inf)",
            Quantity::CrossFinite => "i_ab(10 lambda)",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralCheck {
    pub t: f64,
    pub n: f64,
    pub quantity: Quantity,
    pub radius: f64,
    pub separation: Separation<f64>,
    pub closed: f64,
    pub mc: Estimate,
}

impl IntegralCheck {
    /// |closed − MC| in standard errors; exact agreement counts as zero
    /// even when the estimator has no variance.
    pub fn deviation(&self) -> f64 {
        if (self.mc.value - self.closed).abs() <= 1e-12 * self.closed.abs() {
            0.0
        } else {
            self.mc.deviation(self.closed)
        }
    }

    pub fn passed(&self) -> bool {
        self.deviation() <= ORACLE_SIGMA
    }
}

fn check(
    t: f64,
    n: f64,
    n_total: f64,
    zeta: ZetaConstant,
    quantity: Quantity,
    radius: f64,
    samples: u64,
    seed: u64,
) -> Result<IntegralCheck, Error> {
    let thermo = build_thermo_state(&GasSpec::new(n, n_total, t)?, zeta)?;
    let separation = match quantity {
        Quantity::CrossFinite => Separation::Finite(FINITE_SEPARATION_LAMBDAS * thermo.lambda),
        _ => Separation::Infinite,
    };
    let radius = match quantity {
        Quantity::CrossFinite if radius <= 0.0 => FINITE_RADIUS_RATIO * FINITE_SEPARATION_LAMBDAS * thermo.lambda,
        _ => radius,
    };
    let region = RegionSpec::new(radius, separation)?;
    let closed = closed_form_integrals(&thermo, &region)?;
    let kernel = CorrelationKernel::new(thermo, n);
    let (target, value) = match quantity {
        Quantity::OnSite => (Target::OnSite, closed.i_aa),
        _ => (Target::Cross, closed.i_ab),
    };
    let mc = mc_oracle(&kernel, &region, target, samples, seed)?;
    Ok(IntegralCheck { t, n, quantity, radius, separation, closed: value, mc: mc.total })
}

/// Runs the 5×5 grid for all three integrals. The on-site and infinite
/// cross checks use `radius`; the finite cross check uses
/// [`FINITE_RADIUS_RATIO`] × 10λ.
pub fn integral_checks(radius: f64, n_total: f64, zeta: ZetaConstant, samples: u64, seed: u64) -> Result<Vec<IntegralCheck>, Error> {
    let mut cells = Vec::new();
    for &t in &VALIDATION_TEMPERATURES {
        for &n in &VALIDATION_DENSITIES {
            cells.push((t, n, Quantity::OnSite, radius));
            cells.push((t, n, Quantity::CrossInfinite, radius));
            cells.push((t, n, Quantity::CrossFinite, 0.0));
        }
    }
    cells
        .par_iter()
        .enumerate()
        .map(|(i, &(t, n, q, r))| check(t, n, n_total, zeta, q, r, samples, point_seed(seed, i)))
        .collect()
}

/// 10λ cross check at the probe radius itself, where 10λ is only slightly
/// larger than 2R and the constant-distance form is not expected to hold.
pub fn finite_separation_at_radius(radius: f64, n_total: f64, zeta: ZetaConstant, samples: u64, seed: u64) -> Result<Vec<IntegralCheck>, Error> {
    let cells: Vec<(f64, f64)> = VALIDATION_TEMPERATURES.iter().flat_map(|&t| VALIDATION_DENSITIES.iter().map(move |&n| (t, n))).collect();
    cells
        .par_iter()
        .enumerate()
        .map(|(i, &(t, n))| check(t, n, n_total, zeta, Quantity::CrossFinite, radius, samples, point_seed(seed ^ 0xf1, i)))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rho1Check {
    pub t: f64,
    pub n: f64,
    /// Distance from the origin along x [cm].
    pub r: f64,
    pub lambda: f64,
    /// Continuum value, or n₀ for the plateau check.
    pub reference: f64,
    pub mode_sum: f64,
    pub cutoff_ok: bool,
}

impl Rho1Check {
    pub fn relative_error(&self) -> f64 {
        ((self.mode_sum - self.reference) / self.reference).abs()
    }

    pub fn passed(&self) -> bool {
        self.cutoff_ok && self.relative_error() < RHO1_TOLERANCE
    }
}

/// Continuum ρ₁ against the mode sum above T_C on [0.5λ, 3λ], and the
/// mode-sum plateau against n₀ below T_C.
pub fn rho1_checks(n: f64, n_total: f64, zeta: ZetaConstant) -> Result<(Vec<Rho1Check>, Rho1Check), Error> {
    let mut checks = Vec::new();
    for &t in &RHO1_TEMPERATURES {
        let spec = GasSpec::new(n, n_total, t)?;
        let thermo = build_thermo_state(&spec, zeta)?;
        let kernel = CorrelationKernel::new(thermo, n);
        let bx = BoxSpec::with_auto_cutoff(&spec, &thermo)?;
        for &k in &RHO1_RADII_LAMBDAS {
            let r = k * thermo.lambda;
            let sum = rho1_mode_sum(&thermo, &bx, [r, 0.0, 0.0])?;
            checks.push(Rho1Check {
                t,
                n,
                r,
                lambda: thermo.lambda,
                reference: kernel.rho1_continuum(r)?,
                mode_sum: sum.value,
                cutoff_ok: sum.cutoff_ok(),
            });
        }
    }
    let spec = GasSpec::new(n, n_total, PLATEAU_TEMPERATURE)?;
    let thermo = build_thermo_state(&spec, zeta)?;
    let bx = BoxSpec::with_auto_cutoff(&spec, &thermo)?;
    let r = PLATEAU_DISTANCE * bx.edge;
    let sum = rho1_mode_sum(&thermo, &bx, [r, 0.0, 0.0])?;
    let plateau = Rho1Check {
        t: PLATEAU_TEMPERATURE,
        n,
        r,
        lambda: thermo.lambda,
        reference: thermo.n0,
        mode_sum: sum.value,
        cutoff_ok: sum.cutoff_ok(),
    };
    Ok((checks, plateau))
}
