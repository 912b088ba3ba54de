//! Finite periodic box mode sum for ρ₁, the unapproximated plane-wave
//! expansion ρ₁(r) = (1/V) Σ_k ⟨a_k† a_k⟩ e^{ik·r} with Bose occupations.
//!
//! Modes are the integer triples |l_i| ≤ l_max, k = 2πl/L. In reduced units
//! βE_k = λ²k²/(4π), so no particle mass is needed. The lattice and the
//! spectrum are inversion symmetric, which turns the sum into
//! Σ N(l²) cos(k_x x) cos(k_y y) cos(k_z z).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Result};
use crate::scalar::CompensatedSum;
use crate::thermo::{GasSpec, ThermoState};

/// Largest admissible occupation at the cutoff, relative to the k = 0 mode.
pub const CUTOFF_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSpec {
    /// Box edge L [cm].
    pub edge: f64,
    /// Mode cutoff per axis.
    pub l_max: u32,
}

impl BoxSpec {
    pub fn new(edge: f64, l_max: u32) -> Result<Self> {
        if !(edge > 0.0 && edge.is_finite()) {
            return Err(domain("L", edge, "L > 0"));
        }
        if l_max < 1 {
            return Err(domain("l_max", l_max, "l_max >= 1"));
        }
        Ok(Self { edge, l_max })
    }

    /// Box holding the gas: L = (N/n)^{1/3}.
    pub fn for_gas(spec: &GasSpec<f64>, l_max: u32) -> Result<Self> {
        Self::new((spec.n_total / spec.n).cbrt(), l_max)
    }

    /// Smallest cutoff meeting [`CUTOFF_TOLERANCE`] for this state.
    pub fn with_auto_cutoff(spec: &GasSpec<f64>, thermo: &ThermoState<f64>) -> Result<Self> {
        let edge = (spec.n_total / spec.n).cbrt();
        let alpha = fugacity_exponent(thermo.z);
        let top = occupation(0.0, alpha);
        let mut l = 1u32;
        while occupation(axis_energy(thermo.lambda, edge, l), alpha) >= CUTOFF_TOLERANCE * top {
            l += 1;
        }
        Self::new(edge, l)
    }

    pub fn volume(&self) -> f64 {
        self.edge.powi(3)
    }

    pub fn wavenumber(&self, l: i64) -> f64 {
        2.0 * PI * l as f64 / self.edge
    }
}

/// βE_k = λ²k²/(4π).
pub fn reduced_energy(lambda: f64, k_squared: f64) -> f64 {
    lambda * lambda * k_squared / (4.0 * PI)
}

/// α = −ln z = −βμ.
pub fn fugacity_exponent(z: f64) -> f64 {
    -(z - 1.0).ln_1p()
}

/// Bose occupation 1/(z⁻¹ e^{βE} − 1).
pub fn occupation(beta_e: f64, alpha: f64) -> f64 {
    1.0 / (beta_e + alpha).exp_m1()
}

fn axis_energy(lambda: f64, edge: f64, l: u32) -> f64 {
    // λ²(2πl/L)²/(4π) = π λ² l² / L²
    PI * (lambda * f64::from(l) / edge).powi(2)
}

/// Result of a mode-sum evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSum {
    /// ρ₁(r) [cm⁻³].
    pub value: f64,
    /// Occupation at the axis cutoff divided by the k = 0 occupation.
    pub cutoff_ratio: f64,
}

impl ModeSum {
    /// False when the cutoff is too low for the requested accuracy.
    pub fn cutoff_ok(&self) -> bool {
        self.cutoff_ratio < CUTOFF_TOLERANCE
    }
}

fn check_separation(bx: &BoxSpec, r: [f64; 3]) -> Result<()> {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if !(norm < 0.5 * bx.edge) {
        return Err(domain("|r|", norm, "|r| < L/2"));
    }
    Ok(())
}

fn occupation_table(thermo: &ThermoState<f64>, bx: &BoxSpec) -> Vec<f64> {
    let lm = u64::from(bx.l_max);
    let alpha = fugacity_exponent(thermo.z);
    let scale = PI * (thermo.lambda / bx.edge).powi(2);
    (0..=3 * lm * lm).map(|l2| occupation(scale * l2 as f64, alpha)).collect()
}

/// ρ₁(r) by explicit summation over the cubic mode lattice.
///
/// Deterministic for any thread count: per-plane partial sums are
/// compensated and combined in lattice order.
pub fn rho1_mode_sum(thermo: &ThermoState<f64>, bx: &BoxSpec, r: [f64; 3]) -> Result<ModeSum> {
    check_separation(bx, r)?;
    let occ = occupation_table(thermo, bx);
    let lm = i64::from(bx.l_max);
    let cosines = |x: f64| -> Vec<f64> { (-lm..=lm).map(|l| (bx.wavenumber(l) * x).cos()).collect() };
    let (cx, cy, cz) = (cosines(r[0]), cosines(r[1]), cosines(r[2]));
    let squares: Vec<usize> = (-lm..=lm).map(|l| (l * l) as usize).collect();

    let planes: Vec<f64> = (0..squares.len())
        .into_par_iter()
        .map(|ix| {
            let mut plane = CompensatedSum::new();
            for iy in 0..squares.len() {
                let base = squares[ix] + squares[iy];
                let mut row = CompensatedSum::new();
                for iz in 0..squares.len() {
                    row.add(occ[base + squares[iz]] * cz[iz]);
                }
                plane.add(row.value() * cy[iy]);
            }
            plane.value() * cx[ix]
        })
        .collect();
    let total: CompensatedSum<f64> = planes.into_iter().collect();

    let cutoff_ratio = occ[squares[0]] / occ[0];
    Ok(ModeSum { value: total.value() / bx.volume(), cutoff_ratio })
}

/// Reference evaluation with the full complex exponential e^{ik·r} per mode.
/// O(l_max³) transcendental calls; meant for checking [`rho1_mode_sum`].
pub fn rho1_mode_sum_reference(thermo: &ThermoState<f64>, bx: &BoxSpec, r: [f64; 3]) -> Result<Complex64> {
    check_separation(bx, r)?;
    let lm = i64::from(bx.l_max);
    let alpha = fugacity_exponent(thermo.z);
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    for lx in -lm..=lm {
        for ly in -lm..=lm {
            for lz in -lm..=lm {
                let k = [bx.wavenumber(lx), bx.wavenumber(ly), bx.wavenumber(lz)];
                let k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                let n_k = occupation(reduced_energy(thermo.lambda, k2), alpha);
                let phase = Complex64::new(0.0, k[0] * r[0] + k[1] * r[1] + k[2] * r[2]).exp();
                re.add(n_k * phase.re);
                im.add(n_k * phase.im);
            }
        }
    }
    Ok(Complex64::new(re.value(), im.value()) / bx.volume())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::{build_thermo_state, ZetaConstant};

    fn setup(t: f64) -> (GasSpec<f64>, ThermoState<f64>) {
        let spec = GasSpec::new(1e14, 1e6, t).unwrap();
        (spec, build_thermo_state(&spec, ZetaConstant::Rounded).unwrap())
    }

    #[test]
    fn factorized_sum_matches_reference() {
        let (spec, th) = setup(1.3);
        let bx = BoxSpec::for_gas(&spec, 12).unwrap();
        let r = [0.7 * th.lambda, -0.4 * th.lambda, 1.1 * th.lambda];
        let fast = rho1_mode_sum(&th, &bx, r).unwrap().value;
        let slow = rho1_mode_sum_reference(&th, &bx, r).unwrap();
        assert!((fast - slow.re).abs() <= 1e-12 * fast.abs());
        assert!(slow.im.abs() <= 1e-12 * fast.abs());
        let mirrored = rho1_mode_sum_reference(&th, &bx, [-r[0], -r[1], -r[2]]).unwrap();
        assert!((mirrored.re - slow.re).abs() <= 1e-12 * fast.abs());
    }

    #[test]
    fn rejects_far_separation() {
        let (spec, th) = setup(1.3);
        let bx = BoxSpec::for_gas(&spec, 4).unwrap();
        assert!(rho1_mode_sum(&th, &bx, [0.5 * bx.edge, 0.0, 0.0]).is_err());
        assert!(BoxSpec::new(1.0, 0).is_err());
    }

    #[test]
    fn low_cutoff_is_flagged() {
        let (spec, th) = setup(1.3);
        let bx = BoxSpec::for_gas(&spec, 20).unwrap();
        assert!(!rho1_mode_sum(&th, &bx, [0.0; 3]).unwrap().cutoff_ok());
        let auto = BoxSpec::with_auto_cutoff(&spec, &th).unwrap();
        assert!(auto.l_max > 20);
    }

    #[test]
    fn reduced_energy_matches_axis_form() {
        let (spec, th) = setup(0.8);
        let bx = BoxSpec::for_gas(&spec, 10).unwrap();
        for l in 1..10u32 {
            let k = bx.wavenumber(i64::from(l));
            let a = reduced_energy(th.lambda, k * k);
            let b = axis_energy(th.lambda, bx.edge, l);
            assert!((a - b).abs() <= 1e-14 * b);
        }
    }

    #[test]
    fn ground_mode_holds_condensate() {
        let (_, th) = setup(0.5);
        let alpha = fugacity_exponent(th.z);
        let n0 = occupation(0.0, alpha);
        assert!((n0 - th.n0_count).abs() <= 1e-6 * th.n0_count);
    }
}
