//! Two-probe density matrix, vacuum projection and negativity.
//!
//! Basis order is |00⟩, |10⟩, |01⟩, |11⟩ with the first label belonging to
//! probe A, so the matrix index of |ab⟩ is a + 2b.

use num_complex::Complex;
use num_traits::{Num, ToPrimitive};

use crate::correlation::CorrelationKernel;
use crate::error::{domain, Error, Result};
use crate::integrals::{IntegralSet, RegionSpec};
use crate::linalg::{self, Matrix};
use crate::scalar::{lit, Real};

/// Γ·n·Ω above which the |11⟩ truncation is flagged.
pub const SMALLNESS_WARN: f64 = 0.1;
/// Γ·n·Ω at which the truncated model is rejected.
pub const SMALLNESS_LIMIT: f64 = 1.0;

/// Gas expectation values ⟨Q_A⟩, ⟨Q_A²⟩, ⟨Q_AQ_B⟩ for equal regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments<T> {
    pub qa: T,
    pub qa2: T,
    pub qaqb: T,
}

impl<T: Real> Moments<T> {
    /// ⟨Q_A²⟩ − ⟨Q_A⟩²; equals nΩ + I₁ᴬᴬ for moments built from a gas.
    pub fn variance(&self) -> T {
        self.qa2 - self.qa * self.qa
    }
}

/// ⟨Q_A⟩ = nΩ, ⟨Q_A²⟩ = nΩ + n²Ω² + I₁ᴬᴬ, ⟨Q_AQ_B⟩ = n²Ω² + I₁ᴬᴮ.
pub fn compute_moments<T: Real>(kernel: &CorrelationKernel<T>, region: &RegionSpec<T>, integrals: &IntegralSet<T>) -> Moments<T> {
    let mean = kernel.diagonal_density() * region.omega();
    Moments {
        qa: mean,
        qa2: mean + mean * mean + integrals.i_aa,
        qaqb: mean * mean + integrals.i_ab,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig<T> {
    pub region: RegionSpec<T>,
    /// Integrated coupling Γ.
    pub gamma: T,
}

/// Outcome of the Γ·n·Ω validity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smallness<T> {
    Ok(T),
    Warn(T),
}

impl<T: Real> Smallness<T> {
    pub fn value(&self) -> T {
        match *self {
            Smallness::Ok(v) | Smallness::Warn(v) => v,
        }
    }
}

/// Classifies Γ⟨Q_A⟩ = Γ·n·Ω; errors at or above [`SMALLNESS_LIMIT`].
pub fn check_smallness<T: Real>(gamma: T, qa: T) -> Result<Smallness<T>> {
    if !(gamma >= T::zero()) {
        return Err(domain("gamma", gamma, "gamma >= 0"));
    }
    let v = gamma * qa;
    if !(v < lit(SMALLNESS_LIMIT)) {
        Err(Error::Smallness(v.to_f64().unwrap_or(f64::NAN)))
    } else if v >= lit(SMALLNESS_WARN) {
        Ok(Smallness::Warn(v))
    } else {
        Ok(Smallness::Ok(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeState<T> {
    pub matrix: Matrix<T, 4>,
    pub normalized: bool,
}

impl<T: Real> ProbeState<T> {
    pub fn from_matrix(matrix: Matrix<T, 4>) -> Self {
        let tr = linalg::trace(&matrix).re;
        let normalized = (tr - T::one()).abs() <= lit::<T>(64.0) * T::epsilon();
        Self { matrix, normalized }
    }

    pub fn trace(&self) -> T {
        linalg::trace(&self.matrix).re
    }

    pub fn eigenvalues(&self) -> [T; 4] {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    pub fn hermiticity_defect(&self) -> T {
        linalg::hermiticity_defect(&self.matrix)
    }

    /// Hermitian to `tol` and smallest eigenvalue ≥ −tol·trace.
    pub fn is_physical(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol && self.eigenvalues()[0] >= -tol * self.trace().abs()
    }

    /// Entry ⟨ab|ρ|cd⟩ with a, c labelling probe A.
    pub fn element(&self, a: usize, b: usize, c: usize, d: usize) -> Complex<T> {
        self.matrix[a + 2 * b][c + 2 * d]
    }
}

/// A state together with any validity warning raised while building it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuiltState<T> {
    pub state: ProbeState<T>,
    pub smallness: Smallness<T>,
}

/// Probe state after the short interaction, |11⟩ row and column dropped,
/// normalized by 1 + Γ²(⟨Q_A²⟩ + ⟨Q_B²⟩).
pub fn build_probe_state<T: Real>(m: &Moments<T>, gamma: T) -> Result<BuiltState<T>> {
    let smallness = check_smallness(gamma, m.qa)?;
    let zero = Complex::new(T::zero(), T::zero());
    let re = |v: T| Complex::new(v, T::zero());
    let im = |v: T| Complex::new(T::zero(), v);
    let g2 = gamma * gamma;
    let norm = T::one() + g2 * (m.qa2 + m.qa2);
    let mut rho = [[zero; 4]; 4];
    rho[0][0] = re(T::one());
    rho[0][1] = im(gamma * m.qa);
    rho[0][2] = im(gamma * m.qa);
    rho[1][0] = im(-gamma * m.qa);
    rho[2][0] = im(-gamma * m.qa);
    rho[1][1] = re(g2 * m.qa2);
    rho[2][2] = re(g2 * m.qa2);
    rho[1][2] = re(g2 * m.qaqb);
    rho[2][1] = re(g2 * m.qaqb);
    for row in rho.iter_mut() {
        for v in row.iter_mut() {
            *v = *v / norm;
        }
    }
    Ok(BuiltState { state: ProbeState { matrix: rho, normalized: true }, smallness })
}

/// Applies P = 1 − |00⟩⟨00|; returns the renormalized state and tr(PρP),
/// the probability that the probes interacted with the gas.
pub fn project_out_vacuum<T: Real>(rho: &ProbeState<T>) -> Result<(ProbeState<T>, T)> {
    let mut m = rho.matrix;
    let zero = Complex::new(T::zero(), T::zero());
    for k in 0..4 {
        m[0][k] = zero;
        m[k][0] = zero;
    }
    let p = linalg::trace(&m).re;
    if !(p > T::zero()) {
        return Err(Error::DegenerateProjection);
    }
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v = *v / p;
        }
    }
    Ok((ProbeState { matrix: m, normalized: true }, p))
}

/// ⟨ab|ρ^{T_B}|cd⟩ = ⟨ad|ρ|cb⟩.
pub fn partial_transpose_b<T: Real>(m: &Matrix<T, 4>) -> Matrix<T, 4> {
    let mut out = *m;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[a + 2 * b][c + 2 * d] = m[a + 2 * d][c + 2 * b];
                }
            }
        }
    }
    out
}

/// Negativity of a vacuum-projected state from its entries:
/// |⟨10|ρ′|01⟩| / (⟨10|ρ′|10⟩ + ⟨01|ρ′|01⟩).
pub fn negativity<T: Real>(rho_prime: &ProbeState<T>) -> T {
    let m = &rho_prime.matrix;
    m[1][2].norm() / (m[1][1].re + m[2][2].re)
}

/// Negativity as |sum of negative eigenvalues| of the partial transpose.
pub fn negativity_spectral<T: Real>(rho: &ProbeState<T>) -> T {
    let ev = linalg::hermitian_eigenvalues(&partial_transpose_b(&rho.matrix));
    -ev.iter().fold(T::zero(), |s, &e| if e < T::zero() { s + e } else { s })
}

/// ⟨Q_AQ_B⟩ / (⟨Q_A²⟩ + ⟨Q_B²⟩).
pub fn negativity_from_moments<T: Real>(m: &Moments<T>) -> T {
    m.qaqb / (m.qa2 + m.qa2)
}

/// 2Γ²⟨Q_A²⟩ / (1 + 2Γ²⟨Q_A²⟩).
pub fn interaction_probability<T: Real>(m: &Moments<T>, gamma: T) -> T {
    let w = lit::<T>(2.0) * gamma * gamma * m.qa2;
    w / (T::one() + w)
}

/// E = Γ²⟨Q_AQ_B⟩ / (1 + 2Γ²⟨Q_A²⟩), the negativity weighted by the
/// interaction probability.
pub fn weighted_entanglement<T: Real>(m: &Moments<T>, gamma: T) -> T {
    let g2 = gamma * gamma;
    g2 * m.qaqb / (T::one() + lit::<T>(2.0) * g2 * m.qa2)
}

/// E_F = ε²(1 − ε)²/(1 − ε²) for 0 ≤ ε < 1. Works for any ordered field,
/// including exact rationals.
pub fn false_entanglement<T>(epsilon: T) -> Result<T>
where
    T: Num + Copy + PartialOrd + ToPrimitive,
{
    if !(epsilon >= T::zero() && epsilon < T::one()) {
        return Err(domain("epsilon", epsilon, "0 <= epsilon < 1"));
    }
    let one = T::one();
    let a = epsilon * (one - epsilon);
    Ok(a * a / (one - epsilon * epsilon))
}

/// ε = Γ·n·Ω, the product-state parameter the above-T_C plateau is compared to.
pub fn baseline_epsilon<T: Real>(gamma: T, n: T, omega: T) -> T {
    gamma * n * omega
}
