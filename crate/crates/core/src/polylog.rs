//! The Bose function g_{3/2}(z) = Σ_{l≥1} z^l / l^{3/2} on 0 ≤ z ≤ 1.
//!
//! Two evaluation routes are used. Below [`ROBINSON_SWITCH`] the defining
//! series is summed directly until a geometric remainder bound falls under
//! machine precision. Closer to z = 1 the series converges like l^{-3/2}, so
//! the Robinson expansion in α = −ln z is used instead:
//!
//! g_{3/2}(e^{−α}) = −2√(πα) + Σ_k (−α)^k ζ(3/2 − k) / k!
//!
//! It converges for α < 2π; on the fast-path interval α < 0.288.

use crate::error::{domain, Result};
use crate::scalar::{lit, CompensatedSum, Real};

/// ζ(3/2), i.e. g_{3/2}(1).
pub const ZETA_THREE_HALVES: f64 = 2.612_375_348_685_488_3;

/// Rounded value of ζ(3/2) used in the textbook T_C and λ relations.
pub const ROUNDED_ZETA_THREE_HALVES: f64 = 2.612;

/// Fugacity above which the Robinson expansion replaces the direct series.
pub const ROBINSON_SWITCH: f64 = 0.75;

/// (−1)^k ζ(3/2 − k) / k!, k = 0, 1, ...
const ROBINSON_COEFFS: [f64; 21] = [
    2.612_375_348_685_488_343_349,
    1.460_354_508_809_586_812_889,
    -0.103_943_112_488_677_283_008_7,
    0.004_247_533_648_305_505_991_59,
    3.548_720_324_104_304_392_649e-4,
    -3.700_842_779_566_193_298_779e-5,
    -4.293_985_065_577_547_006_7e-6,
    5.300_511_944_244_493_251_949e-7,
    6.812_420_484_962_472_119_105e-8,
    -9.008_596_705_798_666_285_597e-9,
    -1.216_940_275_850_112_932_207e-9,
    1.671_519_835_374_238_605_49e-10,
    2.326_948_902_455_193_079_969e-11,
    -3.275_559_753_380_427_451_848e-12,
    -4.654_251_296_129_394_471_342e-13,
    6.666_434_552_781_358_139_239e-14,
    9.615_068_088_964_928_119_006e-15,
    -1.395_245_321_344_655_614_368e-15,
    -2.035_540_739_427_872_225_508e-16,
    2.983_892_723_648_931_052_637e-17,
    4.392_830_879_790_224_577_826e-18,
];

fn check_domain<T: Real>(z: T) -> Result<()> {
    if !(z >= T::zero() && z <= T::one()) {
        return Err(domain("z", z, "0 <= z <= 1"));
    }
    Ok(())
}

/// g_{3/2}(z) for 0 ≤ z ≤ 1.
pub fn polylog_three_halves<T: Real>(z: T) -> Result<T> {
    check_domain(z)?;
    if z == T::zero() {
        return Ok(T::zero());
    }
    if z == T::one() {
        return Ok(lit(ZETA_THREE_HALVES));
    }
    if z < lit(ROBINSON_SWITCH) {
        polylog_three_halves_series(z)
    } else {
        polylog_three_halves_robinson(z)
    }
}

/// Direct summation of the defining series, stopped once the remainder
/// bound z^{L+1} / ((L+1)^{3/2} (1 − z)) drops below machine precision.
///
/// Converges for every z < 1 but needs O(1/(1 − z)) terms.
pub fn polylog_three_halves_series<T: Real>(z: T) -> Result<T> {
    check_domain(z)?;
    if z == T::one() {
        return Err(domain("z", z, "z < 1 for the direct series"));
    }
    let one_minus_z = T::one() - z;
    let mut acc = CompensatedSum::new();
    let mut power = z;
    let mut l = T::one();
    loop {
        acc.add(power / (l * l.sqrt()));
        let next = l + T::one();
        let remainder = power * z / (next * next.sqrt() * one_minus_z);
        if remainder <= T::epsilon() * lit(0.25) * acc.value() || power == T::zero() {
            break;
        }
        power = power * z;
        l = next;
    }
    Ok(acc.value())
}

/// Robinson expansion around z = 1. Accurate to machine precision for
/// z ≥ [`ROBINSON_SWITCH`]; usable (with degrading accuracy) down to z ≈ 0.3.
pub fn polylog_three_halves_robinson<T: Real>(z: T) -> Result<T> {
    check_domain(z)?;
    if z == T::zero() {
        return Err(domain("z", z, "z > 0 for the Robinson expansion"));
    }
    let alpha = -(z - T::one()).ln_1p();
    let mut acc = CompensatedSum::new();
    let mut power = T::one();
    for &c in ROBINSON_COEFFS.iter() {
        acc.add(lit::<T>(c) * power);
        power = power * alpha;
    }
    acc.add(-lit::<T>(2.0) * (T::PI() * alpha).sqrt());
    Ok(acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn endpoints() {
        assert_eq!(polylog_three_halves(0.0f64).unwrap(), 0.0);
        assert_eq!(polylog_three_halves(1.0f64).unwrap(), ZETA_THREE_HALVES);
        // rounded textbook constant
        assert!((polylog_three_halves(1.0f64).unwrap() - ROUNDED_ZETA_THREE_HALVES).abs() < 5e-4);
    }

    #[test]
    fn rejects_outside_unit_interval() {
        assert!(polylog_three_halves(-1e-3f64).is_err());
        assert!(polylog_three_halves(1.0 + 1e-12f64).is_err());
        assert!(polylog_three_halves(f64::NAN).is_err());
    }

    #[test]
    fn half_matches_reference() {
        // Li_{3/2}(1/2) to 30 digits: 0.624837020819913853633819312946
        assert_relative_eq!(
            polylog_three_halves(0.5f64).unwrap(),
            0.624_837_020_819_913_853_6,
            max_relative = 1e-15
        );
    }

    #[test]
    fn routes_agree_on_overlap() {
        for i in 0..=60 {
            let z = 0.5 + 0.499 * f64::from(i) / 60.0;
            let s = polylog_three_halves_series(z).unwrap();
            let r = polylog_three_halves_robinson(z).unwrap();
            assert!((s - r).abs() < 1e-13, "z={z}: series {s} robinson {r}");
        }
    }

    #[test]
    fn works_in_single_precision() {
        let g = polylog_three_halves(0.9f32).unwrap();
        let g64 = polylog_three_halves(0.9f64).unwrap();
        assert!((f64::from(g) - g64).abs() < 1e-5);
    }
}
