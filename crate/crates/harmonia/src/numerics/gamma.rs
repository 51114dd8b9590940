//! Complex Gamma function via the Lanczos approximation (g = 7, nine
//! coefficients), with the reflection formula for Re z < 0.5.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance to the nearest nonpositive integer below which an argument is
/// treated as sitting exactly on a Gamma pole.
pub const POLE_TOL: f64 = 1e-12;

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// True if `z` is within `POLE_TOL` of a nonpositive integer.
pub fn is_nonpositive_integer(z: Complex64) -> bool {
    if z.im.abs() > POLE_TOL {
        return false;
    }
    let r = z.re.round();
    r <= 0.5 && (z.re - r).abs() <= POLE_TOL
}

/// Nearest integer to `z`, if `z` is within `POLE_TOL` of one.
pub fn nearest_integer(z: Complex64) -> Option<i64> {
    if z.im.abs() > POLE_TOL {
        return None;
    }
    let r = z.re.round();
    ((z.re - r).abs() <= POLE_TOL).then_some(r as i64)
}

fn ln_gamma_positive(z: Complex64) -> Complex64 {
    // Lanczos, valid for Re z >= 0.5.
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// Log-Gamma on the principal branch modulo 2*pi*i. Differences of values
/// returned here are only meaningful under `exp`, which is how the c-function
/// consumes them.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(z));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_positive(z))
    } else {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        Ok(pi.ln() - s.ln() - ln_gamma_positive(1.0 - z))
    }
}

/// Complex Gamma. Errors on arguments within `POLE_TOL` of a nonpositive
/// integer.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// Gamma of a real argument, for callers that know the result is real.
pub fn gamma_real(x: f64) -> Result<f64> {
    Ok(gamma(Complex64::new(x, 0.0))?.re)
}

// Bernoulli numbers B_2..B_14 for the digamma asymptotic series.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Digamma (logarithmic derivative of Gamma): reflection onto Re z >= 0.5,
/// recurrence up to Re z >= 8, then the Bernoulli asymptotic series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(z));
    }
    if z.re < 0.5 {
        // psi(z) = psi(1-z) - pi cot(pi z)
        let pi = std::f64::consts::PI;
        let piz = pi * z;
        return Ok(digamma(1.0 - z)? - pi * piz.cos() / piz.sin());
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 8.0 {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = inv2;
    for (i, &b) in BERNOULLI.iter().enumerate() {
        acc += b / (2.0 * (i + 1) as f64) * p;
        p *= inv2;
    }
    Ok(shift + z.ln() - 0.5 / z - acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert!((gamma(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma(c(5.0, 0.0)).unwrap() - 24.0).norm() < 1e-12);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - 1.772_453_850_905_52).abs() < 1e-13);
    }

    #[test]
    fn pole_detection() {
        assert!(matches!(
            gamma(c(0.0, 0.0)),
            Err(Error::PoleAtNonpositiveInteger(_))
        ));
        assert!(matches!(
            gamma(c(-3.0, 0.0)),
            Err(Error::PoleAtNonpositiveInteger(_))
        ));
        // Just off the pole is fine.
        assert!(gamma(c(-3.0 + 1e-6, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_on_random_grid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5ee1);
        for _ in 0..100 {
            let z = c(rng.gen_range(-19.0..19.0), rng.gen_range(-19.0..19.0));
            if is_nonpositive_integer(z) || is_nonpositive_integer(z + 1.0) {
                continue;
            }
            let lhs = gamma(z + 1.0).unwrap();
            let rhs = z * gamma(z).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1e-300),
                "recurrence failed at {z}"
            );
        }
    }

    #[test]
    fn reflection_on_random_grid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x0ef1);
        for _ in 0..100 {
            let z = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            if z.im.abs() < 0.05 && (z.re - z.re.round()).abs() < 0.05 {
                continue;
            }
            let lhs = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * (std::f64::consts::PI * z).sin()
                / std::f64::consts::PI;
            assert!((lhs - 1.0).norm() < 1e-10, "reflection failed at {z}");
        }
    }

    #[test]
    fn digamma_values_and_recurrence() {
        // psi(1) = -gamma_E
        let euler = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).unwrap().re + euler).abs() < 1e-12);
        // psi(1/2) = -gamma_E - 2 ln 2
        let v = digamma(c(0.5, 0.0)).unwrap().re;
        assert!((v + euler + 2.0 * 2.0_f64.ln()).abs() < 1e-12, "{v}");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xd16);
        for _ in 0..100 {
            let z = c(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            if z.im.abs() < 0.05 && (z.re - z.re.round()).abs() < 0.05 {
                continue;
            }
            let lhs = digamma(z + 1.0).unwrap();
            let rhs = digamma(z).unwrap() + 1.0 / z;
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()), "at {z}");
        }
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        let z = c(2.3, 1.1);
        let h = 1e-5;
        let fd = (ln_gamma(z + h).unwrap() - ln_gamma(z - h).unwrap()) / (2.0 * h);
        let d = digamma(z).unwrap();
        assert!((fd - d).norm() < 1e-8, "{fd} vs {d}");
    }
}
