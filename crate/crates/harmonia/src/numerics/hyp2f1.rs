//! Gauss hypergeometric function 2F1(a,b;c;z) for complex parameters and
//! real argument z < 1.
//!
//! Strategy: power series for |z| <= 0.8; for z in (0.8, 1) the lower
//! parameter is raised with the contiguous relation
//! `c(c+1) F(a,b;c;z) = c(c-a+1) F(a,b+1;c+2;z) + a[c-(c-b)z] F(a+1,b+1;c+2;z)`
//! until the Euler integral representation applies (Re c > Re b > 0), which
//! is then evaluated by adaptive quadrature; for z < -0.8 the Pfaff
//! transformation maps the argument into (0,1) first.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::gamma::{is_nonpositive_integer, ln_gamma, nearest_integer};
use crate::numerics::quad::{tanh_sinh_01, QuadratureSpec};

const SERIES_MAX_TERMS: usize = 2000;
const RAISE_MAX_DEPTH: usize = 24;

/// `base^expo` for positive real base.
pub(crate) fn cpow(base: f64, expo: Complex64) -> Complex64 {
    (expo * base.ln()).exp()
}

fn terminating_degree(a: Complex64, b: Complex64) -> Option<usize> {
    let da = nearest_integer(a).filter(|&m| m <= 0).map(|m| (-m) as usize);
    let db = nearest_integer(b).filter(|&m| m <= 0).map(|m| (-m) as usize);
    match (da, db) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) => Some(x),
        (None, Some(y)) => Some(y),
        (None, None) => None,
    }
}

/// Direct power series. Valid for |z| < 1; intended for |z| <= 0.8 where the
/// term ratio keeps the sum well conditioned. Public so that the dual-path
/// agreement checks can call it directly.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::CLowerParameterPole(c));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    if let Some(deg) = terminating_degree(a, b) {
        for k in 0..deg {
            let kf = k as f64;
            term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
            sum += term;
        }
        return Ok(sum);
    }
    let mut small = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::SeriesNonConvergence)
}

/// Euler integral representation, valid for Re c > Re b > 0 and z < 1,
/// evaluated by tanh-sinh quadrature so the endpoint singularities
/// `s^{b-1}` and `(1-s)^{c-b-1}` are handled without subdivision blowup.
/// Public for the dual-path agreement checks.
pub fn hyp2f1_integral(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let pref = (ln_gamma(c)? - ln_gamma(b)? - ln_gamma(c - b)?).exp();
    let spec = QuadratureSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-15,
        max_subdivisions: 6000,
        tail_cutoff: 40.0,
    };
    let integrand = move |s: f64, one_minus_s: f64, ln_jac: f64| {
        let ln_s = s.ln();
        let ln_1ms = one_minus_s.ln();
        // 1 - sz without cancellation when z is close to 1.
        let one_minus_sz = if z > 0.0 { (1.0 - z) + z * one_minus_s } else { 1.0 - s * z };
        ((b - 1.0) * ln_s + (c - b - 1.0) * ln_1ms - a * one_minus_sz.ln() + ln_jac).exp()
    };
    let q = tanh_sinh_01(integrand, &spec)?;
    Ok(pref * q.value)
}

fn hyp2f1_raised(a: Complex64, b: Complex64, c: Complex64, z: f64, depth: usize) -> Result<Complex64> {
    if terminating_degree(a, b).is_some() {
        return hyp2f1_series(a, b, c, z);
    }
    // Insist on comfortably positive exponents so the endpoint factors of
    // the Euler integral stay representable at the deepest tanh-sinh nodes.
    if b.re >= 0.5 && (c - b).re >= 0.5 {
        return hyp2f1_integral(a, b, c, z);
    }
    if depth >= RAISE_MAX_DEPTH {
        return Err(Error::SeriesNonConvergence);
    }
    // Contiguous relation: raises b by one and c by two, so both Re b and
    // Re(c-b) improve each step.
    let f1 = hyp2f1_raised(a, b + 1.0, c + 2.0, z, depth + 1)?;
    let f2 = hyp2f1_raised(a + 1.0, b + 1.0, c + 2.0, z, depth + 1)?;
    Ok((c * (c - a + 1.0) * f1 + a * (c - (c - b) * z) * f2) / (c * (c + 1.0)))
}

/// 2F1(a,b;c;z) for real z < 1.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    if is_nonpositive_integer(c) {
        return Err(Error::CLowerParameterPole(c));
    }
    if z == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if !(z < 1.0) {
        return Err(Error::NonFiniteValue(z));
    }
    if terminating_degree(a, b).is_some() {
        return hyp2f1_series(a, b, c, z);
    }
    if z.abs() <= 0.8 {
        return hyp2f1_series(a, b, c, z);
    }
    if z > 0.0 {
        return hyp2f1_raised(a, b, c, z, 0);
    }
    // z < -0.8: Pfaff transformation onto w in (0,1).
    let w = z / (z - 1.0);
    let pref = cpow(1.0 - z, -a);
    let bb = c - b;
    let inner = if w <= 0.8 {
        hyp2f1_series(a, bb, c, w)?
    } else {
        hyp2f1_raised(a, bb, c, w, 0)?
    };
    Ok(pref * inner)
}
