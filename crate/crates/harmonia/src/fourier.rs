//! Spherical Fourier transforms of radial profiles: the principal-series
//! transform against `phi`, the discrete-series transform against `psi_k`,
//! closed-form identity checks for the transform of `T_lambda f`, and the
//! spectral decay functional `delta_infinity`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bkernel::t_transform;
use crate::eigenfn::{delta_density, index_sets, phi, psi};
use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_halfline, integrate_segment, QuadratureSpec};
use crate::profile::RadialProfile;

/// Integral of `f(a_s) g(s) Delta(s) ds` over the half line, where `g` has
/// certified growth rate `growth` (i.e. `|g| <~ e^{growth * s}`).
fn weighted_integral<G: Fn(f64) -> Complex64>(
    f: &RadialProfile,
    g: G,
    growth: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    // Skip the (possibly expensive) eigenfunction wherever f vanishes
    // exactly, e.g. outside the support bump of a compact profile.
    let integrand = |s: f64| {
        let fv = f.value(s);
        if fv.re == 0.0 && fv.im == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        fv * g(s) * delta_density(s)
    };
    if f.is_compactly_supported() {
        return Ok(integrate_segment(integrand, 0.0, f.support(), spec)?.value);
    }
    let rate = f.decay_rate().ok_or(Error::DivergentIntegral)?;
    let hint = rate - 2.0 - growth;
    if hint <= 0.0 {
        return Err(Error::DivergentIntegral);
    }
    integrate_halfline(integrand, hint, spec)
        .map(|r| r.value)
        .map_err(|e| match e {
            Error::TailNotDecaying { .. } => Error::DivergentIntegral,
            other => other,
        })
}

/// Principal spherical transform `fhat_H(lambda) = int_0^inf f phi Delta`,
/// even in `lambda`.
pub fn principal_transform(
    f: &RadialProfile,
    n: i32,
    lambda: Complex64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    weighted_integral(
        f,
        |s| phi(n, lambda, s).expect("phi in transform"),
        lambda.re.abs() - 1.0,
        spec,
    )
}

/// Discrete spherical transform `fhat_B(k) = int_0^inf f psi_k Delta` for
/// `k` in the discrete index set Gamma_n.
pub fn discrete_transform(
    f: &RadialProfile,
    n: i32,
    k: i32,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if !index_sets(n).gamma.contains(&k) {
        return Err(Error::IndexNotInGamma { n, k });
    }
    weighted_integral(
        f,
        |s| psi(n, k, s).expect("psi in transform"),
        -(k.abs() as f64) - 1.0,
        spec,
    )
}

/// The dual point against which the transform of `T_lambda f` is compared.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualPoint {
    /// Imaginary-axis principal point `i xi`.
    Principal(f64),
    /// Discrete index `k` in Gamma_n.
    Discrete(i32),
}

/// Residual of the closed-form transform identities for `T_lambda f`:
/// principal branch `(fhat(lambda) - fhat(i xi)) / (lambda^2 + xi^2)`,
/// discrete branch `(fhat(lambda) - fhat_B(k)) / (lambda^2 - k^2)`,
/// each compared against direct quadrature of the transform of
/// `t_transform(f, ...)`.
pub fn t_transform_hat_check(
    f: &RadialProfile,
    n: i32,
    lambda: Complex64,
    at: DualPoint,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if lambda.re <= 0.0 || lambda.re >= 1.0 {
        return Err(Error::StripViolation(lambda));
    }
    let fhat_lambda = principal_transform(f, n, lambda, spec)?;
    // T_lambda f inherits the support of f, so its transform is a segment
    // integral with the same bound.
    let support = f.support();
    if !support.is_finite() {
        return Err(Error::DivergentIntegral);
    }
    let tf = |t: f64| t_transform(f, n, lambda, t, spec).expect("t_transform");
    let (lhs, closed) = match at {
        DualPoint::Principal(xi) => {
            let ixi = Complex64::new(0.0, xi);
            let lhs = integrate_segment(
                |t| tf(t) * phi(n, ixi, t).expect("phi") * delta_density(t),
                0.0,
                support,
                spec,
            )?
            .value;
            let fhat_ixi = principal_transform(f, n, ixi, spec)?;
            (lhs, (fhat_lambda - fhat_ixi) / (lambda * lambda + xi * xi))
        }
        DualPoint::Discrete(k) => {
            if !index_sets(n).gamma.contains(&k) {
                return Err(Error::IndexNotInGamma { n, k });
            }
            let lhs = integrate_segment(
                |t| tf(t) * psi(n, k, t).expect("psi") * delta_density(t),
                0.0,
                support,
                spec,
            )?
            .value;
            let fhat_k = discrete_transform(f, n, k, spec)?;
            let kk = (k * k) as f64;
            (lhs, (fhat_lambda - fhat_k) / (lambda * lambda - kk))
        }
    };
    Ok((lhs - closed).norm())
}

/// Which imaginary half-axis `delta_infinity` inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignBranch {
    Plus,
    Minus,
}

/// Window estimator of the spectral decay functional
/// `delta_inf^{+-}(F) = -limsup_{t->inf} e^{-(pi/2) t} log |F(+-i t)|`:
/// the negated maximum of the weighted log-modulus over `t` in
/// `[T - window, T]` on a fixed grid. This estimates a limsup from finitely
/// many samples; it is exact only when the weighted log-modulus is
/// eventually monotone, which holds for the calibration examples.
pub fn delta_infinity<F: Fn(Complex64) -> Complex64>(
    f: F,
    height: f64,
    sign: SignBranch,
    window: f64,
) -> Result<f64> {
    if !(window > 0.0) || height < window || !height.is_finite() {
        return Err(Error::EmptyWindow);
    }
    let steps = 128;
    let mut best = f64::NEG_INFINITY;
    for j in 0..=steps {
        let t = (height - window) + window * j as f64 / steps as f64;
        let it = match sign {
            SignBranch::Plus => Complex64::new(0.0, t),
            SignBranch::Minus => Complex64::new(0.0, -t),
        };
        let v = f(it).norm();
        let weighted = (-std::f64::consts::FRAC_PI_2 * t).exp() * v.ln();
        if weighted > best {
            best = weighted;
        }
    }
    if !best.is_finite() {
        return Err(Error::NonFiniteValue(best));
    }
    Ok(-best)
}

/// A sampled spherical transform: principal values on a spectral grid and
/// discrete values on Gamma_n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub n: i32,
    /// Pairs (lambda, value) with lambda = (re, im).
    pub principal: Vec<((f64, f64), (f64, f64))>,
    /// Pairs (k, value) with k in Gamma_n.
    pub discrete: Vec<(i32, (f64, f64))>,
}

impl TransformRecord {
    /// Sample the transforms of `f`: principal part on the given lambda
    /// grid, discrete part on all of Gamma_n.
    pub fn sample(
        f: &RadialProfile,
        n: i32,
        grid: &[Complex64],
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        let mut principal = Vec::with_capacity(grid.len());
        for &l in grid {
            let v = principal_transform(f, n, l, spec)?;
            principal.push(((l.re, l.im), (v.re, v.im)));
        }
        let mut discrete = Vec::new();
        for &k in &index_sets(n).gamma {
            let v = discrete_transform(f, n, k, spec)?;
            discrete.push((k, (v.re, v.im)));
        }
        Ok(TransformRecord { n, principal, discrete })
    }

    /// CSV with columns re(lambda), im(lambda), re(F), im(F); 17 significant
    /// digits so doubles round-trip exactly. Discrete rows carry the real
    /// integer k as the spectral abscissa.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re_lambda,im_lambda,re_value,im_value\n");
        for &((lr, li), (vr, vi)) in &self.principal {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", lr, li, vr, vi));
        }
        for &(k, (vr, vi)) in &self.discrete {
            out.push_str(&format!("{:.16e},{:.16e},{:.16e},{:.16e}\n", k as f64, 0.0, vr, vi));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|_| Error::NonFiniteValue(f64::NAN))
    }
}
