//! The recessive kernel `b_lambda`, radial convolution against it, the
//! operator `T_lambda`, and the L1-norm estimates attached to them.
//!
//! `b_lambda(a_t) = phi_cap(n, lambda, t) / (2 lambda c(n, -lambda))` is the
//! canonical decaying eigenfunction normalized so its spherical transforms
//! are the resolvent kernels `1/(lambda^2 - z^2)`.

use num_complex::Complex64;

use crate::eigenfn::{
    c_fn, delta_density, phi, phi_cap, phi_cap_with_deriv, SpectralParam,
};
use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_halfline, integrate_segment, QuadratureSpec};
use crate::profile::{RadialProfile, Smoothness};
use crate::sl2::{cartan, GroupElement};

/// `b_lambda` for a fixed admissible `(n, lambda)`, with the normalizing
/// constant precomputed so repeated radial evaluations are cheap.
#[derive(Debug, Clone, Copy)]
pub struct BKernel {
    n: i32,
    lambda: Complex64,
    scale: Complex64,
}

impl BKernel {
    /// Requires `Re lambda > 0` and `lambda` outside the zero set **B** of
    /// the reflected c-function (where the normalization degenerates).
    pub fn new(n: i32, lambda: Complex64) -> Result<Self> {
        if lambda.re <= 0.0 {
            return Err(Error::NonpositiveRealPart(lambda));
        }
        if SpectralParam(lambda).in_b(n) {
            return Err(Error::SpectralParamInB(lambda));
        }
        let c_minus = c_fn(n, -lambda)?;
        Ok(BKernel {
            n,
            lambda,
            scale: 1.0 / (2.0 * lambda * c_minus),
        })
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn eval(&self, t: f64) -> Result<Complex64> {
        Ok(phi_cap(self.n, self.lambda, t)? * self.scale)
    }

    /// Value and t-derivative.
    pub fn eval_with_deriv(&self, t: f64) -> Result<(Complex64, Complex64)> {
        let (v, d) = phi_cap_with_deriv(self.n, self.lambda, t)?;
        Ok((v * self.scale, d * self.scale))
    }

    /// Wrap as a radial profile carrying the proven decay rate
    /// `Re lambda + 1`.
    pub fn profile(&self) -> RadialProfile {
        let copy = *self;
        RadialProfile::from_fn(move |t| copy.eval(t).expect("b_lambda evaluation"))
            .with_smoothness(Smoothness::Smooth)
            .with_decay_rate(self.lambda.re + 1.0)
    }
}

/// `b_lambda(a_t)`; positive for real `lambda > n + 1`.
pub fn b(n: i32, lambda: Complex64, t: f64) -> Result<Complex64> {
    BKernel::new(n, lambda)?.eval(t)
}

/// Profile form of `b_lambda`, for feeding the transform layer.
pub fn b_profile(n: i32, lambda: Complex64) -> Result<RadialProfile> {
    Ok(BKernel::new(n, lambda)?.profile())
}

fn require_outside_b1(n: i32, lambda: Complex64) -> Result<()> {
    if SpectralParam(lambda).in_b1(n) {
        return Err(Error::ExcludedRegion(lambda));
    }
    Ok(())
}

/// Empirical constants for the two-sided kernel estimate: the supremum of
/// `|b|/log(1/t)` over a logarithmic grid on (0, 1/2] and the supremum of
/// `|b| e^{(Re lambda + 1) t}` over [1/2, 10]. Both are finite for
/// `Re lambda > 0` with `lambda` outside the closed ball union **B1**.
pub fn b_estimate_check(n: i32, lambda: Complex64) -> Result<(f64, f64)> {
    require_outside_b1(n, lambda)?;
    let kernel = BKernel::new(n, lambda)?;
    let mut c_small: f64 = 0.0;
    let grid = 60;
    for j in 0..grid {
        // t from 1/2 down to 1e-4, logarithmically spaced.
        let t = 0.5 * (2e-4_f64).powf(j as f64 / (grid - 1) as f64);
        c_small = c_small.max(kernel.eval(t)?.norm() / (1.0 / t).ln());
    }
    let mut c_large: f64 = 0.0;
    let mut t = 0.5;
    while t <= 10.0 {
        c_large = c_large.max(kernel.eval(t)?.norm() * ((lambda.re + 1.0) * t).exp());
        t += 0.05;
    }
    if !(c_small.is_finite() && c_large.is_finite()) {
        return Err(Error::NonFiniteValue(c_small.max(c_large)));
    }
    Ok((c_small, c_large))
}

/// `int_0^infty |b_lambda(a_t)| Delta(t) dt`. Requires `Re lambda > 1`
/// (integrability threshold against the `e^{2t}` Haar growth) and `lambda`
/// outside **B1**. The logarithmic singularity at the origin is linearized
/// by the substitution `t = e^{-u}`.
pub fn l1_norm_b(n: i32, lambda: Complex64, spec: &QuadratureSpec) -> Result<f64> {
    if lambda.re <= 1.0 {
        return Err(Error::NotIntegrableRegion(lambda.re));
    }
    require_outside_b1(n, lambda)?;
    let kernel = BKernel::new(n, lambda)?;
    // (0, 1/2]: t = e^{-u}, dt = -e^{-u} du; integrand ~ u e^{-2u} in u.
    let near = integrate_segment(
        |u: f64| {
            let t = (-u).exp();
            Complex64::new(kernel.eval(t).expect("b near origin").norm() * delta_density(t) * t, 0.0)
        },
        2.0_f64.ln(),
        45.0,
        spec,
    )?;
    // [1/2, infinity): decays like e^{(1 - Re lambda) t}.
    let far = integrate_halfline(
        |s: f64| {
            let t = 0.5 + s;
            Complex64::new(kernel.eval(t).expect("b tail").norm() * delta_density(t), 0.0)
        },
        lambda.re - 1.0,
        spec,
    )?;
    Ok(near.value.re + far.value.re)
}

/// Tail integral `int_t^infty g(s) ds` where `g` is built from a profile
/// against an eigenfunction and the Haar density; uses the profile support
/// when finite, otherwise its certified decay rate.
fn tail_integral<G: Fn(f64) -> Result<Complex64>>(
    f: &RadialProfile,
    tail_rate: f64,
    g: G,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if f.is_compactly_supported() {
        let r = f.support();
        if t >= r {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Ok(integrate_segment(|s| g(s).expect("tail integrand"), t, r, spec)?.value);
    }
    let rate = f
        .decay_rate()
        .ok_or(Error::TailNotDecaying { hint: 0.0 })?;
    let hint = rate + tail_rate;
    if hint <= 0.0 {
        return Err(Error::TailNotDecaying { hint });
    }
    Ok(integrate_halfline(|s| g(t + s).expect("tail integrand"), hint, spec)?.value)
}

/// Radial convolution `(f * b_lambda)(a_t)` via the split formula
/// `b_lambda(a_t) int_0^t f phi Delta + phi(a_t) int_t^infty f b_lambda Delta`,
/// valid because `b_lambda` satisfies the product formula.
pub fn convolve_with_b(
    f: &RadialProfile,
    n: i32,
    lambda: Complex64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let kernel = BKernel::new(n, lambda)?;
    let near = integrate_segment(
        |s| f.value(s) * phi(n, lambda, s).expect("phi") * delta_density(s),
        0.0,
        t,
        spec,
    )?
    .value;
    // Beyond the support of f the tail term vanishes; skip it so phi (which
    // grows like e^{(Re lambda - 1) t}) is never evaluated against a zero
    // weight.
    if f.is_compactly_supported() && t >= f.support() {
        return Ok(kernel.eval(t)? * near);
    }
    // Integrand decay beyond the kernel's own: e^{-(Re lambda + 1)s} e^{2s}.
    let tail_rate = lambda.re - 1.0;
    let far = tail_integral(
        f,
        tail_rate,
        |s| Ok(f.value(s) * kernel.eval(s)? * delta_density(s)),
        t,
        spec,
    )?;
    Ok(kernel.eval(t)? * near + phi(n, lambda, t)? * far)
}

/// Residual of the product formula
/// `int_K b(a_s k a_t) e_n(k^{-1}) dk = b(a_max) phi(a_min)`,
/// with the K-integral computed in Cartan coordinates of `a_s k_theta a_t`
/// and the bi-equivariant extension `b(k_1 a_r k_2) = e_n(k_1) b(a_r) e_n(k_2)`.
pub fn product_formula_residual(
    n: i32,
    lambda: Complex64,
    s: f64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if s == t {
        return Err(Error::CoincidentRadii(s));
    }
    let kernel = BKernel::new(n, lambda)?;
    let a_s = GroupElement::a_diag(s);
    let a_t = GroupElement::a_diag(t);
    let nf = n as f64;
    let lhs = integrate_segment(
        |theta| {
            let g = a_s.mul(&GroupElement::k_rot(theta)).mul(&a_t);
            let cc = cartan(&g).expect("cartan decomposition");
            let phase = Complex64::new(0.0, nf * (cc.theta1 + cc.theta2 - theta)).exp();
            kernel.eval(cc.t).expect("b in product formula") * phase
        },
        0.0,
        std::f64::consts::TAU,
        spec,
    )?
    .value
        / std::f64::consts::TAU;
    let (lo, hi) = if s < t { (s, t) } else { (t, s) };
    let rhs = kernel.eval(hi)?
        * if lo == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            phi(n, lambda, lo)?
        };
    Ok((lhs - rhs).norm())
}

/// `T_lambda f` at `a_t` by the numerically stable two-tail formula
/// `b_lambda(a_t) int_t^infty f phi Delta - phi(a_t) int_t^infty f b_lambda Delta`.
/// Defined for `lambda` in the interior of the strip, `0 < Re lambda < 1`.
pub fn t_transform(
    f: &RadialProfile,
    n: i32,
    lambda: Complex64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if lambda.re <= 0.0 || lambda.re >= 1.0 {
        return Err(Error::StripViolation(lambda));
    }
    let kernel = BKernel::new(n, lambda)?;
    if f.is_compactly_supported() && t >= f.support() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let tail_phi = tail_integral(
        f,
        // f phi Delta decays like f itself times e^{(1 - Re lambda)s}.
        lambda.re - 1.0,
        |s| Ok(f.value(s) * phi(n, lambda, s)? * delta_density(s)),
        t,
        spec,
    )?;
    let tail_b = tail_integral(
        f,
        lambda.re - 1.0,
        |s| Ok(f.value(s) * kernel.eval(s)? * delta_density(s)),
        t,
        spec,
    )?;
    Ok(kernel.eval(t)? * tail_phi - phi(n, lambda, t)? * tail_b)
}

/// `T_lambda f` by its defining formula `fhat(lambda) b_lambda - f * b_lambda`;
/// the dual-route cross-check for `t_transform`.
pub fn t_transform_defining(
    f: &RadialProfile,
    n: i32,
    lambda: Complex64,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    if lambda.re <= 0.0 || lambda.re >= 1.0 {
        return Err(Error::StripViolation(lambda));
    }
    let kernel = BKernel::new(n, lambda)?;
    let fhat = tail_integral(
        f,
        lambda.re - 1.0,
        |s| Ok(f.value(s) * phi(n, lambda, s)? * delta_density(s)),
        0.0,
        spec,
    )?;
    Ok(fhat * kernel.eval(t)? - convolve_with_b(f, n, lambda, t, spec)?)
}

/// `int_0^infty (cosh t)^{|n|} b_xi(a_t) Delta(t) dt`, which has the exact
/// value `1/(xi^2 - (n+1)^2)` for real `xi > |n| + 1`.
pub fn weighted_moment(n: i32, xi: f64, spec: &QuadratureSpec) -> Result<Complex64> {
    let kernel = BKernel::new(n, Complex64::new(xi, 0.0))?;
    let n_abs = n.abs() as i32;
    let hint = xi - 1.0 - n_abs as f64;
    if hint <= 0.0 {
        return Err(Error::NotIntegrableRegion(xi));
    }
    Ok(integrate_halfline(
        |t| kernel.eval(t).expect("b in moment") * t.cosh().powi(n_abs) * delta_density(t),
        hint,
        spec,
    )?
    .value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenfn::casimir_radial;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn positivity_for_real_lambda_beyond_n_plus_one() {
        for j in 1..=60 {
            let t = 0.05 + 0.166 * j as f64;
            let v = b(0, cx(2.0, 0.0), t).unwrap();
            assert!(v.re > 0.0 && v.im.abs() < 1e-14 * v.re.max(1.0), "t={t}: {v}");
        }
    }

    #[test]
    fn rejects_excluded_parameters() {
        assert!(matches!(b(4, cx(3.0, 0.0), 1.0), Err(Error::SpectralParamInB(_))));
        assert!(matches!(b(0, cx(-1.0, 0.0), 1.0), Err(Error::NonpositiveRealPart(_))));
    }

    #[test]
    fn log_estimate_near_origin_and_decay_beyond() {
        let (c_small, c_large) = b_estimate_check(0, cx(2.0, 0.0)).unwrap();
        assert!(c_small > 0.0 && c_small.is_finite());
        assert!(c_large > 0.0 && c_large.is_finite());
        // Inside a ball of B1 for n=5 (centers 4, 2, 0).
        assert!(matches!(
            b_estimate_check(5, cx(4.5, 0.0)),
            Err(Error::ExcludedRegion(_))
        ));
    }

    #[test]
    fn l1_norm_decreases_along_real_axis() {
        let a = l1_norm_b(0, cx(5.0, 0.0), &spec()).unwrap();
        let bb = l1_norm_b(0, cx(10.0, 0.0), &spec()).unwrap();
        assert!(a > bb && bb > 0.0, "{a} vs {bb}");
        assert!(matches!(
            l1_norm_b(0, cx(0.8, 0.0), &spec()),
            Err(Error::NotIntegrableRegion(_))
        ));
    }

    #[test]
    fn exact_weighted_moment() {
        // n=2, xi=4: 1/(16 - 9) = 1/7.
        let v = weighted_moment(2, 4.0, &spec()).unwrap();
        assert!((v.re - 1.0 / 7.0).abs() < 1e-7, "{v}");
        assert!(v.im.abs() < 1e-10);
    }

    #[test]
    fn convolution_support_logic() {
        let zero = RadialProfile::zero();
        let v = convolve_with_b(&zero, 0, cx(2.0, 0.0), 1.0, &spec()).unwrap();
        assert_eq!(v, cx(0.0, 0.0));

        // Beyond the support the far integral vanishes and the convolution
        // collapses to b(a_t) times the spherical transform piece.
        let f = RadialProfile::smooth_bump(0.5, 1.5);
        let t = 2.0;
        let lam = cx(2.0, 0.0);
        let v = convolve_with_b(&f, 0, lam, t, &spec()).unwrap();
        let fhat_part = integrate_segment(
            |s| f.value(s) * phi(0, lam, s).unwrap() * delta_density(s),
            0.0,
            1.5,
            &spec(),
        )
        .unwrap()
        .value;
        let expect = b(0, lam, t).unwrap() * fhat_part;
        assert!((v - expect).norm() < 1e-9 * expect.norm(), "{v} vs {expect}");
    }

    #[test]
    fn product_formula_residual_small() {
        let r = product_formula_residual(0, cx(2.0, 0.0), 2.0, 1.0, &spec()).unwrap();
        assert!(r < 1e-6, "residual {r}");
        let r = product_formula_residual(2, cx(1.5, 0.0), 0.5, 2.0, &spec()).unwrap();
        assert!(r < 1e-6, "residual {r}");
        assert!(matches!(
            product_formula_residual(0, cx(2.0, 0.0), 1.0, 1.0, &spec()),
            Err(Error::CoincidentRadii(_))
        ));
    }

    #[test]
    fn t_transform_vanishes_beyond_support_and_matches_definition() {
        let f = RadialProfile::smooth_bump(0.5, 1.5);
        let lam = cx(0.5, 0.3);
        assert_eq!(t_transform(&f, 0, lam, 2.0, &spec()).unwrap(), cx(0.0, 0.0));
        for &t in &[0.3, 0.8, 1.2] {
            let stable = t_transform(&f, 0, lam, t, &spec()).unwrap();
            let defining = t_transform_defining(&f, 0, lam, t, &spec()).unwrap();
            assert!(
                (stable - defining).norm() <= 1e-6 * stable.norm().max(1.0),
                "t={t}: {stable} vs {defining}"
            );
        }
        assert!(matches!(
            t_transform(&f, 0, cx(1.5, 0.0), 1.0, &spec()),
            Err(Error::StripViolation(_))
        ));
    }

    #[test]
    fn b_satisfies_eigen_equation() {
        let n = 2;
        let lam = cx(2.5, 0.4);
        let kernel = BKernel::new(n, lam).unwrap();
        let t = 1.3;
        let lhs = casimir_radial(n, |s| kernel.eval(s).unwrap(), t).unwrap();
        let rhs = (lam * lam - 1.0) * kernel.eval(t).unwrap();
        assert!((lhs - rhs).norm() <= 1e-5 * rhs.norm().max(1e-3), "{lhs} vs {rhs}");
    }
}
