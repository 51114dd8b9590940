//! Eigenfunctions of the radial Casimir operator: the regular spherical
//! function `phi`, the recessive second solution `phi_cap`, the c-function,
//! the discrete-series values `psi`, index sets, and the Wronskian bracket.
//!
//! Evaluation routes:
//! * `phi`: power series in -sinh^2 t for small t; for larger t either the
//!   connection formula (fast, when lambda is safely non-integer) or the
//!   Pfaff-transformed hypergeometric path.
//! * `phi_cap`: hypergeometric series in cosh^{-2} t for t above ~0.48; an
//!   exponential series in e^{-2t} driven by the ODE recursion for moderate
//!   t; the raised-parameter integral representation very close to t = 0.
//! All routes are cross-checked against each other and against the
//! K-integral oracle in the sl2 module.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::gamma::{digamma, is_nonpositive_integer, ln_gamma, nearest_integer, POLE_TOL};
use crate::numerics::hyp2f1::{cpow, hyp2f1};

/// Parity class of an integer type index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Even integers (trivial M-representation).
    Even,
    /// Odd integers.
    Odd,
}

/// Integer type index n together with its parity class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeIndex {
    pub n: i32,
}

impl TypeIndex {
    pub fn new(n: i32) -> Self {
        TypeIndex { n }
    }

    pub fn parity(&self) -> Parity {
        if self.n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A spectral parameter with its standard classifications.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParam(pub Complex64);

impl SpectralParam {
    pub fn new(re: f64, im: f64) -> Self {
        SpectralParam(Complex64::new(re, im))
    }

    /// |Re lambda| <= 1.
    pub fn in_strip(&self) -> bool {
        self.0.re.abs() <= 1.0
    }

    /// Re lambda > 0.
    pub fn in_right_half(&self) -> bool {
        self.0.re > 0.0
    }

    pub fn as_integer(&self) -> Option<i64> {
        nearest_integer(self.0)
    }

    /// Distance to the nearest integer on the real axis.
    pub fn integer_distance(&self) -> f64 {
        let d_re = (self.0.re - self.0.re.round()).abs();
        d_re.hypot(self.0.im)
    }

    pub fn in_b(&self, n: i32) -> bool {
        index_sets(n)
            .b
            .iter()
            .any(|&k| (self.0 - k as f64).norm() <= POLE_TOL)
    }

    /// Membership in the closed union of unit balls B1.
    pub fn in_b1(&self, n: i32) -> bool {
        index_sets(n)
            .b1_centers
            .iter()
            .any(|&c| (self.0 - c as f64).norm() <= 1.0)
    }
}

impl From<Complex64> for SpectralParam {
    fn from(z: Complex64) -> Self {
        SpectralParam(z)
    }
}

/// The index sets attached to a type index n: the discrete spectrum Gamma_n,
/// the zero set B of the reflected c-function in the right half plane, and
/// the centers of the excluded unit-ball union B1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSets {
    pub gamma: Vec<i32>,
    pub b: Vec<i32>,
    pub b1_centers: Vec<i32>,
    pub k0: i32,
}

/// Integers strictly between 0 and n of parity opposite to n, plus the
/// derived exceptional sets.
pub fn index_sets(n: i32) -> IndexSets {
    let mut gamma = Vec::new();
    if n > 0 {
        let start = if n % 2 == 0 { 1 } else { 2 };
        gamma.extend((start..n).step_by(2));
    } else if n < 0 {
        let start = if n % 2 == 0 { 1 } else { 2 };
        gamma.extend((start..-n).step_by(2).map(|k| -k));
        gamma.sort_unstable();
    }
    let b: Vec<i32> = {
        let mut v: Vec<i32> = gamma.iter().map(|&k| k.abs()).collect();
        v.sort_unstable();
        v
    };
    let k0 = n.abs() / 2 + 1;
    let b1_centers: Vec<i32> = (0..k0).map(|i| n.abs() - 2 * i - 1).collect();
    IndexSets {
        gamma,
        b,
        b1_centers,
        k0,
    }
}

/// The parity set Z(k): integers of parity opposite to k, beyond k.
#[derive(Debug, Clone, Copy)]
pub struct ZSet {
    k: i32,
}

/// Membership predicate and enumerator for Z(k). Errors on k = 0.
pub fn z_of_k(k: i32) -> Result<ZSet> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(ZSet { k })
}

impl ZSet {
    pub fn contains(&self, m: i32) -> bool {
        if (m - self.k).rem_euclid(2) == 0 {
            return false;
        }
        if self.k >= 1 {
            m >= self.k + 1
        } else {
            m <= self.k - 1
        }
    }

    /// Elements in order of increasing |m|.
    pub fn iter(&self) -> impl Iterator<Item = i32> {
        let k = self.k;
        let step = if k >= 1 { 2 } else { -2 };
        let start = if k >= 1 { k + 1 } else { k - 1 };
        (0..).map(move |i| start + step * i)
    }
}

/// Haar density of the Cartan integral formula: `Delta(t) = 2 sinh 2t`.
pub fn delta_density(t: f64) -> f64 {
    2.0 * (2.0 * t).sinh()
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn integer_distance(lambda: Complex64) -> f64 {
    (lambda.re - lambda.re.round()).abs().hypot(lambda.im)
}

fn nonpositive_integer_distance(z: Complex64) -> f64 {
    let m = z.re.round().min(0.0);
    (z.re - m).hypot(z.im)
}

// ---------------------------------------------------------------------------
// phi_cap: the recessive solution.
// ---------------------------------------------------------------------------

/// Threshold in t below which cosh^{-2} t exceeds 0.8 and the plain
/// hypergeometric series is no longer used.
const PHI_CAP_SERIES_T: f64 = 0.481_211_825_059_603_45;

/// Exponential-series route: phi_cap = e^{-(lambda+1)t} sum a_k e^{-2kt}
/// with the a_k produced by the ODE recursion
/// `4k(k+lambda) a_k = 4 sum mu_{k-2m} a_{k-2m} - 4 n^2 sum (-1)^{m-1} m a_{k-m}`.
/// Returns value and t-derivative. Requires lambda at distance >= 0.05 from
/// the nonpositive integers; None when the budget is exhausted.
fn phi_cap_exp_series(n: i32, lambda: Complex64, t: f64) -> Option<(Complex64, Complex64)> {
    // Denominators k(k+lambda), k >= 1: stay away from negative integers.
    if lambda.re <= 0.0 && integer_distance(lambda) < 0.05 {
        return None;
    }
    let q = (-2.0 * t).exp();
    let n2 = (n as f64) * (n as f64);
    let max_terms = 4000usize;
    let mut coeffs: Vec<Complex64> = Vec::with_capacity(64);
    coeffs.push(ONE);
    let mut sum = ONE;
    let mut dsum = -(lambda + 1.0); // derivative of e^{-(lambda+1+2k)t} part, k=0
    let mut qk = 1.0;
    let mut small = 0;
    for k in 1..max_terms {
        let kf = k as f64;
        let mut num = Complex64::new(0.0, 0.0);
        let mut m = 2usize;
        while m <= k {
            // mu_j = lambda + 1 + 2j at j = k - m (m even shifts)
            let j = k - m;
            num += 4.0 * (lambda + 1.0 + 2.0 * j as f64) * coeffs[j];
            m += 2;
        }
        let mut alt = Complex64::new(0.0, 0.0);
        for mm in 1..=k {
            let sign = if mm % 2 == 1 { 1.0 } else { -1.0 };
            alt += sign * mm as f64 * coeffs[k - mm];
        }
        num -= 4.0 * n2 * alt;
        let ak = num / (4.0 * kf * (kf + lambda));
        coeffs.push(ak);
        qk *= q;
        let term = ak * qk;
        sum += term;
        dsum += term * (-(lambda + 1.0 + 2.0 * kf));
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            small += 1;
            if small >= 2 {
                let pref = (-(lambda + 1.0) * t).exp();
                return Some((pref * sum, pref * dsum));
            }
        } else {
            small = 0;
        }
    }
    None
}

/// Near-origin route. The closed form has lower parameter c = a + b, so at
/// u = sech^2 t -> 1 the hypergeometric factor is always the logarithmic
/// connection case; the expansion in v = 1 - u = tanh^2 t
/// `F(a,b;a+b;u) = G sum_k (a)_k (b)_k / (k!)^2 [2 psi(k+1) - psi(a+k) - psi(b+k) - ln v] v^k`
/// (G = Gamma(a+b)/(Gamma(a)Gamma(b))) stays accurate arbitrarily close to
/// the origin, where u itself is not representable below one ulp of 1.
/// Returns None when `a` or `b` sits too close to a digamma pole.
fn phi_cap_log_expansion(n: i32, lambda: Complex64, t: f64) -> Option<Result<(Complex64, Complex64)>> {
    let n_abs = n.abs() as f64;
    let a = (1.0 + lambda + n_abs) / 2.0;
    let b = (1.0 + lambda - n_abs) / 2.0;
    if nonpositive_integer_distance(a) < 0.05 || nonpositive_integer_distance(b) < 0.05 {
        return None;
    }
    let inner = || -> Result<(Complex64, Complex64)> {
        let th = t.tanh();
        let v = th * th;
        let big_l = -v.ln();
        let g = (ln_gamma(a + b)? - ln_gamma(a)? - ln_gamma(b)?).exp();
        let mut coef = ONE;
        let mut d = 2.0 * digamma(ONE)? - digamma(a)? - digamma(b)?;
        let mut sum = d + big_l;
        // dF/du = G sum_k A_k v^{k-1} [1 - k (L + d_k)]  (note dv = -du).
        let mut dsum = Complex64::new(1.0 / v, 0.0);
        let mut vk = 1.0;
        let mut small = 0;
        for k in 1..500 {
            let kf = k as f64;
            coef *= (a + (kf - 1.0)) * (b + (kf - 1.0)) / (kf * kf);
            d += 2.0 / kf - 1.0 / (a + (kf - 1.0)) - 1.0 / (b + (kf - 1.0));
            let lk = big_l + d;
            vk *= v;
            let term = coef * vk * lk;
            sum += term;
            dsum += coef * (vk / v) * (1.0 - kf * lk);
            if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
                small += 1;
                if small >= 2 {
                    break;
                }
            } else {
                small = 0;
            }
        }
        let f = g * sum;
        let df_du = g * dsum;
        let pref = cpow(2.0 * t.cosh(), -(lambda + 1.0));
        let u = 1.0 / (t.cosh() * t.cosh());
        let du_dt = -2.0 * u * th;
        let value = pref * f;
        let deriv = -(lambda + 1.0) * th * value + pref * df_du * du_dt;
        Ok((value, deriv))
    };
    Some(inner())
}

fn phi_cap_closed_form(n: i32, lambda: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    let n_abs = n.abs() as f64;
    let a = (1.0 + lambda + n_abs) / 2.0;
    let b = (1.0 + lambda - n_abs) / 2.0;
    let cc = lambda + 1.0;
    let u = 1.0 / (t.cosh() * t.cosh());
    let f = hyp2f1(a, b, cc, u)?;
    let fp = hyp2f1(a + 1.0, b + 1.0, cc + 1.0, u)?;
    let pref = cpow(2.0 * t.cosh(), -(lambda + 1.0));
    let du = -2.0 * u * t.tanh();
    let value = pref * f;
    let deriv = -(lambda + 1.0) * t.tanh() * value + pref * (a * b / cc) * fp * du;
    Ok((value, deriv))
}

/// Backward continuation of the recessive solution into the corner where
/// both small-t expansions are ill-conditioned (|lambda| sech^2(t)/4 and
/// |lambda| tanh(t) both large, which requires |lambda| >~ 100). The
/// recessive solution decays as t grows, so integrating towards smaller t
/// makes it the dominant mode: the backward sweep preserves the relative
/// accuracy of the start value instead of amplifying the suppressed
/// growing solution.
fn phi_cap_backward_ode(n: i32, lambda: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    // Start where the closed form still keeps ~9 significant digits:
    // |lambda| sech^2(t0) / 4 = 20, capped at the series-validity edge.
    let u0 = (80.0 / lambda.norm()).min(0.8);
    let t0 = (1.0 / u0.sqrt()).acosh();
    let (p0, dp0) = phi_cap_closed_form(n, lambda, t0)?;
    // Integrate w = e^{lambda t} phi_cap, which is slowly varying (the
    // oscillation/decay e^{-lambda t} is factored out), so the step size is
    // bounded by RK4 stability (|2 lambda h| < ~1) rather than accuracy:
    //   w'' + (2 coth 2t - 2 lambda) w'
    //      + (n^2 sech^2 t + 1 - 2 lambda coth 2t) w = 0.
    let scale = (lambda * t0).exp();
    let mut w = scale * p0;
    let mut dw = scale * (dp0 + lambda * p0);
    let span = t - t0; // negative: backward sweep
    let h_target = (0.4 / lambda.norm().max(1.0)).min(2.5e-3);
    let steps = (span.abs() / h_target).ceil().max(1.0) as usize;
    let h = span / steps as f64;
    let nn = (n as f64) * (n as f64);
    let accel = |s: f64, f: Complex64, fp: Complex64| -> Complex64 {
        let sech = 1.0 / s.cosh();
        let cth = 2.0 / (2.0 * s).tanh();
        -(cth - 2.0 * lambda) * fp - (nn * sech * sech + 1.0 - lambda * cth) * f
    };
    for i in 0..steps {
        let s = t0 + i as f64 * h;
        let k1v = dw;
        let k1d = accel(s, w, dw);
        let k2v = dw + 0.5 * h * k1d;
        let k2d = accel(s + 0.5 * h, w + 0.5 * h * k1v, k2v);
        let k3v = dw + 0.5 * h * k2d;
        let k3d = accel(s + 0.5 * h, w + 0.5 * h * k2v, k3v);
        let k4v = dw + h * k3d;
        let k4d = accel(s + h, w + h * k3v, k4v);
        w += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        dw += (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::NonFiniteValue(w.re));
    }
    let unscale = (-lambda * t).exp();
    Ok((unscale * w, unscale * (dw - lambda * w)))
}

/// The second solution and its t-derivative.
pub fn phi_cap_with_deriv(n: i32, lambda: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    if t <= 0.0 {
        return Err(Error::SingularAtOrigin);
    }
    if nearest_integer(lambda + 1.0).is_some_and(|m| m <= 0) {
        return Err(Error::CLowerParameterPole(lambda + 1.0));
    }
    // Conditioning of the two small-t expansions, in digits of loss: the
    // closed form loses ~e^{|lambda| sech^2(t)/4}, the logarithmic
    // expansion ~e^{|lambda| tanh t}. When both are hopeless, continue the
    // recessive solution backwards from a well-conditioned start instead.
    let loss_closed = lambda.norm() / (t.cosh() * t.cosh()) / 4.0;
    let loss_log = lambda.norm() * t.tanh();
    if loss_closed.min(loss_log) > 25.0 {
        return phi_cap_backward_ode(n, lambda, t);
    }
    if t >= PHI_CAP_SERIES_T {
        return phi_cap_closed_form(n, lambda, t);
    }
    // For large |lambda| both small-t series develop growing intermediate
    // terms; the closed form loses ~e^{|lambda| sech^2(t)/4} digits and the
    // logarithmic expansion ~e^{|lambda| tanh t}, so the closed form is the
    // better-conditioned route down to sech^2 t = 4 tanh t (t ~ 0.2406).
    if lambda.norm() > 12.0 && t.tanh() >= 0.25 / t.cosh().powi(2) {
        return phi_cap_closed_form(n, lambda, t);
    }
    if let Some(r) = phi_cap_log_expansion(n, lambda, t) {
        return r;
    }
    if t >= 0.04 {
        if let Some(v) = phi_cap_exp_series(n, lambda, t) {
            return Ok(v);
        }
    }
    phi_cap_closed_form(n, lambda, t)
}

/// The second (recessive) solution `phi_cap(n, lambda, t)`, singular at the
/// origin and asymptotic to `e^{-(lambda+1)t}` at infinity.
pub fn phi_cap(n: i32, lambda: Complex64, t: f64) -> Result<Complex64> {
    Ok(phi_cap_with_deriv(n, lambda, t)?.0)
}

// ---------------------------------------------------------------------------
// phi: the regular solution.
// ---------------------------------------------------------------------------

/// t below which |sinh^2 t| <= 0.8 and the plain series is used.
const PHI_SERIES_T: f64 = 0.804_718_956_217_050_2;

fn phi_params(n: i32, lambda: Complex64) -> (Complex64, Complex64) {
    let nf = n as f64;
    ((nf + 1.0 + lambda) / 2.0, (nf + 1.0 - lambda) / 2.0)
}

/// Direct hypergeometric route for phi (series, Pfaff or raised-parameter
/// integral depending on the argument). Exposed so the connection-formula
/// residual can compare two genuinely independent routes.
pub fn phi_direct_with_deriv(n: i32, lambda: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    if t == 0.0 {
        return Ok((ONE, Complex64::new(0.0, 0.0)));
    }
    let (a, b) = phi_params(n, lambda);
    let z = -t.sinh() * t.sinh();
    let f = hyp2f1(a, b, ONE, z)?;
    let fp = hyp2f1(a + 1.0, b + 1.0, c(2.0), z)?;
    let nf = n as f64;
    let ch = t.cosh();
    let pref = cpow(ch, c(nf));
    let dz = -(2.0 * t).sinh();
    let value = pref * f;
    let deriv = nf * t.tanh() * value + pref * (a * b) * fp * dz;
    Ok((value, deriv))
}

/// Largest t at which the plain hypergeometric series is reliable for the
/// given spectral parameter: beyond |a b sinh^2 t| ~ 1 the series develops
/// growing intermediate terms that cost precision for large |lambda|.
fn phi_series_radius(lambda: Complex64) -> f64 {
    PHI_SERIES_T.min(1.6 / lambda.norm().max(2.0))
}

/// Continues phi out of the series region by integrating the radial
/// eigen-equation f'' + 2 coth(2t) f' + n^2 sech^2 t f = (lambda^2 - 1) f
/// with classical fourth-order Runge-Kutta from initial data supplied by
/// the series. This route stays accurate where the connection formula
/// degenerates (lambda within 0.05 of an integer, where the c-function
/// blows up) and where the hypergeometric series loses precision
/// (large |lambda|).
fn phi_ode_with_deriv(
    n: i32,
    lambda: Complex64,
    t: f64,
    t0: f64,
) -> Result<(Complex64, Complex64)> {
    let (y, dy) = phi_direct_with_deriv(n, lambda, t0)?;
    rk4_continue(n, lambda, t0, t, y, dy)
}

/// Fourth-order Runge–Kutta continuation of a solution of the radial
/// eigen-equation from `t0` to `t` (either direction), starting from the
/// value/derivative pair at `t0`.
fn rk4_continue(
    n: i32,
    lambda: Complex64,
    t0: f64,
    t: f64,
    mut y: Complex64,
    mut dy: Complex64,
) -> Result<(Complex64, Complex64)> {
    let span = t - t0;
    let scale = lambda.norm().max(1.0);
    // Global RK4 error ~ |span| * scale^5 * h^4 / 120; target 1e-11 relative.
    let h_est = (120.0 * 1e-11 / (span.abs() * scale.powi(5))).powf(0.25);
    let steps = (span.abs() / h_est).ceil().clamp(1.0, 4.0e6) as usize;
    let h = span / steps as f64;
    let nn = (n as f64) * (n as f64);
    let accel = |s: f64, f: Complex64, fp: Complex64| -> Complex64 {
        let sech = 1.0 / s.cosh();
        (lambda * lambda - 1.0) * f - (2.0 / (2.0 * s).tanh()) * fp - nn * sech * sech * f
    };
    for i in 0..steps {
        let s = t0 + i as f64 * h;
        let k1v = dy;
        let k1d = accel(s, y, dy);
        let k2v = dy + 0.5 * h * k1d;
        let k2d = accel(s + 0.5 * h, y + 0.5 * h * k1v, k2v);
        let k3v = dy + 0.5 * h * k2d;
        let k3d = accel(s + 0.5 * h, y + 0.5 * h * k2v, k3v);
        let k4v = dy + h * k3d;
        let k4d = accel(s + h, y + h * k3v, k4v);
        y += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        dy += (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
    if !y.re.is_finite() || !y.im.is_finite() {
        return Err(Error::NonFiniteValue(y.re));
    }
    Ok((y, dy))
}

/// Regular spherical eigenfunction and its t-derivative.
pub fn phi_with_deriv(n: i32, lambda: Complex64, t: f64) -> Result<(Complex64, Complex64)> {
    let t = t.abs(); // even in t
    let radius = phi_series_radius(lambda);
    if t <= radius {
        return phi_direct_with_deriv(n, lambda, t);
    }
    // Fast route: connection formula, when lambda is safely non-integer and
    // the singular-solution series are well conditioned.
    if integer_distance(lambda) >= 0.05 && lambda.norm() <= 400.0 {
        let cp = c_fn(n, lambda)?;
        let cm = c_fn(n, -lambda)?;
        let (vp, dp) = phi_cap_with_deriv(n, lambda, t)?;
        let (vm, dm) = phi_cap_with_deriv(n, -lambda, t)?;
        return Ok((cp * vp + cm * vm, cp * dp + cm * dm));
    }
    // Discrete-parameter shortcut: when the Pfaff-transformed series
    // terminates (a or c-b a nonpositive integer, in either orientation of
    // the evenness in lambda) the direct route is exact and stable at any t,
    // while forward ODE integration of these purely decaying solutions
    // would be contaminated by the suppressed growing mode.
    let (a, b) = phi_params(n, lambda);
    if is_nonpositive_integer(a) || is_nonpositive_integer(ONE - b) {
        return phi_direct_with_deriv(n, lambda, t);
    }
    if is_nonpositive_integer(b) || is_nonpositive_integer(ONE - a) {
        return phi_direct_with_deriv(n, -lambda, t);
    }
    phi_ode_with_deriv(n, lambda, t, radius)
}

/// The regular spherical eigenfunction `phi(n, lambda, t)`, entire in
/// lambda, even in both lambda and t, with `phi(n, lambda, 0) = 1`.
pub fn phi(n: i32, lambda: Complex64, t: f64) -> Result<Complex64> {
    Ok(phi_with_deriv(n, lambda, t)?.0)
}

/// Direct-route value of phi (no connection-formula shortcut).
pub fn phi_direct(n: i32, lambda: Complex64, t: f64) -> Result<Complex64> {
    Ok(phi_direct_with_deriv(n, lambda, t.abs())?.0)
}

// ---------------------------------------------------------------------------
// c-function.
// ---------------------------------------------------------------------------

fn pole_order_info(arg: Complex64) -> Option<u32> {
    // Some(p) when `arg` sits on the Gamma pole at -p.
    nearest_integer(arg).and_then(|m| (m <= 0).then_some((-m) as u32))
}

fn ln_factorial(m: u32) -> f64 {
    let mut s = 0.0;
    for i in 2..=m {
        s += (i as f64).ln();
    }
    s
}

/// The c-function
/// `c(n, lambda) = 2^{1+lambda} Gamma(-lambda) / [Gamma((1-lambda-|n|)/2) Gamma((1-lambda+|n|)/2)]`
/// computed in log-space with explicit integer-pole bookkeeping: an
/// unmatched numerator pole is reported as indeterminate, an unmatched
/// denominator pole yields an exact zero, and matched simple poles cancel
/// into the finite residue ratio.
pub fn c_fn(n: i32, lambda: Complex64) -> Result<Complex64> {
    let n_abs = n.abs() as f64;
    let w1 = (1.0 - lambda - n_abs) / 2.0;
    let w2 = (1.0 - lambda + n_abs) / 2.0;
    let num_pole = pole_order_info(-lambda);
    let d1 = pole_order_info(w1);
    let d2 = pole_order_info(w2);
    let den_poles = d1.is_some() as u32 + d2.is_some() as u32;
    match (num_pole, den_poles) {
        (None, 0) => {
            let ln = (lambda + 1.0) * 2.0_f64.ln() + ln_gamma(-lambda)? - ln_gamma(w1)?
                - ln_gamma(w2)?;
            Ok(ln.exp())
        }
        (None, _) => Ok(Complex64::new(0.0, 0.0)),
        (Some(_), 0) => Err(Error::IndeterminatePoint(lambda)),
        (Some(m), 1) => {
            // Simple pole over simple pole: residue ratio.
            // Gamma(-lambda) ~ (-1)^{m+1} / (m! (lambda - m));
            // Gamma(w) ~ 2 (-1)^{p+1} / (p! (lambda - m)) with w = (1-lambda±|n|)/2.
            let (p, other) = if d1.is_some() {
                (d1.unwrap(), w2)
            } else {
                (d2.unwrap(), w1)
            };
            let sign = if (m + p) % 2 == 0 { 1.0 } else { -1.0 };
            let ln = c(1.0 + m as f64) * 2.0_f64.ln() + ln_factorial(p) - ln_factorial(m)
                - 2.0_f64.ln()
                - ln_gamma(other)?;
            Ok(sign * ln.exp())
        }
        (Some(_), _) => Ok(Complex64::new(0.0, 0.0)),
    }
}

// ---------------------------------------------------------------------------
// Discrete series values, Casimir, Wronskian.
// ---------------------------------------------------------------------------

/// Discrete-series matrix coefficient `psi_k = phi at lambda = |k|`,
/// defined for k in Gamma_n.
pub fn psi(n: i32, k: i32, t: f64) -> Result<Complex64> {
    if !index_sets(n).gamma.contains(&k) {
        return Err(Error::IndexNotInGamma { n, k });
    }
    phi(n, c(k.abs() as f64), t)
}

/// The radial Casimir operator
/// `f'' + 2 coth(2t) f' + (n^2 / cosh^2 t) f` applied at `t > 0` by
/// five-point central differences with step `h = 1e-4 max(1, t)`. With this
/// potential the spherical eigenfunctions satisfy `Pi f = (lambda^2 - 1) f`.
pub fn casimir_radial<F: Fn(f64) -> Complex64>(n: i32, f: F, t: f64) -> Result<Complex64> {
    let h = 1e-4 * t.max(1.0);
    if t - 2.0 * h <= 0.0 {
        return Err(Error::SingularAtOrigin);
    }
    let fm2 = f(t - 2.0 * h);
    let fm1 = f(t - h);
    let f0 = f(t);
    let fp1 = f(t + h);
    let fp2 = f(t + 2.0 * h);
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    let nf = n as f64;
    Ok(d2 + 2.0 / (2.0 * t).tanh() * d1 + nf * nf / (t.cosh() * t.cosh()) * f0)
}

/// A function on (0, infinity) bundled with its derivative, as consumed by
/// the Wronskian bracket.
pub struct Differentiable<'a> {
    pub f: Box<dyn Fn(f64) -> Complex64 + 'a>,
    pub df: Box<dyn Fn(f64) -> Complex64 + 'a>,
}

impl<'a> Differentiable<'a> {
    pub fn new(
        f: impl Fn(f64) -> Complex64 + 'a,
        df: impl Fn(f64) -> Complex64 + 'a,
    ) -> Self {
        Differentiable {
            f: Box::new(f),
            df: Box::new(df),
        }
    }

    /// phi(n, lambda, .) with its analytic derivative.
    pub fn phi(n: i32, lambda: Complex64) -> Self {
        Differentiable::new(
            move |t| phi_with_deriv(n, lambda, t).expect("phi evaluation").0,
            move |t| phi_with_deriv(n, lambda, t).expect("phi evaluation").1,
        )
    }

    /// phi_cap(n, lambda, .) with its analytic derivative.
    pub fn phi_cap(n: i32, lambda: Complex64) -> Self {
        Differentiable::new(
            move |t| phi_cap_with_deriv(n, lambda, t).expect("phi_cap evaluation").0,
            move |t| phi_cap_with_deriv(n, lambda, t).expect("phi_cap evaluation").1,
        )
    }
}

/// The bracket `[f,g](t) = Delta(t) (f'(t) g(t) - f(t) g'(t))`, constant in
/// t when f and g solve the same radial eigenvalue equation.
pub fn wronskian_bracket(f: &Differentiable, g: &Differentiable, t: f64) -> Complex64 {
    delta_density(t) * ((f.df)(t) * (g.f)(t) - (f.f)(t) * (g.df)(t))
}

/// Relative residual of the connection formula
/// `phi = c(lambda) phi_cap_lambda + c(-lambda) phi_cap_{-lambda}`,
/// with phi evaluated on its direct route so the two sides are independent.
pub fn connection_residual(n: i32, lambda: Complex64, t: f64) -> Result<f64> {
    if integer_distance(lambda) <= POLE_TOL {
        return Err(Error::IntegerSpectralParam(lambda));
    }
    let lhs = phi_direct(n, lambda, t)?;
    let rhs = c_fn(n, lambda)? * phi_cap(n, lambda, t)?
        + c_fn(n, -lambda)? * phi_cap(n, -lambda, t)?;
    Ok((lhs - rhs).norm() / (1.0 + lhs.norm()))
}
