//! Concrete 2x2 matrix model of G = SL(2,R): Iwasawa and Cartan coordinate
//! extraction, and the K-integral that defines the spherical eigenfunctions
//! independently of any hypergeometric formula.
//!
//! Matrix conventions (the sources never write the matrices): `k_theta` is
//! the rotation by theta with character `e_n(k_theta) = exp(i n theta)`,
//! `a_t = diag(e^t, e^{-t})`, and `n_xi` is upper unitriangular. The Iwasawa
//! order is K*A*N. These choices are pinned by the calibration test at the
//! bottom of this file: the K-integral must reproduce the closed form of the
//! spherical function, and the Haar density must be `2 sinh 2t`.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_segment, QuadratureSpec};

const DET_TOL: f64 = 1e-12;

/// Element of SL(2,R), stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Iwasawa coordinates of x = k_theta a_t n_xi.
#[derive(Debug, Clone, Copy)]
pub struct IwasawaCoords {
    /// Rotation angle in [0, 2*pi).
    pub theta: f64,
    /// The A-coordinate H(x).
    pub t: f64,
    /// The N-coordinate.
    pub xi: f64,
}

/// Cartan coordinates of x = k_theta1 a_t k_theta2 with t >= 0. The angles
/// are not unique; only reconstruction is contractual.
#[derive(Debug, Clone, Copy)]
pub struct CartanCoords {
    pub theta1: f64,
    pub t: f64,
    pub theta2: f64,
}

fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r == TAU {
        0.0
    } else {
        r
    }
}

impl GroupElement {
    /// Builds an element, checking det = 1 to 1e-12.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::DeterminantViolation(det));
        }
        Ok(GroupElement { a, b, c, d })
    }

    pub fn identity() -> Self {
        GroupElement {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Rotation k_theta with e_n(k_theta) = exp(i n theta).
    pub fn k_rot(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        GroupElement {
            a: c,
            b: -s,
            c: s,
            d: c,
        }
    }

    /// Diagonal a_t = diag(e^t, e^{-t}).
    pub fn a_diag(t: f64) -> Self {
        GroupElement {
            a: t.exp(),
            b: 0.0,
            c: 0.0,
            d: (-t).exp(),
        }
    }

    /// Upper unitriangular n_xi.
    pub fn n_upper(xi: f64) -> Self {
        GroupElement {
            a: 1.0,
            b: xi,
            c: 0.0,
            d: 1.0,
        }
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    fn max_abs_diff(&self, rhs: &GroupElement) -> f64 {
        (self.a - rhs.a)
            .abs()
            .max((self.b - rhs.b).abs())
            .max((self.c - rhs.c).abs())
            .max((self.d - rhs.d).abs())
    }
}

impl IwasawaCoords {
    pub fn reconstruct(&self) -> GroupElement {
        GroupElement::k_rot(self.theta)
            .mul(&GroupElement::a_diag(self.t))
            .mul(&GroupElement::n_upper(self.xi))
    }
}

impl CartanCoords {
    pub fn reconstruct(&self) -> GroupElement {
        GroupElement::k_rot(self.theta1)
            .mul(&GroupElement::a_diag(self.t))
            .mul(&GroupElement::k_rot(self.theta2))
    }
}

/// Unique Iwasawa coordinates of g = k_theta a_t n_xi. H(g) is the `t`
/// component and K(g) the `theta` component.
pub fn iwasawa(g: &GroupElement) -> Result<IwasawaCoords> {
    if (g.det() - 1.0).abs() > DET_TOL {
        return Err(Error::DeterminantViolation(g.det()));
    }
    // First column of g is e^t (cos theta, sin theta).
    let norm = g.a.hypot(g.c);
    let t = norm.ln();
    let theta = wrap_angle(g.c.atan2(g.a));
    // n = a^{-1} k^{-1} g; its (0,1) entry is xi.
    let (s, c) = theta.sin_cos();
    let xi = (c * g.b + s * g.d) / norm;
    Ok(IwasawaCoords { theta, t, xi })
}

/// Cartan coordinates of g = k_theta1 a_t k_theta2 with t >= 0, via the
/// symmetric eigenproblem of g^T g. The branch is fixed by requiring a
/// nonnegative first component of the leading singular vector.
pub fn cartan(g: &GroupElement) -> Result<CartanCoords> {
    if (g.det() - 1.0).abs() > DET_TOL {
        return Err(Error::DeterminantViolation(g.det()));
    }
    // M = g^T g = [[p, q], [q, r]], eigenvector angle from 2psi = atan2(2q, p-r).
    let p = g.a * g.a + g.c * g.c;
    let q = g.a * g.b + g.c * g.d;
    let r = g.b * g.b + g.d * g.d;
    let mut psi = 0.5 * (2.0 * q).atan2(p - r);
    if psi.cos() < 0.0 {
        psi += std::f64::consts::PI;
    }
    let (s, c) = psi.sin_cos();
    // Leading singular value: |g v1| with v1 = (cos psi, sin psi).
    let u1 = (g.a * c + g.b * s, g.c * c + g.d * s);
    let s1 = u1.0.hypot(u1.1);
    let t = s1.ln().max(0.0);
    if s1 <= 1.0 + 1e-12 {
        // Essentially a rotation: t = 0 and k_theta1 k_theta2 = g.
        let theta = wrap_angle(g.c.atan2(g.a));
        return Ok(CartanCoords {
            theta1: theta,
            t: 0.0,
            theta2: 0.0,
        });
    }
    let theta1 = wrap_angle(u1.1.atan2(u1.0));
    // g = U Sigma V^T with V the rotation by psi, so k_theta2 = V^T.
    let theta2 = wrap_angle(-psi);
    Ok(CartanCoords { theta1, t, theta2 })
}

/// Reconstruction residual of the Iwasawa coordinates, for tests.
pub fn iwasawa_residual(g: &GroupElement) -> f64 {
    match iwasawa(g) {
        Ok(co) => co.reconstruct().max_abs_diff(g),
        Err(_) => f64::INFINITY,
    }
}

/// Reconstruction residual of the Cartan coordinates, for tests.
pub fn cartan_residual(g: &GroupElement) -> f64 {
    match cartan(g) {
        Ok(co) => co.reconstruct().max_abs_diff(g),
        Err(_) => f64::INFINITY,
    }
}

/// Spherical eigenfunction of type (n,n) by its defining K-integral,
///
/// `phi(x) = int_K e^{(lambda-1) H(x k)} e_n(k^{-1}) conj(e_n(K(x k)^{-1})) dk`,
///
/// with `int_K dk = 1` realised as a theta-quadrature over [0, 2*pi) divided
/// by 2*pi. Serves as the convention-pinning oracle for the closed form in
/// the eigenfunction module.
pub fn k_integral_phi(
    n: i32,
    lambda: Complex64,
    x: &GroupElement,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let nf = n as f64;
    let integrand = |theta: f64| {
        let xk = x.mul(&GroupElement::k_rot(theta));
        let co = iwasawa(&xk).expect("group element stays unimodular");
        let phase = Complex64::new(0.0, nf * (co.theta - theta)).exp();
        ((lambda - 1.0) * co.t).exp() * phase
    };
    let q = integrate_segment(integrand, 0.0, TAU, spec)?;
    Ok(q.value / TAU)
}
