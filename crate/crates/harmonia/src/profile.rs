//! Radial profiles: functions on the radial coordinate `t >= 0` standing
//! for bi-equivariant functions on the group, evaluated through their
//! restriction to the positive Weyl chamber. The even extension to `t < 0`
//! is implied throughout.

use std::sync::Arc;

use num_complex::Complex64;

/// Smoothness class of a profile, used only as a descriptive tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    Continuous,
    Piecewise,
}

type EvalFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A radial profile: an evaluation handle, an optional derivative handle,
/// a support bound (possibly infinite) and, when known, an exponential
/// decay rate `r` with `|f(t)| <~ e^{-r t}` used to certify tail
/// truncations of half-line integrals.
#[derive(Clone)]
pub struct RadialProfile {
    eval: EvalFn,
    deriv: Option<EvalFn>,
    support: f64,
    smoothness: Smoothness,
    decay_rate: Option<f64>,
}

impl RadialProfile {
    /// Profile from a bare closure; infinite support, no decay certificate.
    pub fn from_fn(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        RadialProfile {
            eval: Arc::new(f),
            deriv: None,
            support: f64::INFINITY,
            smoothness: Smoothness::Continuous,
            decay_rate: None,
        }
    }

    pub fn with_support(mut self, support: f64) -> Self {
        self.support = support;
        self
    }

    pub fn with_smoothness(mut self, smoothness: Smoothness) -> Self {
        self.smoothness = smoothness;
        self
    }

    pub fn with_decay_rate(mut self, rate: f64) -> Self {
        self.decay_rate = Some(rate);
        self
    }

    pub fn with_derivative(
        mut self,
        df: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
    ) -> Self {
        self.deriv = Some(Arc::new(df));
        self
    }

    /// The zero profile.
    pub fn zero() -> Self {
        RadialProfile::from_fn(|_| Complex64::new(0.0, 0.0))
            .with_support(0.0)
            .with_smoothness(Smoothness::Smooth)
    }

    /// Smooth bump supported on `[a, b]`: `exp(-1/(1-u^2))` in the
    /// normalized coordinate `u = (2t - (a+b))/(b-a)`, zero outside.
    pub fn smooth_bump(a: f64, b: f64) -> Self {
        assert!(b > a, "bump interval must be nondegenerate");
        let bump = move |t: f64| {
            let u = (2.0 * t.abs() - (a + b)) / (b - a);
            if u.abs() >= 1.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new((-1.0 / (1.0 - u * u)).exp(), 0.0)
            }
        };
        let dbump = move |t: f64| {
            let u = (2.0 * t.abs() - (a + b)) / (b - a);
            if u.abs() >= 1.0 {
                Complex64::new(0.0, 0.0)
            } else {
                let w = 1.0 - u * u;
                let du = 2.0 / (b - a) * t.signum();
                Complex64::new((-1.0 / w).exp() * (-2.0 * u / (w * w)) * du, 0.0)
            }
        };
        RadialProfile::from_fn(bump)
            .with_support(b)
            .with_smoothness(Smoothness::Smooth)
            .with_derivative(dbump)
    }

    /// Indicator of `[0, r]`.
    pub fn step(r: f64) -> Self {
        assert!(r > 0.0);
        RadialProfile::from_fn(move |t| {
            if t.abs() <= r {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .with_support(r)
        .with_smoothness(Smoothness::Piecewise)
    }

    /// Evaluate at radial coordinate `t` (even extension for `t < 0`).
    pub fn value(&self, t: f64) -> Complex64 {
        (self.eval)(t.abs())
    }

    pub fn derivative(&self, t: f64) -> Option<Complex64> {
        self.deriv.as_ref().map(|d| d(t))
    }

    /// Support bound; `f64::INFINITY` when not compactly supported.
    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn is_compactly_supported(&self) -> bool {
        self.support.is_finite()
    }

    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    /// Certified exponential decay rate, when one is known.
    pub fn decay_rate(&self) -> Option<f64> {
        self.decay_rate
    }
}

impl std::fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProfile")
            .field("support", &self.support)
            .field("smoothness", &self.smoothness)
            .field("decay_rate", &self.decay_rate)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_bump_support_and_peak() {
        let f = RadialProfile::smooth_bump(0.5, 1.5);
        assert_eq!(f.value(0.4), Complex64::new(0.0, 0.0));
        assert_eq!(f.value(1.6), Complex64::new(0.0, 0.0));
        let peak = f.value(1.0);
        assert!((peak.re - (-1.0_f64).exp()).abs() < 1e-15);
        assert_eq!(f.support(), 1.5);
        assert!(f.is_compactly_supported());
    }

    #[test]
    fn even_extension() {
        let f = RadialProfile::smooth_bump(0.5, 1.5);
        assert_eq!(f.value(-1.0), f.value(1.0));
    }

    #[test]
    fn bump_derivative_matches_finite_difference() {
        let f = RadialProfile::smooth_bump(0.5, 1.5);
        for &t in &[0.7, 1.0, 1.3] {
            let h = 1e-6;
            let fd = (f.value(t + h) - f.value(t - h)) / (2.0 * h);
            let d = f.derivative(t).unwrap();
            assert!((fd - d).norm() < 1e-7, "t={t}: {fd} vs {d}");
        }
    }

    #[test]
    fn step_profile() {
        let f = RadialProfile::step(1.0);
        assert_eq!(f.value(0.5).re, 1.0);
        assert_eq!(f.value(1.5).re, 0.0);
        assert_eq!(f.smoothness(), Smoothness::Piecewise);
    }

    #[test]
    fn zero_profile() {
        let f = RadialProfile::zero();
        assert_eq!(f.value(2.0), Complex64::new(0.0, 0.0));
    }
}
