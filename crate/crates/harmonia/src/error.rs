use num_complex::Complex64;
use thiserror::Error;

/// Errors shared across the crate. Variant names follow the domain
/// condition they report; none of them is recoverable by retrying with
/// the same arguments.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma pole at nonpositive integer argument {0}")]
    PoleAtNonpositiveInteger(Complex64),
    #[error("lower parameter c = {0} of 2F1 is a nonpositive integer")]
    CLowerParameterPole(Complex64),
    #[error("hypergeometric series did not converge within the term budget")]
    SeriesNonConvergence,
    #[error("quadrature tolerance not met: estimated error {error:.3e} for value of magnitude {magnitude:.3e}")]
    ToleranceNotMet { error: f64, magnitude: f64 },
    #[error("integrand tail does not decay at the hinted rate {hint}")]
    TailNotDecaying { hint: f64 },
    #[error("non-finite value encountered at t = {0}")]
    NonFiniteValue(f64),
    #[error("matrix determinant {0} violates det = 1")]
    DeterminantViolation(f64),
    #[error("index {k} is not in Gamma_{n}")]
    IndexNotInGamma { n: i32, k: i32 },
    #[error("k = 0 has no parity class Z(k)")]
    ZeroIndex,
    #[error("spectral parameter {0} is an integer; connection formula undefined")]
    IntegerSpectralParam(Complex64),
    #[error("c-function indeterminate at {0}: numerator pole not cancelled")]
    IndeterminatePoint(Complex64),
    #[error("second solution is singular at t = 0")]
    SingularAtOrigin,
    #[error("spectral parameter {0} lies in the exceptional set B")]
    SpectralParamInB(Complex64),
    #[error("spectral parameter {0} has nonpositive real part")]
    NonpositiveRealPart(Complex64),
    #[error("spectral parameter {0} lies in the excluded region B1")]
    ExcludedRegion(Complex64),
    #[error("Re lambda = {0} <= 1: kernel not integrable against the Haar density")]
    NotIntegrableRegion(f64),
    #[error("spectral parameter {0} outside the open strip 0 < Re lambda < 1")]
    StripViolation(Complex64),
    #[error("coincident radii s = t = {0}: integrand meets K")]
    CoincidentRadii(f64),
    #[error("integral diverges: tail grows instead of decaying")]
    DivergentIntegral,
    #[error("empty sampling window for the decay functional")]
    EmptyWindow,
    #[error("pole collision: z^2 coincides with lambda^2 or lambda0^2 at {0}")]
    PoleCollision(Complex64),
    #[error("spectral parameter {0} excluded for the resolvent pairing")]
    ExcludedSpectralParam(Complex64),
    #[error("principal transform vanishes at lambda = {0}; representative undefined")]
    TransformZeroDivision(Complex64),
    #[error("transform decay at contour height {height} is {ratio:.3e} of its peak (limit 1e-6)")]
    InsufficientDecay { height: f64, ratio: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
