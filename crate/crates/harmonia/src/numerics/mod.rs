//! Foundational numerics: complex Gamma, Gauss hypergeometric 2F1, and the
//! adaptive quadrature engines used by every other module.

pub mod gamma;
pub mod hyp2f1;
pub mod quad;

pub use gamma::{gamma, gamma_real, ln_gamma};
pub use hyp2f1::{hyp2f1, hyp2f1_integral, hyp2f1_series};
pub use quad::{integrate_halfline, integrate_segment, tanh_sinh_01, QuadResult, QuadratureSpec};
