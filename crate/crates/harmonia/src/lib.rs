//! Harmonic analysis on the radial sections of SL(2, R): spherical
//! eigenfunctions, the cone of recessive kernels `b_lambda`, spherical
//! Fourier transforms, and contour-based resolvent reconstruction.

pub mod error;
pub mod numerics;
pub mod sl2;
pub mod eigenfn;
pub mod profile;
pub mod bkernel;
pub mod fourier;
pub mod resolvent;
pub mod cli;

pub use error::{Error, Result};

// The guide chapters double as documentation tests: every fenced Rust block
// in book/src is compiled (and, unless marked `no_run`, executed) by
// `cargo test --doc`.
#[doc = include_str!("../../../book/src/introduction.md")]
#[doc(hidden)]
pub mod _guide_introduction {}
#[doc = include_str!("../../../book/src/eigenfunctions.md")]
#[doc(hidden)]
pub mod _guide_eigenfunctions {}
#[doc = include_str!("../../../book/src/kernel.md")]
#[doc(hidden)]
pub mod _guide_kernel {}
#[doc = include_str!("../../../book/src/transforms.md")]
#[doc(hidden)]
pub mod _guide_transforms {}
#[doc = include_str!("../../../book/src/reconstruction.md")]
#[doc(hidden)]
pub mod _guide_reconstruction {}
#[doc = include_str!("../../../book/src/cli.md")]
#[doc(hidden)]
pub mod _guide_cli {}
#[doc = include_str!("../../../README.md")]
#[doc(hidden)]
pub mod _readme {}
