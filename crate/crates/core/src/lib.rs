//! Fast Fourier transforms for blocklengths `N ≡ 0 (mod 4)` built from a
//! matrix Laurent series decomposition of the DFT matrix.
//!
//! The exponent matrix `kn mod N` is split into `N/4` residue classes. Each
//! class contributes a Gaussian-integer matrix whose entries are the free
//! eigenvalue powers `1, -j, -1, j`; only the class twiddle `W^m` costs real
//! multiplications. Pairing `W^m` with `W^{-m}` and rank-factoring the paired
//! real/imaginary matrices over the rationals yields an executable plan whose
//! multiplication count equals the sum of the factor ranks.
//!
//! The crate is organised bottom up:
//!
//! * [`linalg`] exact rational row reduction and rank factorisation,
//! * [`classes`] exponent matrix, residue classes and class matrices,
//! * [`plan`] branch matrices, complexity accounting and plan compilation,
//! * [`exec`] instrumented plan execution and the direct DFT oracle,
//! * [`bounds`] Heideman and Heideman-Burrus lower bounds,
//! * [`planfile`] the JSON plan document,
//! * [`cli`] the command-line front end.
//!
//! Exact arithmetic is generic over [`ExactScalar`] and floating-point work is
//! generic over [`Real`]; the aliases below pin the defaults.

pub mod bounds;
pub mod classes;
pub mod cli;
mod error;
pub mod exec;
pub mod linalg;
pub mod plan;
pub mod planfile;
mod scalar;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, Real};

/// Default exact scalar. Entries of every matrix the decomposition produces
/// stay in `{-2, ..., 2}`, so machine-word rationals never come close to
/// overflowing for the supported blocklengths.
pub type Rational = num_rational::Ratio<i64>;

/// Arbitrary-precision rational, for cross-checking [`Rational`] results.
pub type BigRational = num_rational::BigRational;

pub type RationalMatrix = linalg::Matrix<Rational>;
pub type IntMatrix = linalg::Matrix<i8>;

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;

pub type FftPlan64 = plan::FftPlan<f64>;
pub type FftPlan32 = plan::FftPlan<f32>;
