//! Exact expected signatures of Brownian motion and of its piecewise-linear
//! approximations.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensor`] holds the level-truncated free tensor algebra over `R^d`
//!   ([`TensorSeries`]) with exact rational or `f64` scalars.
//! * [`words`] enumerates and classifies words into the square, even,
//!   leading and non-square-pair classes.
//! * [`expected`] builds the Brownian expected signature, the one-segment
//!   expected signature and its `M`-fold concatenation, plus a split
//!   enumeration oracle for single coefficients.
//! * [`rate`] measures the projective-norm gap between the two and tabulates
//!   its first-order decay in the mesh.
//! * [`monte_carlo`] samples piecewise-linear Brownian paths and checks the
//!   empirical mean signature against the exact one.
//! * [`cli`] wires everything into the `esig` binary.

pub mod check;
pub mod cli;
mod error;
pub mod expected;
pub mod json;
pub mod monte_carlo;
pub mod rate;
pub mod scalar;
pub mod tensor;
pub mod word;
pub mod words;

pub use error::{Error, Result};
pub use expected::{
    brownian_expected_signature, coefficient_by_decomposition, lambda,
    one_step_expected_signature, pwl_expected_signature, ExpectedSignatureSpec,
};
pub use scalar::{parse_rational, Rational, Scalar, ScalarMode};
pub use tensor::TensorSeries;
pub use word::Word;
pub use words::{WordClass, WordClassReport};
