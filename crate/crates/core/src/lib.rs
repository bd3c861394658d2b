//! Central values and central derivatives of L-series attached to holomorphic
//! and weakly holomorphic cusp forms that are invariant under the Fricke
//! involution.
//!
//! Two independent evaluators are provided:
//!
//! * an integral along the horizontal segment from `i/√N` to `i/√N + 1`
//!   against derivatives of the Hurwitz zeta function ([`lseries::lambda_deriv_integral`]);
//! * the classical series in generalized exponential integrals
//!   ([`lseries::lambda_deriv_sum`]).
//!
//! All analytic work is done in binary floating point at a caller-chosen
//! precision ([`PrecisionContext`]); q-expansions are exact.

pub mod error;
pub mod lseries;
pub mod numerics;
pub mod qseries;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use numerics::{Complex, ExactRational, Jet, PrecisionContext};
