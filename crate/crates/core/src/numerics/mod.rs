//! Scalars, precision policy, jets and cached constants.

mod bernoulli;
mod complex;
mod constants;
mod jet;
mod precision;

pub use bernoulli::{bernoulli, bernoulli_float};
pub use complex::{format_decimal, principal_log, Complex};
pub use constants::{euler_gamma, gamma_taylor_coeffs, pi, zeta_int};
pub use jet::{pochhammer_jet, Jet};
pub use precision::PrecisionContext;

/// Exact rational scalar, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = rug::Rational;

/// Exact big integer.
pub type ExactInteger = rug::Integer;
