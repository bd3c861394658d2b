//! Central values and derivatives of L-functions of modular forms.

mod completed;
mod integral;
mod sum;
mod types;

pub use completed::{completed_deriv, completed_deriv_integral, cross_validate, plain_from_completed, sign_factor_vanishes, CrossValidation};
pub use integral::{lambda_deriv_integral, lambda_derivs_integral, weight2_deriv};
pub use sum::{completed_l, lambda_deriv_sum};
pub use types::{DerivativeRequest, LValueResult, Method, MethodTag, ParamsUsed, PlainDerivative};

use crate::error::{Error, Result};
use crate::qseries::FormSpec;

/// Fricke sign +1 and a vanishing constant term.
fn check_fricke(form: &FormSpec) -> Result<()> {
    if form.fricke() != 1 {
        return Err(Error::Precondition(format!("Fricke eigenvalue must be +1, got {}", form.fricke())));
    }
    if form.expansion().get(0).is_some_and(|c| !c.is_zero()) {
        return Err(Error::Precondition("the constant term must vanish".into()));
    }
    Ok(())
}

fn check_weight(form: &FormSpec) -> Result<u32> {
    let k = form.weight();
    if k < 2 || k % 2 == 1 {
        return Err(Error::Precondition(format!("weight must be even and at least 2, got {k}")));
    }
    Ok(k)
}
