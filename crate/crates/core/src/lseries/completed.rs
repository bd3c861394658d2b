use rug::Float;

use super::integral::lambda_derivs_integral;
use super::sum::lambda_deriv_sum;
use super::types::{DerivativeRequest, LValueResult, Method, MethodTag, ParamsUsed, PlainDerivative};
use super::{check_fricke, check_weight};
use crate::error::{Error, Result};
use crate::numerics::{pi, Complex, PrecisionContext};
use crate::qseries::FormSpec;

/// True when `1 + i^{k+2m}` vanishes, i.e. `k/2 + m` is odd.
pub fn sign_factor_vanishes(k: u32, m: usize) -> bool {
    (k as usize / 2 + m) % 2 == 1
}

/// `(L*)^(m)(f, k/2) = (1 + i^{k+2m}) Λ^(m)(f, k/2)` for a holomorphic form,
/// with the plain derivative `L^(m)(k/2)` attached.
pub fn completed_deriv_integral(req: &DerivativeRequest) -> Result<LValueResult> {
    completed_deriv(req, Method::Integral)
}

/// As [`completed_deriv_integral`] but by the method named in the request.
pub fn completed_deriv(req: &DerivativeRequest, method: Method) -> Result<LValueResult> {
    let form = &req.form;
    check_fricke(form)?;
    let k = check_weight(form)?;
    if !form.is_holomorphic() {
        return Err(Error::Precondition("completed derivatives at the centre need a holomorphic form".into()));
    }
    let bits = req.ctx.bits();
    let mut out = if sign_factor_vanishes(k, req.m) {
        LValueResult {
            value: Complex::zero(bits),
            method: MethodTag::TrivialZero,
            error_estimate: 0.0,
            params: ParamsUsed { prec_bits: req.ctx.work_bits(), ..Default::default() },
            wall_time: Default::default(),
            plain: None,
        }
    } else {
        let mut r = match method {
            Method::Sum => lambda_deriv_sum(req)?,
            _ => lambda_derivs_integral(form, &[req.m], &req.ctx, req.quad_degree)?.remove(0),
        };
        r.value = r.value.scale_f64(2.0);
        r.error_estimate *= 2.0;
        r
    };
    out.plain = Some(PlainDerivative { value: plain_from_completed(form, &out.value, bits)?, caveat: !req.assume_lower_vanish });
    Ok(out)
}

/// `(L*)^(m) / ((√N/2π)^{k/2} Γ(k/2))`, which equals `L^(m)(k/2)` when all
/// lower derivatives vanish.
pub fn plain_from_completed(form: &FormSpec, completed: &Complex, bits: u32) -> Result<Complex> {
    let k = check_weight(form)?;
    let base = Float::with_val(bits, form.level()).sqrt() / (pi(bits) * 2u32);
    let mut denom = Float::with_val(bits, 1);
    for _ in 0..k / 2 {
        denom *= &base;
    }
    // Γ(k/2) = (k/2 − 1)!
    for j in 2..k / 2 {
        denom *= j;
    }
    Ok(completed.div_real(&denom))
}

/// Both methods for one derivative, and whether they agree.
#[derive(Debug)]
pub struct CrossValidation {
    pub integral: Result<LValueResult>,
    pub sum: Result<LValueResult>,
    /// `|integral − sum|` when both succeeded.
    pub difference: Option<f64>,
    pub tolerance: f64,
    pub agree: bool,
}

/// Evaluates `Λ^(m)` by both methods. Failures are reported in the result,
/// not returned as errors.
pub fn cross_validate(form: &FormSpec, m: usize, ctx: &PrecisionContext) -> CrossValidation {
    let req = DerivativeRequest::new(form.clone(), m, ctx.clone());
    let integral = lambda_derivs_integral(form, &[m], ctx, None).map(|mut v| v.remove(0));
    let sum = lambda_deriv_sum(&req);
    let (difference, tolerance) = match (&integral, &sum) {
        (Ok(a), Ok(b)) => {
            let d = (&a.value - &b.value).abs_f64();
            let scale = a.value.abs_f64().max(1.0);
            (Some(d), (a.error_estimate + b.error_estimate).max(ctx.target_eps() * scale) * 4.0)
        }
        _ => (None, f64::NAN),
    };
    let agree = difference.is_some_and(|d| d <= tolerance);
    CrossValidation { integral, sum, difference, tolerance, agree }
}
