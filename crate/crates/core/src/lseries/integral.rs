//! `Λ^(m)(f, k/2) = i^{2m−k/2} N^{k/4} ∫₀¹ f(x + i/√N) Z_m(x + i/√N) dx`.

use std::time::Instant;

use rug::ops::Pow;
use rug::Float;

use super::types::{DerivativeRequest, LValueResult, MethodTag, ParamsUsed};
use super::{check_fricke, check_weight};
use crate::error::Result;
use crate::numerics::{Complex, PrecisionContext};
use crate::qseries::{truncation_order, FormEvaluator, FormSpec};
use crate::quad::{gauss_legendre, initial_degree, integrate_adaptive, integrate_segment_multi, AdaptiveIntegral, QuadratureRule};
use crate::specfun::{hurwitz_params, hurwitz_zeta_jet, log_gamma, log_i_over_sqrt_n, zm_from_jet, EMParams};

/// Shared per-form setup: the evaluator of `f` on the segment and error
/// budgets.
pub(crate) struct Segment {
    pub evaluator: FormEvaluator,
    pub y: Float,
    /// Bound on `|f|` along the segment.
    pub f_max: f64,
    /// Budget for the integral itself, before the `N^{k/4}` prefactor.
    pub eps_integral: f64,
    /// Bound on the Fourier tail along the segment.
    pub tail: f64,
    pub n0: usize,
}

impl Segment {
    pub fn new(form: &FormSpec, ctx: &PrecisionContext, scale: f64, quad_degree: Option<usize>) -> Result<Self> {
        let eps_integral = ctx.target_eps() / scale;
        let tail = eps_integral * 2f64.powi(-20);
        let m = truncation_order(form, tail)?;
        let evaluator = FormEvaluator::new(form, m, ctx)?;
        let level = form.level() as f64;
        let decay = 2.0 * std::f64::consts::PI / level.sqrt();
        let f_max = form
            .expansion()
            .terms()
            .filter(|(n, _)| *n <= m)
            .map(|(n, c)| c.to_f64().abs() * (-decay * n as f64).exp())
            .sum::<f64>()
            + tail;
        let y = Float::with_val(ctx.bits(), form.level()).sqrt().recip();
        Ok(Segment { evaluator, y, f_max, eps_integral, tail, n0: quad_degree.unwrap_or_else(|| initial_degree(form.level())) })
    }

    pub fn point(&self, x: &Float) -> Complex {
        Complex::new(x.clone(), Float::with_val(x.prec(), &self.y))
    }

    /// Adaptive doubling from `n0`, or a fixed degree compared with half of it.
    pub fn integrate<G>(&self, ctx: &PrecisionContext, fixed: bool, g: G) -> Result<AdaptiveIntegral>
    where
        G: Fn(&QuadratureRule) -> Result<Vec<Complex>>,
    {
        if fixed {
            let values = g(&*gauss_legendre(self.n0, ctx)?)?;
            let residual = if self.n0 >= 2 {
                let coarse = g(&*gauss_legendre(self.n0 / 2, ctx)?)?;
                coarse.iter().zip(&values).map(|(a, b)| (a - b).abs_f64()).fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            return Ok(AdaptiveIntegral { values, degree: self.n0, residual });
        }
        integrate_adaptive(self.n0, ctx, self.eps_integral, |rule| g(rule))
    }
}

/// `N^{k/4}` at `bits` precision.
pub(crate) fn level_power(level: u64, k: u32, bits: u32) -> Float {
    Float::with_val(bits, level).sqrt().pow(k / 2)
}

/// `Λ^(m)(f, k/2)` for every `m` in `orders`, sharing one pass of `f` and
/// Hurwitz zeta evaluations across orders.
pub fn lambda_derivs_integral(form: &FormSpec, orders: &[usize], ctx: &PrecisionContext, quad_degree: Option<usize>) -> Result<Vec<LValueResult>> {
    check_fricke(form)?;
    let k = check_weight(form)?;
    let start = Instant::now();
    let level = form.level();
    let bits = ctx.bits();
    let r_max = orders.iter().copied().max().unwrap_or(0);
    let scale = level_power(level, k, 64).to_f64();
    let seg = Segment::new(form, ctx, scale, quad_degree)?;

    let lambda = log_i_over_sqrt_n(level, bits);
    let lam_abs = lambda.abs_f64();
    let s0 = Complex::from_f64(bits, 1.0 - k as f64 / 2.0, 0.0);
    // kernel error ≤ Σ_j C(m,j)|λ|^j ζ-error ≤ (1+|λ|)^m · max bound
    let eps_kernel = seg.eps_integral * 2f64.powi(-10) / (seg.f_max * (1.0 + lam_abs).powi(r_max as i32));
    let params: EMParams = hurwitz_params(&s0, r_max, eps_kernel, ctx)?;

    let integral = seg.integrate(ctx, quad_degree.is_some(), |rule| {
        integrate_segment_multi(
            |x| seg.evaluator.eval(&seg.point(x)),
            |x| {
                let jet = hurwitz_zeta_jet(&s0, r_max, &seg.point(x), &params, ctx)?;
                Ok(orders.iter().map(|&m| zm_from_jet(&jet, m, &lambda)).collect())
            },
            rule,
            seg.evaluator.real_coefficients(),
        )
    })?;

    let prefactor_mag = level_power(level, k, bits);
    let elapsed = start.elapsed();
    let zmax_guess = 1.0 + lam_abs;
    Ok(orders
        .iter()
        .zip(integral.values)
        .map(|(&m, v)| {
            let sign = Complex::i_pow(2 * m as i64 - k as i64 / 2, bits);
            let value = (&sign * &v).scale(&prefactor_mag);
            let kernel_err = seg.f_max * (1.0 + lam_abs).powi(m as i32) * params.deriv_bound(m);
            let tail_err = seg.tail * zmax_guess.powi(m as i32 + 1) * 8.0;
            let error_estimate = scale * (integral.residual + kernel_err + tail_err);
            LValueResult {
                value,
                method: MethodTag::Integral,
                error_estimate,
                params: ParamsUsed {
                    quad_degree: Some(integral.degree),
                    truncation: Some(seg.evaluator.truncation()),
                    em: Some((params.m_em, params.l_em)),
                    prec_bits: ctx.work_bits(),
                },
                wall_time: elapsed,
                plain: None,
            }
        })
        .collect())
}

/// `Λ^(m)(f, k/2)` by the segment integral.
pub fn lambda_deriv_integral(req: &DerivativeRequest) -> Result<LValueResult> {
    Ok(lambda_derivs_integral(&req.form, &[req.m], &req.ctx, req.quad_degree)?.remove(0))
}

/// `(L*)'(1) = 2√N i ∫₀¹ f(z) (log Γ(z) + (log √N − πi/2) z) dx` for
/// weight 2.
pub fn weight2_deriv(form: &FormSpec, ctx: &PrecisionContext) -> Result<LValueResult> {
    check_fricke(form)?;
    if form.weight() != 2 || !form.is_holomorphic() {
        return Err(crate::Error::Precondition("the log-Gamma path needs a holomorphic weight-2 form".into()));
    }
    let start = Instant::now();
    let bits = ctx.bits();
    let level = form.level();
    let sqrt_n = Float::with_val(bits, level).sqrt();
    let scale = 2.0 * sqrt_n.to_f64();
    let seg = Segment::new(form, ctx, scale, None)?;
    // log √N − πi/2 = −log(i/√N)
    let c = -&log_i_over_sqrt_n(level, bits);
    let lg_ctx = ctx.boosted(0).with_target_eps(seg.eps_integral * 2f64.powi(-10) / seg.f_max)?;
    let integral = seg.integrate(ctx, false, |rule| {
        integrate_segment_multi(
            |x| seg.evaluator.eval(&seg.point(x)),
            |x| {
                let z = seg.point(x);
                let lg = log_gamma(&z, &lg_ctx)?;
                Ok(vec![&lg.rounded(bits) + &(&c * &z)])
            },
            rule,
            true,
        )
    })?;
    let prefactor = Complex::i(bits).scale(&Float::with_val(bits, &sqrt_n * 2u32));
    let value = &prefactor * &integral.values[0];
    Ok(LValueResult {
        value,
        method: MethodTag::LogGamma,
        error_estimate: scale * (integral.residual + seg.eps_integral * 2f64.powi(-9) + seg.tail * 8.0),
        params: ParamsUsed {
            quad_degree: Some(integral.degree),
            truncation: Some(seg.evaluator.truncation()),
            em: None,
            prec_bits: ctx.work_bits(),
        },
        wall_time: start.elapsed(),
        plain: None,
    })
}
