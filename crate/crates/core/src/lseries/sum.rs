//! `Λ^(r)(f, k/2) = Σ_{n ≥ −n₀, n ≠ 0} a(n) F(ν, r)(2πn/√N)` with
//! `ν = k/2 − 1` and `F(ν, r) = r!·E_{−ν}^r`.

use std::time::Instant;

use rug::Float;

use super::types::{DerivativeRequest, LValueResult, MethodTag, ParamsUsed};
use super::{check_fricke, check_weight};
use crate::error::{Error, Result};
use crate::numerics::{pi, Complex, PrecisionContext};
use crate::qseries::{principal_part_guard_bits, truncation_order, FormSpec};
use crate::specfun::{exp_integral_E, negn_table};

/// Smallest `M` with `2πM/√N ≥ 1`, below which the `e^{−z}` tail
/// majorants do not hold.
fn min_order(level: u64) -> i64 {
    ((level as f64).sqrt() / (2.0 * std::f64::consts::PI)).ceil() as i64
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `z_n = 2πn/√N` at `bits`; negative `n` is placed on the upper side of
/// the cut so the logarithm takes argument `+π`.
fn z_point(n: i64, two_pi_over_sqrt_n: &Float, bits: u32) -> Complex {
    let re = Float::with_val(bits, two_pi_over_sqrt_n * n);
    Complex::new(re, Float::with_val(bits, 0))
}

/// `Λ^(r)(f, k/2)` by the exponential-integral series.
pub fn lambda_deriv_sum(req: &DerivativeRequest) -> Result<LValueResult> {
    let form = &req.form;
    check_fricke(form)?;
    let k = check_weight(form)?;
    let start = Instant::now();
    let r = req.m;
    let nu = (k / 2 - 1) as usize;
    let ctx = &req.ctx;
    let factor = std::f64::consts::E * factorial((nu + r + 1) as u32);
    let tail_eps = ctx.target_eps() / (16.0 * factor);
    let m = truncation_order(form, tail_eps)?.max(min_order(form.level()));
    let e = form.expansion();
    if e.n_max() < m {
        return Err(Error::InsufficientOrder { available: e.n_max(), required: m });
    }
    let guard = principal_part_guard_bits(form);
    let bits = ctx.bits() + guard;
    let inner = ctx.boosted(guard);
    let step = Float::with_val(bits, pi(bits) * 2u32) / Float::with_val(bits, form.level()).sqrt();
    let mut acc = Complex::zero(bits);
    let mut abs_sum = 0.0;
    for (n, a) in e.terms().filter(|(n, _)| *n != 0 && *n <= m) {
        let z = z_point(n, &step, bits);
        let f = negn_table(nu, r, &z, &inner)?;
        let term = f.scale(&Float::with_val(bits, a));
        abs_sum += term.abs_f64();
        acc += &term;
    }
    let rounding = abs_sum * 2f64.powi(-(ctx.bits() as i32)) * (m as f64 + e.n_min().unsigned_abs() as f64 + 1.0).sqrt();
    Ok(LValueResult {
        value: acc.rounded(ctx.bits()),
        method: MethodTag::Sum,
        error_estimate: tail_eps * factor + rounding,
        params: ParamsUsed { quad_degree: None, truncation: Some(m), em: None, prec_bits: ctx.work_bits() },
        wall_time: start.elapsed(),
        plain: None,
    })
}

/// `L*(f, s) = Σ_{n≥1} a(n) [E_{1−s}(2πn/√N) + i^k E_{s−k+1}(2πn/√N)]` for a
/// holomorphic form and real `s`.
pub fn completed_l(form: &FormSpec, s: f64, ctx: &PrecisionContext) -> Result<LValueResult> {
    check_fricke(form)?;
    let k = check_weight(form)?;
    if !form.is_holomorphic() {
        return Err(Error::Precondition("the completed L-function series needs a holomorphic form".into()));
    }
    if !s.is_finite() {
        return Err(Error::Domain(format!("s must be finite, got {s}")));
    }
    let start = Instant::now();
    let p1 = 1.0 - s;
    let p2 = s - k as f64 + 1.0;
    // E_p(z) ≤ e^{−z} Γ(max(1−p, 1) + 1) e for z ≥ 1
    let gamma_bound = |p: f64| -> f64 { std::f64::consts::E * gamma_upper((1.0 - p).max(1.0) + 1.0) };
    let factor = gamma_bound(p1) + gamma_bound(p2);
    let tail_eps = ctx.target_eps() / (16.0 * factor);
    let m = truncation_order(form, tail_eps)?.max(min_order(form.level()));
    let e = form.expansion();
    if e.n_max() < m {
        return Err(Error::InsufficientOrder { available: e.n_max(), required: m });
    }
    let bits = ctx.bits();
    let step = Float::with_val(bits, pi(bits) * 2u32) / Float::with_val(bits, form.level()).sqrt();
    let ik = Complex::i_pow(k as i64, bits);
    let mut acc = Complex::zero(bits);
    let mut abs_sum = 0.0;
    for (n, a) in e.terms().filter(|(n, _)| *n >= 1 && *n <= m) {
        let z = z_point(n, &step, bits);
        let mut t = exp_integral_E(p1, &z, ctx)?;
        t += &(&ik * &exp_integral_E(p2, &z, ctx)?);
        let term = t.scale(&Float::with_val(bits, a));
        abs_sum += term.abs_f64();
        acc += &term;
    }
    Ok(LValueResult {
        value: acc,
        method: MethodTag::Sum,
        error_estimate: tail_eps * factor + abs_sum * 2f64.powi(-(ctx.work_bits() as i32)),
        params: ParamsUsed { quad_degree: None, truncation: Some(m), em: None, prec_bits: ctx.work_bits() },
        wall_time: start.elapsed(),
        plain: None,
    })
}

/// `Γ(x)` for `x ≥ 1` in double precision, used only for bounds.
fn gamma_upper(x: f64) -> f64 {
    let mut g = 1.0;
    let mut t = x;
    while t > 2.0 {
        t -= 1.0;
        g *= t;
    }
    // Γ(t) ≤ 1 on [1, 2]
    g.max(1.0)
}
