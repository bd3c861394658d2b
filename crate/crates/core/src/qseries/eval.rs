//! Truncated evaluation of `f(z) = Σ a(n) e^{2πinz}`.

use rug::Float;

use super::forms::{FormSpec, GrowthBound};
use crate::error::{Error, Result};
use crate::numerics::{pi, Complex, PrecisionContext};

/// Hard cap on the Fourier truncation order.
pub const MAX_TRUNCATION: i64 = 50_000_000;

/// `ln` of the majorant of `|a(n)|` for `n ≥ 1`.
#[derive(Clone, Copy, Debug)]
enum Majorant {
    /// `|a(n)| ≤ d(n) n^{(k−1)/2} ≤ n^{(k+1)/2}`.
    Deligne { half_k1: f64 },
    Fitted(GrowthBound),
}

impl Majorant {
    fn for_form(form: &FormSpec) -> Result<Self> {
        Ok(if form.deligne_applicable() {
            Majorant::Deligne { half_k1: (form.weight() as f64 + 1.0) / 2.0 }
        } else {
            Majorant::Fitted(form.growth_bound()?)
        })
    }

    fn ln_at(&self, n: f64) -> f64 {
        match *self {
            Majorant::Deligne { half_k1 } => half_k1 * n.ln(),
            Majorant::Fitted(g) => g.amplitude.ln() + g.exponent * n.sqrt(),
        }
    }

    /// `ln sup_{n ≥ m} t(n+1)/t(n)` for the term `t(n) = bound(n) e^{−decay·n}`.
    fn ln_ratio_from(&self, m: f64, decay: f64) -> f64 {
        let growth = match *self {
            Majorant::Deligne { half_k1 } => half_k1 * ((m + 1.0) / m).ln(),
            Majorant::Fitted(g) => g.exponent * ((m + 1.0).sqrt() - m.sqrt()),
        };
        growth - decay
    }
}

/// `ln` of a bound on `Σ_{n>M} |a(n)| e^{−decay·n}`, or `None` when the
/// geometric majorant does not yet apply.
fn ln_tail(maj: &Majorant, m: i64, decay: f64) -> Option<f64> {
    let first = (m + 1) as f64;
    let ln_rho = maj.ln_ratio_from(first, decay);
    if ln_rho >= 0.0 {
        return None;
    }
    Some(maj.ln_at(first) - decay * first - (-(ln_rho.exp_m1())).ln())
}

/// Least `M` with `Σ_{n>M} |a(n)| e^{−2πn/√N} < eps`, using Deligne's bound
/// when applicable and the fitted growth bound otherwise.
pub fn truncation_order(form: &FormSpec, eps: f64) -> Result<i64> {
    if !(eps > 0.0) {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    let decay = 2.0 * std::f64::consts::PI / (form.level() as f64).sqrt();
    let maj = Majorant::for_form(form)?;
    let target = eps.ln();
    // exponential search, then bisection on the monotone tail bound
    let ok = |m: i64| ln_tail(&maj, m, decay).is_some_and(|t| t < target);
    let mut hi = 1;
    while !ok(hi) {
        hi *= 2;
        if hi > MAX_TRUNCATION {
            return Err(Error::NoConvergence(format!("Fourier truncation exceeds {MAX_TRUNCATION} for eps = {eps:e}")));
        }
    }
    let mut lo = hi / 2;
    if lo == 0 || ok(lo) {
        return Ok(if ok(0) { 0 } else { lo.max(1) });
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Extra bits for summing a principal part `q^{−n₀}` at `Im z = 1/√N`.
pub fn principal_part_guard_bits(form: &FormSpec) -> u32 {
    let n0 = form.pole_order() as f64;
    (2.0 * std::f64::consts::PI * n0 / (form.level() as f64).sqrt() * std::f64::consts::LOG2_E).ceil() as u32
}

/// Coefficients converted once for repeated evaluation.
#[derive(Clone, Debug)]
pub struct FormEvaluator {
    /// `a(1..=M)`.
    positive: Vec<Float>,
    /// `(n, a(n))` for `n < 0`.
    principal: Vec<(i64, Float)>,
    prec: u32,
    out_prec: u32,
    real_coeffs: bool,
    truncation: i64,
}

impl FormEvaluator {
    /// Prepares evaluation truncated at `q^truncation`.
    pub fn new(form: &FormSpec, truncation: i64, ctx: &PrecisionContext) -> Result<Self> {
        let e = form.expansion();
        if e.n_max() < truncation {
            return Err(Error::InsufficientOrder { available: e.n_max(), required: truncation });
        }
        let prec = ctx.bits() + principal_part_guard_bits(form);
        let positive = (1..=truncation).map(|n| Float::with_val(prec, &e.coeff(n))).collect();
        let principal = e.terms().filter(|(n, _)| *n < 0).map(|(n, c)| (n, Float::with_val(prec, c))).collect();
        Ok(FormEvaluator { positive, principal, prec, out_prec: ctx.bits(), real_coeffs: true, truncation })
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// True when all coefficients are real (always, for rational input).
    pub fn real_coefficients(&self) -> bool {
        self.real_coeffs
    }

    /// `Σ a(n) q^n` with `q = e^{2πiz}`; principal part first, then the
    /// positive part by Horner's rule.
    pub fn eval(&self, z: &Complex) -> Result<Complex> {
        if !(z.im > 0) {
            return Err(Error::Domain("q-expansions are evaluated on the upper half-plane".into()));
        }
        let p = self.prec;
        let two_pi_i_z = z.rounded(p).mul_i().scale(&Float::with_val(p, pi(p) * 2u32));
        let q = two_pi_i_z.exp();
        let mut acc = Complex::zero(p);
        if !self.principal.is_empty() {
            let qinv = q.recip();
            for (n, c) in &self.principal {
                acc += &qinv.powi(-n).scale(c);
            }
        }
        let mut h = Complex::zero(p);
        for c in self.positive.iter().rev() {
            h = &h * &q;
            h.re += c;
        }
        acc += &(&h * &q);
        Ok(acc.rounded(self.out_prec))
    }
}

/// `f(z)` truncated so that the tail is below `ctx.target_eps()` at
/// `Im z = 1/√N`.
pub fn eval_form(form: &FormSpec, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let m = truncation_order(form, ctx.target_eps())?;
    FormEvaluator::new(form, m, ctx)?.eval(z)
}
