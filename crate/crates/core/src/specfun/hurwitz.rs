//! Hurwitz zeta `ζ(s, z)` and its `s`-derivatives by Euler–Maclaurin
//! summation carried out in jet arithmetic.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{bernoulli, pi, principal_log, Complex, Jet, PrecisionContext};

/// Euler–Maclaurin parameters: `m_em` terms summed directly, `l_em`
/// Bernoulli correction terms, and the certified bound on the remainder of
/// the underived value.
#[derive(Clone, Debug, PartialEq)]
pub struct EMParams {
    pub m_em: usize,
    pub l_em: usize,
    pub err_bound: f64,
    /// `2(1 − Re s0)`, the weight the bound was computed for.
    k_eff: f64,
}

/// Largest `t` tried by [`hurwitz_params`] (`M = L = t`).
pub const MAX_EM_TERMS: usize = 4000;

impl EMParams {
    /// Parameters with a given shift and term count; the bound is filled in
    /// for `s0` and derivative order `r`.
    pub fn new(s0: &Complex, r: usize, m_em: usize, l_em: usize) -> Result<Self> {
        let k_eff = 2.0 * (1.0 - s0.re.to_f64());
        if m_em < 2 || (l_em as f64) <= k_eff / 4.0 || l_em == 0 {
            return Err(Error::Precondition(format!(
                "Euler-Maclaurin needs M > 1 and L > k/4 (M = {m_em}, L = {l_em}, k = {k_eff})"
            )));
        }
        let err_bound = log_bound(s0, r, m_em, l_em, k_eff).exp();
        Ok(EMParams { m_em, l_em, err_bound, k_eff })
    }

    /// Bound on the `j`-th jet coefficient `ζ^(j)(s0, z) / j!`.
    pub fn coeff_bound(&self, j: usize) -> f64 {
        self.err_bound * (8.0 * (self.m_em as f64 + 1.0)).ln().powi(j as i32)
    }

    /// Bound on `ζ^(j)(s0, z)`, i.e. `B·j!·log(8(M+1))^j`.
    pub fn deriv_bound(&self, j: usize) -> f64 {
        let fact: f64 = (1..=j).map(|i| i as f64).product();
        fact * self.coeff_bound(j)
    }

    /// Extra working bits that absorb cancellation in the direct sum, whose
    /// terms grow like `M^{k/2}`.
    fn precision_boost(&self) -> u32 {
        let k2 = (self.k_eff / 2.0).max(0.0);
        (k2 * (self.m_em as f64 + 2.0).log2()).ceil() as u32 + 8
    }
}

/// `ln` of `2 M^e / (2πM)^{2L} · P / (L − k/4)`, where `P` is `|(s0)_{2L}|`
/// for `r = 0` and the Cauchy-estimate majorant `Π (|s0 + i| + 1)` for
/// `r ≥ 1` (needed because `(s0)_{2L}` vanishes at non-positive integers).
fn log_bound(s0: &Complex, r: usize, m: usize, l: usize, k: f64) -> f64 {
    let (sr, si) = s0.to_f64_pair();
    let m_f = m as f64;
    let exponent = (2.0 * k).max(k / 2.0);
    let mut log_p = 0.0;
    for i in 0..2 * l {
        let a = (sr + i as f64).hypot(si);
        log_p += if r == 0 { a.ln() } else { (a + 1.0).ln() };
    }
    std::f64::consts::LN_2 + exponent * m_f.ln()
        - 2.0 * l as f64 * (2.0 * std::f64::consts::PI * m_f).ln()
        + log_p
        - (l as f64 - k / 4.0).ln()
}

/// Chooses `(M, L)` along `M = max(2, t)`, `L = max(⌈k/4⌉ + 1, t)` until the
/// bound on the `r`-th derivative drops below `eps`.
pub fn hurwitz_params(s0: &Complex, r: usize, eps: f64, _ctx: &PrecisionContext) -> Result<EMParams> {
    if !(eps > 0.0) {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    let k_eff = 2.0 * (1.0 - s0.re.to_f64());
    let l_min = ((k_eff / 4.0).ceil() + 1.0).max(1.0) as usize;
    for t in 1..=MAX_EM_TERMS {
        let params = EMParams::new(s0, r, t.max(2), t.max(l_min))?;
        if params.deriv_bound(r) < eps {
            return Ok(params);
        }
    }
    Err(Error::NoConvergence(format!(
        "no Euler-Maclaurin parameters up to M = L = {MAX_EM_TERMS} reach eps = {eps:e}"
    )))
}

type ScaledBernoulli = RwLock<HashMap<(usize, u32), Arc<Vec<Float>>>>;

/// `B_{2l} / (2l)!` for `l = 1..=L`, cached per precision.
fn scaled_bernoulli(l_max: usize, prec: u32) -> Arc<Vec<Float>> {
    static CACHE: OnceLock<ScaledBernoulli> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.read().unwrap().get(&(l_max, prec)) {
        return v.clone();
    }
    let mut fact = Integer::from(1);
    let mut out = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        fact *= (2 * l - 1) as u32;
        fact *= (2 * l) as u32;
        let q = bernoulli(l) / Rational::from(&fact);
        out.push(Float::with_val(prec, &q));
    }
    let out = Arc::new(out);
    cache.write().unwrap().insert((l_max, prec), out.clone());
    out
}

/// `s0` as an integer if it is real and integral.
fn integer_point(s0: &Complex) -> Option<i64> {
    if s0.im.is_zero() && s0.re.is_integer() {
        s0.re.to_i32_saturating().map(|v| v as i64)
    } else {
        None
    }
}

/// Jet of `w^{-s}` around `s0`: `w^{-s0} (−log w)^j / j!`.
fn power_jet(w: &Complex, s0: &Complex, s_int: Option<i64>, order: usize) -> Result<Jet> {
    let log_w = principal_log(w)?;
    let base = match s_int {
        Some(n) => w.powi(-n),
        None => (&-s0 * &log_w).exp(),
    };
    Ok(Jet::exp_linear(base, &-log_w, order))
}

/// Jet of `s ↦ ζ(s, z)` at `s0` to order `r`.
///
/// The remainder of coefficient `j` is bounded by `params.coeff_bound(j)`.
pub fn hurwitz_zeta_jet(s0: &Complex, r: usize, z: &Complex, params: &EMParams, ctx: &PrecisionContext) -> Result<Jet> {
    let out_prec = ctx.bits();
    let p = out_prec + params.precision_boost();
    let s0 = s0.rounded(p);
    let z = z.rounded(p);
    if s0.im.is_zero() && s0.re == 1 {
        return Err(Error::Precondition("ζ(s, z) has a pole at s = 1".into()));
    }
    if z.re.is_sign_negative() && !z.re.is_zero() || z.is_zero() {
        return Err(Error::Precondition("hurwitz_zeta_jet needs Re z ≥ 0 and z ≠ 0".into()));
    }
    if params.m_em < 2 || params.l_em == 0 {
        return Err(Error::Precondition("invalid Euler-Maclaurin parameters".into()));
    }
    let s_int = integer_point(&s0);
    let one = Complex::one(p);

    let mut acc = Jet::constant(Complex::zero(p), r);
    let mut w = z.clone();
    for _ in 0..params.m_em {
        acc.add_assign(&power_jet(&w, &s0, s_int, r)?);
        w += &one;
    }

    // (z+M)^{1-s} / (s-1)
    let w_pow = power_jet(&w, &s0, s_int, r)?;
    let shifted = Jet::constant(w.clone(), r);
    let denom = Jet::variable(&s0 - &one, r).reciprocal()?;
    acc.add_assign(&(&(&w_pow * &shifted) * &denom));

    // (z+M)^{-s} [1/2 + Σ B_{2l}/(2l)! (s)_{2l-1} / (z+M)^{2l-1}]
    let bern = scaled_bernoulli(params.l_em, p);
    let w_inv = w.recip();
    let w_inv2 = w_inv.square();
    let mut bracket = Jet::constant(Complex::from_f64(p, 0.5, 0.0), r);
    let mut poch = Jet::variable(s0.clone(), r);
    let mut w_pow_neg = w_inv.clone();
    for l in 1..=params.l_em {
        if l > 1 {
            let a = &s0 + &Complex::from_f64(p, (2 * l - 3) as f64, 0.0);
            let b = &a + &one;
            poch = &(&poch * &Jet::variable(a, r)) * &Jet::variable(b, r);
            w_pow_neg = &w_pow_neg * &w_inv2;
        }
        let c = w_pow_neg.scale(&bern[l - 1]);
        bracket.add_assign(&poch.scale(&c));
    }
    acc.add_assign(&(&w_pow * &bracket));

    Ok(Jet::from_coeffs(acc.into_coeffs().into_iter().map(|c| c.rounded(out_prec)).collect()))
}

/// `log Γ(z)`, the branch continuous on the upper half-plane that is real on
/// the positive axis, computed as `ζ'(0, z) + ½ log 2π`.
pub fn log_gamma(z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if z.im.is_sign_negative() && !z.im.is_zero() {
        return Err(Error::Domain("log_gamma is defined here for Im z ≥ 0".into()));
    }
    if z.im.is_zero() && (z.re.is_zero() || z.re.is_sign_negative()) {
        return Err(Error::Domain("log_gamma has poles at non-positive integers and a cut on the negative axis".into()));
    }
    let p = ctx.bits();
    let mut z = z.rounded(p + 16);
    // Shift right until Re z ≥ 0, subtracting log z + … + log(z+n-1).
    let mut correction = Complex::zero(p + 16);
    let one = Complex::one(p + 16);
    while z.re.is_sign_negative() && !z.re.is_zero() {
        correction -= &principal_log(&z)?;
        z += &one;
    }
    let s0 = Complex::zero(p);
    let params = hurwitz_params(&s0, 1, ctx.target_eps() * 2f64.powi(-4), ctx)?;
    let jet = hurwitz_zeta_jet(&s0, 1, &z, &params, ctx)?;
    let two_pi = Float::with_val(p, pi(p) * 2u32);
    let half_log = Float::with_val(p, two_pi.ln() / 2u32);
    let mut v = jet.coeff(1).clone();
    v.re += half_log;
    Ok((&v + &correction).rounded(p))
}

/// Real `Γ(x)` for real `x` not a non-positive integer, via [`log_gamma`]
/// and the recurrence `Γ(x) = Γ(x + n) / (x (x+1) … (x+n-1))`.
pub fn gamma_real(x: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits();
    if x.is_integer() && (x.is_zero() || x.is_sign_negative()) {
        return Err(Error::Domain("Γ has poles at non-positive integers".into()));
    }
    let mut y = Float::with_val(p, x);
    let mut denom = Float::with_val(p, 1);
    while y < 1 {
        denom *= &y;
        y += 1u32;
    }
    let lg = log_gamma(&Complex::from_real(y), ctx)?;
    Ok(lg.re.exp() / denom)
}
