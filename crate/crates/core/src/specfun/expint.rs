//! Generalized exponential integrals `E_p(z) = ∫₁^∞ e^{−zt} t^{−p} dt` and
//! their order derivatives.

use rug::Float;

use super::hurwitz::gamma_real;
use crate::error::{Error, Result};
use crate::numerics::{euler_gamma, gamma_taylor_coeffs, principal_log, Complex, PrecisionContext};

/// Bits lost to cancellation in the power series of `E_p(z)`, whose largest
/// term is about `e^{|z|}`.
pub fn series_boost(z: &Complex) -> u32 {
    let a = z.abs_f64();
    let re = z.re.to_f64().abs();
    (re.max(a) * std::f64::consts::LOG2_E).ceil() as u32 + (10.0 * (1.0 + a).log2()).ceil() as u32
}

/// Sums `Σ_{n≥n0} term(n)` until a term drops below `2^{-prec}·scale`,
/// where `scale` tracks the largest partial term seen.
fn sum_series(prec: u32, n0: usize, mut term: impl FnMut(usize) -> Complex) -> Complex {
    let mut acc = Complex::zero(prec);
    let mut peak = 0f64;
    let mut small = 0;
    for n in n0.. {
        let t = term(n);
        let a = t.abs_f64();
        peak = peak.max(a);
        acc += &t;
        // require a few consecutive negligible terms past the peak
        if n > n0 + 2 && (a == 0.0 || a <= peak * 2f64.powi(-(prec as i32) - 8)) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    acc
}

fn check_nonzero(z: &Complex) -> Result<()> {
    if z.is_zero() {
        return Err(Error::Domain("E_p(z) diverges at z = 0".into()));
    }
    Ok(())
}

/// `E_p(z)` for real order `p`, principal branch; on the negative real axis
/// the limit from the upper half-plane is returned.
#[allow(non_snake_case)]
pub fn exp_integral_E(p: f64, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_nonzero(z)?;
    if !p.is_finite() {
        return Err(Error::Domain("E_p needs a finite order".into()));
    }
    if p.fract() == 0.0 && p <= 0.0 {
        return e_negn_derivs(-p as usize, 0, z, ctx);
    }
    let out = ctx.bits();
    let prec = out + series_boost(z);
    let z = z.rounded(prec);
    let log_z = principal_log(&z)?;
    let minus_z = -&z;
    let v = if p.fract() == 0.0 {
        // positive integer order: ψ(p) branch
        let n = p as usize;
        let mut psi = -euler_gamma(prec);
        for j in 1..n {
            psi += Float::with_val(prec, 1) / j as u32;
        }
        let mut fact = Float::with_val(prec, 1);
        for j in 2..n {
            fact *= j as u32;
        }
        let lead = minus_z.powi(n as i64 - 1).div_real(&fact);
        let lead = &lead * &(&Complex::from_real(psi) - &log_z);
        let mut pow = Complex::one(prec);
        let series = sum_series(prec, 0, |k| {
            if k > 0 {
                pow = (&pow * &minus_z).div_real(&Float::with_val(prec, k));
            }
            if k + 1 == n {
                Complex::zero(prec)
            } else {
                pow.div_real(&Float::with_val(prec, k as f64 + 1.0 - p))
            }
        });
        &lead - &series
    } else {
        // z^{p-1} Γ(1-p) − Σ (−z)^k / (k! (1−p+k))
        let g = gamma_real(&Float::with_val(prec, 1.0 - p), &ctx.boosted(prec - out))?;
        let zp = log_z.scale_f64(p - 1.0).exp().scale(&g);
        let mut pow = Complex::one(prec);
        let series = sum_series(prec, 0, |k| {
            if k > 0 {
                pow = (&pow * &minus_z).div_real(&Float::with_val(prec, k));
            }
            pow.div_real(&Float::with_val(prec, 1.0 - p + k as f64))
        });
        &zp - &series
    };
    Ok(v.rounded(out))
}

/// `E₁^m(z) = (1/m!) ∫₁^∞ e^{−zt} (log t)^m t^{−1} dt` via
/// `P_{m+1}(−log z) + Σ_{n≥1} (−1)^{n−m−1} z^n / (n^{m+1} n!)`.
pub fn e1_log_derivs(m: usize, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_nonzero(z)?;
    let out = ctx.bits();
    let prec = out + series_boost(z);
    let wctx = ctx.boosted(prec - out);
    let z = z.rounded(prec);
    let t = -&principal_log(&z)?;
    let gam = gamma_taylor_coeffs(m + 1, &wctx);
    // P_{m+1}(t) = Σ_{j=0}^{m+1} γ_{m+1-j} t^j / j!
    let mut poly = Complex::zero(prec);
    let mut tj = Complex::one(prec);
    for j in 0..=m + 1 {
        if j > 0 {
            tj = (&tj * &t).div_real(&Float::with_val(prec, j));
        }
        poly += &tj.scale(&gam[m + 1 - j]);
    }
    let mut pow = Complex::one(prec);
    let sign0 = if m % 2 == 0 { 1.0 } else { -1.0 };
    let series = sum_series(prec, 1, |n| {
        pow = (&pow * &z).div_real(&Float::with_val(prec, n));
        let d = Float::with_val(prec, Float::u_pow_u(n as u32, (m + 1) as u32));
        // (−1)^{n−m−1} = (−1)^{m} · (−1)^{n+1}
        let s = if n % 2 == 1 { sign0 } else { -sign0 };
        pow.div_real(&d).scale_f64(s)
    });
    Ok((&poly + &series).rounded(out))
}

/// `E_{−n}^m(z) = (1/m!) ∫₁^∞ e^{−zt} t^n (log t)^m dt` (continued
/// analytically to `z ≠ 0`).
///
/// With `F(n, m) = m!·E_{−n}^m(z)` this uses
/// `F(n, m) = [δ_{m0} e^{−z} + n F(n−1, m) + m F(n−1, m−1)] / z`
/// starting from `F(−1, j) = j!·E₁^j(z)`.
pub fn e_negn_derivs(n: usize, m: usize, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    let f = negn_table(n, m, z, ctx)?;
    let mut fact = Float::with_val(ctx.bits(), 1);
    for j in 2..=m {
        fact *= j as u32;
    }
    Ok(f.div_real(&fact))
}

/// `F(n, m)` as defined for [`e_negn_derivs`], rounded to `ctx.bits()`.
pub fn negn_table(n: usize, m: usize, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    check_nonzero(z)?;
    let out = ctx.bits();
    let prec = out + series_boost(z) + 4 * (n as u32 + m as u32);
    let z = z.rounded(prec);
    let z_inv = z.recip();
    let emz = (-&z).exp();
    // row[j] = F(current n, j) for j = 0..=m
    let mut row: Vec<Complex> = Vec::with_capacity(m + 1);
    let inner = ctx.boosted(prec - out);
    let mut fact = Float::with_val(prec, 1);
    for j in 0..m {
        if j > 0 {
            fact *= j as u32;
        }
        row.push(e1_log_derivs(j, &z, &inner)?.scale(&fact));
    }
    row.push(Complex::zero(prec)); // F(-1, m) is never read when n ≥ 0
    for i in 0..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut v = if j == 0 { emz.clone() } else { Complex::zero(prec) };
            if i > 0 {
                v += &row[j].scale_f64(i as f64);
            }
            if j > 0 {
                v += &row[j - 1].scale_f64(j as f64);
            }
            next.push(&v * &z_inv);
        }
        row = next;
    }
    Ok(row[m].rounded(out))
}
