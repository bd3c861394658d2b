//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use lcentral::numerics::{principal_log, Complex};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

pub const ORACLE_BITS: u32 = 256;

pub fn cf(re: f64, im: f64) -> Complex {
    Complex::from_f64(ORACLE_BITS, re, im)
}

/// `∫₁^∞ g(t) dt` by the exp-sinh rule `t = 1 + exp(π/2·sinh τ)`, refined
/// until two successive step sizes agree.
pub fn integrate_one_to_inf(g: impl Fn(&Float) -> Complex) -> Complex {
    let p = ORACLE_BITS;
    let half_pi = Float::with_val(p, Constant::Pi) / 2u32;
    let eval = |h: &Float, odd_only: bool| {
        let mut acc = Complex::zero(p);
        let mut k: i64 = if odd_only { 1 } else { 0 };
        let step = if odd_only { 2 } else { 1 };
        loop {
            let mut done = true;
            for sign in [1i64, -1] {
                if k == 0 && sign == -1 {
                    continue;
                }
                let tau = Float::with_val(p, h * (sign * k));
                let sh = Float::with_val(p, tau.sinh_ref());
                let ch = Float::with_val(p, tau.cosh_ref());
                let u = Float::with_val(p, &half_pi * &sh).exp();
                let w = Float::with_val(p, &half_pi * &ch) * &u * h;
                if u.is_zero() || !u.is_finite() {
                    continue;
                }
                let t = Float::with_val(p, &u + 1u32);
                let v = g(&t).scale(&w);
                if v.abs_f64() > 1e-90 || (sign == -1 && w.to_f64() > 1e-90) {
                    done = false;
                }
                acc += &v;
            }
            if done && k > 8 {
                break;
            }
            k += step;
        }
        acc
    };
    let mut h = Float::with_val(p, 0.125);
    let mut total = eval(&h, false);
    for _ in 0..8 {
        h /= 2u32;
        let refined = &total.scale_f64(0.5) + &eval(&h, true);
        let diff = (&refined - &total).abs_f64();
        let scale = refined.abs_f64().max(1e-300);
        total = refined;
        if diff < scale * 1e-60 {
            break;
        }
    }
    total
}

/// `(1/m!) ∫₁^∞ e^{−zt} t^n (log t)^m dt` by quadrature (`n` may be `-1`).
pub fn oracle_e_negn(n: i64, m: u32, z: &Complex) -> Complex {
    let z = z.rounded(ORACLE_BITS);
    let mut fact = Float::with_val(ORACLE_BITS, 1);
    for j in 2..=m {
        fact *= j;
    }
    integrate_one_to_inf(|t| {
        let lt = Float::with_val(ORACLE_BITS, t.ln_ref());
        let mut mag = Float::with_val(ORACLE_BITS, t.pow(n as i32));
        mag *= Float::with_val(ORACLE_BITS, (&lt).pow(m));
        (-&z.scale(t)).exp().scale(&mag)
    })
    .div_real(&fact)
}

/// `log Γ(z)` by Stirling's series after shifting `z` up by 40.
pub fn oracle_log_gamma(z: &Complex) -> Complex {
    let p = ORACLE_BITS;
    let shift = 40;
    let mut w = z.rounded(p);
    let mut corr = Complex::zero(p);
    for _ in 0..shift {
        corr -= &principal_log(&w).unwrap();
        w += &Complex::one(p);
    }
    let lw = principal_log(&w).unwrap();
    let half = Complex::from_f64(p, 0.5, 0.0);
    let two_pi = Float::with_val(p, Constant::Pi) * 2u32;
    let mut v = &(&(&w - &half) * &lw) - &w;
    v.re += Float::with_val(p, two_pi.ln_ref()) / 2u32;
    let winv = w.recip();
    let winv2 = winv.square();
    let mut wp = winv.clone();
    for (k, b) in stirling_bernoulli(40).iter().enumerate() {
        let k = k as u32 + 1;
        let c = Float::with_val(p, b) / (2 * k * (2 * k - 1));
        v += &wp.scale(&c);
        wp = &wp * &winv2;
    }
    &v + &corr
}

/// `B_2, B_4, …, B_{2n}` from the Akiyama–Tanigawa algorithm.
fn stirling_bernoulli(n: usize) -> Vec<Rational> {
    let top = 2 * n;
    let mut a: Vec<Rational> = Vec::new();
    let mut out = Vec::new();
    for m in 0..=top {
        a.push(Rational::from((1, m as u32 + 1)));
        for j in (1..=m).rev() {
            let d = Rational::from(&a[j - 1] - &a[j]);
            a[j - 1] = d * Integer::from(j);
        }
        // a[0] is B_m with B_1 = +1/2
        if m >= 2 && m % 2 == 0 {
            out.push(a[0].clone());
        }
    }
    out
}

pub fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
    (a - &b.rounded(a.prec())).abs_f64() <= tol
}

/// Float value of a decimal string at high precision.
pub fn dec(s: &str) -> Float {
    Float::with_val(ORACLE_BITS, Float::parse(s).unwrap())
}
