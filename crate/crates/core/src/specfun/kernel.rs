//! The fused integrand kernel
//! `Z_m(z) = Σ_j C(m, j) log^j(i/√N) ζ^{(m−j)}(1 − k/2, z)`.

use rug::Float;

use super::hurwitz::{hurwitz_params, hurwitz_zeta_jet};
use crate::error::{Error, Result};
use crate::numerics::{pi, Complex, Jet, PrecisionContext};

/// `log(i/√N) = −½ log N + iπ/2`.
pub fn log_i_over_sqrt_n(level: u64, prec: u32) -> Complex {
    let mut re = Float::with_val(prec, level).ln();
    re /= -2i32;
    let im = pi(prec) / 2u32;
    Complex::new(re, im)
}

/// Combines a Hurwitz jet of order ≥ `m` into `Z_m`, given `λ = log(i/√N)`.
pub fn zm_from_jet(jet: &Jet, m: usize, lambda: &Complex) -> Complex {
    let p = jet.prec();
    let mut acc = Complex::zero(p);
    let mut lam_pow = Complex::one(p);
    let mut binom = 1u64;
    for j in 0..=m {
        if j > 0 {
            lam_pow = &lam_pow * lambda;
            binom = binom * (m - j + 1) as u64 / j as u64;
        }
        let d = jet.derivative(m - j);
        acc += &(&d * &lam_pow).scale_f64(binom as f64);
    }
    acc
}

/// `Z_m(z)` for weight `k` and level `N` at a point `z = x + i/√N`.
pub fn zm_kernel(m: usize, k: u32, level: u64, z: &Complex, ctx: &PrecisionContext) -> Result<Complex> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::Precondition(format!("weight must be even and positive, got {k}")));
    }
    let p = ctx.bits();
    let s0 = Complex::from_f64(p, 1.0 - k as f64 / 2.0, 0.0);
    let params = hurwitz_params(&s0, m, ctx.target_eps() * 2f64.powi(-8), ctx)?;
    let jet = hurwitz_zeta_jet(&s0, m, z, &params, ctx)?;
    Ok(zm_from_jet(&jet, m, &log_i_over_sqrt_n(level, p)))
}
