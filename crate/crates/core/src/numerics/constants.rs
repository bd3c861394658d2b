//! Mathematical constants at a requested precision, with caches for the
//! expensive ones.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::float::Constant;
use rug::Float;

use super::complex::Complex;
use super::jet::Jet;
use super::precision::PrecisionContext;

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// Riemann zeta at an integer `k ≥ 2`.
pub fn zeta_int(k: u32, prec: u32) -> Float {
    Float::with_val(prec, Float::zeta_u(k))
}

type GammaCache = RwLock<HashMap<u32, Vec<Float>>>;

fn gamma_cache() -> &'static GammaCache {
    static CACHE: OnceLock<GammaCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Taylor coefficients `γ_0..γ_r` of `Γ(1+z)` at `z = 0`, obtained by
/// exponentiating `log Γ(1+z) = −γz + Σ_{k≥2} (−1)^k ζ(k) z^k / k`.
pub fn gamma_taylor_coeffs(r: usize, ctx: &PrecisionContext) -> Vec<Float> {
    let p = ctx.bits();
    if let Some(v) = gamma_cache().read().unwrap().get(&p) {
        if v.len() > r {
            return v[..=r].to_vec();
        }
    }
    let mut log_coeffs = vec![Complex::zero(p)];
    if r >= 1 {
        log_coeffs.push(Complex::from_real(-euler_gamma(p)));
    }
    for k in 2..=r {
        let mut z = zeta_int(k as u32, p);
        z /= k as u32;
        if k % 2 == 1 {
            z = -z;
        }
        log_coeffs.push(Complex::from_real(z));
    }
    let coeffs: Vec<Float> =
        Jet::from_coeffs(log_coeffs).exp().into_coeffs().into_iter().map(|c| c.re).collect();
    gamma_cache().write().unwrap().insert(p, coeffs.clone());
    coeffs
}
