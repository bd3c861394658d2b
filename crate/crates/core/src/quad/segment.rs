//! Integration along the unit segment with a fixed rule, and the
//! degree-doubling driver.

use std::sync::Arc;

use rug::Float;

use super::gauss::{gauss_legendre, QuadratureRule};
use crate::error::{Error, Result};
use crate::numerics::{Complex, PrecisionContext};

/// Largest degree the doubling driver will try.
pub const MAX_DEGREE: usize = 1 << 16;

/// `Σ w_i f(x_i) k(x_i)`.
///
/// With `conj_symmetric`, `f` is only evaluated at nodes `x_i ≤ 1/2`; the
/// mirrored node uses `f(1 − x) = conj f(x)`.
pub fn integrate_segment<F, K>(f_eval: F, kernel_eval: K, rule: &QuadratureRule, conj_symmetric: bool) -> Result<Complex>
where
    F: Fn(&Float) -> Result<Complex> + Sync,
    K: Fn(&Float) -> Result<Complex> + Sync,
{
    let v = integrate_segment_multi(f_eval, |x| Ok(vec![kernel_eval(x)?]), rule, conj_symmetric)?;
    Ok(v.into_iter().next().unwrap())
}

/// Like [`integrate_segment`] for a kernel returning several values at once
/// (one integral per entry, sharing the `f` evaluations).
pub fn integrate_segment_multi<F, K>(f_eval: F, kernel_eval: K, rule: &QuadratureRule, conj_symmetric: bool) -> Result<Vec<Complex>>
where
    F: Fn(&Float) -> Result<Complex> + Sync,
    K: Fn(&Float) -> Result<Vec<Complex>> + Sync,
{
    let n = rule.degree;
    let f_nodes = if conj_symmetric { n.div_ceil(2) } else { n };
    let f_vals = par_map(f_nodes, |i| f_eval(&rule.nodes[i]))?;
    let k_vals = par_map(n, |i| kernel_eval(&rule.nodes[i]))?;
    let width = k_vals.first().map_or(0, Vec::len);
    let prec = rule.precision_bits;
    let mut acc = vec![Complex::zero(prec); width];
    for i in 0..n {
        let f = if i < f_nodes { f_vals[i].clone() } else { f_vals[n - 1 - i].conj() };
        let fw = f.scale(&rule.weights[i]);
        for (a, k) in acc.iter_mut().zip(&k_vals[i]) {
            *a += &(&fw * k);
        }
    }
    Ok(acc)
}

/// Evaluates `g(0..n)` on the available cores and returns results in index
/// order.
fn par_map<T: Send>(n: usize, g: impl Fn(usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()).min(n.max(1));
    if threads <= 1 {
        return (0..n).map(g).collect();
    }
    let chunk = n.div_ceil(threads);
    let g = &g;
    let parts: Vec<Result<Vec<T>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| s.spawn(move || (t * chunk..((t + 1) * chunk).min(n)).map(g).collect::<Result<Vec<T>>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("quadrature worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(n);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Result of [`integrate_adaptive`].
#[derive(Clone, Debug)]
pub struct AdaptiveIntegral {
    pub values: Vec<Complex>,
    pub degree: usize,
    /// `max_j |I_j(n) − I_j(2n)|` at the accepted degree.
    pub residual: f64,
}

/// Doubles the degree from `n0` until `|I(n) − I(2n)| < eps` for every
/// entry; returns the values of the finer rule.
pub fn integrate_adaptive<G>(n0: usize, ctx: &PrecisionContext, eps: f64, integrate: G) -> Result<AdaptiveIntegral>
where
    G: Fn(&Arc<QuadratureRule>) -> Result<Vec<Complex>>,
{
    let mut n = n0.max(1);
    let mut prev = integrate(&gauss_legendre(n, ctx)?)?;
    while 2 * n <= MAX_DEGREE {
        let next = integrate(&gauss_legendre(2 * n, ctx)?)?;
        let residual = prev.iter().zip(&next).map(|(a, b)| (a - b).abs_f64()).fold(0.0, f64::max);
        if residual < eps {
            return Ok(AdaptiveIntegral { values: next, degree: 2 * n, residual });
        }
        prev = next;
        n *= 2;
    }
    Err(Error::NoConvergence(format!("quadrature did not settle below {eps:e} by degree {MAX_DEGREE}")))
}
