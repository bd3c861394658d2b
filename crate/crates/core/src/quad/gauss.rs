//! Gauss–Legendre rules on `[0, 1]` at arbitrary precision.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::{Assign, Float};

use crate::error::{Error, Result};
use crate::numerics::PrecisionContext;

/// Nodes `x_i ∈ (0, 1)` in ascending order with positive weights summing to 1.
#[derive(Debug)]
pub struct QuadratureRule {
    pub degree: usize,
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
    pub precision_bits: u32,
}

const MAX_NEWTON: usize = 60;

type RuleCache = RwLock<HashMap<(usize, u32), Arc<QuadratureRule>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The degree-`n` rule at `ctx.bits()` precision, cached by `(n, bits)`.
pub fn gauss_legendre(n: usize, ctx: &PrecisionContext) -> Result<Arc<QuadratureRule>> {
    if n == 0 {
        return Err(Error::Precondition("quadrature degree must be at least 1".into()));
    }
    let key = (n, ctx.bits());
    if let Some(rule) = cache().read().unwrap().get(&key) {
        return Ok(rule.clone());
    }
    let rule = Arc::new(build(n, ctx.bits())?);
    Ok(cache().write().unwrap().entry(key).or_insert(rule).clone())
}

/// `(P_n(x), P_{n-1}(x))` in double precision.
fn legendre_f64(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for j in 1..n {
        let p2 = ((2 * j + 1) as f64 * x * p1 - j as f64 * p0) / (j + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// Positive root `i` (1-based from the largest) refined in double precision.
fn root_f64(n: usize, i: usize) -> f64 {
    let nf = n as f64;
    let theta = std::f64::consts::PI * (i as f64 - 0.25) / (nf + 0.5);
    let mut x = theta.cos() * (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf));
    for _ in 0..100 {
        let (p, q) = legendre_f64(n, x);
        let dp = nf * (x * p - q) / (x * x - 1.0);
        let dx = p / dp;
        x -= dx;
        if dx.abs() < 1e-16 {
            break;
        }
    }
    x
}

/// Scratch buffers for the high-precision three-term recurrence.
struct Legendre {
    p0: Float,
    p1: Float,
    t: Float,
    u: Float,
}

impl Legendre {
    fn new(prec: u32) -> Self {
        Legendre { p0: Float::new(prec), p1: Float::new(prec), t: Float::new(prec), u: Float::new(prec) }
    }

    /// Leaves `P_n(x)` in `p1` and `P_{n-1}(x)` in `p0`.
    fn eval(&mut self, n: usize, x: &Float) {
        self.p0.assign(1);
        self.p1.assign(x);
        for j in 1..n {
            self.t.assign(x * &self.p1);
            self.t *= (2 * j + 1) as u32;
            self.u.assign(&self.p0 * j as u32);
            self.t -= &self.u;
            self.t /= (j + 1) as u32;
            std::mem::swap(&mut self.p0, &mut self.p1);
            std::mem::swap(&mut self.p1, &mut self.t);
        }
    }
}

/// Positive root `i` of `P_n` and its weight on `[-1, 1]`.
fn refine_root(n: usize, i: usize, prec: u32, tol: &Float, lp: &mut Legendre) -> Result<(Float, Float)> {
    let mut x = Float::with_val(prec, root_f64(n, i));
    let mut dp = Float::new(prec);
    let nn1 = (n * (n + 1)) as u32;
    for _ in 0..MAX_NEWTON {
        lp.eval(n, &x);
        let one_minus_x2 = Float::with_val(prec, 1u32) - Float::with_val(prec, x.square_ref());
        // P'_n = n (P_{n−1} − x P_n) / (1 − x²)
        dp.assign(&lp.p0 - Float::with_val(prec, &x * &lp.p1));
        dp *= n as u32;
        dp /= &one_minus_x2;
        let dx = Float::with_val(prec, &lp.p1 / &dp);
        if dx.clone().abs() > *tol {
            x -= &dx;
            continue;
        }
        // Converged: finish with a Halley step and a Taylor expansion of
        // P'_n, using (1 − x²)P'' = 2xP' − n(n+1)P and its derivative.
        let p = lp.p1.clone();
        let d2 = (Float::with_val(prec, &x * &dp) * 2u32 - Float::with_val(prec, &p * nn1)) / &one_minus_x2;
        let d3 = (Float::with_val(prec, &x * &d2) * 4u32 - Float::with_val(prec, &dp * (nn1 - 2))) / &one_minus_x2;
        let delta = -Float::with_val(prec, &dx + Float::with_val(prec, &d2 / &dp) * Float::with_val(prec, dx.square_ref()) / 2u32);
        // size of the first omitted Taylor term, relative to P'
        let growth = n as f64 / one_minus_x2.to_f64();
        let omitted = delta.to_f64().abs().powi(3) * (d3.to_f64() / dp.to_f64()).abs() * growth;
        x += &delta;
        if omitted < (-(prec as f64) - 8.0).exp2() {
            let d3_term = Float::with_val(prec, &d3 * Float::with_val(prec, delta.square_ref())) / 2u32;
            dp += Float::with_val(prec, &d2 * &delta) + d3_term;
        } else {
            lp.eval(n, &x);
            let omx2 = Float::with_val(prec, 1u32) - Float::with_val(prec, x.square_ref());
            dp.assign(&lp.p0 - Float::with_val(prec, &x * &lp.p1));
            dp *= n as u32;
            dp /= &omx2;
        }
        let one_minus_x2 = Float::with_val(prec, 1u32) - Float::with_val(prec, x.square_ref());
        let w = Float::with_val(prec, 2u32) / (one_minus_x2 * Float::with_val(prec, dp.square_ref()));
        return Ok((x, w));
    }
    Err(Error::NoConvergence(format!("Legendre root {i} of degree {n} at {prec} bits")))
}

fn build(n: usize, prec: u32) -> Result<QuadratureRule> {
    let half = n / 2;
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) / 2 - 4));
    // positive roots of P_n with their weights on [-1, 1], largest first
    let threads = std::thread::available_parallelism().map_or(1, |t| t.get()).min(half / 16).max(1);
    let chunk = half.div_ceil(threads).max(1);
    let parts: Vec<Result<Vec<(Float, Float)>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let tol = &tol;
                s.spawn(move || {
                    let mut lp = Legendre::new(prec);
                    (t * chunk + 1..=((t + 1) * chunk).min(half)).map(|i| refine_root(n, i, prec, tol, &mut lp)).collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("Legendre worker panicked")).collect()
    });
    let mut pos = Vec::with_capacity(half);
    for p in parts {
        pos.extend(p?);
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // map x ↦ (1 + x)/2, w ↦ w/2; negative roots first for ascending order
    for (x, w) in pos.iter() {
        nodes.push(Float::with_val(prec, 1u32 - x) / 2u32);
        weights.push(Float::with_val(prec, w / 2u32));
    }
    if n % 2 == 1 {
        let mut lp0 = Legendre::new(prec);
        let zero = Float::new(prec);
        lp0.eval(n, &zero);
        // at x = 0, P'_n(0) = n P_{n-1}(0)
        let dp = Float::with_val(prec, &lp0.p0 * n as u32);
        let w = Float::with_val(prec, 2u32) / Float::with_val(prec, dp.square_ref());
        nodes.push(Float::with_val(prec, 0.5));
        weights.push(w / 2u32);
    }
    for (x, w) in pos.iter().rev() {
        nodes.push(Float::with_val(prec, 1u32 + x) / 2u32);
        weights.push(Float::with_val(prec, w / 2u32));
    }
    Ok(QuadratureRule { degree: n, nodes, weights, precision_bits: prec })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        let ctx = PrecisionContext::new(100).unwrap();
        let r = gauss_legendre(1, &ctx).unwrap();
        assert_eq!(r.nodes[0].to_f64(), 0.5);
        assert!((r.weights[0].to_f64() - 1.0).abs() < 1e-30);
        let r = gauss_legendre(2, &ctx).unwrap();
        let d = 0.5 / 3f64.sqrt();
        assert!((r.nodes[0].to_f64() - (0.5 - d)).abs() < 1e-16);
        assert!((r.nodes[1].to_f64() - (0.5 + d)).abs() < 1e-16);
        assert!((r.weights[0].to_f64() - 0.5).abs() < 1e-30);
        assert!(gauss_legendre(0, &ctx).is_err());
    }

    #[test]
    fn cached_rules_are_shared() {
        let ctx = PrecisionContext::new(64).unwrap();
        let a = gauss_legendre(12, &ctx).unwrap();
        let b = gauss_legendre(12, &ctx).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
