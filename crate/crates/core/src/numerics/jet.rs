//! Truncated Taylor expansions ("jets") in one complex variable.
//!
//! A jet of order `r` stores `c_0..c_r` with `c_j = g^(j)(s0) / j!`. All
//! operations truncate at the order of the shorter operand.

use std::ops::{Add, Mul, Sub};

use rug::Float;

use super::complex::{principal_log, Complex};
use super::precision::PrecisionContext;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    coeffs: Vec<Complex>,
}

impl Jet {
    pub fn from_coeffs(coeffs: Vec<Complex>) -> Self {
        assert!(!coeffs.is_empty(), "a jet has at least one coefficient");
        Jet { coeffs }
    }

    /// The constant function `c`.
    pub fn constant(c: Complex, order: usize) -> Self {
        let p = c.prec();
        let mut coeffs = vec![c];
        coeffs.resize(order + 1, Complex::zero(p));
        Jet { coeffs }
    }

    /// The identity `s ↦ s` expanded around `s0`.
    pub fn variable(s0: Complex, order: usize) -> Self {
        let p = s0.prec();
        let mut j = Jet::constant(s0, order);
        if order >= 1 {
            j.coeffs[1] = Complex::one(p);
        }
        j
    }

    /// `s ↦ a + b (s - s0)`.
    pub fn linear(a: Complex, b: Complex, order: usize) -> Self {
        let mut j = Jet::constant(a, order);
        if order >= 1 {
            j.coeffs[1] = b;
        }
        j
    }

    /// `s ↦ A·exp(b (s - s0))`, i.e. coefficients `A b^j / j!`.
    pub fn exp_linear(a: Complex, b: &Complex, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = a;
        for j in 0..=order {
            if j > 0 {
                c = (&c * b).div_real(&Float::with_val(c.prec(), j));
            }
            coeffs.push(c.clone());
        }
        Jet { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Complex {
        &self.coeffs[j]
    }

    pub fn into_coeffs(self) -> Vec<Complex> {
        self.coeffs
    }

    /// The `j`-th derivative at the expansion point, `j!·c_j`.
    pub fn derivative(&self, j: usize) -> Complex {
        let p = self.prec();
        let mut f = Float::with_val(p, 1);
        for i in 2..=j {
            f *= i as u32;
        }
        self.coeffs[j].scale(&f)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Jet { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn scale(&self, k: &Complex) -> Self {
        Jet { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn scale_real(&self, k: &Float) -> Self {
        Jet { coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect() }
    }

    pub fn neg(&self) -> Self {
        Jet { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// In-place `self += other`, truncating to the shorter order.
    pub fn add_assign(&mut self, other: &Jet) {
        self.coeffs.truncate(other.coeffs.len());
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::Domain("reciprocal of a jet with zero constant term".into()));
        }
        let inv0 = a0.recip();
        let mut out: Vec<Complex> = vec![inv0.clone()];
        for n in 1..self.coeffs.len() {
            let mut acc = Complex::zero(self.prec());
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &out[n - k]);
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(Jet { coeffs: out })
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let mut out = vec![self.coeffs[0].exp()];
        for n in 1..self.coeffs.len() {
            let mut acc = Complex::zero(p);
            for k in 1..=n {
                acc += &(&self.coeffs[k] * &out[n - k]).scale_f64(k as f64);
            }
            out.push(acc.div_real(&Float::with_val(p, n)));
        }
        Jet { coeffs: out }
    }

    /// Principal logarithm; fails when the constant term vanishes.
    pub fn ln(&self) -> Result<Self> {
        let p = self.prec();
        let a0 = &self.coeffs[0];
        let inv0 = if a0.is_zero() {
            return Err(Error::Domain("logarithm of a jet with zero constant term".into()));
        } else {
            a0.recip()
        };
        let mut out = vec![principal_log(a0)?];
        for n in 1..self.coeffs.len() {
            let mut acc = Complex::zero(p);
            for k in 1..n {
                acc += &(&out[k] * &self.coeffs[n - k]).scale_f64(k as f64);
            }
            let acc = acc.div_real(&Float::with_val(p, n));
            out.push(&(&self.coeffs[n] - &acc) * &inv0);
        }
        Ok(Jet { coeffs: out })
    }

    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.reciprocal()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Jet::constant(Complex::one(self.prec()), self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

impl<'a> Add<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn add(self, o: &'a Jet) -> Jet {
        Jet { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn sub(self, o: &'a Jet) -> Jet {
        Jet { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a Jet> for &'a Jet {
    type Output = Jet;
    fn mul(self, o: &'a Jet) -> Jet {
        let len = self.coeffs.len().min(o.coeffs.len());
        let p = self.prec().max(o.prec());
        let coeffs = (0..len)
            .map(|n| {
                let mut acc = Complex::zero(p);
                for k in 0..=n {
                    acc += &(&self.coeffs[k] * &o.coeffs[n - k]);
                }
                acc
            })
            .collect();
        Jet { coeffs }
    }
}

/// Jet of `s ↦ (s)_m = s(s+1)…(s+m-1)` around `s0`.
pub fn pochhammer_jet(s0: &Complex, m: usize, order: usize, ctx: &PrecisionContext) -> Jet {
    let p = ctx.bits();
    let s0 = s0.rounded(p);
    let mut acc = Jet::constant(Complex::one(p), order);
    let mut shift = s0;
    let one = Complex::one(p);
    for _ in 0..m {
        acc = &acc * &Jet::variable(shift.clone(), order);
        shift += &one;
    }
    acc
}
