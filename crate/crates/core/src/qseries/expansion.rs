//! Exact Laurent q-expansions with tracked truncation order.

use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};

/// Sentinel `n_max` for expansions that are exact polynomials.
pub const EXACT: i64 = i64::MAX / 4;

/// `Σ_{n_min ≤ n ≤ n_max} a(n) q^n + O(q^{n_max+1})` with rational `a(n)`.
///
/// `n_min` is the index of the first stored coefficient; it is the leading
/// exponent whenever that coefficient is nonzero (see [`QExpansion::normalized`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    n_min: i64,
    n_max: i64,
    coeffs: Vec<Rational>,
}

impl QExpansion {
    /// `coeffs[i]` is the coefficient of `q^{n_min + i}`; the expansion is
    /// known through `q^{n_max}`. Coefficients past `n_max` are dropped and
    /// missing ones up to `n_max` are zero.
    pub fn new(n_min: i64, mut coeffs: Vec<Rational>, n_max: i64) -> Self {
        let len = (n_max - n_min + 1).max(0);
        if n_max != EXACT {
            coeffs.resize(len as usize, Rational::new());
        } else if coeffs.len() as i64 > len {
            coeffs.truncate(len as usize);
        }
        QExpansion { n_min, n_max, coeffs }.normalized()
    }

    pub fn from_integers(n_min: i64, coeffs: &[i64], n_max: i64) -> Self {
        QExpansion::new(n_min, coeffs.iter().map(|&c| Rational::from(c)).collect(), n_max)
    }

    /// The exact monomial `c q^n`.
    pub fn monomial(c: Rational, n: i64) -> Self {
        QExpansion::new(n, vec![c], EXACT)
    }

    pub fn one() -> Self {
        QExpansion::monomial(Rational::from(1), 0)
    }

    /// Strips leading zero coefficients.
    pub fn normalized(mut self) -> Self {
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.n_min += lead as i64;
        }
        if self.n_max == EXACT {
            while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                self.coeffs.pop();
            }
        }
        self
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    /// `n_max + 1`, the exponent of the error term.
    pub fn order(&self) -> i64 {
        self.n_max.saturating_add(1)
    }

    pub fn is_exact(&self) -> bool {
        self.n_max == EXACT
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`; `None` when `n` lies beyond the known range.
    pub fn get(&self, n: i64) -> Option<Rational> {
        if n > self.n_max {
            return None;
        }
        if n < self.n_min {
            return Some(Rational::new());
        }
        Some(self.coeffs.get((n - self.n_min) as usize).cloned().unwrap_or_default())
    }

    /// Coefficient of `q^n`, panicking past `n_max`.
    pub fn coeff(&self, n: i64) -> Rational {
        self.get(n).unwrap_or_else(|| panic!("coefficient q^{n} is beyond the known order {}", self.n_max))
    }

    /// `(n, a(n))` for all stored nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.n_min + i as i64, c))
    }

    pub fn all_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    /// Drops everything above `q^{n_max}`.
    pub fn truncate(&self, n_max: i64) -> Self {
        if n_max >= self.n_max {
            return self.clone();
        }
        let keep = (n_max - self.n_min + 1).clamp(0, self.coeffs.len() as i64) as usize;
        QExpansion::new(self.n_min, self.coeffs[..keep].to_vec(), n_max)
    }

    pub fn scalar(&self, c: &Rational) -> Self {
        QExpansion::new(self.n_min, self.coeffs.iter().map(|a| Rational::from(a * c)).collect(), self.n_max)
    }

    fn combine(&self, other: &Self, sign: i32) -> Self {
        let n_max = self.n_max.min(other.n_max);
        let n_min = self.n_min.min(other.n_min);
        if n_min > n_max {
            return QExpansion::new(n_max + 1, Vec::new(), n_max);
        }
        let top = if n_max == EXACT {
            (self.n_min + self.coeffs.len() as i64).max(other.n_min + other.coeffs.len() as i64) - 1
        } else {
            n_max
        };
        let mut out = vec![Rational::new(); (top - n_min + 1).max(0) as usize];
        for (n, c) in self.terms() {
            if n <= top {
                out[(n - n_min) as usize] += c;
            }
        }
        for (n, c) in other.terms() {
            if n <= top {
                if sign > 0 {
                    out[(n - n_min) as usize] += c;
                } else {
                    out[(n - n_min) as usize] -= c;
                }
            }
        }
        QExpansion::new(n_min, out, n_max)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        // a truncated zero has n_min = n_max + 1, a valid valuation bound,
        // so only exact zeros need special handling
        if (self.is_zero() && self.is_exact()) || (other.is_zero() && other.is_exact()) {
            return QExpansion::new(0, Vec::new(), EXACT);
        }
        let n_min = self.n_min + other.n_min;
        let n_max = if self.n_max == EXACT && other.n_max == EXACT {
            EXACT
        } else {
            (self.n_max.saturating_add(other.n_min)).min(other.n_max.saturating_add(self.n_min))
        };
        let len = if n_max == EXACT {
            self.coeffs.len() + other.coeffs.len() - 1
        } else {
            (n_max - n_min + 1).max(0) as usize
        };
        let mut out = vec![Rational::new(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    out[i + j] += Rational::from(a * b);
                }
            }
        }
        QExpansion::new(n_min, out, n_max)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QExpansion::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Division is deliberately not offered; use negative eta exponents.
    pub fn div(&self, _other: &Self) -> Result<Self> {
        Err(Error::Unsupported("division of q-expansions is not supported".into()))
    }

    /// `Σ c_i x^i` evaluated at `x = self`, by Horner's rule.
    pub fn compose_poly(&self, poly: &[i64]) -> Self {
        let mut acc = QExpansion::new(0, Vec::new(), EXACT);
        for &c in poly.iter().rev() {
            acc = acc.mul(self).add(&QExpansion::monomial(Rational::from(c), 0));
        }
        acc
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.terms() {
            let neg = *c < 0;
            let mag = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == 1;
            match (unit, n) {
                (_, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "q")?,
                (true, _) => write!(f, "q^{n}")?,
                (false, 1) => write!(f, "{mag}q")?,
                (false, _) => write!(f, "{mag}q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + O(q^{})", self.order())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n_min: i64, c: &[i64], n_max: i64) -> QExpansion {
        QExpansion::from_integers(n_min, c, n_max)
    }

    #[test]
    fn add_cancels_leading_term() {
        let a = q(1, &[1, 1], EXACT);
        let b = q(1, &[-1], EXACT);
        let s = a.add(&b);
        assert_eq!(s, q(2, &[1], EXACT));
        assert_eq!(s.n_min(), 2);
    }

    #[test]
    fn laurent_product() {
        let a = q(-1, &[1, 0, 1], EXACT);
        let b = q(1, &[1], EXACT);
        assert_eq!(a.mul(&b), q(0, &[1, 0, 1], EXACT));
    }

    #[test]
    fn truncation_propagates() {
        // (q + O(q^3)) * (q^-1 + O(q^2)) is known through q^1
        let a = q(1, &[1, 0], 2);
        let b = q(-1, &[1, 0, 0], 1);
        let p = a.mul(&b);
        assert_eq!(p.n_max(), 1);
        assert_eq!(p.coeff(0), 1);
        assert_eq!(p.get(2), None);
        let s = a.add(&b);
        assert_eq!(s.n_max(), 1);
    }

    #[test]
    fn powers_and_display() {
        let a = q(1, &[1, -8, 12, 64], 4);
        let sq = a.pow(2);
        assert_eq!(sq.n_min(), 2);
        assert_eq!(sq.n_max(), 5);
        assert_eq!(sq.coeff(2), 1);
        assert_eq!(sq.coeff(3), -16);
        assert_eq!(a.to_string(), "q - 8q^2 + 12q^3 + 64q^4 + O(q^5)");
        assert!(a.div(&a).is_err());
    }
}
