//! Arbitrary-precision complex numbers on top of MPFR floats.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::Float;

use crate::error::{Error, Result};

/// A complex number whose parts share one binary precision.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Complex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Complex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Complex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Complex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Complex { re, im }
    }

    /// Rounds both parts of `re + i im` to `prec` bits.
    pub fn with_prec(prec: u32, re: &Float, im: &Float) -> Self {
        Complex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy rounded to `prec` bits.
    pub fn rounded(&self, prec: u32) -> Self {
        Complex::with_prec(prec, &self.re, &self.im)
    }

    pub fn set_prec(&mut self, prec: u32) {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), Float::with_val(self.im.prec(), -&self.im))
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Complex::new(Float::with_val(self.im.prec(), -&self.im), self.re.clone())
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re * k), Float::with_val(p, &self.im * k))
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re * k), Float::with_val(p, &self.im * k))
    }

    pub fn div_real(&self, k: &Float) -> Self {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re / k), Float::with_val(p, &self.im / k))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut n = Float::with_val(p, self.re.square_ref());
        n += Float::with_val(p, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// `|z|` as an `f64`, for bounds and heuristics.
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn square(&self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, self.re.square_ref()) - Float::with_val(p, self.im.square_ref());
        let mut im = Float::with_val(p, &self.re * &self.im);
        im *= 2u32;
        Complex::new(re, im)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        let mut im = Float::with_val(p, &self.im / &n);
        im = -im;
        Complex::new(Float::with_val(p, &self.re / &n), im)
    }

    /// Integer power by repeated squaring; negative exponents go through the
    /// reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let p = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Complex::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = Float::with_val(p, self.re.exp_ref());
        let mut s = Float::with_val(p, &self.im);
        let mut c = Float::new(p);
        s.sin_cos_mut(&mut c);
        Complex::new(Float::with_val(p, &r * &c), Float::with_val(p, &r * &s))
    }

    /// `i^n` for an integer `n`, exactly.
    pub fn i_pow(n: i64, prec: u32) -> Self {
        match n.rem_euclid(4) {
            0 => Complex::from_f64(prec, 1.0, 0.0),
            1 => Complex::from_f64(prec, 0.0, 1.0),
            2 => Complex::from_f64(prec, -1.0, 0.0),
            _ => Complex::from_f64(prec, 0.0, -1.0),
        }
    }

    /// `e^{2πi x}` for real `x`.
    pub fn unit_circle(x: &Float, prec: u32) -> Self {
        let mut t = Float::with_val(prec, Constant::Pi);
        t *= x;
        t *= 2u32;
        let mut s = t;
        let mut c = Float::new(prec);
        s.sin_cos_mut(&mut c);
        Complex::new(c, s)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// `x` to `digits` significant decimal digits, in positional notation for
/// moderate exponents and scientific notation otherwise.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1)));
    // value = 0.mantissa × 10^exp
    let exp = exp.unwrap_or(0);
    let sign = if neg { "-" } else { "" };
    let m = mantissa.as_str();
    if (-5..=21).contains(&exp) {
        if exp <= 0 {
            format!("{sign}0.{}{m}", "0".repeat((-exp) as usize))
        } else if exp as usize >= m.len() {
            format!("{sign}{m}{}", "0".repeat(exp as usize - m.len()))
        } else {
            format!("{sign}{}.{}", &m[..exp as usize], &m[exp as usize..])
        }
    } else {
        format!("{sign}{}.{}e{}", &m[..1], &m[1..], exp - 1)
    }
}

impl Complex {
    /// Parses decimal strings for the real and imaginary parts.
    pub fn from_decimal(prec: u32, re: &str, im: &str) -> Result<Complex> {
        let parse = |t: &str| {
            Float::parse(t.trim()).map(|v| Float::with_val(prec, v)).map_err(|e| Error::Domain(format!("bad decimal '{t}': {e}")))
        };
        Ok(Complex::new(parse(re)?, parse(im)?))
    }
}

/// Principal logarithm `log|z| + i arg z` with `arg z ∈ (−π, π]`.
pub fn principal_log(z: &Complex) -> Result<Complex> {
    if z.is_zero() {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    let p = z.prec();
    let modulus = z.abs();
    let re = modulus.ln();
    let im = if z.im.is_zero() && z.re.is_sign_negative() {
        // Both signed zeros on the negative axis map to +π.
        Float::with_val(p, Constant::Pi)
    } else {
        Float::with_val(p, z.im.atan2_ref(&z.re))
    };
    Ok(Complex::new(re, im))
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        let re = self.re.to_string_radix(10, Some(digits));
        let im = self.im.to_string_radix(10, Some(digits));
        if im.starts_with('-') {
            write!(f, "{re} - {}i", &im[1..])
        } else {
            write!(f, "{re} + {im}i")
        }
    }
}

impl<'a> Add<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn add(self, o: &'a Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re + &o.re), Float::with_val(p, &self.im + &o.im))
    }
}

impl<'a> Sub<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn sub(self, o: &'a Complex) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, &self.re - &o.re), Float::with_val(p, &self.im - &o.im))
    }
}

impl<'a> Mul<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn mul(self, o: &'a Complex) -> Complex {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        Complex::new(ac - bd, ad + bc)
    }
}

impl<'a> Div<&'a Complex> for &'a Complex {
    type Output = Complex;
    fn div(self, o: &'a Complex) -> Complex {
        self * &o.recip()
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        let p = self.prec();
        Complex::new(Float::with_val(p, -&self.re), Float::with_val(p, -&self.im))
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(mut self, o: Complex) -> Complex {
        self += &o;
        self
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(mut self, o: Complex) -> Complex {
        self -= &o;
        self
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        &self * &o
    }
}

impl AddAssign<&Complex> for Complex {
    fn add_assign(&mut self, o: &Complex) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Complex> for Complex {
    fn sub_assign(&mut self, o: &Complex) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Complex> for Complex {
    fn mul_assign(&mut self, o: &Complex) {
        *self = &*self * o;
    }
}
