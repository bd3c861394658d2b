//! Modular forms as q-expansions plus the metadata the L-series evaluators
//! need.

use rug::Rational;

use super::eta::eta_quotient;
use super::expansion::{QExpansion, EXACT};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// Cusp form: `n_min ≥ 1`.
    Holomorphic,
    /// Anything with `n_min ≤ 0`: a finite principal part, a constant term, or both.
    WeaklyHolomorphic,
}

/// Fitted majorant `|a(n)| ≤ A·e^{C√n}` for `n ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthBound {
    pub amplitude: f64,
    pub exponent: f64,
}

/// Safety factor applied to the fitted growth exponent.
pub const GROWTH_SAFETY: f64 = 1.1;

/// A form of weight `k` on `Γ0(N)` with its Fricke sign.
#[derive(Clone, Debug, PartialEq)]
pub struct FormSpec {
    label: String,
    weight: u32,
    level: u64,
    fricke: i8,
    kind: FormKind,
    expansion: QExpansion,
    deligne_applicable: bool,
}

impl FormSpec {
    /// Validates the metadata against the expansion. `deligne` defaults to
    /// true for holomorphic forms; pass `Some(false)` for non-eigenforms.
    pub fn new(
        label: impl Into<String>,
        weight: u32,
        level: u64,
        fricke: i8,
        expansion: QExpansion,
        deligne: Option<bool>,
    ) -> Result<Self> {
        if weight % 2 != 0 {
            return Err(Error::Precondition(format!("weight must be even, got {weight}")));
        }
        if level == 0 {
            return Err(Error::Precondition("level must be positive".into()));
        }
        if fricke != 1 && fricke != -1 {
            return Err(Error::Precondition(format!("Fricke sign must be ±1, got {fricke}")));
        }
        if expansion.n_max() < 1 {
            return Err(Error::Precondition("expansion must be known at least through q^1".into()));
        }
        let kind = if expansion.n_min() >= 1 { FormKind::Holomorphic } else { FormKind::WeaklyHolomorphic };
        let deligne_applicable = deligne.unwrap_or(kind == FormKind::Holomorphic);
        if deligne_applicable && kind != FormKind::Holomorphic {
            return Err(Error::Precondition("Deligne's bound only applies to holomorphic forms".into()));
        }
        Ok(FormSpec { label: label.into(), weight, level, fricke, kind, expansion, deligne_applicable })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn fricke(&self) -> i8 {
        self.fricke
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn is_holomorphic(&self) -> bool {
        self.kind == FormKind::Holomorphic
    }

    pub fn expansion(&self) -> &QExpansion {
        &self.expansion
    }

    pub fn deligne_applicable(&self) -> bool {
        self.deligne_applicable
    }

    /// Pole order `n₀ = max(0, −n_min)`.
    pub fn pole_order(&self) -> u64 {
        (-self.expansion.n_min()).max(0) as u64
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `α·self + β·other` for forms of the same weight and level.
    pub fn linear_combination(&self, alpha: &Rational, other: &FormSpec, beta: &Rational) -> Result<FormSpec> {
        if self.weight != other.weight || self.level != other.level || self.fricke != other.fricke {
            return Err(Error::Precondition("linear combinations need equal weight, level and Fricke sign".into()));
        }
        let e = self.expansion.scalar(alpha).add(&other.expansion.scalar(beta));
        FormSpec::new(format!("{}*{} + {}*{}", alpha, self.label, beta, other.label), self.weight, self.level, self.fricke, e, Some(false))
    }

    /// Fits `C = 1.1·max log|a(n)|/√n` and `A = max |a(n)|/e^{C√n}` on the
    /// first half of the known positive coefficients, then checks the second
    /// half against the fitted bound.
    pub fn growth_bound(&self) -> Result<GrowthBound> {
        let top = self.expansion.n_max();
        let logs: Vec<(i64, f64, f64)> = self
            .expansion
            .terms()
            .filter(|(n, _)| *n >= 1)
            .map(|(n, c)| (n, (n as f64).sqrt(), log_abs(c)))
            .collect();
        if logs.len() < 4 || top < 8 {
            return Err(Error::GrowthBound(format!("too few coefficients ({}) to fit a growth bound", logs.len())));
        }
        let fit: Vec<_> = logs.iter().filter(|(n, _, _)| *n <= top / 2).copied().collect();
        let fit = if fit.is_empty() { logs.clone() } else { fit };
        let c_max = fit.iter().map(|(_, s, l)| l / s).fold(f64::NEG_INFINITY, f64::max);
        let exponent = (GROWTH_SAFETY * c_max).max(1e-3);
        let log_a = fit.iter().map(|(_, s, l)| l - exponent * s).fold(f64::NEG_INFINITY, f64::max);
        for (n, s, l) in &logs {
            if *l > log_a + exponent * s + 1e-9 {
                return Err(Error::GrowthBound(format!("|a({n})| exceeds the fitted bound A·e^(C√n) with C = {exponent:.4}")));
            }
        }
        Ok(GrowthBound { amplitude: log_a.exp(), exponent })
    }
}

/// `ln |c|` for a nonzero rational, without overflow for huge numerators.
pub(crate) fn log_abs(c: &Rational) -> f64 {
    let ln_int = |i: &rug::Integer| {
        let (m, e) = i.to_f64_exp();
        m.abs().ln() + e as f64 * std::f64::consts::LN_2
    };
    ln_int(c.numer()) - ln_int(c.denom())
}

fn j2plus(order: i64) -> Result<QExpansion> {
    let a = eta_quotient(&[(1, 24), (2, -24)], order)?;
    let b = eta_quotient(&[(2, 24), (1, -24)], order)?;
    Ok(a.add(&QExpansion::monomial(Rational::from(24), 0)).add(&b.scalar(&Rational::from(4096))))
}

/// Coefficients `c_0, c_1, …` of the polynomial in `j₂⁺` multiplying `(Δ₂⁺)²`.
fn f16_polynomial(i: i32) -> Option<&'static [i64]> {
    Some(match i {
        -2 => &[1],
        -1 => &[16, 1],
        0 => &[-8576, 16, 1],
        1 => &[-427328, -12948, 16, 1],
        2 => &[27188524, -593536, -17320, 16, 1],
        _ => return None,
    })
}

/// Names accepted by [`builtin_form`].
pub const BUILTIN_NAMES: &[&str] = &["delta2plus", "j2plus", "f16_-2", "f16_-1", "f16_0", "f16_1", "f16_2", "f16_new"];

/// One of the level-2 forms built from `Δ₂⁺ = (η(τ)η(2τ))⁸` and
/// `j₂⁺ = (η(τ)/η(2τ))²⁴ + 24 + 2¹²(η(2τ)/η(τ))²⁴`, known through
/// `O(q^order)`. `f16_new` is the weight-16 newform `f16_-1 − 128·f16_-2`.
pub fn builtin_form(name: &str, order: i64) -> Result<FormSpec> {
    if order < 4 {
        return Err(Error::Precondition(format!("builtin forms need order ≥ 4, got {order}")));
    }
    let work = order + 10;
    let delta = || eta_quotient(&[(1, 8), (2, 8)], work);
    let f16 = |i: i32| -> Result<QExpansion> {
        let poly = f16_polynomial(i).expect("index checked by caller");
        let d = delta()?;
        Ok(d.mul(&d).mul(&j2plus(work)?.compose_poly(poly)))
    };
    let (weight, expansion, deligne) = match name {
        "delta2plus" => (8, delta()?, Some(true)),
        "j2plus" => (0, j2plus(work)?, None),
        "f16_new" => {
            let e = f16(-1)?.sub(&f16(-2)?.scalar(&Rational::from(128)));
            (16, e, Some(true))
        }
        _ => {
            let i: i32 = name
                .strip_prefix("f16_")
                .and_then(|s| s.parse().ok())
                .filter(|i| f16_polynomial(*i).is_some())
                .ok_or_else(|| Error::Precondition(format!("unknown builtin form '{name}' (known: {})", BUILTIN_NAMES.join(", "))))?;
            (16, f16(i)?, Some(false).filter(|_| i < 0))
        }
    };
    let expansion = expansion.truncate(order - 1);
    debug_assert!(expansion.n_max() == order - 1 && expansion.n_max() != EXACT);
    FormSpec::new(name, weight, 2, 1, expansion, deligne)
}
