use std::fmt;
use std::time::Duration;

use crate::numerics::{Complex, PrecisionContext};
use crate::qseries::FormSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Integral,
    Sum,
    Both,
}

impl Method {
    pub fn includes_integral(self) -> bool {
        matches!(self, Method::Integral | Method::Both)
    }

    pub fn includes_sum(self) -> bool {
        matches!(self, Method::Sum | Method::Both)
    }
}

/// Which formula produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodTag {
    /// Segment integral against Hurwitz zeta derivatives.
    Integral,
    /// Series in generalized exponential integrals.
    Sum,
    /// Weight-2 segment integral against `log Γ`.
    LogGamma,
    /// Short-circuited sign factor `1 + i^{k+2m} = 0`.
    TrivialZero,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodTag::Integral => "integral",
            MethodTag::Sum => "sum",
            MethodTag::LogGamma => "loggamma",
            MethodTag::TrivialZero => "trivial-zero",
        })
    }
}

/// One evaluation request.
#[derive(Clone, Debug)]
pub struct DerivativeRequest {
    pub form: FormSpec,
    pub m: usize,
    pub method: Method,
    pub ctx: PrecisionContext,
    /// Fixed quadrature degree instead of adaptive doubling.
    pub quad_degree: Option<usize>,
    /// Caller asserts `L^(j)(k/2) = 0` for `j < m`, which makes the plain
    /// derivative conversion unconditional.
    pub assume_lower_vanish: bool,
}

impl DerivativeRequest {
    pub fn new(form: FormSpec, m: usize, ctx: PrecisionContext) -> Self {
        DerivativeRequest { form, m, method: Method::Both, ctx, quad_degree: None, assume_lower_vanish: false }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn with_quad_degree(mut self, n: Option<usize>) -> Self {
        self.quad_degree = n;
        self
    }
}

/// Parameters an evaluation actually used.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamsUsed {
    pub quad_degree: Option<usize>,
    /// Fourier truncation order `M`.
    pub truncation: Option<i64>,
    /// Euler–Maclaurin `(M_em, L_em)`.
    pub em: Option<(usize, usize)>,
    pub prec_bits: u32,
}

/// `L^(m)(k/2)` recovered from the completed derivative.
#[derive(Clone, Debug)]
pub struct PlainDerivative {
    pub value: Complex,
    /// True unless the caller asserted that lower derivatives vanish; only
    /// then is this the actual `m`-th derivative of `L`.
    pub caveat: bool,
}

#[derive(Clone, Debug)]
pub struct LValueResult {
    pub value: Complex,
    pub method: MethodTag,
    pub error_estimate: f64,
    pub params: ParamsUsed,
    pub wall_time: Duration,
    pub plain: Option<PlainDerivative>,
}

impl LValueResult {
    pub fn value_f64(&self) -> (f64, f64) {
        self.value.to_f64_pair()
    }
}
