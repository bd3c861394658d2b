//! Text and JSON rendering of results.

use serde::Serialize;

use lcentral::lseries::LValueResult;
use lcentral::numerics::format_decimal;

/// One computed value; the field names form the stable JSON schema.
#[derive(Clone, Debug, Serialize)]
pub struct ResultRecord {
    pub form: String,
    /// `completed` for `(L*)^(m)(k/2)`, `lambda` for `Λ^(m)(f, k/2)`.
    pub quantity: String,
    pub derivative: usize,
    pub value_re: String,
    pub value_im: String,
    pub err_estimate: f64,
    pub method: String,
    pub prec_bits: u32,
    pub quad_degree: Option<usize>,
    pub trunc_order: Option<i64>,
    pub wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plain_re: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plain_im: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plain_caveat: Option<bool>,
}

impl ResultRecord {
    pub fn new(form: &str, quantity: &str, derivative: usize, v: &LValueResult, digits: usize) -> Self {
        ResultRecord {
            form: form.into(),
            quantity: quantity.into(),
            derivative,
            value_re: format_decimal(&v.value.re, digits),
            value_im: format_decimal(&v.value.im, digits),
            err_estimate: v.error_estimate,
            method: v.method.to_string(),
            prec_bits: v.params.prec_bits,
            quad_degree: v.params.quad_degree,
            trunc_order: v.params.truncation,
            wall_ms: v.wall_time.as_secs_f64() * 1e3,
            plain_re: v.plain.as_ref().map(|p| format_decimal(&p.value.re, digits)),
            plain_im: v.plain.as_ref().map(|p| format_decimal(&p.value.im, digits)),
            plain_caveat: v.plain.as_ref().map(|p| p.caveat),
        }
    }

    fn value(&self) -> String {
        complex_text(&self.value_re, &self.value_im)
    }

    /// `(L*)^(m)(c)` or `Λ^(m)(f, c)` with the centre `c = k/2`.
    pub fn label(&self, centre: u32) -> String {
        match self.quantity.as_str() {
            "completed" => format!("(L*)^({})({centre})", self.derivative),
            _ => format!("Λ^({})(f, {centre})", self.derivative),
        }
    }

    fn params(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.quad_degree {
            parts.push(format!("quad {n}"));
        }
        if let Some(m) = self.trunc_order {
            parts.push(format!("M {m}"));
        }
        parts.push(format!("{} bits", self.prec_bits));
        parts.join(", ")
    }

    /// One line without timing so that repeated runs print identical text.
    pub fn text_line(&self, centre: u32) -> String {
        format!("{:<16} {:<12} {}  ± {:.1e}  [{}]", self.label(centre), self.method, self.value(), self.err_estimate, self.params())
    }

    pub fn plain_line(&self, centre: u32) -> Option<String> {
        let (re, im) = (self.plain_re.as_ref()?, self.plain_im.as_ref()?);
        let note = if self.plain_caveat == Some(true) { "  (equals L^(m) only if all lower derivatives vanish)" } else { "" };
        Some(format!("{:<16} {:<12} {}{note}", format!("L^({})({centre})", self.derivative), self.method, complex_text(re, im)))
    }
}

/// `a`, `a + bi` or `a - bi`; an exactly zero imaginary part is omitted.
pub fn complex_text(re: &str, im: &str) -> String {
    if im == "0" {
        re.to_string()
    } else if let Some(rest) = im.strip_prefix('-') {
        format!("{re} - {rest}i")
    } else {
        format!("{re} + {im}i")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRecord {
    #[serde(flatten)]
    pub result: ResultRecord,
    pub reference_re: String,
    pub reference_im: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_err: Option<f64>,
    /// `|printed value − our integral value|`, compared against `published_err`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub published_gap: Option<f64>,
    /// `|integral − sum|` from our own two methods.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method_gap: Option<f64>,
}
