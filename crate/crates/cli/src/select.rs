//! `--form` selectors: `builtin:NAME`, `file:PATH`, `lmfdb:LABEL`, `eta:EXPR`.

use std::path::PathBuf;
use std::str::FromStr;

use lcentral::qseries::{builtin_form, eta_quotient, load_coefficients, parse_eta_expr, CoefficientSource, FormSpec};
use lcentral::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSelector {
    Builtin(String),
    File(PathBuf),
    Lmfdb(String),
    Eta(String),
}

impl FromStr for FormSelector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, rest) = s.split_once(':').ok_or_else(|| format!("expected KIND:VALUE, got '{s}'"))?;
        if rest.is_empty() {
            return Err(format!("empty value in '{s}'"));
        }
        Ok(match kind {
            "builtin" => FormSelector::Builtin(rest.into()),
            "file" => FormSelector::File(rest.into()),
            "lmfdb" => FormSelector::Lmfdb(rest.into()),
            "eta" => FormSelector::Eta(rest.into()),
            _ => return Err(format!("unknown form kind '{kind}' (use builtin, file, lmfdb or eta)")),
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FormSelector {
    /// True when the expansion is generated locally to any requested order.
    pub fn is_generated(&self) -> bool {
        matches!(self, FormSelector::Builtin(_) | FormSelector::Eta(_))
    }

    /// Builds or loads the form. `order` is the number of terms generated
    /// for builtin and eta forms and the minimum required otherwise.
    pub fn load(&self, order: i64, fricke: i8) -> Result<FormSpec> {
        match self {
            FormSelector::Builtin(name) => builtin_form(name, order),
            FormSelector::File(p) => load_coefficients(&CoefficientSource::File(p.clone()), 1),
            FormSelector::Lmfdb(label) => load_coefficients(&CoefficientSource::Remote(label.clone()), 1),
            FormSelector::Eta(expr) => {
                let factors = parse_eta_expr(expr)?;
                let expansion = eta_quotient(&factors, order)?;
                let twice_weight: i64 = factors.iter().map(|&(_, e)| e as i64).sum();
                if twice_weight < 0 || twice_weight % 4 != 0 {
                    return Err(Error::Unsupported(format!("eta quotient '{expr}' has weight {}/2; only even weights are supported", twice_weight)));
                }
                let level = factors.iter().fold(1u64, |l, &(d, _)| l / gcd(l, d as u64) * d as u64);
                FormSpec::new(format!("eta:{expr}"), (twice_weight / 2) as u32, level, fricke, expansion, Some(false))
            }
        }
    }
}
