//! The `lseries-coeffs v1` text format.
//!
//! ```text
//! # lseries-coeffs v1 weight=2 level=37 fricke=+1 nmin=1
//! 1 1
//! 2 -2
//! 3 -3
//! ```
//!
//! Missing exponents are zero. Optional header keys: `nmax=<n>` (known
//! order when the last coefficients vanish), `deligne=0|1` (whether
//! Deligne's bound may be used) and `label=<name>`.

use std::fmt::Write as _;

use rug::{Integer, Rational};

use super::expansion::QExpansion;
use super::forms::FormSpec;
use crate::error::{Error, Result};

const MAGIC: &str = "lseries-coeffs";

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_rational(s: &str, line: usize) -> Result<Rational> {
    let bad = || perr(line, format!("'{s}' is not an exact integer or fraction"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = Integer::parse(num.trim_start_matches('+')).map(Integer::from).map_err(|_| bad())?;
    let den = match den {
        Some(d) => Integer::parse(d).map(Integer::from).map_err(|_| bad())?,
        None => Integer::from(1),
    };
    if den <= 0 {
        return Err(perr(line, format!("denominator must be positive in '{s}'")));
    }
    Ok(Rational::from((num, den)))
}

/// Parses a v1 coefficient file.
pub fn parse_coefficients(text: &str) -> Result<FormSpec> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty coefficient file"))?;
    let mut words = header.strip_prefix('#').map(str::split_whitespace).ok_or_else(|| perr(hline, "missing '# lseries-coeffs v1' header"))?;
    if words.next() != Some(MAGIC) || words.next() != Some("v1") {
        return Err(perr(hline, "header must start with '# lseries-coeffs v1'"));
    }
    let (mut weight, mut level, mut fricke, mut nmin, mut nmax, mut deligne, mut label) = (None, None, None, None, None, None, None);
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| perr(hline, format!("bad header field '{w}'")))?;
        let int = |v: &str| v.trim_start_matches('+').parse::<i64>().map_err(|_| perr(hline, format!("bad value in '{w}'")));
        match k {
            "weight" => weight = Some(int(v)?),
            "level" => level = Some(int(v)?),
            "fricke" => fricke = Some(int(v)?),
            "nmin" => nmin = Some(int(v)?),
            "nmax" => nmax = Some(int(v)?),
            "deligne" => deligne = Some(int(v)? != 0),
            "label" => label = Some(v.to_string()),
            _ => return Err(perr(hline, format!("unknown header field '{k}'"))),
        }
    }
    let need = |o: Option<i64>, name: &str| o.ok_or_else(|| perr(hline, format!("header lacks {name}=")));
    let weight = need(weight, "weight")?;
    let level = need(level, "level")?;
    let fricke = need(fricke, "fricke")?;
    let nmin = need(nmin, "nmin")?;
    if weight < 0 || level <= 0 {
        return Err(perr(hline, "weight and level must be positive"));
    }

    let mut entries: Vec<(i64, Rational)> = Vec::new();
    for (ln, l) in lines {
        if l.starts_with('#') {
            continue;
        }
        let mut parts = l.split_whitespace();
        let (Some(n), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(perr(ln, format!("expected '<n> <coefficient>', got '{l}'")));
        };
        let n: i64 = n.parse().map_err(|_| perr(ln, format!("bad exponent '{n}'")))?;
        if n < nmin {
            return Err(perr(ln, format!("exponent {n} below nmin={nmin}")));
        }
        if let Some((last, _)) = entries.last() {
            if n <= *last {
                return Err(perr(ln, "exponents must be strictly increasing"));
            }
        }
        entries.push((n, parse_rational(c, ln)?));
    }
    let last = entries.last().map_or(nmin, |(n, _)| *n);
    let n_max = nmax.unwrap_or(last);
    if n_max < last {
        return Err(perr(hline, format!("nmax={n_max} is below the last listed exponent {last}")));
    }
    let mut coeffs = vec![Rational::new(); (n_max - nmin + 1).max(0) as usize];
    for (n, c) in entries {
        coeffs[(n - nmin) as usize] = c;
    }
    let expansion = QExpansion::new(nmin, coeffs, n_max);
    let label = label.unwrap_or_else(|| format!("{level}.{weight}"));
    FormSpec::new(label, weight as u32, level as u64, fricke as i8, expansion, deligne)
}

/// Writes `form` in the v1 format; zero coefficients are omitted.
pub fn write_coefficients(form: &FormSpec) -> String {
    let e = form.expansion();
    let mut out = format!(
        "# {MAGIC} v1 weight={} level={} fricke={} nmin={}",
        form.weight(),
        form.level(),
        if form.fricke() > 0 { "+1" } else { "-1" },
        e.n_min()
    );
    let last_listed = e.terms().last().map(|(n, _)| n);
    if last_listed != Some(e.n_max()) {
        write!(out, " nmax={}", e.n_max()).unwrap();
    }
    if !form.label().is_empty() && !form.label().contains(char::is_whitespace) {
        write!(out, " label={}", form.label()).unwrap();
    }
    if form.deligne_applicable() != form.is_holomorphic() {
        write!(out, " deligne={}", form.deligne_applicable() as u8).unwrap();
    }
    out.push('\n');
    for (n, c) in e.terms() {
        writeln!(out, "{n} {c}").unwrap();
    }
    out
}
