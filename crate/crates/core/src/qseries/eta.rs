//! Products of Dedekind eta functions.

use rug::{Integer, Rational};

use super::expansion::QExpansion;
use crate::error::{Error, Result};

/// `∏ η(dτ)^{e_d}` through `O(q^order)`, with exact integer coefficients.
///
/// The leading power `Σ d e_d / 24` must be an integer.
pub fn eta_quotient(factors: &[(u32, i32)], order: i64) -> Result<QExpansion> {
    let weighted: i64 = factors.iter().map(|&(d, e)| d as i64 * e as i64).sum();
    if weighted.rem_euclid(24) != 0 {
        return Err(Error::Unsupported(format!(
            "eta quotient has leading power {weighted}/24, which is not an integer"
        )));
    }
    if factors.iter().any(|&(d, _)| d == 0) {
        return Err(Error::Precondition("eta quotient factors need d ≥ 1".into()));
    }
    let lead = weighted / 24;
    let len = order - lead;
    if len <= 0 {
        return Ok(QExpansion::new(order, Vec::new(), order - 1));
    }
    let len = len as usize;
    let mut a = vec![Integer::new(); len];
    a[0] = Integer::from(1);
    for &(d, e) in factors {
        let d = d as usize;
        for m in (d..len).step_by(d) {
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    // multiply by (1 − q^m)
                    for i in (m..len).rev() {
                        let t = a[i - m].clone();
                        a[i] -= t;
                    }
                } else {
                    // divide by (1 − q^m)
                    for i in m..len {
                        let t = a[i - m].clone();
                        a[i] += t;
                    }
                }
            }
        }
    }
    Ok(QExpansion::new(lead, a.into_iter().map(Rational::from).collect(), order - 1))
}

/// Parses `"1^8 2^8"` or `"1^24,2^-24"` into `(d, e_d)` pairs.
pub fn parse_eta_expr(expr: &str) -> Result<Vec<(u32, i32)>> {
    let bad = |tok: &str| Error::Precondition(format!("bad eta factor '{tok}' (expected d^e)"));
    expr.split(|c: char| c.is_whitespace() || c == ',' || c == '*')
        .filter(|t| !t.is_empty())
        .map(|tok| {
            let (d, e) = tok.split_once('^').unwrap_or((tok, "1"));
            let d: u32 = d.trim().parse().map_err(|_| bad(tok))?;
            let e: i32 = e.trim().parse().map_err(|_| bad(tok))?;
            if d == 0 {
                return Err(bad(tok));
            }
            Ok((d, e))
        })
        .collect::<Result<Vec<_>>>()
        .and_then(|v| if v.is_empty() { Err(bad(expr)) } else { Ok(v) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_function() {
        let d = eta_quotient(&[(1, 24)], 3).unwrap();
        assert_eq!(d.to_string(), "q - 24q^2 + O(q^3)");
        let d = eta_quotient(&[(1, 24)], 8).unwrap();
        let tau = [1, -24, 252, -1472, 4830, -6048, -16744];
        for (i, t) in tau.iter().enumerate() {
            assert_eq!(d.coeff(i as i64 + 1), *t);
        }
    }

    #[test]
    fn mod_24_guard() {
        assert!(eta_quotient(&[(1, 1)], 5).is_err());
        assert!(eta_quotient(&[(1, 8), (2, 8)], 5).is_ok());
    }

    #[test]
    fn parse_expressions() {
        assert_eq!(parse_eta_expr("1^8 2^8").unwrap(), vec![(1, 8), (2, 8)]);
        assert_eq!(parse_eta_expr("1^24,2^-24").unwrap(), vec![(1, 24), (2, -24)]);
        assert!(parse_eta_expr("x^2").is_err());
        assert!(parse_eta_expr("").is_err());
    }
}
