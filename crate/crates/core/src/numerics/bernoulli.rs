//! Bernoulli numbers, memoized.

use std::sync::RwLock;

use rug::{Float, Integer, Rational};

/// `B_0, B_1, …, B_n` (all indices, `B_1 = -1/2`).
static TABLE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

fn extend_to(table: &mut Vec<Rational>, n: usize) {
    while table.len() <= n {
        let m = table.len();
        if m == 0 {
            table.push(Rational::from(1));
            continue;
        }
        if m > 1 && m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Rational::new();
        let mut binom = Integer::from(1);
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from(&binom * b.numer()) / b.denom();
            }
            binom *= m + 1 - k;
            binom /= k + 1;
        }
        table.push(-acc / Integer::from(m + 1));
    }
}

/// The even-index Bernoulli number `B_{2l}`.
pub fn bernoulli(l: usize) -> Rational {
    let n = 2 * l;
    if let Some(b) = TABLE.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = TABLE.write().unwrap();
    extend_to(&mut table, n);
    table[n].clone()
}

/// `B_{2l}` rounded to `prec` bits.
pub fn bernoulli_float(l: usize, prec: u32) -> Float {
    Float::with_val(prec, &bernoulli(l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((1, 6)));
        assert_eq!(bernoulli(2), Rational::from((-1, 30)));
        assert_eq!(bernoulli(5), Rational::from((5, 66)));
        assert_eq!(bernoulli(6), Rational::from((-691, 2730)));
    }

    #[test]
    fn defining_recurrence_holds() {
        bernoulli(30);
        let table = TABLE.read().unwrap().clone();
        for n in 1..table.len() {
            let mut acc = Rational::new();
            for (k, b) in table.iter().take(n + 1).enumerate() {
                let c = Integer::from(Integer::binomial_u(n as u32 + 1, k as u32));
                acc += Rational::from(c * b.numer()) / b.denom();
            }
            assert!(acc.is_zero(), "n = {n}");
        }
    }
}
