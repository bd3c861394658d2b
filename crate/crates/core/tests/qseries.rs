use lcentral::numerics::{Complex, PrecisionContext};
use lcentral::qseries::*;
use lcentral::Error;
use proptest::prelude::*;
use rug::float::Constant;
use rug::{Float, Integer, Rational};

fn ints(e: &QExpansion, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range.map(|n| e.coeff(n).numer().to_i64().unwrap()).collect()
}

/// `Π (1 − q^{d m})^{e}` times `q^{Σ d e / 24}` by naive integer multiplication.
fn naive_eta_product(factors: &[(u64, u32)], order: usize) -> Vec<Integer> {
    let mut acc = vec![Integer::new(); order];
    acc[0] = Integer::from(1);
    for &(d, e) in factors {
        for _ in 0..e {
            let mut m = d as usize;
            while m < order {
                for i in (m..order).rev() {
                    let t = Integer::from(&acc[i - m]);
                    acc[i] -= t;
                }
                m += d as usize;
            }
        }
    }
    acc
}

#[test]
fn printed_level_two_expansions() {
    let j = builtin_form("j2plus", 4).unwrap();
    assert_eq!(j.expansion().n_min(), -1);
    assert_eq!(ints(j.expansion(), -1..=3), [1, 0, 4372, 96256, 1240002]);
    let d = builtin_form("delta2plus", 6).unwrap();
    assert_eq!(ints(d.expansion(), 1..=2), [1, -8]);
    let f = builtin_form("f16_-2", 4).unwrap();
    assert_eq!(ints(f.expansion(), 2..=3), [1, -16]);
    let f = builtin_form("f16_1", 4).unwrap();
    assert_eq!(ints(f.expansion(), -1..=3), [1, 0, 0, 0, 7525650]);
    let f = builtin_form("f16_2", 4).unwrap();
    assert_eq!(f.expansion().n_min(), -2);
    assert_eq!(ints(f.expansion(), -2..=3), [1, 0, 0, 0, 0, 140479808]);
}

#[test]
fn weak_basis_vanishes_at_low_order() {
    for name in ["f16_1", "f16_2"] {
        let f = builtin_form(name, 60).unwrap();
        for n in 0..=2 {
            assert!(f.expansion().coeff(n) == 0, "{name}: a({n}) = {}", f.expansion().coeff(n));
        }
        assert!(f.expansion().all_integral());
    }
}

#[test]
fn delta_matches_naive_product() {
    let order = 40;
    let e = eta_quotient(&[(1, 8), (2, 8)], order).unwrap();
    let naive = naive_eta_product(&[(1, 8), (2, 8)], order as usize);
    // (η(τ)η(2τ))⁸ = q Π(1 − q^n)⁸(1 − q^{2n})⁸
    for n in 1..order {
        assert_eq!(e.coeff(n), Rational::from(naive[n as usize - 1].clone()), "n = {n}");
    }
    let sq = e.mul(&e);
    assert_eq!(ints(&sq, 2..=3), [1, -16]);
}

#[test]
fn eta_guard_and_parser() {
    assert!(matches!(eta_quotient(&[(1, 1)], 10), Err(Error::Unsupported(_))));
    assert!(matches!(eta_quotient(&[(1, 8), (2, 7)], 10), Err(Error::Unsupported(_))));
    assert_eq!(parse_eta_expr("1^8 2^8").unwrap(), vec![(1, 8), (2, 8)]);
    assert_eq!(parse_eta_expr("1^24 2^-24").unwrap(), vec![(1, 24), (2, -24)]);
    assert!(parse_eta_expr("1^").is_err());
    assert!(parse_eta_expr("x^2").is_err());
}

#[test]
fn newform_identity_and_hecke_relations() {
    let order = 80;
    let f = builtin_form("f16_new", order).unwrap();
    let a = builtin_form("f16_-1", order).unwrap();
    let b = builtin_form("f16_-2", order).unwrap();
    let combo = a.expansion().sub(&b.expansion().scalar(&Rational::from(128)));
    assert_eq!(&combo, f.expansion());
    let c = |n: i64| Integer::from(f.expansion().coeff(n).numer());
    assert_eq!(c(1), 1);
    // a(2)² = 2^{k−2} for p | N
    assert_eq!(Integer::from(c(2).square_ref()), Integer::from(1) << 14);
    assert_eq!(c(4), Integer::from(c(2).square_ref()));
    for (m, n) in [(3i64, 5i64), (3, 7), (5, 7), (2, 9), (4, 15)] {
        assert_eq!(c(m * n), Integer::from(&c(m) * &c(n)), "a({m})a({n})");
    }
    for p in [3i64, 5, 7] {
        let pk = Integer::from(Integer::u_pow_u(p as u32, 15));
        assert_eq!(c(p * p), Integer::from(c(p).square_ref()) - pk, "a({p}²)");
    }
    // Ramanujan–Deligne: |a(p)| ≤ 2 p^{15/2}
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
        assert!(c(p).to_f64().abs() <= 2.0 * (p as f64).powf(7.5));
    }
}

#[test]
fn coefficient_file_round_trip() {
    for name in ["f16_2", "delta2plus", "j2plus"] {
        let f = builtin_form(name, 30).unwrap();
        let text = write_coefficients(&f);
        assert!(text.starts_with("# lseries-coeffs v1 weight="));
        let g = parse_coefficients(&text).unwrap();
        assert_eq!(g.expansion(), f.expansion(), "{name}");
        assert_eq!((g.weight(), g.level(), g.fricke()), (f.weight(), f.level(), f.fricke()));
        assert_eq!(g.deligne_applicable(), f.deligne_applicable());
    }
    let text = "# lseries-coeffs v1 weight=2 level=37 fricke=+1 nmin=1\n1 1\n2 -2\n3 -3\n";
    let f = parse_coefficients(text).unwrap();
    assert_eq!((f.weight(), f.level()), (2, 37));
    assert_eq!(ints(f.expansion(), 1..=3), [1, -2, -3]);
    let q = "# lseries-coeffs v1 weight=2 level=11 fricke=-1 nmin=1\n1 1/3\n4 -7/2\n";
    let f = parse_coefficients(q).unwrap();
    assert_eq!(f.expansion().coeff(2), 0);
    assert_eq!(f.expansion().coeff(4), Rational::from((-7, 2)));
    assert_eq!(parse_coefficients(&write_coefficients(&f)).unwrap(), f);
}

#[test]
fn malformed_files_are_rejected() {
    let head = "# lseries-coeffs v1 weight=2 level=37 fricke=+1 nmin=1\n";
    for bad in [
        "1 1\n".to_string(),
        format!("{head}1 0.5\n"),
        format!("{head}2 1\n1 1\n"),
        format!("{head}1 1 1\n"),
        head.replace("fricke=+1", "fricke=2") + "1 1\n",
        head.replace("weight=2", "weight=3") + "1 1\n",
    ] {
        assert!(matches!(parse_coefficients(&bad), Err(Error::Parse { .. }) | Err(Error::Precondition(_))), "{bad:?}");
    }
}

#[test]
fn loading_from_files_and_inline() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.txt");
    let f = builtin_form("delta2plus", 20).unwrap();
    std::fs::write(&path, write_coefficients(&f)).unwrap();
    let g = load_coefficients(&CoefficientSource::File(path.clone()), 10).unwrap();
    assert_eq!(g.expansion(), f.expansion());
    assert!(matches!(
        load_coefficients(&CoefficientSource::File(path), 50),
        Err(Error::InsufficientOrder { available: 19, required: 50 })
    ));
    let missing = dir.path().join("missing.txt");
    let err = load_coefficients(&CoefficientSource::File(missing), 1).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.is_usage());
    let h = load_coefficients(&CoefficientSource::Inline(f.clone()), 19).unwrap();
    assert_eq!(h, f);
    let r = load_coefficients(&CoefficientSource::Remote("127.4.a.a".into()), 100).unwrap();
    assert_eq!((r.weight(), r.level(), r.fricke()), (4, 127, 1));
}

/// `Σ_{n>M} |a(n)| e^{−2πn/√N}` over the coefficients actually known.
fn direct_tail(form: &FormSpec, m: i64) -> f64 {
    let decay = 2.0 * std::f64::consts::PI / (form.level() as f64).sqrt();
    form.expansion().terms().filter(|(n, _)| *n > m).map(|(n, c)| c.to_f64().abs() * (-decay * n as f64).exp()).sum()
}

#[test]
fn truncation_order_a_posteriori() {
    let f = bundled("37.2.a.a").unwrap();
    let m = truncation_order(&f, 1e-20).unwrap();
    assert!(direct_tail(&f, m) < 1e-20);
    assert!(m < 200, "M = {m}");
    let m1 = truncation_order(&f, 1.0).unwrap();
    assert!((1..=10).contains(&m1), "M = {m1}");
    let w = builtin_form("f16_1", 200).unwrap();
    let m = truncation_order(&w, 1e-31).unwrap();
    assert!(m < 199);
    assert!(direct_tail(&w, m) < 1e-31, "tail {:e}", direct_tail(&w, m));
    let g = w.growth_bound().unwrap();
    for (n, c) in w.expansion().terms().filter(|(n, _)| *n >= 1) {
        assert!(c.to_f64().abs() <= g.amplitude * (g.exponent * (n as f64).sqrt()).exp() * 1.000001, "n = {n}");
    }
    assert!(truncation_order(&f, 0.0).is_err());
}

#[test]
fn too_short_weak_expansion_is_reported() {
    let w = builtin_form("f16_2", 30).unwrap();
    let ctx = PrecisionContext::new(103).unwrap();
    let z = Complex::from_f64(ctx.bits(), 0.25, 1.0 / 2f64.sqrt());
    assert!(matches!(eval_form(&w, &z, &ctx), Err(Error::InsufficientOrder { .. })));
}

#[test]
fn eval_matches_direct_sums() {
    let ctx = PrecisionContext::new(120).unwrap();
    let p = 300;
    let d = builtin_form("delta2plus", 120).unwrap();
    let v = eval_form(&d, &Complex::from_f64(ctx.bits(), 0.0, 1.0), &ctx).unwrap();
    let q = Float::with_val(p, Float::with_val(p, Constant::Pi) * -2i32).exp();
    let mut direct = Float::new(p);
    for (n, c) in d.expansion().terms() {
        direct += Float::with_val(p, c) * Float::with_val(p, q.pow_ref_u(n as u32));
    }
    assert!((Float::with_val(p, &v.re - &direct)).abs().to_f64() < 1e-34);
    assert!(v.im.to_f64().abs() < 1e-34);

    let single = FormSpec::new("q", 2, 5, 1, QExpansion::from_integers(1, &[1], 80), None).unwrap();
    let z = Complex::from_f64(ctx.bits(), 0.0, 0.0).with_im_sqrt_recip(5);
    let v = eval_form(&single, &z, &ctx).unwrap();
    let expect = (-2.0 * std::f64::consts::PI / 5f64.sqrt()).exp();
    assert!((v.re.to_f64() - expect).abs() < 1e-16 && v.im.to_f64().abs() < 1e-30);
}

trait PowU {
    fn pow_ref_u(&self, n: u32) -> Float;
}

impl PowU for Float {
    fn pow_ref_u(&self, n: u32) -> Float {
        use rug::ops::Pow;
        Float::with_val(self.prec(), self.pow(n))
    }
}

trait WithIm {
    fn with_im_sqrt_recip(self, n: u32) -> Complex;
}

impl WithIm for Complex {
    fn with_im_sqrt_recip(mut self, n: u32) -> Complex {
        self.im = Float::with_val(self.prec(), n).sqrt().recip();
        self
    }
}

#[test]
fn conjugate_symmetry_and_precision_stability() {
    let f = builtin_form("f16_2", 120).unwrap();
    let ctx = PrecisionContext::new(103).unwrap();
    let fine = PrecisionContext::new(206).unwrap();
    for x in [0.0, 0.125, 0.3125, 0.46875] {
        let z = Complex::from_f64(ctx.bits(), x, 0.0).with_im_sqrt_recip(2);
        let zr = Complex::from_f64(ctx.bits(), 1.0 - x, 0.0).with_im_sqrt_recip(2);
        let a = eval_form(&f, &z, &ctx).unwrap();
        let b = eval_form(&f, &zr, &ctx).unwrap();
        assert!((&a - &b.conj()).abs_f64() < 1e-26 * a.abs_f64().max(1.0), "x = {x}");
        let c = eval_form(&f, &z.rounded(fine.bits()).with_im_sqrt_recip(2), &fine).unwrap();
        assert!((&a - &c.rounded(ctx.bits())).abs_f64() < ctx.target_eps() * a.abs_f64().max(1.0), "x = {x}");
    }
    let below = Complex::from_f64(ctx.bits(), 0.5, -0.1);
    assert!(matches!(eval_form(&f, &below, &ctx), Err(Error::Domain(_))));
}

fn small_series() -> impl Strategy<Value = QExpansion> {
    (-2i64..2, prop::collection::vec(-20i64..20, 1..6)).prop_map(|(n_min, c)| {
        let n_max = n_min + c.len() as i64 + 3;
        QExpansion::from_integers(n_min, &c, n_max)
    })
}

/// Both sides truncated to the order known for both; a product of truncated
/// series can be known further on one side than the other.
fn common_order(x: &QExpansion, y: &QExpansion) -> (QExpansion, QExpansion) {
    let n = x.n_max().min(y.n_max());
    (x.truncate(n), y.truncate(n))
}

proptest! {
    #[test]
    fn laurent_series_form_a_ring(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        let (l, r) = common_order(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c)));
        prop_assert_eq!(l, r);
        let (l, r) = common_order(&a.add(&b).mul(&c), &a.mul(&c).add(&b.mul(&c)));
        prop_assert_eq!(l, r);
        prop_assert!(a.sub(&a).is_zero());
    }
}
