use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use nahmsum::precision::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(50).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn li2_reflection(z in 0.001f64..0.999) {
        let c = ctx();
        let z = Real::from_f64(z, c);
        let w = Real::one(c) - &z;
        let lhs = li2(&z, c).unwrap() + li2(&w, c).unwrap();
        let rhs = Real::pi(c).powi(2) / 6 - z.ln().unwrap() * w.ln().unwrap();
        prop_assert!(below(&(lhs - rhs), &Real::pow10(-40, c)));
    }

    #[test]
    fn exact_rationals_reconstruct(p in -5000i64..5000, q in 1i64..2000) {
        let c = ctx();
        let r = rat(p, q);
        let x = Real::from_rational(&r, c);
        let got = rational_reconstruct(&x, &BigInt::from(10_000), &Real::pow10(-30, c));
        prop_assert_eq!(got, Some(r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polylog_neg_matches_direct_sum(m in 0u32..=8, z in 0.05f64..0.9) {
        let c = PrecisionContext::new(30).unwrap();
        let zr = Real::from_f64(z, c);
        let closed = polylog_neg(m, &zr, c).unwrap();
        // n^m z^n < 10^{-40} well before this bound for z <= 0.9
        let mut sum = Real::zero(c);
        let mut zn = Real::one(c);
        for n in 1..=1400i64 {
            zn = zn * &zr;
            sum = sum + Real::from_i64(n, c).powi(m as i64) * &zn;
        }
        let rel = (closed - &sum) / &sum;
        prop_assert!(below(&rel, &Real::pow10(-25, c)), "m={} z={}", m, z);
    }
}

#[test]
fn bernoulli_polynomial_identities() {
    for p in 2..=14usize {
        let b = bernoulli_poly(p);
        // B_p(1) − B_p(0)
        let at_one: Rational = b.iter().cloned().sum();
        assert!((at_one - &b[0]).is_zero(), "p = {p}");
        let lower = bernoulli_poly(p - 1);
        for (m, coeff) in b.iter().enumerate().skip(1) {
            let derived = coeff * rat(m as i64, 1);
            assert_eq!(derived, &lower[m - 1] * rat(p as i64, 1), "p = {p}, m = {m}");
        }
    }
    assert!(bernoulli_poly(0)[0].is_one());
}

#[test]
fn pi_has_no_small_rational() {
    let c = ctx();
    assert_eq!(rational_reconstruct(&Real::pi(c), &BigInt::from(1000), &Real::pow10(-40, c)), None);
}
