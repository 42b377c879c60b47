use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::real::Rational;

/// Bernoulli numbers `B_0..=B_n` with the `B_1 = −1/2` convention.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        let mut acc = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(k)));
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Coefficients of the Bernoulli polynomial `B_p(u)`, ascending in `u`
/// (entry `m` multiplies `u^m`).
pub fn bernoulli_poly(p: usize) -> Vec<Rational> {
    let numbers = bernoulli_numbers(p);
    (0..=p)
        .map(|m| Rational::from_integer(binomial(BigInt::from(p), BigInt::from(m))) * &numbers[p - m])
        .collect()
}
