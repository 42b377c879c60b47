use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::real::{Rational, Real};

/// Continued-fraction reconstruction of a rational from a real value.
///
/// Walks the convergents `p/q` of `x` in order and returns the first one with
/// `q <= max_den` and `|x − p/q| < tol`. Returns `None` once the denominators
/// exceed `max_den`.
pub fn rational_reconstruct(x: &Real, max_den: &BigInt, tol: &Real) -> Option<Rational> {
    let ctx = x.context();
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut rest = x.clone();
    // each partial quotient consumes at least one bit
    for _ in 0..ctx.bits() {
        let a = rest.floor_to_bigint();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        if &k_next > max_den {
            return None;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let approx = Real::from_bigint(&h, ctx) / Real::from_bigint(&k, ctx);
        if (x - &approx).abs() < *tol {
            return Some(Rational::new(h, k));
        }
        let frac = &rest - Real::from_bigint(&a, ctx);
        if frac.is_zero() {
            return None;
        }
        rest = frac.recip().ok()?;
    }
    None
}
