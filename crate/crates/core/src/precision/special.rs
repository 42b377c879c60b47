//! Dilogarithms and negative-order polylogarithms on the unit interval.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::real::{PrecisionContext, Real};
use crate::error::{Error, Result};

fn check_unit(z: &Real, name: &str) -> Result<()> {
    let ctx = z.context();
    if z.is_negative() || *z > Real::one(ctx) {
        return Err(Error::Domain(format!("{name} needs 0 <= z <= 1, got {}", z.to_sci(15))));
    }
    Ok(())
}

/// `Σ z^n / n²` for `0 <= z <= 1/2`, summed until terms fall below the
/// working precision.
fn li2_series(z: &Real, ctx: PrecisionContext) -> Real {
    let cutoff = Real::pow10(-(ctx.digits() as i64) - 10, ctx);
    let mut sum = Real::zero(ctx);
    let mut power = z.with_context(ctx);
    let mut n: i64 = 1;
    loop {
        let term = &power / (n * n);
        sum = &sum + &term;
        if term.abs() < cutoff {
            break;
        }
        power = &power * z;
        n += 1;
    }
    sum
}

/// Dilogarithm `Li₂(z)` on `[0, 1]`.
///
/// Arguments above one half go through the reflection
/// `Li₂(z) + Li₂(1−z) = π²/6 − ln z · ln(1−z)`.
pub fn li2(z: &Real, ctx: PrecisionContext) -> Result<Real> {
    check_unit(z, "li2")?;
    let one = Real::one(ctx);
    let pi2_6 = Real::pi(ctx).powi(2) / 6;
    if z.is_zero() {
        return Ok(Real::zero(ctx));
    }
    if *z == one {
        return Ok(pi2_6);
    }
    let half = Real::from_i64(1, ctx) / 2;
    if *z <= half {
        return Ok(li2_series(z, ctx));
    }
    let w = &one - z;
    let reflected = li2_series(&w, ctx);
    Ok(pi2_6 - z.ln()? * w.ln()? - reflected)
}

/// Rogers dilogarithm `L(z) = Li₂(z) + ½ ln z ln(1−z)` with `L(0) = 0`,
/// `L(1) = π²/6`.
pub fn rogers_dilog(z: &Real, ctx: PrecisionContext) -> Result<Real> {
    check_unit(z, "rogers_dilog")?;
    let one = Real::one(ctx);
    if z.is_zero() {
        return Ok(Real::zero(ctx));
    }
    if *z == one {
        return Ok(Real::pi(ctx).powi(2) / 6);
    }
    let w = &one - z;
    Ok(li2(z, ctx)? + z.ln()? * w.ln()? / 2)
}

/// Integer coefficients (ascending) of `P_n` with
/// `Li_{-n}(z) = P_n(z) / (1−z)^{n+1}`.
///
/// `P_0 = z`, `P_n = z·((1−z)·P'_{n−1} + n·P_{n−1})`; the coefficients are
/// Eulerian numbers shifted by one power of `z`.
pub fn polylog_neg_numerator(n: u32) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(), BigInt::one()];
    for k in 1..=n {
        let deg = p.len() - 1;
        // (1−z)P' + kP, then multiply by z
        let mut inner = vec![BigInt::zero(); deg + 1];
        for (j, c) in p.iter().enumerate() {
            if j >= 1 {
                let d = c * BigInt::from(j);
                inner[j - 1] += &d;
                inner[j] -= &d;
            }
            inner[j] += c * BigInt::from(k);
        }
        let mut next = vec![BigInt::zero(); deg + 2];
        for (j, c) in inner.into_iter().enumerate() {
            next[j + 1] = c;
        }
        while next.len() > 1 && next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        p = next;
    }
    p
}

/// `Li_{-n}(z)` for `0 < z < 1` via its closed rational form.
pub fn polylog_neg(n: u32, z: &Real, ctx: PrecisionContext) -> Result<Real> {
    let one = Real::one(ctx);
    if !z.is_positive() || *z >= one {
        return Err(Error::Domain(format!("polylog_neg needs 0 < z < 1, got {}", z.to_sci(15))));
    }
    let coeffs = polylog_neg_numerator(n);
    let mut num = Real::zero(ctx);
    for c in coeffs.iter().rev() {
        num = &num * z + Real::from_bigint(c, ctx);
    }
    let denom = (&one - z).powi(n as i64 + 1);
    Ok(num / denom)
}
