//! Plain numeric evaluation at `q = e^{−ε}`, for checking the expansion.

use crate::datum::NahmDatum;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};
use crate::qseries::ProductSpec;

struct Walker<'a> {
    q: Real,
    ln_q: Real,
    ctx: PrecisionContext,
    a: Vec<Vec<Real>>,
    half_diag_plus_b: Vec<Real>,
    j: &'a [u32],
    lower: &'a [u32],
    rel: Real,
    peak: Real,
    sum: Real,
}

impl Walker<'_> {
    /// `t(n + e_i) / t(n)`.
    fn ratio(&self, axis: usize, n: &[u32]) -> Real {
        let mut e = self.half_diag_plus_b[axis].clone();
        for (l, &nl) in n.iter().enumerate() {
            e = e + &self.a[axis][l] * nl as i64;
        }
        let qe = (e * &self.ln_q).exp();
        let den = Real::one(self.ctx) - self.q.powi(self.j[axis] as i64 * (n[axis] as i64 + 1));
        qe / den
    }

    /// Sums the slab with axes `< axis` fixed; returns its largest term.
    fn walk(&mut self, axis: usize, n: &mut Vec<u32>, term: Real) -> Real {
        let k = n.len();
        let mut t = term;
        let mut best = Real::zero(self.ctx);
        loop {
            let slab_max = if axis + 1 == k {
                self.sum = &self.sum + &t;
                t.clone()
            } else {
                self.walk(axis + 1, n, t.clone())
            };
            if slab_max > self.peak {
                self.peak = slab_max.clone();
            }
            best = best.max(&slab_max);
            let r = self.ratio(axis, n);
            let past_peak = r < Real::one(self.ctx);
            if past_peak && slab_max < &self.peak * &self.rel {
                break;
            }
            t = t * r;
            n[axis] += 1;
        }
        n[axis] = self.lower[axis];
        best
    }
}

/// `F(e^{−ε})` summed until the remaining terms fall below `10^{−digits}`
/// relative to the largest.
pub fn direct_sum(d: &NahmDatum, eps: &Real, ctx: PrecisionContext) -> Result<Real> {
    if !eps.is_positive() {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let k = d.k();
    let q = (-eps).exp();
    let a: Vec<Vec<Real>> = d.a().iter().map(|r| r.iter().map(|x| Real::from_rational(x, ctx)).collect()).collect();
    let half_diag_plus_b = (0..k).map(|i| &a[i][i] / 2 + Real::from_rational(&d.b()[i], ctx)).collect();
    let lower = d.lower();
    let start: Vec<i64> = lower.iter().map(|&x| x as i64).collect();
    let e0 = Real::from_rational(&d.exponent(&start), ctx);
    let mut t0 = (-(e0 * eps)).exp();
    for i in 0..k {
        let qj = q.powi(d.j()[i] as i64);
        let mut f = Real::one(ctx);
        for m in 1..=lower[i] as i64 {
            f = f * (Real::one(ctx) - qj.powi(m));
        }
        t0 = t0 / f;
    }
    let mut w = Walker {
        q,
        ln_q: -eps,
        ctx,
        a,
        half_diag_plus_b,
        j: d.j(),
        lower,
        rel: Real::pow10(-(ctx.digits() as i64 + 10), ctx),
        peak: Real::zero(ctx),
        sum: Real::zero(ctx),
    };
    let mut n: Vec<u32> = lower.to_vec();
    w.walk(0, &mut n, t0);
    Ok(w.sum)
}

/// The product side at `q = e^{−ε}`, each factor family cut once
/// `q^e < 10^{−digits−5}`.
pub fn product_numeric(spec: &ProductSpec, eps: &Real, ctx: PrecisionContext) -> Result<Real> {
    spec.validate()?;
    let cutoff = Real::pow10(-(ctx.digits() as i64 + 5), ctx);
    let mut acc = Real::one(ctx);
    for (m, r, k) in spec.factors() {
        let mut e = r as i64;
        loop {
            let qe = (-(eps * e)).exp();
            if qe < cutoff {
                break;
            }
            let f = (Real::one(ctx) - qe).powi(k);
            acc = acc * f;
            e += m as i64;
        }
    }
    Ok(acc)
}
