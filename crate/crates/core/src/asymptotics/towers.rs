//! The per-axis polynomial towers `D_p` and their convolution `C_p`.

use super::tpoly::{TPolynomial, UniPoly};
use crate::error::Result;
use crate::precision::{bernoulli_poly, polylog_neg, PrecisionContext, Real};

/// Series `Σ_h f_h(t) ε^{h/2}` truncated after half-power `max_half`.
#[derive(Clone, Debug)]
pub struct HalfEpsSeries {
    terms: Vec<UniPoly>,
}

impl HalfEpsSeries {
    pub fn zero(max_half: usize, ctx: PrecisionContext) -> Self {
        Self { terms: vec![UniPoly::zero(ctx); max_half + 1] }
    }

    pub fn max_half(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, h: usize) -> &UniPoly {
        &self.terms[h]
    }

    pub fn terms(&self) -> &[UniPoly] {
        &self.terms
    }

    /// Adds `c · t^m ε^{h/2}`; ignored past the truncation.
    pub fn add_term(&mut self, h: usize, m: usize, c: &Real) {
        if h < self.terms.len() {
            self.terms[h].add_term(m, c);
        }
    }

    /// `exp` of a series with zero constant term, by `h·f_h = Σ_j j·e_j·f_{h−j}`.
    pub fn exp(&self) -> Self {
        let ctx = self.ctx();
        let n = self.terms.len();
        let mut f = vec![UniPoly::constant(Real::one(ctx))];
        for h in 1..n {
            let mut acc = UniPoly::zero(ctx);
            for jx in 1..=h {
                if self.terms[jx].degree().is_none() {
                    continue;
                }
                let prod = &self.terms[jx].scale(&Real::from_i64(jx as i64, ctx)) * &f[h - jx];
                acc = &acc + &prod;
            }
            f.push(acc.scale(&Real::from_i64(h as i64, ctx).recip().expect("h > 0")));
        }
        Self { terms: f }
    }

    fn ctx(&self) -> PrecisionContext {
        // every entry shares the context it was created with
        self.terms[0].coeff(0).context()
    }
}

/// The `B`-independent part of the exponent:
/// `−Σ_{p'≥3} (J^{p'−1}/p'!) Li_{2−p'}(x) Bern_{p'}(t/√ε) ε^{p'−1}` with `x = Q^J`,
/// Bernoulli orders `3 ≤ p' ≤ max_half + 2`.
pub fn bernoulli_exponent(j: u32, x: &Real, max_half: usize, ctx: PrecisionContext) -> Result<HalfEpsSeries> {
    let mut s = HalfEpsSeries::zero(max_half, ctx);
    let mut fact = Real::from_i64(2, ctx);
    let mut jpow = Real::from_i64(j as i64, ctx);
    for p in 3..=max_half + 2 {
        fact = fact * p as i64;
        jpow = jpow * j as i64;
        let kappa = -(&jpow / &fact) * polylog_neg(p as u32 - 2, x, ctx)?;
        for (m, b) in bernoulli_poly(p).iter().enumerate() {
            if num_traits::Zero::is_zero(b) {
                continue;
            }
            let h = 2 * p - 2 - m;
            s.add_term(h, m, &(&kappa * Real::from_rational(b, ctx)));
        }
    }
    Ok(s)
}

/// `D_0..D_{max_half}` from the precomputed Bernoulli exponent and the
/// linear coefficient `B + ξ/2`.
pub fn d_tower_from(remainder: &HalfEpsSeries, linear: &Real) -> Vec<UniPoly> {
    let mut e = remainder.clone();
    if e.max_half() >= 1 {
        e.add_term(1, 1, linear);
    }
    e.exp().terms
}

/// `D_0..D_{2P}` for one axis.
pub fn d_tower(b: &Real, xi: &Real, j: u32, q: &Real, p_order: usize, ctx: PrecisionContext) -> Result<Vec<UniPoly>> {
    let x = q.powi(j as i64);
    let rem = bernoulli_exponent(j, &x, 2 * p_order, ctx)?;
    Ok(d_tower_from(&rem, &(b + xi / 2)))
}

/// `C_0..C_{len−1}`: `C_p = Σ_{p_1+…+p_k=p} ∏ D^{(i)}_{p_i}(t_i)`.
pub fn c_tower(towers: &[Vec<UniPoly>]) -> Vec<TPolynomial> {
    let k = towers.len();
    let len = towers.iter().map(Vec::len).min().unwrap_or(0);
    let ctx = towers[0][0].coeff(0).context();
    let mut acc: Vec<TPolynomial> = (0..len).map(|p| towers[0][p].to_tpoly(0, k)).collect();
    for (axis, tower) in towers.iter().enumerate().skip(1) {
        let lifted: Vec<TPolynomial> = tower.iter().take(len).map(|d| d.to_tpoly(axis, k)).collect();
        acc = (0..len)
            .map(|p| {
                let mut s = TPolynomial::zero(k, ctx);
                for a in 0..=p {
                    s = &s + &(&acc[a] * &lifted[p - a]);
                }
                s
            })
            .collect();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{below, rat};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    #[test]
    fn first_capparelli_polynomial() {
        let c = ctx();
        let q = Real::from_rational(&rat(3, 4), c);
        let d = d_tower(&Real::zero(c), &Real::from_i64(3, c), 1, &q, 4, c).unwrap();
        assert_eq!(d.len(), 9);
        let d1 = &d[1];
        assert!(below(&(d1.coeff(1) - Real::from_rational(&rat(3, 2), c)), &c.epsilon(5)));
        assert!(below(&(d1.coeff(3) + 2), &c.epsilon(5)));
        assert!(d1.coeff(0).is_zero() && d1.coeff(2).is_zero());
    }

    #[test]
    fn truncation_is_stable() {
        let c = ctx();
        let q = Real::from_rational(&rat(2, 3), c);
        let x = q.powi(3);
        let lin = Real::from_rational(&rat(7, 5), c);
        let short = d_tower_from(&bernoulli_exponent(3, &x, 8, c).unwrap(), &lin);
        let long = d_tower_from(&bernoulli_exponent(3, &x, 10, c).unwrap(), &lin);
        for p in 0..=8 {
            let diff = &short[p] + &long[p].scale(&Real::from_i64(-1, c));
            assert!(diff.coeffs().iter().all(|v| below(v, &c.epsilon(5))), "p = {p}");
        }
    }

    #[test]
    fn parity_of_degrees() {
        let c = ctx();
        let q = Real::from_rational(&rat(3, 4), c);
        let d = d_tower(&Real::from_i64(1, c), &Real::from_i64(3, c), 1, &q, 4, c).unwrap();
        for (p, dp) in d.iter().enumerate() {
            for (m, _) in dp.terms() {
                assert_eq!(m % 2, p % 2, "D_{p} has t^{m}");
            }
        }
    }

    #[test]
    fn two_axis_convolution() {
        let c = ctx();
        let q = Real::from_rational(&rat(3, 4), c);
        let d1 = d_tower(&Real::zero(c), &Real::from_i64(3, c), 1, &q, 2, c).unwrap();
        let d2 = d_tower(&Real::one(c), &Real::from_i64(24, c), 3, &Real::from_rational(&rat(1, 2), c), 2, c).unwrap();
        let cs = c_tower(&[d1.clone(), d2.clone()]);
        let expect = &(&d1[2].to_tpoly(0, 2) + &(&d1[1].to_tpoly(0, 2) * &d2[1].to_tpoly(1, 2))) + &d2[2].to_tpoly(1, 2);
        let pt = [Real::from_rational(&rat(1, 3), c), Real::from_rational(&rat(-2, 7), c)];
        assert!(below(&(cs[2].eval(&pt) - expect.eval(&pt)), &c.epsilon(5)));
        let single = c_tower(std::slice::from_ref(&d1));
        assert!(below(&(single[3].eval(&pt[..1]) - d1[3].eval(&pt[0])), &c.epsilon(5)));
    }
}
