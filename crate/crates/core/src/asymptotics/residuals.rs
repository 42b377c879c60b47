//! Necessary conditions for a (sum of) Nahm-type series to be modular.

use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Real};

/// One summand's contribution: `β e^{−γε} (1 + Σ c_p ε^p)`.
#[derive(Clone, Debug)]
pub struct TermExpansion {
    pub beta: Real,
    pub gamma: Real,
    /// `c_1..c_P`.
    pub c: Vec<Real>,
}

impl TermExpansion {
    /// `[ε^p] e^{−γε}(1 + Σ c ε^p)` for `p = 0..=order`.
    pub fn series(&self, order: usize) -> Vec<Real> {
        let ctx = self.beta.context();
        let mut exp_neg = vec![Real::one(ctx)];
        for n in 1..=order {
            let prev = exp_neg[n - 1].clone();
            exp_neg.push(-(prev * &self.gamma) / n as i64);
        }
        let c_at = |jx: usize| if jx == 0 { Real::one(ctx) } else { self.c[jx - 1].clone() };
        (0..=order)
            .map(|p| (0..=p).fold(Real::zero(ctx), |acc, jx| acc + c_at(jx) * &exp_neg[p - jx]))
            .collect()
    }
}

/// `λ = S_0` and `L_p = [ε^p] ln(S(ε)/S_0)` for `p = 1..=order`.
#[derive(Clone, Debug)]
pub struct Residuals {
    pub lambda: Real,
    /// `L_1..L_P`; `L_1` is the exponent `C*` of the compensating `q^{C*}`.
    pub l: Vec<Real>,
}

impl Residuals {
    pub fn c_star(&self) -> &Real {
        &self.l[0]
    }

    /// `L_2..L_P`.
    pub fn constraints(&self) -> &[Real] {
        &self.l[1..]
    }

    /// Every `|L_p| < tol` for `p ≥ 2`.
    pub fn passes(&self, tol: &Real) -> bool {
        self.constraints().iter().all(|x| x.abs() < *tol)
    }
}

/// Pass threshold `10^{−digits/3}` for a context.
pub fn tolerance(ctx: PrecisionContext) -> Real {
    Real::pow10(-(ctx.digits() as i64 / 3), ctx)
}

/// Residuals of `Σ_m β_m e^{−γ_m ε}(1 + Σ c_{p,m} ε^p)` against `λ·q^{−C*}`.
pub fn modularity_residuals(terms: &[TermExpansion], order: usize) -> Result<Residuals> {
    let Some(first) = terms.first() else {
        return Err(Error::Domain("no terms".into()));
    };
    let ctx = first.beta.context();
    let mut s = vec![Real::zero(ctx); order + 1];
    let mut scale = Real::zero(ctx);
    for t in terms {
        if t.c.len() < order {
            return Err(Error::Domain(format!("term carries {} corrections, need {order}", t.c.len())));
        }
        scale = scale.max(&t.beta.abs());
        for (acc, v) in s.iter_mut().zip(t.series(order)) {
            *acc = &*acc + &t.beta * v;
        }
    }
    if s[0].abs() <= &scale * tolerance(ctx) {
        return Err(Error::Degenerate(format!("Σ β = {}", s[0].to_sci(10))));
    }
    let u: Vec<Real> = s.iter().map(|x| x / &s[0]).collect();
    let mut g: Vec<Real> = vec![Real::zero(ctx)];
    for n in 1..=order {
        let mut acc = &u[n] * n as i64;
        for jx in 1..n {
            acc = acc - &g[jx] * &u[n - jx] * jx as i64;
        }
        g.push(acc / n as i64);
    }
    Ok(Residuals { lambda: s[0].clone(), l: g.split_off(1) })
}

/// `[ε^p] e^{−γε}(1 + Σ c ε^p)` for `p = 1..=order`; the constraints in
/// their unnormalised form.
pub fn constraint_residuals(gamma: &Real, c: &[Real], order: usize) -> Vec<Real> {
    let t = TermExpansion { beta: Real::one(gamma.context()), gamma: gamma.clone(), c: c.to_vec() };
    t.series(order).split_off(1)
}
