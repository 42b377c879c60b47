//! Leading constants and the correction series of the small-`ε` expansion.

use serde_json::{json, Value};

use super::gaussian::MomentTable;
use super::linalg::{self, Matrix};
use super::qsystem::solve_q;
use super::towers::{bernoulli_exponent, c_tower, d_tower_from, HalfEpsSeries};
use super::tpoly::UniPoly;
use crate::datum::NahmDatum;
use crate::error::{Error, Result};
use crate::precision::{rogers_dilog, PrecisionContext, Rational, Real};

/// Default expansion order.
pub const DEFAULT_ORDER: usize = 4;
/// Largest supported expansion order.
pub const MAX_ORDER: usize = 6;

/// Everything that depends only on `(A, J)`: the root `Q`, `ξ`, `Ã`, the
/// Gaussian moments and the `B`-free part of every tower exponent.
#[derive(Clone, Debug)]
pub struct ProfileBase {
    a: Vec<Vec<Rational>>,
    j: Vec<u32>,
    order: usize,
    ctx: PrecisionContext,
    q: Vec<Real>,
    ln_q: Vec<Real>,
    xi: Vec<Real>,
    atilde: Matrix,
    det_atilde: Real,
    alpha: Real,
    gamma_shift: Real,
    beta_base: Real,
    remainders: Vec<HalfEpsSeries>,
    moments: MomentTable,
}

impl ProfileBase {
    pub fn new(a: &[Vec<Rational>], j: &[u32], order: usize, ctx: PrecisionContext) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::Domain(format!("expansion order must lie in 1..={MAX_ORDER}, got {order}")));
        }
        let k = j.len();
        let q = solve_q(a, j, ctx)?;
        let one = Real::one(ctx);
        let x: Vec<Real> = q.iter().zip(j).map(|(qi, &ji)| qi.powi(ji as i64)).collect();
        let xi: Vec<Real> = x.iter().zip(j).map(|(xi, &ji)| xi * ji as i64 / (&one - xi)).collect();
        let atilde: Matrix = (0..k)
            .map(|r| {
                (0..k)
                    .map(|s| {
                        let v = Real::from_rational(&a[r][s], ctx);
                        if r == s {
                            v + &xi[r]
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let det_atilde = linalg::determinant(&atilde);
        if !det_atilde.is_positive() {
            return Err(Error::NotPositiveDefinite("A + diag(ξ)".into()));
        }
        let l1 = rogers_dilog(&one, ctx)?;
        let mut alpha = Real::zero(ctx);
        let mut gamma_shift = Real::zero(ctx);
        let mut beta_base = det_atilde.sqrt()?.recip()?;
        for i in 0..k {
            let ji = j[i] as i64;
            alpha = alpha + (&l1 - rogers_dilog(&x[i], ctx)?) / ji;
            gamma_shift = gamma_shift + (&one + &x[i]) * ji / (&one - &x[i]);
            beta_base = beta_base / (&one - &x[i]).sqrt()?;
        }
        gamma_shift = gamma_shift / 24;
        let remainders = (0..k)
            .map(|i| bernoulli_exponent(j[i], &x[i], 2 * order, ctx))
            .collect::<Result<Vec<_>>>()?;
        let moments = MomentTable::new(&atilde, 6 * order as u32)?;
        let ln_q = q.iter().map(Real::ln).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            a: a.to_vec(),
            j: j.to_vec(),
            order,
            ctx,
            q,
            ln_q,
            xi,
            atilde,
            det_atilde,
            alpha,
            gamma_shift,
            beta_base,
            remainders,
            moments,
        })
    }

    pub fn for_datum(d: &NahmDatum, order: usize, ctx: PrecisionContext) -> Result<Self> {
        if !d.is_unrestricted() {
            return Err(Error::Domain("asymptotics are only available for sums over all n ≥ 0".into()));
        }
        Self::new(d.a(), d.j(), order, ctx)
    }

    pub fn k(&self) -> usize {
        self.j.len()
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn j(&self) -> &[u32] {
        &self.j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn context(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn q(&self) -> &[Real] {
        &self.q
    }

    pub fn xi(&self) -> &[Real] {
        &self.xi
    }

    pub fn atilde(&self) -> &Matrix {
        &self.atilde
    }

    pub fn det_atilde(&self) -> &Real {
        &self.det_atilde
    }

    pub fn alpha(&self) -> &Real {
        &self.alpha
    }

    /// `γ − C = (1/24) Σ J_i (1 + Q_i^{J_i}) / (1 − Q_i^{J_i})`.
    pub fn gamma_shift(&self) -> &Real {
        &self.gamma_shift
    }

    pub fn moments(&self) -> &MomentTable {
        &self.moments
    }

    /// Tower for axis `i` with linear coefficient `B_i`.
    pub fn d_tower(&self, axis: usize, b: &Rational) -> Vec<UniPoly> {
        let lin = Real::from_rational(b, self.ctx) + &self.xi[axis] / 2;
        d_tower_from(&self.remainders[axis], &lin)
    }

    /// `β = det(Ã)^{−1/2} ∏ Q_i^{B_i} (1 − Q_i^{J_i})^{−1/2}`.
    pub fn beta(&self, b: &[Rational]) -> Real {
        let mut s = Real::zero(self.ctx);
        for (bi, l) in b.iter().zip(&self.ln_q) {
            s = s + Real::from_rational(bi, self.ctx) * l;
        }
        &self.beta_base * s.exp()
    }

    /// `c_1..c_P` from per-axis towers.
    pub fn c_from_towers(&self, towers: &[Vec<UniPoly>]) -> Vec<Real> {
        let cs = c_tower(towers);
        (1..=self.order)
            .map(|p| {
                cs[2 * p].terms().fold(Real::zero(self.ctx), |acc, (e, c)| acc + c * self.moments.get(e))
            })
            .collect()
    }

    /// `c_1..c_P` for the linear term `b`.
    pub fn c_constants(&self, b: &[Rational]) -> Vec<Real> {
        let towers: Vec<_> = b.iter().enumerate().map(|(i, bi)| self.d_tower(i, bi)).collect();
        self.c_from_towers(&towers)
    }

    /// Full profile for linear term `b` and constant `c`.
    pub fn profile(&self, b: &[Rational], c: &Rational) -> AsymptoticProfile {
        AsymptoticProfile {
            q: self.q.clone(),
            xi: self.xi.clone(),
            atilde: self.atilde.clone(),
            det_atilde: self.det_atilde.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta(b),
            j_scale: self.j.iter().fold(Real::one(self.ctx), |acc, &ji| {
                acc * Real::from_i64(ji as i64, self.ctx).sqrt().expect("J > 0")
            }),
            gamma: Real::from_rational(c, self.ctx) + &self.gamma_shift,
            c: self.c_constants(b),
            order: self.order,
        }
    }
}

/// `F(e^{−ε}) ∼ β e^{α/ε} e^{−γε} (1 + Σ c_p ε^p)`.
#[derive(Clone, Debug)]
pub struct AsymptoticProfile {
    pub q: Vec<Real>,
    pub xi: Vec<Real>,
    pub atilde: Matrix,
    pub det_atilde: Real,
    pub alpha: Real,
    pub beta: Real,
    /// `∏ √J_i`; multiplies `β` in the expansion itself.
    pub j_scale: Real,
    pub gamma: Real,
    /// `c_1..c_P`.
    pub c: Vec<Real>,
    pub order: usize,
}

impl AsymptoticProfile {
    pub fn context(&self) -> PrecisionContext {
        self.alpha.context()
    }

    /// Record with every number as a full-precision decimal string.
    pub fn to_json(&self) -> Value {
        let d = self.context().digits() as usize;
        let s = |x: &Real| x.to_sci(d);
        json!({
            "Q": self.q.iter().map(s).collect::<Vec<_>>(),
            "xi": self.xi.iter().map(s).collect::<Vec<_>>(),
            "alpha": s(&self.alpha),
            "beta": s(&self.beta),
            "jScale": s(&self.j_scale),
            "gamma": s(&self.gamma),
            "c": self.c.iter().map(s).collect::<Vec<_>>(),
            "detAtilde": s(&self.det_atilde),
        })
    }
}

pub fn build_profile(d: &NahmDatum, order: usize, ctx: PrecisionContext) -> Result<AsymptoticProfile> {
    Ok(ProfileBase::for_datum(d, order, ctx)?.profile(d.b(), d.c()))
}

/// The constant making the linear correction vanish: `C = c_1 − (γ − C)`.
pub fn solve_c(base: &ProfileBase, b: &[Rational]) -> Real {
    &base.c_constants(b)[0] - base.gamma_shift()
}

/// Truncated right side of the expansion at `ε`.
pub fn asymptotic_eval(p: &AsymptoticProfile, eps: &Real) -> Result<Real> {
    if !eps.is_positive() {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let ctx = p.context();
    let mut series = Real::one(ctx);
    let mut pow = Real::one(ctx);
    for c in &p.c {
        pow = &pow * eps;
        series = series + c * &pow;
    }
    let expo = &p.alpha / eps - &p.gamma * eps;
    Ok(&p.beta * &p.j_scale * expo.exp() * series)
}

/// Exponential growth rate of a product with `pairs` symmetric residue
/// pairs modulo `modulus`: `pairs·π² / (3·modulus)`.
pub fn product_alpha(pairs: u32, modulus: u32, ctx: PrecisionContext) -> Real {
    Real::pi(ctx).powi(2) * pairs as i64 / (3 * modulus as i64)
}
