use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use crate::precision::{PrecisionContext, Real};

/// Dense polynomial in one variable `t`; entry `m` multiplies `t^m`.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<Real>,
    ctx: PrecisionContext,
}

impl UniPoly {
    pub fn zero(ctx: PrecisionContext) -> Self {
        Self { coeffs: Vec::new(), ctx }
    }

    pub fn constant(c: Real) -> Self {
        let ctx = c.context();
        Self { coeffs: vec![c], ctx }
    }

    pub fn from_coeffs(coeffs: Vec<Real>, ctx: PrecisionContext) -> Self {
        Self { coeffs, ctx }
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    /// Coefficient of `t^m` (zero past the stored degree).
    pub fn coeff(&self, m: usize) -> Real {
        self.coeffs.get(m).cloned().unwrap_or_else(|| Real::zero(self.ctx))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Adds `c · t^m`.
    pub fn add_term(&mut self, m: usize, c: &Real) {
        if self.coeffs.len() <= m {
            self.coeffs.resize(m + 1, Real::zero(self.ctx));
        }
        self.coeffs[m] = &self.coeffs[m] + c;
    }

    pub fn scale(&self, c: &Real) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect(), ctx: self.ctx }
    }

    pub fn eval(&self, t: &Real) -> Real {
        self.coeffs.iter().rev().fold(Real::zero(self.ctx), |acc, c| acc * t + c)
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Real)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Embeds as a polynomial in `nvars` variables using variable `axis`.
    pub fn to_tpoly(&self, axis: usize, nvars: usize) -> TPolynomial {
        let mut p = TPolynomial::zero(nvars, self.ctx);
        for (m, c) in self.terms() {
            let mut e = vec![0; nvars];
            e[axis] = m as u32;
            p.add_term(e, c);
        }
        p
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly { coeffs: (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(), ctx: self.ctx }
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero(self.ctx);
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }
}

/// Sparse polynomial in `t_1..t_k` with real coefficients.
#[derive(Clone, Debug)]
pub struct TPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Real>,
    ctx: PrecisionContext,
}

impl TPolynomial {
    pub fn zero(nvars: usize, ctx: PrecisionContext) -> Self {
        Self { nvars, terms: BTreeMap::new(), ctx }
    }

    pub fn one(nvars: usize, ctx: PrecisionContext) -> Self {
        let mut p = Self::zero(nvars, ctx);
        p.add_term(vec![0; nvars], &Real::one(ctx));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &Real) {
        debug_assert_eq!(exps.len(), self.nvars);
        match self.terms.get_mut(&exps) {
            Some(v) => *v = &*v + c,
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Real)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Real {
        self.terms.get(exps).cloned().unwrap_or_else(|| Real::zero(self.ctx))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn eval(&self, t: &[Real]) -> Real {
        let mut acc = Real::zero(self.ctx);
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &p) in t.iter().zip(e) {
                term = term * x.powi(p as i64);
            }
            acc = acc + term;
        }
        acc
    }
}

impl Add<&TPolynomial> for &TPolynomial {
    type Output = TPolynomial;
    fn add(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Mul<&TPolynomial> for &TPolynomial {
    type Output = TPolynomial;
    fn mul(self, rhs: &TPolynomial) -> TPolynomial {
        let mut out = TPolynomial::zero(self.nvars, self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}
