//! Grid descriptions for modularity scans.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::corpus::Family;
use crate::error::{Error, Result};
use crate::precision::{rat, Rational};

/// Values `lo, lo + step, …` not exceeding `hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridAxis {
    pub lo: Rational,
    pub hi: Rational,
    pub step: Rational,
}

impl GridAxis {
    pub fn new(lo: Rational, hi: Rational, step: Rational) -> Result<Self> {
        if step < rat(1, 4) {
            return Err(Error::InvalidSearch(format!("grid step {step} is below 1/4")));
        }
        if hi < lo {
            return Err(Error::InvalidSearch(format!("empty grid [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi, step })
    }

    /// Integer range `lo..=hi` with unit step.
    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        Self::new(rat(lo, 1), rat(hi, 1), Rational::one())
    }

    pub fn values(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut v = self.lo.clone();
        while v <= self.hi {
            out.push(v.clone());
            v += &self.step;
        }
        out
    }
}

/// A scan over sums of `n_terms` members of one family,
/// `Σ_m q^{C′_m} F_{A, B_m, 0, J}` with `C′_1 = 0`.
#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub family: Family,
    pub n_terms: usize,
    /// One axis per coordinate of `B`, shared by every term.
    pub b_grid: Vec<GridAxis>,
    /// Shifts `C′` tried for the terms after the first.
    pub c_grid: (i64, i64),
    pub order: usize,
    pub screen_digits: u32,
    pub confirm_digits: u32,
    /// Pass threshold exponent: `|L_p| < 10^{−tol_exponent}`. `None` uses
    /// `digits / 3` at each precision.
    pub tol_exponent: Option<u32>,
    /// Permit `C′` outside `[0, 6]`.
    pub wide_c: bool,
}

impl SearchSpec {
    /// Square integer grid `[lo, hi]^k` for every term.
    pub fn new(family: Family, n_terms: usize, lo: i64, hi: i64) -> Result<Self> {
        let k = family.k();
        let spec = Self {
            family,
            n_terms,
            b_grid: vec![GridAxis::integers(lo, hi)?; k],
            c_grid: (0, if n_terms > 1 { 6 } else { 0 }),
            order: crate::asymptotics::DEFAULT_ORDER,
            screen_digits: 60,
            confirm_digits: 120,
            tol_exponent: None,
            wide_c: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n_terms) {
            return Err(Error::InvalidSearch(format!("n_terms must be 1, 2 or 3, got {}", self.n_terms)));
        }
        if self.b_grid.len() != self.family.k() {
            return Err(Error::InvalidSearch(format!(
                "{} grid axes for a family of dimension {}",
                self.b_grid.len(),
                self.family.k()
            )));
        }
        for ax in &self.b_grid {
            GridAxis::new(ax.lo.clone(), ax.hi.clone(), ax.step.clone())?;
        }
        let (lo, hi) = self.c_grid;
        if lo > hi {
            return Err(Error::InvalidSearch(format!("empty C′ range [{lo}, {hi}]")));
        }
        if !self.wide_c && (lo < 0 || hi > 6) {
            return Err(Error::InvalidSearch(format!("C′ range [{lo}, {hi}] leaves [0, 6]; enable wide_c to allow it")));
        }
        if self.order == 0 || self.order > crate::asymptotics::MAX_ORDER {
            return Err(Error::InvalidSearch(format!("order {} outside 1..=6", self.order)));
        }
        if self.screen_digits < crate::precision::MIN_DIGITS || self.confirm_digits < self.screen_digits {
            return Err(Error::InvalidSearch(format!(
                "need {} ≤ screen digits ≤ confirm digits, got {} and {}",
                crate::precision::MIN_DIGITS,
                self.screen_digits,
                self.confirm_digits
            )));
        }
        Ok(())
    }

    /// Every `B` vector of the grid in lexicographic order.
    pub fn b_vectors(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![Vec::new()];
        for ax in &self.b_grid {
            let vals = ax.values();
            out = out
                .into_iter()
                .flat_map(|p: Vec<Rational>| {
                    vals.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Number of grid tuples.
    pub fn size(&self) -> usize {
        let nb = self.b_vectors().len();
        let nc = (self.c_grid.1 - self.c_grid.0 + 1) as usize;
        nb.pow(self.n_terms as u32) * nc.pow(self.n_terms as u32 - 1)
    }
}

/// Parses a decimal or fractional grid bound.
pub fn parse_bound(s: &str) -> Result<Rational> {
    if let Some((i, f)) = s.split_once('.') {
        let neg = i.trim_start().starts_with('-');
        let scale = BigInt::from(10).pow(f.len() as u32);
        let whole: BigInt = i.parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))?;
        let frac: BigInt = if f.is_empty() { BigInt::zero() } else { f.parse().map_err(|_| Error::Parse(format!("bad number `{s}`")))? };
        let mag = whole.abs() * &scale + frac;
        let v = Rational::new(mag, scale);
        return Ok(if neg { -v } else { v });
    }
    crate::datum::parse_rational(s)
}
