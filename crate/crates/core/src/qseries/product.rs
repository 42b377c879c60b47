use serde::{Deserialize, Serialize};

use super::series::QSeriesTrunc;
use crate::error::{Error, Result};

/// Quotient of Pochhammer factors `(q^r; q^M)_∞`.
///
/// The main family uses `modulus`; `extra` optionally adds a second family
/// with its own base, as in `(q^2, q^10; q^12)_∞ / (q; q^2)_∞`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub modulus: u32,
    /// `(residue, multiplicity)` pairs in the numerator.
    #[serde(default)]
    pub numerator: Vec<(u32, u32)>,
    /// `(residue, multiplicity)` pairs in the denominator.
    #[serde(default)]
    pub denominator: Vec<(u32, u32)>,
    #[serde(default)]
    pub extra: Option<ExtraFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraFamily {
    pub base: u32,
    #[serde(default)]
    pub numerator: Vec<(u32, u32)>,
    #[serde(default)]
    pub denominator: Vec<(u32, u32)>,
}

impl ProductSpec {
    /// `1 / (q^{r_1}, …, q^{r_s}; q^M)_∞`.
    pub fn inverse_of(modulus: u32, residues: &[u32]) -> Self {
        Self {
            modulus,
            numerator: Vec::new(),
            denominator: residues.iter().map(|&r| (r, 1)).collect(),
            extra: None,
        }
    }

    /// Every family as `(modulus, residue, signed multiplicity)`; positive
    /// multiplicities are numerator factors.
    pub(crate) fn factors(&self) -> Vec<(u32, u32, i64)> {
        let mut out = Vec::new();
        let mut push = |m: u32, num: &[(u32, u32)], den: &[(u32, u32)]| {
            out.extend(num.iter().map(|&(r, k)| (m, r, k as i64)));
            out.extend(den.iter().map(|&(r, k)| (m, r, -(k as i64))));
        };
        push(self.modulus, &self.numerator, &self.denominator);
        if let Some(x) = &self.extra {
            push(x.base, &x.numerator, &x.denominator);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        for (m, r, k) in self.factors() {
            if m == 0 {
                return Err(Error::InvalidProduct("modulus must be positive".into()));
            }
            if r == 0 {
                return Err(Error::InvalidProduct(format!(
                    "residue 0 mod {m} gives a factor with vanishing constant term"
                )));
            }
            if r > m {
                return Err(Error::InvalidProduct(format!("residue {r} outside [1, {m}]")));
            }
            if k == 0 {
                return Err(Error::InvalidProduct("multiplicity must be positive".into()));
            }
        }
        Ok(())
    }

    /// Number of symmetric residue pairs `{r, M−r}` (with `r ≠ M−r`) in the
    /// main denominator, each counted once per unit multiplicity.
    pub fn symmetric_pairs(&self) -> Option<u32> {
        if !self.numerator.is_empty() || self.extra.is_some() {
            return None;
        }
        let m = self.modulus;
        let mut pairs = 0;
        for &(r, k) in &self.denominator {
            let partner = m - r;
            if partner == r || partner == 0 {
                continue;
            }
            let pk = self.denominator.iter().find(|(s, _)| *s == partner).map(|p| p.1)?;
            if pk != k {
                return None;
            }
            if r < partner {
                pairs += k;
            }
        }
        Some(pairs)
    }
}

/// Expands the product described by `spec` to order `order`, one
/// `(1 − q^{r+tM})^{±1}` factor at a time.
pub fn pochhammer_inv(spec: &ProductSpec, order: usize) -> Result<QSeriesTrunc> {
    spec.validate()?;
    let mut s = QSeriesTrunc::one(order);
    for (m, r, k) in spec.factors() {
        let mut e = r as usize;
        while e <= order {
            for _ in 0..k.unsigned_abs() {
                if k > 0 {
                    s.mul_one_minus(e);
                } else {
                    s.div_one_minus(e);
                }
            }
            e += m as usize;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    /// Brute-force count of partitions of `n` into parts from `allowed`.
    fn count_parts(n: usize, allowed: &dyn Fn(usize) -> bool) -> u64 {
        fn go(n: usize, max: usize, allowed: &dyn Fn(usize) -> bool) -> u64 {
            if n == 0 {
                return 1;
            }
            (1..=max.min(n)).filter(|&p| allowed(p)).map(|p| go(n - p, p, allowed)).sum()
        }
        go(n, n, allowed)
    }

    #[test]
    fn partition_numbers() {
        let s = pochhammer_inv(&ProductSpec::inverse_of(1, &[1]), 5).unwrap();
        assert_eq!(s, QSeriesTrunc::from_coeffs([1, 1, 2, 3, 5, 7], 5));
    }

    #[test]
    fn capparelli_product_against_enumeration() {
        let s = pochhammer_inv(&ProductSpec::inverse_of(12, &[2, 3, 9, 10]), 40).unwrap();
        let allowed = |p: usize| matches!(p % 12, 2 | 3 | 9 | 10);
        for n in 0..=40 {
            assert_eq!(s.coeff(n), &BigInt::from(count_parts(n, &allowed)), "n = {n}");
        }
        // 1 + q^2 + q^3 + q^4 + q^5 + 2q^6
        assert_eq!(s.truncate(6), QSeriesTrunc::from_coeffs([1, 0, 1, 1, 1, 1, 2], 6));
    }

    #[test]
    fn empty_product_is_one() {
        let spec = ProductSpec { modulus: 1, ..Default::default() };
        assert_eq!(pochhammer_inv(&spec, 10).unwrap(), QSeriesTrunc::one(10));
    }

    #[test]
    fn rejects_zero_residue() {
        let spec = ProductSpec::inverse_of(5, &[0]);
        assert!(pochhammer_inv(&spec, 10).is_err());
        assert!(pochhammer_inv(&ProductSpec::inverse_of(5, &[6]), 10).is_err());
    }

    #[test]
    fn mixed_families() {
        // (q;q)_∞ / (q;q)_∞ = 1 written with two families
        let spec = ProductSpec {
            modulus: 1,
            numerator: vec![(1, 1)],
            denominator: vec![],
            extra: Some(ExtraFamily { base: 2, numerator: vec![], denominator: vec![(1, 1), (2, 1)] }),
        };
        assert_eq!(pochhammer_inv(&spec, 30).unwrap(), QSeriesTrunc::one(30));
    }

    #[test]
    fn symmetric_pair_count() {
        assert_eq!(ProductSpec::inverse_of(12, &[2, 3, 9, 10]).symmetric_pairs(), Some(2));
        assert_eq!(ProductSpec::inverse_of(9, &[1, 3, 6, 8]).symmetric_pairs(), Some(2));
        assert_eq!(ProductSpec::inverse_of(9, &[2, 3, 5, 8]).symmetric_pairs(), None);
    }
}
