use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Power series in `q` with exact integer coefficients, known modulo `q^{N+1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeriesTrunc {
    coeffs: Vec<BigInt>,
}

impl QSeriesTrunc {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `q^k`, or zero if `k > order`.
    pub fn monomial(k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = BigInt::one();
        }
        s
    }

    /// Builds a series from its first coefficients; missing entries are zero,
    /// entries beyond `order` are dropped.
    pub fn from_coeffs<I, T>(coeffs: I, order: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut BigInt {
        &mut self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Exponent of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Same series known to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Multiplies by `q^k`.
    pub fn shifted(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n.saturating_sub(k) {
            if i + k <= n {
                out.coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// In place multiplication by `1 − q^k`.
    pub fn mul_one_minus(&mut self, k: usize) {
        assert!(k >= 1);
        for n in (k..self.coeffs.len()).rev() {
            let sub = self.coeffs[n - k].clone();
            self.coeffs[n] -= sub;
        }
    }

    /// In place division by `1 − q^k`.
    pub fn div_one_minus(&mut self, k: usize) {
        assert!(k >= 1);
        for n in k..self.coeffs.len() {
            let add = self.coeffs[n - k].clone();
            self.coeffs[n] += add;
        }
    }

    /// In place multiplication by `(1 − q^k)^e` for any integer `e`, using the
    /// generalized binomial series.
    pub fn mul_one_minus_pow(&mut self, k: usize, e: &BigInt) {
        assert!(k >= 1);
        if e.is_zero() {
            return;
        }
        let n = self.order();
        let terms = n / k;
        // factor = Σ_j binom(e, j) (−1)^j q^{jk}
        let mut factor = Vec::with_capacity(terms + 1);
        let mut b = BigInt::one();
        factor.push(b.clone());
        for j in 1..=terms {
            b = b * (e - BigInt::from(j - 1)) / BigInt::from(j);
            factor.push(if j % 2 == 1 { -b.clone() } else { b.clone() });
        }
        let src = self.coeffs.clone();
        for (i, slot) in self.coeffs.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, f) in factor.iter().enumerate() {
                if j * k > i {
                    break;
                }
                if !f.is_zero() {
                    acc += f * &src[i - j * k];
                }
            }
            *slot = acc;
        }
    }

    /// Multiplicative inverse; requires constant term `±1`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !a0.abs().is_one() {
            return Err(Error::ConstantTerm(a0.to_string()));
        }
        let n = self.order();
        let mut inv = Self::zero(n);
        inv.coeffs[0] = a0.clone();
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv.coeffs[m - j];
                }
            }
            // a0 = ±1 so dividing by a0 is multiplying by a0
            inv.coeffs[m] = -(acc * a0);
        }
        Ok(inv)
    }

    /// Index of the first coefficient where `self` and `other` disagree, up to
    /// the smaller of the two orders.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }
}

impl Add<&QSeriesTrunc> for &QSeriesTrunc {
    type Output = QSeriesTrunc;
    fn add(self, rhs: &QSeriesTrunc) -> QSeriesTrunc {
        let n = self.common_order(rhs);
        QSeriesTrunc { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub<&QSeriesTrunc> for &QSeriesTrunc {
    type Output = QSeriesTrunc;
    fn sub(self, rhs: &QSeriesTrunc) -> QSeriesTrunc {
        let n = self.common_order(rhs);
        QSeriesTrunc { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Mul<&QSeriesTrunc> for &QSeriesTrunc {
    type Output = QSeriesTrunc;
    fn mul(self, rhs: &QSeriesTrunc) -> QSeriesTrunc {
        let n = self.common_order(rhs);
        let mut out = QSeriesTrunc::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl Neg for &QSeriesTrunc {
    type Output = QSeriesTrunc;
    fn neg(self) -> QSeriesTrunc {
        QSeriesTrunc { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<QSeriesTrunc> for QSeriesTrunc {
            type Output = QSeriesTrunc;
            fn $m(self, rhs: QSeriesTrunc) -> QSeriesTrunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QSeriesTrunc> for QSeriesTrunc {
            type Output = QSeriesTrunc;
            fn $m(self, rhs: &QSeriesTrunc) -> QSeriesTrunc {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl fmt::Debug for QSeriesTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}q")?,
                _ => write!(f, "{c}q^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
