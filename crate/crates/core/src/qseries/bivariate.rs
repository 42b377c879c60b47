use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::series::QSeriesTrunc;

/// Series `Σ a_{m,n} x^m q^n` truncated to `m <= M`, `n <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    // rows indexed by the x-power
    rows: Vec<Vec<BigInt>>,
}

impl BivariateSeries {
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        Self { rows: vec![vec![BigInt::zero(); q_order + 1]; x_order + 1] }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(x_order, q_order);
        s.rows[0][0] = BigInt::one();
        s
    }

    /// `c · x^m q^n` (zero if outside the truncation box).
    pub fn monomial(c: impl Into<BigInt>, m: usize, n: usize, x_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(x_order, q_order);
        if m <= x_order && n <= q_order {
            s.rows[m][n] = c.into();
        }
        s
    }

    pub fn x_order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.rows[0].len() - 1
    }

    pub fn coeff(&self, m: usize, n: usize) -> &BigInt {
        &self.rows[m][n]
    }

    /// Adds `c` to the coefficient of `x^m q^n`, ignoring terms outside the box.
    pub fn add_term(&mut self, c: &BigInt, m: usize, n: usize) {
        if m <= self.x_order() && n <= self.q_order() {
            self.rows[m][n] += c;
        }
    }

    /// Coefficient of `x^m` as a q-series.
    pub fn x_coeff(&self, m: usize) -> QSeriesTrunc {
        QSeriesTrunc::from_coeffs(self.rows[m].iter().cloned(), self.q_order())
    }

    /// `a_{m,n} x^m q^n ↦ a_{m,n} x^m q^{step·m(m−1)/2 + n}`; terms pushed past
    /// the q-order are dropped.
    pub fn staircase_insert(&self, step: usize) -> Self {
        let (mx, nq) = (self.x_order(), self.q_order());
        let mut out = Self::zero(mx, nq);
        for (m, row) in self.rows.iter().enumerate() {
            let lift = step * m * m.saturating_sub(1) / 2;
            if lift > nq {
                continue;
            }
            for n in 0..=(nq - lift) {
                out.rows[m][n + lift] = row[n].clone();
            }
        }
        out
    }

    /// Specializes `x = 1` by summing over the x-powers.
    pub fn eval_x1(&self) -> QSeriesTrunc {
        let mut out = QSeriesTrunc::zero(self.q_order());
        for row in &self.rows {
            for (n, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    *out.coeff_mut(n) += c;
                }
            }
        }
        out
    }

    /// Multiplies by `1 / (1 − c·x^a q^b)` in place (`a + b >= 1`).
    pub fn div_one_minus_monomial(&mut self, c: &BigInt, a: usize, b: usize) {
        assert!(a + b >= 1);
        let (mx, nq) = (self.x_order(), self.q_order());
        for m in a..=mx {
            for n in b..=nq {
                let add = &self.rows[m - a][n - b] * c;
                if !add.is_zero() {
                    self.rows[m][n] += add;
                }
            }
        }
    }

    /// Multiplies by `1 − c·x^a q^b` in place.
    pub fn mul_one_minus_monomial(&mut self, c: &BigInt, a: usize, b: usize) {
        assert!(a + b >= 1);
        let (mx, nq) = (self.x_order(), self.q_order());
        for m in (a..=mx).rev() {
            for n in (b..=nq).rev() {
                let sub = &self.rows[m - a][n - b] * c;
                if !sub.is_zero() {
                    self.rows[m][n] -= sub;
                }
            }
        }
    }

    fn common(&self, other: &Self) -> (usize, usize) {
        (self.x_order().min(other.x_order()), self.q_order().min(other.q_order()))
    }
}

impl Add<&BivariateSeries> for &BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: &BivariateSeries) -> BivariateSeries {
        let (mx, nq) = self.common(rhs);
        let mut out = BivariateSeries::zero(mx, nq);
        for m in 0..=mx {
            for n in 0..=nq {
                out.rows[m][n] = &self.rows[m][n] + &rhs.rows[m][n];
            }
        }
        out
    }
}

impl Mul<&BivariateSeries> for &BivariateSeries {
    type Output = BivariateSeries;
    fn mul(self, rhs: &BivariateSeries) -> BivariateSeries {
        let (mx, nq) = self.common(rhs);
        let mut out = BivariateSeries::zero(mx, nq);
        for m1 in 0..=mx {
            for n1 in 0..=nq {
                let a = &self.rows[m1][n1];
                if a.is_zero() {
                    continue;
                }
                for m2 in 0..=(mx - m1) {
                    for n2 in 0..=(nq - n1) {
                        let b = &rhs.rows[m2][n2];
                        if !b.is_zero() {
                            out.rows[m1 + m2][n1 + n2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_small_cases() {
        let f = BivariateSeries::monomial(1, 1, 1, 4, 10);
        assert_eq!(f.staircase_insert(3), f);
        let g = BivariateSeries::monomial(1, 2, 1, 4, 10);
        assert_eq!(g.staircase_insert(3), BivariateSeries::monomial(1, 2, 4, 4, 10));
        // x^3 q: lift 9 pushes past order 8
        let h = BivariateSeries::monomial(1, 3, 1, 4, 8);
        assert_eq!(h.staircase_insert(3), BivariateSeries::zero(4, 8));
    }

    #[test]
    fn eval_at_one() {
        let f = &BivariateSeries::monomial(1, 1, 1, 3, 3) + &BivariateSeries::monomial(1, 2, 1, 3, 3);
        assert_eq!(f.eval_x1(), QSeriesTrunc::from_coeffs([0, 2], 3));
        assert!(BivariateSeries::zero(3, 3).eval_x1().is_zero());
    }

    #[test]
    fn geometric_in_x() {
        let mut f = BivariateSeries::one(5, 5);
        f.div_one_minus_monomial(&BigInt::one(), 1, 1);
        for m in 0..=5 {
            assert_eq!(f.coeff(m, m), &BigInt::one());
        }
        f.mul_one_minus_monomial(&BigInt::one(), 1, 1);
        assert_eq!(f, BivariateSeries::one(5, 5));
    }
}
