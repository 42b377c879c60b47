//! Moments of the centred Gaussian with covariance `Ã⁻¹`.

use std::collections::HashMap;

use super::linalg::{self, Matrix};
use crate::error::{Error, Result};
use crate::precision::Real;

/// All moments `E[∏ t_i^{m_i}]` with `Σ m_i ≤ max_degree`, filled by the
/// Isserlis recursion `M(m) = Σ_j Σ_{ij} (m − e_i)_j M(m − e_i − e_j)`.
#[derive(Clone, Debug)]
pub struct MomentTable {
    sigma: Matrix,
    max_degree: u32,
    table: HashMap<Vec<u32>, Real>,
}

impl MomentTable {
    pub fn new(atilde: &Matrix, max_degree: u32) -> Result<Self> {
        if !linalg::is_positive_definite(atilde) {
            return Err(Error::NotPositiveDefinite("Ã".into()));
        }
        let sigma = linalg::inverse(atilde)?;
        let k = atilde.len();
        let ctx = atilde[0][0].context();
        let mut table = HashMap::new();
        table.insert(vec![0; k], Real::one(ctx));
        // even total degrees only, built upward
        for deg in (2..=max_degree).step_by(2) {
            for m in compositions(k, deg) {
                let i = m.iter().position(|&x| x > 0).expect("positive degree");
                let mut r = m.clone();
                r[i] -= 1;
                let mut acc = Real::zero(ctx);
                for jx in 0..k {
                    if r[jx] == 0 {
                        continue;
                    }
                    let mut s = r.clone();
                    s[jx] -= 1;
                    acc = acc + &sigma[i][jx] * &table[&s] * r[jx] as i64;
                }
                table.insert(m, acc);
            }
        }
        Ok(Self { sigma, max_degree, table })
    }

    pub fn covariance(&self) -> &Matrix {
        &self.sigma
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// The moment for exponent vector `m`; odd total degree gives zero.
    pub fn get(&self, m: &[u32]) -> Real {
        let ctx = self.sigma[0][0].context();
        let deg: u32 = m.iter().sum();
        if deg % 2 == 1 {
            return Real::zero(ctx);
        }
        assert!(deg <= self.max_degree, "moment of degree {deg} beyond table limit {}", self.max_degree);
        self.table[m].clone()
    }
}

/// All `k`-tuples of nonnegative integers summing to `n`.
fn compositions(k: usize, n: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![n]];
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(k - 1, n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// One Gaussian moment; builds a table just large enough.
pub fn gaussian_moment(atilde: &Matrix, m: &[u32]) -> Result<Real> {
    let deg: u32 = m.iter().sum();
    Ok(MomentTable::new(atilde, deg)?.get(m))
}
