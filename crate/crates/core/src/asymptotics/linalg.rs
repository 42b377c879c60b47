//! Small dense linear algebra over [`Real`].

use crate::error::{Error, Result};
use crate::precision::Real;

pub type Matrix = Vec<Vec<Real>>;

/// Solves `m · x = rhs` by Gaussian elimination with partial pivoting.
pub fn solve(m: &Matrix, rhs: &[Real]) -> Result<Vec<Real>> {
    let n = m.len();
    let mut aug: Vec<Vec<Real>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| aug[a][col].abs().partial_cmp(&aug[b][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if aug[piv][col].is_zero() {
            return Err(Error::Domain("singular matrix".into()));
        }
        aug.swap(col, piv);
        for r in (col + 1)..n {
            if aug[r][col].is_zero() {
                continue;
            }
            let f = &aug[r][col] / &aug[col][col];
            for c in col..=n {
                let sub = &f * &aug[col][c];
                aug[r][c] = &aug[r][c] - &sub;
            }
        }
    }
    let mut x = vec![Real::zero(rhs[0].context()); n];
    for r in (0..n).rev() {
        let mut acc = aug[r][n].clone();
        for c in (r + 1)..n {
            acc = acc - &aug[r][c] * &x[c];
        }
        x[r] = acc / &aug[r][r];
    }
    Ok(x)
}

/// Matrix inverse, column by column.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let ctx = m[0][0].context();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Real> = (0..n).map(|i| Real::from_i64((i == j) as i64, ctx)).collect();
        cols.push(solve(m, &e)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Determinant by elimination.
pub fn determinant(m: &Matrix) -> Real {
    let n = m.len();
    let ctx = m[0][0].context();
    let mut a = m.clone();
    let mut det = Real::one(ctx);
    for col in 0..n {
        let Some(piv) = (col..n).max_by(|&x, &y| a[x][col].abs().partial_cmp(&a[y][col].abs()).unwrap()) else {
            return Real::zero(ctx);
        };
        if a[piv][col].is_zero() {
            return Real::zero(ctx);
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det = &det * &a[col][col];
        for r in (col + 1)..n {
            let f = &a[r][col] / &a[col][col];
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    det
}

/// Leading principal minors all positive.
pub fn is_positive_definite(m: &Matrix) -> bool {
    (1..=m.len()).all(|s| {
        let minor: Matrix = m[..s].iter().map(|row| row[..s].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{below, PrecisionContext};

    #[test]
    fn inverse_of_two_by_two() {
        let c = PrecisionContext::new(40).unwrap();
        let r = |v: i64| Real::from_i64(v, c);
        let m = vec![vec![r(4), r(6)], vec![r(6), r(12)]];
        assert!(below(&(determinant(&m) - 12), &c.epsilon(5)));
        let inv = inverse(&m).unwrap();
        // [[1, -1/2], [-1/2, 1/3]]
        assert!(below(&(&inv[0][0] - 1), &c.epsilon(5)));
        assert!(below(&(&inv[0][1] * 2 + 1), &c.epsilon(5)));
        assert!(below(&(&inv[1][1] * 3 - 1), &c.epsilon(5)));
        assert!(is_positive_definite(&m));
        assert!(!is_positive_definite(&vec![vec![r(1), r(2)], vec![r(2), r(1)]]));
        assert!(solve(&vec![vec![r(1), r(2)], vec![r(2), r(4)]], &[r(1), r(1)]).is_err());
    }
}
