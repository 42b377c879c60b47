use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::series::QSeriesTrunc;
use crate::datum::NahmDatum;
use crate::error::{Error, Result};
use crate::precision::Rational;

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Inverse of a small symmetric positive definite matrix (f64, Gauss–Jordan).
fn inverse_f64(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let mut aug: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| aug[a][col].abs().total_cmp(&aug[b][col].abs()))
            .unwrap_or(col);
        aug.swap(col, piv);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = aug[r][col];
                if f != 0.0 {
                    for c in 0..2 * n {
                        aug[r][c] -= f * aug[col][c];
                    }
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Lattice points `n >= lower` whose exponent is at most `order`.
///
/// Coordinates are fixed one at a time; at each level the admissible range of
/// the next coordinate comes from the ellipsoid `{x : ½xᵀMx + vᵀx + w <= N}`
/// of the remaining block, i.e. centre `−M⁻¹v` and half-width
/// `sqrt(2 (N − g_min) (M⁻¹)_{00})`.
pub fn lattice_points(d: &NahmDatum, order: usize) -> Vec<Vec<i64>> {
    let k = d.k();
    let a: Vec<Vec<f64>> = d.a().iter().map(|row| row.iter().map(to_f64).collect()).collect();
    let b: Vec<f64> = d.b().iter().map(to_f64).collect();
    let c = to_f64(d.c());
    let mut out = Vec::new();
    let mut point = Vec::with_capacity(k);
    walk(&a, &b, c, d.lower(), order as f64, &mut point, &mut out);
    out
}

fn walk(
    a: &[Vec<f64>],
    b: &[f64],
    c: f64,
    lower: &[u32],
    bound: f64,
    point: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let k = a.len();
    let fixed = point.len();
    if fixed == k {
        out.push(point.clone());
        return;
    }
    // remaining block r = fixed..k; linear term v_r = b_r + Σ_{s<fixed} A_{rs} n_s
    let rem: Vec<usize> = (fixed..k).collect();
    let m: Vec<Vec<f64>> = rem.iter().map(|&r| rem.iter().map(|&s| a[r][s]).collect()).collect();
    let v: Vec<f64> = rem
        .iter()
        .map(|&r| b[r] + (0..fixed).map(|s| a[r][s] * point[s] as f64).sum::<f64>())
        .collect();
    let mut w = c;
    for r in 0..fixed {
        w += b[r] * point[r] as f64;
        for s in 0..fixed {
            w += 0.5 * a[r][s] * (point[r] * point[s]) as f64;
        }
    }
    let minv = inverse_f64(&m);
    let centre: Vec<f64> = (0..rem.len()).map(|i| -(0..rem.len()).map(|j| minv[i][j] * v[j]).sum::<f64>()).collect();
    let g_min = w + 0.5 * (0..rem.len()).map(|i| v[i] * centre[i]).sum::<f64>();
    let slack = bound - g_min;
    if slack < -1e-9 {
        return;
    }
    let half = (2.0 * slack.max(0.0) * minv[0][0]).sqrt();
    let lo = ((centre[0] - half - 1e-9).ceil() as i64).max(lower[fixed] as i64);
    let hi = (centre[0] + half + 1e-9).floor() as i64;
    for n in lo..=hi {
        point.push(n);
        walk(a, b, c, lower, bound, point, out);
        point.pop();
    }
}

/// `q^e / ∏ (q^{J_i}; q^{J_i})_{n_i}` to the given order.
fn term_series(e: usize, n: &[i64], j: &[u32], order: usize) -> QSeriesTrunc {
    let mut s = QSeriesTrunc::monomial(e, order);
    if e > order {
        return s;
    }
    for (&ni, &ji) in n.iter().zip(j) {
        for t in 1..=ni as usize {
            let step = ji as usize * t;
            if step > order {
                break;
            }
            s.div_one_minus(step);
        }
    }
    s
}

/// Exact expansion of a Nahm-type sum to order `order`.
///
/// Every admissible exponent must be a nonnegative integer; rational `C` only
/// makes sense in the asymptotic setting.
pub fn nahm_expand(d: &NahmDatum, order: usize) -> Result<QSeriesTrunc> {
    let points = lattice_points(d, order);
    let mut exps = Vec::with_capacity(points.len());
    for n in &points {
        let e = d.exponent(n);
        if !e.is_integer() {
            return Err(Error::NonIntegralExponent { exponent: e.to_string(), point: n.clone() });
        }
        if e.is_negative() {
            return Err(Error::NegativeExponent { exponent: e.to_string(), point: n.clone() });
        }
        let e = e.to_integer();
        if e <= BigInt::from(order) {
            exps.push((e.to_usize().expect("bounded by order"), n.clone()));
        }
    }
    let total = exps
        .par_iter()
        .map(|(e, n)| term_series(*e, n, d.j(), order))
        .reduce(|| QSeriesTrunc::zero(order), |a, b| a + b);
    Ok(total)
}

/// Termwise sum of several Nahm-type sums (multi-term sum sides).
pub fn nahm_expand_sum(terms: &[NahmDatum], order: usize) -> Result<QSeriesTrunc> {
    let mut acc = QSeriesTrunc::zero(order);
    for t in terms {
        acc = acc + nahm_expand(t, order)?;
    }
    Ok(acc)
}
