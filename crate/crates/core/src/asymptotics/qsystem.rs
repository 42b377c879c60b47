//! The algebraic system `1 − Q_i^{J_i} = ∏_j Q_j^{A_{ji}}` on the open unit cube.

use num_traits::ToPrimitive;

use super::linalg;
use crate::error::{Error, Result};
use crate::precision::{PrecisionContext, Rational, Real};

const MAX_ITER: usize = 200;
const SEPARATION: f64 = 1e-10;

/// Residual `G_i(Q) = ln(1 − Q_i^{J_i}) − Σ_j A_{ji} ln Q_j` in machine precision.
fn residual_f64(a: &[Vec<f64>], j: &[u32], q: &[f64]) -> Option<Vec<f64>> {
    if q.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
        return None;
    }
    let k = q.len();
    Some(
        (0..k)
            .map(|i| (1.0 - q[i].powi(j[i] as i32)).ln() - (0..k).map(|l| a[l][i] * q[l].ln()).sum::<f64>())
            .collect(),
    )
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn solve_f64(m: &mut [Vec<f64>], rhs: &mut [f64]) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| m[r][c] * x[c]).sum();
        x[r] = (rhs[r] - s) / m[r][r];
    }
    Some(x)
}

/// Damped Newton from one start; `None` if it stalls or leaves the cube.
fn newton_f64(a: &[Vec<f64>], j: &[u32], start: &[f64]) -> Option<Vec<f64>> {
    let k = start.len();
    let mut q = start.to_vec();
    let mut g = residual_f64(a, j, &q)?;
    for _ in 0..MAX_ITER {
        if norm(&g) < 1e-14 {
            return Some(q);
        }
        let mut jac: Vec<Vec<f64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|l| {
                        let mut d = -a[l][i] / q[l];
                        if l == i {
                            let ji = j[i] as i32;
                            d -= ji as f64 * q[i].powi(ji - 1) / (1.0 - q[i].powi(ji));
                        }
                        d
                    })
                    .collect()
            })
            .collect();
        let mut rhs: Vec<f64> = g.iter().map(|x| -x).collect();
        let step = solve_f64(&mut jac, &mut rhs)?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = q.iter().zip(&step).map(|(x, s)| x + lambda * s).collect();
            if let Some(gt) = residual_f64(a, j, &trial) {
                if norm(&gt) < norm(&g) {
                    q = trial;
                    g = gt;
                    break;
                }
            }
            lambda /= 2.0;
            if lambda < 1e-12 {
                return (norm(&g) < 1e-10).then_some(q);
            }
        }
    }
    (norm(&g) < 1e-10).then_some(q)
}

/// Residual vector at full precision, working with `u = ln Q`.
fn residual_real(a: &[Vec<Real>], j: &[u32], q: &[Real]) -> Result<Vec<Real>> {
    let k = q.len();
    let ctx = q[0].context();
    let lnq: Vec<Real> = q.iter().map(|x| x.ln()).collect::<Result<_>>()?;
    (0..k)
        .map(|i| {
            let mut s = (Real::one(ctx) - q[i].powi(j[i] as i64)).ln()?;
            for l in 0..k {
                s = s - &a[l][i] * &lnq[l];
            }
            Ok(s)
        })
        .collect()
}

fn refine(a: &[Vec<Real>], j: &[u32], seed: &[f64], ctx: PrecisionContext) -> Result<Vec<Real>> {
    let k = seed.len();
    let mut q: Vec<Real> = seed.iter().map(|&x| Real::from_f64(x, ctx)).collect();
    let tol = ctx.epsilon(4);
    for _ in 0..MAX_ITER {
        let g = residual_real(a, j, &q)?;
        let jac: linalg::Matrix = (0..k)
            .map(|i| {
                (0..k)
                    .map(|l| {
                        let mut d = -(&a[l][i] / &q[l]);
                        if l == i {
                            let ji = j[i] as i64;
                            let qj = q[i].powi(ji);
                            d = d - q[i].powi(ji - 1) * ji / (Real::one(ctx) - qj);
                        }
                        d
                    })
                    .collect()
            })
            .collect();
        let rhs: Vec<Real> = g.iter().map(|x| -x).collect();
        let step = linalg::solve(&jac, &rhs)?;
        let size = step.iter().fold(Real::zero(ctx), |m, s| m.max(&s.abs()));
        for (x, s) in q.iter_mut().zip(&step) {
            *x = &*x + s;
        }
        if size < tol {
            return Ok(q);
        }
    }
    Err(Error::NoSolution("high-precision refinement did not converge".into()))
}

fn grid_starts(k: usize) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                (1..=9).map(move |s| {
                    let mut v = p.clone();
                    v.push(s as f64 / 10.0);
                    v
                })
            })
            .collect();
    }
    out
}

/// The unique root of the Q-system in `(0,1)^k`.
pub fn solve_q(a: &[Vec<Rational>], j: &[u32], ctx: PrecisionContext) -> Result<Vec<Real>> {
    let k = j.len();
    let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let mut roots: Vec<Vec<f64>> = Vec::new();
    for start in grid_starts(k) {
        if let Some(r) = newton_f64(&af, j, &start) {
            if !roots.iter().any(|s| s.iter().zip(&r).all(|(x, y)| (x - y).abs() <= SEPARATION)) {
                roots.push(r);
            }
        }
    }
    match roots.len() {
        0 => Err(Error::NoSolution(format!("no Newton start from the 9^{k} grid converged"))),
        1 => {
            let ar: Vec<Vec<Real>> = a.iter().map(|r| r.iter().map(|x| Real::from_rational(x, ctx)).collect()).collect();
            refine(&ar, j, &roots[0], ctx)
        }
        n => Err(Error::NotUnique { count: n, roots: format!("{roots:?}") }),
    }
}

/// `max_i |G_i(Q)|` at full precision.
pub fn q_residual(a: &[Vec<Rational>], j: &[u32], q: &[Real]) -> Result<Real> {
    let ctx = q[0].context();
    let ar: Vec<Vec<Real>> = a.iter().map(|r| r.iter().map(|x| Real::from_rational(x, ctx)).collect()).collect();
    Ok(residual_real(&ar, j, q)?.iter().fold(Real::zero(ctx), |m, g| m.max(&g.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{below, rat};

    fn ints(a: &[&[i64]]) -> Vec<Vec<Rational>> {
        a.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn one_dimensional() {
        let ctx = PrecisionContext::new(60).unwrap();
        // 1 − Q = Q
        let q = solve_q(&ints(&[&[1]]), &[1], ctx).unwrap();
        assert!(below(&(&q[0] * 2 - 1), &ctx.epsilon(5)));
        // 1 − Q = Q²
        let q = solve_q(&ints(&[&[2]]), &[1], ctx).unwrap();
        let phi = (Real::from_i64(5, ctx).sqrt().unwrap() - 1) / 2;
        assert!(below(&(&q[0] - phi), &ctx.epsilon(5)));
    }

    #[test]
    fn capparelli_root() {
        let ctx = PrecisionContext::new(120).unwrap();
        let a = ints(&[&[4, 6], &[6, 12]]);
        let q = solve_q(&a, &[1, 3], ctx).unwrap();
        assert!(below(&(&q[0] - Real::from_rational(&rat(3, 4), ctx)), &ctx.epsilon(10)));
        let q2 = Real::from_i64(2, ctx) * Real::from_i64(3, ctx).pow_rational(&rat(-2, 3)).unwrap();
        assert!(below(&(&q[1] - q2), &ctx.epsilon(10)));
        assert!(below(&q_residual(&a, &[1, 3], &q).unwrap(), &ctx.epsilon(10)));
    }

    #[test]
    fn mod9_root() {
        let ctx = PrecisionContext::new(80).unwrap();
        let q = solve_q(&ints(&[&[2, 3], &[3, 6]]), &[1, 3], ctx).unwrap();
        let s = (Real::pi(ctx) / 18).sin();
        assert!(below(&(&q[0] - (Real::one(ctx) - s * 2)), &ctx.epsilon(10)));
    }
}
