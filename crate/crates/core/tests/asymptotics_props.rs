use proptest::prelude::*;

use nahmsum::asymptotics::*;
use nahmsum::corpus::Corpus;
use nahmsum::precision::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

/// Random 2×2 SPD matrix `[[a, b], [b, d]]` in f64.
fn spd() -> impl Strategy<Value = [[f64; 2]; 2]> {
    (0.5f64..3.0, 0.5f64..3.0, -0.9f64..0.9).prop_map(|(a, d, r)| {
        let b = r * (a * d).sqrt();
        [[a, b], [b, d]]
    })
}

fn to_matrix(m: &[[f64; 2]; 2], c: PrecisionContext) -> linalg::Matrix {
    m.iter().map(|r| r.iter().map(|&x| Real::from_f64(x, c)).collect()).collect()
}

/// `E[t1^m1 t2^m2]` under density `∝ exp(−tᵀAt/2)` by the trapezoid rule.
fn quadrature(a: &[[f64; 2]; 2], m: [u32; 2]) -> f64 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let var = a[0][0].max(a[1][1]) / det;
    let half = 12.0 * var.sqrt();
    let n = 600;
    let h = 2.0 * half / n as f64;
    let (mut num, mut den) = (0.0, 0.0);
    for i in 0..=n {
        let x = -half + i as f64 * h;
        for j in 0..=n {
            let y = -half + j as f64 * h;
            let w = (-(a[0][0] * x * x + 2.0 * a[0][1] * x * y + a[1][1] * y * y) / 2.0).exp();
            num += w * x.powi(m[0] as i32) * y.powi(m[1] as i32);
            den += w;
        }
    }
    num / den
}

/// Sum over perfect matchings of the index multiset.
fn pairings(idx: &[usize], sigma: &[[f64; 2]; 2]) -> f64 {
    if idx.is_empty() {
        return 1.0;
    }
    if idx.len() % 2 == 1 {
        return 0.0;
    }
    let first = idx[0];
    (1..idx.len())
        .map(|k| {
            let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(i, _)| i + 1 != k).map(|(_, &v)| v).collect();
            sigma[first][idx[k]] * pairings(&rest, sigma)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3))]

    #[test]
    fn isserlis_matches_quadrature(a in spd()) {
        let c = ctx();
        let table = MomentTable::new(&to_matrix(&a, c), 6).unwrap();
        for m1 in 0..=6u32 {
            for m2 in 0..=(6 - m1) {
                let exact = table.get(&[m1, m2]).to_f64();
                let numeric = quadrature(&a, [m1, m2]);
                prop_assert!((exact - numeric).abs() < 1e-8 * exact.abs().max(1.0), "m = ({}, {}): {} vs {}", m1, m2, exact, numeric);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn isserlis_matches_pairings(a in spd()) {
        let c = ctx();
        let table = MomentTable::new(&to_matrix(&a, c), 8).unwrap();
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let sigma = [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]];
        for m1 in 0..=8u32 {
            for m2 in 0..=(8 - m1) {
                let idx: Vec<usize> = std::iter::repeat_n(0, m1 as usize).chain(std::iter::repeat_n(1, m2 as usize)).collect();
                let brute = pairings(&idx, &sigma);
                let exact = table.get(&[m1, m2]).to_f64();
                prop_assert!((exact - brute).abs() < 1e-9 * brute.abs().max(1.0));
            }
        }
    }

    #[test]
    fn d_towers_have_parity_and_degree_bound(b in -6i64..=6, den in 1i64..=4, j in 1u32..=3, q in 0.05f64..0.95, xi in 0.1f64..30.0) {
        let c = ctx();
        let b = Real::from_rational(&rat(b, den), c);
        let d = d_tower(&b, &Real::from_f64(xi, c), j, &Real::from_f64(q, c), 4, c).unwrap();
        prop_assert!(d[0].coeff(0) == Real::one(c));
        for (h, dh) in d.iter().enumerate() {
            for (m, _) in dh.terms() {
                prop_assert_eq!(m % 2, h % 2);
                prop_assert!(m <= 3 * h);
            }
        }
    }

    #[test]
    fn single_term_equivalence(gamma in -5.0f64..5.0, k in 0usize..=4, delta in 0.01f64..1.0, tail in prop::collection::vec(-3.0f64..3.0, 4)) {
        let c = ctx();
        let g = Real::from_f64(gamma, c);
        // c_p = γ^p/p! for p <= k, a nonzero defect at k+1, noise after
        let mut cs = Vec::new();
        let mut pow = Real::one(c);
        for p in 1..=4usize {
            pow = pow * &g / p as i64;
            cs.push(match p {
                _ if p <= k => pow.clone(),
                _ if p == k + 1 => &pow + Real::from_f64(delta, c),
                _ => Real::from_f64(tail[p - 1], c),
            });
        }
        let r = constraint_residuals(&g, &cs, 4);
        let l = modularity_residuals(&[TermExpansion { beta: Real::one(c), gamma: g.clone(), c: cs.clone() }], 4).unwrap();
        let tol = c.epsilon(8);
        for p in 0..4 {
            prop_assert_eq!(below(&r[p], &tol), below(&l.l[p], &tol), "p = {}", p + 1);
        }
        if k < 4 {
            // the first defect shows up identically in both
            prop_assert!(below(&(&r[k] - &l.l[k]), &tol));
            prop_assert!(below(&(&r[k] - Real::from_f64(delta, c)), &tol));
        }
    }
}

fn capparelli(c: PrecisionContext) -> ProfileBase {
    let corpus = Corpus::builtin();
    let fam = corpus.family("capparelli").unwrap();
    ProfileBase::new(&fam.a, &fam.j, DEFAULT_ORDER, c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn shift_covariance(b1 in 0i64..=6, b2 in 0i64..=6, c0 in -3i64..=3, delta in -12i64..=12) {
        let c = ctx();
        let base = capparelli(c);
        let b = vec![rat(b1, 1), rat(b2, 1)];
        let d = rat(delta, 6);
        let p0 = base.profile(&b, &rat(c0, 1));
        let p1 = base.profile(&b, &(rat(c0, 1) + &d));
        for (x, y) in p0.c.iter().zip(&p1.c) {
            prop_assert!(x == y);
        }
        let shift = Real::from_rational(&d, c);
        prop_assert!(below(&(&p1.gamma - &p0.gamma - &shift), &c.epsilon(5)));
        let term = |p: &AsymptoticProfile| TermExpansion { beta: p.beta.clone(), gamma: p.gamma.clone(), c: p.c.clone() };
        let l0 = modularity_residuals(&[term(&p0)], 4).unwrap();
        let l1 = modularity_residuals(&[term(&p1)], 4).unwrap();
        prop_assert!(below(&(l1.c_star() - l0.c_star() + &shift), &c.epsilon(5)));
        for (x, y) in l0.constraints().iter().zip(l1.constraints()) {
            prop_assert!(below(&(x - y), &c.epsilon(5)));
        }
    }

    #[test]
    fn positive_definite_forms_have_consistent_profiles(a in 1i64..=8, d in 1i64..=8, off in -4i64..=4, j1 in 1u32..=3, j2 in 1u32..=3) {
        prop_assume!(a * d > off * off);
        let c = ctx();
        let m = vec![vec![rat(a, 1), rat(off, 1)], vec![rat(off, 1), rat(d, 1)]];
        let j = [j1, j2];
        let base = ProfileBase::new(&m, &j, 2, c).unwrap();
        prop_assert!(below(&q_residual(&m, &j, base.q()).unwrap(), &c.epsilon(10)));
        for i in 0..2 {
            let x = base.q()[i].powi(j[i] as i64);
            let xi = &x * j[i] as i64 / (Real::one(c) - &x);
            prop_assert!(below(&(xi - &base.xi()[i]), &c.epsilon(10)));
        }
        let mut at: linalg::Matrix = m.iter().map(|r| r.iter().map(|v| Real::from_rational(v, c)).collect()).collect();
        for i in 0..2 {
            at[i][i] = &at[i][i] + &base.xi()[i];
        }
        let det = &at[0][0] * &at[1][1] - &at[0][1] * &at[1][0];
        prop_assert!(below(&(det - base.det_atilde()), &c.epsilon(10)));
        prop_assert!(base.det_atilde().is_positive());
    }
}

#[test]
fn c_constants_do_not_depend_on_c() {
    let c = ctx();
    let base = capparelli(c);
    let b = vec![rat(1, 1), rat(0, 1)];
    assert_eq!(base.profile(&b, &rat(5, 1)).c, base.profile(&b, &rat(0, 1)).c);
    let c1 = base.c_constants(&[rat(0, 1), rat(0, 1)])[0].clone();
    assert!(below(&(c1 - Real::from_rational(&rat(19, 8), c)), &c.epsilon(5)));
}

#[test]
fn odd_moments_vanish() {
    let c = ctx();
    let base = capparelli(c);
    for m in [[1, 0], [0, 3], [2, 1], [4, 3], [5, 0]] {
        assert!(base.moments().get(&m).is_zero());
    }
}

#[test]
fn leading_growth_is_alpha() {
    let c = PrecisionContext::new(60).unwrap();
    let corpus = Corpus::builtin();
    let d = corpus.family("capparelli").unwrap().datum(vec![rat(0, 1), rat(0, 1)], rat(-1, 24)).unwrap();
    let prof = build_profile(&d, DEFAULT_ORDER, c).unwrap();
    let mut prev = f64::INFINITY;
    for jx in 4..12 {
        let eps = Real::pow10(0, c) / (1i64 << jx);
        let v = asymptotic_eval(&prof, &eps).unwrap().ln().unwrap() * &eps;
        let gap = (v - &prof.alpha).abs().to_f64();
        assert!(gap < prev);
        prev = gap;
    }
    assert!(prev < 1e-3);
}

#[test]
fn capparelli_matches_product_numerically() {
    let c = PrecisionContext::new(60).unwrap();
    let corpus = Corpus::builtin();
    let cap1 = corpus.identity("cap1").unwrap();
    let d = corpus.family("capparelli").unwrap().datum(vec![rat(0, 1), rat(0, 1)], rat(-1, 24)).unwrap();
    let prof = build_profile(&d, DEFAULT_ORDER, c).unwrap();
    let eps = Real::parse("0.05", c).unwrap();
    // q^{-1/24} times the product side
    let prod = product_numeric(&cap1.product, &eps, c).unwrap() * (&eps / 24).exp();
    let asy = asymptotic_eval(&prof, &eps).unwrap();
    assert!(((asy - &prod) / &prod).abs().to_f64() < 1e-3);
}

#[test]
fn product_alpha_values() {
    let c = ctx();
    let pi2 = Real::pi(c).powi(2);
    assert!(below(&(product_alpha(2, 12, c) - &pi2 / 18), &c.epsilon(5)));
    assert!(below(&(product_alpha(2, 9, c) - &pi2 * 2 / 27), &c.epsilon(5)));
    assert!(product_alpha(0, 7, c).is_zero());
}
