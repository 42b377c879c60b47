//! Exhaustive evaluation of a [`SearchSpec`] grid.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::record::{CandidateRecord, TermChoice};
use super::spec::SearchSpec;
use crate::asymptotics::{modularity_residuals, ProfileBase, Residuals, TermExpansion};
use crate::error::{Error, Result};
use crate::precision::{rational_reconstruct, PrecisionContext, Rational, Real};

/// `β` and `c_1..c_P` for every `B` of a grid at one precision.
struct TermTable {
    base: ProfileBase,
    tol: Real,
    data: HashMap<Vec<Rational>, (Real, Vec<Real>)>,
}

impl TermTable {
    fn new(spec: &SearchSpec, digits: u32, bs: &[Vec<Rational>]) -> Result<Self> {
        let ctx = PrecisionContext::new(digits)?;
        let base = ProfileBase::new(&spec.family.a, &spec.family.j, spec.order, ctx)?;
        let data = bs
            .par_iter()
            .map(|b| (b.clone(), (base.beta(b), base.c_constants(b))))
            .collect();
        let tol = match spec.tol_exponent {
            Some(e) => Real::pow10(-(e as i64), ctx),
            None => crate::asymptotics::tolerance(ctx),
        };
        Ok(Self { base, tol, data })
    }

    fn expansion(&self, t: &TermChoice) -> TermExpansion {
        let (beta, c) = &self.data[&t.b];
        let ctx = self.base.context();
        TermExpansion {
            beta: beta.clone(),
            gamma: Real::from_i64(t.c_prime, ctx) + self.base.gamma_shift(),
            c: c.clone(),
        }
    }

    fn residuals(&self, terms: &[TermChoice]) -> Result<Residuals> {
        let ex: Vec<_> = terms.iter().map(|t| self.expansion(t)).collect();
        modularity_residuals(&ex, self.base.order())
    }
}

/// All tuples in lexicographic grid order: `B_1, B_2, C′_2, B_3, C′_3`.
fn tuples(spec: &SearchSpec, bs: &[Vec<Rational>]) -> Vec<Vec<TermChoice>> {
    let mut out: Vec<Vec<TermChoice>> = bs.iter().map(|b| vec![TermChoice { b: b.clone(), c_prime: 0 }]).collect();
    for _ in 1..spec.n_terms {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                bs.iter().flat_map(move |b| {
                    let prefix = prefix.clone();
                    (spec.c_grid.0..=spec.c_grid.1).map(move |c| {
                        let mut t = prefix.clone();
                        t.push(TermChoice { b: b.clone(), c_prime: c });
                        t
                    })
                })
            })
            .collect();
    }
    out
}

/// `α/π²` as a rational with denominator at most 10⁴, if one fits.
pub fn alpha_rationality(alpha: &Real, max_den: &BigInt, tol: &Real) -> Option<Rational> {
    let ctx = alpha.context();
    let x = alpha / Real::pi(ctx).powi(2);
    rational_reconstruct(&x, max_den, tol)
}

fn alpha_of(base: &ProfileBase) -> Option<Rational> {
    let ctx = base.context();
    alpha_rationality(base.alpha(), &BigInt::from(10_000), &Real::pow10(-(ctx.digits() as i64 / 2), ctx))
}

/// Options that do not change the result, only how it is computed.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Re-check every tuple at the confirmation precision, not only the
    /// screening hits.
    pub confirm_all: bool,
}

pub fn scan(spec: &SearchSpec) -> Result<Vec<CandidateRecord>> {
    scan_with(spec, ScanOptions::default())
}

pub fn scan_with(spec: &SearchSpec, opts: ScanOptions) -> Result<Vec<CandidateRecord>> {
    spec.validate()?;
    match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidSearch(e.to_string()))?
            .install(|| run(spec, opts)),
        None => run(spec, opts),
    }
}

fn run(spec: &SearchSpec, opts: ScanOptions) -> Result<Vec<CandidateRecord>> {
    let bs = spec.b_vectors();
    let screen = TermTable::new(spec, spec.screen_digits, &bs)?;
    let grid = tuples(spec, &bs);
    let screened: Vec<Residuals> = grid.par_iter().map(|t| screen.residuals(t)).collect::<Result<_>>()?;

    let flags: Vec<bool> = screened.iter().map(|r| opts.confirm_all || r.passes(&screen.tol)).collect();
    let needs_confirm = |i: usize| flags[i];
    let mut confirm_bs: Vec<Vec<Rational>> = (0..grid.len())
        .filter(|&i| needs_confirm(i))
        .flat_map(|i| grid[i].iter().map(|t| t.b.clone()))
        .collect();
    confirm_bs.sort();
    confirm_bs.dedup();
    let confirm = TermTable::new(spec, spec.confirm_digits, &confirm_bs)?;
    let alpha = alpha_of(&confirm.base);

    // single-term verdicts for the degeneracy test
    let single: HashMap<Vec<Rational>, bool> = confirm_bs
        .par_iter()
        .map(|b| {
            let r = confirm.residuals(&[TermChoice { b: b.clone(), c_prime: 0 }])?;
            Ok((b.clone(), r.passes(&confirm.tol)))
        })
        .collect::<Result<_>>()?;

    grid.into_par_iter()
        .zip(screened)
        .enumerate()
        .map(|(i, (terms, scr))| {
            let (res, passed) = if needs_confirm(i) {
                let r = confirm.residuals(&terms)?;
                let ok = r.passes(&confirm.tol);
                (r, ok)
            } else {
                (scr, false)
            };
            let degenerate = terms.len() > 1
                && (terms.iter().all(|t| *t == terms[0]) || terms.iter().all(|t| single.get(&t.b).copied().unwrap_or(false)));
            Ok(CandidateRecord {
                family: spec.family.name.clone(),
                terms,
                residuals: res.constraints().to_vec(),
                c_star: res.c_star().clone(),
                lambda: res.lambda.clone(),
                alpha_over_pi2: alpha.clone(),
                degenerate,
                passed,
            })
        })
        .collect()
}

/// Did a tuple pass at the screening precision? Exposed for the soundness
/// property: screening may over-report but never under-report.
pub fn screen_passes(spec: &SearchSpec, terms: &[TermChoice]) -> Result<bool> {
    let mut bs: Vec<_> = terms.iter().map(|t| t.b.clone()).collect();
    bs.sort();
    bs.dedup();
    let table = TermTable::new(spec, spec.screen_digits, &bs)?;
    Ok(table.residuals(terms)?.passes(&table.tol))
}
