//! High-precision checks of closed forms attached to the two families.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::{solve_q, ProfileBase};
use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::precision::{rat, rogers_dilog, PrecisionContext, Rational, Real};

/// Named residuals; each should vanish.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub entries: Vec<(String, Real)>,
}

impl CheckReport {
    pub fn max(&self) -> Real {
        let ctx = self.entries[0].1.context();
        self.entries.iter().fold(Real::zero(ctx), |m, (_, r)| m.max(&r.abs()))
    }

    pub fn all_below(&self, tol: &Real) -> bool {
        self.entries.iter().all(|(_, r)| r.abs() < *tol)
    }

    pub fn get(&self, name: &str) -> Option<&Real> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, r)| r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DilogCheck {
    /// `L(1/4) + ⅓L(1/9) = π²/18`.
    Cap,
    /// `L(Q_1) + ⅓L(Q_2³) = 4π²/27` at the mod-9 root.
    Mod9,
}

impl FromStr for DilogCheck {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cap" => Ok(Self::Cap),
            "mod9" => Ok(Self::Mod9),
            _ => Err(Error::UnknownEntry(s.to_string())),
        }
    }
}

impl fmt::Display for DilogCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Cap => "cap",
            Self::Mod9 => "mod9",
        })
    }
}

fn family_q(name: &str, ctx: PrecisionContext) -> Result<Vec<Real>> {
    let corpus = Corpus::builtin();
    let fam = corpus.family(name)?;
    solve_q(&fam.a, &fam.j, ctx)
}

/// `|lhs − target·π²|` for the chosen identity.
pub fn dilog_residual(which: DilogCheck, target_over_pi2: &Rational, ctx: PrecisionContext) -> Result<Real> {
    let (x, y) = match which {
        DilogCheck::Cap => (Real::from_rational(&rat(1, 4), ctx), Real::from_rational(&rat(1, 9), ctx)),
        DilogCheck::Mod9 => {
            let q = family_q("mod9", ctx)?;
            (q[0].clone(), q[1].powi(3))
        }
    };
    let lhs = rogers_dilog(&x, ctx)? + rogers_dilog(&y, ctx)? / 3;
    let target = Real::from_rational(target_over_pi2, ctx) * Real::pi(ctx).powi(2);
    Ok((lhs - target).abs())
}

pub fn dilog_check(which: DilogCheck, ctx: PrecisionContext) -> Result<Real> {
    let target = match which {
        DilogCheck::Cap => rat(1, 18),
        DilogCheck::Mod9 => rat(4, 27),
    };
    dilog_residual(which, &target, ctx)
}

/// The six algebraic relations of the mod-9 root and its `ξ`.
pub fn minimal_poly_check(ctx: PrecisionContext) -> Result<CheckReport> {
    let corpus = Corpus::builtin();
    let fam = corpus.family("mod9")?;
    let base = ProfileBase::new(&fam.a, &fam.j, 1, ctx)?;
    let (q1, q2) = (&base.q()[0], &base.q()[1]);
    let (x1, x2) = (&base.xi()[0], &base.xi()[1]);
    let s = (Real::pi(ctx) / 18).sin();
    let q23 = q2.powi(3);
    let entries = vec![
        ("Q1^3 - 3Q1^2 + 1".to_string(), q1.powi(3) - q1.powi(2) * 3 + 1),
        ("Q2^9 - 6Q2^6 + 3Q2^3 + 1".into(), q2.powi(9) - q2.powi(6) * 6 + &q23 * 3 + 1),
        ("xi1^3 - 3xi1 - 1".into(), x1.powi(3) - x1 * 3 - 1),
        ("xi2^3 - 9xi2^2 - 54xi2 - 27".into(), x2.powi(3) - x2.powi(2) * 9 - x2 * 54 - 27),
        ("Q1 - (1 - 2sin(pi/18))".into(), q1 - (Real::one(ctx) - &s * 2)),
        ("Q2^3 - (4sin^2(pi/18) + 4sin(pi/18))".into(), q23 - (s.powi(2) * 4 + &s * 4)),
    ];
    Ok(CheckReport { entries })
}

/// The Capparelli root, `ξ` and `γ − C` against their closed forms.
pub fn closed_form_check(ctx: PrecisionContext) -> Result<CheckReport> {
    let corpus = Corpus::builtin();
    let fam = corpus.family("capparelli")?;
    let base = ProfileBase::new(&fam.a, &fam.j, 1, ctx)?;
    let q2 = Real::from_i64(2, ctx) * Real::from_i64(3, ctx).pow_rational(&rat(-2, 3))?;
    let entries = vec![
        ("Q1 - 3/4".to_string(), &base.q()[0] - Real::from_rational(&rat(3, 4), ctx)),
        ("Q2 - 2*3^(-2/3)".into(), &base.q()[1] - q2),
        ("xi1 - 3".into(), &base.xi()[0] - 3),
        ("xi2 - 24".into(), &base.xi()[1] - 24),
        ("gamma - C - 29/12".into(), base.gamma_shift() - Real::from_rational(&rat(29, 12), ctx)),
    ];
    Ok(CheckReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilog_identities_and_control() {
        let ctx = PrecisionContext::new(60).unwrap();
        let tol = ctx.epsilon(10);
        assert!(dilog_check(DilogCheck::Cap, ctx).unwrap() < tol);
        assert!(dilog_check(DilogCheck::Mod9, ctx).unwrap() < tol);
        let wrong = dilog_residual(DilogCheck::Cap, &rat(1, 17), ctx).unwrap();
        assert!(wrong > Real::pow10(-3, ctx));
        assert!("mod10".parse::<DilogCheck>().is_err());
    }

    #[test]
    fn algebraic_relations() {
        let ctx = PrecisionContext::new(60).unwrap();
        let tol = ctx.epsilon(10);
        let r = minimal_poly_check(ctx).unwrap();
        assert_eq!(r.entries.len(), 6);
        assert!(r.all_below(&tol), "{:?}", r.entries);
        assert!(closed_form_check(ctx).unwrap().all_below(&tol));
        // ξ_1 = 2cos(π/9); the cubic with a squared middle term is far off
        let corpus = Corpus::builtin();
        let fam = corpus.family("mod9").unwrap();
        let x1 = &ProfileBase::new(&fam.a, &fam.j, 1, ctx).unwrap().xi()[0].clone();
        assert!((x1.powi(3) - x1.powi(2) * 3 - 1).abs() > Real::one(ctx));
        let q1 = &ProfileBase::new(&fam.a, &fam.j, 1, ctx).unwrap().q()[0].clone();
        assert!((q1.powi(3) - q1.powi(2) * 3 - 1).abs() > Real::one(ctx));
    }
}
