//! One evaluated grid tuple and its line-oriented encodings.

use std::io::Write;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::precision::{Rational, Real};

/// Significant digits written for residuals, `C*` and `λ`.
pub const RECORD_DIGITS: usize = 25;

/// One summand of a candidate: linear term `B` and shift `C′`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermChoice {
    pub b: Vec<Rational>,
    pub c_prime: i64,
}

#[derive(Clone, Debug)]
pub struct CandidateRecord {
    pub family: String,
    pub terms: Vec<TermChoice>,
    /// `L_2..L_P`.
    pub residuals: Vec<Real>,
    pub c_star: Real,
    pub lambda: Real,
    pub alpha_over_pi2: Option<Rational>,
    pub degenerate: bool,
    pub passed: bool,
}

impl CandidateRecord {
    /// Terms sorted so that equivalent orderings compare equal.
    pub fn canonical_terms(&self) -> Vec<TermChoice> {
        let min_c = self.terms.iter().map(|t| t.c_prime).min().unwrap_or(0);
        let mut t: Vec<TermChoice> =
            self.terms.iter().map(|t| TermChoice { b: t.b.clone(), c_prime: t.c_prime - min_c }).collect();
        t.sort();
        t
    }

    pub fn to_json(&self) -> Value {
        let s = |x: &Real| x.to_sci(RECORD_DIGITS);
        json!({
            "family": self.family,
            "terms": self.terms.iter().map(|t| json!({
                "B": t.b.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "Cprime": t.c_prime,
            })).collect::<Vec<_>>(),
            "residuals": self.residuals.iter().map(s).collect::<Vec<_>>(),
            "Cstar": s(&self.c_star),
            "lambda": s(&self.lambda),
            "alpha_over_pi2": self.alpha_over_pi2.as_ref().map(|r| json!({
                "num": r.numer().to_string(),
                "den": r.denom().to_string(),
            })),
            "degenerate": self.degenerate,
            "passed": self.passed,
        })
    }

    /// Short human-readable form, e.g. `(1,0;4,6;2)`.
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        for (i, t) in self.terms.iter().enumerate() {
            parts.push(t.b.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","));
            if i > 0 {
                parts.push(t.c_prime.to_string());
            }
        }
        format!("({})", parts.join(";"))
    }
}

pub const CSV_COLUMNS: [&str; 8] =
    ["family", "terms", "residuals", "Cstar", "lambda", "alpha_over_pi2", "degenerate", "passed"];

pub fn write_jsonl<W: Write>(out: &mut W, records: &[CandidateRecord]) -> Result<()> {
    for r in records {
        writeln!(out, "{}", r.to_json())?;
    }
    Ok(())
}

/// CSV with the JSONL columns; nested values are compact JSON strings.
pub fn write_csv<W: Write>(out: W, records: &[CandidateRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_COLUMNS).map_err(err)?;
    for r in records {
        let v = r.to_json();
        let cell = |k: &str| match &v[k] {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        w.write_record(CSV_COLUMNS.map(cell)).map_err(err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text<W: Write>(out: &mut W, records: &[CandidateRecord]) -> Result<()> {
    for r in records {
        let res: Vec<String> = r.residuals.iter().map(|x| x.to_sci(3)).collect();
        writeln!(
            out,
            "{:<24} {:<5} {} C*={} [{}]",
            r.label(),
            if r.passed { "pass" } else { "fail" },
            if r.degenerate { "degenerate" } else { "-" },
            r.c_star.to_sci(12),
            res.join(", ")
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{rat, PrecisionContext};

    fn sample() -> CandidateRecord {
        let ctx = PrecisionContext::new(40).unwrap();
        CandidateRecord {
            family: "capparelli".into(),
            terms: vec![
                TermChoice { b: vec![rat(4, 1), rat(6, 1)], c_prime: 0 },
                TermChoice { b: vec![rat(1, 1), rat(0, 1)], c_prime: -2 },
            ],
            residuals: vec![Real::from_f64(1e-50, ctx)],
            c_star: Real::from_rational(&rat(-1, 24), ctx),
            lambda: Real::one(ctx),
            alpha_over_pi2: Some(rat(1, 18)),
            degenerate: false,
            passed: true,
        }
    }

    #[test]
    fn json_fields() {
        let v = sample().to_json();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        let mut want: Vec<_> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(keys, want);
        assert_eq!(v["terms"][0]["B"][1], "6");
        assert_eq!(v["alpha_over_pi2"]["den"], "18");
        assert_eq!(sample().label(), "(4,6;1,0;-2)");
    }

    #[test]
    fn canonical_form_is_swap_invariant() {
        let r = sample();
        let c = r.canonical_terms();
        assert_eq!(c[0].b, vec![rat(1, 1), rat(0, 1)]);
        assert_eq!(c[0].c_prime, 0);
        assert_eq!(c[1].c_prime, 2);
    }

    #[test]
    fn csv_has_header_and_row() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("family,terms,residuals,Cstar,lambda,alpha_over_pi2,degenerate,passed\n"));
        assert_eq!(text.lines().count(), 2);
    }
}
