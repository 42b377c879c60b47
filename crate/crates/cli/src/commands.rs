use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use nahmsum::asymptotics::{modularity_residuals, tolerance, ProfileBase, TermExpansion, DEFAULT_ORDER};
use nahmsum::corpus::Corpus;
use nahmsum::datum::{parse_rational, DatumRecord};
use nahmsum::precision::{PrecisionContext, Real};
use nahmsum::qseries::{detect_period, euler_factorize, nahm_expand_sum, read_series, residue_support};
use nahmsum::search::{self, DilogCheck, GridAxis, ScanOptions, SearchSpec};

use crate::{Failure, Format, Global, Sink};

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

/// Writes flat JSON objects in the sink's format.
fn emit(sink: &mut Sink, records: &[Value]) -> Result<(), Failure> {
    match sink.format {
        Format::Jsonl => {
            for r in records {
                writeln!(sink.out, "{r}")?;
            }
        }
        Format::Text => {
            for r in records {
                for (k, v) in r.as_object().into_iter().flatten() {
                    match v {
                        Value::String(s) => writeln!(sink.out, "{k}: {s}")?,
                        other => writeln!(sink.out, "{k}: {other}")?,
                    }
                }
            }
        }
        Format::Csv => {
            let Some(first) = records.first().and_then(Value::as_object) else {
                return Ok(());
            };
            let keys: Vec<String> = first.keys().cloned().collect();
            let mut w = csv::Writer::from_writer(&mut sink.out);
            w.write_record(&keys).map_err(|e| Failure::Compute(e.to_string()))?;
            for r in records {
                let row: Vec<String> = keys
                    .iter()
                    .map(|k| match &r[k] {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                w.write_record(&row).map_err(|e| Failure::Compute(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Identity name; all identities when omitted.
    #[arg(long)]
    identity: Option<String>,
    /// Truncation order N (coefficients of q^0..q^N).
    #[arg(long, default_value_t = 300)]
    order: usize,
}

pub fn verify(a: &VerifyArgs, sink: &mut Sink) -> Result<bool, Failure> {
    let corpus = Corpus::builtin();
    let reports = match &a.identity {
        Some(name) => vec![search::verify_identity(corpus.identity(name)?, a.order)?],
        None => search::verify_identities(&corpus, a.order)?,
    };
    let ok = reports.iter().all(|r| r.ok());
    if sink.format == Format::Text {
        for r in &reports {
            writeln!(sink.out, "{} {}", if r.ok() { "ok  " } else { "FAIL" }, r.summary())?;
        }
        return Ok(ok);
    }
    let records: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "identity": r.name,
                "order": r.order,
                "ok": r.ok(),
                "sides": r.sides.iter().map(|s| json!({
                    "side": s.index + 1,
                    "terms": s.terms,
                    "first_mismatch": s.first_mismatch,
                })).collect::<Vec<_>>(),
                "condition": r.condition.map(|(k, n, m)| json!({
                    "name": k.name(),
                    "order": n,
                    "first_mismatch": m,
                })),
            })
        })
        .collect();
    emit(sink, &records)?;
    Ok(ok)
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    /// Corpus family supplying A and J.
    #[arg(long, conflicts_with = "datum")]
    family: Option<String>,
    /// Linear term, one rational per coordinate.
    #[arg(long = "B", num_args = 1.., action = clap::ArgAction::Set, allow_negative_numbers = true)]
    b: Vec<String>,
    /// Constant term; defaults to the value the linear constraint forces.
    #[arg(long = "C", allow_negative_numbers = true)]
    c: Option<String>,
    /// TOML file with `a`, `b`, `c`, `j` (rationals as strings).
    #[arg(long)]
    datum: Option<PathBuf>,
    /// Expansion order P.
    #[arg(long = "P", default_value_t = DEFAULT_ORDER)]
    p: usize,
}

pub fn profile(a: &ProfileArgs, ctx: PrecisionContext, sink: &mut Sink) -> Result<bool, Failure> {
    let corpus = Corpus::builtin();
    let (mat, j, b, c_given) = match (&a.family, &a.datum) {
        (Some(f), None) => {
            let fam = corpus.family(f)?;
            if a.b.len() != fam.k() {
                return Err(usage(format!("--B needs {} values for family {f}", fam.k())));
            }
            let b = a.b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            let c = a.c.as_deref().map(parse_rational).transpose()?;
            (fam.a.clone(), fam.j.clone(), b, c)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let rec: DatumRecord = toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let d = rec.to_datum()?;
            if !d.is_unrestricted() {
                return Err(usage("asymptotics need a sum over all n ≥ 0"));
            }
            (d.a().to_vec(), d.j().to_vec(), d.b().to_vec(), Some(d.c().clone()))
        }
        _ => return Err(usage("give exactly one of --family or --datum")),
    };
    let base = ProfileBase::new(&mat, &j, a.p, ctx)?;
    let c_solved = nahmsum::asymptotics::solve_c(&base, &b);
    let c_rational = nahmsum::precision::rational_reconstruct(
        &c_solved,
        &num_bigint_ten_pow(6),
        &Real::pow10(-(ctx.digits() as i64 / 2), ctx),
    );
    let zero = BigRational::default();
    let mut prof = base.profile(&b, c_given.as_ref().unwrap_or(&zero));
    if c_given.is_none() {
        prof.gamma = &prof.gamma + &c_solved;
    }
    let res = modularity_residuals(
        &[TermExpansion { beta: prof.beta.clone(), gamma: prof.gamma.clone(), c: prof.c.clone() }],
        a.p,
    )?;
    let tol = tolerance(ctx);
    let passed = res.passes(&tol);
    let alpha = search::alpha_rationality(base.alpha(), &num_bigint_ten_pow(4), &Real::pow10(-(ctx.digits() as i64 / 2), ctx));
    let d = ctx.digits() as usize;
    let mut rec: Map<String, Value> = prof.to_json().as_object().cloned().unwrap_or_default();
    rec.insert("B".into(), json!(b.iter().map(|r| r.to_string()).collect::<Vec<_>>()));
    rec.insert("C".into(), json!(c_given.as_ref().map(|c| c.to_string())));
    rec.insert("C_solved".into(), json!(c_solved.to_sci(d)));
    rec.insert("C_solved_rational".into(), json!(c_rational.map(|r| r.to_string())));
    rec.insert("alpha_over_pi2".into(), json!(alpha.map(|r| r.to_string())));
    rec.insert("residuals".into(), json!(res.constraints().iter().map(|x| x.to_sci(25)).collect::<Vec<_>>()));
    rec.insert("Cstar".into(), json!(res.c_star().to_sci(25)));
    rec.insert("lambda".into(), json!(res.lambda.to_sci(d)));
    rec.insert("passed".into(), json!(passed));
    emit(sink, &[Value::Object(rec)])?;
    Ok(true)
}

fn num_bigint_ten_pow(e: u32) -> num_bigint::BigInt {
    num_bigint::BigInt::from(10).pow(e)
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    family: String,
    /// Number of sums per candidate (1 to 3).
    #[arg(long, default_value_t = 1)]
    terms: usize,
    /// Bounds for every coordinate of B.
    #[arg(long, num_args = 2, action = clap::ArgAction::Set, value_names = ["LO", "HI"], allow_negative_numbers = true, default_values = ["0", "6"])]
    range: Vec<String>,
    /// Grid step, at least 1/4.
    #[arg(long, default_value = "1")]
    step: String,
    /// Range of the shift C′ for the second and third sums.
    #[arg(long = "c-range", num_args = 2, action = clap::ArgAction::Set, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    c_range: Vec<i64>,
    /// Allow C′ outside [0, 6].
    #[arg(long = "wide-c")]
    wide_c: bool,
    #[arg(long = "P", default_value_t = DEFAULT_ORDER)]
    p: usize,
    /// Precision of the first pass; hits are re-checked at --digits.
    #[arg(long = "screen-digits", default_value_t = 60)]
    screen_digits: u32,
    /// Pass threshold 10^-T (default: a third of the digits in use).
    #[arg(long = "tol-exponent")]
    tol_exponent: Option<u32>,
    /// Re-check every grid point at full precision.
    #[arg(long = "confirm-all")]
    confirm_all: bool,
    /// Only write passing records.
    #[arg(long = "hits-only")]
    hits_only: bool,
}

pub fn scan(a: &ScanArgs, g: &Global, sink: &mut Sink) -> Result<bool, Failure> {
    let corpus = Corpus::builtin();
    let fam = corpus.family(&a.family)?.clone();
    let lo = search::parse_bound(&a.range[0])?;
    let hi = search::parse_bound(&a.range[1])?;
    let step = search::parse_bound(&a.step)?;
    let axis = GridAxis::new(lo, hi, step)?;
    let k = fam.k();
    let mut spec = SearchSpec::new(fam, a.terms, 0, 0)?;
    spec.b_grid = vec![axis; k];
    if a.c_range.len() == 2 {
        spec.c_grid = (a.c_range[0], a.c_range[1]);
    }
    spec.wide_c = a.wide_c;
    spec.order = a.p;
    spec.confirm_digits = g.digits;
    spec.screen_digits = a.screen_digits.min(g.digits);
    spec.tol_exponent = a.tol_exponent;
    spec.validate()?;
    let recs = search::scan_with(&spec, ScanOptions { workers: g.workers, confirm_all: a.confirm_all })?;
    let recs: Vec<_> = if a.hits_only { recs.into_iter().filter(|r| r.passed).collect() } else { recs };
    match sink.format {
        Format::Jsonl => search::write_jsonl(&mut sink.out, &recs)?,
        Format::Csv => search::write_csv(&mut sink.out, &recs)?,
        Format::Text => search::write_text(&mut sink.out, &recs)?,
    }
    Ok(true)
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    /// Corpus identity whose sum side is factored.
    #[arg(long, conflicts_with = "series")]
    identity: Option<String>,
    /// Which sum side (1-based).
    #[arg(long, default_value_t = 1)]
    side: usize,
    /// Series file of `n coefficient` lines.
    #[arg(long)]
    series: Option<PathBuf>,
    #[arg(long, default_value_t = 60)]
    order: usize,
    /// Longest period tried; defaults to a third of the order.
    #[arg(long = "max-period")]
    max_period: Option<usize>,
}

pub fn factor(a: &FactorArgs, sink: &mut Sink) -> Result<bool, Failure> {
    let series = match (&a.identity, &a.series) {
        (Some(name), None) => {
            let corpus = Corpus::builtin();
            let id = corpus.identity(name)?;
            let side = id
                .sides
                .get(a.side.wrapping_sub(1))
                .ok_or_else(|| usage(format!("identity {name} has {} sides", id.sides.len())))?;
            nahm_expand_sum(side, a.order)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            read_series(&text)?.truncate(a.order)
        }
        _ => return Err(usage("give exactly one of --identity or --series")),
    };
    let exps = euler_factorize(&series)?;
    let max_period = a.max_period.unwrap_or(exps.len() / 3);
    let period = detect_period(&exps, max_period)?;
    let support = period.map(|m| residue_support(&exps, m)).unwrap_or_default();
    let rec = json!({
        "order": series.order(),
        "exponents": exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "),
        "period": period,
        "support": support.iter().map(|(r, e)| format!("{r}:{e}")).collect::<Vec<_>>().join(" "),
    });
    emit(sink, &[rec])?;
    Ok(true)
}

#[derive(Args, Debug)]
pub struct DilogArgs {
    /// `cap` or `mod9`.
    #[arg(long)]
    check: String,
    /// Override the right-hand side, as a rational multiple of π².
    #[arg(long)]
    target: Option<String>,
}

pub fn dilog(a: &DilogArgs, ctx: PrecisionContext, sink: &mut Sink) -> Result<bool, Failure> {
    let which: DilogCheck = a.check.parse().map_err(|_| usage(format!("unknown check `{}`", a.check)))?;
    let r = match &a.target {
        Some(t) => search::dilog_residual(which, &parse_rational(t)?, ctx)?,
        None => search::dilog_check(which, ctx)?,
    };
    let ok = r < ctx.epsilon(10);
    emit(sink, &[json!({ "check": which.to_string(), "residual": r.to_sci(6), "passed": ok })])?;
    Ok(ok)
}
