//! Parameters of one Nahm-type sum.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::precision::Rational;

/// `Σ_{n >= lower} q^{½nᵀAn + nᵀB + C} / ∏_i (q^{J_i}; q^{J_i})_{n_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NahmDatum {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Rational,
    j: Vec<u32>,
    lower: Vec<u32>,
}

impl NahmDatum {
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Rational, j: Vec<u32>, lower: Vec<u32>) -> Result<Self> {
        let k = a.len();
        if k == 0 {
            return Err(Error::InvalidDatum("dimension must be at least 1".into()));
        }
        if a.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidDatum("A must be square".into()));
        }
        if b.len() != k || j.len() != k || lower.len() != k {
            return Err(Error::InvalidDatum(format!(
                "length mismatch: k = {k}, |B| = {}, |J| = {}, |lower| = {}",
                b.len(),
                j.len(),
                lower.len()
            )));
        }
        for r in 0..k {
            for s in 0..r {
                if a[r][s] != a[s][r] {
                    return Err(Error::InvalidDatum(format!("A is not symmetric at ({r}, {s})")));
                }
            }
        }
        if j.contains(&0) {
            return Err(Error::InvalidDatum("J entries must be positive".into()));
        }
        check_positive_definite(&a)?;
        Ok(Self { a, b, c, j, lower })
    }

    /// Datum with integer A, B, C and zero lower bounds.
    pub fn from_ints(a: &[&[i64]], b: &[i64], c: i64, j: &[u32]) -> Result<Self> {
        let int = |v: i64| Rational::from_integer(BigInt::from(v));
        Self::new(
            a.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect(),
            b.iter().map(|&v| int(v)).collect(),
            int(c),
            j.to_vec(),
            vec![0; j.len()],
        )
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn j(&self) -> &[u32] {
        &self.j
    }

    pub fn lower(&self) -> &[u32] {
        &self.lower
    }

    pub fn with_b(&self, b: Vec<Rational>) -> Result<Self> {
        Self::new(self.a.clone(), b, self.c.clone(), self.j.clone(), self.lower.clone())
    }

    pub fn with_c(&self, c: Rational) -> Self {
        Self { c, ..self.clone() }
    }

    pub fn with_lower(&self, lower: Vec<u32>) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), self.j.clone(), lower)
    }

    /// True when every support bound is zero (the unrestricted sum).
    pub fn is_unrestricted(&self) -> bool {
        self.lower.iter().all(|&l| l == 0)
    }

    /// Exact exponent `½nᵀAn + nᵀB + C` at a lattice point.
    pub fn exponent(&self, n: &[i64]) -> Rational {
        let k = self.k();
        let mut quad = Rational::zero();
        for r in 0..k {
            for s in 0..k {
                quad += &self.a[r][s] * Rational::from_integer(BigInt::from(n[r] * n[s]));
            }
        }
        let mut lin = Rational::zero();
        for r in 0..k {
            lin += &self.b[r] * Rational::from_integer(BigInt::from(n[r]));
        }
        quad / Rational::from_integer(BigInt::from(2)) + lin + &self.c
    }
}

/// Sylvester's criterion on exact rationals.
pub fn check_positive_definite(a: &[Vec<Rational>]) -> Result<()> {
    let k = a.len();
    for size in 1..=k {
        let minor: Vec<Vec<Rational>> = a[..size].iter().map(|row| row[..size].to_vec()).collect();
        let d = determinant(minor);
        if !d.is_positive() {
            return Err(Error::NotPositiveDefinite(format!("leading minor of size {size} is {d}")));
        }
    }
    Ok(())
}

/// Exact determinant by fraction-valued Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Serializable form of a datum, with rationals written as strings like `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumRecord {
    pub a: Vec<Vec<String>>,
    pub b: Vec<String>,
    #[serde(default = "zero_string")]
    pub c: String,
    pub j: Vec<u32>,
    #[serde(default)]
    pub lower: Option<Vec<u32>>,
}

fn zero_string() -> String {
    "0".into()
}

/// Parses `"p"`, `"p/q"` or a plain integer into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl DatumRecord {
    pub fn to_datum(&self) -> Result<NahmDatum> {
        let a = self
            .a
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let b = self.b.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        let lower = self.lower.clone().unwrap_or_else(|| vec![0; self.j.len()]);
        NahmDatum::new(a, b, parse_rational(&self.c)?, self.j.clone(), lower)
    }

    pub fn from_datum(d: &NahmDatum) -> Self {
        Self {
            a: d.a.iter().map(|row| row.iter().map(|r| r.to_string()).collect()).collect(),
            b: d.b.iter().map(|r| r.to_string()).collect(),
            c: d.c.to_string(),
            j: d.j.clone(),
            lower: Some(d.lower.clone()),
        }
    }
}
