use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact rational number; `num_rational` keeps it reduced with a positive
/// denominator.
pub type Rational = BigRational;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Smallest accepted working precision, in decimal digits.
pub const MIN_DIGITS: u32 = 30;
/// Default working precision, in decimal digits.
pub const DEFAULT_DIGITS: u32 = 120;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Decimal working precision shared by a family of [`Real`] values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrecisionContext {
    digits: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Precision { min: MIN_DIGITS, got: digits });
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision used for every operation under this context.
    pub fn bits(&self) -> usize {
        let raw = (self.digits as f64 * LOG2_10).ceil() as usize + GUARD_BITS;
        raw.div_ceil(64) * 64
    }

    /// Context with twice the digits (used for confirmation passes).
    pub fn doubled(&self) -> Self {
        Self { digits: self.digits * 2 }
    }

    /// `10^{-(digits - slack)}`, the usual "agrees to working precision" bound.
    pub fn epsilon(&self, slack: u32) -> Real {
        Real::pow10(-(self.digits.saturating_sub(slack) as i64), *self)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self { digits: DEFAULT_DIGITS }
    }
}

/// Arbitrary-precision real bound to a [`PrecisionContext`].
///
/// Binary operations run at the larger of the two operand precisions.
#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    ctx: PrecisionContext,
}

impl Real {
    fn wrap(value: BigFloat, ctx: PrecisionContext) -> Self {
        debug_assert!(!value.is_nan(), "NaN escaped into Real");
        Self { value, ctx }
    }

    pub fn context(&self) -> PrecisionContext {
        self.ctx
    }

    pub fn zero(ctx: PrecisionContext) -> Self {
        Self::wrap(BigFloat::from_i32(0, ctx.bits()), ctx)
    }

    pub fn one(ctx: PrecisionContext) -> Self {
        Self::from_i64(1, ctx)
    }

    pub fn from_i64(v: i64, ctx: PrecisionContext) -> Self {
        Self::wrap(BigFloat::from_i64(v, ctx.bits()), ctx)
    }

    pub fn from_f64(v: f64, ctx: PrecisionContext) -> Self {
        Self::wrap(BigFloat::from_f64(v, ctx.bits()), ctx)
    }

    pub fn from_bigint(v: &BigInt, ctx: PrecisionContext) -> Self {
        if let Ok(small) = i64::try_from(v) {
            return Self::from_i64(small, ctx);
        }
        let (sign, digits) = v.to_u64_digits();
        let mut acc = BigFloat::from_i32(0, ctx.bits());
        let base = BigFloat::from_u64(1, ctx.bits()).mul(&BigFloat::from_f64(18446744073709551616.0, 64), ctx.bits(), RM);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, ctx.bits(), RM).add(&BigFloat::from_u64(*d, 64), ctx.bits(), RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc.inv_sign();
        }
        Self::wrap(acc, ctx)
    }

    pub fn from_rational(r: &Rational, ctx: PrecisionContext) -> Self {
        let n = Self::from_bigint(r.numer(), ctx);
        if r.denom() == &BigInt::from(1) {
            return n;
        }
        let d = Self::from_bigint(r.denom(), ctx);
        &n / &d
    }

    /// Parses a decimal literal such as `-1.25e-3`.
    pub fn parse(s: &str, ctx: PrecisionContext) -> Result<Self> {
        let v = with_consts(|cc| BigFloat::parse(s.trim(), Radix::Dec, ctx.bits(), RM, cc));
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(format!("not a finite decimal number: `{s}`")));
        }
        Ok(Self::wrap(v, ctx))
    }

    pub fn pi(ctx: PrecisionContext) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(ctx.bits(), RM)), ctx)
    }

    /// `10^e` for integer `e`.
    pub fn pow10(e: i64, ctx: PrecisionContext) -> Self {
        let ten = Self::from_i64(10, ctx);
        ten.powi(e)
    }

    fn bits_with(&self, other: &Real) -> (usize, PrecisionContext) {
        let ctx = self.ctx.max(other.ctx);
        (ctx.bits(), ctx)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        !self.value.is_zero() && self.value.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.value.abs(), self.ctx)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Self::wrap(self.value.reciprocal(self.ctx.bits(), RM), self.ctx))
    }

    /// Checked division.
    pub fn checked_div(&self, other: &Real) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self / other)
    }

    pub fn ln(&self) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::Domain(format!("ln of non-positive value {}", self.to_sci(12))));
        }
        let p = self.ctx.bits();
        Ok(Self::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), self.ctx))
    }

    pub fn exp(&self) -> Self {
        let p = self.ctx.bits();
        Self::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), self.ctx)
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain(format!("sqrt of negative value {}", self.to_sci(12))));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(Self::wrap(self.value.sqrt(self.ctx.bits(), RM), self.ctx))
    }

    pub fn sin(&self) -> Self {
        let p = self.ctx.bits();
        Self::wrap(with_consts(|cc| self.value.sin(p, RM, cc)), self.ctx)
    }

    pub fn cos(&self) -> Self {
        let p = self.ctx.bits();
        Self::wrap(with_consts(|cc| self.value.cos(p, RM, cc)), self.ctx)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, e: i64) -> Self {
        let p = self.ctx.bits();
        let mag = self.value.powi(e.unsigned_abs() as usize, p, RM);
        let v = if e < 0 { mag.reciprocal(p, RM) } else { mag };
        Self::wrap(v, self.ctx)
    }

    /// `self^e` for a positive base and real exponent.
    pub fn powf(&self, e: &Real) -> Result<Self> {
        if e.is_zero() {
            return Ok(Self::one(self.ctx.max(e.ctx)));
        }
        Ok((&self.ln()? * e).exp())
    }

    /// `self^e` for a rational exponent; integer exponents allow any sign of base.
    pub fn pow_rational(&self, e: &Rational) -> Result<Self> {
        if e.is_integer() {
            if let Ok(n) = i64::try_from(e.numer()) {
                if n < 0 && self.is_zero() {
                    return Err(Error::Domain("zero to a negative power".into()));
                }
                return Ok(self.powi(n));
            }
        }
        if !self.is_positive() {
            return Err(Error::Domain("non-integer power of non-positive base".into()));
        }
        let er = Real::from_rational(e, self.ctx);
        self.powf(&er)
    }

    /// Rounds toward negative infinity and returns the exact integer.
    pub fn floor_to_bigint(&self) -> BigInt {
        let f = self.value.floor();
        bigfloat_to_bigint(&f)
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Lossy conversion to `f64`.
    pub fn to_f64(&self) -> f64 {
        self.to_sci(20).parse().unwrap_or(f64::NAN)
    }

    /// Decimal scientific notation with `digits` significant digits
    /// (truncated, never rounded), e.g. `-1.2345e-7`.
    pub fn to_sci(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let s = with_consts(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
        let (mant, exp) = match s.split_once('e') {
            Some((m, e)) => (m.to_string(), e.trim_start_matches('+').parse::<i64>().unwrap_or(0)),
            None => (s.clone(), 0),
        };
        let (neg, mant) = match mant.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, mant),
        };
        let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant.as_str(), ""));
        let mut all: String = format!("{int_part}{frac_part}");
        // normalise so the first digit is nonzero
        let lead = all.chars().take_while(|c| *c == '0').count();
        let exp = exp + int_part.len() as i64 - 1 - lead as i64;
        all.drain(..lead);
        if all.is_empty() {
            return "0".to_string();
        }
        all.truncate(digits.max(1));
        let body = if all.len() > 1 {
            let trimmed = all[1..].trim_end_matches('0');
            if trimmed.is_empty() {
                all[..1].to_string()
            } else {
                format!("{}.{}", &all[..1], trimmed)
            }
        } else {
            all
        };
        format!("{}{}e{}", if neg { "-" } else { "" }, body, exp)
    }

    /// Full-precision decimal string (significant digits = context digits).
    pub fn to_decimal(&self) -> String {
        self.to_sci(self.ctx.digits as usize)
    }

    /// Rounds to a lower context.
    pub fn with_context(&self, ctx: PrecisionContext) -> Real {
        let mut v = self.value.clone();
        if ctx.bits() < self.ctx.bits() {
            let _ = v.set_precision(ctx.bits(), RM);
        }
        Self::wrap(v, ctx)
    }

}

fn bigfloat_to_bigint(v: &BigFloat) -> BigInt {
    if v.is_zero() {
        return BigInt::zero();
    }
    let (words, _nbits, sign, exponent, _) = v.as_raw_parts().expect("finite value");
    // value = 0.m * 2^exponent with m spread over `words` (little-endian)
    let mut m = BigUint::zero();
    for w in words.iter().rev() {
        m = (m << 64u32) + BigUint::from(*w);
    }
    let total_bits = (words.len() * 64) as i64;
    let shift = exponent as i64 - total_bits;
    let mag = if shift >= 0 { m << (shift as u64) } else { m >> ((-shift) as u64) };
    let mag = BigInt::from(mag);
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => f.write_str(&self.to_sci(p)),
            None => f.write_str(&self.to_decimal()),
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let (p, ctx) = self.bits_with(rhs);
                Real::wrap(self.value.$f(&rhs.value, p, RM), ctx)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                self.$m(&Real::from_i64(rhs, self.ctx))
            }
        }
        impl $tr<i64> for Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                (&self).$m(&Real::from_i64(rhs, self.ctx))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(BigFloat::neg(&self.value), self.ctx)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl std::iter::Sum<Real> for Option<Real> {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Self {
        iter.reduce(|a, b| a + b)
    }
}

/// Exact rational from an `i64` pair; panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// True when `|x| < tol`.
pub fn below(x: &Real, tol: &Real) -> bool {
    x.abs() < *tol
}
