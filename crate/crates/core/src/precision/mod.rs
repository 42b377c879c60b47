//! Arbitrary-precision reals and the special functions built on them.

pub mod bernoulli;
pub mod real;
pub mod reconstruct;
pub mod special;

pub use bernoulli::{bernoulli_numbers, bernoulli_poly};
pub use real::{below, rat, PrecisionContext, Rational, Real, DEFAULT_DIGITS, MIN_DIGITS};
pub use reconstruct::rational_reconstruct;
pub use special::{li2, polylog_neg, polylog_neg_numerator, rogers_dilog};
