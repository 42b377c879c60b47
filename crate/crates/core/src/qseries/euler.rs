use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::series::QSeriesTrunc;
use crate::error::{Error, Result};

/// Exponents `e_1..e_N` with `f ≡ ∏_{n=1}^{N} (1 − q^n)^{−e_n} (mod q^{N+1})`.
///
/// The returned vector is indexed from zero, so `e[n − 1]` is `e_n`.
pub fn euler_factorize(f: &QSeriesTrunc) -> Result<Vec<BigInt>> {
    if !f.coeff(0).is_one() {
        return Err(Error::ConstantTerm(f.coeff(0).to_string()));
    }
    let order = f.order();
    let mut g = f.clone();
    let mut exps = Vec::with_capacity(order);
    for n in 1..=order {
        let e = g.coeff(n).clone();
        if !e.is_zero() {
            g.mul_one_minus_pow(n, &e);
        }
        exps.push(e);
    }
    Ok(exps)
}

/// Inverse of [`euler_factorize`]: expands `∏ (1 − q^n)^{−e_n}`.
pub fn product_from_exponents(exps: &[BigInt], order: usize) -> QSeriesTrunc {
    let mut s = QSeriesTrunc::one(order);
    for (i, e) in exps.iter().enumerate() {
        let n = i + 1;
        if n > order {
            break;
        }
        if !e.is_zero() {
            s.mul_one_minus_pow(n, &-e);
        }
    }
    s
}

/// Smallest `M <= max_period` with `e_n = e_{n+M}` across the sequence.
pub fn detect_period(exps: &[BigInt], max_period: usize) -> Result<Option<usize>> {
    if max_period == 0 || exps.len() < 3 * max_period {
        return Err(Error::SequenceTooShort { len: exps.len(), max_period });
    }
    Ok((1..=max_period).find(|&m| (0..exps.len() - m).all(|i| exps[i] == exps[i + m])))
}

/// Residues `r` in `1..=M` with nonzero exponent, paired with that exponent.
pub fn residue_support(exps: &[BigInt], period: usize) -> Vec<(usize, BigInt)> {
    (1..=period.min(exps.len()))
        .filter(|&r| !exps[r - 1].is_zero())
        .map(|r| (r, exps[r - 1].clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn two_factor_product() {
        let mut f = QSeriesTrunc::one(10);
        f.div_one_minus(1);
        f.div_one_minus(2);
        let e = euler_factorize(&f).unwrap();
        let mut expect = vec![0; 10];
        expect[0] = 1;
        expect[1] = 1;
        assert_eq!(ints(&e), expect);
    }

    #[test]
    fn numerator_factor() {
        let f = QSeriesTrunc::from_coeffs([1, -1], 5);
        assert_eq!(ints(&euler_factorize(&f).unwrap()), vec![-1, 0, 0, 0, 0]);
    }

    #[test]
    fn rejects_bad_constant_term() {
        assert!(euler_factorize(&QSeriesTrunc::from_coeffs([2, 1], 4)).is_err());
    }

    #[test]
    fn periods() {
        let zeros = vec![BigInt::zero(); 30];
        assert_eq!(detect_period(&zeros, 10).unwrap(), Some(1));
        let linear: Vec<BigInt> = (1..=30).map(BigInt::from).collect();
        assert_eq!(detect_period(&linear, 10).unwrap(), None);
        assert!(detect_period(&linear, 11).is_err());
        let alt: Vec<BigInt> = (1..=30).map(|n| BigInt::from(n % 3)).collect();
        assert_eq!(detect_period(&alt, 10).unwrap(), Some(3));
        assert_eq!(residue_support(&alt, 3), vec![(1, BigInt::from(1)), (2, BigInt::from(2))]);
    }
}
