//! Brute-force generating functions for partitions with difference conditions.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::series::QSeriesTrunc;
use crate::error::{Error, Result};

/// Largest order the enumerator accepts.
pub const MAX_ENUMERATION_ORDER: usize = 80;

/// Named difference conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionKind {
    /// Capparelli, no part equal to 1. Adjacent parts differ by at least 2;
    /// a difference of 2 needs a sum divisible by 6, a difference of 3 needs
    /// both parts divisible by 3.
    Cap1,
    /// Capparelli, no part equal to 2.
    Cap2,
    /// Condition(0).
    Kr1,
    /// Condition(0), smallest part at least 2.
    Kr2,
    /// Condition(0), smallest part at least 3.
    Kr3,
    /// Condition(2), smallest part at least 2.
    Kr4,
    /// Condition(1), no `2 + 2`.
    Kr5,
}

impl ConditionKind {
    pub const ALL: [ConditionKind; 7] = [Self::Cap1, Self::Cap2, Self::Kr1, Self::Kr2, Self::Kr3, Self::Kr4, Self::Kr5];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Cap1 => "cap-1",
            Self::Cap2 => "cap-2",
            Self::Kr1 => "kr-1",
            Self::Kr2 => "kr-2",
            Self::Kr3 => "kr-3",
            Self::Kr4 => "kr-4",
            Self::Kr5 => "kr-5",
        }
    }

    fn smallest_part(&self) -> usize {
        match self {
            Self::Kr2 | Self::Kr4 => 2,
            Self::Kr3 => 3,
            _ => 1,
        }
    }

    /// May `next` follow `prev1` (and `prev2` before it) in a weakly
    /// increasing partition? Zero means "no such part".
    fn admits(&self, prev2: usize, prev1: usize, next: usize) -> bool {
        if prev1 == 0 {
            return match self {
                Self::Cap1 => next != 1,
                Self::Cap2 => next != 2,
                _ => next >= self.smallest_part(),
            };
        }
        match self {
            Self::Cap1 | Self::Cap2 => {
                if *self == Self::Cap1 && next == 1 || *self == Self::Cap2 && next == 2 {
                    return false;
                }
                let diff = next - prev1;
                match diff {
                    0 | 1 => false,
                    2 => (next + prev1).is_multiple_of(6),
                    3 => prev1.is_multiple_of(3),
                    _ => true,
                }
            }
            Self::Kr1 | Self::Kr2 | Self::Kr3 | Self::Kr4 | Self::Kr5 => {
                let residue = match self {
                    Self::Kr4 => 2,
                    Self::Kr5 => 1,
                    _ => 0,
                };
                if prev2 != 0 && next - prev2 < 3 {
                    return false;
                }
                if next - prev1 <= 1 && (next + prev1) % 3 != residue {
                    return false;
                }
                !(*self == Self::Kr5 && prev1 == 2 && next == 2)
            }
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownCondition(s.to_string()))
    }
}

struct Counter {
    kind: ConditionKind,
    memo: HashMap<(usize, usize, usize), u64>,
}

impl Counter {
    /// Ways to complete a partition with `rem` left, last two parts `prev2 <= prev1`.
    fn count(&mut self, rem: usize, prev2: usize, prev1: usize) -> u64 {
        if rem == 0 {
            return 1;
        }
        if let Some(&v) = self.memo.get(&(rem, prev2, prev1)) {
            return v;
        }
        let mut total = 0;
        for next in prev1.max(1)..=rem {
            if self.kind.admits(prev2, prev1, next) {
                total += self.count(rem - next, prev1, next);
            }
        }
        self.memo.insert((rem, prev2, prev1), total);
        total
    }
}

/// Generating function, to order `n_max`, of partitions obeying `kind`.
pub fn enumerate_condition_partitions(kind: ConditionKind, n_max: usize) -> Result<QSeriesTrunc> {
    if n_max > MAX_ENUMERATION_ORDER {
        return Err(Error::Domain(format!(
            "partition enumeration is limited to order {MAX_ENUMERATION_ORDER}, got {n_max}"
        )));
    }
    let mut counter = Counter { kind, memo: HashMap::new() };
    let coeffs: Vec<BigInt> = (0..=n_max).map(|n| BigInt::from(counter.count(n, 0, 0))).collect();
    Ok(QSeriesTrunc::from_coeffs(coeffs, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct listing of all partitions of `n` (weakly increasing), filtered by the rule.
    fn brute(kind: ConditionKind, n: usize) -> u64 {
        fn parts(n: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for p in min..=n {
                cur.push(p);
                parts(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        parts(n, 1, &mut Vec::new(), &mut all);
        all.into_iter()
            .filter(|lam| {
                (0..lam.len()).all(|i| {
                    let p1 = if i >= 1 { lam[i - 1] } else { 0 };
                    let p2 = if i >= 2 { lam[i - 2] } else { 0 };
                    kind.admits(p2, p1, lam[i])
                })
            })
            .count() as u64
    }

    #[test]
    fn memoised_count_matches_listing() {
        for kind in ConditionKind::ALL {
            let s = enumerate_condition_partitions(kind, 18).unwrap();
            for n in 0..=18 {
                assert_eq!(s.coeff(n), &BigInt::from(brute(kind, n)), "{kind} n = {n}");
            }
        }
    }

    #[test]
    fn empty_partition() {
        let s = enumerate_condition_partitions(ConditionKind::Kr1, 0).unwrap();
        assert_eq!(s, QSeriesTrunc::one(0));
    }

    #[test]
    fn restricted_variant_is_termwise_smaller() {
        let a = enumerate_condition_partitions(ConditionKind::Kr1, 40).unwrap();
        let b = enumerate_condition_partitions(ConditionKind::Kr2, 40).unwrap();
        for n in 0..=40 {
            assert!(b.coeff(n) <= a.coeff(n));
        }
    }

    #[test]
    fn capparelli_small_cases() {
        // n = 6: 6, 2+4 (sum 6, difference 2); n = 9: 9, 2+7, 3+6
        let s = enumerate_condition_partitions(ConditionKind::Cap1, 9).unwrap();
        assert_eq!(s.coeff(6), &BigInt::from(2));
        assert_eq!(s.coeff(9), &BigInt::from(3));
        assert!(ConditionKind::Cap1.admits(0, 3, 6));
        assert!(!ConditionKind::Cap1.admits(0, 4, 7));
        assert!(!ConditionKind::Cap1.admits(0, 3, 5)); // difference 2, sum 8
        assert!(ConditionKind::Cap1.admits(0, 2, 4));
        assert!(!ConditionKind::Cap1.admits(0, 0, 1));
    }

    #[test]
    fn kr_rules() {
        assert!(ConditionKind::Kr1.admits(0, 1, 2)); // 1+2 ≡ 0
        assert!(!ConditionKind::Kr1.admits(0, 1, 1)); // 1+1 ≡ 2
        assert!(!ConditionKind::Kr1.admits(1, 2, 3)); // λ3 − λ1 = 2
        assert!(!ConditionKind::Kr5.admits(0, 1, 1)); // 1+1 ≡ 2, Condition(1) needs 1
        assert!(ConditionKind::Kr4.admits(0, 1, 1));
        assert!(!ConditionKind::Kr5.admits(0, 2, 2));
    }

    #[test]
    fn order_limit_and_names() {
        assert!(enumerate_condition_partitions(ConditionKind::Cap1, 81).is_err());
        assert_eq!("kr-4".parse::<ConditionKind>().unwrap(), ConditionKind::Kr4);
        assert!("kr-6".parse::<ConditionKind>().is_err());
    }
}
