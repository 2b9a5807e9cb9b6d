use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int::{is_probable_prime, primes_below, valuation};

/// Result of splitting an integer as `sign * l^a * M^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareSplit {
    Form { sign: i8, ell_exp: u32, m: BigInt },
    /// Not of that shape; `obstruction` is a prime other than `l` with odd exponent, when found.
    NotForm { obstruction: Option<BigInt> },
}

impl SquareSplit {
    pub fn is_form(&self) -> bool {
        matches!(self, SquareSplit::Form { .. })
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Decides whether a nonzero integer is `±l^a M^2` with `M` an integer.
pub fn square_part_split(n: &BigInt, ell: u64) -> Option<SquareSplit> {
    if n.is_zero() {
        return None;
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let (a, rest) = valuation(&n.abs(), ell);
    let root = rest.sqrt();
    if &root * &root == rest {
        return Some(SquareSplit::Form { sign, ell_exp: a, m: root });
    }
    let mut rest = rest;
    for q in primes_below(TRIAL_LIMIT) {
        if q == ell {
            continue;
        }
        let (v, r) = valuation(&rest, q);
        rest = r;
        if v % 2 == 1 {
            return Some(SquareSplit::NotForm { obstruction: Some(q.into()) });
        }
        if rest.is_one() {
            break;
        }
    }
    let s = rest.sqrt();
    if &s * &s == rest {
        return Some(SquareSplit::NotForm { obstruction: None });
    }
    let below_square_of_limit = rest.to_u128().is_some_and(|r| r < (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128));
    if below_square_of_limit || is_probable_prime(&rest) {
        return Some(SquareSplit::NotForm { obstruction: Some(rest) });
    }
    Some(SquareSplit::NotForm { obstruction: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_splits() {
        assert_eq!(
            square_part_split(&BigInt::from(-11 * 11 * 11 * 4), 11),
            Some(SquareSplit::Form { sign: -1, ell_exp: 3, m: 2.into() })
        );
        assert_eq!(square_part_split(&BigInt::from(12), 11), Some(SquareSplit::NotForm { obstruction: Some(3.into()) }));
        assert_eq!(square_part_split(&BigInt::zero(), 11), None);
        let big = BigInt::from(1_000_003u64) * BigInt::from(11);
        assert_eq!(square_part_split(&big, 11), Some(SquareSplit::NotForm { obstruction: Some(1_000_003.into()) }));
    }
}
