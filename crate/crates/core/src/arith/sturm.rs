use num_traits::{Signed, Zero};

use super::poly::ZPoly;
use crate::error::{Error, Result};

/// Sturm chain over Z with sign-preserving pseudo-remainders.
/// The chain ends at gcd(F, F'), so distinct roots are counted.
pub fn sturm_chain(f: &ZPoly) -> Result<Vec<ZPoly>> {
    if f.degree().ok_or(Error::ZeroPolynomial)? == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let mut chain = vec![f.primitive_part(), f.derivative().primitive_part()];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.degree() == Some(0) {
            break;
        }
        let delta = a.degree().unwrap() - b.degree().unwrap();
        let r = a.pseudo_rem(b)?;
        if r.is_zero() {
            break;
        }
        // prem = lc(b)^(delta+1) * rem
        let flip = b.lc().unwrap().is_negative() && delta % 2 == 0;
        let r = r.div_exact_scalar(&r.content().abs());
        let r = if flip { r } else { -&r };
        chain.push(r);
    }
    Ok(chain)
}

fn sign_changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of `f`.
pub fn sturm_count(f: &ZPoly) -> Result<usize> {
    let chain = sturm_chain(f)?;
    let at_pos = chain.iter().map(|p| if p.lc().unwrap().is_positive() { 1 } else { -1 });
    let at_neg = chain.iter().map(|p| {
        let s: i8 = if p.lc().unwrap().is_positive() { 1 } else { -1 };
        if p.degree().unwrap() % 2 == 1 { -s } else { s }
    });
    Ok(sign_changes(at_neg) - sign_changes(at_pos))
}

/// Number of distinct real roots in the half-open interval `(a, b]`, `a < b` integers.
pub fn sturm_count_interval(f: &ZPoly, a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> Result<usize> {
    let chain = sturm_chain(f)?;
    let sig = |x: &num_bigint::BigInt| -> Vec<i8> {
        chain
            .iter()
            .map(|p| {
                let v = p.eval_int(x);
                if v.is_zero() { 0 } else if v.is_positive() { 1 } else { -1 }
            })
            .collect()
    };
    Ok(sign_changes(sig(a).into_iter()) - sign_changes(sig(b).into_iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn worked_counts() {
        assert_eq!(sturm_count(&ZPoly::from_ints(&[-2, 0, 1])).unwrap(), 2);
        assert_eq!(sturm_count(&ZPoly::from_ints(&[1, 0, 1])).unwrap(), 0);
        // (x-1)^2 (x+2)
        let f = &(&ZPoly::from_ints(&[-1, 1]) * &ZPoly::from_ints(&[-1, 1])) * &ZPoly::from_ints(&[2, 1]);
        assert_eq!(sturm_count(&f).unwrap(), 2);
        assert_eq!(sturm_count(&ZPoly::from_ints(&[5])), Err(Error::ConstantPolynomial));
    }

    proptest! {
        #[test]
        fn counts_distinct_integer_roots(roots in prop::collection::vec(-20i64..20, 1..8), pad in 0usize..3) {
            let mut f = ZPoly::from_ints(&[1]);
            for r in &roots {
                f = &f * &ZPoly::from_ints(&[-2 * r, 1]);
            }
            for _ in 0..pad {
                f = &f * &ZPoly::from_ints(&[3, 0, 1]);
            }
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert_eq!(sturm_count(&f).unwrap(), distinct.len());
            let lo = BigInt::from(-41);
            let hi = BigInt::from(1);
            let neg = distinct.iter().filter(|&&r| r <= 0).count();
            prop_assert_eq!(sturm_count_interval(&f, &lo, &hi).unwrap(), neg);
        }
    }
}
