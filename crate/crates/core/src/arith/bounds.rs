//! Upper bounds for the moduli of complex roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::kron::mul_signed;
use super::poly::ZPoly;
use crate::error::{Error, Result};

/// Cauchy's bound `1 + max |a_i / a_n|`.
pub fn cauchy_root_bound(f: &ZPoly) -> Result<BigRational> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let lc = f.lc().unwrap().abs();
    let m = f.coeffs()[..n].iter().map(|c| c.abs()).max().unwrap();
    Ok(BigRational::one() + BigRational::new(m, lc))
}

/// One Graeffe step: the polynomial whose roots are the squares of the roots of `f`.
pub fn graeffe(f: &ZPoly) -> ZPoly {
    let a = f.coeffs();
    let b: Vec<BigInt> = a.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect();
    let prod = mul_signed(a, &b);
    let n = f.degree().unwrap_or(0);
    let sign_flip = n % 2 == 1;
    let v = prod
        .into_iter()
        .step_by(2)
        .map(|c| if sign_flip { -c } else { c })
        .collect();
    ZPoly::from_bigints(v)
}

/// Sign of the Cauchy polynomial `|g_n| x^n - sum_{i<n} |g_i| x^i` at `m / 2^s`.
fn cauchy_poly_positive(g: &ZPoly, m: &BigInt, s: u64) -> bool {
    let n = g.degree().unwrap();
    let mut acc = BigInt::zero();
    let mut pow_m = BigInt::one();
    for (i, c) in g.coeffs().iter().enumerate() {
        let term = c.abs() * &pow_m << (s * (n - i) as u64);
        if i == n {
            acc += term;
        } else {
            acc -= term;
        }
        pow_m *= m;
    }
    acc.is_positive()
}

/// Dyadic upper bound for the positive root of the Cauchy polynomial of `g`.
fn cauchy_poly_root(g: &ZPoly, frac_bits: u64) -> (BigInt, u64) {
    if g.coeffs()[..g.degree().unwrap()].iter().all(|c| c.is_zero()) {
        return (BigInt::zero(), 0);
    }
    let mut hi = BigInt::one() << frac_bits;
    while !cauchy_poly_positive(g, &hi, frac_bits) {
        hi <<= 1;
    }
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if cauchy_poly_positive(g, &mid, frac_bits) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi, frac_bits)
}

/// Rigorous upper bound on `max |root|` by Graeffe root squaring followed by the
/// exact positive root of the Cauchy polynomial; never worse than [`cauchy_root_bound`].
pub fn root_modulus_bound(f: &ZPoly) -> Result<BigRational> {
    const STEPS: u32 = 4;
    const FRAC: u64 = 20;
    let cauchy = cauchy_root_bound(f)?;
    let mut g = f.clone();
    for _ in 0..STEPS {
        g = graeffe(&g);
    }
    let (m, s) = cauchy_poly_root(&g, FRAC);
    if m.is_zero() {
        return Ok(BigRational::zero().max(BigRational::new(BigInt::one(), BigInt::from(1u64 << FRAC))));
    }
    // smallest c / 2^FRAC with c^(2^STEPS) / 2^(FRAC 2^STEPS) >= m / 2^s
    let e = 1usize << STEPS;
    let target = m << (FRAC * e as u64 - s);
    let mut hi = BigInt::one() << FRAC;
    while num_traits::pow(hi.clone(), e) < target {
        hi <<= 1;
    }
    let mut lo = BigInt::zero();
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if num_traits::pow(mid.clone(), e) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let refined = BigRational::new(hi, BigInt::one() << FRAC);
    Ok(refined.min(cauchy))
}

/// Smallest integer not below a nonnegative rational.
pub fn ceil_rational(x: &BigRational) -> BigInt {
    let (q, r) = x.numer().div_mod_floor(x.denom());
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_worked_value() {
        let f = ZPoly::from_ints(&[-6, 11, -6, 1]);
        assert_eq!(cauchy_root_bound(&f).unwrap(), BigRational::from_integer(12.into()));
    }

    #[test]
    fn graeffe_squares_roots() {
        // (x-1)(x-2)(x+3) -> (x-1)(x-4)(x-9)
        let f = &(&ZPoly::from_ints(&[-1, 1]) * &ZPoly::from_ints(&[-2, 1])) * &ZPoly::from_ints(&[3, 1]);
        let g = &(&ZPoly::from_ints(&[-1, 1]) * &ZPoly::from_ints(&[-4, 1])) * &ZPoly::from_ints(&[-9, 1]);
        assert_eq!(graeffe(&f), g);
    }

    #[test]
    fn refined_bound_is_valid_and_tight() {
        let f = ZPoly::from_ints(&[-6, 11, -6, 1]);
        let b = root_modulus_bound(&f).unwrap();
        assert!(b >= BigRational::from_integer(3.into()));
        assert!(b < BigRational::new(7.into(), 2.into()));
        // x^2 + 1 has roots of modulus 1
        let b = root_modulus_bound(&ZPoly::from_ints(&[1, 0, 1])).unwrap();
        assert!(b >= BigRational::one());
        assert!(b < BigRational::new(6.into(), 5.into()));
    }

    #[test]
    fn ceil() {
        assert_eq!(ceil_rational(&BigRational::new(7.into(), 2.into())), BigInt::from(4));
        assert_eq!(ceil_rational(&BigRational::from_integer(3.into())), BigInt::from(3));
    }
}
