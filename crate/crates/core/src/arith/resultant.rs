//! Resultants and discriminants over Z.
//!
//! The main path is multi-modular: resultants modulo word-sized primes,
//! combined by CRT past the Hadamard bound. A subresultant PRS over Z is
//! kept as an independent cross-check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int::{crt, is_prime_u64, symmetric_mod};
use super::poly::{Poly, ZPoly};
use super::ring::{Ring, Zmod64};
use crate::error::{Error, Result};

/// log2 of |n|, accurate to a few ulps for huge values.
pub fn log2_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return n.abs().to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

fn log2_norm2(f: &ZPoly) -> f64 {
    let s: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    log2_abs(&s) / 2.0
}

/// Resultant over a field by the Euclidean remainder sequence.
pub fn resultant_field<R: Ring>(a: &Poly<R>, b: &Poly<R>) -> Result<R::Elem> {
    let ring = a.ring().clone();
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = ring.one();
    loop {
        let da = a.degree().ok_or(Error::ZeroPolynomial)?;
        let db = match b.degree() {
            Some(d) => d,
            None => return Ok(ring.zero()),
        };
        if db == 0 {
            return Ok(ring.mul(&acc, &ring.pow(b.lc().unwrap(), da as u64)));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(ring.zero());
        }
        if (da * db) % 2 == 1 {
            acc = ring.neg(&acc);
        }
        let dr = r.degree().unwrap();
        acc = ring.mul(&acc, &ring.pow(b.lc().unwrap(), (da - dr) as u64));
        a = b;
        b = r;
    }
}

/// Word-sized primes below 2^62, descending.
pub(crate) fn big_word_primes() -> impl Iterator<Item = u64> {
    let mut c = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime_u64(c) {
            c -= 2;
        }
        let p = c;
        c -= 2;
        Some(p)
    })
}

/// Res(a, b) over Z.
pub fn resultant(a: &ZPoly, b: &ZPoly) -> Result<BigInt> {
    let da = a.degree().ok_or(Error::ZeroPolynomial)?;
    let db = b.degree().ok_or(Error::ZeroPolynomial)?;
    if da == 0 {
        return Ok(num_traits::pow(a.coeffs()[0].clone(), db));
    }
    if db == 0 {
        return Ok(num_traits::pow(b.coeffs()[0].clone(), da));
    }
    let bound_bits = db as f64 * log2_norm2(a) + da as f64 * log2_norm2(b) + 2.0;
    let lcs = a.lc().unwrap() * b.lc().unwrap();
    let mut residues = Vec::new();
    let mut moduli = Vec::new();
    let mut bits = 0.0;
    for p in big_word_primes() {
        if (&lcs % p).is_zero() {
            continue;
        }
        let f = Zmod64::new(p)?;
        let r = resultant_field(&a.reduce_mod64(f), &b.reduce_mod64(f))?;
        residues.push(BigInt::from(r));
        moduli.push(BigInt::from(p));
        bits += (p as f64).log2();
        if bits > bound_bits {
            break;
        }
    }
    let (x, m) = crt(&residues, &moduli)?;
    Ok(symmetric_mod(&x, &m))
}

/// Res(a, b) by the subresultant PRS over Z.
pub fn resultant_subresultant(a: &ZPoly, b: &ZPoly) -> Result<BigInt> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
    }
    if b.degree() == Some(0) {
        return Ok(s * num_traits::pow(b.coeffs()[0].clone(), a.degree().unwrap()));
    }
    let ca = a.content().abs();
    let cb = b.content().abs();
    let t = num_traits::pow(ca.clone(), b.degree().unwrap()) * num_traits::pow(cb.clone(), a.degree().unwrap());
    a = a.div_exact_scalar(&ca);
    b = b.div_exact_scalar(&cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b)?;
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let div = &g * num_traits::pow(h.clone(), delta);
        b = r.div_exact_scalar(&div);
        g = a.lc().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
        };
        if b.degree() == Some(0) {
            let da = a.degree().unwrap();
            let lb = b.coeffs()[0].clone();
            let hh = if da == 0 {
                h
            } else {
                num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
            };
            return Ok(s * t * hh);
        }
    }
}

/// disc(F) = (-1)^(n(n-1)/2) Res(F, F') / lc(F).
pub fn discriminant(f: &ZPoly) -> Result<BigInt> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative())?;
    let (q, rem) = r.div_rem(f.lc().unwrap());
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Sylvester determinant by fraction-free elimination.
    fn sylvester(a: &ZPoly, b: &ZPoly) -> BigInt {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in a.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                    Some(i) => {
                        mat.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        sign * prev
    }

    #[test]
    fn worked_values() {
        let f = ZPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(discriminant(&f).unwrap(), BigInt::from(8));
        let g = ZPoly::from_ints(&[1, 1, 1]);
        assert_eq!(discriminant(&g).unwrap(), BigInt::from(-3));
        let cubic = ZPoly::from_ints(&[-1, -1, 0, 1]);
        assert_eq!(discriminant(&cubic).unwrap(), BigInt::from(-23));
        assert_eq!(resultant(&ZPoly::from_ints(&[-1, 1]), &ZPoly::from_ints(&[-2, 1])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn zero_input_is_an_error() {
        assert_eq!(resultant(&ZPoly::zero(crate::arith::Integers), &ZPoly::from_ints(&[1, 1])), Err(Error::ZeroPolynomial));
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = ZPoly> {
        prop::collection::vec(-30i64..30, 2..=max_deg + 1).prop_filter_map("nonconstant", |mut v| {
            if *v.last().unwrap() == 0 {
                *v.last_mut().unwrap() = 1;
            }
            let f = ZPoly::from_ints(&v);
            (f.degree() >= Some(1)).then_some(f)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn three_resultants_agree(a in arb_poly(6), b in arb_poly(6)) {
            let r1 = resultant(&a, &b).unwrap();
            prop_assert_eq!(&r1, &resultant_subresultant(&a, &b).unwrap());
            prop_assert_eq!(&r1, &sylvester(&a, &b));
        }

        #[test]
        fn resultant_is_multiplicative(a in arb_poly(4), b in arb_poly(3), c in arb_poly(3)) {
            let lhs = resultant(&a, &(&b * &c)).unwrap();
            let rhs = resultant(&a, &b).unwrap() * resultant(&a, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn discriminant_of_product(a in arb_poly(3), b in arb_poly(3)) {
            let d = discriminant(&(&a * &b)).unwrap();
            let r = resultant(&a, &b).unwrap();
            let expect = discriminant(&a).unwrap() * discriminant(&b).unwrap() * &r * &r;
            prop_assert_eq!(d, expect);
        }
    }
}
