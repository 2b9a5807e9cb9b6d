//! Polynomial multiplication by Kronecker substitution into a single big integer.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

pub(crate) fn slot_words(bits: u64) -> usize {
    bits.div_ceil(32) as usize
}

pub(crate) fn pack(coeffs: &[&BigUint], words: usize) -> BigUint {
    let mut digits = vec![0u32; coeffs.len() * words];
    for (i, c) in coeffs.iter().enumerate() {
        let d = c.to_u32_digits();
        debug_assert!(d.len() <= words);
        digits[i * words..i * words + d.len()].copy_from_slice(&d);
    }
    BigUint::new(digits)
}

pub(crate) fn unpack(x: &BigUint, words: usize, count: usize) -> Vec<BigUint> {
    let d = x.to_u32_digits();
    (0..count)
        .map(|i| {
            let lo = (i * words).min(d.len());
            let hi = ((i + 1) * words).min(d.len());
            BigUint::from_slice(&d[lo..hi])
        })
        .collect()
}

/// Product of two polynomials with nonnegative coefficients.
pub fn mul_unsigned(a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ba = a.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bb = b.iter().map(|c| c.bits()).max().unwrap_or(0);
    let len = a.len().min(b.len()) as u64;
    let words = slot_words(ba + bb + 64 - len.leading_zeros() as u64 + 1);
    let pa = pack(&a.iter().collect::<Vec<_>>(), words);
    let out = a.len() + b.len() - 1;
    let prod = if std::ptr::eq(a, b) {
        &pa * &pa
    } else {
        &pa * &pack(&b.iter().collect::<Vec<_>>(), words)
    };
    unpack(&prod, words, out)
}

/// Square of a polynomial with nonnegative coefficients.
pub fn sqr_unsigned(a: &[BigUint]) -> Vec<BigUint> {
    mul_unsigned(a, a)
}

fn split_signs(a: &[BigInt]) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut pos = Vec::with_capacity(a.len());
    let mut neg = Vec::with_capacity(a.len());
    for c in a {
        match c.sign() {
            Sign::Minus => {
                pos.push(BigUint::zero());
                neg.push(c.magnitude().clone());
            }
            _ => {
                pos.push(c.magnitude().clone());
                neg.push(BigUint::zero());
            }
        }
    }
    (pos, neg)
}

fn pack_signed(a: &[BigInt], words: usize) -> BigInt {
    let (p, n) = split_signs(a);
    let p = pack(&p.iter().collect::<Vec<_>>(), words);
    let n = pack(&n.iter().collect::<Vec<_>>(), words);
    BigInt::from(p) - BigInt::from(n)
}

/// Product of two integer polynomials with arbitrary signs.
pub fn mul_signed(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let ba = a.iter().map(|c| c.bits()).max().unwrap_or(0);
    let bb = b.iter().map(|c| c.bits()).max().unwrap_or(0);
    let len = a.len().min(b.len()) as u64;
    let words = slot_words(ba + bb + 64 - len.leading_zeros() as u64 + 2);
    let w = words as u64 * 32;
    let out = a.len() + b.len() - 1;
    let pa = pack_signed(a, words);
    let prod = if std::ptr::eq(a, b) { &pa * &pa } else { &pa * &pack_signed(b, words) };
    // shift into the nonnegative range, then read balanced digits
    let q = prod + (BigInt::from(1) << (w * (out as u64 + 1)));
    let raw = unpack(q.magnitude(), words, out);
    let half = BigInt::from(1) << (w - 1);
    let full = BigInt::from(1) << w;
    let mut carry = 0u32;
    raw.into_iter()
        .map(|u| {
            let mut c = BigInt::from(u) + carry;
            if c >= half {
                c -= &full;
                carry = 1;
            } else {
                carry = 0;
            }
            c
        })
        .collect()
}

/// Truncated product keeping the first `len` coefficients.
pub fn mul_signed_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(len)];
    let b = &b[..b.len().min(len)];
    let mut v = mul_signed(a, b);
    v.truncate(len);
    v.resize(len, BigInt::zero());
    v
}

/// Largest coefficient size in bits, used to pick slot widths in callers.
pub fn max_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|c| c.abs().bits()).max().unwrap_or(0)
}
