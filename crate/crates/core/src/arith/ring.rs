use std::fmt::Debug;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::int::{is_probable_prime, is_prime_u64, modinv_u64};
use crate::error::{Error, Result};

/// A commutative ring with explicit context, so that moduli travel with the values.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Multiplicative inverse when `a` is a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_field(&self) -> bool;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn is_field(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_field(&self) -> bool {
        true
    }
}

/// Z/mZ for an arbitrary positive modulus; elements are kept in `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    m: Arc<BigInt>,
    prime: bool,
}

impl IntegersMod {
    pub fn new(m: BigInt) -> Result<Self> {
        if m <= BigInt::one() {
            return Err(Error::BadModulus(m.to_string()));
        }
        let prime = is_probable_prime(&m);
        Ok(IntegersMod { m: Arc::new(m), prime })
    }
    pub fn modulus(&self) -> &BigInt {
        &self.m
    }
    pub fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.m)
    }
    /// Representative in `(-m/2, m/2]`.
    pub fn symmetric(&self, a: &BigInt) -> BigInt {
        let r = a.mod_floor(&self.m);
        if &r + &r > *self.m {
            r - &*self.m
        } else {
            r
        }
    }
}

impl Ring for IntegersMod {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= *self.m {
            s - &*self.m
        } else {
            s
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s.is_negative() {
            s + &*self.m
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            a.clone()
        } else {
            &*self.m - a
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &*self.m
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        let e = a.extended_gcd(&self.m);
        if e.gcd.is_one() {
            Some(e.x.mod_floor(&self.m))
        } else {
            None
        }
    }
    fn is_field(&self) -> bool {
        self.prime
    }
}

/// Z/mZ for a word-sized modulus `m < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zmod64 {
    m: u64,
    prime: bool,
}

impl Zmod64 {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 || m >= 1 << 63 {
            return Err(Error::BadModulus(m.to_string()));
        }
        Ok(Zmod64 { m, prime: is_prime_u64(m) })
    }
    pub fn modulus(&self) -> u64 {
        self.m
    }
    #[inline]
    pub fn mulmod(&self, a: u64, b: u64) -> u64 {
        if self.m < 1 << 32 {
            a * b % self.m
        } else {
            ((a as u128 * b as u128) % self.m as u128) as u64
        }
    }
    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.m as i64) as u64
    }
    pub fn symmetric(&self, a: u64) -> i64 {
        if a > self.m / 2 {
            a as i64 - self.m as i64
        } else {
            a as i64
        }
    }
    pub fn powmod(&self, a: u64, mut e: u64) -> u64 {
        let mut b = a % self.m;
        let mut acc = 1 % self.m;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, b);
            }
            b = self.mulmod(b, b);
            e >>= 1;
        }
        acc
    }
}

impl Ring for Zmod64 {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.m)).to_u64().expect("reduced")
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        modinv_u64(*a, self.m)
    }
    fn is_field(&self) -> bool {
        self.prime
    }
}

/// R[t]/(f) for a monic `f` of degree at least one; elements are coefficient vectors of length `deg f`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing<R: Ring> {
    base: R,
    /// Monic modulus, ascending, including the leading one.
    modulus: Arc<Vec<R::Elem>>,
}

impl<R: Ring> QuotientRing<R> {
    pub fn new(base: R, modulus: Vec<R::Elem>) -> Result<Self> {
        let mut m = modulus;
        while m.last().is_some_and(|c| base.is_zero(c)) {
            m.pop();
        }
        match m.last() {
            None => return Err(Error::ZeroPolynomial),
            Some(c) if !base.is_one(c) => return Err(Error::NotMonic),
            _ => {}
        }
        if m.len() < 2 {
            return Err(Error::ConstantPolynomial);
        }
        Ok(QuotientRing { base, modulus: Arc::new(m) })
    }
    pub fn base(&self) -> &R {
        &self.base
    }
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
    pub fn modulus(&self) -> &[R::Elem] {
        &self.modulus
    }
    pub fn gen(&self) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        if self.degree() == 1 {
            v[0] = self.base.neg(&self.modulus[0]);
        } else {
            v[1] = self.base.one();
        }
        v
    }
    /// Reduces an arbitrary coefficient vector modulo the defining polynomial.
    pub fn reduce(&self, mut c: Vec<R::Elem>) -> Vec<R::Elem> {
        let n = self.degree();
        let b = &self.base;
        for i in (n..c.len()).rev() {
            let top = std::mem::replace(&mut c[i], b.zero());
            if b.is_zero(&top) {
                continue;
            }
            for j in 0..n {
                let t = b.mul(&top, &self.modulus[j]);
                c[i - n + j] = b.sub(&c[i - n + j], &t);
            }
        }
        c.resize(n, b.zero());
        c
    }
}

impl<R: Ring> Ring for QuotientRing<R> {
    type Elem = Vec<R::Elem>;
    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.one();
        v
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.base.from_int(n);
        v
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = self.degree();
        let bs = &self.base;
        let mut c = vec![bs.zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if bs.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = bs.mul(x, y);
                c[i + j] = bs.add(&c[i + j], &t);
            }
        }
        self.reduce(c)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if !self.base.is_field() {
            return None;
        }
        let f = super::poly::Poly::new(self.base.clone(), self.modulus.to_vec());
        let g = super::poly::Poly::new(self.base.clone(), a.clone());
        let (d, s, _) = g.xgcd(&f).ok()?;
        if d.degree() != Some(0) {
            return None;
        }
        let c = self.base.inv(&d.coeffs()[0])?;
        let mut out = s.scale(&c).coeffs().to_vec();
        out.resize(self.degree(), self.base.zero());
        Some(out)
    }
    fn is_field(&self) -> bool {
        false
    }
}


