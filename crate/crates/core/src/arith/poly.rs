use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{Integers, IntegersMod, Ring, Zmod64};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

pub type ZPoly = Poly<Integers>;

/// Operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic on two polynomials.
pub fn poly_arith<R: Ring>(op: PolyOp, a: &Poly<R>, b: &Poly<R>) -> Result<Poly<R>> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        PolyOp::Add => a.add_raw(b),
        PolyOp::Sub => a.sub_raw(b),
        PolyOp::Mul => a.mul_raw(b),
    })
}

impl<R: Ring> Poly<R> {
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Poly { ring, coeffs }
    }
    pub fn zero(ring: R) -> Self {
        Poly { ring, coeffs: Vec::new() }
    }
    pub fn one(ring: R) -> Self {
        let c = ring.one();
        Poly::new(ring, vec![c])
    }
    pub fn constant(ring: R, c: R::Elem) -> Self {
        Poly::new(ring, vec![c])
    }
    pub fn x(ring: R) -> Self {
        Self::monomial(ring, 1)
    }
    pub fn monomial(ring: R, k: usize) -> Self {
        let mut v = vec![ring.zero(); k + 1];
        v[k] = ring.one();
        Poly::new(ring, v)
    }
    pub fn from_i64s(ring: R, c: &[i64]) -> Self {
        let v = c.iter().map(|&x| ring.from_i64(x)).collect();
        Poly::new(ring, v)
    }
    pub fn ring(&self) -> &R {
        &self.ring
    }
    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }
    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn lc(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }
    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.ring.zero())
    }
    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.ring.is_one(c))
    }

    fn add_raw(&self, b: &Self) -> Self {
        let r = &self.ring;
        let n = self.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => r.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(r.clone(), v)
    }
    fn sub_raw(&self, b: &Self) -> Self {
        self.add_raw(&b.neg_raw())
    }
    fn neg_raw(&self) -> Self {
        let v = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Poly { ring: self.ring.clone(), coeffs: v }
    }
    fn mul_raw(&self, b: &Self) -> Self {
        let r = &self.ring;
        if self.is_zero() || b.is_zero() {
            return Poly::zero(r.clone());
        }
        let mut v = vec![r.zero(); self.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = r.mul(x, y);
                v[i + j] = r.add(&v[i + j], &t);
            }
        }
        Poly::new(r.clone(), v)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let v = self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect();
        Poly::new(self.ring.clone(), v)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.ring.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(self.ring.clone(), v)
    }

    pub fn derivative(&self) -> Self {
        let r = &self.ring;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| r.mul(c, &r.from_i64(i as i64)))
            .collect();
        Poly::new(r.clone(), v)
    }

    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for c in self.coeffs.iter().rev() {
            acc = r.add(&r.mul(&acc, x), c);
        }
        acc
    }

    /// Euclidean division; requires an invertible leading coefficient of `b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self)> {
        if self.ring != b.ring {
            return Err(Error::RingMismatch);
        }
        let r = &self.ring;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv = r.inv(b.lc().unwrap()).ok_or(Error::NonUnitLeading)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(r.clone()), self.clone()));
        }
        let mut q = vec![r.zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = r.mul(&rem[i], &inv);
            if r.is_zero(&c) {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = r.mul(&c, bc);
                rem[i - db + j] = r.sub(&rem[i - db + j], &t);
            }
            q[i - db] = c;
        }
        rem.truncate(db);
        Ok((Poly::new(r.clone(), q), Poly::new(r.clone(), rem)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divrem(b)?.1)
    }

    pub fn monic(&self) -> Result<Self> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial)?;
        let inv = self.ring.inv(lc).ok_or(Error::NonUnitLeading)?;
        Ok(self.scale(&inv))
    }

    /// Monic gcd over a field.
    pub fn gcd(&self, b: &Self) -> Result<Self> {
        if self.ring != b.ring {
            return Err(Error::RingMismatch);
        }
        let (mut a, mut b) = (self.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic()
        }
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic (or zero).
    pub fn xgcd(&self, b: &Self) -> Result<(Self, Self, Self)> {
        if self.ring != b.ring {
            return Err(Error::RingMismatch);
        }
        let ring = self.ring.clone();
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(ring.clone()), Poly::zero(ring.clone()));
        let (mut t0, mut t1) = (Poly::zero(ring.clone()), Poly::one(ring.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = ring.inv(r0.lc().unwrap()).ok_or(Error::NonUnitLeading)?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// `self^e mod m` by square-and-multiply.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self> {
        let base = self.rem(m)?;
        let mut acc = Poly::one(self.ring.clone()).rem(m)?;
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = (&acc * &acc).rem(m)?;
            if e.bit(i) {
                acc = (&acc * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Composition `self(g)`.
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(self.ring.clone());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Poly::constant(self.ring.clone(), c.clone());
        }
        acc
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let v = self.coeffs.iter().map(f).collect();
        Poly::new(ring, v)
    }

    /// Squarefree test over a field via `gcd(f, f')`.
    pub fn is_squarefree(&self) -> Result<bool> {
        let d = self.derivative();
        if d.is_zero() {
            return Ok(self.degree() == Some(0));
        }
        Ok(self.gcd(&d)?.degree() == Some(0))
    }
}

impl<'a, R: Ring> Add for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, b: Self) -> Poly<R> {
        poly_arith(PolyOp::Add, self, b).expect("ring mismatch")
    }
}
impl<'a, R: Ring> Sub for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, b: Self) -> Poly<R> {
        poly_arith(PolyOp::Sub, self, b).expect("ring mismatch")
    }
}
impl<'a, R: Ring> Mul for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, b: Self) -> Poly<R> {
        poly_arith(PolyOp::Mul, self, b).expect("ring mismatch")
    }
}
impl<'a, R: Ring> Neg for &'a Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.neg_raw()
    }
}

impl ZPoly {
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_i64s(Integers, c)
    }
    pub fn from_bigints(c: Vec<BigInt>) -> Self {
        Poly::new(Integers, c)
    }

    /// Gcd of the coefficients, signed so the primitive part has positive leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if self.lc().is_some_and(|c| c.is_negative()) {
            -g
        } else {
            g
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.div_exact_scalar(&c)
    }

    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        ZPoly::from_bigints(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn reduce_mod(&self, m: &IntegersMod) -> Poly<IntegersMod> {
        self.map(m.clone(), |c| m.reduce(c))
    }

    pub fn reduce_mod64(&self, f: Zmod64) -> Poly<Zmod64> {
        let m = BigInt::from(f.modulus());
        self.map(f, |c| c.mod_floor(&m).to_u64().unwrap())
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lc = b.lc().unwrap().clone();
        let mut r = self.clone();
        let Some(da) = r.degree() else { return Ok(r) };
        if da < db {
            return Ok(r);
        }
        let mut steps = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.lc().unwrap().clone();
            r = &r.scale(&lc) - &b.scale(&c).shift(dr - db);
            steps -= 1;
        }
        if steps > 0 {
            r = r.scale(&num_traits::pow(lc, steps));
        }
        Ok(r)
    }

    /// Exact division over Z; `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Result<Option<Self>> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lc = b.lc().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.is_empty() {
            return Ok(Some(self.clone()));
        }
        if rem.len() <= db {
            return Ok(None);
        }
        let mut q = vec![BigInt::zero(); rem.len() - db];
        for i in (db..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (c, r) = rem[i].div_rem(lc);
            if !r.is_zero() {
                return Ok(None);
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                rem[i - db + j] -= &c * bc;
            }
            q[i - db] = c;
        }
        if rem[..db].iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Ok(Some(ZPoly::from_bigints(q)))
    }

    /// Gcd over Z by the primitive Euclidean algorithm; positive leading coefficient.
    pub fn gcd_z(&self, b: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(b.primitive_part());
        }
        if b.is_zero() {
            return Ok(self.primitive_part());
        }
        let cont = self.content().abs().gcd(&b.content().abs());
        let (mut a, mut c) = (self.primitive_part(), b.primitive_part());
        if a.degree() < c.degree() {
            std::mem::swap(&mut a, &mut c);
        }
        while !c.is_zero() {
            let r = a.pseudo_rem(&c)?;
            a = c;
            c = if r.is_zero() { r } else { r.primitive_part() };
        }
        Ok(a.primitive_part().scale(&cont))
    }

    /// Evaluates at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.eval(x)
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

/// Evaluates `f` over the rationals at `x`.
pub fn eval_rational(f: &ZPoly, x: &num_rational::BigRational) -> num_rational::BigRational {
    let mut acc = num_rational::BigRational::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc * x + num_rational::BigRational::from_integer(c.clone());
    }
    acc
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show = !a.is_one() || i == 0;
            if show {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Parses `x^3+x`, `2x^2 - 3`, or a comma separated ascending coefficient list `0,1,0,1`.
pub fn parse_zpoly(s: &str) -> Result<ZPoly> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::parse(0, format!("polynomial `{s}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if !t.contains('x') {
        let v: std::result::Result<Vec<BigInt>, _> = t.split(',').map(|c| c.parse::<BigInt>()).collect();
        return Ok(ZPoly::from_bigints(v.map_err(|_| bad())?));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in t.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b.to_string()),
            None => (1, term.trim_start_matches('+').to_string()),
        };
        let (coef, exp) = match body.find('x') {
            None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let cs = body[..pos].trim_end_matches('*');
                let c = if cs.is_empty() { BigInt::one() } else { cs.parse().map_err(|_| bad())? };
                let rest = &body[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += coef * sign;
    }
    Ok(ZPoly::from_bigints(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_and_remainder() {
        let a = ZPoly::from_ints(&[-1, 0, 0, 1]);
        let b = ZPoly::from_ints(&[-1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, ZPoly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ZPoly::from_ints(&[1, 1]).reduce_mod64(Zmod64::new(5).unwrap());
        let b = ZPoly::from_ints(&[1, 1]).reduce_mod64(Zmod64::new(7).unwrap());
        assert_eq!(poly_arith(PolyOp::Add, &a, &b), Err(Error::RingMismatch));
        assert_eq!(a.divrem(&Poly::zero(*a.ring())).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_over_fp_and_z() {
        let f5 = Zmod64::new(5).unwrap();
        let a = ZPoly::from_ints(&[-1, 0, 1]).reduce_mod64(f5);
        let b = ZPoly::from_ints(&[1, 2, 1]).reduce_mod64(f5);
        assert_eq!(a.gcd(&b).unwrap(), ZPoly::from_ints(&[1, 1]).reduce_mod64(f5));
        let a = ZPoly::from_ints(&[-2, 0, 2]);
        let b = ZPoly::from_ints(&[2, 4, 2]);
        assert_eq!(a.gcd_z(&b).unwrap(), ZPoly::from_ints(&[2, 2]));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = ZPoly::from_ints(&[-3, 0, 2, 1, -1]);
        assert_eq!(f.to_string(), "-x^4 + x^3 + 2x^2 - 3");
        assert_eq!(parse_zpoly(&f.to_string()).unwrap(), f);
        assert_eq!(parse_zpoly("x^3+x").unwrap(), ZPoly::from_ints(&[0, 1, 0, 1]));
        assert_eq!(parse_zpoly("0,0,1").unwrap(), ZPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = ZPoly::from_ints(&[1, 2, 3, 4, 5]);
        let b = ZPoly::from_ints(&[7, 0, 3]);
        let r = a.pseudo_rem(&b).unwrap();
        let scaled = a.scale(&BigInt::from(27));
        let rem = Poly::new(crate::arith::ring::Rationals, scaled.coeffs().iter().map(|c| c.clone().into()).collect())
            .divrem(&Poly::new(crate::arith::ring::Rationals, b.coeffs().iter().map(|c| c.clone().into()).collect()))
            .unwrap()
            .1;
        let back: Vec<BigInt> = rem.coeffs().iter().map(|c| c.to_integer()).collect();
        assert_eq!(r, ZPoly::from_bigints(back));
    }
}
