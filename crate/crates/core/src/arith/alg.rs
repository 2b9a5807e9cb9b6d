//! Fast arithmetic in `(Z/m)[t]/F(t)` for a monic integer `F` with small coefficients.
//!
//! Products go through Kronecker substitution; reduction by `F` uses only
//! multiplications by the (small) coefficients of `F`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::kron::{mul_unsigned, pack, slot_words, unpack};
use super::poly::ZPoly;
use super::trace::power_sums;
use super::ring::IntegersMod;
use crate::error::{Error, Result};

/// Element of a [`ModAlgebra`]: `deg F` coefficients, each in `[0, m)`.
pub type AlgElem = Vec<BigUint>;

#[derive(Clone, Debug)]
pub struct ModAlgebra {
    f: ZPoly,
    m: BigUint,
    mi: BigInt,
    n: usize,
    sums: Vec<BigUint>,
    /// Low coefficients of `F` as machine words, when they fit.
    small: Option<Vec<i64>>,
}

impl ModAlgebra {
    pub fn new(f: &ZPoly, m: &BigInt) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.degree().unwrap();
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let r = IntegersMod::new(m.clone())?;
        let sums = power_sums(&f.reduce_mod(&r), n)?
            .into_iter()
            .map(|s| s.to_biguint().unwrap())
            .collect();
        let mu_m = m.to_biguint().unwrap();
        let small = f.coeffs()[..n].iter().map(|c| c.to_i64()).collect();
        Ok(ModAlgebra { f: f.clone(), m: mu_m, mi: m.clone(), n, sums, small })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.m
    }
    pub fn poly(&self) -> &ZPoly {
        &self.f
    }
    pub fn degree(&self) -> usize {
        self.n
    }
    pub fn zero(&self) -> AlgElem {
        vec![BigUint::zero(); self.n]
    }
    pub fn one(&self) -> AlgElem {
        self.constant(&BigInt::one())
    }
    pub fn constant(&self, c: &BigInt) -> AlgElem {
        let mut v = self.zero();
        v[0] = self.reduce_int(c);
        v
    }
    pub fn gen(&self) -> AlgElem {
        self.from_poly(&ZPoly::from_ints(&[0, 1]))
    }

    pub fn reduce_int(&self, c: &BigInt) -> BigUint {
        c.mod_floor(&self.mi).to_biguint().unwrap()
    }

    /// Reduces an integer polynomial into the algebra.
    pub fn from_poly(&self, g: &ZPoly) -> AlgElem {
        let c: Vec<BigInt> = g.coeffs().iter().map(|c| c.mod_floor(&self.mi)).collect();
        self.reduce_wide(c)
    }

    pub fn to_poly(&self, a: &AlgElem) -> ZPoly {
        ZPoly::from_bigints(a.iter().map(|c| BigInt::from(c.clone())).collect())
    }

    fn reduce_signed(&self, x: &BigInt) -> BigUint {
        x.mod_floor(&self.mi).to_biguint().unwrap()
    }

    /// Reduces a vector of integers (any length, any sign) modulo `(F, m)`.
    fn reduce_wide(&self, mut c: Vec<BigInt>) -> AlgElem {
        let n = self.n;
        let f = self.f.coeffs();
        for i in (n..c.len()).rev() {
            // tops are reduced only once they outgrow a product of two residues by a margin
            let mut top = std::mem::take(&mut c[i]);
            if top.bits() > 2 * self.m.bits() + 1024 {
                top = top.mod_floor(&self.mi);
            }
            if top.is_zero() {
                continue;
            }
            match &self.small {
                Some(fs) => {
                    for (j, &fj) in fs.iter().enumerate() {
                        if fj != 0 {
                            c[i - n + j] -= &top * fj;
                        }
                    }
                }
                None => {
                    for (j, fj) in f[..n].iter().enumerate() {
                        if !fj.is_zero() {
                            c[i - n + j] -= &top * fj;
                        }
                    }
                }
            }
        }
        c.resize(n, BigInt::zero());
        c.iter().map(|x| self.reduce_signed(x)).collect()
    }

    fn reduce_product(&self, c: Vec<BigUint>) -> AlgElem {
        self.reduce_wide(c.into_iter().map(|x| BigInt::from_biguint(Sign::Plus, x)).collect())
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.m {
                    s - &self.m
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn add_assign(&self, a: &mut AlgElem, b: &AlgElem) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
            if *x >= self.m {
                *x -= &self.m;
            }
        }
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a.iter().zip(b).map(|(x, y)| if x >= y { x - y } else { x + &self.m - y }).collect()
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        a.iter().map(|x| if x.is_zero() { x.clone() } else { &self.m - x }).collect()
    }

    pub fn scale(&self, a: &AlgElem, c: &BigUint) -> AlgElem {
        a.iter().map(|x| (x * c) % &self.m).collect()
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.reduce_product(mul_unsigned(a, b))
    }

    pub fn sqr(&self, a: &AlgElem) -> AlgElem {
        self.reduce_product(mul_unsigned(a, a))
    }

    /// `t * a`.
    pub fn mul_gen(&self, a: &AlgElem) -> AlgElem {
        let mut c: Vec<BigInt> = Vec::with_capacity(self.n + 1);
        c.push(BigInt::zero());
        c.extend(a.iter().map(|x| BigInt::from_biguint(Sign::Plus, x.clone())));
        self.reduce_wide(c)
    }

    pub fn pow(&self, a: &AlgElem, e: &BigUint) -> AlgElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.sqr(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// `t^e`, multiplying by the generator with a shift.
    pub fn pow_gen(&self, e: &BigUint) -> AlgElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.sqr(&acc);
            if e.bit(i) {
                acc = self.mul_gen(&acc);
            }
        }
        acc
    }

    /// Trace of multiplication by `a`.
    pub fn trace(&self, a: &AlgElem) -> BigUint {
        let mut acc = BigUint::zero();
        for (x, s) in a.iter().zip(&self.sums) {
            acc += x * s;
        }
        acc % &self.m
    }

    /// `g(s)` for an integer polynomial `g` and an algebra element `s`.
    pub fn eval_poly(&self, g: &ZPoly, s: &AlgElem) -> AlgElem {
        let mut acc = self.zero();
        for c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, s);
            acc[0] = (&acc[0] + self.reduce_int(c)) % &self.m;
        }
        acc
    }

    /// `g(s)` where `g` is itself an algebra element read as a polynomial in `t`.
    pub fn compose(&self, g: &AlgElem, s: &AlgElem) -> AlgElem {
        let mut acc = self.zero();
        for c in g.iter().rev() {
            acc = self.mul(&acc, s);
            acc[0] = (&acc[0] + c) % &self.m;
        }
        acc
    }

    /// Slot width (in 32-bit words) for packed dot products of up to `terms` products.
    pub fn dot_words(&self, terms: usize) -> usize {
        let b = self.m.bits();
        let extra = 64 - ((terms.max(1) * self.n) as u64).leading_zeros() as u64;
        slot_words(2 * b + extra + 1)
    }

    /// Kronecker image of an element with the given slot width.
    pub fn pack(&self, a: &AlgElem, words: usize) -> BigUint {
        pack(&a.iter().collect::<Vec<_>>(), words)
    }

    /// Reduces an accumulated sum of packed products back into the algebra.
    pub fn unpack_reduce(&self, x: &BigUint, words: usize) -> AlgElem {
        self.reduce_product(unpack(x, words, 2 * self.n - 1))
    }

    /// Same algebra with the coefficient modulus replaced; elements must be reduced explicitly.
    pub fn with_modulus(&self, m: &BigInt) -> Result<Self> {
        ModAlgebra::new(&self.f, m)
    }

    /// Reduces an element of an algebra over a multiple of this modulus.
    pub fn coerce(&self, a: &AlgElem) -> AlgElem {
        a.iter().map(|x| x % &self.m).collect()
    }
}

/// `g^e mod (F, m)` by square-and-multiply in the quotient algebra.
pub fn powmod_double(g: &ZPoly, e: &BigUint, f: &ZPoly, m: &BigInt) -> Result<ZPoly> {
    let alg = ModAlgebra::new(f, m)?;
    let a = alg.from_poly(g);
    Ok(alg.to_poly(&alg.pow(&a, e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::Ring;
    use proptest::prelude::*;

    #[test]
    fn worked_powers() {
        let f = ZPoly::from_ints(&[1, 0, 1]);
        let x = ZPoly::from_ints(&[0, 1]);
        assert_eq!(powmod_double(&x, &BigUint::from(4u32), &f, &BigInt::from(5)).unwrap(), ZPoly::from_ints(&[1]));
        assert_eq!(powmod_double(&x, &BigUint::from(3u32), &f, &BigInt::from(3)).unwrap(), ZPoly::from_ints(&[0, 2]));
        let g = ZPoly::from_ints(&[3, 4]);
        assert_eq!(powmod_double(&g, &BigUint::zero(), &f, &BigInt::from(7)).unwrap(), ZPoly::from_ints(&[1]));
    }

    #[test]
    fn trace_worked() {
        let alg = ModAlgebra::new(&ZPoly::from_ints(&[2, -3, 1]), &BigInt::from(7)).unwrap();
        assert_eq!(alg.trace(&alg.gen()), BigUint::from(3u32));
        assert_eq!(alg.trace(&alg.one()), BigUint::from(2u32));
    }

    proptest! {
        #[test]
        fn matches_generic_quotient(
            f in prop::collection::vec(-50i64..50, 1..7),
            a in prop::collection::vec(-1000i64..1000, 1..7),
            b in prop::collection::vec(-1000i64..1000, 1..7),
            e in 0u32..200,
        ) {
            let mut fc = f.clone();
            fc.push(1);
            let fz = ZPoly::from_ints(&fc);
            let m = BigInt::from(1_000_003i64 * 97);
            let alg = ModAlgebra::new(&fz, &m).unwrap();
            let r = IntegersMod::new(m.clone()).unwrap();
            let fm = fz.reduce_mod(&r);
            let pa = ZPoly::from_ints(&a).reduce_mod(&r).rem(&fm).unwrap();
            let pb = ZPoly::from_ints(&b).reduce_mod(&r).rem(&fm).unwrap();
            let ea = alg.from_poly(&ZPoly::from_ints(&a));
            let eb = alg.from_poly(&ZPoly::from_ints(&b));
            let prod = (&pa * &pb).rem(&fm).unwrap();
            prop_assert_eq!(alg.to_poly(&alg.mul(&ea, &eb)).reduce_mod(&r), prod);
            let pw = pa.powmod(&BigUint::from(e), &fm).unwrap();
            prop_assert_eq!(alg.to_poly(&alg.pow(&ea, &BigUint::from(e))).reduce_mod(&r), pw);
            let xe = Poly::x(r.clone()).powmod(&BigUint::from(e), &fm).unwrap();
            prop_assert_eq!(alg.to_poly(&alg.pow_gen(&BigUint::from(e))).reduce_mod(&r), xe);
            let comp = pa.compose(&pb).rem(&fm).unwrap();
            prop_assert_eq!(alg.to_poly(&alg.compose(&ea, &eb)).reduce_mod(&r), comp);
            let w = alg.dot_words(2);
            let acc = alg.pack(&ea, w) * alg.pack(&eb, w) + alg.pack(&eb, w) * alg.pack(&eb, w);
            let dot = alg.add(&alg.mul(&ea, &eb), &alg.sqr(&eb));
            prop_assert_eq!(alg.unpack_reduce(&acc, w), dot);
            let _ = r.one();
        }
    }
}
