//! The truncated unramified extension `(Z/p^K)[t]/F(t)` with `F` irreducible mod `p`.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::arith::{AlgElem, ModAlgebra, ZPoly, Zmod64};
use crate::arith::int::symmetric_mod;
use crate::error::{Error, Result};
use crate::factor::finite::{is_irreducible_fp, reduce_checked, x_pow_mod};

#[derive(Clone, Debug)]
pub struct UnramExt {
    p: u64,
    k: u32,
    pk: BigInt,
    alg: ModAlgebra,
}

impl UnramExt {
    /// Checks that `F` is monic, `p` an odd prime, and `F` irreducible mod `p`.
    pub fn new(f: &ZPoly, p: u64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("precision must be at least 1".into()));
        }
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let fp = crate::factor::finite::field(p)?;
        if p == 2 {
            return Err(Error::BadModulus("2".into()));
        }
        let g = reduce_checked(f, fp)?;
        if !is_irreducible_fp(&g)? {
            return Err(Error::ReducibleMod(p.to_string()));
        }
        let pk = num_traits::pow(BigInt::from(p), k as usize);
        let alg = ModAlgebra::new(f, &pk)?;
        Ok(UnramExt { p, k, pk, alg })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn precision(&self) -> u32 {
        self.k
    }
    pub fn modulus(&self) -> &BigInt {
        &self.pk
    }
    pub fn degree(&self) -> usize {
        self.alg.degree()
    }
    pub fn poly(&self) -> &ZPoly {
        self.alg.poly()
    }
    pub fn algebra(&self) -> &ModAlgebra {
        &self.alg
    }

    /// The Frobenius image `sigma(t)`: the root of `F` congruent to `t^p` mod `p`.
    pub fn frobenius_automorphism(&self) -> Result<AlgElem> {
        let f = self.poly();
        let fd = f.derivative();
        let fp = Zmod64::new(self.p)?;
        let fbar = reduce_checked(f, fp)?;
        let seed = x_pow_mod(&BigUint::from(self.p), &fbar)?;
        let d = fd.reduce_mod64(fp).compose(&seed).rem(&fbar)?;
        let (g, s, _) = d.xgcd(&fbar)?;
        if g.degree() != Some(0) {
            return Err(Error::Invalid("F'(t^p) is not invertible mod p".into()));
        }
        let to_z = |v: &crate::factor::finite::FpPoly| ZPoly::from_bigints(v.coeffs().iter().map(|&c| BigInt::from(c)).collect());
        let mut y = to_z(&seed);
        let mut w = to_z(&s);
        let mut prec = 1u32;
        while prec < self.k {
            prec = (2 * prec).min(self.k);
            let m = num_traits::pow(BigInt::from(self.p), prec as usize);
            let alg = self.alg.with_modulus(&m)?;
            let ya = alg.from_poly(&y);
            let wa = alg.from_poly(&w);
            let fy = alg.eval_poly(f, &ya);
            let ya = alg.sub(&ya, &alg.mul(&fy, &wa));
            let dy = alg.eval_poly(&fd, &ya);
            let two = alg.constant(&BigInt::from(2));
            let wa = alg.mul(&wa, &alg.sub(&two, &alg.mul(&dy, &wa)));
            y = alg.to_poly(&ya);
            w = alg.to_poly(&wa);
        }
        Ok(self.alg.from_poly(&y))
    }

    /// Roots `r_j = sigma^j(t)`, `j = 0..n`, on which Frobenius acts as the cycle `(0 1 ... n-1)`.
    pub fn roots_cycle(&self) -> Result<Vec<AlgElem>> {
        let s = self.frobenius_automorphism()?;
        self.roots_from_frobenius(&s)
    }

    pub fn roots_from_frobenius(&self, s: &AlgElem) -> Result<Vec<AlgElem>> {
        let n = self.degree();
        let mut out = Vec::with_capacity(n);
        out.push(self.alg.gen());
        for j in 1..n {
            let next = self.alg.compose(s, &out[j - 1]);
            out.push(next);
        }
        let closing = self.alg.compose(s, &out[n - 1]);
        if closing != out[0] {
            return Err(Error::Invalid("Frobenius orbit of t does not close after deg F steps".into()));
        }
        Ok(out)
    }
}

/// The integer `c = x mod p^K` with `|c| <= B`.
pub fn reconstruct_integer(x: &BigInt, pk: &BigInt, bound: &BigInt) -> Result<BigInt> {
    if bound * 2u32 >= *pk {
        return Err(Error::Invalid("bound too large for the precision".into()));
    }
    let c = symmetric_mod(x, pk);
    if c.abs() > *bound {
        return Err(Error::BoundExceeded { index: 0 });
    }
    Ok(c)
}

/// Elementary symmetric functions `e_0..e_n` of the given algebra elements.
pub fn elementary_symmetric(alg: &ModAlgebra, xs: &[AlgElem]) -> Vec<AlgElem> {
    let mut e = vec![alg.one()];
    for x in xs {
        let mut next = e.clone();
        next.push(alg.zero());
        for i in 1..=e.len() {
            let t = alg.mul(&e[i - 1], x);
            next[i] = alg.add(&next[i], &t);
        }
        e = next;
    }
    e
}

/// Whether an element is a constant (lies in `Z/p^K`).
pub fn is_scalar(a: &AlgElem) -> bool {
    a.iter().skip(1).all(|c| c.is_zero())
}

pub(crate) fn scalar_value(a: &AlgElem) -> BigInt {
    BigInt::from(a[0].clone())
}
