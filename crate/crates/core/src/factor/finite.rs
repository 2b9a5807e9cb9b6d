//! Factorization over prime fields of word size.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{Poly, Ring, ZPoly, Zmod64};
use crate::error::{Error, Result};

pub type FpPoly = Poly<Zmod64>;

/// Default seed for the randomized equal-degree splitting.
pub const DEFAULT_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// Complete factorization modulo p: `F = lc * prod f_i^e_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModFactorization {
    pub lc: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl ModFactorization {
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, e)| std::iter::repeat(f.degree().unwrap()).take(*e))
            .collect();
        v.sort_unstable();
        v
    }
}

pub fn field(p: u64) -> Result<Zmod64> {
    let f = Zmod64::new(p)?;
    if !f.is_field() {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(f)
}

/// Reduces an integer polynomial mod p, rejecting a vanishing leading coefficient.
pub fn reduce_checked(f: &ZPoly, fp: Zmod64) -> Result<FpPoly> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    let g = f.reduce_mod64(fp);
    if g.degree() != Some(deg) {
        return Err(Error::BadModulus(format!("{} divides the leading coefficient", fp.modulus())));
    }
    Ok(g)
}

/// `x^e mod f` by squaring and shifting.
pub fn x_pow_mod(e: &BigUint, f: &FpPoly) -> Result<FpPoly> {
    let mut acc = Poly::one(*f.ring()).rem(f)?;
    for i in (0..e.bits()).rev() {
        acc = (&acc * &acc).rem(f)?;
        if e.bit(i) {
            acc = acc.shift(1).rem(f)?;
        }
    }
    Ok(acc)
}

/// `g^p mod f`.
fn frobenius_power(g: &FpPoly, f: &FpPoly) -> Result<FpPoly> {
    g.powmod(&BigUint::from(f.ring().modulus()), f)
}

fn pth_root(c: &FpPoly) -> FpPoly {
    let p = c.ring().modulus() as usize;
    let v: Vec<u64> = c.coeffs().iter().step_by(p).cloned().collect();
    Poly::new(*c.ring(), v)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with `f = prod g_i^i`.
pub fn squarefree_decomposition(f: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    let mut out = Vec::new();
    let p = f.ring().modulus() as usize;
    let mut c = f.gcd(&f.derivative())?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = w.gcd(&c)?;
        let fac = w.divrem(&y)?.0;
        if fac.degree() != Some(0) {
            out.push((fac, i));
        }
        w = y;
        c = c.divrem(&w)?.0;
        i += 1;
    }
    if c.degree() != Some(0) {
        let root = pth_root(&c);
        for (g, m) in squarefree_decomposition(&root)? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &FpPoly) -> Result<Vec<(FpPoly, usize)>> {
    let ring = *f.ring();
    let x = Poly::x(ring);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut d = 1;
    while rest.degree().unwrap() >= 2 * d {
        h = frobenius_power(&h, &rest)?;
        let g = (&h - &x).gcd(&rest)?;
        if g.degree() != Some(0) {
            rest = rest.divrem(&g)?.0;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap() > 0 {
        let dr = rest.degree().unwrap();
        out.push((rest, dr));
    }
    Ok(out)
}

fn random_poly(ring: Zmod64, deg: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    let p = ring.modulus();
    let v: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    Poly::new(ring, v)
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor-Zassenhaus).
pub fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FpPoly>> {
    let n = f.degree().unwrap();
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let ring = *f.ring();
    let p = ring.modulus();
    let one = Poly::one(ring);
    loop {
        let a = random_poly(ring, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = a.gcd(f)?;
        let cand = if g.degree() != Some(0) {
            g
        } else if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = (&t * &t).rem(f)?;
                acc = &acc + &t;
            }
            acc.gcd(f)?
        } else {
            let e = (num_traits::pow(BigUint::from(p), d) - 1u32) >> 1;
            let b = a.powmod(&e, f)?;
            (&b - &one).gcd(f)?
        };
        let dc = cand.degree().unwrap_or(0);
        if dc > 0 && dc < n {
            let other = f.divrem(&cand)?.0;
            let mut out = equal_degree(&cand, d, rng)?;
            out.extend(equal_degree(&other, d, rng)?);
            return Ok(out);
        }
    }
}

fn sort_factors(v: &mut [(FpPoly, usize)]) {
    v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())).then(a.1.cmp(&b.1)));
}

/// Complete factorization of `f mod p` into monic irreducibles.
pub fn factor_mod_p(f: &ZPoly, p: u64) -> Result<ModFactorization> {
    factor_mod_p_seeded(f, p, DEFAULT_SEED)
}

pub fn factor_mod_p_seeded(f: &ZPoly, p: u64, seed: u64) -> Result<ModFactorization> {
    let fp = field(p)?;
    let g = reduce_checked(f, fp)?;
    let lc = *g.lc().unwrap();
    let g = g.monic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if g.degree() == Some(0) {
        return Ok(ModFactorization { lc, factors: out });
    }
    for (part, mult) in squarefree_decomposition(&g)? {
        for (block, d) in distinct_degree(&part)? {
            for q in equal_degree(&block, d, &mut rng)? {
                out.push((q, mult));
            }
        }
    }
    sort_factors(&mut out);
    Ok(ModFactorization { lc, factors: out })
}

/// Multiset of factor degrees of a polynomial that is squarefree modulo p.
pub fn degree_pattern(f: &ZPoly, p: u64) -> Result<Vec<usize>> {
    let fp = field(p)?;
    let g = reduce_checked(f, fp)?.monic()?;
    degree_pattern_fp(&g)
}

pub fn degree_pattern_fp(g: &FpPoly) -> Result<Vec<usize>> {
    if !g.is_squarefree()? {
        return Err(Error::NotSquarefreeMod(g.ring().modulus().to_string()));
    }
    let mut v = Vec::new();
    for (block, d) in distinct_degree(g)? {
        let k = block.degree().unwrap() / d;
        v.extend(std::iter::repeat(d).take(k));
    }
    v.sort_unstable();
    Ok(v)
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible_fp(f: &FpPoly) -> Result<bool> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let x = Poly::x(*f.ring());
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = frobenius_power(&h, f)?;
        if (&h - &x).gcd(f)?.degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `f` is squarefree and splits into linear factors modulo p.
pub fn totally_split_fp(f: &FpPoly) -> Result<bool> {
    let p = BigUint::from(f.ring().modulus());
    let h = x_pow_mod(&p, f)?;
    Ok(h == Poly::x(*f.ring()).rem(f)?)
}

/// Reduction of an integer mod a word-sized prime.
pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Lifts of the monic factors to integer polynomials with coefficients in `[0, p)`.
pub fn to_zpoly(f: &FpPoly) -> ZPoly {
    ZPoly::from_bigints(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}
