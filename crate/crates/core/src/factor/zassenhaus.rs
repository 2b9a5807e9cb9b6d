//! Factorization over Z: squarefree reduction, a good prime, Hensel lifting,
//! and subset recombination pruned by degree sets from auxiliary primes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::finite::{degree_pattern_fp, factor_mod_p, field, reduce_checked};
use super::hensel::{hensel_lift_factors, product_mod};
use crate::arith::int::{is_prime_u64, symmetric_mod};
use crate::arith::resultant::log2_abs;
use crate::arith::ZPoly;
use crate::error::{Error, Result};

/// `F = content * prod f_i^e_i` with primitive irreducible `f_i` of positive leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(ZPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> ZPoly {
        let mut acc = ZPoly::from_bigints(vec![self.content.clone()]);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = &acc * f;
            }
        }
        acc
    }
}

const CANDIDATE_PRIMES: usize = 10;
const FIRST_PRIME: u64 = 257;

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degrees {
        let next: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(next);
    }
    s
}

struct PrimeChoice {
    p: u64,
    allowed: BTreeSet<usize>,
}

fn choose_prime(f: &ZPoly) -> Result<PrimeChoice> {
    let n = f.degree().unwrap();
    let lc = f.lc().unwrap();
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut best: Option<(usize, u64)> = None;
    let mut seen = 0;
    let mut p = FIRST_PRIME;
    while seen < CANDIDATE_PRIMES {
        if is_prime_u64(p) && !(lc % p).is_zero() {
            let fp = field(p)?;
            let g = reduce_checked(f, fp)?.monic()?;
            if let Ok(pattern) = degree_pattern_fp(&g) {
                seen += 1;
                let sums = subset_sums(&pattern);
                allowed = allowed.intersection(&sums).cloned().collect();
                if best.is_none_or(|(c, _)| pattern.len() < c) {
                    best = Some((pattern.len(), p));
                }
            }
        }
        p += 2;
    }
    Ok(PrimeChoice { p: best.unwrap().1, allowed })
}

/// Coefficient bound for any integer factor: `2^n ||f||_2 |lc|`, as bits.
fn factor_bound_bits(f: &ZPoly) -> u64 {
    let n = f.degree().unwrap() as f64;
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let bits = n + log2_abs(&norm2) / 2.0 + log2_abs(f.lc().unwrap()) + 2.0;
    bits.ceil() as u64
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Factors a primitive squarefree polynomial of degree at least two.
fn factor_squarefree(f: &ZPoly) -> Result<Vec<ZPoly>> {
    let n = f.degree().unwrap();
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let choice = choose_prime(f)?;
    if choice.allowed.iter().all(|&d| d == 0 || d == n) {
        return Ok(vec![f.clone()]);
    }
    let p = choice.p;
    let modf = factor_mod_p(f, p)?;
    if modf.factors.len() == 1 {
        return Ok(vec![f.clone()]);
    }
    let bits = factor_bound_bits(f) + 1;
    let k = (bits as f64 / (p as f64).log2()).ceil() as u32 + 1;
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let seeds: Vec<_> = modf.factors.iter().map(|(g, _)| g.clone()).collect();
    let mut local = hensel_lift_factors(f, &seeds, p, k)?;

    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= local.len() {
        let mut hit = None;
        let lc = rest.lc().unwrap().clone();
        for combo in combinations(local.len(), s) {
            let deg: usize = combo.iter().map(|&i| local[i].degree().unwrap()).sum();
            if !choice.allowed.contains(&deg) {
                continue;
            }
            // constant term test before the full product
            let c0 = combo.iter().fold(lc.clone(), |acc, &i| (acc * &local[i].coeffs()[0]).mod_floor(&pk));
            let c0 = symmetric_mod(&c0, &pk);
            if !c0.is_zero() && !(rest.coeffs()[0].clone() * &lc % &c0).is_zero() {
                continue;
            }
            let mut parts: Vec<&ZPoly> = combo.iter().map(|&i| &local[i]).collect();
            let lcp = ZPoly::from_bigints(vec![lc.clone()]);
            parts.push(&lcp);
            let g = product_mod(&parts, &pk);
            let g = ZPoly::from_bigints(g.coeffs().iter().map(|c| symmetric_mod(c, &pk)).collect()).primitive_part();
            if let Some(q) = rest.div_exact(&g)? {
                hit = Some((combo, g, q));
                break;
            }
        }
        match hit {
            Some((combo, g, q)) => {
                found.push(g);
                rest = q;
                let keep: Vec<ZPoly> =
                    local.iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, g)| g.clone()).collect();
                local = keep;
            }
            None => s += 1,
        }
    }
    found.push(rest.primitive_part());
    Ok(found)
}

fn sort_key(f: &ZPoly) -> (usize, Vec<BigInt>) {
    (f.degree().unwrap_or(0), f.coeffs().to_vec())
}

/// Complete factorization over Z.
pub fn factor_over_z(f: &ZPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let content = f.content();
    let prim = f.primitive_part();
    if prim.degree() == Some(0) {
        return Ok(Factorization { content, factors: Vec::new() });
    }
    let g = prim.gcd_z(&prim.derivative())?;
    let base = prim.div_exact(&g)?.expect("gcd divides").primitive_part();
    let mut factors = Vec::new();
    for q in factor_squarefree(&base)? {
        let mut e = 0;
        let mut cur = prim.clone();
        while let Some(next) = cur.div_exact(&q)? {
            e += 1;
            cur = next;
        }
        factors.push((q, e));
    }
    factors.sort_by(|a, b| sort_key(&a.0).cmp(&sort_key(&b.0)));
    Ok(Factorization { content, factors })
}

pub fn is_irreducible_over_z(f: &ZPoly) -> Result<bool> {
    let fac = factor_over_z(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1 && fac.content.abs().is_one())
}
