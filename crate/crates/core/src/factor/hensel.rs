//! Multifactor Hensel lifting by a balanced factor tree and quadratic steps.

use num_bigint::BigInt;


use super::finite::{field, FpPoly};
use crate::arith::{IntegersMod, Poly, Ring, ZPoly};
use crate::error::{Error, Result};

type ModPoly = Poly<IntegersMod>;

fn to_mod(f: &ZPoly, r: &IntegersMod) -> ModPoly {
    f.reduce_mod(r)
}

fn lift_fp(f: &FpPoly, r: &IntegersMod) -> ModPoly {
    Poly::new(r.clone(), f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

fn rering(f: &ModPoly, r: &IntegersMod) -> ModPoly {
    Poly::new(r.clone(), f.coeffs().iter().map(|c| r.reduce(c)).collect())
}

fn to_z(f: &ModPoly) -> ZPoly {
    ZPoly::from_bigints(f.coeffs().to_vec())
}

/// One quadratic step: from `f = g h`, `s g + t h = 1` modulo `m` to modulo `m^2`.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ModPoly,
    h: &ModPoly,
    s: &ModPoly,
    t: &ModPoly,
    r2: &IntegersMod,
) -> Result<(ModPoly, ModPoly, ModPoly, ModPoly)> {
    let (g, h, s, t) = (rering(g, r2), rering(h, r2), rering(s, r2), rering(t, r2));
    let f = to_mod(f, r2);
    let e = &f - &(&g * &h);
    let (q, r) = (&s * &e).divrem(&h)?;
    let g2 = &(&g + &(&t * &e)) + &(&q * &g);
    let h2 = &h + &r;
    let one = Poly::one(r2.clone());
    let b = &(&(&s * &g2) + &(&t * &h2)) - &one;
    let (c, d) = (&s * &b).divrem(&h2)?;
    let s2 = &s - &d;
    let t2 = &(&t - &(&t * &b)) - &(&c * &g2);
    Ok((g2, h2, s2, t2))
}

/// Lifts `f = g h (mod p)` with `h` monic to a factorization modulo `p^k`.
fn lift_pair(f: &ZPoly, g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> Result<(ZPoly, ZPoly)> {
    let (d, s0, t0) = g0.xgcd(h0)?;
    if d.degree() != Some(0) {
        return Err(Error::NotSquarefreeMod(p.to_string()));
    }
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let r = IntegersMod::new(m.clone())?;
    let (mut g, mut h, mut s, mut t) = (lift_fp(g0, &r), lift_fp(h0, &r), lift_fp(&s0, &r), lift_fp(&t0, &r));
    let target = num_traits::pow(pb, k as usize);
    while m < target {
        m = &m * &m;
        let r2 = IntegersMod::new(m.clone())?;
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &r2)?;
    }
    let rk = IntegersMod::new(target)?;
    Ok((to_z(&rering(&g, &rk)), to_z(&rering(&h, &rk))))
}

fn product(fs: &[FpPoly]) -> FpPoly {
    let mut acc = Poly::one(*fs[0].ring());
    for f in fs {
        acc = &acc * f;
    }
    acc
}

fn lift_tree(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32, out: &mut Vec<ZPoly>) -> Result<()> {
    if factors.len() == 1 {
        out.push(f.clone());
        return Ok(());
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let (g, h) = lift_pair(f, &product(left), &product(right), p, k)?;
    lift_tree(&g, left, p, k, out)?;
    lift_tree(&h, right, p, k, out)
}

/// Lifts monic factors of `lc(F)^-1 F mod p` to monic factors modulo `p^k`
/// (coefficients in `[0, p^k)`), in the same order.
pub fn hensel_lift_factors(f: &ZPoly, factors: &[FpPoly], p: u64, k: u32) -> Result<Vec<ZPoly>> {
    let fp = field(p)?;
    if factors.is_empty() {
        return Err(Error::Invalid("no factors to lift".into()));
    }
    if factors.iter().any(|g| g.ring() != &fp || !g.is_monic()) {
        return Err(Error::NotMonic);
    }
    let pk = num_traits::pow(BigInt::from(p), k as usize);
    let rk = IntegersMod::new(pk.clone())?;
    let lc = f.lc().ok_or(Error::ZeroPolynomial)?;
    let lc_inv = rk.inv(&rk.reduce(lc)).ok_or_else(|| Error::BadModulus(p.to_string()))?;
    let monic = to_z(&to_mod(f, &rk).scale(&lc_inv));
    let fpoly = monic.reduce_mod64(fp);
    if product(factors) != fpoly {
        return Err(Error::Invalid("factors do not multiply to the input modulo p".into()));
    }
    if !fpoly.is_squarefree()? {
        return Err(Error::NotSquarefreeMod(p.to_string()));
    }
    let mut out = Vec::with_capacity(factors.len());
    lift_tree(&monic, factors, p, k, &mut out)?;
    Ok(out)
}

/// Product of polynomials reduced modulo `m`.
pub fn product_mod(fs: &[&ZPoly], m: &BigInt) -> ZPoly {
    let r = IntegersMod::new(m.clone()).expect("modulus > 1");
    let mut acc = Poly::one(r.clone());
    for f in fs {
        acc = &acc * &to_mod(f, &r);
    }
    to_z(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Zmod64;
    use crate::factor::finite::factor_mod_p;

    #[test]
    fn worked_lift() {
        let f = ZPoly::from_ints(&[1, 0, 1]);
        let fp = Zmod64::new(5).unwrap();
        let facs = vec![ZPoly::from_ints(&[-2, 1]).reduce_mod64(fp), ZPoly::from_ints(&[2, 1]).reduce_mod64(fp)];
        let lifted = hensel_lift_factors(&f, &facs, 5, 2).unwrap();
        assert_eq!(lifted, vec![ZPoly::from_ints(&[18, 1]), ZPoly::from_ints(&[7, 1])]);
    }

    #[test]
    fn lift_is_unique_and_multiplies_back() {
        let f = ZPoly::from_ints(&[7, -3, 0, 5, 0, 1, 3]);
        for p in [11u64, 13, 101] {
            let Ok(fac) = factor_mod_p(&f, p) else { continue };
            if fac.factors.iter().any(|(_, e)| *e > 1) {
                continue;
            }
            let seeds: Vec<_> = fac.factors.iter().map(|(g, _)| g.clone()).collect();
            let k = 6;
            let lifted = hensel_lift_factors(&f, &seeds, p, k).unwrap();
            let pk = num_traits::pow(BigInt::from(p), k as usize);
            let refs: Vec<&ZPoly> = lifted.iter().collect();
            let prod = product_mod(&refs, &pk);
            let rk = IntegersMod::new(pk.clone()).unwrap();
            let lc_inv = rk.inv(&rk.reduce(f.lc().unwrap())).unwrap();
            assert_eq!(prod, to_z(&to_mod(&f, &rk).scale(&lc_inv)));
            let again: Vec<_> = lifted.iter().map(|g| g.reduce_mod64(Zmod64::new(p).unwrap())).collect();
            assert_eq!(hensel_lift_factors(&f, &again, p, k).unwrap(), lifted);
        }
    }
}
