//! Kronecker's method: enumerates every monic divisor of a given degree by interpolation.

use galrep::arith::ZPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    let mut v = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            v.push(d);
            v.push(-d);
        }
    }
    v
}

/// Monic integer polynomial of degree d with g(x_i) = v_i, if it exists.
fn interpolate_monic(xs: &[i64], vs: &[i64]) -> Option<ZPoly> {
    let d = xs.len();
    let mut base = ZPoly::from_ints(&[1]);
    for &x in xs {
        base = &base * &ZPoly::from_ints(&[-x, 1]);
    }
    // Lagrange interpolation of v_i over Q for the degree < d correction
    let mut corr = vec![BigRational::zero(); d];
    for i in 0..d {
        let mut num = vec![BigRational::one()];
        let mut den = BigRational::one();
        for j in 0..d {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); num.len() + 1];
            for (k, c) in num.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].into());
            }
            num = next;
            den *= BigRational::from_integer((xs[i] - xs[j]).into());
        }
        let scale = BigRational::from_integer(vs[i].into()) / den;
        for (k, c) in num.iter().enumerate() {
            corr[k] += c * &scale;
        }
    }
    let mut coeffs: Vec<BigInt> = base.coeffs().to_vec();
    for (k, c) in corr.iter().enumerate() {
        if !c.is_integer() {
            return None;
        }
        coeffs[k] += c.to_integer();
    }
    Some(ZPoly::from_bigints(coeffs))
}

pub fn has_monic_divisor_of_degree(f: &ZPoly, d: usize) -> bool {
    let mut pts: Vec<(i64, i64)> = (-6i64..=6)
        .map(|x| (x, f.eval_int(&BigInt::from(x)).to_i64().unwrap()))
        .filter(|&(_, v)| v != 0)
        .collect();
    pts.sort_by_key(|&(_, v)| divisors(v).len());
    let pts = &pts[..d];
    let choices: Vec<Vec<i64>> = pts.iter().map(|&(_, v)| divisors(v)).collect();
    let xs: Vec<i64> = pts.iter().map(|&(x, _)| x).collect();
    let mut idx = vec![0usize; d];
    loop {
        let vs: Vec<i64> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(g) = interpolate_monic(&xs, &vs) {
            if g.degree() == Some(d) && f.div_exact(&g).unwrap().is_some() {
                return true;
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                return false;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn brute_irreducible(f: &ZPoly) -> bool {
    let n = f.degree().unwrap();
    (1..=n / 2).all(|d| !has_monic_divisor_of_degree(f, d))
}

pub fn arb_monic(max_deg: usize) -> impl Strategy<Value = ZPoly> {
    (1..=max_deg).prop_flat_map(|d| prop::collection::vec(-3i64..=3, d)).prop_map(|mut v| {
        v.push(1);
        ZPoly::from_ints(&v)
    })
}

