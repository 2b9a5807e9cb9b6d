use super::poly::Poly;
use super::ring::Ring;
use crate::error::{Error, Result};

/// Power sums `s_0..s_{count-1}` of the roots of a monic polynomial, by Newton's identities.
/// No division is needed, so this works over any commutative ring.
pub fn power_sums<R: Ring>(f: &Poly<R>, count: usize) -> Result<Vec<R::Elem>> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let r = f.ring();
    let n = f.degree().unwrap();
    let c = f.coeffs();
    let mut s = Vec::with_capacity(count);
    for k in 0..count {
        if k == 0 {
            s.push(r.from_i64(n as i64));
            continue;
        }
        let mut acc = r.zero();
        for i in 1..=k.min(n) {
            if i < k {
                acc = r.add(&acc, &r.mul(&c[n - i], &s[k - i]));
            }
        }
        if k <= n {
            acc = r.add(&acc, &r.mul(&c[n - k], &r.from_i64(k as i64)));
        }
        s.push(r.neg(&acc));
    }
    Ok(s)
}

/// Trace of `g` in `R[x]/F` given the power sums of `F`.
pub fn trace_with_sums<R: Ring>(ring: &R, g: &[R::Elem], sums: &[R::Elem]) -> R::Elem {
    let mut acc = ring.zero();
    for (a, s) in g.iter().zip(sums) {
        acc = ring.add(&acc, &ring.mul(a, s));
    }
    acc
}

/// Trace of `g` in `R[x]/F` for monic `F`.
pub fn algebra_trace<R: Ring>(g: &Poly<R>, f: &Poly<R>) -> Result<R::Elem> {
    let g = g.rem(f)?;
    let sums = power_sums(f, f.degree().unwrap())?;
    Ok(trace_with_sums(f.ring(), g.coeffs(), &sums))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::ZPoly;
    use crate::arith::ring::Zmod64;

    #[test]
    fn worked_trace() {
        let f7 = Zmod64::new(7).unwrap();
        let f = ZPoly::from_ints(&[2, -3, 1]).reduce_mod64(f7);
        let x = Poly::x(f7);
        assert_eq!(algebra_trace(&x, &f).unwrap(), 3);
    }

    #[test]
    fn power_sums_of_known_roots() {
        // roots 1, 2, 3
        let f = ZPoly::from_ints(&[-6, 11, -6, 1]);
        let s = power_sums(&f, 6).unwrap();
        let expect: Vec<i64> = (0..6u32).map(|k| 1 + 2i64.pow(k) + 3i64.pow(k)).collect();
        let expect: Vec<_> = expect.into_iter().map(num_bigint::BigInt::from).collect();
        assert_eq!(s, expect);
    }
}
