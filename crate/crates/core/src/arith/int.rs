//! Integer utilities: primality, modular inverses, CRT, prime expressions.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn modinv_u64(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod_u64(a: u64, mut e: u64, m: u64) -> u64 {
    let mut b = a % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime_u64(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// Primes below `limit` by the sieve of Eratosthenes.
pub fn primes_below(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut comp = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

fn strong_probable_prime(n: &BigInt, a: &BigInt) -> bool {
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        let z = a.trailing_zeros().unwrap_or(0);
        a >>= z;
        let r8 = (&n % 8u32).to_u32().unwrap_or(0);
        if z % 2 == 1 && (r8 == 3 || r8 == 5) {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == BigInt::from(3) && (&n % 4u32) == BigInt::from(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    x >> 1
}

fn strong_lucas(n: &BigInt) -> bool {
    let sq = n.sqrt();
    if &sq * &sq == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.abs() != *n {
            return false;
        }
        d = if d.is_positive() { -(d + 2u32) } else { -(d - 2u32) };
    }
    let q: BigInt = (BigInt::one() - &d) / BigInt::from(4);
    let np1: BigInt = n + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let dm = d.mod_floor(n);
    let qm = q.mod_floor(n);
    // ladder for U_k, V_k, Q^k with P = 1
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = k.bits();
    for i in (0..bits).rev() {
        u = (&u * &v) % n;
        v = (&v * &v - &qk - &qk).mod_floor(n);
        qk = (&qk * &qk) % n;
        if k.bit(i) {
            let nu = half_mod(&u + &v, n);
            let nv = half_mod(&dm * &u + &v, n);
            u = nu.mod_floor(n);
            v = nv.mod_floor(n);
            qk = (&qk * &qm) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk - &qk).mod_floor(n);
        qk = (&qk * &qk) % n;
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Baillie-PSW probable-prime test; exact below 2^64.
pub fn is_probable_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    if let Some(small) = n.to_u64() {
        if small < 1 << 63 {
            return is_prime_u64(small);
        }
    }
    for p in primes_below(1000) {
        if (n % p).is_zero() {
            return false;
        }
    }
    strong_probable_prime(n, &BigInt::from(2)) && strong_lucas(n)
}

pub fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Representative of `a mod m` in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Combines `x = r_i mod m_i` for pairwise coprime moduli; returns `(x, prod m_i)` with `0 <= x < prod`.
pub fn crt(residues: &[BigInt], moduli: &[BigInt]) -> Result<(BigInt, BigInt)> {
    if residues.len() != moduli.len() {
        return Err(Error::Invalid("crt: length mismatch".into()));
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (r, mi) in residues.iter().zip(moduli) {
        let inv = modinv(&m, mi).ok_or_else(|| Error::Invalid("crt: moduli not coprime".into()))?;
        let t = ((r - &x) * inv).mod_floor(mi);
        x += &m * t;
        m *= mi;
    }
    Ok((x.mod_floor(&m), m))
}

/// Rational reconstruction of `a mod m` with numerator and denominator below `sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if !num.gcd(&den).is_one() {
        return None;
    }
    Some((num, den))
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    if n.is_zero() {
        return (0, n);
    }
    let pb = BigInt::from(p);
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    (v, n)
}

/// Parses prime expressions like `10^1000+453`, `2^61-1`, `3*5+2`.
pub fn parse_int_expr(s: &str) -> Result<BigInt> {
    let bad = |m: &str| Error::parse(0, format!("integer expression `{s}`: {m}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad("empty"));
    }
    let mut total = BigInt::zero();
    let mut sign = 1i32;
    let mut term = String::new();
    let flush = |term: &str, sign: i32, total: &mut BigInt| -> Result<()> {
        if term.is_empty() {
            return Err(bad("dangling operator"));
        }
        let mut prod = BigInt::one();
        for f in term.split('*') {
            let mut parts = f.split('^');
            let base: BigInt = parts.next().unwrap_or("").parse().map_err(|_| bad("bad number"))?;
            let v = match parts.next() {
                Some(e) => {
                    let e: u32 = e.parse().map_err(|_| bad("bad exponent"))?;
                    num_traits::pow(base, e as usize)
                }
                None => base,
            };
            if parts.next().is_some() {
                return Err(bad("nested exponent"));
            }
            prod *= v;
        }
        if sign < 0 {
            *total -= prod;
        } else {
            *total += prod;
        }
        Ok(())
    };
    for (i, c) in t.chars().enumerate() {
        if (c == '+' || c == '-') && !(i == 0 && term.is_empty()) {
            flush(&term, sign, &mut total)?;
            term.clear();
            sign = if c == '-' { -1 } else { 1 };
        } else if c == '-' {
            sign = -1;
        } else if c == '+' {
        } else if c.is_ascii_digit() || c == '^' || c == '*' {
            term.push(c);
        } else {
            return Err(bad("unexpected character"));
        }
    }
    flush(&term, sign, &mut total)?;
    Ok(total)
}

/// Renders `n` as `10^e+c` when that is shorter than its decimal form.
pub fn format_int_expr(n: &BigInt) -> String {
    let s = n.to_string();
    if s.len() > 12 && n.is_positive() {
        let e = s.len() - 1;
        let base = num_traits::pow(BigInt::from(10), e);
        let c: BigInt = n - &base;
        if c.to_string().len() + 4 < s.len() {
            return if c.is_zero() { format!("10^{e}") } else { format!("10^{e}+{c}") };
        }
    }
    s
}

pub fn to_biguint(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_agrees_with_sieve() {
        let ps = primes_below(5000);
        for n in 0..5000u64 {
            assert_eq!(is_prime_u64(n), ps.binary_search(&n).is_ok(), "{n}");
            assert_eq!(is_probable_prime(&BigInt::from(n)), ps.binary_search(&n).is_ok());
        }
    }

    #[test]
    fn lucas_rejects_strong_pseudoprimes_to_base_two() {
        for n in [2047u64, 3277, 4033, 4681, 8321, 15841, 29341, 42799, 49141, 52633] {
            assert!(!strong_lucas(&BigInt::from(n)), "{n}");
        }
        for p in [1_000_003u64, 998_244_353, (1 << 61) - 1] {
            assert!(strong_lucas(&BigInt::from(p)));
        }
    }

    #[test]
    fn big_primes() {
        let m61 = (BigInt::one() << 61) - 1;
        assert!(is_probable_prime(&m61));
        let m127 = (BigInt::one() << 127) - 1;
        assert!(is_probable_prime(&m127));
        assert!(!is_probable_prime(&(&m127 * &m61)));
        let p = parse_int_expr("10^1000+453").unwrap();
        assert!(is_probable_prime(&p));
        assert!(!is_probable_prime(&(p + 2)));
    }

    #[test]
    fn expressions() {
        assert_eq!(parse_int_expr("2^61 - 1").unwrap(), (BigInt::one() << 61) - 1);
        assert_eq!(parse_int_expr("3*5+2").unwrap(), BigInt::from(17));
        assert_eq!(parse_int_expr("-7").unwrap(), BigInt::from(-7));
        assert!(parse_int_expr("10^^2").is_err());
        let p = parse_int_expr("10^1000+453").unwrap();
        assert_eq!(format_int_expr(&p), "10^1000+453");
        assert_eq!(format_int_expr(&BigInt::from(100003)), "100003");
    }

    #[test]
    fn crt_and_reconstruction() {
        let (x, m) = crt(&[2.into(), 3.into(), 2.into()], &[3.into(), 5.into(), 7.into()]).unwrap();
        assert_eq!((x, m), (BigInt::from(23), BigInt::from(105)));
        let m = BigInt::from(1_000_003);
        let a = BigInt::from(3) * modinv(&BigInt::from(7), &m).unwrap();
        assert_eq!(rational_reconstruct(&a, &m), Some((3.into(), 7.into())));
        let a = BigInt::from(-5) * modinv(&BigInt::from(11), &m).unwrap();
        assert_eq!(rational_reconstruct(&a, &m), Some(((-5).into(), 11.into())));
    }

    #[test]
    fn jacobi_matches_euler() {
        for n in [3u64, 5, 7, 11, 13, 101] {
            for a in 0..n {
                let e = powmod_u64(a, (n - 1) / 2, n);
                let expect = if a == 0 { 0 } else if e == 1 { 1 } else { -1 };
                assert_eq!(jacobi(&BigInt::from(a), &BigInt::from(n)), expect);
            }
        }
    }
}
