//! Level-one q-expansions: Eisenstein series, Delta, the one-dimensional eigenforms and the
//! weight-24 pair over `Z[alpha]`, `alpha^2 = alpha + 36042`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::kron::mul_signed_trunc;
use crate::error::{Error, Result};

/// `alpha^2 = alpha + ALPHA_C`.
pub const ALPHA_C: i64 = 36042;
/// Discriminant of `Z[alpha]`.
pub const ALPHA_DISC: i64 = 144169;

/// Weights with a one-dimensional cusp space.
pub const RATIONAL_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Truncated q-series with integer coefficients `a_0..a_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    coeffs: Vec<BigInt>,
}

impl QExpansion {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        QExpansion { coeffs }
    }
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
    pub fn coeff(&self, n: usize) -> Result<&BigInt> {
        self.coeffs.get(n).ok_or(Error::TruncationTooShort { need: n, have: self.truncation() })
    }
    pub fn truncate(&self, t: usize) -> Self {
        QExpansion { coeffs: self.coeffs[..=t.min(self.truncation())].to_vec() }
    }
    pub fn scale(&self, c: &BigInt) -> Self {
        QExpansion { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }
    pub fn div_exact(&self, c: &BigInt) -> Result<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return Err(Error::Invalid("inexact division of a q-expansion".into()));
            }
            out.push(q);
        }
        Ok(QExpansion { coeffs: out })
    }
}

impl Add for &QExpansion {
    type Output = QExpansion;
    fn add(self, o: &QExpansion) -> QExpansion {
        let t = self.truncation().min(o.truncation());
        QExpansion { coeffs: (0..=t).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }
}

impl Sub for &QExpansion {
    type Output = QExpansion;
    fn sub(self, o: &QExpansion) -> QExpansion {
        let t = self.truncation().min(o.truncation());
        QExpansion { coeffs: (0..=t).map(|i| &self.coeffs[i] - &o.coeffs[i]).collect() }
    }
}

impl Mul for &QExpansion {
    type Output = QExpansion;
    fn mul(self, o: &QExpansion) -> QExpansion {
        let t = self.truncation().min(o.truncation());
        QExpansion { coeffs: mul_signed_trunc(&self.coeffs[..=t], &o.coeffs[..=t], t + 1) }
    }
}

/// `sigma_k(n)` for `1 <= n <= t`, by a divisor sieve.
pub fn divisor_sums(k: u32, t: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); t + 1];
    for d in 1..=t {
        let dk = num_traits::pow(BigInt::from(d), k as usize);
        for m in (d..=t).step_by(d) {
            s[m] += &dk;
        }
    }
    s
}

/// `E_4 = 1 + 240 sum sigma_3(n) q^n`, `E_6 = 1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein(k: u32, t: usize) -> Result<QExpansion> {
    let c = match k {
        4 => 240,
        6 => -504,
        _ => return Err(Error::UnsupportedWeight(k)),
    };
    let mut coeffs = divisor_sums(k - 1, t);
    coeffs[0] = BigInt::one();
    let c = BigInt::from(c);
    for x in coeffs.iter_mut().skip(1) {
        *x *= &c;
    }
    Ok(QExpansion { coeffs })
}

/// `Delta = (E_4^3 - E_6^2) / 1728`.
pub fn delta(t: usize) -> QExpansion {
    let e4 = eisenstein(4, t).unwrap();
    let e6 = eisenstein(6, t).unwrap();
    let num = &(&(&e4 * &e4) * &e4) - &(&e6 * &e6);
    num.div_exact(&BigInt::from(1728)).expect("E4^3 - E6^2 is divisible by 1728")
}

/// `q prod (1 - q^n)^24`, with `prod (1 - q^n)` from Euler's pentagonal number theorem.
pub fn delta_product(t: usize) -> QExpansion {
    let mut eta = vec![BigInt::zero(); t + 1];
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = (kk * (3 * kk - 1) / 2) as usize;
            if e <= t {
                eta[e] = BigInt::from(if kk.rem_euclid(2) == 0 { 1 } else { -1 });
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    let p = QExpansion { coeffs: eta };
    let p2 = &p * &p;
    let p4 = &p2 * &p2;
    let p8 = &p4 * &p4;
    let p16 = &p8 * &p8;
    let p24 = &p16 * &p8;
    let mut coeffs = vec![BigInt::zero()];
    coeffs.extend(p24.coeffs[..t].iter().cloned());
    QExpansion { coeffs }
}

/// The normalized cusp eigenform of weight `k` in `{12, 16, 18, 20, 22, 26}`.
pub fn eigenform(k: u32, t: usize) -> Result<QExpansion> {
    let d = delta(t);
    let e4 = || eisenstein(4, t).unwrap();
    let e6 = || eisenstein(6, t).unwrap();
    Ok(match k {
        12 => d,
        16 => &e4() * &d,
        18 => &e6() * &d,
        20 => &(&e4() * &e4()) * &d,
        22 => &(&e4() * &e6()) * &d,
        26 => &(&(&e4() * &e4()) * &e6()) * &d,
        _ => return Err(Error::UnsupportedWeight(k)),
    })
}

/// `a + b alpha` in `Z[alpha]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }
    pub fn from_int(a: BigInt) -> Self {
        QuadInt { a, b: BigInt::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    /// Conjugate under `alpha -> 1 - alpha`.
    pub fn conj(&self) -> Self {
        QuadInt { a: &self.a + &self.b, b: -&self.b }
    }
    pub fn norm(&self) -> BigInt {
        (self * &self.conj()).a
    }
    pub fn trace(&self) -> BigInt {
        &self.a * 2 + &self.b
    }
    pub fn scale(&self, c: &BigInt) -> Self {
        QuadInt { a: &self.a * c, b: &self.b * c }
    }
    /// Image in F_l under `alpha -> root`.
    pub fn reduce(&self, ell: u64, root: u64) -> u64 {
        let m = BigInt::from(ell);
        (&self.a + &self.b * root).mod_floor(&m).to_u64().unwrap()
    }
}

impl Add for &QuadInt {
    type Output = QuadInt;
    fn add(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuadInt {
    type Output = QuadInt;
    fn sub(self, o: &QuadInt) -> QuadInt {
        QuadInt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt { a: -&self.a, b: -&self.b }
    }
}

impl Mul for &QuadInt {
    type Output = QuadInt;
    fn mul(self, o: &QuadInt) -> QuadInt {
        let bd = &self.b * &o.b;
        QuadInt { a: &self.a * &o.a + &bd * ALPHA_C, b: &self.a * &o.b + &self.b * &o.a + bd }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.sign()) {
            (_, num_bigint::Sign::NoSign) => write!(f, "{}", self.a),
            (true, _) => write!(f, "{}a", self.b),
            (false, num_bigint::Sign::Minus) => write!(f, "{}-{}a", self.a, self.b.abs()),
            _ => write!(f, "{}+{}a", self.a, self.b),
        }
    }
}

/// Truncated q-series over `Z[alpha]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadQExpansion {
    coeffs: Vec<QuadInt>,
}

impl QuadQExpansion {
    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeffs(&self) -> &[QuadInt] {
        &self.coeffs
    }
    pub fn coeff(&self, n: usize) -> Result<&QuadInt> {
        self.coeffs.get(n).ok_or(Error::TruncationTooShort { need: n, have: self.truncation() })
    }
}

/// `T_2` on a weight-`k` level-one q-expansion: `a(2n) + 2^(k-1) a(n/2)`, for `n <= T/2`.
pub fn hecke_t2(f: &QExpansion, k: u32) -> QExpansion {
    let t = f.truncation() / 2;
    let pk = BigInt::one() << (k - 1);
    let coeffs = (0..=t)
        .map(|n| {
            let mut c = f.coeffs[2 * n].clone();
            if n % 2 == 0 {
                c += &pk * &f.coeffs[n / 2];
            }
            c
        })
        .collect();
    QExpansion { coeffs }
}

/// The eigenform of weight 24 with `a_2 = 24 (22 + alpha)`, found by diagonalizing `T_2` on the
/// basis `Delta E_4^3, Delta^2`.
pub fn s24_eigenform(t: usize) -> Result<QuadQExpansion> {
    if t < 2 {
        return Err(Error::TruncationTooShort { need: 2, have: t });
    }
    let tt = 2 * t.max(4);
    let d = delta(tt);
    let e4 = eisenstein(4, tt)?;
    let b1 = &(&(&e4 * &e4) * &e4) * &d;
    let b2 = &d * &d;
    // coordinates of g in the basis (b1, b2), read from a_1 and a_2
    let c2 = b1.coeffs[2].clone();
    let coords = |g: &QExpansion| (g.coeffs[1].clone(), &g.coeffs[2] - &g.coeffs[1] * &c2);
    let (m11, m21) = coords(&hecke_t2(&b1, 24));
    let (m12, m22) = coords(&hecke_t2(&b2, 24));
    let tr = &m11 + &m22;
    let det = &m11 * &m22 - &m12 * &m21;
    // lambda = (tr + s sqrt(ALPHA_DISC)) / 2, sqrt(ALPHA_DISC) = 2 alpha - 1
    let disc: BigInt = &tr * &tr - &det * 4u32;
    let (s2, r) = disc.div_rem(&BigInt::from(ALPHA_DISC));
    let s = s2.sqrt();
    if !r.is_zero() || &s * &s != s2 || s.is_zero() {
        return Err(Error::DiagonalizationDegenerate);
    }
    let (a, ra) = (&tr - &s).div_rem(&BigInt::from(2));
    if !ra.is_zero() {
        return Err(Error::DiagonalizationDegenerate);
    }
    let lambda = QuadInt { a, b: s };
    let mu = &lambda - &QuadInt::from_int(c2);
    let coeffs: Vec<QuadInt> = (0..=t)
        .map(|n| &QuadInt::from_int(b1.coeffs[n].clone()) + &mu.scale(&b2.coeffs[n]))
        .collect();
    // eigenvector check on every available coefficient
    let full: Vec<QuadInt> = (0..=tt)
        .map(|n| &QuadInt::from_int(b1.coeffs[n].clone()) + &mu.scale(&b2.coeffs[n]))
        .collect();
    let pk = BigInt::one() << 23;
    for n in 0..=tt / 2 {
        let mut lhs = full[2 * n].clone();
        if n % 2 == 0 {
            lhs = &lhs + &full[n / 2].scale(&pk);
        }
        if lhs != &lambda * &full[n] {
            return Err(Error::DiagonalizationDegenerate);
        }
    }
    Ok(QuadQExpansion { coeffs })
}

/// Characteristic polynomial `x^2 - tr x + det` of `T_2` on `S_24`, as `(tr, det)`.
pub fn s24_hecke_charpoly() -> (BigInt, BigInt) {
    let f = s24_eigenform(2).unwrap();
    let l = &f.coeffs[2];
    (l.trace(), l.norm())
}

/// Prime ideal of `Z[alpha]` above 31 used by the weight-24 representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Embedding {
    /// `(31, alpha - 5)`
    L5,
    /// `(31, alpha - 27)`
    L27,
}

impl Embedding {
    pub fn root(self) -> u64 {
        match self {
            Embedding::L5 => 5,
            Embedding::L27 => 27,
        }
    }
    pub fn tag(self) -> &'static str {
        match self {
            Embedding::L5 => "l5",
            Embedding::L27 => "l27",
        }
    }
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "l5" => Ok(Embedding::L5),
            "l27" => Ok(Embedding::L27),
            _ => Err(Error::Invalid(format!("unknown embedding `{s}`"))),
        }
    }
}

/// Cached q-expansion of one level-one eigenform.
#[derive(Clone, Debug)]
pub enum Oracle {
    Rational { k: u32, f: QExpansion },
    Quadratic { f: QuadQExpansion },
}

impl Oracle {
    pub fn new(k: u32, t: usize) -> Result<Self> {
        if k == 24 {
            Ok(Oracle::Quadratic { f: s24_eigenform(t)? })
        } else {
            Ok(Oracle::Rational { k, f: eigenform(k, t)? })
        }
    }
    pub fn weight(&self) -> u32 {
        match self {
            Oracle::Rational { k, .. } => *k,
            Oracle::Quadratic { .. } => 24,
        }
    }
    pub fn truncation(&self) -> usize {
        match self {
            Oracle::Rational { f, .. } => f.truncation(),
            Oracle::Quadratic { f } => f.truncation(),
        }
    }
    /// `a_n mod l`; the embedding is required for weight 24 and ignored otherwise.
    pub fn a_mod(&self, n: usize, ell: u64, emb: Option<Embedding>) -> Result<u64> {
        match self {
            Oracle::Rational { f, .. } => Ok(f.coeff(n)?.mod_floor(&BigInt::from(ell)).to_u64().unwrap()),
            Oracle::Quadratic { f } => {
                let emb = emb.ok_or_else(|| Error::Invalid("weight 24 needs an embedding".into()))?;
                if ell != 31 {
                    return Err(Error::InvalidEll(ell));
                }
                Ok(f.coeff(n)?.reduce(ell, emb.root()))
            }
        }
    }
}

/// `a_n mod l` for the weight-`k` eigenform.
pub fn tau_mod(k: u32, n: usize, ell: u64, emb: Option<Embedding>) -> Result<u64> {
    Oracle::new(k, n.max(2))?.a_mod(n, ell, emb)
}

/// The unique `a + b alpha` mod 31 reducing to `t5` at `alpha = 5` and `t27` at `alpha = 27`.
pub fn crt_combine(t5: u64, t27: u64) -> QuadInt {
    // 22^-1 = 24 mod 31
    let b = ((t27 % 31 + 31 - t5 % 31) * 24) % 31;
    let a = (t5 % 31 + 31 * 5 - 5 * b) % 31;
    QuadInt::new(a, b)
}
