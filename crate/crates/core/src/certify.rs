//! Certification checks for a representation polynomial and its resolvent table.
//!
//! Every passing entry carries a witness that the matching `verify_*` function
//! re-checks without searching.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::bounds::{ceil_rational, root_modulus_bound};
use crate::arith::int::{is_prime_u64, next_prime_u64, symmetric_mod, powmod_u64, rational_reconstruct};
use crate::arith::square::{square_part_split, SquareSplit};
use crate::arith::{discriminant, resultant, sturm_count, ModAlgebra, Poly, ZPoly, Zmod64};
use crate::error::{Error, Result};
use crate::factor::finite::{degree_pattern, factor_mod_p_seeded, field, DEFAULT_SEED, reduce_checked, totally_split_fp, FpPoly};
use crate::data::RepData;
use crate::gl2::QuotientGroup;
use crate::modforms::Oracle;
use crate::padic::{elementary_symmetric, is_scalar, scalar_value, UnramExt};
use crate::resolvent::{coefficient_bounds, Indexation, ResolventTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub witnesses: Vec<String>,
}

impl CheckEntry {
    fn new(name: &str, status: Status, witnesses: Vec<String>) -> Self {
        CheckEntry { name: name.to_string(), status, witnesses }
    }
}

impl fmt::Display for CheckEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.witnesses.is_empty() { "-".to_string() } else { self.witnesses.join(",") };
        write!(f, "CHECK {} {} {}", self.name, self.status, w)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertReport {
    pub entries: Vec<CheckEntry>,
}

impl CertReport {
    pub fn push(&mut self, e: CheckEntry) {
        self.entries.push(e);
    }
    /// No entry failed.
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.status != Status::Fail)
    }
}

impl fmt::Display for CertReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Classifies a discriminant as `±l^a M^2`; the sign must be `(-1)^(l(l-1)/2)` when `deg = l^2 - 1`.
pub fn disc_entry(disc: &BigInt, ell: u64, deg: usize) -> Result<CheckEntry> {
    let split = square_part_split(disc, ell).ok_or(Error::ZeroDiscriminant)?;
    Ok(match split {
        SquareSplit::Form { sign, ell_exp, m } => {
            let w = vec![format!("sign={sign}"), format!("a={ell_exp}"), format!("M={m}")];
            let want = if (ell * (ell - 1) / 2) % 2 == 0 { 1 } else { -1 };
            if deg as u64 == ell * ell - 1 && sign != want {
                CheckEntry::new("sanity_disc", Status::Fail, w)
            } else {
                CheckEntry::new("sanity_disc", Status::Pass, w)
            }
        }
        SquareSplit::NotForm { obstruction } => {
            let o = obstruction.map_or("unknown".to_string(), |q| q.to_string());
            CheckEntry::new("sanity_disc", Status::Fail, vec![format!("obstruction={o}")])
        }
    })
}

pub fn sanity_disc(f: &ZPoly, ell: u64) -> Result<CheckEntry> {
    let d = discriminant(f)?;
    if d.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    disc_entry(&d, ell, f.degree().unwrap_or(0))
}

pub fn verify_disc_witness(f: &ZPoly, ell: u64, sign: i8, a: u32, m: &BigInt) -> Result<bool> {
    let d = discriminant(f)?;
    let want = BigInt::from(sign) * num_traits::pow(BigInt::from(ell), a as usize) * m * m;
    Ok(d == want)
}

/// Real roots of `F_r` (exact Sturm count) against the fixed points of complex conjugation.
pub fn sanity_real_roots(f: &ZPoly, ell: u32, r: u32) -> Result<CheckEntry> {
    let expected = QuotientGroup::level(ell, r)?.conjugation_fixed_points(ell - 1);
    let got = sturm_count(f)?;
    let st = if got == expected { Status::Pass } else { Status::Fail };
    Ok(CheckEntry::new("sanity_real_roots", st, vec![format!("real={got}"), format!("expected={expected}")]))
}

/// Whether the images generate `(Z/modulus)^* ⊗ Z/exponent`.
pub fn spans_unit_group(modulus: u64, exponent: u64, images: &[u64]) -> bool {
    let units: Vec<u64> = (1..modulus).filter(|u| u.gcd(&modulus) == 1).collect();
    if units.len() <= 1 {
        return true;
    }
    let mut seen = vec![false; modulus as usize];
    let mut stack: Vec<u64> = units.iter().map(|&u| powmod_u64(u, exponent, modulus)).collect();
    stack.push(1);
    let gens: Vec<u64> = images.iter().map(|&v| v % modulus).filter(|v| v.gcd(&modulus) == 1).collect();
    let mut members = Vec::new();
    for &s in &stack {
        if !seen[s as usize] {
            seen[s as usize] = true;
            members.push(s);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens.iter().chain(stack.iter()) {
            let y = x * g % modulus;
            if !seen[y as usize] {
                seen[y as usize] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.len() == units.len()
}

fn a1_group(level_n: u64, r: u32) -> (u64, u64) {
    ((1u64 << (r + 3)) * level_n, 1u64 << (r + 1))
}

fn split_completely(f: &ZPoly, v: u64) -> Result<bool> {
    let fp = field(v)?;
    match reduce_checked(f, fp) {
        Ok(g) => totally_split_fp(&g.monic()?),
        Err(_) => Ok(false),
    }
}

/// Searches primes `v = 1 mod l`, `v <= cap`, at which `F_r` splits completely until they
/// span `(Z/2^(r+3)N)^* ⊗ Z/2^(r+1)`.
pub fn check_a1(f: &ZPoly, ell: u64, level_n: u64, r: u32, cap: u64) -> Result<CheckEntry> {
    let (m, e) = a1_group(level_n, r);
    let mut found: Vec<u64> = Vec::new();
    let mut v = ell + 1;
    while v <= cap {
        if is_prime_u64(v) && m % v != 0 && split_completely(f, v)? {
            let mut trial = found.clone();
            trial.push(v);
            if found.is_empty() || !same_span(m, e, &found, &trial) {
                found = trial;
                if spans_unit_group(m, e, &found) {
                    return Ok(CheckEntry::new("A1", Status::Pass, found.iter().map(|v| v.to_string()).collect()));
                }
            }
        }
        v += ell;
    }
    let w = found.iter().map(|v| v.to_string()).chain(std::iter::once(format!("cap={cap}"))).collect();
    Ok(CheckEntry::new("A1", Status::Skipped, w))
}

fn span_size(m: u64, e: u64, gens: &[u64]) -> usize {
    let mut seen = vec![false; m as usize];
    let mut members = vec![];
    for u in (1..m).filter(|u| u.gcd(&m) == 1) {
        let p = powmod_u64(u, e, m);
        if !seen[p as usize] {
            seen[p as usize] = true;
            members.push(p);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &g in gens {
            let y = x * (g % m) % m;
            if !seen[y as usize] {
                seen[y as usize] = true;
                members.push(y);
            }
        }
        i += 1;
    }
    members.len()
}

fn same_span(m: u64, e: u64, a: &[u64], b: &[u64]) -> bool {
    span_size(m, e, a) == span_size(m, e, b)
}

pub fn verify_a1_witness(f: &ZPoly, ell: u64, level_n: u64, r: u32, primes: &[u64]) -> Result<bool> {
    let (m, e) = a1_group(level_n, r);
    for &v in primes {
        if !is_prime_u64(v) || v % ell != 1 || !split_completely(f, v)? {
            return Ok(false);
        }
    }
    Ok(spans_unit_group(m, e, primes))
}

/// `F_i` splits completely mod `v` while `F_(i+1)` stays squarefree but does not.
fn a3_holds(fi: &ZPoly, fnext: &ZPoly, v: u64) -> Result<Option<Vec<usize>>> {
    if !split_completely(fi, v)? {
        return Ok(None);
    }
    match degree_pattern(fnext, v) {
        Ok(pat) if pat.iter().any(|&d| d > 1) => Ok(Some(pat)),
        _ => Ok(None),
    }
}

/// Smallest prime `v <= cap` witnessing A3; the pattern of `F_(i+1)` is reported for information.
pub fn check_a3(fi: &ZPoly, fnext: &ZPoly, cap: u64) -> Result<CheckEntry> {
    let mut v = 2;
    while v <= cap {
        if let Some(pat) = a3_holds(fi, fnext, v)? {
            let quad = pat.iter().all(|&d| d <= 2);
            return Ok(CheckEntry::new("A3", Status::Pass, vec![v.to_string(), format!("quadratic={quad}")]));
        }
        v = next_prime_u64(v + 1);
    }
    Ok(CheckEntry::new("A3", Status::Fail, vec![format!("unknown:cap={cap}")]))
}

pub fn verify_a3_witness(fi: &ZPoly, fnext: &ZPoly, v: u64) -> Result<bool> {
    Ok(is_prime_u64(v) && a3_holds(fi, fnext, v)?.is_some())
}

/// Interpolates integer values at `x = 1..=n` to a polynomial of degree `< n`.
fn interpolate(values: &[BigInt]) -> Result<ZPoly> {
    let n = values.len();
    let mut dd: Vec<BigRational> = values.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(k));
        }
    }
    // Newton form at nodes 1..n, expanded by Horner
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let node = BigRational::from_integer(BigInt::from(i + 1));
        let mut next = vec![BigRational::zero(); n];
        for (j, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += c;
            }
            next[j] -= c * &node;
        }
        next[0] += &dd[i];
        acc = next;
    }
    let mut out = Vec::with_capacity(n);
    for c in acc {
        if !c.is_integer() {
            return Err(Error::NotRational);
        }
        out.push(c.to_integer());
    }
    Ok(ZPoly::from_bigints(out))
}

/// `Res_y(D(y), D(xy)) / (x - 1)^deg D`, by interpolation at `x = 1..=d^2 + 1`.
pub fn build_qi(delta: &ZPoly) -> Result<ZPoly> {
    let d = delta.degree().ok_or(Error::ZeroPolynomial)?;
    if delta.coeffs()[0].is_zero() {
        return Err(Error::Invalid("D(0) must be nonzero".into()));
    }
    if !delta.gcd_z(&delta.derivative())?.degree().is_some_and(|g| g == 0) {
        return Err(Error::NotSquarefree);
    }
    if d == 0 {
        return Ok(ZPoly::from_ints(&[1]));
    }
    let mut vals = Vec::with_capacity(d * d + 1);
    for x0 in 1..=(d * d + 1) as u64 {
        let scaled: Vec<BigInt> =
            delta.coeffs().iter().enumerate().map(|(i, c)| c * num_traits::pow(BigInt::from(x0), i)).collect();
        vals.push(resultant(delta, &ZPoly::from_bigints(scaled))?);
    }
    let mut q = interpolate(&vals)?;
    let xm1 = ZPoly::from_ints(&[-1, 1]);
    for _ in 0..d {
        q = q.div_exact(&xm1)?.ok_or_else(|| Error::Invalid("resultant is not divisible by (x-1)^deg".into()))?;
    }
    Ok(q)
}

/// Minimal polynomial of the Gaussian period over the subgroup of index `2^j` in `(Z/l)^*`.
pub fn kappa_minpoly(ell: u64, j: u32) -> Result<ZPoly> {
    let l = ell as usize;
    if !is_prime_u64(ell) || ell == 2 {
        return Err(Error::InvalidEll(ell));
    }
    let idx = 1u64 << j;
    if (ell - 1) % idx != 0 {
        return Err(Error::Invalid(format!("2^{j} does not divide {}", ell - 1)));
    }
    let g = (2..ell).find(|&g| (1..ell - 1).all(|e| (ell - 1) % e != 0 || powmod_u64(g, e, ell) != 1)).unwrap();
    // periods as elements of Z[C_l]
    let periods: Vec<Vec<BigInt>> = (0..idx)
        .map(|k| {
            let mut v = vec![BigInt::zero(); l];
            let mut h = powmod_u64(g, k, ell);
            let step = powmod_u64(g, idx, ell);
            for _ in 0..(ell - 1) / idx {
                v[h as usize] += 1;
                h = h * step % ell;
            }
            v
        })
        .collect();
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); l];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    c[(i + k) % l] += x * y;
                }
            }
        }
        c
    };
    // e_k of the periods
    let mut e: Vec<Vec<BigInt>> = vec![{
        let mut one = vec![BigInt::zero(); l];
        one[0] = BigInt::one();
        one
    }];
    for p in &periods {
        let mut next = e.clone();
        next.push(vec![BigInt::zero(); l]);
        for i in 1..=e.len() {
            let t = mul(&e[i - 1], p);
            for (a, b) in next[i].iter_mut().zip(t) {
                *a += b;
            }
        }
        e = next;
    }
    let deg = idx as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (k, ek) in e.iter().enumerate() {
        // rational elements of Z[zeta] are c_0 + c (1 + zeta + ...) with all c_i, i > 0, equal
        if ek[1..].iter().any(|c| *c != ek[1]) {
            return Err(Error::NotRational);
        }
        let val = &ek[0] - &ek[1];
        coeffs[deg - k] = if k % 2 == 0 { val } else { -val };
    }
    Ok(ZPoly::from_bigints(coeffs))
}

fn is_nonsquare_mod(v: u64, ell: u64) -> bool {
    v % ell != 0 && powmod_u64(v % ell, (ell - 1) / 2, ell) != 1
}

fn a2_noncontainment_holds(r: &ZPoly, ell: u64, j: u32, v: u64) -> Result<bool> {
    if v == ell || !is_nonsquare_mod(v, ell) {
        return Ok(false);
    }
    let m = 1usize << (j + 1);
    match degree_pattern(r, v) {
        Ok(pat) => Ok(pat.iter().any(|d| d % m != 0)),
        Err(_) => Ok(false),
    }
}

/// Searches `v` with full-order image in `(Z/l)^* ⊗ Z/2^(j+1)` (a non-square mod `l`) at which
/// `R` is squarefree with some factor degree not divisible by `2^(j+1)`.
pub fn check_a2_noncontainment(r: &ZPoly, ell: u64, j: u32, cap: u64) -> Result<CheckEntry> {
    if (ell - 1) % (1 << (j + 1)) != 0 {
        return Err(Error::Invalid(format!("2^{} does not divide l - 1", j + 1)));
    }
    let mut v = 2;
    while v <= cap {
        if a2_noncontainment_holds(r, ell, j, v)? {
            return Ok(CheckEntry::new("A2_noncontainment", Status::Pass, vec![v.to_string()]));
        }
        v = next_prime_u64(v + 1);
    }
    Ok(CheckEntry::new("A2_noncontainment", Status::Fail, vec![format!("unknown:cap={cap}")]))
}

pub fn verify_a2_noncontainment(r: &ZPoly, ell: u64, j: u32, v: u64) -> Result<bool> {
    Ok(is_prime_u64(v) && a2_noncontainment_holds(r, ell, j, v)?)
}

/// An element `num / den` of `Q[x]/P` with `num` an integer polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraRoot {
    pub num: ZPoly,
    pub den: BigInt,
}

impl fmt::Display for AlgebraRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

/// Exact test `m(num/den) = 0` in `Q[x]/P` for monic `P`.
pub fn is_root_in_algebra(m: &ZPoly, root: &AlgebraRoot, p: &ZPoly) -> Result<bool> {
    let deg = m.degree().ok_or(Error::ZeroPolynomial)?;
    let mut acc = ZPoly::from_ints(&[0]);
    let mut pw = ZPoly::from_ints(&[1]);
    for (i, c) in m.coeffs().iter().enumerate() {
        let scale = c * num_traits::pow(root.den.clone(), deg - i);
        acc = &acc + &pw.scale(&scale);
        pw = (&pw * &root.num).rem(p)?;
    }
    Ok(acc.rem(p)?.is_zero())
}

/// Monic `P~(z) = lc^(d-1) P(z / lc)`, so that `z = lc x`.
fn monic_model(p: &ZPoly) -> ZPoly {
    let d = p.degree().unwrap();
    let lc = p.lc().unwrap().clone();
    let c = p.coeffs().iter().enumerate().map(|(i, a)| if i == d { BigInt::one() } else { a * num_traits::pow(lc.clone(), d - 1 - i) }).collect();
    ZPoly::from_bigints(c)
}

/// Inverse of `a` modulo `(f, q)` for a squarefree `f` mod `q`.
fn inverse_mod_q(a: &FpPoly, f: &FpPoly) -> Result<FpPoly> {
    let (g, s, _) = a.xgcd(f)?;
    if g.degree() != Some(0) {
        return Err(Error::Invalid("element is not a unit".into()));
    }
    Ok(s)
}

fn fp_to_z(a: &FpPoly) -> ZPoly {
    ZPoly::from_bigints(a.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// Newton lift of a simple root `y0` of `m` from `A/q` to `A/q^k`.
fn hensel_root(m: &ZPoly, pm: &ZPoly, y0: &FpPoly, q: u64, k: u32) -> Result<crate::arith::AlgElem> {
    let fq = Zmod64::new(q)?;
    let pbar = pm.reduce_mod64(fq);
    let md = m.derivative();
    let d0 = md.reduce_mod64(fq).compose(y0).rem(&pbar)?;
    let w0 = inverse_mod_q(&d0, &pbar)?;
    let mut y = fp_to_z(y0);
    let mut w = fp_to_z(&w0);
    let mut prec = 1u32;
    let top = ModAlgebra::new(pm, &num_traits::pow(BigInt::from(q), k as usize))?;
    while prec < k {
        prec = (2 * prec).min(k);
        let alg = top.with_modulus(&num_traits::pow(BigInt::from(q), prec as usize))?;
        let ya = alg.from_poly(&y);
        let wa = alg.from_poly(&w);
        let ya = alg.sub(&ya, &alg.mul(&alg.eval_poly(m, &ya), &wa));
        let dy = alg.eval_poly(&md, &ya);
        let wa = alg.mul(&wa, &alg.sub(&alg.constant(&BigInt::from(2)), &alg.mul(&dy, &wa)));
        y = alg.to_poly(&ya);
        w = alg.to_poly(&wa);
    }
    Ok(top.from_poly(&y))
}

/// Coordinates of an algebra element mod `q^k` reconstructed as rationals with common denominator.
fn reconstruct_root(coords: &[BigUint], qk: &BigInt) -> Option<AlgebraRoot> {
    let mut parts = Vec::with_capacity(coords.len());
    for c in coords {
        parts.push(rational_reconstruct(&BigInt::from(c.clone()), qk)?);
    }
    let den = parts.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
    let num = parts.iter().map(|(n, d)| n * (&den / d)).collect();
    Some(AlgebraRoot { num: ZPoly::from_bigints(num), den })
}

const A2_COMBO_CAP: usize = 4096;

/// Finds `2^(j+1)` exact roots of the `kappa_(j+1)` period polynomial in `Q[x]/R(x^2)`.
///
/// Roots are found mod a prime `q` component by component, lifted, reconstructed and
/// verified exactly. For non-monic `R(x^2)` roots are expressed in `z = lc x`.
pub fn check_a2_containment(r: &ZPoly, ell: u64, j: u32) -> Result<CheckEntry> {
    check_a2_containment_seeded(r, ell, j, DEFAULT_SEED)
}

/// [`check_a2_containment`] with an explicit seed for the modular factorizations.
pub fn check_a2_containment_seeded(r: &ZPoly, ell: u64, j: u32, seed: u64) -> Result<CheckEntry> {
    let name = "A2_containment";
    let m = kappa_minpoly(ell, j + 1)?;
    let s = 1usize << (j + 1);
    let x2 = ZPoly::from_ints(&[0, 0, 1]);
    let p = monic_model(&r.compose(&x2));
    if s > p.degree().unwrap_or(0) {
        return Ok(CheckEntry::new(name, Status::Fail, vec!["degree".into()]));
    }
    // good prime: P squarefree, m split and squarefree; fewest components among the first few
    let mut best: Option<(usize, u64)> = None;
    let mut q = 3u64;
    let mut tried = 0;
    while tried < 30 && q < 1_000_000 {
        if q != ell {
            let fq = field(q)?;
            let pq = p.reduce_mod64(fq);
            let mq = reduce_checked(&m, fq)?;
            if pq.is_squarefree()? && totally_split_fp(&mq)? {
                let comps = factor_mod_p_seeded(&p, q, seed)?.factors.len();
                if best.is_none_or(|(c, _)| comps < c) {
                    best = Some((comps, q));
                }
                tried += 1;
            }
        }
        q = next_prime_u64(q + 1);
    }
    let (comps, q) = best.ok_or_else(|| Error::SearchCapExceeded(1_000_000))?;
    if s.checked_pow(comps as u32).is_none_or(|c| c > A2_COMBO_CAP) {
        return Ok(CheckEntry::new(name, Status::Fail, vec![format!("unknown:components={comps}")]));
    }
    let fq = Zmod64::new(q)?;
    let pbar = p.reduce_mod64(fq);
    let comps: Vec<FpPoly> = factor_mod_p_seeded(&p, q, seed)?.factors.into_iter().map(|(g, _)| g).collect();
    let roots: Vec<u64> = factor_mod_p_seeded(&m, q, seed)?.factors.iter().map(|(g, _)| (q - g.coeffs()[0]) % q).collect();
    // idempotents e_i = 1 mod g_i, 0 mod g_k
    let mut idem = Vec::with_capacity(comps.len());
    for g in &comps {
        let co = pbar.divrem(g)?.0;
        let inv = inverse_mod_q(&co.rem(g)?, g)?;
        idem.push((&co * &inv).rem(&pbar)?);
    }
    let mut found: Vec<AlgebraRoot> = Vec::new();
    let total = s.pow(comps.len() as u32);
    let k0 = (128.0 / (q as f64).log2()).ceil() as u32 + 1;
    'combo: for code in 0..total {
        let mut y0 = Poly::zero(fq);
        let mut c = code;
        for e in &idem {
            let rho = roots[c % s];
            c /= s;
            y0 = &y0 + &e.scale(&rho);
        }
        for k in [k0, 2 * k0, 4 * k0] {
            let y = hensel_root(&m, &p, &y0, q, k)?;
            let qk = num_traits::pow(BigInt::from(q), k as usize);
            if let Some(root) = reconstruct_root(&y, &qk) {
                if is_root_in_algebra(&m, &root, &p)? {
                    if !found.contains(&root) {
                        found.push(root);
                    }
                    if found.len() == s {
                        break 'combo;
                    }
                    continue 'combo;
                }
            }
        }
    }
    let w: Vec<String> = found.iter().map(|r| r.to_string()).collect();
    let st = if found.len() == s { Status::Pass } else { Status::Fail };
    Ok(CheckEntry::new(name, st, w))
}

/// `prod (x - sum of roots in fiber)` with integer coefficients, from roots `r_j = sigma^j(t)`
/// of `F` at an inert prime `p`. Fibers list root indices.
pub fn trace_down_fibers(f: &ZPoly, p: u64, fibers: &[Vec<usize>]) -> Result<ZPoly> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let fsize = fibers.iter().map(|v| v.len()).max().unwrap_or(0);
    if fibers.iter().map(|v| v.len()).sum::<usize>() != n {
        return Err(Error::Invalid("fibers must partition the roots".into()));
    }
    let b = root_modulus_bound(f)?;
    let zb = ceil_rational(&(b * BigRational::from_integer(BigInt::from(fsize))));
    let bounds = coefficient_bounds(fibers.len(), &zb);
    let bmax = bounds.iter().max().unwrap().clone();
    let mut k = 1u32;
    let pb = BigInt::from(p);
    let mut pk = pb.clone();
    while pk <= &bmax * 2u32 {
        pk *= &pb;
        k += 1;
    }
    let ext = UnramExt::new(f, p, k)?;
    let alg = ext.algebra();
    let roots = ext.roots_cycle()?;
    let sums: Vec<_> = fibers
        .iter()
        .map(|fib| fib.iter().fold(alg.zero(), |acc, &i| alg.add(&acc, &roots[i])))
        .collect();
    let e = elementary_symmetric(alg, &sums);
    let d = fibers.len();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for (i, ei) in e.iter().enumerate() {
        if !is_scalar(ei) {
            return Err(Error::BoundExceeded { index: d - i });
        }
        let v = symmetric_mod(&scalar_value(ei), &pk);
        let v = if i % 2 == 0 { v } else { -v };
        if v.abs() > bounds[d - i] {
            return Err(Error::BoundExceeded { index: d - i });
        }
        coeffs[d - i] = v;
    }
    Ok(ZPoly::from_bigints(coeffs))
}

/// Traces `F_level` down to level `level - 1` along `V_level -> V_(level-1)`.
pub fn trace_down(f: &ZPoly, ell: u32, level: u32, idx: &Indexation, p: u64) -> Result<ZPoly> {
    if level == 0 {
        return Err(Error::Invalid("level 0 has nothing below it".into()));
    }
    let upper = QuotientGroup::level(ell, level)?;
    let lower = QuotientGroup::level(ell, level - 1)?;
    let mut fibers = vec![Vec::new(); lower.num_points()];
    for w in 0..upper.num_points() {
        let below = lower.point_index(upper.point(w)).expect("nonzero vector");
        fibers[below].push(idx.root_of_point[w] as usize);
    }
    trace_down_fibers(f, p, &fibers)
}

/// Compares lifted traces of the table with the oracle at good primes `v <= cap` with nonzero
/// trace until their images span `(Z/N)^* ⊗ Z/2^r` with `N = l` (level one).
pub fn certify_twist(table: &ResolventTable, oracle: &Oracle, cap: u64) -> Result<CheckEntry> {
    let ell = table.ell as u64;
    let e = 1u64 << table.r;
    let cap = cap.min(oracle.truncation() as u64 - 1);
    let mut used: Vec<u64> = Vec::new();
    let mut v = 2u64;
    while v <= cap {
        if v != ell {
            match table.trace_at(&BigInt::from(v)) {
                Ok(t) if t != 0 => {
                    let want = oracle.a_mod(v as usize, ell, table.embedding)?;
                    if want != t as u64 {
                        return Ok(CheckEntry::new("twist", Status::Fail, vec![format!("{v}:table={t}:oracle={want}")]));
                    }
                    used.push(v);
                    if spans_unit_group(ell, e, &used) {
                        return Ok(CheckEntry::new("twist", Status::Pass, used.iter().map(|v| v.to_string()).collect()));
                    }
                }
                Ok(_) | Err(Error::AmbiguousClass(_)) | Err(Error::BadPrime(_)) | Err(Error::NoClass) => {}
                Err(Error::DeterminantMismatch(d)) => {
                    return Ok(CheckEntry::new("twist", Status::Fail, vec![format!("{v}:det={d}")]));
                }
                Err(err) => return Err(err),
            }
        }
        v = next_prime_u64(v + 1);
    }
    let w = used.iter().map(|v| v.to_string()).chain(std::iter::once(format!("cap={cap}"))).collect();
    Ok(CheckEntry::new("twist", Status::Skipped, w))
}

pub fn verify_twist_witness(table: &ResolventTable, oracle: &Oracle, primes: &[u64]) -> Result<bool> {
    let ell = table.ell as u64;
    for &v in primes {
        let t = table.trace_at(&BigInt::from(v))?;
        if t == 0 || oracle.a_mod(v as usize, ell, table.embedding)? != t as u64 {
            return Ok(false);
        }
    }
    Ok(spans_unit_group(ell, 1 << table.r, primes))
}

/// Frobenius at `v` has order 2 in the projective image: factor degrees in `{1, 2}`, some 2.
pub fn projective_order2_test(f0: &ZPoly, v: u64) -> Result<bool> {
    let pat = degree_pattern(f0, v)?;
    Ok(pattern_is_order2(&pat))
}

pub fn pattern_is_order2(pat: &[usize]) -> bool {
    pat.iter().all(|&d| d <= 2) && pat.contains(&2)
}

fn entry_or_fail(name: &str, r: Result<CheckEntry>) -> CheckEntry {
    r.unwrap_or_else(|e| CheckEntry::new(name, Status::Fail, vec![format!("error:{}", e.to_string().replace(' ', "_"))]))
}

/// Sanity checks and A1 for one data file; engine errors become failing entries.
pub fn checklist(data: &RepData, cap: u64) -> CertReport {
    let f = &data.poly;
    let ell = data.ell as u64;
    let (a, b) = rayon::join(
        || vec![entry_or_fail("sanity_disc", sanity_disc(f, ell)), entry_or_fail("sanity_real_roots", sanity_real_roots(f, data.ell, data.r))],
        || entry_or_fail("A1", check_a1(f, ell, data.level(), data.r, cap)),
    );
    let mut rep = CertReport::default();
    a.into_iter().for_each(|e| rep.push(e));
    rep.push(b);
    rep
}

/// Twist elimination plus, when the level below is given, the A3 search from it to `F_r`.
pub fn certify_table(table: &ResolventTable, oracle: &Oracle, below: Option<&ZPoly>, cap: u64) -> CertReport {
    let mut rep = CertReport::default();
    rep.push(entry_or_fail("twist", certify_twist(table, oracle, cap)));
    if let Some(fi) = below {
        rep.push(entry_or_fail("A3", check_a3(fi, &table.poly, cap)));
    }
    rep
}

/// A2 for a synthetic `Delta`: every irreducible factor `R` of `Q` must pass either the
/// non-containment or the containment test.
pub fn check_a2(delta: &ZPoly, ell: u64, j: u32, cap: u64, seed: u64) -> Result<CertReport> {
    let q = build_qi(delta)?;
    let fac = crate::factor::zassenhaus::factor_over_z(&q)?;
    let mut rep = CertReport::default();
    for (r, _) in &fac.factors {
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let non = check_a2_noncontainment(r, ell, j, cap)?;
        if non.status == Status::Pass {
            rep.push(CheckEntry::new("A2", Status::Pass, std::iter::once(format!("R={r}")).chain(non.witnesses.into_iter().map(|w| format!("v={w}"))).collect()));
            continue;
        }
        let con = check_a2_containment_seeded(r, ell, j, seed)?;
        let w = std::iter::once(format!("R={r}")).chain(con.witnesses).collect();
        rep.push(CheckEntry::new("A2", con.status, w));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(c: &[i64]) -> ZPoly {
        ZPoly::from_ints(c)
    }

    #[test]
    fn disc_classification() {
        let e = disc_entry(&BigInt::from(-11 * 11 * 11 * 49), 11, 24).unwrap();
        assert_eq!(e.status, Status::Pass);
        assert_eq!(e.witnesses, vec!["sign=-1", "a=3", "M=7"]);
        let e = disc_entry(&BigInt::from(12), 11, 24).unwrap();
        assert_eq!(e.status, Status::Fail);
        assert_eq!(e.witnesses, vec!["obstruction=3"]);
    }

    #[test]
    fn real_roots_of_totally_real_polynomial_fail() {
        // (x-1)(x-2)(x-3)(x-4)(x-5)(x-6)
        let mut f = zp(&[1]);
        for i in 1..=6 {
            f = &f * &zp(&[-i, 1]);
        }
        assert_eq!(sanity_real_roots(&f, 5, 0).unwrap().status, Status::Fail);
        // x^6 + 1 has no real root but P^1(F_5) needs two
        assert_eq!(sanity_real_roots(&zp(&[-2, 0, 0, 0, 0, 0, 1]), 5, 0).unwrap().status, Status::Pass);
    }

    #[test]
    fn unit_group_spans() {
        assert!(spans_unit_group(8, 2, &[3, 5]));
        assert!(!spans_unit_group(8, 2, &[3]));
        assert!(!spans_unit_group(8, 2, &[]));
        assert!(spans_unit_group(11, 2, &[2]));
        assert!(!spans_unit_group(11, 2, &[3]));
    }

    #[test]
    fn a3_examples() {
        let e = check_a3(&zp(&[1, 0, 1]), &zp(&[1, 0, 0, 0, 1]), 1000).unwrap();
        assert_eq!(e.status, Status::Pass);
        assert_eq!(e.witnesses[0], "5");
        assert!(verify_a3_witness(&zp(&[1, 0, 1]), &zp(&[1, 0, 0, 0, 1]), 5).unwrap());
        assert_eq!(check_a3(&zp(&[-1, 1]), &zp(&[1, 0, 1]), 1000).unwrap().witnesses[0], "3");
        let f = zp(&[1, 0, 1]);
        assert_eq!(check_a3(&f, &f, 500).unwrap().status, Status::Fail);
    }

    #[test]
    fn qi_examples() {
        assert_eq!(build_qi(&zp(&[-2, 0, 1])).unwrap(), zp(&[4, 8, 4]));
        assert_eq!(build_qi(&zp(&[-3, 1])).unwrap().degree(), Some(0));
        let q = build_qi(&zp(&[-1, -1, 1])).unwrap();
        assert_eq!(q.degree(), Some(2));
        // ratios of phi and -1/phi: roots -phi^2 and -1/phi^2 give x^2 + 3x + 1 up to the leading constant
        assert_eq!(q.primitive_part(), zp(&[1, 3, 1]));
        assert!(build_qi(&zp(&[0, 1, 1])).is_err());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_minpoly(5, 1).unwrap(), zp(&[-1, 1, 1]));
        assert_eq!(kappa_minpoly(11, 1).unwrap(), zp(&[3, 1, 1]));
        assert_eq!(kappa_minpoly(7, 0).unwrap(), zp(&[1, 1]));
        assert!(kappa_minpoly(11, 2).is_err());
        // Q(zeta_13) has a cyclic quartic subfield; its period polynomial has discriminant divisible by 13
        let k = kappa_minpoly(13, 2).unwrap();
        assert_eq!(k.degree(), Some(4));
        assert!((discriminant(&k).unwrap() % BigInt::from(13)).is_zero());
    }

    #[test]
    fn a2_noncontainment_examples() {
        let e = check_a2_noncontainment(&zp(&[-2, 0, 1]), 5, 0, 1000).unwrap();
        assert_eq!((e.status, e.witnesses[0].as_str()), (Status::Pass, "7"));
        assert!(verify_a2_noncontainment(&zp(&[-2, 0, 1]), 5, 0, 7).unwrap());
        assert_eq!(check_a2_noncontainment(&zp(&[-1, -1, 1]), 5, 0, 2000).unwrap().status, Status::Fail);
        assert_eq!(check_a2_noncontainment(&zp(&[3, 1]), 5, 0, 100).unwrap().status, Status::Pass);
    }

    #[test]
    fn a2_containment_examples() {
        let e = check_a2_containment(&zp(&[-5, 0, 1]), 5, 0).unwrap();
        assert_eq!(e.status, Status::Pass);
        let p = zp(&[-5, 0, 0, 0, 1]);
        let m = kappa_minpoly(5, 1).unwrap();
        let mut roots = e.witnesses.clone();
        roots.sort();
        for r in [AlgebraRoot { num: zp(&[-1, 0, 1]), den: BigInt::from(2) }, AlgebraRoot { num: zp(&[-1, 0, -1]), den: BigInt::from(2) }] {
            assert!(is_root_in_algebra(&m, &r, &p).unwrap());
            assert!(roots.contains(&r.to_string()));
        }
        assert_eq!(check_a2_containment(&zp(&[-2, 0, 1]), 5, 0).unwrap().status, Status::Fail);
        // 2^(j+1) = 8 roots cannot fit in a degree 4 algebra
        let e = check_a2_containment(&zp(&[-5, 0, 1]), 17, 2).unwrap();
        assert_eq!(e.status, Status::Fail);
    }

    #[test]
    fn containment_and_noncontainment_exclusive() {
        for r in [zp(&[-5, 0, 1]), zp(&[-2, 1]), zp(&[-1, -1, 1]), zp(&[-2, 0, 1]), zp(&[-3, 0, 1])] {
            let a = check_a2_containment(&r, 5, 0).unwrap().status;
            let b = check_a2_noncontainment(&r, 5, 0, 3000).unwrap().status;
            assert!(!(a == Status::Pass && b == Status::Pass), "{r}");
        }
    }

    #[test]
    fn trace_down_cyclotomic() {
        let f = zp(&[1, 1, 1, 1, 1]);
        // 3 is inert; r_j = zeta^(3^j): z, z^3, z^4, z^2
        let good = trace_down_fibers(&f, 3, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(good, zp(&[-1, 1, 1]));
        assert!(matches!(trace_down_fibers(&f, 3, &[vec![0, 1], vec![2, 3]]), Err(Error::BoundExceeded { .. })));
        assert_eq!(trace_down_fibers(&zp(&[1, 1, 1]), 5, &[vec![0, 1]]).unwrap(), zp(&[1, 1]));
    }

    #[test]
    fn order2_patterns() {
        assert!(pattern_is_order2(&[1, 1, 2, 2]));
        assert!(!pattern_is_order2(&[3, 1]));
        assert!(!pattern_is_order2(&[1, 1, 1]));
        // x^2 + 1 mod 3 is irreducible: Frobenius swaps the two roots
        assert!(projective_order2_test(&zp(&[1, 0, 1]), 3).unwrap());
    }
}
