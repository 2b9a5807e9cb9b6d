//! Frobenius classes from integer class resolvents built on p-adic roots.
//!
//! Roots of `F_r` live in the unramified extension of `Q_p` of degree `n`,
//! where Frobenius at `p` cycles them. An indexation matches points of
//! `V / S_r` with roots so that a chosen n-cycle `Phi` of `GL2/S_r` acts as
//! Frobenius. For each conjugacy class `C` the resolvent
//! `Gamma_C(x) = prod_{g in C} (x - theta_g)`, `theta_g = sum_w h(r_w) r_{g w}`,
//! then has integer coefficients, and `Gamma_C(Tr(h(x) x^v)) = 0 mod v`
//! singles out the class of Frobenius at `v`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::bounds::{ceil_rational, root_modulus_bound};
use crate::arith::int::{is_prime_u64, modinv, next_prime_u64, powmod_u64, symmetric_mod};
use crate::arith::kron::mul_unsigned;
use crate::arith::{AlgElem, IntegersMod, ModAlgebra, ZPoly, Zmod64};
use crate::data::{tokens_by_line, RepData};
use crate::error::{Error, Result};
use crate::factor::finite::{is_irreducible_fp, mod_u64, reduce_checked};
use crate::gl2::{factored_minpoly, lift_rep_by_det, mat_det, Gl2Class, Mat, QuotClass, QuotientGroup, SubgroupS};
use crate::modforms::Embedding;
use crate::padic::UnramExt;

pub const TABLE_HEADER: &str = "GALREP-RESOLVENT v1";

/// Smallest prime `p >= floor` with `F` irreducible mod `p`, testing at most `cap` primes.
pub fn select_inert_prime(f: &ZPoly, floor: u64, cap: u64) -> Result<u64> {
    match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(d) if d < 2 => return Err(Error::Invalid("inert primes need degree at least 2".into())),
        _ => {}
    }
    let mut p = next_prime_u64(floor.max(3));
    for _ in 0..cap {
        let fp = Zmod64::new(p)?;
        let g = reduce_checked(f, fp);
        if let Ok(g) = g {
            if g.degree() == f.degree() && is_irreducible_fp(&g)? {
                return Ok(p);
            }
        }
        p = next_prime_u64(p + 1);
    }
    Err(Error::SearchCapExceeded(cap))
}

/// Matching of points of `V / S_r` with the roots `r_j = sigma^j(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indexation {
    /// Element of the quotient group acting as Frobenius at `p`.
    pub phi: usize,
    pub phi_mat: Mat,
    /// `root_of_point[Phi^m(base)] = m`.
    pub root_of_point: Vec<u32>,
}

impl Indexation {
    pub fn new(g: &QuotientGroup, phi: usize) -> Result<Self> {
        let n = g.num_points();
        let mut root_of_point = vec![u32::MAX; n];
        let mut w = g.base_point();
        for m in 0..n {
            if root_of_point[w] != u32::MAX {
                return Err(Error::Invalid("candidate is not an n-cycle".into()));
            }
            root_of_point[w] = m as u32;
            w = g.act(phi, w);
        }
        Ok(Indexation { phi, phi_mat: g.elem(phi), root_of_point })
    }

    /// `j -> index of root at g(point with root j)`, as a permutation of root indices.
    pub fn root_perm(&self, g: &QuotientGroup, elem: usize) -> Vec<u32> {
        let n = self.root_of_point.len();
        let mut out = vec![0u32; n];
        for w in 0..n {
            out[self.root_of_point[w] as usize] = self.root_of_point[g.act(elem, w)];
        }
        out
    }
}

/// One indexation per conjugacy class of n-cycles in `GL2/S_r`.
///
/// Relabelling by a group element or by a power of `Phi` leaves every
/// `Gamma_C` unchanged, so classes of `Phi` exhaust the distinct outcomes.
pub fn candidate_indexations(g: &QuotientGroup, classes: &[QuotClass]) -> Result<Vec<Indexation>> {
    let mut seen = vec![false; classes.len()];
    let mut out = Vec::new();
    for phi in g.cyclic_candidates() {
        let c = g.class_of(classes, phi);
        if !seen[c] {
            seen[c] = true;
            out.push(Indexation::new(g, phi)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Invalid("no element acts as an n-cycle".into()));
    }
    Ok(out)
}

/// `X = ceil(n B_h B)` bounding every `|theta_g|`, with `B` a root bound of `F` and `B_h = sum |h_i| B^i`.
pub fn theta_bound(f: &ZPoly, h: &ZPoly) -> Result<BigInt> {
    let b = root_modulus_bound(f)?;
    let mut bh = BigRational::zero();
    let mut bi = BigRational::one();
    for c in h.coeffs() {
        bh += BigRational::from_integer(c.abs()) * &bi;
        bi *= &b;
    }
    let n = BigRational::from_integer(BigInt::from(f.degree().unwrap()));
    Ok(ceil_rational(&(n * bh * b)))
}

/// Keeps candidates whose class power sums `sum_{g in C} theta_g^k mod p`, `k = 1, 2`,
/// have symmetric residues within `|C| X^k` for every class `C`.
///
/// These sums are fixed by Frobenius for any candidate, so they always lie in `F_p`;
/// only their size separates the true indexation. The first sum depends on the
/// class only through its size and type, so the second one does the work.
pub fn integrality_filter(
    g: &QuotientGroup,
    classes: &[QuotClass],
    cands: &[Indexation],
    f: &ZPoly,
    h: &ZPoly,
    p: u64,
    x_bound: &BigInt,
) -> Result<Vec<Indexation>> {
    if h.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("h must be non-constant".into()));
    }
    let ext = UnramExt::new(f, p, 1)?;
    let roots = ext.roots_cycle()?;
    let pb = BigInt::from(p);
    let x2 = x_bound * x_bound;
    let mut survivors = Vec::new();
    for idx in cands {
        let ctx = BuildCtx::new(g, idx, ext.algebra(), &roots, h);
        let mut ok = true;
        for c in classes {
            let ps = ctx.class_power_sums(c, 2)?;
            if symmetric_mod(&ps[0], &pb).abs() > x_bound * c.size || symmetric_mod(&ps[1], &pb).abs() > &x2 * c.size {
                ok = false;
                break;
            }
        }
        if ok {
            survivors.push(idx.clone());
        }
    }
    if survivors.is_empty() {
        return Err(Error::NoSurvivors);
    }
    Ok(survivors)
}

/// Bound `C(size, j) X^(size - j)` on the coefficient of `x^j` in a resolvent of degree `size`.
pub fn coefficient_bounds(size: usize, x: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); size + 1];
    let mut binom = BigInt::one();
    let mut xp = BigInt::one();
    // j runs downward so that X^(size - j) grows by one factor per step
    for j in (0..=size).rev() {
        out[j] = &binom * &xp;
        binom = binom * (j as u64) / (size - j + 1) as u64;
        xp *= x;
    }
    out
}

/// Precision choice for a given inert prime and theta bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPlan {
    pub x_bound: BigInt,
    /// `B_Gamma`: largest coefficient bound over all classes.
    pub bound: BigInt,
    pub k: u32,
}

pub fn precision_plan(class_sizes: &[usize], x_bound: &BigInt, p: u64, slack_bits: u32) -> PrecisionPlan {
    let bound = class_sizes
        .iter()
        .flat_map(|&s| coefficient_bounds(s, x_bound))
        .max()
        .unwrap_or_else(BigInt::zero);
    let target = (&bound * 2u32) << slack_bits;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= target {
        pk *= &pb;
        k += 1;
    }
    PrecisionPlan { x_bound: x_bound.clone(), bound, k }
}

/// Stored data of one conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableClass {
    pub trace_class: u32,
    pub det_class: u32,
    pub size: usize,
    pub rep: Mat,
    /// Ascending integer coefficients of `Gamma_C`.
    pub gamma: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResolventTable {
    pub ell: u32,
    pub weight: u32,
    pub r: u32,
    pub form: String,
    pub embedding: Option<Embedding>,
    pub p: u64,
    pub k: u32,
    pub h: ZPoly,
    pub phi: Mat,
    pub bound: BigInt,
    pub poly: ZPoly,
    pub classes: Vec<TableClass>,
}

/// Monic polynomial with the given power sums `p_1..p_m`, ascending, over `Z/m`.
fn newton_from_power_sums(ps: &[BigInt], m: &BigInt) -> Result<Vec<BigInt>> {
    let deg = ps.len();
    let mut e = vec![BigInt::one()];
    for k in 1..=deg {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let t = &e[k - i] * &ps[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let kinv = modinv(&BigInt::from(k), m).ok_or_else(|| Error::BadModulus(m.to_string()))?;
        e.push((acc * kinv).mod_floor(m));
    }
    let mut c = vec![BigInt::zero(); deg + 1];
    for (k, ek) in e.into_iter().enumerate() {
        c[deg - k] = if k % 2 == 0 { ek } else { (-ek).mod_floor(m) };
    }
    Ok(c)
}

fn product_mod(mut polys: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<BigInt> {
    if polys.is_empty() {
        return vec![BigInt::one()];
    }
    while polys.len() > 1 {
        let mut next = Vec::with_capacity(polys.len().div_ceil(2));
        let mut it = polys.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => {
                    let au: Vec<BigUint> = a.iter().map(|x| x.to_biguint().unwrap()).collect();
                    let bu: Vec<BigUint> = b.iter().map(|x| x.to_biguint().unwrap()).collect();
                    next.push(mul_unsigned(&au, &bu).into_iter().map(|x| BigInt::from(x).mod_floor(m)).collect());
                }
                None => next.push(a),
            }
        }
        polys = next;
    }
    polys.pop().unwrap()
}

/// Shared read-only data for building all class resolvents of one indexation.
struct BuildCtx<'a> {
    g: &'a QuotientGroup,
    idx: &'a Indexation,
    alg: &'a ModAlgebra,
    words: usize,
    hr: Vec<BigUint>,
    rp: Vec<BigUint>,
}

impl<'a> BuildCtx<'a> {
    fn new(g: &'a QuotientGroup, idx: &'a Indexation, alg: &'a ModAlgebra, roots: &[AlgElem], h: &ZPoly) -> Self {
        let words = alg.dot_words(roots.len());
        let hr = roots.par_iter().map(|r| alg.pack(&alg.eval_poly(h, r), words)).collect();
        let rp = roots.iter().map(|r| alg.pack(r, words)).collect();
        BuildCtx { g, idx, alg, words, hr, rp }
    }

    fn theta(&self, elem: usize) -> AlgElem {
        let perm = self.idx.root_perm(self.g, elem);
        let mut acc = BigUint::zero();
        for (a, &b) in perm.iter().enumerate() {
            acc += &self.hr[a] * &self.rp[b as usize];
        }
        self.alg.unpack_reduce(&acc, self.words)
    }

    /// Orbits of `C` under conjugation by `Phi`, as (representative, length).
    fn orbits(&self, c: &QuotClass) -> Result<Vec<(usize, usize)>> {
        let n = self.g.num_points();
        let mut done = vec![false; c.members.len()];
        let mut out = Vec::new();
        for i in 0..c.members.len() {
            if done[i] {
                continue;
            }
            let rep = c.members[i] as usize;
            let mut x = rep;
            let mut len = 0usize;
            loop {
                let j = c.members.binary_search(&(x as u32)).map_err(|_| Error::Invalid("class not closed under conjugation".into()))?;
                done[j] = true;
                len += 1;
                x = self.g.conj(self.idx.phi, x);
                if x == rep {
                    break;
                }
            }
            if n % len != 0 {
                return Err(Error::Invalid("orbit length does not divide n".into()));
            }
            out.push((rep, len));
        }
        Ok(out)
    }

    /// `sum_{j < len} sigma^j(theta_rep^k)` for `k = 1..=kmax`: `(len / n) Tr(theta_rep^k)`.
    fn orbit_power_sums(&self, rep: usize, len: usize, kmax: usize) -> Result<Vec<BigInt>> {
        let m = BigInt::from(self.alg.modulus().clone());
        let n = self.g.num_points();
        let scale = modinv(&BigInt::from(n / len), &m).ok_or_else(|| Error::BadModulus(m.to_string()))?;
        let theta = self.theta(rep);
        let mut pw = theta.clone();
        let mut ps = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            if k > 1 {
                pw = self.alg.mul(&pw, &theta);
            }
            ps.push((BigInt::from(self.alg.trace(&pw)) * &scale).mod_floor(&m));
        }
        Ok(ps)
    }

    fn class_power_sums(&self, c: &QuotClass, kmax: usize) -> Result<Vec<BigInt>> {
        let m = BigInt::from(self.alg.modulus().clone());
        let mut acc = vec![BigInt::zero(); kmax];
        for (rep, len) in self.orbits(c)? {
            for (a, s) in acc.iter_mut().zip(self.orbit_power_sums(rep, len, kmax)?) {
                *a = (&*a + s).mod_floor(&m);
            }
        }
        Ok(acc)
    }

    /// `prod_{g in C} (x - theta_g) mod p^K`, one Frobenius orbit at a time.
    fn class_poly(&self, c: &QuotClass) -> Result<Vec<BigInt>> {
        let m = BigInt::from(self.alg.modulus().clone());
        let mut factors = Vec::new();
        for (rep, len) in self.orbits(c)? {
            factors.push(newton_from_power_sums(&self.orbit_power_sums(rep, len, len)?, &m)?);
        }
        Ok(product_mod(factors, &m))
    }
}

/// Builds every `Gamma_C` for one indexation at precision `plan.k`.
pub fn build_resolvents(
    data: &RepData,
    g: &QuotientGroup,
    classes: &[QuotClass],
    idx: &Indexation,
    h: &ZPoly,
    p: u64,
    plan: &PrecisionPlan,
) -> Result<ResolventTable> {
    if h.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("h must be non-constant".into()));
    }
    if classes.iter().map(|c| c.size).sum::<usize>() != g.order() {
        return Err(Error::Invalid("classes do not partition the group".into()));
    }
    let ext = UnramExt::new(&data.poly, p, plan.k)?;
    let alg = ext.algebra();
    let roots = ext.roots_cycle()?;
    let ctx = BuildCtx::new(g, idx, alg, &roots, h);
    let pk = ext.modulus().clone();
    let built: Vec<Result<TableClass>> = classes
        .par_iter()
        .enumerate()
        .map(|(ci, c)| {
            let raw = ctx.class_poly(c)?;
            let bounds = coefficient_bounds(c.size, &plan.x_bound);
            let mut gamma = Vec::with_capacity(raw.len());
            for (x, b) in raw.iter().zip(&bounds) {
                let v = symmetric_mod(x, &pk);
                if v.abs() > *b {
                    return Err(Error::BoundExceeded { index: ci });
                }
                gamma.push(v);
            }
            Ok(TableClass { trace_class: c.trace_class, det_class: c.det_class, size: c.size, rep: c.rep, gamma })
        })
        .collect();
    let classes = built.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ResolventTable {
        ell: data.ell,
        weight: data.weight,
        r: data.r,
        form: data.form.clone(),
        embedding: data.embedding,
        p,
        k: plan.k,
        h: h.clone(),
        phi: idx.phi_mat,
        bound: plan.bound.clone(),
        poly: data.poly.clone(),
        classes,
    })
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub h: ZPoly,
    pub p_floor: u64,
    pub cap: u64,
    pub slack_bits: u32,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { h: ZPoly::from_ints(&[0, 0, 1]), p_floor: 1 << 60, cap: 1_000_000, slack_bits: 0 }
    }
}

/// Summary of a pipeline run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildReport {
    pub p: u64,
    pub k: u32,
    pub candidates: usize,
    pub survivors: usize,
}

pub const PROBE_PRIMES: [u64; 2] = [101, 103];

/// Full pipeline: inert prime, candidate indexations, filter, resolvents.
pub fn build_table(data: &RepData, opts: &BuildOptions) -> Result<(ResolventTable, BuildReport)> {
    if opts.h.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("h must be non-constant".into()));
    }
    let g = QuotientGroup::level(data.ell, data.r)?;
    if g.num_points() != data.poly.degree().unwrap_or(0) {
        return Err(Error::Invalid("deg F_r differs from the number of points of V_r".into()));
    }
    let classes = g.conj_classes();
    let p = select_inert_prime(&data.poly, opts.p_floor, opts.cap)?;
    let cands = candidate_indexations(&g, &classes)?;
    let x_bound = theta_bound(&data.poly, &opts.h)?;
    let survivors = integrality_filter(&g, &classes, &cands, &data.poly, &opts.h, p, &x_bound)?;
    let sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
    let plan = precision_plan(&sizes, &x_bound, p, opts.slack_bits);
    let mut tables = Vec::with_capacity(survivors.len());
    for idx in &survivors {
        tables.push(build_resolvents(data, &g, &classes, idx, &opts.h, p, &plan)?);
    }
    for &v in &PROBE_PRIMES {
        let first = tables[0].frobenius_class(&BigInt::from(v)).ok();
        if tables[1..].iter().any(|t| t.frobenius_class(&BigInt::from(v)).ok() != first) {
            return Err(Error::AmbiguousIndexation(v));
        }
    }
    let report = BuildReport { p, k: plan.k, candidates: cands.len(), survivors: survivors.len() };
    Ok((tables.swap_remove(0), report))
}

/// Frobenius data at one prime, lifted to GL2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusAt {
    pub class_index: usize,
    pub class: Gl2Class,
    pub trace: u32,
    pub minpoly: String,
}

impl ResolventTable {
    /// Indexation recorded by the table's Frobenius element.
    pub fn indexation(&self, g: &QuotientGroup) -> Result<Indexation> {
        let phi = g.index(&self.phi).ok_or_else(|| Error::Invalid("Frobenius element is not in the group".into()))?;
        Indexation::new(g, phi)
    }

    pub fn n(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn scalars(&self) -> Result<SubgroupS> {
        SubgroupS::level(self.ell, self.r)
    }

    /// Rejects `v` dividing `l`, the level, or the discriminant of `F_r`.
    fn check_good(&self, v: &BigInt) -> Result<()> {
        if v <= &BigInt::one() {
            return Err(Error::NotPrime(v.to_string()));
        }
        if (v % self.ell).is_zero() {
            return Err(Error::BadPrime(v.to_string()));
        }
        let squarefree = match v.to_u64() {
            Some(s) if s < (1 << 62) => {
                let fp = Zmod64::new(s)?;
                self.poly.reduce_mod64(fp).is_squarefree()?
            }
            _ => {
                let r = IntegersMod::new(v.clone())?;
                self.poly.reduce_mod(&r).is_squarefree()?
            }
        };
        if !squarefree {
            return Err(Error::BadPrime(v.to_string()));
        }
        Ok(())
    }

    /// `u = Tr(h(x) x^v)` in `F_v[x]/F_r`.
    pub fn frobenius_trace_value(&self, v: &BigInt) -> Result<BigInt> {
        self.check_good(v)?;
        let alg = ModAlgebra::new(&self.poly, v)?;
        let y = alg.pow_gen(&v.to_biguint().unwrap());
        let hx = alg.from_poly(&self.h);
        Ok(BigInt::from(alg.trace(&alg.mul(&hx, &y))))
    }

    /// Index of the unique class whose resolvent vanishes at `u` mod `v`.
    pub fn frobenius_class(&self, v: &BigInt) -> Result<usize> {
        let u = self.frobenius_trace_value(v)?;
        let hits = self.vanishing_classes(&u, v);
        match hits.as_slice() {
            [c] => Ok(*c),
            [] => Err(Error::NoClass),
            _ => Err(Error::AmbiguousClass(hits.len())),
        }
    }

    pub fn vanishing_classes(&self, u: &BigInt, v: &BigInt) -> Vec<usize> {
        self.classes
            .par_iter()
            .enumerate()
            .filter(|(_, c)| {
                let mut acc = BigInt::zero();
                for a in c.gamma.iter().rev() {
                    acc = (acc * u + a).mod_floor(v);
                }
                acc.is_zero()
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Frobenius class at `v` lifted by `det = v^(k-1) mod l`, with `a_v mod l` its trace.
    pub fn a_p(&self, v: &BigInt) -> Result<FrobeniusAt> {
        let ci = self.frobenius_class(v)?;
        self.lift(ci, v)
    }

    /// `a_v mod l`, also when several classes vanish but all lift to the same trace.
    pub fn trace_at(&self, v: &BigInt) -> Result<u32> {
        let u = self.frobenius_trace_value(v)?;
        let hits = self.vanishing_classes(&u, v);
        let mut traces: Vec<u32> = hits.iter().filter_map(|&c| self.lift(c, v).ok()).map(|f| f.trace).collect();
        traces.dedup();
        match traces.as_slice() {
            [t] => Ok(*t),
            [] => Err(Error::NoClass),
            _ => Err(Error::AmbiguousClass(hits.len())),
        }
    }

    pub fn lift(&self, ci: usize, v: &BigInt) -> Result<FrobeniusAt> {
        let ell = self.ell as u64;
        let d = powmod_u64(mod_u64(v, ell), (self.weight - 1) as u64, ell) as u32;
        let s = self.scalars()?;
        let c = &self.classes[ci];
        let class = lift_rep_by_det(&s, &c.rep, d)?;
        if mat_det(self.ell, &class.rep) != d {
            return Err(Error::DeterminantMismatch(d as u64));
        }
        Ok(FrobeniusAt { class_index: ci, class, trace: class.trace, minpoly: factored_minpoly(&class) })
    }

    pub fn serialize(&self) -> String {
        let join = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        writeln!(s, "{TABLE_HEADER}").unwrap();
        writeln!(s, "ell {}", self.ell).unwrap();
        writeln!(s, "weight {}", self.weight).unwrap();
        writeln!(s, "r {}", self.r).unwrap();
        writeln!(s, "form {}", self.form).unwrap();
        if let Some(e) = self.embedding {
            writeln!(s, "embedding {}", e.tag()).unwrap();
        }
        writeln!(s, "p {}", self.p).unwrap();
        writeln!(s, "K {}", self.k).unwrap();
        writeln!(s, "h {}", join(self.h.coeffs())).unwrap();
        writeln!(s, "phi {} {} {} {}", self.phi[0], self.phi[1], self.phi[2], self.phi[3]).unwrap();
        writeln!(s, "bound {}", self.bound).unwrap();
        writeln!(s, "poly {}", join(self.poly.coeffs())).unwrap();
        for c in &self.classes {
            writeln!(s, "class {} {} {} {} {} {} {}", c.trace_class, c.det_class, c.size, c.rep[0], c.rep[1], c.rep[2], c.rep[3]).unwrap();
            writeln!(s, "gamma {}", join(&c.gamma)).unwrap();
        }
        writeln!(s, "end").unwrap();
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, Vec<&str>)> = tokens_by_line(text).collect();
        let mut cur = Cursor { lines: &lines, pos: 0 };
        let (ln, head) = cur.next_any()?;
        if head.join(" ") != TABLE_HEADER {
            return Err(Error::parse(ln, format!("expected header `{TABLE_HEADER}`")));
        }
        let ell: u32 = cur.single("ell")?;
        let weight: u32 = cur.single("weight")?;
        let r: u32 = cur.single("r")?;
        let form: String = cur.single("form")?;
        let embedding = if cur.peek() == Some("embedding") {
            let ln = cur.lines[cur.pos].0;
            let e: String = cur.single("embedding")?;
            Some(Embedding::parse(&e).map_err(|_| Error::parse(ln, "embedding must be l5 or l27"))?)
        } else {
            None
        };
        let p: u64 = cur.single("p")?;
        let k: u32 = cur.single("K")?;
        let h = ZPoly::from_bigints(cur.list("h")?);
        let (ln, phi) = cur.field("phi")?;
        if phi.len() != 4 {
            return Err(Error::parse(ln, "phi needs four entries"));
        }
        let phi = [num(ln, phi[0])?, num(ln, phi[1])?, num(ln, phi[2])?, num(ln, phi[3])?];
        let bound: BigInt = cur.single("bound")?;
        let poly = ZPoly::from_bigints(cur.list("poly")?);
        let mut classes = Vec::new();
        while cur.peek() == Some("class") {
            let (ln, t) = cur.field("class")?;
            if t.len() != 7 {
                return Err(Error::parse(ln, "class needs seven entries"));
            }
            let size: usize = num(ln, t[2])?;
            let gl = cur.lines.get(cur.pos).map_or(0, |l| l.0);
            let gamma = cur.list("gamma")?;
            if gamma.len() != size + 1 {
                return Err(Error::parse(gl, "gamma degree differs from class size"));
            }
            classes.push(TableClass {
                trace_class: num(ln, t[0])?,
                det_class: num(ln, t[1])?,
                size,
                rep: [num(ln, t[3])?, num(ln, t[4])?, num(ln, t[5])?, num(ln, t[6])?],
                gamma,
            });
        }
        let (ln, t) = cur.field("end")?;
        if !t.is_empty() {
            return Err(Error::parse(ln, "unexpected tokens after `end`"));
        }
        if let Some((ln, _)) = cur.lines.get(cur.pos) {
            return Err(Error::parse(*ln, "content after `end`"));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(ResolventTable { ell, weight, r, form, embedding, p, k, h, phi, bound, poly, classes })
    }
}

fn num<T: std::str::FromStr>(ln: usize, t: &str) -> Result<T> {
    t.parse().map_err(|_| Error::parse(ln, format!("bad value `{t}`")))
}

struct Cursor<'a, 'b> {
    lines: &'a [(usize, Vec<&'b str>)],
    pos: usize,
}

impl<'b> Cursor<'_, 'b> {
    fn next_any(&mut self) -> Result<(usize, Vec<&'b str>)> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let l = self.lines.get(self.pos).ok_or_else(|| Error::parse(last, "unexpected end of file"))?;
        self.pos += 1;
        Ok(l.clone())
    }
    fn peek(&self) -> Option<&'b str> {
        self.lines.get(self.pos).map(|l| l.1[0])
    }
    fn field(&mut self, name: &str) -> Result<(usize, Vec<&'b str>)> {
        let (ln, toks) = self.next_any()?;
        if toks[0] != name {
            return Err(Error::parse(ln, format!("expected `{name}`, found `{}`", toks[0])));
        }
        Ok((ln, toks[1..].to_vec()))
    }
    fn single<T: std::str::FromStr>(&mut self, name: &str) -> Result<T> {
        let (ln, t) = self.field(name)?;
        match t.as_slice() {
            [x] => num(ln, x),
            _ => Err(Error::parse(ln, format!("`{name}` takes one value"))),
        }
    }
    fn list(&mut self, name: &str) -> Result<Vec<BigInt>> {
        let (ln, t) = self.field(name)?;
        t.iter().map(|x| num(ln, x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn inert_prime_examples() {
        assert_eq!(select_inert_prime(&ZPoly::from_ints(&[1, 0, 1]), 3, 10).unwrap(), 3);
        assert_eq!(select_inert_prime(&ZPoly::from_ints(&[-2, 0, 1]), 3, 10).unwrap(), 3);
        assert!(select_inert_prime(&ZPoly::from_ints(&[-1, 1]), 3, 10).is_err());
        // x^2 - 1 is never irreducible
        assert!(matches!(select_inert_prime(&ZPoly::from_ints(&[-1, 0, 1]), 3, 20), Err(Error::SearchCapExceeded(20))));
    }

    #[test]
    fn newton_recovers_product() {
        let m = BigInt::from(1_000_003);
        // roots 2, 3, -1: power sums 4, 14, 34
        let c = newton_from_power_sums(&[BigInt::from(4), BigInt::from(14), BigInt::from(34)], &m).unwrap();
        let want: Vec<BigInt> = [6i64, 1, -4, 1].iter().map(|&x| BigInt::from(x).mod_floor(&m)).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn coefficient_bounds_are_binomial() {
        let b = coefficient_bounds(3, &BigInt::from(10));
        assert_eq!(b, [1000, 300, 30, 1].map(BigInt::from).to_vec());
    }

    proptest! {
        #[test]
        fn plan_precision_is_strict(sizes in prop::collection::vec(1usize..40, 1..6), x in 1u64..100_000, slack in 0u32..8) {
            let p = next_prime_u64(1 << 20);
            let plan = precision_plan(&sizes, &BigInt::from(x), p, slack);
            let pk = num_traits::pow(BigInt::from(p), plan.k as usize);
            prop_assert!(&plan.bound * 2u32 < pk);
            let smaller = num_traits::pow(BigInt::from(p), plan.k as usize - 1);
            prop_assert!(((&plan.bound * 2u32) << slack) >= smaller);
        }
    }
}
