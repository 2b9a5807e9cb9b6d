//! GL2(F_l) modulo a subgroup of scalars, its conjugacy classes and its action on `V / S`.

use std::collections::BTreeMap;
use std::fmt;

use crate::arith::int::is_prime_u64;
use crate::error::{Error, Result};

/// A 2x2 matrix over F_l, row-major `[a, b, c, d]`.
pub type Mat = [u32; 4];

/// Largest supported l (group tables are indexed by all `l^4` matrices).
pub const MAX_ELL: u32 = 61;

fn check_ell(ell: u32) -> Result<()> {
    if ell < 3 || ell > MAX_ELL || !is_prime_u64(ell as u64) {
        return Err(Error::InvalidEll(ell as u64));
    }
    Ok(())
}

/// 2-adic valuation of `l - 1`.
pub fn two_adic_level(ell: u32) -> u32 {
    (ell - 1).trailing_zeros()
}

pub fn mat_mul(ell: u32, x: &Mat, y: &Mat) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % ell,
        (x[0] * y[1] + x[1] * y[3]) % ell,
        (x[2] * y[0] + x[3] * y[2]) % ell,
        (x[2] * y[1] + x[3] * y[3]) % ell,
    ]
}

pub fn mat_det(ell: u32, m: &Mat) -> u32 {
    (m[0] * m[3] + ell * ell - m[1] * m[2] % ell) % ell
}

pub fn mat_trace(ell: u32, m: &Mat) -> u32 {
    (m[0] + m[3]) % ell
}

pub fn mat_scale(ell: u32, s: u32, m: &Mat) -> Mat {
    [s * m[0] % ell, s * m[1] % ell, s * m[2] % ell, s * m[3] % ell]
}

fn inv_mod(ell: u32, a: u32) -> u32 {
    crate::arith::int::modinv_u64(a as u64, ell as u64).expect("unit") as u32
}

fn is_square(ell: u32, a: u32) -> bool {
    a == 0 || crate::arith::int::powmod_u64(a as u64, (ell as u64 - 1) / 2, ell as u64) == 1
}

/// A subgroup of the scalars F_l^*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupS {
    ell: u32,
    elems: Vec<u32>,
}

impl SubgroupS {
    /// `S_i = { x^(2^i) }`, defined for `0 <= i <= r` where `2^r || l - 1`.
    pub fn level(ell: u32, i: u32) -> Result<Self> {
        check_ell(ell)?;
        let r = two_adic_level(ell);
        if i > r {
            return Err(Error::InvalidLevel { level: i, r });
        }
        let e = 1u64 << i;
        let mut v: Vec<u32> = (1..ell)
            .map(|x| crate::arith::int::powmod_u64(x as u64, e, ell as u64) as u32)
            .collect();
        v.sort_unstable();
        v.dedup();
        Ok(SubgroupS { ell, elems: v })
    }

    pub fn trivial(ell: u32) -> Result<Self> {
        check_ell(ell)?;
        Ok(SubgroupS { ell, elems: vec![1] })
    }

    /// Checks closure of an explicit element set.
    pub fn from_elems(ell: u32, elems: &[u32]) -> Result<Self> {
        check_ell(ell)?;
        let mut v: Vec<u32> = elems.iter().map(|&x| x % ell).collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() || v.contains(&0) || !v.contains(&1) {
            return Err(Error::Invalid("not a subgroup of F_l^*".into()));
        }
        for &a in &v {
            for &b in &v {
                if v.binary_search(&(a * b % ell)).is_err() {
                    return Err(Error::Invalid("not a subgroup of F_l^*".into()));
                }
            }
        }
        Ok(SubgroupS { ell, elems: v })
    }

    /// All subgroups of F_l^* (one per divisor of `l - 1`).
    pub fn all(ell: u32) -> Result<Vec<Self>> {
        check_ell(ell)?;
        let g = primitive_root(ell);
        let mut out = Vec::new();
        for d in (1..ell).filter(|d| (ell - 1) % d == 0) {
            let step = (ell - 1) / d;
            let h = crate::arith::int::powmod_u64(g as u64, step as u64, ell as u64) as u32;
            let mut v = Vec::new();
            let mut x = 1;
            for _ in 0..d {
                v.push(x);
                x = x * h % ell;
            }
            out.push(SubgroupS::from_elems(ell, &v)?);
        }
        Ok(out)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn elems(&self) -> &[u32] {
        &self.elems
    }
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&(x % self.ell)).is_ok()
    }
    /// `S^2 = { s^2 }`.
    pub fn squares(&self) -> SubgroupS {
        let mut v: Vec<u32> = self.elems.iter().map(|&s| s * s % self.ell).collect();
        v.sort_unstable();
        v.dedup();
        SubgroupS { ell: self.ell, elems: v }
    }
}

/// `subgroup_S(l, i)`.
pub fn subgroup_s(ell: u32, i: u32) -> Result<SubgroupS> {
    SubgroupS::level(ell, i)
}

fn primitive_root(ell: u32) -> u32 {
    (2..ell)
        .find(|&g| {
            let mut x = 1;
            (1..ell - 1).all(|_| {
                x = x * g % ell;
                x != 1
            })
        })
        .unwrap_or(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassKind {
    Scalar,
    Split,
    NonSplit,
    NonSemisimple,
}

fn kind_of(ell: u32, m: &Mat) -> ClassKind {
    if m[1] == 0 && m[2] == 0 && m[0] == m[3] {
        return ClassKind::Scalar;
    }
    let t = mat_trace(ell, m);
    let d = mat_det(ell, m);
    let disc = (t * t + 4 * ell * ell - 4 * d) % ell;
    if disc == 0 {
        ClassKind::NonSemisimple
    } else if is_square(ell, disc) {
        ClassKind::Split
    } else {
        ClassKind::NonSplit
    }
}

/// A conjugacy class of `GL2(F_l)/S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotClass {
    /// Lexicographically smallest matrix of GL2(F_l) mapping into the class.
    pub rep: Mat,
    pub size: usize,
    /// Smallest element of the coset `S t` in F_l.
    pub trace_class: u32,
    /// Smallest element of the coset `S^2 d` in F_l^*.
    pub det_class: u32,
    pub kind: ClassKind,
    /// Sorted element indices into the owning [`QuotientGroup`].
    pub members: Vec<u32>,
}

/// A conjugacy class of GL2(F_l) itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gl2Class {
    pub ell: u32,
    pub rep: Mat,
    pub trace: u32,
    pub det: u32,
    pub kind: ClassKind,
}

impl Gl2Class {
    pub fn of(ell: u32, m: &Mat) -> Self {
        Gl2Class { ell, rep: *m, trace: mat_trace(ell, m), det: mat_det(ell, m), kind: kind_of(ell, m) }
    }
}

/// `GL2(F_l)/S` with element and point tables.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    ell: u32,
    s: SubgroupS,
    elems: Vec<Mat>,
    index_of: Vec<u32>,
    points: Vec<(u32, u32)>,
    point_of: Vec<u32>,
}

const NONE: u32 = u32::MAX;

impl QuotientGroup {
    pub fn new(s: &SubgroupS) -> Result<Self> {
        let ell = s.ell;
        check_ell(ell)?;
        let l = ell as usize;
        let mut index_of = vec![NONE; l * l * l * l];
        let mut elems = Vec::new();
        for code in 0..index_of.len() {
            if index_of[code] != NONE {
                continue;
            }
            let m = decode(ell, code);
            if mat_det(ell, &m) == 0 {
                continue;
            }
            let idx = elems.len() as u32;
            elems.push(m);
            for &sc in &s.elems {
                index_of[encode(ell, &mat_scale(ell, sc, &m))] = idx;
            }
        }
        let mut point_of = vec![NONE; l * l];
        let mut points = Vec::new();
        for code in 1..l * l {
            if point_of[code] != NONE {
                continue;
            }
            let (x, y) = ((code / l) as u32, (code % l) as u32);
            let idx = points.len() as u32;
            points.push((x, y));
            for &sc in &s.elems {
                point_of[((sc * x % ell) * ell + sc * y % ell) as usize] = idx;
            }
        }
        Ok(QuotientGroup { ell, s: s.clone(), elems, index_of, points, point_of })
    }

    /// `GL2(F_l)/S_i`.
    pub fn level(ell: u32, i: u32) -> Result<Self> {
        QuotientGroup::new(&SubgroupS::level(ell, i)?)
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn scalars(&self) -> &SubgroupS {
        &self.s
    }
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    /// Canonical (lexicographically smallest) matrix of an element.
    pub fn elem(&self, i: usize) -> Mat {
        self.elems[i]
    }
    pub fn index(&self, m: &Mat) -> Option<usize> {
        let m = [m[0] % self.ell, m[1] % self.ell, m[2] % self.ell, m[3] % self.ell];
        match self.index_of[encode(self.ell, &m)] {
            NONE => None,
            i => Some(i as usize),
        }
    }
    pub fn identity(&self) -> usize {
        self.index(&[1, 0, 0, 1]).unwrap()
    }
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.index_of[encode(self.ell, &mat_mul(self.ell, &self.elems[g], &self.elems[h]))] as usize
    }
    pub fn inv(&self, g: usize) -> usize {
        let m = self.elems[g];
        let di = inv_mod(self.ell, mat_det(self.ell, &m));
        let l = self.ell;
        let inv = [m[3] * di % l, (l - m[1]) * di % l, (l - m[2]) * di % l, m[0] * di % l];
        self.index(&inv).unwrap()
    }
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }
    pub fn pow(&self, g: usize, e: usize) -> usize {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, g))
    }

    /// Number of points of `V / S`.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }
    /// Canonical (lexicographically smallest) vector of a point.
    pub fn point(&self, w: usize) -> (u32, u32) {
        self.points[w]
    }
    pub fn point_index(&self, v: (u32, u32)) -> Option<usize> {
        let (x, y) = (v.0 % self.ell, v.1 % self.ell);
        match self.point_of[(x * self.ell + y) as usize] {
            NONE => None,
            i => Some(i as usize),
        }
    }
    /// The orbit `S (1, 0)`.
    pub fn base_point(&self) -> usize {
        self.point_index((1, 0)).unwrap()
    }

    /// `g . w` for column vectors.
    pub fn act(&self, g: usize, w: usize) -> usize {
        let m = &self.elems[g];
        let (x, y) = self.points[w];
        let l = self.ell;
        self.point_of[(((m[0] * x + m[1] * y) % l) * l + (m[2] * x + m[3] * y) % l) as usize] as usize
    }

    /// The permutation of `V / S` induced by `g`.
    pub fn perm(&self, g: usize) -> Vec<u32> {
        (0..self.points.len()).map(|w| self.act(g, w) as u32).collect()
    }

    /// Canonical representative of `S t` in F_l.
    pub fn trace_class_of(&self, t: u32) -> u32 {
        self.s.elems.iter().map(|&s| s * t % self.ell).min().unwrap()
    }
    /// Canonical representative of `S^2 d` in F_l^*.
    pub fn det_class_of(&self, d: u32) -> u32 {
        self.s.elems.iter().map(|&s| s * s % self.ell * d % self.ell).min().unwrap()
    }

    fn class_key(&self, m: &Mat) -> (bool, u32, u32) {
        let (t, d) = (mat_trace(self.ell, m), mat_det(self.ell, m));
        let l = self.ell;
        let (tt, dd) = self.s.elems.iter().map(|&s| (s * t % l, s * s % l * d % l)).min().unwrap();
        (kind_of(l, m) == ClassKind::Scalar, tt, dd)
    }

    /// Conjugacy classes, sorted by representative.
    pub fn conj_classes(&self) -> Vec<QuotClass> {
        let mut by_key: BTreeMap<(bool, u32, u32), Vec<u32>> = BTreeMap::new();
        for (i, m) in self.elems.iter().enumerate() {
            by_key.entry(self.class_key(m)).or_default().push(i as u32);
        }
        let mut out: Vec<QuotClass> = by_key
            .into_values()
            .map(|members| {
                let rep = members.iter().map(|&i| self.elems[i as usize]).min().unwrap();
                QuotClass {
                    rep,
                    size: members.len(),
                    trace_class: self.trace_class_of(mat_trace(self.ell, &rep)),
                    det_class: self.det_class_of(mat_det(self.ell, &rep)),
                    kind: kind_of(self.ell, &rep),
                    members,
                }
            })
            .collect();
        out.sort_by(|a, b| a.rep.cmp(&b.rep));
        out
    }

    /// Index of the class containing element `g`.
    pub fn class_of(&self, classes: &[QuotClass], g: usize) -> usize {
        classes.iter().position(|c| c.members.binary_search(&(g as u32)).is_ok()).expect("classes partition the group")
    }

    /// Elements acting on `V / S` as a single cycle.
    pub fn cyclic_candidates(&self) -> Vec<usize> {
        let n = self.points.len();
        let base = self.base_point();
        (0..self.order())
            .filter(|&g| {
                let mut w = self.act(g, base);
                let mut len = 1;
                while w != base {
                    w = self.act(g, w);
                    len += 1;
                }
                len == n
            })
            .collect()
    }

    /// Number of points of `V / S` fixed by `diag(1, d)`.
    pub fn conjugation_fixed_points(&self, d: u32) -> usize {
        let g = self.index(&[1, 0, 0, d % self.ell]).expect("d is a unit");
        (0..self.points.len()).filter(|&w| self.act(g, w) == w).count()
    }

    /// Subgroup generated by a set of elements.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let id = self.identity();
        seen[id] = true;
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// The commutator subgroup, by closure of all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = vec![false; n];
        for g in 0..n {
            let gi = self.inv(g);
            for h in 0..n {
                let c = self.mul(self.mul(g, h), self.mul(gi, self.inv(h)));
                comms[c] = true;
            }
        }
        let gens: Vec<usize> = (0..n).filter(|&c| comms[c]).collect();
        self.closure(&gens)
    }

    /// Kernel of `det: GL2/S -> F_l^* / S^2`.
    pub fn det_kernel(&self) -> Vec<usize> {
        let sq = self.s.squares();
        (0..self.order()).filter(|&g| sq.contains(mat_det(self.ell, &self.elems[g]))).collect()
    }
}

fn encode(ell: u32, m: &Mat) -> usize {
    let l = ell as usize;
    ((m[0] as usize * l + m[1] as usize) * l + m[2] as usize) * l + m[3] as usize
}

fn decode(ell: u32, code: usize) -> Mat {
    let l = ell as usize;
    [(code / (l * l * l)) as u32, (code / (l * l) % l) as u32, (code / l % l) as u32, (code % l) as u32]
}

/// The unique GL2 class `sA` (`s` in `S`) inside a quotient class with determinant `d`.
pub fn lift_class_by_det(g: &QuotientGroup, c: &QuotClass, d: u32) -> Result<Gl2Class> {
    lift_rep_by_det(&g.s, &c.rep, d)
}

/// The unique `sA` (`s` in `S`) with determinant `d`, for a representative `A`.
pub fn lift_rep_by_det(s: &SubgroupS, rep: &Mat, d: u32) -> Result<Gl2Class> {
    let ell = s.ell();
    let d = d % ell;
    let det = mat_det(ell, rep);
    let hits: Vec<u32> = s.elems().iter().copied().filter(|&s| s * s % ell * det % ell == d).collect();
    match hits.as_slice() {
        [s] => Ok(Gl2Class::of(ell, &mat_scale(ell, *s, rep))),
        [] => Err(Error::DeterminantMismatch(d as u64)),
        _ => Err(Error::Invalid("squaring is not injective on S; lift is ambiguous".into())),
    }
}

/// Factored minimal polynomial over F_l in the tables' format.
pub fn factored_minpoly(c: &Gl2Class) -> String {
    let l = c.ell;
    match c.kind {
        ClassKind::Scalar => format!("(x-{})", c.rep[0]),
        ClassKind::NonSemisimple => format!("(x-{})^2", c.trace * inv_mod(l, 2) % l),
        ClassKind::Split => {
            let mut roots: Vec<u32> = (0..l).filter(|&x| (x * x + l * l - c.trace * x % l + c.det) % l == 0).collect();
            roots.sort_unstable_by(|a, b| b.cmp(a));
            format!("(x-{})(x-{})", roots[0], roots[1])
        }
        ClassKind::NonSplit => {
            let b = (l - c.trace) % l;
            let mut s = String::from("x^2");
            match b {
                0 => {}
                1 => s.push_str(" + x"),
                _ => s.push_str(&format!(" + {b}x")),
            }
            s.push_str(&format!(" + {}", c.det));
            s
        }
    }
}

/// Trace and determinant of the class described by a factored minimal polynomial.
pub fn parse_minpoly(s: &str, ell: u32) -> Result<(u32, u32)> {
    let bad = || Error::Invalid(format!("unrecognized minimal polynomial `{s}`"));
    let s = s.trim();
    let num = |t: &str| t.trim().parse::<u32>().map(|v| v % ell).map_err(|_| bad());
    if let Some(rest) = s.strip_prefix("x^2") {
        let mut b = 0;
        let mut c = 0;
        for term in rest.split('+').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(coef) = term.strip_suffix('x') {
                b = if coef.is_empty() { 1 } else { num(coef)? };
            } else {
                c = num(term)?;
            }
        }
        return Ok(((ell - b) % ell, c));
    }
    let roots: Vec<&str> = s.split(')').filter(|t| !t.is_empty()).collect();
    let root = |t: &str| -> Result<u32> { num(t.trim_start_matches("(x-")) };
    match roots.as_slice() {
        [a] => {
            let a = root(a)?;
            Ok((2 * a % ell, a * a % ell))
        }
        [a, "^2"] => {
            let a = root(a)?;
            Ok((2 * a % ell, a * a % ell))
        }
        [a, b] => {
            let (a, b) = (root(a)?, root(b)?);
            Ok(((a + b) % ell, a * b % ell))
        }
        _ => Err(bad()),
    }
}

impl fmt::Display for Gl2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", factored_minpoly(self))
    }
}

/// Upper-triangular matrices with diagonal in `S x S'`.
pub fn borel(ell: u32, s: &SubgroupS, s2: &SubgroupS) -> Vec<Mat> {
    let mut out = Vec::new();
    for &a in s.elems() {
        for b in 0..ell {
            for &d in s2.elems() {
                out.push([a, b, 0, d]);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All subgroups of index 2 of the Borel-type group `B(S, S')`, found by exhaustive search
/// over unions of cosets of the subgroup generated by squares.
pub fn index2_subgroups_of_borel(ell: u32, s: &SubgroupS, s2: &SubgroupS) -> Result<Vec<Vec<Mat>>> {
    check_ell(ell)?;
    if s.order() == 1 || s2.order() == 1 {
        return Err(Error::Invalid("S and S' must both be nontrivial".into()));
    }
    let b = borel(ell, s, s2);
    let pos = |m: &Mat| b.binary_search(m).unwrap();
    let mul = |x: usize, y: usize| pos(&mat_mul(ell, &b[x], &b[y]));
    // Q = <g^2>
    let mut in_q = vec![false; b.len()];
    let id = pos(&[1, 0, 0, 1]);
    in_q[id] = true;
    let mut q = vec![id];
    let gens: Vec<usize> = (0..b.len()).map(|g| mul(g, g)).collect();
    let mut i = 0;
    while i < q.len() {
        for &g in &gens {
            let y = mul(q[i], g);
            if !in_q[y] {
                in_q[y] = true;
                q.push(y);
            }
        }
        i += 1;
    }
    // cosets of the normal subgroup Q
    let mut coset_of = vec![usize::MAX; b.len()];
    let mut reps = Vec::new();
    for g in 0..b.len() {
        if coset_of[g] == usize::MAX {
            let c = reps.len();
            reps.push(g);
            for &x in &q {
                coset_of[mul(g, x)] = c;
            }
        }
    }
    let k = reps.len();
    let half = k / 2;
    let mut out = Vec::new();
    if k < 2 {
        return Ok(out);
    }
    // subsets of cosets of size k/2 containing the identity coset, closed under products
    for mask in 0u64..(1u64 << k) {
        if mask.count_ones() as usize != half || mask & (1 << coset_of[id]) == 0 {
            continue;
        }
        let closed = (0..k).filter(|&x| mask >> x & 1 == 1).all(|x| {
            (0..k).filter(|&y| mask >> y & 1 == 1).all(|y| mask >> coset_of[mul(reps[x], reps[y])] & 1 == 1)
        });
        if closed {
            let mut h: Vec<Mat> = (0..b.len()).filter(|&g| mask >> coset_of[g] & 1 == 1).map(|g| b[g]).collect();
            h.sort_unstable();
            out.push(h);
        }
    }
    out.sort();
    Ok(out)
}

/// The three kernels described by the lemma: `s in S^2`, `s' in S'^2`, and `s in S^2 <=> s' in S'^2`.
pub fn predicted_index2_subgroups(ell: u32, s: &SubgroupS, s2: &SubgroupS) -> Vec<Vec<Mat>> {
    let b = borel(ell, s, s2);
    let (q, q2) = (s.squares(), s2.squares());
    let mut out: Vec<Vec<Mat>> = vec![
        b.iter().copied().filter(|m| q.contains(m[0])).collect(),
        b.iter().copied().filter(|m| q2.contains(m[3])).collect(),
        b.iter().copied().filter(|m| q.contains(m[0]) == q2.contains(m[3])).collect(),
    ];
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subgroups_worked() {
        assert_eq!(subgroup_s(11, 1).unwrap().elems(), &[1, 3, 4, 5, 9]);
        assert_eq!(subgroup_s(13, 2).unwrap().elems(), &[1, 3, 9]);
        assert_eq!(subgroup_s(11, 0).unwrap().order(), 10);
        assert!(matches!(subgroup_s(11, 2), Err(Error::InvalidLevel { level: 2, r: 1 })));
        for ell in [5u32, 7, 11, 13, 17] {
            let r = two_adic_level(ell);
            let s = subgroup_s(ell, r).unwrap();
            assert!(!s.contains(ell - 1));
            assert_eq!(s.order() % 2, 1);
        }
    }

    fn census(ell: u32) -> BTreeMap<(ClassKind, usize), usize> {
        let g = QuotientGroup::new(&SubgroupS::trivial(ell).unwrap()).unwrap();
        let mut m = BTreeMap::new();
        for c in g.conj_classes() {
            *m.entry((c.kind, c.size)).or_insert(0) += 1;
        }
        m
    }

    #[test]
    fn census_matches_table() {
        for ell in [5usize, 7, 11] {
            let m = census(ell as u32);
            let expect: BTreeMap<_, _> = [
                ((ClassKind::Scalar, 1), ell - 1),
                ((ClassKind::Split, ell * (ell + 1)), (ell - 1) * (ell - 2) / 2),
                ((ClassKind::NonSplit, ell * (ell - 1)), ell * (ell - 1) / 2),
                ((ClassKind::NonSemisimple, (ell + 1) * (ell - 1)), ell - 1),
            ]
            .into_iter()
            .collect();
            assert_eq!(m, expect, "l = {ell}");
        }
    }

    #[test]
    fn classes_are_conjugation_orbits() {
        for (ell, i) in [(5u32, 0u32), (5, 1), (5, 2), (7, 1)] {
            let g = QuotientGroup::level(ell, i).unwrap();
            let classes = g.conj_classes();
            assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), g.order());
            for c in &classes {
                let x = c.members[0] as usize;
                let mut orbit: Vec<u32> = (0..g.order()).map(|h| g.conj(h, x) as u32).collect();
                orbit.sort_unstable();
                orbit.dedup();
                assert_eq!(orbit, c.members);
                for &m in &c.members {
                    let mm = g.elem(m as usize);
                    assert_eq!(g.trace_class_of(mat_trace(ell, &mm)), c.trace_class);
                    assert_eq!(g.det_class_of(mat_det(ell, &mm)), c.det_class);
                }
            }
        }
    }

    #[test]
    fn orders_and_points() {
        let g = QuotientGroup::level(11, 1).unwrap();
        assert_eq!(g.order(), 2640);
        assert_eq!(g.num_points(), 24);
        let g = QuotientGroup::level(13, 2).unwrap();
        assert_eq!(g.order(), 8736);
        assert_eq!(g.num_points(), 56);
    }

    #[test]
    fn act_worked() {
        let g = QuotientGroup::level(11, 1).unwrap();
        let d2 = g.index(&[2, 0, 0, 2]).unwrap();
        let base = g.base_point();
        assert_eq!(g.act(d2, base), g.point_index((2, 0)).unwrap());
        assert_ne!(g.act(d2, base), base);
        let s3 = g.index(&[3, 0, 0, 3]).unwrap();
        assert_eq!(s3, g.identity());
        for w in 0..g.num_points() {
            assert_eq!(g.act(g.identity(), w), w);
        }
    }

    #[test]
    fn lift_worked() {
        let g = QuotientGroup::level(11, 1).unwrap();
        let classes = g.conj_classes();
        let ci = g.class_of(&classes, g.index(&[1, 0, 0, 2]).unwrap());
        let lifted = lift_class_by_det(&g, &classes[ci], 7).unwrap();
        assert_eq!(lifted.trace, 9);
        assert_eq!(lifted.det, 7);
        let same = lift_class_by_det(&g, &classes[ci], mat_det(11, &classes[ci].rep)).unwrap();
        assert_eq!(same, Gl2Class::of(11, &classes[ci].rep));
        assert!(matches!(lift_class_by_det(&g, &classes[ci], 1), Err(Error::DeterminantMismatch(1))));
    }

    #[test]
    fn lift_roundtrip_all_classes() {
        for (ell, i) in [(5u32, 2u32), (7, 1), (11, 1)] {
            let g = QuotientGroup::level(ell, i).unwrap();
            let full = QuotientGroup::new(&SubgroupS::trivial(ell).unwrap()).unwrap();
            let classes = g.conj_classes();
            for fc in full.conj_classes() {
                let proj = g.class_of(&classes, g.index(&fc.rep).unwrap());
                let lifted = lift_class_by_det(&g, &classes[proj], mat_det(ell, &fc.rep)).unwrap();
                let back = Gl2Class::of(ell, &fc.rep);
                assert_eq!((lifted.trace, lifted.det, lifted.kind), (back.trace, back.det, back.kind));
            }
        }
    }

    #[test]
    fn minpoly_strings() {
        let c = |m: Mat| factored_minpoly(&Gl2Class::of(11, &m));
        assert_eq!(c([4, 0, 0, 4]), "(x-4)");
        assert_eq!(c([4, 0, 0, 9]), "(x-9)(x-4)");
        // trace 10, det 8: disc 2 is a non-square mod 11
        assert_eq!(c([0, 3, 1, 10]), "x^2 + x + 8");
        assert_eq!(c([3, 1, 0, 3]), "(x-3)^2");
        assert_eq!(c([0, 10, 1, 0]), "x^2 + 1");
        for s in ["(x-9)(x-4)", "x^2 + x + 8", "(x-3)^2", "x^2 + 1", "(x-4)", "x^2 + 10x + 8"] {
            let (t, d) = parse_minpoly(s, 11).unwrap();
            let m = [0, (11 - d) % 11, 1, t];
            let back = factored_minpoly(&Gl2Class::of(11, &m));
            if s != "(x-4)" && s != "(x-3)^2" {
                assert_eq!(back, s);
            }
        }
        assert_eq!(parse_minpoly("x^2 + 26x + 21", 31).unwrap(), (5, 21));
    }

    #[test]
    fn cyclic_candidates_worked() {
        let g = QuotientGroup::level(11, 1).unwrap();
        let c = g.cyclic_candidates();
        assert!(!c.is_empty());
        assert_eq!(c.len() % 8, 0);
        let base = g.base_point();
        for &x in &c {
            assert_ne!(g.act(x, base), base);
        }
    }

    #[test]
    fn fixed_points() {
        for ell in [5u32, 7, 11, 13] {
            let r = two_adic_level(ell);
            let g = QuotientGroup::level(ell, r).unwrap();
            assert_eq!(g.conjugation_fixed_points(ell - 1), 1 << r);
            // projective line
            let p = QuotientGroup::level(ell, 0).unwrap();
            assert_eq!(p.conjugation_fixed_points(ell - 1), 2);
            let v = QuotientGroup::new(&SubgroupS::trivial(ell).unwrap()).unwrap();
            assert_eq!(v.conjugation_fixed_points(ell - 1), ell as usize - 1);
        }
    }

    #[test]
    fn borel_index2_even_order() {
        for ell in [5u32, 7] {
            let subs: Vec<_> = SubgroupS::all(ell).unwrap().into_iter().filter(|s| s.order() % 2 == 0).collect();
            for s in &subs {
                for s2 in &subs {
                    let found = index2_subgroups_of_borel(ell, s, s2).unwrap();
                    assert_eq!(found.len(), 3);
                    assert_eq!(found, predicted_index2_subgroups(ell, s, s2));
                }
            }
        }
    }

    #[test]
    fn borel_index2_odd_factor() {
        // squares mod 7 have odd order, so only the s' condition survives
        let sq = SubgroupS::level(7, 1).unwrap();
        let all = SubgroupS::level(7, 0).unwrap();
        assert_eq!(index2_subgroups_of_borel(7, &sq, &all).unwrap().len(), 1);
        assert!(index2_subgroups_of_borel(7, &SubgroupS::trivial(7).unwrap(), &all).is_err());
        let b = borel(5, &SubgroupS::level(5, 0).unwrap(), &SubgroupS::level(5, 0).unwrap());
        assert_eq!(b.len(), 80);
    }

    #[test]
    fn det_kernel_is_commutator() {
        for ell in [5u32, 7] {
            for i in 0..=two_adic_level(ell) {
                let g = QuotientGroup::level(ell, i).unwrap();
                assert_eq!(g.commutator_subgroup(), g.det_kernel(), "l = {ell}, i = {i}");
            }
        }
    }

    proptest! {
        #[test]
        fn act_is_an_action(a in 0usize..2640, b in 0usize..2640, w in 0usize..24) {
            let g = QuotientGroup::level(11, 1).unwrap();
            prop_assert_eq!(g.act(g.mul(a, b), w), g.act(a, g.act(b, w)));
        }

        #[test]
        fn act_is_well_defined(x in 0u32..13, y in 0u32..13, s in 0usize..3, m in 0usize..8736) {
            prop_assume!(x != 0 || y != 0);
            let g = QuotientGroup::level(13, 2).unwrap();
            let sc = g.scalars().elems()[s];
            let w = g.point_index((x, y)).unwrap();
            prop_assert_eq!(g.point_index((sc * x, sc * y)).unwrap(), w);
            let mat = g.elem(m);
            let scaled = mat_scale(13, sc, &mat);
            let (px, py) = g.point(w);
            let v = ((scaled[0] * px + scaled[1] * py) % 13, (scaled[2] * px + scaled[3] * py) % 13);
            prop_assert_eq!(g.point_index(v).unwrap(), g.act(m, w));
        }
    }
}
