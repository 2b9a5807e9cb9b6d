//! Drivers behind the `galrep` binary. Each `cmd_*` function returns the text it prints.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use galrep::arith::int::{format_int_expr, is_probable_prime, parse_int_expr, primes_below};
use galrep::arith::poly::parse_zpoly;
use galrep::arith::ZPoly;
use galrep::certify::{self, CertReport, Status};
use galrep::data::RepData;
use galrep::modforms::{crt_combine, eigenform, s24_eigenform, Oracle};
use galrep::resolvent::{build_table, BuildOptions, BuildReport, FrobeniusAt, ResolventTable};
use galrep::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    CheckFailed(String),
    #[error("{0}")]
    Ambiguous(String),
    #[error(transparent)]
    Engine(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::NotPrime(_) | Error::BadPrime(_) => CliError::Input(e.to_string()),
            Error::AmbiguousClass(_) | Error::AmbiguousIndexation(_) => CliError::Ambiguous(e.to_string()),
            e => CliError::Engine(e),
        }
    }
}

impl CliError {
    /// 0 success, 1 check failure, 2 input error, 3 engine ambiguity.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Ambiguous(_) => 3,
            CliError::Engine(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_data(path: &Path) -> CliResult<RepData> {
    RepData::parse(&read_file(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_table(path: &Path) -> CliResult<ResolventTable> {
    ResolventTable::parse(&read_file(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn parse_hpoly(s: &str) -> CliResult<ZPoly> {
    parse_zpoly(s).map_err(|_| CliError::Input(format!("cannot parse polynomial `{s}`")))
}

/// Parses a prime expression and rejects composites before any heavy work.
pub fn parse_prime(s: &str) -> CliResult<BigInt> {
    let v = parse_int_expr(s).map_err(|_| CliError::Input(format!("cannot parse integer `{s}`")))?;
    if !is_probable_prime(&v) {
        return Err(CliError::Input(format!("{s} is not prime")));
    }
    Ok(v)
}

/// Prime expressions, one per line; `#` starts a comment.
pub fn read_manifest(text: &str) -> CliResult<Vec<(String, BigInt)>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .map(|l| Ok((l.to_string(), parse_prime(l)?)))
        .collect()
}

/// The first `count` primes `>= start`: a sieve by small primes, then BPSW in parallel.
pub fn primes_from(start: &BigInt, count: usize) -> Vec<BigInt> {
    const WINDOW: u64 = 4096;
    let small = primes_below(100_000);
    let mut out = Vec::new();
    let mut base = start.clone();
    while out.len() < count {
        let mut alive = vec![true; WINDOW as usize];
        for &q in &small {
            let qb = BigInt::from(q);
            if base <= qb {
                continue;
            }
            let r = (&base % q).to_u64().unwrap();
            let mut i = (q - r) % q;
            while i < WINDOW {
                alive[i as usize] = false;
                i += q;
            }
        }
        let cands: Vec<BigInt> = (0..WINDOW).filter(|&i| alive[i as usize]).map(|i| &base + i).collect();
        let mut hits: Vec<BigInt> = cands.into_par_iter().filter(|c| c > &BigInt::one() && is_probable_prime(c)).collect();
        hits.sort();
        out.extend(hits);
        base += WINDOW;
    }
    out.truncate(count);
    out
}

/// A primary table plus a lazily built fallback with a different `h`, used on ambiguity.
pub struct TableSet {
    pub data: RepData,
    pub primary: ResolventTable,
    pub fallback_h: ZPoly,
    pub opts: BuildOptions,
    fallback: OnceLock<Result<ResolventTable, String>>,
}

/// Fallback `h` suggested on ambiguity.
pub fn fallback_hpoly() -> ZPoly {
    ZPoly::from_ints(&[0, 1, 0, 1])
}

impl TableSet {
    pub fn new(data: RepData, primary: ResolventTable, opts: BuildOptions) -> Self {
        TableSet { data, primary, fallback_h: fallback_hpoly(), opts, fallback: OnceLock::new() }
    }

    /// Fallback rebuilds reuse the data stored in the table itself.
    pub fn from_table(t: ResolventTable) -> Self {
        let data = RepData {
            ell: t.ell,
            weight: t.weight,
            r: t.r,
            form: t.form.clone(),
            embedding: t.embedding,
            poly: t.poly.clone(),
        };
        TableSet::new(data, t, BuildOptions::default())
    }

    pub fn fallback(&self) -> CliResult<&ResolventTable> {
        let r = self.fallback.get_or_init(|| {
            let opts = BuildOptions { h: self.fallback_h.clone(), ..self.opts.clone() };
            build_table(&self.data, &opts).map(|t| t.0).map_err(|e| e.to_string())
        });
        r.as_ref().map_err(|e| CliError::Engine(Error::Invalid(e.clone())))
    }

    /// Queries the primary table, rebuilding with the fallback `h` on ambiguity.
    pub fn query(&self, v: &BigInt) -> CliResult<FrobeniusAt> {
        match self.primary.a_p(v) {
            Err(Error::AmbiguousClass(_)) if self.primary.h != self.fallback_h => Ok(self.fallback()?.a_p(v)?),
            r => Ok(r?),
        }
    }
}

/// `<p>\t<factored minpoly>\t<trace>`, the layout of the shipped tables.
pub fn format_row(label: &str, fr: &FrobeniusAt) -> String {
    format!("{label}\t{}\t{}", fr.minpoly, fr.trace)
}

pub fn cmd_check(data: &RepData, cap: u64) -> CliResult<String> {
    report_result(certify::checklist(data, cap))
}

fn report_result(rep: CertReport) -> CliResult<String> {
    let text = rep.to_string();
    if rep.ok() {
        Ok(text)
    } else {
        Err(CliError::CheckFailed(text))
    }
}

pub fn cmd_resolvents(data: &RepData, opts: &BuildOptions) -> CliResult<(ResolventTable, String)> {
    let t = Instant::now();
    let (tab, rep) = build_table(data, opts)?;
    Ok((tab, build_summary(&rep, tab_size(data), t.elapsed())))
}

fn tab_size(data: &RepData) -> usize {
    data.expected_degree()
}

fn build_summary(rep: &BuildReport, n: usize, elapsed: Duration) -> String {
    format!(
        "p {}\nK {}\nroots {n}\ncandidates {}\nsurvivors {}\nelapsed {:.1}s\n",
        rep.p,
        rep.k,
        rep.candidates,
        rep.survivors,
        elapsed.as_secs_f64()
    )
}

pub fn cmd_ap(table: &ResolventTable, expr: &str) -> CliResult<String> {
    let v = parse_prime(expr)?;
    Ok(format_row(expr, &table.a_p(&v)?))
}

/// Rows for the given primes, in order; ambiguous primes go through the fallback table.
pub fn cmd_table(set: &TableSet, primes: &[(String, BigInt)]) -> Vec<CliResult<String>> {
    primes.par_iter().map(|(label, v)| set.query(v).map(|fr| format_row(label, &fr))).collect()
}

/// `<p>\t<row at l5>\t<row at l27>\t<a+b alpha>` for the weight 24 pair.
pub fn cmd_table_f24(l5: &TableSet, l27: &TableSet, primes: &[(String, BigInt)]) -> Vec<CliResult<String>> {
    primes
        .par_iter()
        .map(|(label, v)| {
            let a = l5.query(v)?;
            let b = l27.query(v)?;
            Ok(format!("{label}\t{}\t{}\t{}", a.minpoly, b.minpoly, crt_combine(a.trace as u64, b.trace as u64)))
        })
        .collect()
}

pub fn cmd_certify(table: &ResolventTable, below: Option<&RepData>, cap: u64) -> CliResult<String> {
    let oracle = Oracle::new(table.weight, (cap as usize).clamp(100, 20_000))?;
    report_result(certify::certify_table(table, &oracle, below.map(|d| &d.poly), cap))
}

pub fn cmd_a2(delta: &ZPoly, ell: u64, j: u32, cap: u64, seed: u64) -> CliResult<String> {
    report_result(certify::check_a2(delta, ell, j, cap, seed)?)
}

/// `n a_n [a_n mod l]` for `1 <= n <= count`.
pub fn cmd_qexp(k: u32, count: usize, ell: Option<u64>) -> CliResult<String> {
    let mut s = String::new();
    if k == 24 {
        let f = s24_eigenform(count)?;
        for n in 1..=count {
            writeln!(s, "{n} {}", f.coeff(n)?).unwrap();
        }
        return Ok(s);
    }
    let f = eigenform(k, count)?;
    for n in 1..=count {
        let a = f.coeff(n)?;
        match ell {
            Some(l) => {
                let m = BigInt::from(l);
                let r = ((a % &m) + &m) % &m;
                writeln!(s, "{n} {a} {r}").unwrap()
            }
            None => writeln!(s, "{n} {a}").unwrap(),
        }
    }
    Ok(s)
}

/// Label for a prime: the `10^E+c` shorthand when it applies.
pub fn prime_label(v: &BigInt) -> String {
    format_int_expr(v)
}

/// Whether a report line is a pass line for `name`.
pub fn line_status(report: &str, name: &str) -> Option<Status> {
    report.lines().find_map(|l| {
        let mut t = l.split_whitespace();
        (t.next() == Some("CHECK") && t.next() == Some(name)).then(|| match t.next() {
            Some("pass") => Status::Pass,
            Some("skipped") => Status::Skipped,
            _ => Status::Fail,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::AmbiguousClass(2)).exit_code(), 3);
        assert_eq!(CliError::from(Error::Parse { line: 1, msg: "x".into() }).exit_code(), 2);
        assert_eq!(CliError::CheckFailed(String::new()).exit_code(), 1);
    }

    #[test]
    fn small_prime_search() {
        let p = primes_from(&BigInt::from(90), 5);
        assert_eq!(p, [97, 101, 103, 107, 109].map(BigInt::from));
        assert_eq!(primes_from(&BigInt::zero(), 3), [2, 3, 5].map(BigInt::from));
    }

    #[test]
    fn composite_rejected() {
        assert!(matches!(parse_prime("10^1000+451"), Err(CliError::Input(_))));
        assert!(parse_prime("101").is_ok());
    }

    #[test]
    fn qexp_lines() {
        let s = cmd_qexp(12, 3, Some(11)).unwrap();
        assert_eq!(s, "1 1 1\n2 -24 9\n3 252 10\n");
    }
}
