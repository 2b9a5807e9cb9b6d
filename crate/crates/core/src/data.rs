//! Representation data files: `F_r` together with the form it belongs to.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::arith::ZPoly;
use crate::error::{Error, Result};
use crate::modforms::Embedding;

pub const DATA_HEADER: &str = "GALREP-DATA v1";

#[derive(Clone, Debug, PartialEq)]
pub struct RepData {
    pub ell: u32,
    pub weight: u32,
    pub r: u32,
    pub form: String,
    pub embedding: Option<Embedding>,
    pub poly: ZPoly,
}

impl RepData {
    /// Expected degree `2^r (l + 1)`.
    pub fn expected_degree(&self) -> usize {
        (1usize << self.r) * (self.ell as usize + 1)
    }

    /// Level of the form; every shipped form has level one.
    pub fn level(&self) -> u64 {
        1
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = tokens_by_line(text);
        let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        if head.join(" ") != DATA_HEADER {
            return Err(Error::parse(ln, format!("expected header `{DATA_HEADER}`")));
        }
        let mut ell = None;
        let mut weight = None;
        let mut r = None;
        let mut form = None;
        let mut embedding = None;
        let mut coeffs: Option<Vec<BigInt>> = None;
        let mut ended = false;
        let mut last = ln;
        while let Some((ln, toks)) = lines.next() {
            last = ln;
            if coeffs.is_some() && toks[0] != "end" {
                let c = coeffs.as_mut().unwrap();
                for t in &toks {
                    c.push(t.parse().map_err(|_| Error::parse(ln, format!("bad integer `{t}`")))?);
                }
                continue;
            }
            match (toks[0], toks.len()) {
                ("ell", 2) => ell = Some(parse_u32(ln, toks[1])?),
                ("weight", 2) => weight = Some(parse_u32(ln, toks[1])?),
                ("r", 2) => r = Some(parse_u32(ln, toks[1])?),
                ("form", 2) => form = Some(toks[1].to_string()),
                ("embedding", 2) => embedding = Some(Embedding::parse(toks[1]).map_err(|_| Error::parse(ln, "embedding must be l5 or l27"))?),
                ("poly", _) => {
                    let mut c = Vec::new();
                    for t in &toks[1..] {
                        c.push(t.parse().map_err(|_| Error::parse(ln, format!("bad integer `{t}`")))?);
                    }
                    coeffs = Some(c);
                }
                ("end", 1) => {
                    ended = true;
                    break;
                }
                _ => return Err(Error::parse(ln, format!("unexpected line `{}`", toks.join(" ")))),
            }
        }
        if !ended {
            return Err(Error::parse(last, "missing `end`"));
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "content after `end`"));
        }
        let missing = |f: &str| Error::parse(last, format!("missing field `{f}`"));
        let d = RepData {
            ell: ell.ok_or_else(|| missing("ell"))?,
            weight: weight.ok_or_else(|| missing("weight"))?,
            r: r.ok_or_else(|| missing("r"))?,
            form: form.ok_or_else(|| missing("form"))?,
            embedding,
            poly: ZPoly::from_bigints(coeffs.ok_or_else(|| missing("poly"))?),
        };
        d.validate(last)?;
        Ok(d)
    }

    fn validate(&self, line: usize) -> Result<()> {
        if self.poly.degree() != Some(self.expected_degree()) {
            return Err(Error::parse(
                line,
                format!("degree {:?} differs from 2^r (l + 1) = {}", self.poly.degree(), self.expected_degree()),
            ));
        }
        if !self.poly.is_monic() {
            return Err(Error::parse(line, "polynomial is not monic"));
        }
        Ok(())
    }

    /// Canonical text form, one coefficient per line.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{DATA_HEADER}").unwrap();
        writeln!(s, "ell {}", self.ell).unwrap();
        writeln!(s, "weight {}", self.weight).unwrap();
        writeln!(s, "r {}", self.r).unwrap();
        writeln!(s, "form {}", self.form).unwrap();
        if let Some(e) = self.embedding {
            writeln!(s, "embedding {}", e.tag()).unwrap();
        }
        writeln!(s, "poly").unwrap();
        for c in self.poly.coeffs() {
            writeln!(s, "{c}").unwrap();
        }
        writeln!(s, "end").unwrap();
        s
    }
}

fn parse_u32(line: usize, t: &str) -> Result<u32> {
    t.parse().map_err(|_| Error::parse(line, format!("bad integer `{t}`")))
}

/// Non-empty lines with `#` comments stripped, as (1-based line number, tokens).
pub(crate) fn tokens_by_line(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap();
        let toks: Vec<&str> = l.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}
