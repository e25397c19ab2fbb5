//! Text formats: the expression grammar for elements of `K` (and of
//! `K[X]`), and the line-oriented sequence description file.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := ['-'] atom ['^' ['-'] integer]
//! atom     := rational | variable | '(' expr ')'
//! rational := integer ['/' positive-integer]
//! variable := 't' index        (1..=r)   |   'X' (polynomials only)
//! ```
//!
//! Sequence files:
//!
//! ```text
//! # s_n = t2^(n+1)
//! rank = 2
//! prefix = [t2]
//! tail.u = t2^2 - t2
//! tail.b = (0,1)
//! tail.n0 = 0
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lexgroup::LexVec;
use crate::pcvseq::{GeoTail, PCSeq};
use crate::valfield::{FieldElement, KPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn perr<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos,
        msg: msg.into(),
    })
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b't' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return perr(start, "expected a variable index after 't'");
                }
                let idx: usize = text[ds..i]
                    .parse()
                    .or_else(|_| perr(ds, "variable index too large"))?;
                out.push((start, Tok::Var(idx)));
                continue;
            }
            b'X' => out.push((start, Tok::X)),
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'/' => out.push((start, Tok::Slash)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return perr(start, format!("unexpected character '{ch}'"));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    rank: usize,
    allow_x: bool,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<KPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<KPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.bump();
                    let d = self.factor()?;
                    acc = acc.scale(&self.constant_inverse(&d, at)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn constant_inverse(&self, d: &KPoly, at: usize) -> Result<FieldElement> {
        let c = match d.as_constant() {
            Some(c) => c,
            None => return perr(at, "division by a polynomial in X"),
        };
        c.inv()
            .or_else(|_| perr(at, "division by the zero polynomial"))
    }

    fn factor(&mut self) -> Result<KPoly> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let base = self.atom()?;
        let value = if self.peek() == Some(&Tok::Caret) {
            let at = self.offset();
            self.bump();
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let e = match self.bump() {
                Some(Tok::Int(n)) => n,
                _ => return perr(self.offset(), "expected an integer exponent"),
            };
            let e: u32 = u32::try_from(&e).or_else(|_| perr(at, "exponent too large"))?;
            if neg {
                let inv = self.constant_inverse(&base, at)?;
                let p = inv
                    .pow(i64::from(e))
                    .or_else(|_| perr(at, "division by the zero polynomial"))?;
                KPoly::constant(p)
            } else {
                base.pow(e)
            }
        } else {
            base
        };
        Ok(if negate { value.neg() } else { value })
    }

    fn atom(&mut self) -> Result<KPoly> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // integer '/' integer is a single rational literal
                let mut value = BigRational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    if let Some((dp, Tok::Int(d))) = self.toks.get(self.pos + 1) {
                        if d.is_zero() {
                            return perr(*dp, "division by the zero polynomial");
                        }
                        value /= BigRational::from_integer(d.clone());
                        self.pos += 2;
                    }
                }
                Ok(KPoly::constant(FieldElement::constant(self.rank, value)))
            }
            Some(Tok::Var(i)) => {
                if i == 0 || i > self.rank {
                    return perr(at, format!("variable index t{i} out of rank {}", self.rank));
                }
                Ok(KPoly::constant(FieldElement::var(self.rank, i)))
            }
            Some(Tok::X) if self.allow_x => Ok(KPoly::x(self.rank)),
            Some(Tok::X) => perr(at, "X is not allowed in a field element"),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => perr(at, "unbalanced parenthesis"),
                }
            }
            Some(_) => perr(at, "expected a number, variable or '('"),
            None => perr(at, "unexpected end of expression"),
        }
    }
}

fn parse_with(text: &str, rank: usize, allow_x: bool) -> Result<KPoly> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        rank,
        allow_x,
    };
    let v = p.expr()?;
    if p.pos < toks.len() {
        return perr(p.offset(), "unexpected trailing input");
    }
    Ok(v)
}

/// Parse an element of `K = ℚ(t1..t_rank)`.
pub fn parse_expr(text: &str, rank: usize) -> Result<FieldElement> {
    let p = parse_with(text, rank, false)?;
    Ok(p.as_constant().expect("no X in a field expression"))
}

/// Parse a polynomial in `X` over `K`.
pub fn parse_kpoly(text: &str, rank: usize) -> Result<KPoly> {
    parse_with(text, rank, true)
}

/// The textual content of a sequence file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub rank: usize,
    pub prefix: Vec<String>,
    pub u: String,
    pub b: Vec<i64>,
    pub n0: usize,
}

fn line_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        pos: line,
        msg: format!("line {line}: {}", msg.into()),
    })
}

fn split_list(body: &str, open: char, close: char) -> Option<Vec<String>> {
    let inner = body.trim().strip_prefix(open)?.strip_suffix(close)?;
    if inner.trim().is_empty() {
        return Some(Vec::new());
    }
    Some(inner.split(',').map(|s| s.trim().to_string()).collect())
}

impl SequenceSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut rank = None;
        let mut prefix = None;
        let mut u = None;
        let mut b = None;
        let mut n0 = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return line_err(line_no, "expected 'key = value'");
            };
            let (key, value) = (key.trim(), value.trim());
            let dup = match key {
                "rank" => rank
                    .replace(
                        value
                            .parse::<usize>()
                            .or_else(|_| line_err(line_no, "rank must be a positive integer"))?,
                    )
                    .is_some(),
                "prefix" => {
                    let items = split_list(value, '[', ']')
                        .map_or_else(|| line_err(line_no, "prefix must be [expr, ...]"), Ok)?;
                    prefix.replace(items).is_some()
                }
                "tail.u" => u.replace(value.to_string()).is_some(),
                "tail.b" => {
                    let items = split_list(value, '(', ')')
                        .map_or_else(|| line_err(line_no, "tail.b must be (int,...,int)"), Ok)?;
                    let coords = items
                        .iter()
                        .map(|s| s.parse::<i64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .or_else(|_| line_err(line_no, "tail.b entries must be integers"))?;
                    b.replace(coords).is_some()
                }
                "tail.n0" => n0
                    .replace(
                        value.parse::<usize>().or_else(|_| {
                            line_err(line_no, "tail.n0 must be a nonnegative integer")
                        })?,
                    )
                    .is_some(),
                other => return line_err(line_no, format!("unknown key '{other}'")),
            };
            if dup {
                return line_err(line_no, format!("duplicate key '{key}'"));
            }
        }
        let rank = rank.map_or_else(|| line_err(0, "missing 'rank'"), Ok)?;
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let prefix: Vec<String> = prefix.map_or_else(|| line_err(0, "missing 'prefix'"), Ok)?;
        if prefix.is_empty() {
            return line_err(0, "prefix must contain at least one term");
        }
        let n0 = n0.unwrap_or(prefix.len() - 1);
        Ok(SequenceSpec {
            rank,
            u: u.map_or_else(|| line_err(0, "missing 'tail.u'"), Ok)?,
            b: b.map_or_else(|| line_err(0, "missing 'tail.b'"), Ok)?,
            prefix,
            n0,
        })
    }

    /// Parse every expression and validate the sequence.
    pub fn build(&self) -> Result<PCSeq> {
        let prefix = self
            .prefix
            .iter()
            .map(|s| parse_expr(s, self.rank))
            .collect::<Result<Vec<_>>>()?;
        let u = parse_expr(&self.u, self.rank)?;
        if self.b.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: self.b.len(),
            });
        }
        let b = LexVec::new(self.b.iter().copied());
        PCSeq::new(prefix, GeoTail::new(u, b, self.n0))
    }

    pub fn from_seq(seq: &PCSeq) -> Self {
        SequenceSpec {
            rank: seq.rank(),
            prefix: seq.prefix().iter().map(ToString::to_string).collect(),
            u: seq.tail().u.to_string(),
            b: seq
                .tail()
                .b
                .coords()
                .iter()
                .map(|c| i64::try_from(c).expect("tail step fits in i64"))
                .collect(),
            n0: seq.start(),
        }
    }

    pub fn to_text(&self) -> String {
        let b: Vec<String> = self.b.iter().map(ToString::to_string).collect();
        format!(
            "rank = {}\nprefix = [{}]\ntail.u = {}\ntail.b = ({})\ntail.n0 = {}\n",
            self.rank,
            self.prefix.join(", "),
            self.u,
            b.join(","),
            self.n0
        )
    }
}

pub fn parse_sequence(text: &str) -> Result<PCSeq> {
    SequenceSpec::parse(text)?.build()
}
