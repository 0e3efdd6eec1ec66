//! Words over the generators.
//!
//! Grammar: `word := ε | factor ('*' factor)*`, `factor := atom ('^' int)?`,
//! `atom := NAME | '(' word ')'`. Powers of parenthesized groups are expanded;
//! a power on a bare name stays a single token. `1` denotes the empty word.

use std::fmt;
use std::str::FromStr;

use crate::affine::{compose, inverse, AffineMap};
use crate::catalog::{Generator, Token};
use crate::error::{Error, Result};

/// How a written product `A*B` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Function composition: `A*B` applies B first.
    Last,
    /// `A*B` applies A first.
    First,
}

impl Convention {
    pub const BOTH: [Convention; 2] = [Convention::Last, Convention::First];

    pub fn as_str(self) -> &'static str {
        match self {
            Convention::Last => "last",
            Convention::First => "first",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "last" => Ok(Convention::Last),
            "first" => Ok(Convention::First),
            _ => Err(Error::InvalidInput(format!("convention must be `last` or `first`, got `{s}`"))),
        }
    }
}

const MAX_EXPANDED: usize = 1 << 20;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::WordSyntax { message: message.to_string(), position: self.pos })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn product(&mut self) -> Result<Vec<Token>> {
        let mut out = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            out.extend(self.factor()?);
            if out.len() > MAX_EXPANDED {
                return self.err("expanded word too long");
            }
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<Vec<Token>> {
        let atom = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = if self.peek() == Some(b')') { Vec::new() } else { self.product()? };
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Atom::Group(inner)
            }
            Some(c) if c.is_ascii_alphanumeric() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "1" {
                    Atom::Group(Vec::new())
                } else {
                    Atom::Gen(name.parse::<Generator>()?)
                }
            }
            _ => return self.err("expected a generator name or `(`"),
        };
        let exp = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.int()?
        } else {
            1
        };
        Ok(match atom {
            Atom::Gen(_) if exp == 0 => Vec::new(),
            Atom::Gen(g) => vec![Token::new(g, exp)],
            Atom::Group(ts) => power(&ts, exp).ok_or(Error::WordSyntax {
                message: "expanded word too long".into(),
                position: self.pos,
            })?,
        })
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match s.parse::<i64>() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer exponent")
            }
        }
    }
}

enum Atom {
    Gen(Generator),
    Group(Vec<Token>),
}

fn power(ts: &[Token], n: i64) -> Option<Vec<Token>> {
    let base: Vec<Token> = if n < 0 { invert_word(ts) } else { ts.to_vec() };
    let reps = n.unsigned_abs() as usize;
    if base.len().checked_mul(reps)? > MAX_EXPANDED {
        return None;
    }
    Some(base.iter().copied().cycle().take(base.len() * reps).collect())
}

pub fn invert_word(ts: &[Token]) -> Vec<Token> {
    ts.iter().rev().map(Token::inverse).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<Token>> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return Ok(Vec::new());
    }
    let out = p.product()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

pub fn format_word(ts: &[Token]) -> String {
    if ts.is_empty() {
        return "1".into();
    }
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join("*")
}

fn token_map(t: &Token) -> AffineMap {
    let g = t.gen.map();
    let base = if t.exp < 0 { inverse(g) } else { g.clone() };
    let mut acc = AffineMap::identity();
    for _ in 0..t.exp.unsigned_abs() {
        acc = compose(&acc, &base);
    }
    acc
}

/// Folds the word into one affine map under the given reading.
pub fn evaluate_word(tokens: &[Token], convention: Convention) -> AffineMap {
    let mut acc = AffineMap::identity();
    for t in tokens {
        let m = token_map(t);
        acc = match convention {
            Convention::Last => compose(&acc, &m),
            Convention::First => compose(&m, &acc),
        };
    }
    acc.with_word(tokens.to_vec())
}

pub fn evaluate_str(s: &str, convention: Convention) -> Result<AffineMap> {
    Ok(evaluate_word(&parse_word(s)?, convention))
}
