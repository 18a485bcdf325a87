//! Text grammar for polynomials and the `.poly` file format.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! A file may contain `#` comment lines and one `vars:` directive fixing the
//! variable order, with `;` separating the x-block from the u-block.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Polynomial, VarSet};
use crate::error::{Error, Result};

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (li + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Int(s.parse().expect("digits")),
                    line,
                    column,
                });
                continue;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    column,
                });
                continue;
            } else {
                match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => {
                        return Err(Error::Parse {
                            line,
                            column,
                            message: format!("unexpected character `{c}`"),
                        })
                    }
                }
            };
            out.push(Spanned { tok, line, column });
            i += 1;
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a Arc<VarSet>,
    end: (usize, usize),
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column))
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.vars);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -BigRational::one()
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                BigRational::one()
            }
            _ => BigRational::one(),
        };
        loop {
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
            sign = match self.peek() {
                Some(Tok::Plus) => BigRational::one(),
                Some(Tok::Minus) => -BigRational::one(),
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.try_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().cloned() {
            Some(Tok::Int(e)) => {
                let e: u32 = match u32::try_from(&e) {
                    Ok(e) if e <= 1 << 16 => e,
                    _ => return self.fail("exponent too large"),
                };
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.fail("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut d = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(x)) if !x.is_zero() => {
                            d = x;
                            self.pos += 1;
                        }
                        Some(Tok::Int(_)) => return self.fail("zero denominator"),
                        _ => return self.fail("expected an integer denominator"),
                    }
                }
                Ok(Polynomial::constant(self.vars, BigRational::new(n, d)))
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.vars, i))
                }
                None => self.fail(format!("unknown variable `{name}`")),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(t) => self.fail(format!("unexpected token {t:?}")),
            None => self.fail("unexpected end of input"),
        }
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let lines: Vec<&str> = text.lines().collect();
    match lines.last() {
        Some(l) => (lines.len(), l.chars().count() + 1),
        None => (1, 1),
    }
}

pub(crate) fn parse_with(text: &str, vars: &Arc<VarSet>) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end: end_position(text),
    };
    if p.toks.is_empty() {
        return p.fail("empty polynomial");
    }
    let f = p.expr()?;
    if p.pos < p.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(f)
}

/// Orders names by alphabetic prefix, then numeric suffix (`x2 < x10`).
fn natural_key(name: &str) -> (String, u128, String) {
    let split = name
        .char_indices()
        .rev()
        .take_while(|(_, c)| c.is_ascii_digit())
        .last()
        .map_or(name.len(), |(i, _)| i);
    let (head, tail) = name.split_at(split);
    (head.to_string(), tail.parse().unwrap_or(0), tail.to_string())
}

/// Parsed `.poly` file: the polynomial and the variable set it lives in.
#[derive(Clone, Debug)]
pub struct PolynomialFile {
    pub vars: Arc<VarSet>,
    pub polynomial: Polynomial,
}

/// Parses a `.poly` file. Without a `vars:` directive the variables are the
/// identifiers that occur, in natural order.
pub fn parse_polynomial_file(text: &str) -> Result<PolynomialFile> {
    let mut body = String::with_capacity(text.len());
    let mut directive: Option<(usize, String)> = None;
    for (li, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if trimmed.starts_with('#') {
            body.push('\n');
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("vars:") {
            if directive.is_some() {
                return Err(Error::Parse {
                    line: li + 1,
                    column: 1,
                    message: "duplicate `vars:` directive".into(),
                });
            }
            directive = Some((li + 1, rest.to_string()));
            body.push('\n');
            continue;
        }
        body.push_str(line);
        body.push('\n');
    }
    let vars = match directive {
        Some((line, text)) => {
            let mut blocks = text.split(';');
            let xs: Vec<&str> = blocks.next().unwrap_or("").split_whitespace().collect();
            let us: Option<Vec<&str>> = blocks.next().map(|b| b.split_whitespace().collect());
            if blocks.next().is_some() {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: "at most one `;` is allowed in `vars:`".into(),
                });
            }
            let built = match us {
                Some(us) => VarSet::bipartite(xs, us),
                None => VarSet::new(xs),
            };
            built.map_err(|e| Error::Parse {
                line,
                column: 1,
                message: e.to_string(),
            })?
        }
        None => {
            let mut names: Vec<String> = tokenize(&body)?
                .into_iter()
                .filter_map(|s| match s.tok {
                    Tok::Ident(n) => Some(n),
                    _ => None,
                })
                .collect();
            names.sort_by_key(|n| natural_key(n));
            names.dedup();
            VarSet::new(names)?
        }
    };
    let polynomial = parse_with(&body, &vars)?;
    Ok(PolynomialFile { vars, polynomial })
}

/// Inverse of [`parse_polynomial_file`]; always writes the `vars:` directive.
pub fn write_polynomial_file(f: &Polynomial, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
    }
    let vars = f.vars();
    out.push_str("vars:");
    match vars.x_count() {
        Some(n) => {
            for name in &vars.names()[..n] {
                out.push(' ');
                out.push_str(name);
            }
            out.push_str(" ;");
            for name in &vars.names()[n..] {
                out.push(' ');
                out.push_str(name);
            }
        }
        None => {
            for name in vars.names() {
                out.push(' ');
                out.push_str(name);
            }
        }
    }
    out.push('\n');
    out.push_str(&f.to_string());
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_accepts_rationals_powers_and_parentheses() {
        let v = VarSet::numbered("x", 2);
        let f = parse_with("  -3/2*x1^2 + (x1 - x2)^2 - x1^2", &v).unwrap();
        assert_eq!(f.to_string(), "-3/2*x1^2 - 2*x1*x2 + x2^2");
    }

    #[test]
    fn errors_carry_positions() {
        let v = VarSet::numbered("x", 2);
        match parse_with("x1 +\n  x1 * y", &v) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("{other:?}"),
        }
        match parse_with("x1 + 1/0", &v) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 8)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_with("x1 +", &v), Err(Error::Parse { .. })));
        assert!(matches!(parse_with("x1 $ x2", &v), Err(Error::Parse { .. })));
    }

    #[test]
    fn file_without_directive_sorts_naturally() {
        let pf = parse_polynomial_file("# comment\nx10*x2*x1 + x1^2*x10\n").unwrap();
        assert_eq!(pf.vars.names(), &["x1", "x2", "x10"]);
        assert_eq!(pf.polynomial.homogeneous_degree(), Some(3));
    }

    #[test]
    fn file_roundtrip_with_bipartition() {
        let text = "vars: x1 x2 ; u1 u2 u3\nx1*u1*u2 + x2*u2*u3\n";
        let pf = parse_polynomial_file(text).unwrap();
        assert_eq!(pf.vars.x_count(), Some(2));
        assert_eq!(pf.polynomial.bidegree(), Some((1, 2)));
        let written = write_polynomial_file(&pf.polynomial, Some("square-free"));
        let again = parse_polynomial_file(&written).unwrap();
        assert_eq!(again.polynomial, pf.polynomial);
        assert_eq!(again.vars.x_count(), Some(2));
    }

    #[test]
    fn directive_errors() {
        assert!(parse_polynomial_file("vars: x x\nx^2").is_err());
        assert!(parse_polynomial_file("vars: x ; y ; z\nx").is_err());
        assert!(parse_polynomial_file("vars: x\nx*y").is_err());
    }
}
