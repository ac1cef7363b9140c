//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' unary)?
//! atom   := number | identifier | '(' expr ')'
//! ```
//!
//! Exponents must evaluate to integer constants. Numbers are integers or
//! finite decimals, both read exactly.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::Rational;
use super::{Chart, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownIdentifier(String),
    NonIntegerExponent,
    DivisionByZero,
    Empty,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{}", self.describe())]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

impl ParseError {
    fn describe(&self) -> String {
        let what = match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => format!("unexpected character `{c}`"),
            ParseErrorKind::UnexpectedEnd => "unexpected end of input".to_string(),
            ParseErrorKind::UnexpectedToken(t) => format!("unexpected `{t}`"),
            ParseErrorKind::UnknownIdentifier(n) => format!("unknown identifier `{n}`"),
            ParseErrorKind::NonIntegerExponent => "exponent is not an integer".to_string(),
            ParseErrorKind::DivisionByZero => "division by zero".to_string(),
            ParseErrorKind::Empty => "empty expression".to_string(),
        };
        format!("{what} at position {}", self.position)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Num(r) => r.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Plus => "+".into(),
            Tok::Minus => "-".into(),
            Tok::Star => "*".into(),
            Tok::Slash => "/".into(),
            Tok::Caret => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn decimal_to_rational(int_part: &str, frac_part: &str) -> Option<Rational> {
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(numer, denom))
}

/// Parses `3`, `-3`, `3/4`, `-0.25`.
pub(crate) fn parse_rational_literal(text: &str) -> Option<Rational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let value = if let Some((n, d)) = body.split_once('/') {
        let n = parse_rational_literal(n.trim())?;
        let d = parse_rational_literal(d.trim())?;
        if d.is_zero() {
            return None;
        }
        n / d
    } else if let Some((i, f)) = body.split_once('.') {
        if !i.chars().chain(f.chars()).all(|c| c.is_ascii_digit()) || (i.is_empty() && f.is_empty()) {
            return None;
        }
        decimal_to_rational(i, f)?
    } else {
        if body.is_empty() || !body.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        Rational::from_integer(body.parse().ok()?)
    };
    Some(if neg { -value } else { value })
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() || c == '.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                let lit = &text[start..i];
                let value = match lit.split_once('.') {
                    Some((a, b)) if !b.contains('.') && !(a.is_empty() && b.is_empty()) => {
                        decimal_to_rational(a, b)
                    }
                    Some(_) => None,
                    None => lit.parse::<BigInt>().ok().map(Rational::from_integer),
                };
                let value = value.ok_or(ParseError {
                    kind: ParseErrorKind::UnexpectedToken(lit.to_string()),
                    position: start,
                })?;
                out.push((Tok::Num(value), start));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ParseError {
                    kind: ParseErrorKind::UnexpectedChar(ch),
                    position: start,
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    chart: &'a Chart,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.offset(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let rhs = self.unary()?;
                    acc = acc.checked_div(&rhs).ok_or(ParseError {
                        kind: ParseErrorKind::DivisionByZero,
                        position: at,
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        let exponent = self.unary()?;
        let exp = exponent
            .as_constant()
            .filter(|c| c.is_integer())
            .and_then(|c| i64::try_from(c.to_integer()).ok())
            .ok_or(ParseError {
                kind: ParseErrorKind::NonIntegerExponent,
                position: at,
            })?;
        base.powi(exp).ok_or(ParseError {
            kind: ParseErrorKind::DivisionByZero,
            position: at,
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let n = self.chart.dim();
        let Some((tok, at)) = self.toks.get(self.pos).cloned() else {
            return Err(self.err(ParseErrorKind::UnexpectedEnd));
        };
        self.pos += 1;
        match tok {
            Tok::Num(r) => Ok(Expr::constant(n, r)),
            Tok::Ident(name) => match self.chart.coord_index(&name) {
                Some(i) => Ok(Expr::var(n, i)),
                None => Err(ParseError {
                    kind: ParseErrorKind::UnknownIdentifier(name),
                    position: at,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t) => {
                        let t = t.text();
                        Err(self.err(ParseErrorKind::UnexpectedToken(t)))
                    }
                    None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
                }
            }
            other => Err(ParseError {
                kind: ParseErrorKind::UnexpectedToken(other.text()),
                position: at,
            }),
        }
    }
}

pub(crate) fn parse(text: &str, chart: &Chart) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError {
            kind: ParseErrorKind::Empty,
            position: 0,
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        chart,
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        let t = t.text();
        return Err(p.err(ParseErrorKind::UnexpectedToken(t)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    fn kind(text: &str) -> ParseErrorKind {
        chart().parse(text).unwrap_err().kind
    }

    #[test]
    fn precedence_and_associativity() {
        let c = chart();
        assert_eq!(c.parse("1/2*x").unwrap(), c.parse("x/2").unwrap());
        assert_eq!(c.parse("-x^2").unwrap(), -c.parse("x*x").unwrap());
        assert_eq!(c.parse("2^3^2").unwrap(), c.integer(512));
        assert_eq!(c.parse("x - y - z").unwrap(), c.parse("x - (y + z)").unwrap());
        assert_eq!(c.parse("z^-2").unwrap(), c.parse("1/(z*z)").unwrap());
        assert_eq!(c.parse("0.25*x").unwrap(), c.parse("x/4").unwrap());
    }

    #[test]
    fn error_kinds() {
        assert_eq!(kind("x + w"), ParseErrorKind::UnknownIdentifier("w".into()));
        assert_eq!(kind("x^y"), ParseErrorKind::NonIntegerExponent);
        assert_eq!(kind("x^(1/2)"), ParseErrorKind::NonIntegerExponent);
        assert_eq!(kind("x/(y - y)"), ParseErrorKind::DivisionByZero);
        assert_eq!(kind("(x + 1"), ParseErrorKind::UnexpectedEnd);
        assert_eq!(kind("x $ y"), ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(kind(""), ParseErrorKind::Empty);
        assert_eq!(kind("x y"), ParseErrorKind::UnexpectedToken("y".into()));
    }

    #[test]
    fn errors_carry_positions() {
        let err = chart().parse("x + (y * w)").unwrap_err();
        assert_eq!(err.position, 9);
        assert_eq!(err.to_string(), "unknown identifier `w` at position 9");
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational_literal("-1/2"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational_literal("0.5"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational_literal("7"), Some(Rational::one() * Rational::from_integer(7.into())));
        assert_eq!(parse_rational_literal("1/0"), None);
        assert_eq!(parse_rational_literal("a"), None);
    }
}
