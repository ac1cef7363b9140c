use std::fmt::{self, Write};

use num_traits::{One, Signed};

use super::poly::{Poly, Rational};
use super::Expr;

/// Renders an expression in the input grammar, so the output re-parses to
/// the same canonical value.
pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    names: &'a [String],
}

impl<'a> ExprDisplay<'a> {
    pub(crate) fn new(expr: &'a Expr, names: &'a [String]) -> Self {
        ExprDisplay { expr, names }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.expr.numerator();
        let den = self.expr.denominator();
        if den.is_one() {
            return write_poly(f, num, self.names);
        }
        if num.len() > 1 {
            f.write_char('(')?;
            write_poly(f, num, self.names)?;
            f.write_char(')')?;
        } else {
            write_poly(f, num, self.names)?;
        }
        f.write_char('/')?;
        if is_bare_power(den) {
            write_poly(f, den, self.names)
        } else {
            f.write_char('(')?;
            write_poly(f, den, self.names)?;
            f.write_char(')')
        }
    }
}

/// A single variable power with unit coefficient, e.g. `z^2`.
fn is_bare_power(p: &Poly) -> bool {
    match p.leading() {
        Some((m, c)) if p.len() == 1 && c.is_one() => m.iter().filter(|&&e| e > 0).count() == 1,
        _ => false,
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, names: &[String]) -> fmt::Result {
    if p.is_zero() {
        return f.write_char('0');
    }
    for (idx, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if idx == 0 {
            if negative {
                f.write_char('-')?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        write_term(f, m, &c.abs(), names)?;
    }
    Ok(())
}

fn write_term(f: &mut fmt::Formatter<'_>, m: &[u32], c: &Rational, names: &[String]) -> fmt::Result {
    let mut factors = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .peekable();
    if factors.peek().is_none() {
        return write!(f, "{c}");
    }
    if !c.is_one() {
        write!(f, "{c}*")?;
    }
    let parts: Vec<String> = factors.collect();
    f.write_str(&parts.join("*"))
}
