//! Exact scalar fields on a coordinate chart.
//!
//! An [`Expr`] is a rational function over ℚ in the chart coordinates, held
//! in a canonical form: numerator and denominator are coprime and the
//! denominator is monic in lexicographic order. Two expressions are equal as
//! functions exactly when they are structurally equal.

mod gcd;
mod parse;
pub mod poly;
mod print;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use parse::{ParseError, ParseErrorKind};
pub use poly::{Poly, Rational};
pub use print::ExprDisplay;

/// Parses a rational literal such as `3`, `-2/5` or `0.25`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    parse::parse_rational_literal(text.trim())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    num: Poly,
    den: Poly,
}

impl Expr {
    pub fn zero(nvars: usize) -> Self {
        Expr {
            num: Poly::zero(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Expr {
            num: Poly::constant(nvars, c),
            den: Poly::one(nvars),
        }
    }

    pub fn integer(nvars: usize, n: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(n.into()))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_poly(Poly::var(nvars, index))
    }

    pub fn from_poly(p: Poly) -> Self {
        let nvars = p.nvars();
        Expr {
            num: p,
            den: Poly::one(nvars),
        }
    }

    /// Builds `num / den` in canonical form. Returns `None` if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let g = gcd::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Some(Self::normalized(num, den))
    }

    /// Scales so the denominator is monic. Assumes the parts are coprime.
    fn normalized(num: Poly, den: Poly) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self::zero(nvars);
        }
        let lc = den.leading_coeff();
        if lc.is_one() {
            Expr { num, den }
        } else {
            let inv = lc.recip();
            Expr {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value when the expression has degree zero in every coordinate.
    pub fn as_constant(&self) -> Option<Rational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn checked_div(&self, rhs: &Expr) -> Option<Expr> {
        if rhs.is_zero() {
            return None;
        }
        Some(self * &rhs.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Expr {
        let lc = self.num.leading_coeff();
        let inv = lc.recip();
        Expr {
            num: self.den.scale(&inv),
            den: self.num.scale(&inv),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Expr> {
        (!self.is_zero()).then(|| self.recip_unchecked())
    }

    pub fn powi(&self, exp: i64) -> Option<Expr> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = u32::try_from(exp.unsigned_abs()).ok()?;
        // Powers of coprime parts stay coprime.
        Some(Expr {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
        .map(|x| Self::normalized(x.num, x.den))
    }

    /// Exact partial derivative with respect to coordinate `var`.
    pub fn differentiate(&self, var: usize) -> Expr {
        assert!(var < self.nvars(), "coordinate index {var} out of range");
        let dn = self.num.derivative(var);
        if self.den.is_constant() {
            return Expr::normalized(dn, self.den.clone());
        }
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Expr::from_parts(dn, self.den.clone()).unwrap();
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Expr::from_parts(top, &self.den * &self.den).unwrap()
    }

    /// Evaluates at a point. Returns `None` if the denominator vanishes there.
    pub fn eval_at(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(point) / d)
    }

    pub fn display<'a>(&'a self, chart: &'a Chart) -> ExprDisplay<'a> {
        ExprDisplay::new(self, chart.coord_names())
    }

    /// Sign of a constant expression: -1, 0 or 1.
    pub fn constant_sign(&self) -> Option<i8> {
        let c = self.as_constant()?;
        Some(if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        })
    }
}

impl Add for &Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return Expr::normalized(num, self.den.clone());
            }
            return Expr::from_parts(num, self.den.clone()).unwrap();
        }
        // Henrici: only gcd(num, g) can cancel.
        let g = gcd::gcd(&self.den, &rhs.den);
        let b1 = self.den.div_exact(&g).unwrap();
        let d1 = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        let h = gcd::gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap())
        };
        let den = &(&b1 * &d1) * &g;
        Expr::normalized(num, den)
    }
}

impl Sub for &Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        self + &(-rhs)
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Expr {
    type Output = Expr;
    fn mul(self, rhs: &Expr) -> Expr {
        let nvars = self.nvars();
        if self.is_zero() || rhs.is_zero() {
            return Expr::zero(nvars);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Expr::from_poly(&self.num * &rhs.num);
        }
        let g1 = gcd::gcd(&self.num, &rhs.den);
        let g2 = gcd::gcd(&rhs.num, &self.den);
        let a = self.num.div_exact(&g1).unwrap();
        let d = rhs.den.div_exact(&g1).unwrap();
        let c = rhs.num.div_exact(&g2).unwrap();
        let b = self.den.div_exact(&g2).unwrap();
        Expr::normalized(&a * &c, &b * &d)
    }
}

impl Div for &Expr {
    type Output = Expr;
    /// Panics on division by zero; use [`Expr::checked_div`] for fallible division.
    fn div(self, rhs: &Expr) -> Expr {
        self.checked_div(rhs).expect("division by the zero expression")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { (&self).$m(&rhs) }
        }
        impl $tr<&Expr> for Expr {
            type Output = Expr;
            fn $m(self, rhs: &Expr) -> Expr { (&self).$m(rhs) }
        }
        impl $tr<Expr> for &Expr {
            type Output = Expr;
            fn $m(self, rhs: Expr) -> Expr { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

/// Sums expressions over a chart with `nvars` coordinates.
pub fn sum(nvars: usize, terms: impl IntoIterator<Item = Expr>) -> Expr {
    terms.into_iter().fold(Expr::zero(nvars), |acc, e| acc + e)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChartError {
    #[error("a chart needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("coordinate name `{0}` is used twice")]
    DuplicateCoordinate(String),
    #[error("`{0}` is not a valid coordinate name")]
    InvalidName(String),
    #[error("domain constraint `{0}` is identically zero")]
    ZeroConstraint(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("point has {got} coordinates, chart has {expected}")]
    WrongDimension { expected: usize, got: usize },
    #[error("denominator vanishes at the point")]
    DivisionByZero,
    #[error("point violates the domain constraint `{0}` != 0")]
    ConstraintViolated(String),
}

/// A coordinate chart: names for the coordinates plus expressions that
/// must stay nonzero on the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    coord_names: Vec<String>,
    domain_constraints: Vec<Expr>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, ChartError> {
        if names.len() < 2 {
            return Err(ChartError::TooFewCoordinates(names.len()));
        }
        let mut coord_names: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !parse::is_identifier(name) {
                return Err(ChartError::InvalidName(name.to_string()));
            }
            if coord_names.iter().any(|n| n == name) {
                return Err(ChartError::DuplicateCoordinate(name.to_string()));
            }
            coord_names.push(name.to_string());
        }
        Ok(Chart {
            coord_names,
            domain_constraints: Vec::new(),
        })
    }

    pub fn with_constraint(mut self, constraint: Expr) -> Result<Self, ChartError> {
        assert_eq!(constraint.nvars(), self.dim());
        if constraint.is_zero() {
            return Err(ChartError::ZeroConstraint(
                constraint.display(&self).to_string(),
            ));
        }
        self.domain_constraints.push(constraint);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.coord_names.len()
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    pub fn domain_constraints(&self) -> &[Expr] {
        &self.domain_constraints
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coord_names.iter().position(|n| n == name)
    }

    pub fn coord(&self, index: usize) -> Expr {
        Expr::var(self.dim(), index)
    }

    pub fn zero(&self) -> Expr {
        Expr::zero(self.dim())
    }

    pub fn one(&self) -> Expr {
        Expr::one(self.dim())
    }

    pub fn constant(&self, c: Rational) -> Expr {
        Expr::constant(self.dim(), c)
    }

    pub fn integer(&self, n: i64) -> Expr {
        Expr::integer(self.dim(), n)
    }

    pub fn parse(&self, text: &str) -> Result<Expr, ParseError> {
        parse::parse(text, self)
    }

    pub fn render(&self, e: &Expr) -> String {
        e.display(self).to_string()
    }

    /// True when every domain constraint is nonzero at `point`.
    pub fn admits(&self, point: &[Rational]) -> bool {
        self.domain_constraints
            .iter()
            .all(|c| c.eval_at(point).is_some_and(|v| !v.is_zero()))
    }

    pub fn evaluate(&self, e: &Expr, point: &[Rational]) -> Result<Rational, EvalError> {
        if point.len() != self.dim() {
            return Err(EvalError::WrongDimension {
                expected: self.dim(),
                got: point.len(),
            });
        }
        for c in &self.domain_constraints {
            if c.eval_at(point).is_none_or(|v| v.is_zero()) {
                return Err(EvalError::ConstraintViolated(self.render(c)));
            }
        }
        e.eval_at(point).ok_or(EvalError::DivisionByZero)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chart() -> Chart {
        Chart::new(&["x", "y", "z"]).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qf(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn cancellation_to_zero() {
        let c = chart();
        assert!(c.parse("z*z - z^2").unwrap().is_zero());
        assert!(c.parse("x - x").unwrap().is_zero());
        assert!(c.parse("0").unwrap().is_zero());
    }

    #[test]
    fn coordinate_parses_to_variable() {
        let c = chart();
        assert_eq!(c.parse("z").unwrap(), c.coord(2));
    }

    #[test]
    fn removable_factor_cancels() {
        let c = chart();
        let a = c.parse("(x^2-1)/(x-1)").unwrap();
        let b = c.parse("x+1").unwrap();
        assert_eq!(a, b);
        // cross-check by evaluation at points away from x = 1
        for xv in [qf(-3, 2), q(0), q(2), qf(7, 3), q(5)] {
            let p = [xv, q(1), q(1)];
            assert_eq!(a.eval_at(&p), b.eval_at(&p));
        }
    }

    #[test]
    fn derivatives() {
        let c = chart();
        let z = c.coord(2);
        assert_eq!(z.differentiate(2), c.one());
        let inv = c.parse("1/z").unwrap();
        assert_eq!(inv.differentiate(2), c.parse("-1/z^2").unwrap());
        let e = c.parse("z^2*x").unwrap();
        assert_eq!(e.differentiate(0), c.parse("z^2").unwrap());
    }

    #[test]
    fn derivative_matches_central_difference() {
        let c = chart();
        let e = c.parse("z^2*x").unwrap();
        let d = e.differentiate(0);
        let h = qf(1, 1_000_000);
        for p in [[q(1), q(2), q(3)], [qf(-1, 2), q(0), qf(5, 4)]] {
            let mut hi = p.clone();
            let mut lo = p.clone();
            hi[0] += &h;
            lo[0] -= &h;
            let fd = (e.eval_at(&hi).unwrap() - e.eval_at(&lo).unwrap()) / (q(2) * &h);
            let exact = d.eval_at(&p).unwrap();
            let gap = (fd - exact).abs();
            assert!(gap < qf(1, 1_000_000_000));
        }
    }

    #[test]
    fn constancy() {
        let c = chart();
        assert_eq!(c.parse("0").unwrap().as_constant(), Some(q(0)));
        // alpha^2 - beta^2 with alpha = 0, beta = -1
        let alpha = c.integer(0);
        let beta = c.integer(-1);
        let e = &(&alpha * &alpha) - &(&beta * &beta);
        assert_eq!(e.as_constant(), Some(q(-1)));
        assert_eq!(c.parse("x/x + y - y").unwrap().as_constant(), Some(q(1)));
        assert_eq!(c.parse("x").unwrap().as_constant(), None);
    }

    #[test]
    fn evaluation() {
        let c = chart().with_constraint(Chart::new(&["x", "y", "z"]).unwrap().coord(2)).unwrap();
        assert_eq!(c.evaluate(&c.coord(2), &[q(1), q(2), q(3)]), Ok(q(3)));
        let inv = c.parse("1/z").unwrap();
        assert_eq!(c.evaluate(&inv, &[q(0), q(0), q(2)]), Ok(qf(1, 2)));
        let sq = c.parse("z^2").unwrap();
        assert_eq!(c.evaluate(&sq, &[q(0), q(0), q(-2)]), Ok(q(4)));
        assert!(matches!(
            c.evaluate(&sq, &[q(0), q(0), q(0)]),
            Err(EvalError::ConstraintViolated(_))
        ));
        let plain = chart();
        let e = plain.parse("1/(x-1)").unwrap();
        assert_eq!(
            plain.evaluate(&e, &[q(1), q(0), q(0)]),
            Err(EvalError::DivisionByZero)
        );
        assert!(matches!(
            plain.evaluate(&e, &[q(1)]),
            Err(EvalError::WrongDimension { .. })
        ));
    }

    #[test]
    fn chart_validation() {
        assert_eq!(Chart::new(&["x"]), Err(ChartError::TooFewCoordinates(1)));
        assert_eq!(
            Chart::new(&["x", "x"]),
            Err(ChartError::DuplicateCoordinate("x".into()))
        );
        assert!(matches!(Chart::new(&["x", "2y"]), Err(ChartError::InvalidName(_))));
        assert!(matches!(
            chart().with_constraint(Expr::zero(3)),
            Err(ChartError::ZeroConstraint(_))
        ));
    }

    #[test]
    fn denominator_is_monic() {
        let c = chart();
        let e = c.parse("x/(-2*z + 4)").unwrap();
        assert_eq!(e.denominator().leading_coeff(), q(1));
        assert_eq!(c.render(&e), "-1/2*x/(z - 2)");
    }
}
