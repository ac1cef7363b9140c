//! Exact determinant and inverse of small matrices over rational functions.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::expr::poly::Monomial;
use crate::expr::{Expr, Rational};

/// Square matrix of expressions, row-major.
pub type ExprMatrix = Vec<Vec<Expr>>;

fn pivot_cost(e: &Expr) -> usize {
    e.numerator().len() + e.denominator().len()
}

/// Gauss-Jordan elimination. Returns `(det, inverse)`, with `inverse`
/// absent when the determinant is identically zero.
pub fn det_and_inverse(m: &ExprMatrix) -> (Expr, Option<ExprMatrix>) {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let mut a: ExprMatrix = m.clone();
    let mut inv: ExprMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Expr::one(nvars) } else { Expr::zero(nvars) }).collect())
        .collect();
    let mut det = Expr::one(nvars);
    for col in 0..n {
        // cheapest nonzero pivot keeps intermediate expressions small
        let Some(p) = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| (pivot_cost(&a[r][col]), r))
        else {
            return (Expr::zero(nvars), None);
        };
        if p != col {
            a.swap(p, col);
            inv.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = &det * &pivot;
        let pinv = pivot.recip().expect("pivot is nonzero");
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &f * &a[col][j];
                a[r][j] = &a[r][j] - &t;
                let t = &f * &inv[col][j];
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    (det, Some(inv))
}

pub fn determinant(m: &ExprMatrix) -> Expr {
    det_and_inverse(m).0
}

pub fn transpose(m: &ExprMatrix) -> ExprMatrix {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

pub fn matmul(a: &ExprMatrix, b: &ExprMatrix) -> ExprMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| crate::expr::sum(a[0][0].nvars(), (0..n).map(|k| &a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Solves `a·x + b·y = c` over a list of equations with expression
/// coefficients: the first pair of equations with a non-vanishing 2×2
/// determinant fixes `(x, y)`, and every equation is then checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoUnknowns {
    Solved { x: Expr, y: Expr },
    /// Some probe system was solvable but the solution fails elsewhere.
    Inconsistent { x: Expr, y: Expr, residuals: Vec<(usize, Expr)> },
    /// Every 2×2 probe system is singular.
    Undetermined,
}

pub fn solve_two_unknowns(eqs: &[(Expr, Expr, Expr)]) -> TwoUnknowns {
    for p in 0..eqs.len() {
        for q in p + 1..eqs.len() {
            let (a1, b1, c1) = &eqs[p];
            let (a2, b2, c2) = &eqs[q];
            let det = &(a1 * b2) - &(a2 * b1);
            if det.is_zero() {
                continue;
            }
            let x = (&(c1 * b2) - &(c2 * b1)) / &det;
            let y = (&(a1 * c2) - &(a2 * c1)) / &det;
            let residuals: Vec<(usize, Expr)> = eqs
                .iter()
                .enumerate()
                .map(|(idx, (a, b, c))| (idx, &(&(a * &x) + &(b * &y)) - c))
                .filter(|(_, r)| !r.is_zero())
                .collect();
            return if residuals.is_empty() {
                TwoUnknowns::Solved { x, y }
            } else {
                TwoUnknowns::Inconsistent { x, y, residuals }
            };
        }
    }
    TwoUnknowns::Undetermined
}

/// Solution set of a linear system over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalSolution {
    Unique(Vec<Rational>),
    /// `particular + Σ tᵢ directions[i]` for free parameters `tᵢ`.
    Family {
        particular: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    },
    Inconsistent,
}

/// Solves `Σ_k rows[r].0[k]·x_k = rows[r].1` by reduced row echelon form.
pub fn solve_rational(rows: &[(Vec<Rational>, Rational)], unknowns: usize) -> RationalSolution {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|(coeffs, rhs)| {
            assert_eq!(coeffs.len(), unknowns);
            let mut r = coeffs.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..=unknowns {
                    let t = &f * &a[row][k];
                    a[r][k] -= t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[unknowns].is_zero()) {
        return RationalSolution::Inconsistent;
    }
    let mut particular = vec![Rational::zero(); unknowns];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = a[r][unknowns].clone();
    }
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() {
        return RationalSolution::Unique(particular);
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Rational::zero(); unknowns];
            d[f] = Rational::one();
            for (r, &col) in pivots.iter().enumerate() {
                d[col] = -a[r][f].clone();
            }
            d
        })
        .collect();
    RationalSolution::Family {
        particular,
        directions,
    }
}

/// Turns `Σ_k coeffs[k]·x_k = rhs`, an identity between rational functions
/// with constant unknowns `x_k`, into one rational equation per monomial
/// after clearing denominators.
pub fn coefficient_equations(coeffs: &[Expr], rhs: &Expr) -> Vec<(Vec<Rational>, Rational)> {
    let nvars = rhs.nvars();
    let mut dens: Vec<&crate::expr::Poly> = coeffs
        .iter()
        .chain(std::iter::once(rhs))
        .map(Expr::denominator)
        .collect();
    dens.sort_by_key(|d| d.terms().map(|(m, _)| m.clone()).collect::<Vec<_>>());
    dens.dedup();
    let common = dens
        .into_iter()
        .fold(Expr::one(nvars), |acc, d| &acc * &Expr::from_poly(d.clone()));
    let cleared = |e: &Expr| -> BTreeMap<Monomial, Rational> {
        let p = e * &common;
        debug_assert!(p.is_polynomial());
        p.numerator().terms().map(|(m, c)| (m.clone(), c.clone())).collect()
    };
    let cols: Vec<BTreeMap<Monomial, Rational>> = coeffs.iter().map(cleared).collect();
    let rhs = cleared(rhs);
    let mut monomials: Vec<&Monomial> = cols.iter().flat_map(|c| c.keys()).chain(rhs.keys()).collect();
    monomials.sort();
    monomials.dedup();
    monomials
        .into_iter()
        .map(|mono| {
            let row = cols
                .iter()
                .map(|c| c.get(mono).cloned().unwrap_or_else(Rational::zero))
                .collect();
            (row, rhs.get(mono).cloned().unwrap_or_else(Rational::zero))
        })
        .collect()
}
