//! η-Yamabe solitons `½ £_V g = (r - λ)g - μ η⊗η` with constant `λ`, `μ`,
//! η-Einstein decomposition of the Ricci tensor, and parallelism checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::check::{frame_args, Check};
use crate::contact::ContactStructure;
use crate::curvature;
use crate::expr::{Expr, Rational};
use crate::geometry::FrameManifold;
use crate::linalg::{coefficient_equations, solve_rational, solve_two_unknowns, RationalSolution, TwoUnknowns};
use crate::tensor::{FrameVector, Tensor02};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolitonError {
    #[error("scalar curvature r = {0} is not constant; no soliton with constant λ, μ exists")]
    NonConstantScalarCurvature(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Expanding,
    Steady,
    Shrinking,
}

impl Classification {
    pub fn of(lambda: &Rational) -> Self {
        use std::cmp::Ordering::*;
        match lambda.cmp(&Rational::from_integer(0.into())) {
            Greater => Classification::Expanding,
            Equal => Classification::Steady,
            Less => Classification::Shrinking,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitonSolution {
    pub lambda: Rational,
    pub mu: Rational,
    pub scalar_curvature: Rational,
    pub classification: Classification,
    pub potential: FrameVector,
    /// The soliton equation with `(λ, μ)` substituted, on every frame pair.
    pub residual: Check,
}

impl SolitonSolution {
    /// Whether `r = λ + μ`.
    pub fn sum_matches_scalar(&self) -> bool {
        &self.lambda + &self.mu == self.scalar_curvature
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolitonOutcome {
    Unique(SolitonSolution),
    /// `(λ, μ) = particular + Σ tᵢ directions[i]`.
    Family {
        particular: (Rational, Rational),
        directions: Vec<(Rational, Rational)>,
    },
    /// No constant pair satisfies every component; the component equations
    /// are listed as `(eᵢ, eⱼ): a·λ + b·μ = c`.
    Inconsistent { equations: Vec<String> },
}

/// Component equations `G_ij λ + η_iη_j μ = r G_ij - ½(£_V g)_ij`, `i ≤ j`.
fn soliton_equations(m: &FrameManifold, c: &ContactStructure, v: &FrameVector, r: &Expr) -> Vec<((usize, usize), [Expr; 3])> {
    let n = m.dim();
    let lie = m.lie_derivative_metric(v);
    let half = Expr::constant(n, Rational::new(1.into(), 2.into()));
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            let g = m.metric().get(i, j).clone();
            let ee = &c.eta()[i] * &c.eta()[j];
            let rhs = &(r * &g) - &(&half * lie.get(i, j));
            out.push(((i, j), [g, ee, rhs]));
        }
    }
    out
}

/// Finds constants `(λ, μ)` with `½(£_V g)(X, Y) = (r - λ)g(X, Y) - μη(X)η(Y)`
/// by matching coefficients of every component exactly.
pub fn solve_eta_yamabe(m: &FrameManifold, c: &ContactStructure, v: &FrameVector) -> Result<SolitonOutcome, SolitonError> {
    let curv = curvature::curvature(m);
    let r = curv
        .scalar
        .as_constant()
        .ok_or_else(|| SolitonError::NonConstantScalarCurvature(m.chart().render(&curv.scalar)))?;
    let eqs = soliton_equations(m, c, v, &curv.scalar);
    let rows: Vec<(Vec<Rational>, Rational)> = eqs
        .iter()
        .flat_map(|(_, [a, b, rhs])| coefficient_equations(&[a.clone(), b.clone()], rhs))
        .collect();
    Ok(match solve_rational(&rows, 2) {
        RationalSolution::Unique(sol) => {
            let (lambda, mu) = (sol[0].clone(), sol[1].clone());
            let residual = soliton_residual(m, c, v, &lambda, &mu);
            SolitonOutcome::Unique(SolitonSolution {
                classification: Classification::of(&lambda),
                lambda,
                mu,
                scalar_curvature: r,
                potential: v.clone(),
                residual,
            })
        }
        RationalSolution::Family { particular, directions } => SolitonOutcome::Family {
            particular: (particular[0].clone(), particular[1].clone()),
            directions: directions.into_iter().map(|d| (d[0].clone(), d[1].clone())).collect(),
        },
        RationalSolution::Inconsistent => {
            let chart = m.chart();
            SolitonOutcome::Inconsistent {
                equations: eqs
                    .iter()
                    .map(|((i, j), [a, b, rhs])| {
                        format!(
                            "{}: ({})·λ + ({})·μ = {}",
                            frame_args(&[*i, *j]),
                            chart.render(a),
                            chart.render(b),
                            chart.render(rhs)
                        )
                    })
                    .collect(),
            }
        }
    })
}

/// `½(£_V g)(eᵢ, eⱼ) - (r - λ)gᵢⱼ + μηᵢηⱼ` on every frame pair.
pub fn soliton_residual(m: &FrameManifold, c: &ContactStructure, v: &FrameVector, lambda: &Rational, mu: &Rational) -> Check {
    let n = m.dim();
    let r = curvature::scalar_curvature(m);
    let lie = m.lie_derivative_metric(v);
    let half = Expr::constant(n, Rational::new(1.into(), 2.into()));
    let r_minus_lambda = r - &Expr::constant(n, lambda.clone());
    let mu = Expr::constant(n, mu.clone());
    let mut check = Check::new("eta-yamabe", "½(£_V g)(X, Y) = (r - λ)g(X, Y) - μη(X)η(Y)");
    for i in 0..n {
        for j in 0..n {
            let res = &(&(&half * lie.get(i, j)) - &(&r_minus_lambda * m.metric().get(i, j)))
                + &(&mu * &(&c.eta()[i] * &c.eta()[j]));
            check.push_scalar(m.chart(), frame_args(&[i, j]), &res);
        }
    }
    check
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaEinstein {
    /// `S = p g + q η⊗η`.
    Found { p: Expr, q: Expr },
    NotEtaEinstein { failing_pairs: Vec<(usize, usize)> },
    Undetermined,
}

/// Writes the Ricci tensor as `p g + q η⊗η` when it has that form.
pub fn eta_einstein_decompose(m: &FrameManifold, c: &ContactStructure) -> EtaEinstein {
    let n = m.dim();
    let s = curvature::ricci(m);
    let mut eqs = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            eqs.push((m.metric().get(i, j).clone(), &c.eta()[i] * &c.eta()[j], s.get(i, j).clone()));
            pairs.push((i, j));
        }
    }
    match solve_two_unknowns(&eqs) {
        TwoUnknowns::Solved { x, y } => EtaEinstein::Found { p: x, q: y },
        TwoUnknowns::Inconsistent { residuals, .. } => EtaEinstein::NotEtaEinstein {
            failing_pairs: residuals.iter().map(|(k, _)| pairs[*k]).collect(),
        },
        TwoUnknowns::Undetermined => EtaEinstein::Undetermined,
    }
}

/// `p g + q η⊗η`.
pub fn recompose(m: &FrameManifold, c: &ContactStructure, p: &Expr, q: &Expr) -> Tensor02 {
    Tensor02::from_fn(m.dim(), |i, j| &(p * m.metric().get(i, j)) + &(q * &(&c.eta()[i] * &c.eta()[j])))
}

/// `(∇_{eᵢ} T)(eⱼ, eₖ) = 0` on every frame triple.
pub fn parallel_check(m: &FrameManifold, t: &Tensor02, id: &str, statement: &str) -> Check {
    let n = m.dim();
    let mut check = Check::new(id, statement);
    for i in 0..n {
        let d = m.covariant_derivative_02(&m.basis(i), t);
        for j in 0..n {
            for k in 0..n {
                check.push_scalar(m.chart(), frame_args(&[i, j, k]), d.get(j, k));
            }
        }
    }
    check
}

/// Ricci symmetry, `∇S = 0`.
pub fn ricci_symmetry_report(m: &FrameManifold) -> Check {
    parallel_check(m, curvature::ricci(m), "ricci-symmetric", "(∇_X S)(Y, Z) = 0")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceReport {
    pub check: Check,
    /// Both sides vanish identically because `S = 0`.
    pub vacuous: bool,
}

/// η-recurrence of the Ricci tensor, `(∇_X S)(Y, Z) = η(X) S(Y, Z)`.
pub fn eta_recurrence_report(m: &FrameManifold, c: &ContactStructure) -> RecurrenceReport {
    let n = m.dim();
    let s = curvature::ricci(m);
    let mut check = Check::new("eta-recurrent", "(∇_X S)(Y, Z) = η(X)S(Y, Z)");
    for i in 0..n {
        let d = m.covariant_derivative_02(&m.basis(i), s);
        for j in 0..n {
            for k in 0..n {
                let res = d.get(j, k) - &(&c.eta()[i] * s.get(j, k));
                check.push_scalar(m.chart(), frame_args(&[i, j, k]), &res);
            }
        }
    }
    let vacuous = s.is_zero() && check.holds() == Some(true);
    RecurrenceReport { check, vacuous }
}

/// `(∇_ξ Q)X = 0` and `(∇_ξ S)(X, Y) = 0` on the frame.
pub fn parallel_along_xi(m: &FrameManifold, c: &ContactStructure) -> Vec<Check> {
    let n = m.dim();
    let chart = m.chart();
    let dq = m.covariant_derivative_11(c.xi(), curvature::ricci_operator(m));
    let ds = m.covariant_derivative_02(c.xi(), curvature::ricci(m));
    let mut q_check = Check::new("ricci-operator-parallel-xi", "(∇_ξ Q)X = 0");
    for i in 0..n {
        q_check.push_vector(chart, frame_args(&[i]), &dq.image(i));
    }
    let mut s_check = Check::new("ricci-parallel-xi", "(∇_ξ S)(X, Y) = 0");
    for i in 0..n {
        for j in 0..n {
            s_check.push_scalar(chart, frame_args(&[i, j]), ds.get(i, j));
        }
    }
    vec![q_check, s_check]
}
