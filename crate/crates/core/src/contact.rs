//! Almost contact metric structures, trans-Sasakian type extraction and
//! the structure identities that follow from it.

use thiserror::Error;

use crate::check::{frame_args, Check};
use crate::curvature;
use crate::expr::{Expr, Rational};
use crate::geometry::FrameManifold;
use crate::linalg::{solve_two_unknowns, TwoUnknowns};
use crate::tensor::{FrameVector, Tensor02, Tensor11};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContactError {
    #[error("{what} has {got} components, manifold has dimension {expected}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
}

/// `(φ, ξ, η)` on the frame: `φ e_i = Σ_j φ[i][j] e_j`, `ξ = Σ ξ_i e_i`,
/// `η(e_i) = eta[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactStructure {
    phi: Tensor11,
    xi: FrameVector,
    eta: Vec<Expr>,
}

impl ContactStructure {
    pub fn new(phi: Tensor11, xi: FrameVector, eta: Vec<Expr>) -> Result<Self, ContactError> {
        let n = phi.dim();
        for (what, got) in [("xi", xi.dim()), ("eta", eta.len())] {
            if got != n {
                return Err(ContactError::DimensionMismatch {
                    what,
                    expected: n,
                    got,
                });
            }
        }
        Ok(ContactStructure { phi, xi, eta })
    }

    /// Builds the structure with `η = g(·, ξ)`.
    pub fn metric_dual(m: &FrameManifold, phi: Tensor11, xi: FrameVector) -> Result<Self, ContactError> {
        if phi.dim() != m.dim() {
            return Err(ContactError::DimensionMismatch {
                what: "phi",
                expected: m.dim(),
                got: phi.dim(),
            });
        }
        if xi.dim() != m.dim() {
            return Err(ContactError::DimensionMismatch {
                what: "xi",
                expected: m.dim(),
                got: xi.dim(),
            });
        }
        let eta = (0..m.dim()).map(|i| m.inner(&m.basis(i), &xi)).collect();
        Self::new(phi, xi, eta)
    }

    pub fn dim(&self) -> usize {
        self.phi.dim()
    }

    pub fn phi(&self) -> &Tensor11 {
        &self.phi
    }

    pub fn xi(&self) -> &FrameVector {
        &self.xi
    }

    pub fn eta(&self) -> &[Expr] {
        &self.eta
    }

    pub fn eta_of(&self, x: &FrameVector) -> Expr {
        let n = self.dim();
        (0..n)
            .filter(|&i| !x[i].is_zero())
            .map(|i| &self.eta[i] * &x[i])
            .fold(Expr::zero(n), |a, b| a + b)
    }

    pub fn phi_of(&self, x: &FrameVector) -> FrameVector {
        self.phi.apply(x)
    }

    /// `η ⊗ η` on the frame.
    pub fn eta_squared(&self) -> Tensor02 {
        Tensor02::from_fn(self.dim(), |i, j| &self.eta[i] * &self.eta[j])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostContactReport {
    pub checks: Vec<Check>,
}

impl AlmostContactReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.holds() == Some(true))
    }
}

/// Checks `φ² = -Id + η⊗ξ`, `η(ξ) = 1`, `η∘φ = 0`, `φξ = 0`,
/// `g(φX, φY) = g(X, Y) - η(X)η(Y)`, `g(X, φY) = -g(φX, Y)` and
/// `g(X, ξ) = η(X)` on the frame.
pub fn validate_almost_contact(m: &FrameManifold, c: &ContactStructure) -> AlmostContactReport {
    let n = m.dim();
    let chart = m.chart();
    let e = |i: usize| m.basis(i);
    let phi_e: Vec<FrameVector> = (0..n).map(|i| c.phi.image(i)).collect();

    let mut phi_sq = Check::new("phi-squared", "φ²X = -X + η(X)ξ");
    for i in 0..n {
        let lhs = c.phi_of(&phi_e[i]);
        let rhs = e(i).neg().add(&c.xi.scale(&c.eta[i]));
        phi_sq.push_vector(chart, frame_args(&[i]), &lhs.sub(&rhs));
    }

    let mut eta_xi = Check::new("eta-xi", "η(ξ) = 1");
    eta_xi.push_scalar(chart, "(ξ)".into(), &(&c.eta_of(&c.xi) - &m.chart().one()));

    let mut eta_phi = Check::new("eta-phi", "η(φX) = 0");
    for (i, pe) in phi_e.iter().enumerate() {
        eta_phi.push_scalar(chart, frame_args(&[i]), &c.eta_of(pe));
    }

    let mut phi_xi = Check::new("phi-xi", "φξ = 0");
    phi_xi.push_vector(chart, "(ξ)".into(), &c.phi_of(&c.xi));

    let mut compat = Check::new("metric-compatible", "g(φX, φY) = g(X, Y) - η(X)η(Y)");
    let mut skew = Check::new("phi-skew", "g(X, φY) = -g(φX, Y)");
    for i in 0..n {
        for j in 0..n {
            let lhs = m.inner(&phi_e[i], &phi_e[j]);
            let rhs = m.metric().get(i, j) - &(&c.eta[i] * &c.eta[j]);
            compat.push_scalar(chart, frame_args(&[i, j]), &(&lhs - &rhs));
            let s = &m.inner(&e(i), &phi_e[j]) + &m.inner(&phi_e[i], &e(j));
            skew.push_scalar(chart, frame_args(&[i, j]), &s);
        }
    }

    let mut dual = Check::new("eta-metric-dual", "g(X, ξ) = η(X)");
    for i in 0..n {
        dual.push_scalar(chart, frame_args(&[i]), &(&m.inner(&e(i), &c.xi) - &c.eta[i]));
    }

    AlmostContactReport {
        checks: vec![phi_sq, eta_xi, eta_phi, phi_xi, compat, skew, dual],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransSasakianType {
    pub alpha: Expr,
    pub beta: Expr,
    pub alpha_constant: Option<Rational>,
    pub beta_constant: Option<Rational>,
}

impl TransSasakianType {
    pub fn new(alpha: Expr, beta: Expr) -> Self {
        TransSasakianType {
            alpha_constant: alpha.as_constant(),
            beta_constant: beta.as_constant(),
            alpha,
            beta,
        }
    }

    /// `(α, β)` when both are constant.
    pub fn constants(&self) -> Option<(Rational, Rational)> {
        Some((self.alpha_constant.clone()?, self.beta_constant.clone()?))
    }

    /// `α² - β²`.
    pub fn alpha2_minus_beta2(&self) -> Expr {
        &(&self.alpha * &self.alpha) - &(&self.beta * &self.beta)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    Found(TransSasakianType),
    /// Every 2×2 system drawn from the components is singular.
    Undetermined,
    /// A candidate `(α, β)` solved some components but not all of them.
    Inconsistent {
        alpha: Expr,
        beta: Expr,
        failing_pairs: Vec<(usize, usize)>,
    },
}

/// `(∇_{e_i} φ) e_j = ∇_{e_i}(φ e_j) - φ(∇_{e_i} e_j)`.
pub fn nabla_phi(m: &FrameManifold, c: &ContactStructure, i: usize, j: usize) -> FrameVector {
    let a = m.nabla(&m.basis(i), &c.phi.image(j));
    let b = c.phi_of(m.nabla_frame(i, j));
    a.sub(&b)
}

/// The two vectors multiplying `α` and `β` in the trans-Sasakian condition
/// at `(e_i, e_j)`: `g(X,Y)ξ - η(Y)X` and `g(φX,Y)ξ - η(Y)φX`.
fn type_terms(m: &FrameManifold, c: &ContactStructure, i: usize, j: usize) -> (FrameVector, FrameVector) {
    let ei = m.basis(i);
    let phi_ei = c.phi.image(i);
    let a = c.xi.scale(m.metric().get(i, j)).sub(&ei.scale(&c.eta[j]));
    let b = c
        .xi
        .scale(&m.inner(&phi_ei, &m.basis(j)))
        .sub(&phi_ei.scale(&c.eta[j]));
    (a, b)
}

/// Solves `(∇_X φ)Y = α(g(X,Y)ξ - η(Y)X) + β(g(φX,Y)ξ - η(Y)φX)` for the
/// scalar fields `α`, `β` from frame components, then verifies every pair.
pub fn extract_trans_sasakian(m: &FrameManifold, c: &ContactStructure) -> Extraction {
    let n = m.dim();
    let mut eqs = Vec::new();
    let mut sources = Vec::new();
    // pairs with Y = ξ-direction first, then the off-diagonal pairs, then the rest
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let xi_slots: Vec<usize> = (0..n).filter(|&j| !c.eta[j].is_zero()).collect();
    for i in 0..n {
        for &j in &xi_slots {
            pairs.push((i, j));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && !pairs.contains(&(i, j)) {
                pairs.push((i, j));
            }
        }
    }
    for i in 0..n {
        if !pairs.contains(&(i, i)) {
            pairs.push((i, i));
        }
    }
    for &(i, j) in &pairs {
        let lhs = nabla_phi(m, c, i, j);
        let (a, b) = type_terms(m, c, i, j);
        for l in 0..n {
            if a[l].is_zero() && b[l].is_zero() && lhs[l].is_zero() {
                continue;
            }
            eqs.push((a[l].clone(), b[l].clone(), lhs[l].clone()));
            sources.push((i, j));
        }
    }
    match solve_two_unknowns(&eqs) {
        TwoUnknowns::Solved { x, y } => Extraction::Found(TransSasakianType::new(x, y)),
        TwoUnknowns::Undetermined => Extraction::Undetermined,
        TwoUnknowns::Inconsistent { x, y, residuals } => {
            let mut failing_pairs: Vec<(usize, usize)> =
                residuals.iter().map(|(idx, _)| sources[*idx]).collect();
            failing_pairs.dedup();
            Extraction::Inconsistent {
                alpha: x,
                beta: y,
                failing_pairs,
            }
        }
    }
}

/// Residual of the trans-Sasakian condition for the given type on all frame pairs.
pub fn trans_sasakian_check(m: &FrameManifold, c: &ContactStructure, t: &TransSasakianType) -> Check {
    let n = m.dim();
    let mut check = Check::new(
        "nabla-phi",
        "(∇_X φ)Y = α(g(X,Y)ξ - η(Y)X) + β(g(φX,Y)ξ - η(Y)φX)",
    );
    for i in 0..n {
        for j in 0..n {
            let (a, b) = type_terms(m, c, i, j);
            let rhs = a.scale(&t.alpha).add(&b.scale(&t.beta));
            check.push_vector(m.chart(), frame_args(&[i, j]), &nabla_phi(m, c, i, j).sub(&rhs));
        }
    }
    check
}

fn half(n: usize) -> Expr {
    Expr::constant(n, Rational::new(1.into(), 2.into()))
}

/// The structure identities implied by the trans-Sasakian condition. Rows for
/// identities scoped to dimension 3 or to constant `α`, `β` are marked not
/// applicable outside that scope.
pub fn verify_structure_identities(
    m: &FrameManifold,
    c: &ContactStructure,
    t: &TransSasakianType,
) -> Vec<Check> {
    let n = m.dim();
    let chart = m.chart();
    let e = |i: usize| m.basis(i);
    let (alpha, beta) = (&t.alpha, &t.beta);
    let ab = t.alpha2_minus_beta2();
    let phi_e: Vec<FrameVector> = (0..n).map(|i| c.phi.image(i)).collect();
    let nabla_xi: Vec<FrameVector> = (0..n).map(|i| m.nabla(&e(i), &c.xi)).collect();
    let mut out = vec![trans_sasakian_check(m, c, t)];

    let mut nxi = Check::new("nabla-xi", "∇_X ξ = -αφX + β(X - η(X)ξ)");
    for i in 0..n {
        let rhs = phi_e[i]
            .scale(&-alpha)
            .add(&e(i).sub(&c.xi.scale(&c.eta[i])).scale(beta));
        nxi.push_vector(chart, frame_args(&[i]), &nabla_xi[i].sub(&rhs));
    }
    out.push(nxi);

    let mut neta = Check::new("nabla-eta", "(∇_X η)Y = -αg(φX, Y) + βg(φX, φY)");
    for i in 0..n {
        for j in 0..n {
            let lhs = &m.frame_derivative(i, &c.eta[j]) - &c.eta_of(m.nabla_frame(i, j));
            let rhs = &(-alpha * &m.inner(&phi_e[i], &e(j))) + &(beta * &m.inner(&phi_e[i], &phi_e[j]));
            neta.push_scalar(chart, frame_args(&[i, j]), &(&lhs - &rhs));
        }
    }
    out.push(neta);

    let curv = curvature::curvature(m);
    let s = &curv.ricci;
    let r = &curv.scalar;
    let xi_alpha = m.directional(&c.xi, alpha);
    let xi_beta = m.directional(&c.xi, beta);
    let x_beta: Vec<Expr> = (0..n).map(|i| m.frame_derivative(i, beta)).collect();
    let phi_alpha: Vec<Expr> = (0..n).map(|i| m.directional(&phi_e[i], alpha)).collect();

    let three_d: [(&str, &str); 3] = [
        ("xi-alpha", "2αβ + ξα = 0"),
        ("ricci-xi-general", "S(X, ξ) = (2(α² - β²) - ξβ)η(X) - Xβ - (φX)α"),
        (
            "ricci-general",
            "S(X, Y) = (r/2 + ξβ - (α² - β²))g(X, Y) - (r/2 + ξβ - 3(α² - β²))η(X)η(Y) - (Yβ + (φY)α)η(X) - (Xβ + (φX)α)η(Y)",
        ),
    ];
    let constant: [(&str, &str); 7] = [
        ("ricci-eta-einstein", "S(X, Y) = (r/2 - (α² - β²))g(X, Y) - (r/2 - 3(α² - β²))η(X)η(Y)"),
        ("ricci-xi", "S(X, ξ) = 2(α² - β²)η(X)"),
        ("curvature-xi", "R(X, Y)ξ = (α² - β²)[η(Y)X - η(X)Y]"),
        ("curvature-xi-first", "R(ξ, X)Y = (α² - β²)[g(X, Y)ξ - η(Y)X]"),
        ("curvature-xi-xi", "R(ξ, X)ξ = (α² - β²)[η(X)ξ - X]"),
        ("eta-curvature", "η(R(X, Y)Z) = (α² - β²)[g(Y, Z)η(X) - g(X, Z)η(Y)]"),
        ("ricci-operator", "QX = (r/2 - (α² - β²))X - (r/2 - 3(α² - β²))η(X)ξ"),
    ];

    if n != 3 {
        for (id, st) in three_d.iter().chain(constant.iter()) {
            out.push(Check::not_applicable(id, st, format!("holds for dimension 3, manifold has dimension {n}")));
        }
    } else {
        let mut c8 = Check::new(three_d[0].0, three_d[0].1);
        let two = Expr::integer(n, 2);
        c8.push_scalar(chart, "()".into(), &(&(&two * &(alpha * beta)) + &xi_alpha));
        out.push(c8);

        let mut c9 = Check::new(three_d[1].0, three_d[1].1);
        for i in 0..n {
            let lhs = s.apply(&e(i), &c.xi);
            let coeff = &(&two * &ab) - &xi_beta;
            let rhs = &(&(&coeff * &c.eta[i]) - &x_beta[i]) - &phi_alpha[i];
            c9.push_scalar(chart, frame_args(&[i]), &(&lhs - &rhs));
        }
        out.push(c9);

        let mut c10 = Check::new(three_d[2].0, three_d[2].1);
        let r2 = r * &half(n);
        let three = Expr::integer(n, 3);
        let p = &(&r2 + &xi_beta) - &ab;
        let q = &(&r2 + &xi_beta) - &(&three * &ab);
        for i in 0..n {
            for j in 0..n {
                let rhs = &(&(&p * m.metric().get(i, j)) - &(&q * &(&c.eta[i] * &c.eta[j])))
                    - &(&(&(&x_beta[j] + &phi_alpha[j]) * &c.eta[i])
                        + &(&(&x_beta[i] + &phi_alpha[i]) * &c.eta[j]));
                c10.push_scalar(chart, frame_args(&[i, j]), &(s.get(i, j) - &rhs));
            }
        }
        out.push(c10);

        if t.constants().is_none() {
            for (id, st) in constant {
                out.push(Check::not_applicable(id, st, "holds for constant α and β"));
            }
        } else {
            out.extend(constant_identities(m, c, &ab, &constant));
        }
    }

    out.extend(lie_xi_checks(m, c, t, &nabla_xi));
    out
}

fn constant_identities(
    m: &FrameManifold,
    c: &ContactStructure,
    ab: &Expr,
    ids: &[(&str, &str); 7],
) -> Vec<Check> {
    let n = m.dim();
    let chart = m.chart();
    let e = |i: usize| m.basis(i);
    let curv = curvature::curvature(m);
    let (s, r, q, rm) = (&curv.ricci, &curv.scalar, &curv.ricci_operator, &curv.riemann);
    let g = m.metric();
    let r2 = r * &half(n);
    let three = Expr::integer(n, 3);
    let two = Expr::integer(n, 2);
    let p = &r2 - ab;
    let qq = &r2 - &(&three * ab);
    let mut out = Vec::new();

    let mut c11 = Check::new(ids[0].0, ids[0].1);
    for i in 0..n {
        for j in 0..n {
            let rhs = &(&p * g.get(i, j)) - &(&qq * &(&c.eta[i] * &c.eta[j]));
            c11.push_scalar(chart, frame_args(&[i, j]), &(s.get(i, j) - &rhs));
        }
    }
    out.push(c11);

    let mut c12 = Check::new(ids[1].0, ids[1].1);
    for i in 0..n {
        let rhs = &(&two * ab) * &c.eta[i];
        c12.push_scalar(chart, frame_args(&[i]), &(&s.apply(&e(i), &c.xi) - &rhs));
    }
    out.push(c12);

    let mut c13 = Check::new(ids[2].0, ids[2].1);
    for i in 0..n {
        for j in 0..n {
            let lhs = rm.apply(&e(i), &e(j), &c.xi);
            let rhs = e(i).scale(&c.eta[j]).sub(&e(j).scale(&c.eta[i])).scale(ab);
            c13.push_vector(chart, frame_args(&[i, j]), &lhs.sub(&rhs));
        }
    }
    out.push(c13);

    let mut c14 = Check::new(ids[3].0, ids[3].1);
    for i in 0..n {
        for j in 0..n {
            let lhs = rm.apply(&c.xi, &e(i), &e(j));
            let rhs = c.xi.scale(g.get(i, j)).sub(&e(i).scale(&c.eta[j])).scale(ab);
            c14.push_vector(chart, format!("(ξ, e{}, e{})", i + 1, j + 1), &lhs.sub(&rhs));
        }
    }
    out.push(c14);

    let mut c15 = Check::new(ids[4].0, ids[4].1);
    for i in 0..n {
        let lhs = rm.apply(&c.xi, &e(i), &c.xi);
        let rhs = c.xi.scale(&c.eta[i]).sub(&e(i)).scale(ab);
        c15.push_vector(chart, format!("(ξ, e{})", i + 1), &lhs.sub(&rhs));
    }
    out.push(c15);

    let mut c16 = Check::new(ids[5].0, ids[5].1);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = c.eta_of(&rm.vector(i, j, k));
                let rhs = ab * &(&(g.get(j, k) * &c.eta[i]) - &(g.get(i, k) * &c.eta[j]));
                c16.push_scalar(chart, frame_args(&[i, j, k]), &(&lhs - &rhs));
            }
        }
    }
    out.push(c16);

    let mut c17 = Check::new(ids[6].0, ids[6].1);
    for i in 0..n {
        let rhs = e(i).scale(&p).sub(&c.xi.scale(&(&qq * &c.eta[i])));
        c17.push_vector(chart, frame_args(&[i]), &q.image(i).sub(&rhs));
    }
    out.push(c17);
    out
}

/// `£_ξ g = 2β(g - η⊗η)`, plus agreement of the bracket-based Lie
/// derivative with `g(∇_X ξ, Y) + g(X, ∇_Y ξ)`.
fn lie_xi_checks(
    m: &FrameManifold,
    c: &ContactStructure,
    t: &TransSasakianType,
    nabla_xi: &[FrameVector],
) -> Vec<Check> {
    let n = m.dim();
    let chart = m.chart();
    let lie = m.lie_derivative_metric(&c.xi);
    let two_beta = &Expr::integer(n, 2) * &t.beta;
    let mut formula = Check::new("lie-xi-metric", "(£_ξ g)(X, Y) = 2βg(X, Y) - 2βη(X)η(Y)");
    let mut routes = Check::new(
        "lie-xi-metric-connection",
        "(£_ξ g)(X, Y) = g(∇_X ξ, Y) + g(X, ∇_Y ξ)",
    );
    for i in 0..n {
        for j in 0..n {
            let rhs = &two_beta * &(m.metric().get(i, j) - &(&c.eta[i] * &c.eta[j]));
            formula.push_scalar(chart, frame_args(&[i, j]), &(lie.get(i, j) - &rhs));
            let via = &m.inner(&nabla_xi[i], &m.basis(j)) + &m.inner(&m.basis(i), &nabla_xi[j]);
            routes.push_scalar(chart, frame_args(&[i, j]), &(lie.get(i, j) - &via));
        }
    }
    vec![formula, routes]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colinearity {
    /// `b` with `V = bξ`.
    pub factor: Expr,
    pub constant: Option<Rational>,
}

/// `b` with `V = bξ` when `V` is pointwise proportional to `ξ`.
pub fn colinearity_factor(v: &FrameVector, c: &ContactStructure) -> Option<Colinearity> {
    let k = (0..c.dim()).find(|&k| !c.xi[k].is_zero())?;
    let b = &v[k] / &c.xi[k];
    if c.xi.scale(&b) != *v {
        return None;
    }
    Some(Colinearity {
        constant: b.as_constant(),
        factor: b,
    })
}
