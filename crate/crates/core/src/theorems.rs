//! Instance-level verdicts for the soliton statements and the ξ-flatness
//! and semi-symmetry theorems. Tensor-side conditions come from the curvature
//! tensors themselves; scalar-side conditions come from `(λ, μ, α, β)` only.

use serde::{Deserialize, Serialize};

use crate::check::{frame_args, Applicability};
use crate::contact::{colinearity_factor, ContactStructure, TransSasakianType};
use crate::curvature::{self, derivation_action};
use crate::expr::{Expr, Rational};
use crate::geometry::FrameManifold;
use crate::soliton::{
    eta_einstein_decompose, eta_recurrence_report, parallel_along_xi, ricci_symmetry_report,
    EtaEinstein, SolitonError, SolitonOutcome, SolitonSolution,
};
use crate::tensor::{FrameVector, Tensor13};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// `lhs` must hold.
    Unconditional,
    /// `lhs ⇔ rhs`.
    Biconditional,
    /// `lhs ⇒ rhs`.
    Implication,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub statement: String,
    pub form: Form,
    pub applicability: Applicability,
    pub lhs: Option<bool>,
    pub rhs: Option<bool>,
    pub consistent: Option<bool>,
    pub witnesses: Vec<String>,
}

impl Verdict {
    fn new(id: &str, statement: impl Into<String>, form: Form) -> Self {
        Verdict {
            id: id.to_string(),
            statement: statement.into(),
            form,
            applicability: Applicability::Applicable,
            lhs: None,
            rhs: None,
            consistent: None,
            witnesses: Vec::new(),
        }
    }

    fn skipped(mut self, a: Applicability) -> Self {
        self.applicability = a;
        self
    }

    fn decide(mut self, lhs: bool, rhs: Option<bool>) -> Self {
        self.lhs = Some(lhs);
        self.rhs = rhs;
        self.consistent = Some(match (self.form, rhs) {
            (Form::Unconditional, _) => lhs,
            (Form::Biconditional, Some(r)) => lhs == r,
            (Form::Implication, Some(r)) => !lhs || r,
            (_, None) => unreachable!("conditional verdict without a right-hand side"),
        });
        self
    }

    fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    fn witnesses(mut self, ws: impl IntoIterator<Item = String>) -> Self {
        self.witnesses.extend(ws);
        self
    }

    /// An applicable verdict whose two sides disagree with the stated form.
    pub fn is_inconsistent(&self) -> bool {
        self.consistent == Some(false)
    }
}

/// Everything the suites need, computed upstream.
pub struct SuiteInput<'a> {
    pub manifold: &'a FrameManifold,
    pub contact: &'a ContactStructure,
    pub structure_valid: bool,
    pub trans_sasakian: Option<&'a TransSasakianType>,
    /// The soliton problem with `V = ξ`.
    pub reeb_soliton: &'a Result<SolitonOutcome, SolitonError>,
}

impl SuiteInput<'_> {
    fn unique_soliton(&self) -> Option<&SolitonSolution> {
        match self.reeb_soliton {
            Ok(SolitonOutcome::Unique(s)) => Some(s),
            _ => None,
        }
    }

    /// Scope check shared by every statement: dimension 3, a valid
    /// structure and a trans-Sasakian type, optionally constant.
    fn scope(&self, constants: bool) -> Result<&TransSasakianType, Applicability> {
        let n = self.manifold.dim();
        if n != 3 {
            return Err(Applicability::not_applicable(format!(
                "stated for dimension 3, manifold has dimension {n}"
            )));
        }
        if !self.structure_valid {
            return Err(Applicability::not_applicable("not an almost contact metric structure"));
        }
        let t = self
            .trans_sasakian
            .ok_or_else(|| Applicability::not_applicable("no trans-Sasakian type"))?;
        if constants && t.constants().is_none() {
            return Err(Applicability::not_applicable("α and β are not both constant"));
        }
        Ok(t)
    }

    fn scope_with_soliton(&self) -> Result<(&TransSasakianType, Rational, &SolitonSolution), Applicability> {
        let t = self.scope(true)?;
        let sol = self
            .unique_soliton()
            .ok_or_else(|| Applicability::not_applicable("no unique η-Yamabe soliton with V = ξ"))?;
        let (a, b) = t.constants().expect("checked by scope");
        Ok((t, &a * &a - &b * &b, sol))
    }
}

fn render_vector(m: &FrameManifold, v: &FrameVector) -> String {
    let parts: Vec<String> = v.components().iter().map(|e| m.chart().render(e)).collect();
    format!("[{}]", parts.join(", "))
}

/// Failing instances of `T(eᵢ, eⱼ)ξ = 0`, labelled with `name`.
fn xi_slot_failures(m: &FrameManifold, c: &ContactStructure, t: &Tensor13, name: &str) -> Vec<String> {
    let n = m.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = t.apply(&m.basis(i), &m.basis(j), c.xi());
            if !v.is_zero() {
                out.push(format!("{name}(e{}, e{})ξ = {}", i + 1, j + 1, render_vector(m, &v)));
            }
        }
    }
    out
}

/// Failing entries of `(A(ξ, eₓ)·S)(e_y, e_z) = 0`.
fn action_failures(m: &FrameManifold, c: &ContactStructure, a: &Tensor13, name: &str) -> Vec<String> {
    let n = m.dim();
    let action = derivation_action(a, c.xi(), curvature::ricci(m));
    let mut out = Vec::new();
    for (idx, e) in action.iter().enumerate() {
        if !e.is_zero() {
            let (x, y, z) = (idx / (n * n), (idx / n) % n, idx % n);
            out.push(format!(
                "({name}(ξ, e{})·S)(e{}, e{}) = {}",
                x + 1,
                y + 1,
                z + 1,
                m.chart().render(e)
            ));
        }
    }
    out
}

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn fmt_q(r: &Rational) -> String {
    r.to_string()
}

fn flatness_witness(m: &FrameManifold) -> String {
    let slots = curvature::riemann(m).nonzero_slots();
    match slots.first() {
        None => "R = 0".to_string(),
        Some(&(i, j, k)) => format!(
            "R(e{}, e{})e{} = {}",
            i + 1,
            j + 1,
            k + 1,
            render_vector(m, &curvature::riemann(m).vector(i, j, k))
        ),
    }
}

/// Verdicts for the ξ-flatness and semi-symmetry theorems and their
/// flatness corollaries. `(a, b)` are the quasi-conformal coefficients.
pub fn run_suite(input: &SuiteInput, a: &Rational, b: &Rational) -> Vec<Verdict> {
    let m = input.manifold;
    let c = input.contact;
    let qc = format!("C* with (a, b) = ({}, {})", fmt_q(a), fmt_q(b));
    let shells = [
        Verdict::new("xi-projectively-flat", "P(X, Y)ξ = 0", Form::Unconditional),
        Verdict::new("xi-concircularly-flat", "C̃(X, Y)ξ = 0 ⇔ λ + μ = 6(α² - β²)", Form::Biconditional),
        Verdict::new(
            "concircular-recurrent-flat",
            "C̃(X, Y)ξ = 0 and ∇S = η⊗S ⇒ R = 0",
            Form::Implication,
        ),
        Verdict::new("xi-conharmonically-flat", "H(X, Y)ξ = 0 ⇔ λ + μ = 0", Form::Biconditional),
        Verdict::new(
            "xi-quasi-conformally-flat",
            format!("C*(X, Y)ξ = 0 ⇔ a + b = 0 or λ + μ = 6(α² - β²), {qc}"),
            Form::Biconditional,
        ),
        Verdict::new(
            "quasi-conformal-recurrent-flat",
            format!("C*(X, Y)ξ = 0 and ∇S = η⊗S and a + b ≠ 0 ⇒ R = 0, {qc}"),
            Form::Implication,
        ),
        Verdict::new(
            "xi-semi-symmetric",
            "R(ξ, X)·S = 0 ⇒ α² - β² = 0 or λ + μ = 6(α² - β²)",
            Form::Implication,
        ),
        Verdict::new(
            "w2-semi-symmetric",
            "W₂(ξ, X)·S = 0 ⇒ λ + μ = 2(α² - β²) or λ + μ = 6(α² - β²)",
            Form::Implication,
        ),
        Verdict::new("w2-recurrent-flat", "W₂(ξ, X)·S = 0 and ∇S = η⊗S ⇒ R = 0", Form::Implication),
    ];
    let (_, ab, sol) = match input.scope_with_soliton() {
        Ok(s) => s,
        Err(why) => return shells.into_iter().map(|v| v.skipped(why.clone())).collect(),
    };
    let [v41, v42, c43, v44, v45, c46, v47, v48, c49] = shells;
    let sum = &sol.lambda + &sol.mu;
    let sums = format!("λ + μ = {}, α² - β² = {}", fmt_q(&sum), fmt_q(&ab));
    let six_ab = &q(6) * &ab;
    let flat = curvature::is_flat(m);
    let recurrent = eta_recurrence_report(m, c).check.holds() == Some(true);

    let p_fail = xi_slot_failures(m, c, &curvature::projective(m), "P");
    let v41 = v41.decide(p_fail.is_empty(), None).witnesses(p_fail);

    let ct_fail = xi_slot_failures(m, c, &curvature::concircular(m), "C̃");
    let ct_flat = ct_fail.is_empty();
    let v42 = v42.decide(ct_flat, Some(sum == six_ab)).witnesses(ct_fail).witness(sums.clone());
    let c43 = c43
        .decide(ct_flat && recurrent, Some(flat))
        .witness(format!("η-recurrent: {recurrent}"))
        .witness(flatness_witness(m));

    let h = curvature::conharmonic(m).expect("dimension 3");
    let h_fail = xi_slot_failures(m, c, &h, "H");
    let v44 = v44
        .decide(h_fail.is_empty(), Some(sum == q(0)))
        .witnesses(h_fail)
        .witness(sums.clone());

    let cs_fail = xi_slot_failures(m, c, &curvature::quasi_conformal(m, a, b), "C*");
    let cs_flat = cs_fail.is_empty();
    let a_plus_b = a + b;
    let v45 = v45
        .decide(cs_flat, Some(a_plus_b == q(0) || sum == six_ab))
        .witnesses(cs_fail)
        .witness(format!("a + b = {}, {sums}", fmt_q(&a_plus_b)));
    let c46 = c46
        .decide(cs_flat && recurrent && a_plus_b != q(0), Some(flat))
        .witness(format!("η-recurrent: {recurrent}"))
        .witness(flatness_witness(m));

    let r_fail = action_failures(m, c, curvature::riemann(m), "R");
    let v47 = v47
        .decide(r_fail.is_empty(), Some(ab == q(0) || sum == six_ab))
        .witnesses(r_fail)
        .witness(sums.clone());

    let w2_fail = action_failures(m, c, &curvature::w2(m), "W₂");
    let w2_semi = w2_fail.is_empty();
    let v48 = v48
        .decide(w2_semi, Some(sum == &q(2) * &ab || sum == six_ab))
        .witnesses(w2_fail)
        .witness(sums);
    let c49 = c49
        .decide(w2_semi && recurrent, Some(flat))
        .witness(format!("η-recurrent: {recurrent}"))
        .witness(flatness_witness(m));

    vec![v41, v42, c43, v44, v45, c46, v47, v48, c49]
}

/// A potential field other than `ξ`, with its soliton problem solved.
pub struct Potential<'a> {
    pub field: &'a FrameVector,
    pub outcome: &'a Result<SolitonOutcome, SolitonError>,
}

/// Verdicts for the soliton statements: constant scalar curvature, `r = λ + μ`,
/// Killing `ξ` when `μ = 0`, η-Einstein Ricci tensor, the consequences of
/// Ricci symmetry and η-recurrence, colinear potentials, and parallelism of
/// `Q` and `S` along `ξ`.
pub fn statement_suite(input: &SuiteInput, potential: Option<Potential>, d_eta_zero: bool) -> Vec<Verdict> {
    let m = input.manifold;
    let c = input.contact;
    let n = m.dim();
    let mut out = Vec::new();
    let soliton = input.unique_soliton();
    let soliton_note = match input.reeb_soliton {
        Ok(SolitonOutcome::Unique(s)) => format!("soliton with V = ξ: λ = {}, μ = {}", s.lambda, s.mu),
        Ok(SolitonOutcome::Family { .. }) => "soliton with V = ξ: a family of (λ, μ)".to_string(),
        Ok(SolitonOutcome::Inconsistent { .. }) => "no soliton with V = ξ".to_string(),
        Err(e) => e.to_string(),
    };
    let r = curvature::scalar_curvature(m);

    // scalar curvature constant
    let v = Verdict::new("soliton-scalar-constant", "η-Yamabe soliton with V = ξ ⇒ r constant", Form::Implication);
    out.push(match input.scope(false) {
        Err(why) => v.skipped(why),
        Ok(_) => v
            .decide(soliton.is_some(), Some(r.is_constant()))
            .witness(soliton_note.clone())
            .witness(format!("r = {}", m.chart().render(r))),
    });

    let v = Verdict::new("soliton-scalar-sum", "η-Yamabe soliton with V = ξ ⇒ r = λ + μ", Form::Implication);
    out.push(match input.scope(false) {
        Err(why) => v.skipped(why),
        Ok(_) => v
            .decide(soliton.is_some(), Some(soliton.is_none_or(|s| s.sum_matches_scalar())))
            .witness(soliton_note.clone()),
    });

    let lie_xi = m.lie_derivative_metric(c.xi());
    let v = Verdict::new("yamabe-killing", "η-Yamabe soliton with V = ξ and μ = 0 ⇒ £_ξ g = 0", Form::Implication);
    out.push(match input.scope(false) {
        Err(why) => v.skipped(why),
        Ok(_) => v
            .decide(soliton.is_some_and(|s| s.mu == q(0)), Some(lie_xi.is_zero()))
            .witness(soliton_note.clone()),
    });

    let decomposition = eta_einstein_decompose(m, c);
    let v = Verdict::new("soliton-eta-einstein", "η-Yamabe soliton with V = ξ ⇒ S = pg + qη⊗η", Form::Implication);
    out.push(match input.scope(false) {
        Err(why) => v.skipped(why),
        Ok(_) => {
            let w = match &decomposition {
                EtaEinstein::Found { p, q } => {
                    format!("p = {}, q = {}", m.chart().render(p), m.chart().render(q))
                }
                EtaEinstein::NotEtaEinstein { failing_pairs } => format!(
                    "S is not of the form pg + qη⊗η at {}",
                    failing_pairs.iter().map(|&(i, j)| frame_args(&[i, j])).collect::<Vec<_>>().join(", ")
                ),
                EtaEinstein::Undetermined => "p, q undetermined".to_string(),
            };
            v.decide(soliton.is_some(), Some(matches!(decomposition, EtaEinstein::Found { .. })))
                .witness(w)
        }
    });

    let v = Verdict::new(
        "soliton-ricci-closed-form",
        "η-Yamabe soliton with V = ξ ⇒ S = ((λ+μ)/2 - (α² - β²))g - ((λ+μ)/2 - 3(α² - β²))η⊗η",
        Form::Implication,
    );
    out.push(match input.scope_with_soliton() {
        Err(why) => v.skipped(why),
        Ok((_, ab, sol)) => {
            let half_sum = (&sol.lambda + &sol.mu) / q(2);
            let p = Expr::constant(n, &half_sum - &ab);
            let qq = Expr::constant(n, -(&half_sum - &q(3) * &ab));
            let closed = crate::soliton::recompose(m, c, &p, &qq);
            let s = curvature::ricci(m);
            let mut w = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let d = s.get(i, j) - closed.get(i, j);
                    if !d.is_zero() {
                        w.push(format!("S{} - closed form = {}", frame_args(&[i, j]), m.chart().render(&d)));
                    }
                }
            }
            v.decide(true, Some(w.is_empty())).witnesses(w)
        }
    });

    let symmetric = ricci_symmetry_report(m).holds() == Some(true);
    let recurrence = eta_recurrence_report(m, c);
    let recurrent = recurrence.check.holds() == Some(true);
    let recurrence_note = if recurrence.vacuous {
        "η-recurrent: true (vacuous, S = 0)".to_string()
    } else {
        format!("η-recurrent: {recurrent}")
    };

    let v = Verdict::new("ricci-symmetric-sum", "∇S = 0 ⇒ λ + μ = 6(α² - β²)", Form::Implication);
    out.push(match input.scope_with_soliton() {
        Err(why) => v.skipped(why),
        Ok((_, ab, sol)) => {
            let sum = &sol.lambda + &sol.mu;
            v.decide(symmetric, Some(sum == &q(6) * &ab))
                .witness(format!("Ricci symmetric: {symmetric}"))
                .witness(format!("λ + μ = {sum}, α² - β² = {ab}"))
        }
    });

    let v = Verdict::new("recurrent-alpha-beta", "∇S = η⊗S ⇒ α = ±β", Form::Implication);
    out.push(match input.scope_with_soliton() {
        Err(why) => v.skipped(why),
        Ok((t, ab, _)) => v
            .decide(recurrent, Some(ab == q(0)))
            .witness(recurrence_note.clone())
            .witness(format!(
                "α = {}, β = {}",
                m.chart().render(&t.alpha),
                m.chart().render(&t.beta)
            )),
    });

    let v = Verdict::new("symmetric-recurrent-flat", "∇S = 0 and ∇S = η⊗S ⇒ R = 0", Form::Implication);
    out.push(match input.scope_with_soliton() {
        Err(why) => v.skipped(why),
        Ok(_) => v
            .decide(symmetric && recurrent, Some(curvature::is_flat(m)))
            .witness(format!("Ricci symmetric: {symmetric}"))
            .witness(recurrence_note.clone())
            .witness(flatness_witness(m)),
    });

    out.extend(colinear_verdicts(input, potential, d_eta_zero));

    let v = Verdict::new(
        "reeb-parallel-ricci",
        "η-Yamabe soliton with V = ξ ⇒ (∇_ξ Q)X = 0 and (∇_ξ S)(X, Y) = 0",
        Form::Implication,
    );
    out.push(match input.scope_with_soliton() {
        Err(why) => v.skipped(why),
        Ok(_) => {
            let checks = parallel_along_xi(m, c);
            let w: Vec<String> = checks
                .iter()
                .flat_map(|ch| ch.failures().map(move |f| format!("{} at {}: {:?}", ch.id, f.at, f.residual)))
                .collect();
            v.decide(true, Some(checks.iter().all(|ch| ch.holds() == Some(true))))
                .witnesses(w)
        }
    });
    out
}

fn colinear_verdicts(input: &SuiteInput, potential: Option<Potential>, d_eta_zero: bool) -> Vec<Verdict> {
    let m = input.manifold;
    let c = input.contact;
    let v37 = Verdict::new(
        "colinear-potential-constant",
        "η-Yamabe soliton with V = bξ ⇒ b constant",
        Form::Implication,
    );
    let v38 = Verdict::new(
        "colinear-killing-yamabe",
        "η-Yamabe soliton with V = bξ: £_V g = 0 ⇔ μ = 0",
        Form::Biconditional,
    );
    let scope = input.scope(false).map(|_| ());
    let Some(pot) = potential else {
        let why = Applicability::not_applicable("no potential field given");
        return vec![v37.skipped(why.clone()), v38.skipped(why)];
    };
    if let Err(why) = scope {
        return vec![v37.skipped(why.clone()), v38.skipped(why)];
    }
    let Some(col) = colinearity_factor(pot.field, c) else {
        let why = Applicability::not_applicable("potential field is not pointwise colinear with ξ");
        return vec![v37.skipped(why.clone()), v38.skipped(why)];
    };
    let b_text = format!("b = {}", m.chart().render(&col.factor));
    let d_eta = if d_eta_zero {
        "dη = 0 here, so the step dividing out dη does not apply to this manifold"
    } else {
        "dη ≠ 0 here"
    };
    let sol = match pot.outcome {
        Ok(SolitonOutcome::Unique(s)) => Some(s),
        _ => None,
    };
    let sol_text = match pot.outcome {
        Ok(SolitonOutcome::Unique(s)) => format!("soliton with V: λ = {}, μ = {}", s.lambda, s.mu),
        Ok(SolitonOutcome::Family { .. }) => "soliton with V: a family of (λ, μ)".to_string(),
        Ok(SolitonOutcome::Inconsistent { .. }) => "no soliton with constant λ, μ for V".to_string(),
        Err(e) => e.to_string(),
    };
    let v37 = v37
        .decide(sol.is_some(), Some(col.constant.is_some()))
        .witness(b_text.clone())
        .witness(sol_text.clone())
        .witness(d_eta);
    let v38 = match sol {
        None => v38.skipped(Applicability::not_applicable(sol_text)),
        Some(s) => v38
            .decide(m.lie_derivative_metric(pot.field).is_zero(), Some(s.mu == q(0)))
            .witness(b_text)
            .witness(sol_text),
    };
    vec![v37, v38]
}
