//! The verification pipeline and its report.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::check::{frame_args, Check};
use crate::contact::{
    colinearity_factor, extract_trans_sasakian, validate_almost_contact, verify_structure_identities,
    Extraction,
};
use crate::curvature;
use crate::expr::{Chart, Expr, Rational};
use crate::geometry::FrameManifold;
use crate::soliton::{solve_eta_yamabe, Classification, SolitonError, SolitonOutcome};
use crate::spec::LoadedSpec;
use crate::tensor::{FrameVector, Tensor02, Tensor11};
use crate::theorems::{run_suite, statement_suite, Potential, SuiteInput, Verdict};

/// Exit status: every verdict and identity consistent.
pub const EXIT_CONSISTENT: i32 = 0;
/// Exit status: at least one inconsistency.
pub const EXIT_INCONSISTENT: i32 = 1;
/// Exit status: the input could not be loaded.
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub dimension: usize,
    pub coordinates: Vec<String>,
    pub domain_constraints: Vec<String>,
    pub notes: Vec<String>,
    /// `[a, b]` used for the quasi-conformal tensor.
    pub quasi_conformal: [String; 2],
    pub structure: StructureSection,
    pub trans_sasakian: TypeSection,
    pub curvature: CurvatureSection,
    /// The soliton problem with `V = ξ`.
    pub soliton: SolitonSection,
    /// The soliton problem with the requested potential field, if any.
    pub potential_soliton: Option<SolitonSection>,
    pub identities: Vec<Check>,
    pub statements: Vec<Verdict>,
    pub theorems: Vec<Verdict>,
    pub d_eta: DEtaSection,
    pub findings: Vec<Finding>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSection {
    pub valid: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TypeSection {
    Found {
        alpha: String,
        beta: String,
        constant: bool,
    },
    Undetermined,
    Inconsistent {
        alpha: String,
        beta: String,
        failing_pairs: Vec<String>,
    },
    Skipped {
        reason: String,
    },
}

/// A labelled frame vector, e.g. `at = "R(e1, e2)e1"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorEntry {
    pub at: String,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureSection {
    /// Nonzero `[eᵢ, eⱼ]`, `i < j`.
    pub brackets: Vec<VectorEntry>,
    /// Nonzero `∇_{eᵢ} eⱼ`.
    pub connection: Vec<VectorEntry>,
    /// Nonzero `R(eᵢ, eⱼ)e_k`, `i < j`.
    pub riemann: Vec<VectorEntry>,
    /// `S(eᵢ, eⱼ)`.
    pub ricci: Vec<Vec<String>>,
    /// Row `i` is `Qeᵢ`.
    pub ricci_operator: Vec<Vec<String>>,
    pub scalar: String,
    pub flat: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SolitonSection {
    Unique {
        potential: Vec<String>,
        lambda: String,
        mu: String,
        scalar_curvature: String,
        sum_matches_scalar: bool,
        classification: Classification,
        residual: Check,
    },
    Family {
        potential: Vec<String>,
        particular: [String; 2],
        directions: Vec<[String; 2]>,
    },
    Inconsistent {
        potential: Vec<String>,
        equations: Vec<String>,
    },
    NonConstantScalar {
        potential: Vec<String>,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DEtaSection {
    /// `dη(eᵢ, eⱼ)`.
    pub components: Vec<Vec<String>>,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub id: String,
    pub message: String,
    /// Findings that make the exit status nonzero.
    pub inconsistency: bool,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    /// Overrides the spec file's quasi-conformal coefficients.
    pub quasi_conformal: Option<(Rational, Rational)>,
    /// Overrides the spec file's potential field.
    pub potential: Option<FrameVector>,
}

impl VerificationReport {
    pub fn exit_code(&self) -> i32 {
        if self.consistent {
            EXIT_CONSISTENT
        } else {
            EXIT_INCONSISTENT
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.statements.iter().chain(&self.theorems).find(|v| v.id == id)
    }

    pub fn identity(&self, id: &str) -> Option<&Check> {
        self.identities.iter().find(|c| c.id == id)
    }
}

fn render_vec(chart: &Chart, v: &[Expr]) -> Vec<String> {
    v.iter().map(|e| chart.render(e)).collect()
}

fn render_02(chart: &Chart, t: &Tensor02) -> Vec<Vec<String>> {
    t.rows().iter().map(|r| render_vec(chart, r)).collect()
}

fn render_11(chart: &Chart, t: &Tensor11) -> Vec<Vec<String>> {
    t.rows().iter().map(|r| render_vec(chart, r)).collect()
}

fn curvature_section(m: &FrameManifold) -> CurvatureSection {
    let n = m.dim();
    let chart = m.chart();
    let entry = |at: String, v: &FrameVector| VectorEntry {
        at,
        value: render_vec(chart, v.components()),
    };
    let mut brackets = Vec::new();
    let mut connection = Vec::new();
    let mut riemann = Vec::new();
    let r = curvature::riemann(m);
    for i in 0..n {
        for j in 0..n {
            if i < j && !m.frame_bracket(i, j).is_zero() {
                brackets.push(entry(format!("[e{}, e{}]", i + 1, j + 1), m.frame_bracket(i, j)));
            }
            if !m.nabla_frame(i, j).is_zero() {
                connection.push(entry(format!("∇_e{} e{}", i + 1, j + 1), m.nabla_frame(i, j)));
            }
            for k in 0..n {
                let v = r.vector(i, j, k);
                if i < j && !v.is_zero() {
                    riemann.push(entry(format!("R{}e{}", frame_args(&[i, j]), k + 1), &v));
                }
            }
        }
    }
    CurvatureSection {
        brackets,
        connection,
        riemann,
        ricci: render_02(chart, curvature::ricci(m)),
        ricci_operator: render_11(chart, curvature::ricci_operator(m)),
        scalar: chart.render(curvature::scalar_curvature(m)),
        flat: curvature::is_flat(m),
    }
}

fn soliton_section(chart: &Chart, v: &FrameVector, outcome: &Result<SolitonOutcome, SolitonError>) -> SolitonSection {
    let potential = render_vec(chart, v.components());
    match outcome {
        Ok(SolitonOutcome::Unique(s)) => SolitonSection::Unique {
            potential,
            lambda: s.lambda.to_string(),
            mu: s.mu.to_string(),
            scalar_curvature: s.scalar_curvature.to_string(),
            sum_matches_scalar: s.sum_matches_scalar(),
            classification: s.classification,
            residual: s.residual.clone(),
        },
        Ok(SolitonOutcome::Family { particular, directions }) => SolitonSection::Family {
            potential,
            particular: [particular.0.to_string(), particular.1.to_string()],
            directions: directions.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        },
        Ok(SolitonOutcome::Inconsistent { equations }) => SolitonSection::Inconsistent {
            potential,
            equations: equations.clone(),
        },
        Err(e) => SolitonSection::NonConstantScalar {
            potential,
            message: e.to_string(),
        },
    }
}

/// Runs structure validation, type extraction, curvature, the soliton
/// problem, the identity rows, the statement and theorem verdicts and the
/// `dη` computation.
pub fn verify(spec: &LoadedSpec, options: &VerifyOptions) -> VerificationReport {
    let m = &spec.manifold;
    let c = &spec.contact;
    let n = m.dim();
    let chart = m.chart();
    let one = Rational::from_integer(1.into());
    let (a, b) = options
        .quasi_conformal
        .clone()
        .or_else(|| spec.quasi_conformal.clone())
        .unwrap_or((one.clone(), one));
    let potential = options.potential.clone().or_else(|| spec.potential.clone());
    let mut findings = Vec::new();

    let validation = validate_almost_contact(m, c);
    let valid = validation.is_valid();
    if !valid {
        let failing: Vec<&str> = validation
            .checks
            .iter()
            .filter(|ch| ch.holds() == Some(false))
            .map(|ch| ch.id.as_str())
            .collect();
        findings.push(Finding {
            id: "structure-invalid".to_string(),
            message: format!("not an almost contact metric structure: {} fail", failing.join(", ")),
            inconsistency: false,
        });
    }

    let extraction = if valid {
        Some(extract_trans_sasakian(m, c))
    } else {
        None
    };
    let ts = match &extraction {
        Some(Extraction::Found(t)) => Some(t),
        _ => None,
    };
    let trans_sasakian = match &extraction {
        None => TypeSection::Skipped {
            reason: "structure is not almost contact metric".to_string(),
        },
        Some(Extraction::Found(t)) => TypeSection::Found {
            alpha: chart.render(&t.alpha),
            beta: chart.render(&t.beta),
            constant: t.constants().is_some(),
        },
        Some(Extraction::Undetermined) => TypeSection::Undetermined,
        Some(Extraction::Inconsistent {
            alpha,
            beta,
            failing_pairs,
        }) => TypeSection::Inconsistent {
            alpha: chart.render(alpha),
            beta: chart.render(beta),
            failing_pairs: failing_pairs.iter().map(|&(i, j)| frame_args(&[i, j])).collect(),
        },
    };
    if valid && ts.is_none() {
        findings.push(Finding {
            id: "not-trans-sasakian".to_string(),
            message: "no (α, β) satisfies the trans-Sasakian condition; identity rows skipped".to_string(),
            inconsistency: false,
        });
    }

    let reeb = solve_eta_yamabe(m, c, c.xi());
    if let Err(e) = &reeb {
        findings.push(Finding {
            id: "no-reeb-soliton".to_string(),
            message: e.to_string(),
            inconsistency: false,
        });
    }
    let potential_outcome = potential.as_ref().map(|v| solve_eta_yamabe(m, c, v));

    let identities = match ts {
        Some(t) => verify_structure_identities(m, c, t),
        None => Vec::new(),
    };
    for ch in &identities {
        if ch.holds() == Some(false) {
            findings.push(Finding {
                id: format!("identity-fails:{}", ch.id),
                message: format!(
                    "{} fails at {}",
                    ch.statement,
                    ch.failures().map(|f| f.at.as_str()).collect::<Vec<_>>().join(", ")
                ),
                inconsistency: true,
            });
        }
    }

    let d_eta = m.exterior_derivative(c.eta());
    let d_eta_zero = d_eta.is_zero();

    let input = SuiteInput {
        manifold: m,
        contact: c,
        structure_valid: valid,
        trans_sasakian: ts,
        reeb_soliton: &reeb,
    };
    let pot = match (&potential, &potential_outcome) {
        (Some(field), Some(outcome)) => Some(Potential { field, outcome }),
        _ => None,
    };
    let statements = statement_suite(&input, pot, d_eta_zero);
    let theorems = run_suite(&input, &a, &b);
    for v in statements.iter().chain(&theorems) {
        if v.is_inconsistent() {
            findings.push(Finding {
                id: format!("inconsistent:{}", v.id),
                message: format!("{}: {}", v.statement, v.witnesses.join("; ")),
                inconsistency: true,
            });
        }
    }

    if d_eta_zero && n == 3 && ts.is_some() {
        findings.push(Finding {
            id: "d-eta-vanishes".to_string(),
            message: "dη = 0 on this fixture, so the dη ≠ 0 step used for colinear potentials V = bξ does not apply here"
                .to_string(),
            inconsistency: false,
        });
    }
    if let Some(v) = &potential {
        if let Some(col) = colinearity_factor(v, c) {
            if col.constant.is_none() {
                let solved = matches!(potential_outcome, Some(Ok(SolitonOutcome::Unique(_))));
                findings.push(Finding {
                    id: "potential-nonconstant-factor".to_string(),
                    message: format!(
                        "V = bξ with non-constant b = {}; {}",
                        chart.render(&col.factor),
                        if solved {
                            "a soliton nevertheless exists"
                        } else {
                            "no soliton with constant λ, μ exists for V"
                        }
                    ),
                    inconsistency: solved,
                });
            }
        }
    }

    let consistent = !findings.iter().any(|f| f.inconsistency);
    VerificationReport {
        name: spec.name.clone(),
        dimension: n,
        coordinates: chart.coord_names().to_vec(),
        domain_constraints: chart.domain_constraints().iter().map(|e| chart.render(e)).collect(),
        notes: spec.notes.clone(),
        quasi_conformal: [a.to_string(), b.to_string()],
        structure: StructureSection {
            valid,
            checks: validation.checks,
        },
        trans_sasakian,
        curvature: curvature_section(m),
        soliton: soliton_section(chart, c.xi(), &reeb),
        potential_soliton: potential
            .as_ref()
            .zip(potential_outcome.as_ref())
            .map(|(v, o)| soliton_section(chart, v, o)),
        identities,
        statements,
        theorems,
        d_eta: DEtaSection {
            components: render_02(chart, &d_eta),
            vanishes: d_eta_zero,
        },
        findings,
        consistent,
    }
}

fn vector_text(v: &[String]) -> String {
    format!("[{}]", v.join(", "))
}

fn check_line(out: &mut String, ch: &Check) {
    let status = match ch.holds() {
        Some(true) => "ok".to_string(),
        Some(false) => "FAILS".to_string(),
        None => match &ch.applicability {
            crate::check::Applicability::NotApplicable { reason } => format!("n/a ({reason})"),
            crate::check::Applicability::Applicable => unreachable!(),
        },
    };
    let _ = writeln!(out, "  {:<28} {}  {}", ch.id, status, ch.statement);
    for f in ch.failures() {
        let _ = writeln!(out, "      at {}: residual {}", f.at, vector_text(&f.residual));
    }
}

fn soliton_text(out: &mut String, label: &str, s: &SolitonSection) {
    match s {
        SolitonSection::Unique {
            potential,
            lambda,
            mu,
            scalar_curvature,
            sum_matches_scalar,
            classification,
            ..
        } => {
            let _ = writeln!(
                out,
                "{label} V = {}: λ = {lambda}, μ = {mu}, r = {scalar_curvature}, λ + μ = r: {sum_matches_scalar}, {}",
                vector_text(potential),
                serde_json::to_value(classification).expect("serializes").as_str().unwrap_or_default()
            );
        }
        SolitonSection::Family {
            potential,
            particular,
            directions,
        } => {
            let dirs: Vec<String> = directions.iter().map(|d| format!("({}, {})", d[0], d[1])).collect();
            let _ = writeln!(
                out,
                "{label} V = {}: (λ, μ) = ({}, {}) + span{{{}}}",
                vector_text(potential),
                particular[0],
                particular[1],
                dirs.join(", ")
            );
        }
        SolitonSection::Inconsistent { potential, equations } => {
            let _ = writeln!(out, "{label} V = {}: no constant (λ, μ)", vector_text(potential));
            for e in equations {
                let _ = writeln!(out, "      {e}");
            }
        }
        SolitonSection::NonConstantScalar { potential, message } => {
            let _ = writeln!(out, "{label} V = {}: {message}", vector_text(potential));
        }
    }
}

fn verdict_line(out: &mut String, v: &Verdict) {
    let side = |b: Option<bool>| match b {
        Some(true) => "true",
        Some(false) => "false",
        None => "-",
    };
    match &v.applicability {
        crate::check::Applicability::NotApplicable { reason } => {
            let _ = writeln!(out, "  {:<34} n/a ({reason})", v.id);
        }
        crate::check::Applicability::Applicable => {
            let verdict = if v.consistent == Some(true) {
                "consistent"
            } else {
                "INCONSISTENT"
            };
            let _ = writeln!(
                out,
                "  {:<34} lhs {:<5} rhs {:<5} {verdict}  {}",
                v.id,
                side(v.lhs),
                side(v.rhs),
                v.statement
            );
            for w in &v.witnesses {
                let _ = writeln!(out, "      {w}");
            }
        }
    }
}

/// Human-readable rendering of a report.
pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "manifold {} (dimension {}, coordinates {})",
        r.name,
        r.dimension,
        r.coordinates.join(", ")
    );
    if !r.domain_constraints.is_empty() {
        let _ = writeln!(out, "domain: {} != 0", r.domain_constraints.join(", "));
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }

    let _ = writeln!(out, "\nalmost contact metric structure: {}", if r.structure.valid { "valid" } else { "INVALID" });
    for ch in &r.structure.checks {
        check_line(&mut out, ch);
    }

    let _ = write!(out, "\ntrans-Sasakian type: ");
    let _ = match &r.trans_sasakian {
        TypeSection::Found { alpha, beta, constant } => writeln!(
            out,
            "α = {alpha}, β = {beta}{}",
            if *constant { "" } else { " (not constant)" }
        ),
        TypeSection::Undetermined => writeln!(out, "undetermined"),
        TypeSection::Inconsistent {
            alpha,
            beta,
            failing_pairs,
        } => writeln!(out, "none (α = {alpha}, β = {beta} fails at {})", failing_pairs.join(", ")),
        TypeSection::Skipped { reason } => writeln!(out, "skipped ({reason})"),
    };

    let cs = &r.curvature;
    let _ = writeln!(out, "\ncurvature");
    for e in &cs.brackets {
        let _ = writeln!(out, "  {} = {}", e.at, vector_text(&e.value));
    }
    for e in &cs.connection {
        let _ = writeln!(out, "  {} = {}", e.at, vector_text(&e.value));
    }
    for e in &cs.riemann {
        let _ = writeln!(out, "  {} = {}", e.at, vector_text(&e.value));
    }
    for (i, row) in cs.ricci.iter().enumerate() {
        let _ = writeln!(out, "  S(e{}, ·) = {}", i + 1, vector_text(row));
    }
    let _ = writeln!(out, "  r = {}{}", cs.scalar, if cs.flat { " (flat)" } else { "" });

    let _ = writeln!(out, "\nη-Yamabe soliton");
    soliton_text(&mut out, " ", &r.soliton);
    if let Some(p) = &r.potential_soliton {
        soliton_text(&mut out, " ", p);
    }

    let _ = writeln!(out, "\nstructure identities");
    if r.identities.is_empty() {
        let _ = writeln!(out, "  skipped (no trans-Sasakian type)");
    }
    for ch in &r.identities {
        check_line(&mut out, ch);
    }

    let _ = writeln!(out, "\nsoliton statements");
    for v in &r.statements {
        verdict_line(&mut out, v);
    }
    let _ = writeln!(out, "\ncurvature theorems (quasi-conformal a = {}, b = {})", r.quasi_conformal[0], r.quasi_conformal[1]);
    for v in &r.theorems {
        verdict_line(&mut out, v);
    }

    let _ = writeln!(out, "\ndη {}", if r.d_eta.vanishes { "= 0" } else { "≠ 0" });
    if !r.d_eta.vanishes {
        for (i, row) in r.d_eta.components.iter().enumerate() {
            let _ = writeln!(out, "  dη(e{}, ·) = {}", i + 1, vector_text(row));
        }
    }

    let _ = writeln!(out, "\nfindings");
    if r.findings.is_empty() {
        let _ = writeln!(out, "  none");
    }
    for f in &r.findings {
        let _ = writeln!(out, "  {}{}: {}", if f.inconsistency { "[inconsistent] " } else { "" }, f.id, f.message);
    }
    let _ = writeln!(out, "\nresult: {}", if r.consistent { "consistent" } else { "INCONSISTENT" });
    out
}
