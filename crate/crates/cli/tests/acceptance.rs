//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use common::{draws_needed, invariant_failures, polynomial_frame_manifold, q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sasaki::contact::{extract_trans_sasakian, validate_almost_contact, verify_structure_identities, Extraction};
use sasaki::curvature;
use sasaki::expr::{Expr, Rational};
use sasaki::fixtures::{self, Fixture};
use sasaki::report::{verify, SolitonSection, VerifyOptions, EXIT_CONSISTENT};
use sasaki::soliton::{solve_eta_yamabe, Classification, SolitonOutcome};
use sasaki::spec::ManifoldSpecFile;
use sasaki::tensor::FrameVector;
use sasaki::theorems::{run_suite, SuiteInput, Verdict};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn vector(f: &Fixture, comps: [i64; 3]) -> FrameVector {
    FrameVector(comps.iter().map(|&c| f.manifold.chart().integer(c)).collect())
}

fn constant(e: &Expr) -> Result<Rational, String> {
    e.as_constant().ok_or_else(|| format!("{e:?} is not constant"))
}

fn structure() -> Outcome {
    let f = fixtures::kenmotsu_example();
    let m = &f.manifold;
    for (i, j, want) in [(0, 1, [0, 0, 0]), (1, 2, [0, -1, 0]), (0, 2, [-1, 0, 0])] {
        ensure!(m.frame_bracket(i, j) == &vector(&f, want), "[e{}, e{}] = {:?}", i + 1, j + 1, m.frame_bracket(i, j));
    }
    let connection = [
        (0, 2, [-1, 0, 0]),
        (1, 2, [0, -1, 0]),
        (2, 2, [0, 0, 0]),
        (0, 0, [0, 0, 1]),
        (1, 0, [0, 0, 0]),
        (2, 0, [0, 0, 0]),
        (0, 1, [0, 0, 0]),
        (1, 1, [0, 0, 1]),
        (2, 1, [0, 0, 0]),
    ];
    for (i, j, want) in connection {
        ensure!(m.nabla_frame(i, j) == &vector(&f, want), "∇_e{} e{} = {:?}", i + 1, j + 1, m.nabla_frame(i, j));
    }
    let Extraction::Found(t) = extract_trans_sasakian(m, &f.contact) else {
        return Err("no trans-Sasakian type extracted".into());
    };
    ensure!(t.constants() == Some((q(0), q(-1))), "(α, β) = {:?}", t.constants());
    Ok("3 brackets, 9 connection values, (α, β) = (0, -1)".into())
}

fn curvature_values() -> Outcome {
    let f = fixtures::kenmotsu_example();
    let m = &f.manifold;
    let r = curvature::riemann(m);
    for (i, j, k, want) in [
        (0, 1, 1, [-1, 0, 0]),
        (0, 2, 2, [-1, 0, 0]),
        (1, 0, 0, [0, -1, 0]),
        (1, 2, 2, [0, -1, 0]),
        (2, 0, 0, [0, 0, -1]),
        (2, 1, 1, [0, 0, -1]),
    ] {
        ensure!(r.vector(i, j, k) == vector(&f, want), "R(e{}, e{})e{} = {:?}", i + 1, j + 1, k + 1, r.vector(i, j, k));
    }
    let s = curvature::ricci(m);
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { -2 } else { 0 };
            ensure!(s.get(i, j) == &m.chart().integer(want), "S(e{}, e{}) = {:?}", i + 1, j + 1, s.get(i, j));
        }
    }
    ensure!(curvature::scalar_curvature(m) == &m.chart().integer(-6), "r = {:?}", curvature::scalar_curvature(m));
    Ok("6 Riemann components, S = diag(-2, -2, -2), r = -6".into())
}

/// `(£_V g)(eᵢ, eⱼ)` by the coordinate formula `V^c ∂_c g_ab + g_cb ∂_a V^c +
/// g_ac ∂_b V^c`, for a diagonal frame `eᵢ = fᵢ ∂ᵢ` with orthonormal metric.
fn coordinate_lie_derivative(f: &Fixture, v: &FrameVector, i: usize, j: usize) -> Result<Expr, String> {
    let m = &f.manifold;
    let ch = m.chart();
    let scale: Vec<Expr> = (0..3).map(|a| m.frame()[a].0[a].clone()).collect();
    for a in 0..3 {
        for b in 0..3 {
            ensure!(a == b || m.frame()[a].0[b].is_zero(), "frame not diagonal");
            let want = if a == b { ch.one() } else { ch.zero() };
            ensure!(m.metric().get(a, b) == &want, "metric not orthonormal");
        }
    }
    let g = |a: usize, b: usize| if a == b { ch.one().checked_div(&(&scale[a] * &scale[a])).unwrap() } else { ch.zero() };
    let vc: Vec<Expr> = (0..3).map(|a| &v[a] * &scale[a]).collect();
    let mut lie = ch.zero();
    let (a, b) = (i, j);
    for c in 0..3 {
        lie = lie + &vc[c] * &g(a, b).differentiate(c);
        lie = lie + &g(c, b) * &vc[c].differentiate(a);
        lie = lie + &g(a, c) * &vc[c].differentiate(b);
    }
    Ok(&(&lie * &scale[i]) * &scale[j])
}

fn soliton() -> Outcome {
    let f = fixtures::kenmotsu_example();
    let m = &f.manifold;
    let xi = f.contact.xi();
    let r = constant(curvature::scalar_curvature(m))?;
    let half = |i, j| -> Result<Rational, String> { Ok(constant(&coordinate_lie_derivative(&f, xi, i, j)?)? / q(2)) };
    // (e1, e1): ½£g = r - λ;  (e3, e3): ½£g = r - λ - μ.
    let lambda = &r - half(0, 0)?;
    let mu = &r - &lambda - half(2, 2)?;
    for i in 0..3 {
        for j in 0..3 {
            let g = if i == j { q(1) } else { q(0) };
            let ee = if i == 2 && j == 2 { q(1) } else { q(0) };
            ensure!(half(i, j)? == (&r - &lambda) * g - &mu * ee, "oracle equation at (e{}, e{}) fails", i + 1, j + 1);
        }
    }
    ensure!((lambda.clone(), mu.clone()) == (q(-5), q(-1)), "oracle gives λ = {lambda}, μ = {mu}");
    let Ok(SolitonOutcome::Unique(s)) = solve_eta_yamabe(m, &f.contact, xi) else {
        return Err("no unique soliton".into());
    };
    ensure!((s.lambda.clone(), s.mu.clone()) == (lambda, mu), "solver gives λ = {}, μ = {}", s.lambda, s.mu);
    ensure!(&s.lambda + &s.mu == q(-6) && s.scalar_curvature == q(-6), "λ + μ = {}, r = {}", &s.lambda + &s.mu, s.scalar_curvature);
    ensure!(s.classification == Classification::Shrinking, "classification {:?}", s.classification);
    Ok("λ = -5, μ = -1, λ + μ = -6 = r, shrinking".into())
}

fn suite(f: &Fixture, a: i64, b: i64) -> Vec<Verdict> {
    let valid = validate_almost_contact(&f.manifold, &f.contact).is_valid();
    let t = match extract_trans_sasakian(&f.manifold, &f.contact) {
        Extraction::Found(t) => Some(t),
        _ => None,
    };
    let sol = solve_eta_yamabe(&f.manifold, &f.contact, f.contact.xi());
    let input = SuiteInput {
        manifold: &f.manifold,
        contact: &f.contact,
        structure_valid: valid,
        trans_sasakian: t.as_ref(),
        reeb_soliton: &sol,
    };
    run_suite(&input, &q(a), &q(b))
}

fn sides(v: &[Verdict], id: &str) -> Result<(Option<bool>, Option<bool>, Option<bool>), String> {
    let v = v.iter().find(|v| v.id == id).ok_or_else(|| format!("missing verdict {id}"))?;
    Ok((v.lhs, v.rhs, v.consistent))
}

/// Whether `T(eᵢ, eⱼ)ξ = 0` for all `i, j`, read off the tensor itself.
fn annihilates_xi(t: &sasaki::tensor::Tensor13, xi: &FrameVector) -> bool {
    let n = t.dim();
    (0..n).all(|i| (0..n).all(|j| t.apply(&FrameVector::basis(n, i), &FrameVector::basis(n, j), xi).is_zero()))
}

fn theorem_suite() -> Outcome {
    let f = fixtures::kenmotsu_example();
    let m = &f.manifold;
    let xi = f.contact.xi();
    let (t, fl) = (Some(true), Some(false));
    let v = suite(&f, 1, 1);
    ensure!(v.len() == 9, "{} verdicts", v.len());
    let expected = [
        ("xi-projectively-flat", (t, None, t)),
        ("xi-concircularly-flat", (t, t, t)),
        ("concircular-recurrent-flat", (fl, fl, t)),
        ("xi-conharmonically-flat", (fl, fl, t)),
        ("xi-quasi-conformally-flat", (t, t, t)),
        ("quasi-conformal-recurrent-flat", (fl, fl, t)),
        ("xi-semi-symmetric", (t, t, t)),
        ("w2-semi-symmetric", (t, t, t)),
        ("w2-recurrent-flat", (fl, fl, t)),
    ];
    for (id, want) in expected {
        let got = sides(&v, id)?;
        ensure!(got == want, "{id}: (lhs, rhs, consistent) = {got:?}, expected {want:?}");
    }
    let degenerate = suite(&f, 1, -1);
    let got = sides(&degenerate, "xi-quasi-conformally-flat")?;
    ensure!(got == (t, t, t), "a + b = 0: {got:?}");

    let raw = [
        ("xi-projectively-flat", annihilates_xi(&curvature::projective(m), xi)),
        ("xi-concircularly-flat", annihilates_xi(&curvature::concircular(m), xi)),
        ("xi-conharmonically-flat", annihilates_xi(&curvature::conharmonic(m).map_err(|e| e.to_string())?, xi)),
        ("xi-quasi-conformally-flat", annihilates_xi(&curvature::quasi_conformal(m, &q(1), &q(1)), xi)),
    ];
    for (id, flat) in raw {
        ensure!(sides(&v, id)?.0 == Some(flat), "{id}: lhs disagrees with the tensor itself");
    }
    let semi = curvature::derivation_action(curvature::riemann(m), xi, curvature::ricci(m)).iter().all(Expr::is_zero);
    ensure!(sides(&v, "xi-semi-symmetric")?.0 == Some(semi), "xi-semi-symmetric lhs disagrees with R(ξ, X)·S");
    Ok("9 verdicts as expected; quasi-conformal both-true for a + b = 2 and a + b = 0".into())
}

fn identity_suite() -> Outcome {
    let f = fixtures::kenmotsu_example();
    let m = &f.manifold;
    let Extraction::Found(t) = extract_trans_sasakian(m, &f.contact) else {
        return Err("no trans-Sasakian type".into());
    };
    let rows = verify_structure_identities(m, &f.contact, &t);
    for row in &rows {
        ensure!(row.holds() == Some(true), "{} does not hold: {:?}", row.id, row.failures().next());
    }
    for id in ["lie-xi-metric", "lie-xi-metric-connection"] {
        ensure!(rows.iter().any(|r| r.id == id), "missing row {id}");
    }
    let lie = m.lie_derivative_metric(f.contact.xi());
    for i in 0..3 {
        for j in 0..3 {
            let coordinate = coordinate_lie_derivative(&f, f.contact.xi(), i, j)?;
            ensure!(lie.get(i, j) == &coordinate, "£_ξ g at (e{}, e{}): bracket and coordinate routes differ", i + 1, j + 1);
        }
    }
    Ok(format!("{} identity rows exactly zero; £_ξ g agrees across bracket, connection and coordinate routes", rows.len()))
}

fn property_suite() -> Outcome {
    let mut manifolds: Vec<(String, _)> =
        fixtures::contact_fixtures().into_iter().map(|f| (f.name.to_string(), f.manifold)).collect();
    manifolds.push(("hyperbolic-plane".into(), fixtures::hyperbolic_plane()));
    let fixture_count = manifolds.len();
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    for k in 0..50 {
        let draws: Vec<i64> = (0..draws_needed(3)).map(|_| rng.gen_range(-3..=2)).collect();
        manifolds.push((format!("random-{k}"), polynomial_frame_manifold(3, &mut draws.into_iter())));
    }
    for (name, m) in &manifolds {
        let failures = invariant_failures(m);
        ensure!(failures.is_empty(), "{name}: {failures:?}");
    }
    Ok(format!("{fixture_count} fixtures and 50 random polynomial frames"))
}

fn flat_fixture() -> Outcome {
    let f = fixtures::flat_example();
    let m = &f.manifold;
    ensure!(curvature::riemann(m).is_zero(), "R ≠ 0");
    ensure!(curvature::ricci(m).is_zero(), "S ≠ 0");
    ensure!(curvature::ricci_operator(m).is_zero(), "Q ≠ 0");
    ensure!(curvature::scalar_curvature(m).is_zero(), "r ≠ 0");
    ensure!(curvature::is_flat(m), "not reported flat");
    let derived = [
        curvature::projective(m),
        curvature::concircular(m),
        curvature::conharmonic(m).map_err(|e| e.to_string())?,
        curvature::conformal(m).map_err(|e| e.to_string())?,
        curvature::quasi_conformal(m, &q(1), &q(1)),
        curvature::w2(m),
    ];
    ensure!(derived.iter().all(|t| t.is_zero()), "a curvature-type tensor is nonzero");
    let Ok(SolitonOutcome::Unique(s)) = solve_eta_yamabe(m, &f.contact, f.contact.xi()) else {
        return Err("no unique soliton".into());
    };
    ensure!((s.lambda.clone(), s.mu.clone()) == (q(0), q(0)), "λ = {}, μ = {}", s.lambda, s.mu);
    ensure!(s.classification == Classification::Steady, "classification {:?}", s.classification);
    Ok("all curvature objects zero; (λ, μ) = (0, 0), steady".into())
}

fn run_cli(args: &[&str]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().map_err(|e| e.to_string())
}

fn d_eta_finding() -> Outcome {
    let spec = ManifoldSpecFile::builtin("paper-example").ok_or("no builtin")?.build().map_err(|e| e.to_string())?;
    let report = verify(&spec, &VerifyOptions::default());
    ensure!(report.d_eta.vanishes, "dη reported nonzero");
    ensure!(report.d_eta.components.iter().flatten().all(|c| c == "0"), "dη components {:?}", report.d_eta.components);
    let finding = report.findings.iter().find(|f| f.id == "d-eta-vanishes").ok_or("no dη finding")?;
    ensure!(!finding.inconsistency, "dη finding marked as an inconsistency");
    ensure!(matches!(report.soliton, SolitonSection::Unique { .. }), "soliton section {:?}", report.soliton);
    ensure!(report.exit_code() == EXIT_CONSISTENT, "report exit code {}", report.exit_code());
    let out = run_cli(&["verify", "paper-example"])?;
    ensure!(out.status.code() == Some(0), "CLI exit status {:?}", out.status);
    ensure!(String::from_utf8_lossy(&out.stdout).contains("d-eta-vanishes"), "finding missing from CLI output");
    Ok("dη = 0 reported as a finding; exit code 0".into())
}

fn determinism() -> Outcome {
    let first = run_cli(&["verify", "paper-example", "--json"])?;
    let second = run_cli(&["verify", "paper-example", "--json"])?;
    ensure!(first.status.code() == Some(0), "exit status {:?}", first.status);
    ensure!(!first.stdout.is_empty(), "empty output");
    ensure!(first.stdout == second.stdout, "outputs differ");
    Ok(format!("{} identical bytes", first.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("example structure", structure),
        ("example curvature", curvature_values),
        ("example soliton", soliton),
        ("theorem suite", theorem_suite),
        ("identity suite", identity_suite),
        ("structural invariants", property_suite),
        ("flat fixture", flat_fixture),
        ("dη finding", d_eta_finding),
        ("deterministic JSON", determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
