//! Structural invariants every Levi-Civita frame manifold must satisfy, and a
//! generator for polynomial-frame manifolds.

#![allow(dead_code)]

use sasaki::curvature;
use sasaki::expr::{Chart, Expr, Rational};
use sasaki::geometry::{FrameManifold, VectorField};
use sasaki::tensor::{FrameVector, Tensor02, Tensor13};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `g(T(eᵢ, eⱼ)e_k, e_l)`.
fn lowered(m: &FrameManifold, t: &Tensor13, i: usize, j: usize, k: usize, l: usize) -> Expr {
    m.inner(&t.vector(i, j, k), &m.basis(l))
}

/// Every violated invariant, described. Empty when all hold exactly.
pub fn invariant_failures(m: &FrameManifold) -> Vec<String> {
    let n = m.dim();
    let mut out = Vec::new();
    let e = |i: usize| m.basis(i);

    for i in 0..n {
        for j in 0..n {
            let torsion = m.nabla(&e(i), &e(j)).sub(&m.nabla(&e(j), &e(i))).sub(&m.bracket(&e(i), &e(j)));
            if !torsion.is_zero() {
                out.push(format!("torsion at (e{}, e{})", i + 1, j + 1));
            }
            for k in 0..n {
                let lhs = m.frame_derivative(i, &m.inner(&e(j), &e(k)));
                let rhs = m.inner(m.nabla_frame(i, j), &e(k)) + m.inner(&e(j), m.nabla_frame(i, k));
                if lhs != rhs {
                    out.push(format!("∇g ≠ 0 at (e{}, e{}, e{})", i + 1, j + 1, k + 1));
                }
            }
        }
    }

    let r = curvature::riemann(m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let cyclic = r.vector(i, j, k).add(&r.vector(j, k, i)).add(&r.vector(k, i, j));
                if !cyclic.is_zero() {
                    out.push(format!("first Bianchi at (e{}, e{}, e{})", i + 1, j + 1, k + 1));
                }
                for l in 0..n {
                    let rijkl = lowered(m, r, i, j, k, l);
                    if rijkl != -lowered(m, r, j, i, k, l) {
                        out.push(format!("R not antisymmetric in X, Y at {i}{j}{k}{l}"));
                    }
                    if rijkl != -lowered(m, r, i, j, l, k) {
                        out.push(format!("R not antisymmetric in Z, W at {i}{j}{k}{l}"));
                    }
                    if rijkl != lowered(m, r, k, l, i, j) {
                        out.push(format!("R lacks pair symmetry at {i}{j}{k}{l}"));
                    }
                }
            }
        }
    }

    if !curvature::ricci(m).is_symmetric() {
        out.push("S not symmetric".to_string());
    }

    if n >= 3 {
        let conformal = curvature::conformal(m).expect("n >= 3");
        let b = -Rational::new(1.into(), ((n - 2) as i64).into());
        if curvature::quasi_conformal(m, &q(1), &b) != conformal {
            out.push("quasi_conformal(1, -1/(n-2)) differs from conformal".to_string());
        }
        if n == 3 && !conformal.is_zero() {
            out.push("conformal tensor nonzero in dimension 3".to_string());
        }
    }
    out
}

/// Monomials of degree at most 2 used for frame entries: `1`, each `xₖ`,
/// each `xₖ²` and `x₁xₙ`.
fn monomials(chart: &Chart) -> Vec<Expr> {
    let n = chart.dim();
    let mut out = vec![chart.one()];
    for k in 0..n {
        out.push(chart.coord(k));
    }
    for k in 0..n {
        out.push(&chart.coord(k) * &chart.coord(k));
    }
    out.push(&chart.coord(0) * &chart.coord(n - 1));
    out
}

/// Number of integers [`polynomial_frame_manifold`] consumes for dimension `n`.
pub fn draws_needed(n: usize) -> usize {
    let pairs = n * (n - 1) / 2;
    pairs * (2 * n + 2) + pairs
}

/// A manifold on ℝⁿ whose frame is unit upper triangular with polynomial
/// entries (so always independent) and whose constant metric is `LᵀL` for a
/// unit upper triangular integer `L` (so always positive definite). `draws`
/// supplies small integers; entries below `-1` are read as zero to keep the
/// frames sparse.
pub fn polynomial_frame_manifold(n: usize, draws: &mut impl Iterator<Item = i64>) -> FrameManifold {
    let names: Vec<String> = (0..n).map(|i| format!("x{}", i + 1)).collect();
    let chart = Chart::new(&names).expect("chart");
    let basis = monomials(&chart);
    let mut next = || {
        let v = draws.next().expect("enough draws");
        if v < -1 {
            0
        } else {
            v
        }
    };
    let mut frame = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![chart.zero(); n];
        row[i] = chart.one();
        for slot in row.iter_mut().skip(i + 1) {
            let mut p = chart.zero();
            for mono in &basis {
                let c = next();
                if c != 0 {
                    p = p + &chart.integer(c) * mono;
                }
            }
            *slot = p;
        }
        frame.push(VectorField(row));
    }
    let mut l = vec![vec![0i64; n]; n];
    for i in 0..n {
        l[i][i] = 1;
        for entry in l[i].iter_mut().skip(i + 1) {
            *entry = next();
        }
    }
    let metric = Tensor02::from_fn(n, |i, j| {
        let s: i64 = (0..n).map(|k| l[k][i] * l[k][j]).sum();
        chart.integer(s)
    });
    FrameManifold::new(chart, frame, metric).expect("unit triangular frame and positive definite metric")
}

/// A frame vector with the given constant components.
pub fn constant_vector(m: &FrameManifold, comps: &[i64]) -> FrameVector {
    FrameVector(comps.iter().map(|&c| m.chart().integer(c)).collect())
}
