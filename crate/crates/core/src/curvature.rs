//! Riemann curvature and the curvature-type tensors built from it.
//!
//! Conventions: `R(X,Y)Z = ∇_X∇_Y Z - ∇_Y∇_X Z - ∇_[X,Y] Z`, the Ricci
//! tensor traces the first slot, `S(Y,Z) = tr(X ↦ R(X,Y)Z)`, the Ricci
//! operator satisfies `g(QX, Y) = S(X, Y)` and `r = tr Q`.

use thiserror::Error;

use crate::expr::{self, Expr, Rational};
use crate::geometry::FrameManifold;
use crate::tensor::{FrameVector, Tensor02, Tensor11, Tensor13};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurvatureError {
    #[error("{tensor} needs dimension at least 3, manifold has dimension {dim}")]
    DimensionTooSmall { tensor: &'static str, dim: usize },
}

#[derive(Clone, Debug)]
pub struct Curvature {
    pub riemann: Tensor13,
    pub ricci: Tensor02,
    pub ricci_operator: Tensor11,
    pub scalar: Expr,
}

/// Curvature of `m`, computed once and cached on the manifold.
pub fn curvature(m: &FrameManifold) -> &Curvature {
    m.curvature_cell().get_or_init(|| {
        let riemann = compute_riemann(m);
        let ricci = compute_ricci(m, &riemann);
        let ricci_operator = compute_ricci_operator(m, &ricci);
        let n = m.dim();
        let scalar = expr::sum(
            n,
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| {
                m.inverse_metric().get(i, j) * ricci.get(i, j)
            }),
        );
        Curvature {
            riemann,
            ricci,
            ricci_operator,
            scalar,
        }
    })
}

pub fn riemann(m: &FrameManifold) -> &Tensor13 {
    &curvature(m).riemann
}

pub fn ricci(m: &FrameManifold) -> &Tensor02 {
    &curvature(m).ricci
}

pub fn ricci_operator(m: &FrameManifold) -> &Tensor11 {
    &curvature(m).ricci_operator
}

pub fn scalar_curvature(m: &FrameManifold) -> &Expr {
    &curvature(m).scalar
}

/// True when every Riemann component vanishes.
pub fn is_flat(m: &FrameManifold) -> bool {
    riemann(m).is_zero()
}

fn compute_riemann(m: &FrameManifold) -> Tensor13 {
    let n = m.dim();
    Tensor13::from_vectors(n, |i, j, k| {
        if i == j {
            return FrameVector::zero(n);
        }
        let a = m.nabla(&m.basis(i), m.nabla_frame(j, k));
        let b = m.nabla(&m.basis(j), m.nabla_frame(i, k));
        let c = m.nabla(m.frame_bracket(i, j), &m.basis(k));
        a.sub(&b).sub(&c)
    })
}

fn compute_ricci(m: &FrameManifold, r: &Tensor13) -> Tensor02 {
    let n = m.dim();
    let g = m.metric();
    let ginv = m.inverse_metric();
    // S(Y, Z) = Σ_ij g^{ij} g(R(e_i, Y) Z, e_j)
    Tensor02::from_fn(n, |a, b| {
        let mut acc = m.zero();
        for i in 0..n {
            for j in 0..n {
                if ginv.get(i, j).is_zero() {
                    continue;
                }
                let v = r.vector(i, a, b);
                if v.is_zero() {
                    continue;
                }
                let inner = g.apply(&v, &m.basis(j));
                acc = acc + ginv.get(i, j) * &inner;
            }
        }
        acc
    })
}

fn compute_ricci_operator(m: &FrameManifold, s: &Tensor02) -> Tensor11 {
    let n = m.dim();
    let ginv = m.inverse_metric();
    // S(e_i, e_k) = Σ_j Q[i][j] g_jk  =>  Q[i][j] = Σ_k S_ik g^{kj}
    Tensor11::from_fn(n, |i, j| expr::sum(n, (0..n).map(|k| s.get(i, k) * ginv.get(k, j))))
}

fn rational(n: usize, num: i64, den: i64) -> Expr {
    Expr::constant(n, Rational::new(num.into(), den.into()))
}

fn delta(n: usize, a: usize, b: usize) -> Expr {
    if a == b {
        Expr::one(n)
    } else {
        Expr::zero(n)
    }
}

/// Frame components of `g(Y,Z)X - g(X,Z)Y` for a (0,2) tensor `t` in place of `g`.
fn wedge_identity(t: &Tensor02, i: usize, j: usize, k: usize, l: usize) -> Expr {
    let n = t.dim();
    &(t.get(j, k) * &delta(n, i, l)) - &(t.get(i, k) * &delta(n, j, l))
}

/// Frame components of `g(Y,Z)QX - g(X,Z)QY`.
fn wedge_operator(g: &Tensor02, q: &Tensor11, i: usize, j: usize, k: usize, l: usize) -> Expr {
    &(g.get(j, k) * q.get(i, l)) - &(g.get(i, k) * q.get(j, l))
}

fn require_dim3(m: &FrameManifold, tensor: &'static str) -> Result<(), CurvatureError> {
    if m.dim() < 3 {
        Err(CurvatureError::DimensionTooSmall {
            tensor,
            dim: m.dim(),
        })
    } else {
        Ok(())
    }
}

/// `P = R - 1/(n-1) [g(QY,Z)X - g(QX,Z)Y]`.
pub fn projective(m: &FrameManifold) -> Tensor13 {
    let n = m.dim();
    let c = curvature(m);
    let f = rational(n, 1, n as i64 - 1);
    Tensor13::from_fn(n, |i, j, k, l| {
        c.riemann.get(i, j, k, l) - &(&f * &wedge_identity(&c.ricci, i, j, k, l))
    })
}

/// `C̃ = R - r/(n(n-1)) [g(Y,Z)X - g(X,Z)Y]`.
pub fn concircular(m: &FrameManifold) -> Tensor13 {
    let n = m.dim();
    let c = curvature(m);
    let f = &c.scalar * &rational(n, 1, (n * (n - 1)) as i64);
    Tensor13::from_fn(n, |i, j, k, l| {
        c.riemann.get(i, j, k, l) - &(&f * &wedge_identity(m.metric(), i, j, k, l))
    })
}

/// `H = R - 1/(n-2) [g(Y,Z)QX - g(X,Z)QY + S(Y,Z)X - S(X,Z)Y]`.
pub fn conharmonic(m: &FrameManifold) -> Result<Tensor13, CurvatureError> {
    require_dim3(m, "conharmonic curvature")?;
    let n = m.dim();
    let c = curvature(m);
    let f = rational(n, 1, n as i64 - 2);
    Ok(Tensor13::from_fn(n, |i, j, k, l| {
        let bracket = &wedge_operator(m.metric(), &c.ricci_operator, i, j, k, l)
            + &wedge_identity(&c.ricci, i, j, k, l);
        c.riemann.get(i, j, k, l) - &(&f * &bracket)
    }))
}

/// `C* = aR + b[S(Y,Z)X - S(X,Z)Y + g(Y,Z)QX - g(X,Z)QY]
///       - r/n (a/(n-1) + 2b) [g(Y,Z)X - g(X,Z)Y]`.
pub fn quasi_conformal(m: &FrameManifold, a: &Rational, b: &Rational) -> Tensor13 {
    let n = m.dim();
    let c = curvature(m);
    let a_e = Expr::constant(n, a.clone());
    let b_e = Expr::constant(n, b.clone());
    let two = Rational::from_integer(2.into());
    let inner = a / Rational::from_integer((n as i64 - 1).into()) + &two * b;
    let f = &(&c.scalar * &rational(n, 1, n as i64)) * &Expr::constant(n, inner);
    Tensor13::from_fn(n, |i, j, k, l| {
        let bracket = &wedge_identity(&c.ricci, i, j, k, l)
            + &wedge_operator(m.metric(), &c.ricci_operator, i, j, k, l);
        let t = &(&a_e * c.riemann.get(i, j, k, l)) + &(&b_e * &bracket);
        &t - &(&f * &wedge_identity(m.metric(), i, j, k, l))
    })
}

/// `C = R - 1/(n-2)[S(Y,Z)X - S(X,Z)Y + g(Y,Z)QX - g(X,Z)QY]
///      + r/((n-1)(n-2)) [g(Y,Z)X - g(X,Z)Y]`.
pub fn conformal(m: &FrameManifold) -> Result<Tensor13, CurvatureError> {
    require_dim3(m, "conformal curvature")?;
    let n = m.dim();
    let c = curvature(m);
    let f1 = rational(n, 1, n as i64 - 2);
    let f2 = &c.scalar * &rational(n, 1, ((n - 1) * (n - 2)) as i64);
    Ok(Tensor13::from_fn(n, |i, j, k, l| {
        let bracket = &wedge_identity(&c.ricci, i, j, k, l)
            + &wedge_operator(m.metric(), &c.ricci_operator, i, j, k, l);
        let t = c.riemann.get(i, j, k, l) - &(&f1 * &bracket);
        &t + &(&f2 * &wedge_identity(m.metric(), i, j, k, l))
    }))
}

/// `W₂ = R + 1/(n-1) [g(X,Z)QY - g(Y,Z)QX]`.
pub fn w2(m: &FrameManifold) -> Tensor13 {
    let n = m.dim();
    let c = curvature(m);
    let f = rational(n, 1, n as i64 - 1);
    Tensor13::from_fn(n, |i, j, k, l| {
        c.riemann.get(i, j, k, l) - &(&f * &wedge_operator(m.metric(), &c.ricci_operator, i, j, k, l))
    })
}

/// `(A(ξ, X)·S)(Y, Z) = S(A(ξ,X)Y, Z) + S(Y, A(ξ,X)Z)` over frame triples,
/// indexed `[x][y][z]` flattened. The sum form is used as written for the
/// semi-symmetry conditions; its zero set matches the usual derivation sign.
pub fn derivation_action(a: &Tensor13, xi: &FrameVector, s: &Tensor02) -> Vec<Expr> {
    let n = a.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for x in 0..n {
        let ex = FrameVector::basis(n, x);
        for y in 0..n {
            let ey = FrameVector::basis(n, y);
            let ay = a.apply(xi, &ex, &ey);
            for z in 0..n {
                let ez = FrameVector::basis(n, z);
                let az = a.apply(xi, &ex, &ez);
                out.push(&s.apply(&ay, &ez) + &s.apply(&ey, &az));
            }
        }
    }
    out
}
