//! Frame-based Riemannian geometry: brackets, the Levi-Civita connection
//! from Koszul's formula, covariant and Lie derivatives.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::curvature::Curvature;
use crate::expr::{self, Chart, Expr, Rational};
use crate::linalg::{self, ExprMatrix};
use crate::tensor::{FrameVector, Tensor02, Tensor11};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector fields live on charts of different dimension ({0} vs {1})")]
    ChartMismatch(usize, usize),
    #[error("metric is not symmetric: g(e{i}, e{j}) != g(e{j}, e{i})", i = .0 + 1, j = .1 + 1)]
    MetricNotSymmetric(usize, usize),
    #[error("metric determinant is identically zero")]
    DegenerateMetric,
    #[error("frame vector fields are linearly dependent (determinant identically zero)")]
    DependentFrame,
}

/// A vector field in the coordinate basis, `X = Σ X^j ∂/∂x^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField(pub Vec<Expr>);

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField(vec![Expr::zero(n); n])
    }

    pub fn coordinate(n: usize, index: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[index] = Expr::one(n);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Expr::is_zero)
    }

    /// `X(f) = Σ X^j ∂_j f`.
    pub fn apply(&self, f: &Expr) -> Expr {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| c * &f.differentiate(j))
            .fold(Expr::zero(f.nvars()), |a, b| a + b)
    }

    pub fn scale(&self, f: &Expr) -> Self {
        VectorField(self.0.iter().map(|c| c * f).collect())
    }
}

/// `[X, Y]^j = Σ_i (X^i ∂_i Y^j - Y^i ∂_i X^j)`.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, GeometryError> {
    if x.dim() != y.dim() {
        return Err(GeometryError::ChartMismatch(x.dim(), y.dim()));
    }
    Ok(VectorField(
        (0..x.dim())
            .map(|j| &x.apply(&y.0[j]) - &y.apply(&x.0[j]))
            .collect(),
    ))
}

/// A chart with a frame `e_1..e_n` and metric components `g(e_i, e_j)`.
/// The Levi-Civita connection is computed at construction; curvature is
/// filled in on first use.
#[derive(Clone, Debug)]
pub struct FrameManifold {
    chart: Chart,
    frame: Vec<VectorField>,
    metric: Tensor02,
    inverse_metric: Tensor02,
    /// `(E^T)^{-1}` where row `i` of `E` holds the coordinate components of `e_i`.
    coframe: ExprMatrix,
    /// `[e_i, e_j]` in the frame, index `i * n + j`.
    brackets: Vec<FrameVector>,
    /// `∇_{e_i} e_j` in the frame, index `i * n + j`.
    connection: Vec<FrameVector>,
    curvature: OnceLock<Curvature>,
}

impl FrameManifold {
    pub fn new(
        chart: Chart,
        frame: Vec<VectorField>,
        metric: Tensor02,
    ) -> Result<Self, GeometryError> {
        let n = chart.dim();
        if frame.len() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                got: frame.len(),
            });
        }
        for f in &frame {
            if f.dim() != n {
                return Err(GeometryError::DimensionMismatch {
                    expected: n,
                    got: f.dim(),
                });
            }
        }
        if metric.dim() != n {
            return Err(GeometryError::DimensionMismatch {
                expected: n,
                got: metric.dim(),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if metric.get(i, j) != metric.get(j, i) {
                    return Err(GeometryError::MetricNotSymmetric(i, j));
                }
            }
        }

        let (_, ginv) = linalg::det_and_inverse(&metric.rows());
        let ginv = ginv.ok_or(GeometryError::DegenerateMetric)?;
        let inverse_metric = Tensor02::from_fn(n, |i, j| ginv[i][j].clone());

        let e: ExprMatrix = frame.iter().map(|f| f.0.clone()).collect();
        let (_, et_inv) = linalg::det_and_inverse(&linalg::transpose(&e));
        let coframe = et_inv.ok_or(GeometryError::DependentFrame)?;

        let mut m = FrameManifold {
            chart,
            frame,
            metric,
            inverse_metric,
            coframe,
            brackets: Vec::new(),
            connection: Vec::new(),
            curvature: OnceLock::new(),
        };
        m.brackets = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                if i == j {
                    return FrameVector::zero(n);
                }
                let b = lie_bracket(&m.frame[i], &m.frame[j]).expect("same chart");
                m.to_frame(&b)
            })
            .collect();
        m.connection = m.koszul();
        Ok(m)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn frame(&self) -> &[VectorField] {
        &self.frame
    }

    pub fn metric(&self) -> &Tensor02 {
        &self.metric
    }

    pub fn inverse_metric(&self) -> &Tensor02 {
        &self.inverse_metric
    }

    pub(crate) fn curvature_cell(&self) -> &OnceLock<Curvature> {
        &self.curvature
    }

    pub fn zero(&self) -> Expr {
        self.chart.zero()
    }

    pub fn basis(&self, i: usize) -> FrameVector {
        FrameVector::basis(self.dim(), i)
    }

    /// Coordinate components to frame coefficients.
    pub fn to_frame(&self, v: &VectorField) -> FrameVector {
        let n = self.dim();
        FrameVector(
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| !v.0[j].is_zero() && !self.coframe[i][j].is_zero())
                        .map(|j| &self.coframe[i][j] * &v.0[j])
                        .fold(Expr::zero(n), |a, b| a + b)
                })
                .collect(),
        )
    }

    /// Frame coefficients to coordinate components.
    pub fn to_coordinates(&self, v: &FrameVector) -> VectorField {
        let n = self.dim();
        VectorField(
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter(|&i| !v[i].is_zero())
                        .map(|i| &v[i] * &self.frame[i].0[j])
                        .fold(Expr::zero(n), |a, b| a + b)
                })
                .collect(),
        )
    }

    /// `e_i(f)`.
    pub fn frame_derivative(&self, i: usize, f: &Expr) -> Expr {
        self.frame[i].apply(f)
    }

    /// `X(f)` for a frame vector `X`.
    pub fn directional(&self, x: &FrameVector, f: &Expr) -> Expr {
        if f.is_constant() {
            return self.zero();
        }
        (0..self.dim())
            .filter(|&i| !x[i].is_zero())
            .map(|i| &x[i] * &self.frame_derivative(i, f))
            .fold(Expr::zero(self.dim()), |a, b| a + b)
    }

    /// `[e_i, e_j]` in the frame.
    pub fn frame_bracket(&self, i: usize, j: usize) -> &FrameVector {
        &self.brackets[i * self.dim() + j]
    }

    /// `∇_{e_i} e_j` in the frame.
    pub fn nabla_frame(&self, i: usize, j: usize) -> &FrameVector {
        &self.connection[i * self.dim() + j]
    }

    /// Connection coefficient `Γ^k_ij`, the `e_k` component of `∇_{e_i} e_j`.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &Expr {
        &self.connection[i * self.dim() + j][k]
    }

    /// `g(X, Y)`.
    pub fn inner(&self, x: &FrameVector, y: &FrameVector) -> Expr {
        self.metric.apply(x, y)
    }

    fn koszul(&self) -> Vec<FrameVector> {
        let n = self.dim();
        let g = &self.metric;
        let half = Expr::constant(n, Rational::new(1.into(), 2.into()));
        // g(e_a, V) for a frame vector V
        let g_with = |a: usize, v: &FrameVector| -> Expr {
            (0..n)
                .filter(|&m| !v[m].is_zero())
                .map(|m| g.get(a, m) * &v[m])
                .fold(Expr::zero(n), |a, b| a + b)
        };
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // K_k = 2 g(∇_{e_i} e_j, e_k)
                let lowered: Vec<Expr> = (0..n)
                    .map(|k| {
                        let terms = [
                            self.frame_derivative(i, g.get(j, k)),
                            self.frame_derivative(j, g.get(k, i)),
                            -self.frame_derivative(k, g.get(i, j)),
                            -g_with(i, self.frame_bracket(j, k)),
                            -g_with(j, self.frame_bracket(i, k)),
                            g_with(k, self.frame_bracket(i, j)),
                        ];
                        expr::sum(n, terms)
                    })
                    .collect();
                let raised = (0..n)
                    .map(|l| {
                        let s: Expr = (0..n)
                            .filter(|&k| !lowered[k].is_zero())
                            .map(|k| self.inverse_metric.get(l, k) * &lowered[k])
                            .fold(Expr::zero(n), |a, b| a + b);
                        &s * &half
                    })
                    .collect();
                out.push(FrameVector(raised));
            }
        }
        out
    }

    /// `[X, Y]` for frame vectors.
    pub fn bracket(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        let n = self.dim();
        let mut out = FrameVector(
            (0..n)
                .map(|j| &self.directional(x, &y[j]) - &self.directional(y, &x[j]))
                .collect(),
        );
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || i == j {
                    continue;
                }
                out = out.add(&self.frame_bracket(i, j).scale(&(&x[i] * &y[j])));
            }
        }
        out
    }

    /// `∇_X Y` for frame vectors: function-linear in `X`, Leibniz in `Y`.
    pub fn nabla(&self, x: &FrameVector, y: &FrameVector) -> FrameVector {
        let n = self.dim();
        let mut out = FrameVector((0..n).map(|j| self.directional(x, &y[j])).collect());
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                out = out.add(&self.nabla_frame(i, j).scale(&(&x[i] * &y[j])));
            }
        }
        out
    }

    /// `∇_X Y` for coordinate-basis fields, converted through the frame.
    pub fn covariant_derivative_vf(
        &self,
        x: &VectorField,
        y: &VectorField,
    ) -> Result<VectorField, GeometryError> {
        for v in [x, y] {
            if v.dim() != self.dim() {
                return Err(GeometryError::ChartMismatch(self.dim(), v.dim()));
            }
        }
        let xf = self.to_frame(x);
        let yf = self.to_frame(y);
        Ok(self.to_coordinates(&self.nabla(&xf, &yf)))
    }

    /// `(∇_X T)(Y, Z) = X T(Y, Z) - T(∇_X Y, Z) - T(Y, ∇_X Z)` on the frame.
    pub fn covariant_derivative_02(&self, x: &FrameVector, t: &Tensor02) -> Tensor02 {
        let n = self.dim();
        let nabla_e: Vec<FrameVector> = (0..n).map(|i| self.nabla(x, &self.basis(i))).collect();
        Tensor02::from_fn(n, |i, j| {
            let a = self.directional(x, t.get(i, j));
            let b = t.apply(&nabla_e[i], &self.basis(j));
            let c = t.apply(&self.basis(i), &nabla_e[j]);
            &(&a - &b) - &c
        })
    }

    /// `(∇_X T) Y = ∇_X (T Y) - T(∇_X Y)` on the frame.
    pub fn covariant_derivative_11(&self, x: &FrameVector, t: &Tensor11) -> Tensor11 {
        let n = self.dim();
        let images: Vec<FrameVector> = (0..n)
            .map(|i| {
                let a = self.nabla(x, &t.image(i));
                let b = t.apply(&self.nabla(x, &self.basis(i)));
                a.sub(&b)
            })
            .collect();
        Tensor11::from_images(&images)
    }

    /// `(£_V g)(X, Y) = V g(X, Y) - g([V, X], Y) - g(X, [V, Y])`.
    pub fn lie_derivative_metric(&self, v: &FrameVector) -> Tensor02 {
        let n = self.dim();
        let brackets: Vec<FrameVector> = (0..n).map(|i| self.bracket(v, &self.basis(i))).collect();
        Tensor02::from_fn(n, |i, j| {
            let a = self.directional(v, self.metric.get(i, j));
            let b = self.inner(&brackets[i], &self.basis(j));
            let c = self.inner(&self.basis(i), &brackets[j]);
            &(&a - &b) - &c
        })
    }

    /// `dω(X, Y) = X ω(Y) - Y ω(X) - ω([X, Y])` for a 1-form given by its
    /// values `ω(e_i)`.
    pub fn exterior_derivative(&self, omega: &[Expr]) -> Tensor02 {
        let n = self.dim();
        assert_eq!(omega.len(), n, "1-form needs one value per frame vector");
        let apply = |v: &FrameVector| -> Expr {
            (0..n)
                .filter(|&k| !v[k].is_zero())
                .map(|k| &omega[k] * &v[k])
                .fold(Expr::zero(n), |a, b| a + b)
        };
        Tensor02::from_fn(n, |i, j| {
            if i == j {
                return self.zero();
            }
            let a = self.frame_derivative(i, &omega[j]);
            let b = self.frame_derivative(j, &omega[i]);
            &(&a - &b) - &apply(self.frame_bracket(i, j))
        })
    }

    /// Evaluates the metric at a few admissible rational points and checks
    /// positive-definiteness there.
    pub fn spot_check_metric(&self, samples: usize) -> MetricSpotCheck {
        let points = self.sample_points(samples);
        let positive_definite = points.iter().all(|p| {
            let n = self.dim();
            let mut g: Vec<Vec<Rational>> = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    match self.metric.get(i, j).eval_at(p) {
                        Some(v) => row.push(v),
                        None => return false,
                    }
                }
                g.push(row);
            }
            is_positive_definite(g)
        });
        MetricSpotCheck {
            points,
            positive_definite,
        }
    }

    /// Deterministic admissible sample points: the chart constraints and
    /// every frame/metric denominator are nonzero.
    pub fn sample_points(&self, count: usize) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let values: Vec<Rational> = [(1, 1), (2, 1), (-1, 1), (1, 2), (3, 1), (-3, 2), (5, 3)]
            .iter()
            .map(|&(a, b)| Rational::new(a.into(), b.into()))
            .collect();
        let dens: Vec<&Expr> = self
            .frame
            .iter()
            .flat_map(|f| f.0.iter())
            .chain(self.metric.entries())
            .collect();
        let mut out = Vec::new();
        let total = values.len().pow(n as u32);
        // stride through the grid so successive points differ in every coordinate
        let mut idx = 0usize;
        let mut tried = 0usize;
        while out.len() < count && tried < total {
            let mut k = idx;
            let p: Vec<Rational> = (0..n)
                .map(|_| {
                    let v = values[k % values.len()].clone();
                    k /= values.len();
                    v
                })
                .collect();
            idx = (idx + 1 + values.len() * 3 + 1) % total;
            tried += 1;
            if !self.chart.admits(&p) {
                continue;
            }
            if dens.iter().any(|e| e.denominator().evaluate(&p).is_zero()) {
                continue;
            }
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricSpotCheck {
    pub points: Vec<Vec<Rational>>,
    pub positive_definite: bool,
}

/// Sylvester's criterion through symmetric elimination without pivoting.
fn is_positive_definite(mut a: Vec<Vec<Rational>>) -> bool {
    let n = a.len();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}
