//! Coordinate-chart recomputation of curvature and Lie derivatives, compared
//! against the frame engine. Shares no code with the frame connection.

mod common;

use common::q;
use sasaki::curvature;
use sasaki::expr::{Chart, Expr};
use sasaki::fixtures::{self, Fixture};
use sasaki::geometry::FrameManifold;
use sasaki::tensor::FrameVector;

type M3 = [[Expr; 3]; 3];

fn mat(f: impl Fn(usize, usize) -> Expr) -> M3 {
    std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)))
}

fn inverse(a: &M3) -> M3 {
    let cof = |i: usize, j: usize| {
        let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
        let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
        &(&a[r0][c0] * &a[r1][c1]) - &(&a[r0][c1] * &a[r1][c0])
    };
    let det = (0..3).fold(Expr::zero(3), |acc, j| acc + &a[0][j] * &cof(0, j));
    mat(|i, j| cof(j, i).checked_div(&det).expect("invertible"))
}

/// Coordinate data of a 3-dimensional frame manifold.
struct Coordinates {
    chart: Chart,
    /// `frame[i][a]`: the `∂_a` component of `eᵢ`.
    frame: M3,
    frame_inv: M3,
    g: M3,
    g_inv: M3,
    /// `gamma[a][b][c] = Γ^a_{bc}`.
    gamma: [[[Expr; 3]; 3]; 3],
}

impl Coordinates {
    fn new(m: &FrameManifold) -> Self {
        assert_eq!(m.dim(), 3);
        let chart = m.chart().clone();
        let frame = mat(|i, a| m.frame()[i].0[a].clone());
        let frame_inv = inverse(&frame);
        // g_ab = Σ_ij (F⁻¹)_ai G_ij (F⁻¹)_bj
        let g = mat(|a, b| {
            let mut s = chart.zero();
            for i in 0..3 {
                for j in 0..3 {
                    s = s + &(&frame_inv[a][i] * m.metric().get(i, j)) * &frame_inv[b][j];
                }
            }
            s
        });
        let g_inv = inverse(&g);
        let d = |e: &Expr, k: usize| e.differentiate(k);
        let gamma = std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                std::array::from_fn(|c| {
                    let mut s = chart.zero();
                    for e in 0..3 {
                        let t = &(&d(&g[e][c], b) + &d(&g[e][b], c)) - &d(&g[b][c], e);
                        s = s + &g_inv[a][e] * &t;
                    }
                    &s * &chart.constant(q(1) / q(2))
                })
            })
        });
        Coordinates {
            chart,
            frame,
            frame_inv,
            g,
            g_inv,
            gamma,
        }
    }

    /// `R^a_{bcd}`, the `∂_a` component of `R(∂_c, ∂_d)∂_b`.
    fn riemann(&self, a: usize, b: usize, c: usize, d: usize) -> Expr {
        let gm = &self.gamma;
        let mut s = &gm[a][d][b].differentiate(c) - &gm[a][c][b].differentiate(d);
        for e in 0..3 {
            s = s + &(&gm[a][c][e] * &gm[e][d][b]) - &(&gm[a][d][e] * &gm[e][c][b]);
        }
        s
    }

    fn scalar(&self) -> Expr {
        let mut r = self.chart.zero();
        for a in 0..3 {
            for b in 0..3 {
                for d in 0..3 {
                    r = r + &self.g_inv[b][d] * &self.riemann(a, b, a, d);
                }
            }
        }
        r
    }

    /// Frame components of `R(eᵢ, eⱼ)e_k`.
    fn frame_riemann(&self, i: usize, j: usize, k: usize) -> Vec<Expr> {
        let f = &self.frame;
        let mut v: Vec<Expr> = vec![self.chart.zero(); 3];
        for (a, va) in v.iter_mut().enumerate() {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let w = &(&f[i][c] * &f[j][d]) * &f[k][b];
                        if !w.is_zero() {
                            *va = &*va + &(&w * &self.riemann(a, b, c, d));
                        }
                    }
                }
            }
        }
        (0..3)
            .map(|l| (0..3).fold(self.chart.zero(), |s, a| s + &v[a] * &self.frame_inv[a][l]))
            .collect()
    }

    /// `(£_V g)(eᵢ, eⱼ)` for `V` given by frame components.
    fn lie_metric(&self, v: &FrameVector, i: usize, j: usize) -> Expr {
        let vc: Vec<Expr> = (0..3)
            .map(|a| (0..3).fold(self.chart.zero(), |s, l| s + &v[l] * &self.frame[l][a]))
            .collect();
        let lie = |a: usize, b: usize| {
            let mut s = self.chart.zero();
            for c in 0..3 {
                s = s + &vc[c] * &self.g[a][b].differentiate(c);
                s = s + &self.g[c][b] * &vc[c].differentiate(a);
                s = s + &self.g[a][c] * &vc[c].differentiate(b);
            }
            s
        };
        let mut out = self.chart.zero();
        for a in 0..3 {
            for b in 0..3 {
                out = out + &(&self.frame[i][a] * &self.frame[j][b]) * &lie(a, b);
            }
        }
        out
    }
}

fn three_dimensional() -> Vec<Fixture> {
    fixtures::contact_fixtures().into_iter().filter(|f| f.manifold.dim() == 3).collect()
}

#[test]
fn frame_riemann_matches_coordinate_christoffel_route() {
    for f in three_dimensional() {
        let m = &f.manifold;
        let oracle = Coordinates::new(m);
        let r = curvature::riemann(m);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(r.vector(i, j, k).0, oracle.frame_riemann(i, j, k), "{} R(e{i}, e{j})e{k}", f.name);
                }
            }
        }
        assert_eq!(curvature::scalar_curvature(m), &oracle.scalar(), "{}", f.name);
    }
}

#[test]
fn example_coordinate_metric_is_conformally_flat() {
    let f = fixtures::kenmotsu_example();
    let c = Coordinates::new(&f.manifold);
    let z = c.chart.coord(2);
    let inv_z2 = c.chart.one().checked_div(&(&z * &z)).unwrap();
    assert_eq!(c.g, mat(|a, b| if a == b { inv_z2.clone() } else { c.chart.zero() }));
    assert_eq!(c.scalar(), c.chart.integer(-6));
}

#[test]
fn lie_derivative_matches_coordinate_formula() {
    for f in three_dimensional() {
        let m = &f.manifold;
        let oracle = Coordinates::new(m);
        let ch = m.chart();
        for v in [f.contact.xi().clone(), f.contact.xi().scale(&ch.coord(2)), FrameVector(vec![ch.coord(1), ch.one(), ch.coord(0)])] {
            let lib = m.lie_derivative_metric(&v);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(lib.get(i, j), &oracle.lie_metric(&v, i, j), "{} (e{i}, e{j})", f.name);
                }
            }
        }
    }
}

/// Solves `½(£_ξ g)(eᵢ, eⱼ) = (r - λ)g(eᵢ, eⱼ) - μη(eᵢ)η(eⱼ)` on the example by
/// reading λ from `(e1, e1)` and μ from `(e3, e3)`, then checks all pairs.
#[test]
fn example_soliton_constants_from_coordinate_lie_derivative() {
    let f = fixtures::kenmotsu_example();
    let c = Coordinates::new(&f.manifold);
    let xi = f.contact.xi();
    let half = |i: usize, j: usize| (&c.lie_metric(xi, i, j) * &c.chart.constant(q(1) / q(2))).as_constant().unwrap();
    let r = c.scalar().as_constant().unwrap();
    let lambda = &r - &half(0, 0);
    let mu = &r - &lambda - half(2, 2);
    assert_eq!((lambda.clone(), mu.clone()), (q(-5), q(-1)));
    for i in 0..3 {
        for j in 0..3 {
            let g = if i == j { q(1) } else { q(0) };
            let eta = if i == 2 && j == 2 { q(1) } else { q(0) };
            assert_eq!(half(i, j), (&r - &lambda) * g - &mu * eta, "(e{i}, e{j})");
        }
    }
    assert_eq!(&lambda + &mu, r);
}
