//! Built-in manifolds used by the CLI and the test suites.

use crate::contact::ContactStructure;
use crate::expr::{Chart, Expr};
use crate::geometry::{FrameManifold, VectorField};
use crate::tensor::{FrameVector, Tensor02, Tensor11};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub manifold: FrameManifold,
    pub contact: ContactStructure,
}

struct Layout<'a> {
    coords: &'a [&'a str],
    nonzero: &'a [&'a str],
    frame: &'a [&'a [&'a str]],
    /// Identity when absent.
    metric: Option<&'a [&'a [&'a str]]>,
    /// Row `i` is `φ e_i` in the frame.
    phi: &'a [&'a [&'a str]],
    xi: &'a [&'a str],
}

fn parse_row(chart: &Chart, row: &[&str]) -> Vec<Expr> {
    row.iter()
        .map(|s| chart.parse(s).unwrap_or_else(|e| panic!("fixture expression `{s}`: {e}")))
        .collect()
}

fn build_manifold(layout: &Layout) -> FrameManifold {
    let mut chart = Chart::new(layout.coords).expect("fixture chart");
    for c in layout.nonzero {
        let e = chart.parse(c).expect("fixture constraint");
        chart = chart.with_constraint(e).expect("fixture constraint");
    }
    let n = chart.dim();
    let frame = layout
        .frame
        .iter()
        .map(|row| VectorField(parse_row(&chart, row)))
        .collect();
    let metric = match layout.metric {
        Some(rows) => {
            let parsed: Vec<Vec<Expr>> = rows.iter().map(|r| parse_row(&chart, r)).collect();
            Tensor02::from_fn(n, |i, j| parsed[i][j].clone())
        }
        None => Tensor02::identity(n),
    };
    FrameManifold::new(chart, frame, metric).expect("fixture manifold")
}

fn build(name: &'static str, layout: Layout) -> Fixture {
    let manifold = build_manifold(&layout);
    let chart = manifold.chart();
    let images: Vec<FrameVector> = layout
        .phi
        .iter()
        .map(|row| FrameVector(parse_row(chart, row)))
        .collect();
    let xi = FrameVector(parse_row(chart, layout.xi));
    let contact = ContactStructure::metric_dual(&manifold, Tensor11::from_images(&images), xi)
        .expect("fixture contact structure");
    Fixture {
        name,
        manifold,
        contact,
    }
}

const PHI_3: &[&[&str]] = &[&["0", "-1", "0"], &["1", "0", "0"], &["0", "0", "0"]];
const XI_3: &[&str] = &["0", "0", "1"];

/// `M = {z ≠ 0} ⊂ ℝ³` with orthonormal frame `z∂x, z∂y, z∂z`,
/// `φe₁ = -e₂`, `φe₂ = e₁`, `φe₃ = 0`, `ξ = e₃`: type `(0, -1)`.
pub fn kenmotsu_example() -> Fixture {
    build(
        "paper-example",
        Layout {
            coords: &["x", "y", "z"],
            nonzero: &["z"],
            frame: &[&["z", "0", "0"], &["0", "z", "0"], &["0", "0", "z"]],
            metric: None,
            phi: PHI_3,
            xi: XI_3,
        },
    )
}

/// Euclidean ℝ³ with the coordinate frame and the same `φ`, `ξ = ∂z`.
pub fn flat_example() -> Fixture {
    build(
        "flat-example",
        Layout {
            coords: &["x", "y", "z"],
            nonzero: &[],
            frame: &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]],
            metric: None,
            phi: PHI_3,
            xi: XI_3,
        },
    )
}

/// The metric `4g` of [`kenmotsu_example`] in its orthonormal frame `eᵢ/2`.
pub fn kenmotsu_rescaled_frame() -> Fixture {
    build(
        "rescaled-frame",
        Layout {
            coords: &["x", "y", "z"],
            nonzero: &["z"],
            frame: &[&["z/2", "0", "0"], &["0", "z/2", "0"], &["0", "0", "z/2"]],
            metric: None,
            phi: PHI_3,
            xi: XI_3,
        },
    )
}

/// The metric `4g` of [`kenmotsu_example`] on the original frame, `ξ = e₃/2`.
pub fn kenmotsu_scaled_metric() -> Fixture {
    build(
        "scaled-metric",
        Layout {
            coords: &["x", "y", "z"],
            nonzero: &["z"],
            frame: &[&["z", "0", "0"], &["0", "z", "0"], &["0", "0", "z"]],
            metric: Some(&[&["4", "0", "0"], &["0", "4", "0"], &["0", "0", "4"]]),
            phi: PHI_3,
            xi: &["0", "0", "1/2"],
        },
    )
}

/// Heisenberg group: `e₁ = 2∂y`, `e₂ = 2(∂x + y∂z)`, `e₃ = 2∂z`, with
/// `[e₁, e₂] = 2e₃`. Sasakian, `|α| = 1`, `β = 0`.
pub fn heisenberg() -> Fixture {
    build(
        "heisenberg",
        Layout {
            coords: &["x", "y", "z"],
            nonzero: &[],
            frame: &[&["0", "2", "0"], &["2", "0", "2*y"], &["0", "0", "2"]],
            metric: None,
            phi: PHI_3,
            xi: XI_3,
        },
    )
}

/// Warped product `dz² + z²(dx² + dy²)`: `α = 0`, `β = 1/z`, non-constant
/// scalar curvature.
pub fn warped_kenmotsu() -> Fixture {
    build(
        "warped",
        Layout {
            coords: &["x", "y", "z"],
            nonzero: &["z"],
            frame: &[&["1/z", "0", "0"], &["0", "1/z", "0"], &["0", "0", "1"]],
            metric: None,
            phi: PHI_3,
            xi: XI_3,
        },
    )
}

/// Upper half-space model of hyperbolic 5-space, `eᵢ = w∂ᵢ`, `ξ = e₅`.
pub fn hyperbolic_five() -> Fixture {
    build(
        "hyperbolic-5",
        Layout {
            coords: &["a", "b", "c", "d", "w"],
            nonzero: &["w"],
            frame: &[
                &["w", "0", "0", "0", "0"],
                &["0", "w", "0", "0", "0"],
                &["0", "0", "w", "0", "0"],
                &["0", "0", "0", "w", "0"],
                &["0", "0", "0", "0", "w"],
            ],
            metric: None,
            phi: &[
                &["0", "-1", "0", "0", "0"],
                &["1", "0", "0", "0", "0"],
                &["0", "0", "0", "-1", "0"],
                &["0", "0", "1", "0", "0"],
                &["0", "0", "0", "0", "0"],
            ],
            xi: &["0", "0", "0", "0", "1"],
        },
    )
}

/// Upper half-plane with frame `y∂x, y∂y`: Gaussian curvature -1.
pub fn hyperbolic_plane() -> FrameManifold {
    build_manifold(&Layout {
        coords: &["x", "y"],
        nonzero: &["y"],
        frame: &[&["y", "0"], &["0", "y"]],
        metric: None,
        phi: &[],
        xi: &[],
    })
}

/// Every built-in fixture carrying a contact structure.
pub fn contact_fixtures() -> Vec<Fixture> {
    vec![
        kenmotsu_example(),
        flat_example(),
        kenmotsu_rescaled_frame(),
        kenmotsu_scaled_metric(),
        heisenberg(),
        warped_kenmotsu(),
        hyperbolic_five(),
    ]
}
