//! Exact frame-based tensor calculus over ℚ(x₁, …, xₙ) for almost contact
//! metric manifolds: curvature, trans-Sasakian type extraction, η-Yamabe
//! solitons and instance-level theorem verdicts.

pub mod check;
pub mod contact;
pub mod curvature;
pub mod expr;
pub mod fixtures;
pub mod geometry;
pub mod linalg;
pub mod report;
pub mod soliton;
pub mod spec;
pub mod tensor;
pub mod theorems;
