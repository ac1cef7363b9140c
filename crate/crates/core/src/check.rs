//! Identity checks: one row per frame instantiation, residuals rendered in
//! the expression grammar so they can be parsed back.

use serde::{Deserialize, Serialize};

use crate::expr::{Chart, Expr};
use crate::tensor::FrameVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    /// The frame arguments, e.g. `(e1, e3)`.
    pub at: String,
    /// Components of `lhs - rhs`; a single entry for scalar identities.
    pub residual: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Applicability {
    Applicable,
    NotApplicable { reason: String },
}

impl Applicability {
    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Applicability::NotApplicable {
            reason: reason.into(),
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, Applicability::Applicable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub applicability: Applicability,
    pub instances: Vec<Instance>,
}

impl Check {
    pub fn new(id: &str, statement: &str) -> Self {
        Check {
            id: id.to_string(),
            statement: statement.to_string(),
            applicability: Applicability::Applicable,
            instances: Vec::new(),
        }
    }

    pub fn not_applicable(id: &str, statement: &str, reason: impl Into<String>) -> Self {
        Check {
            applicability: Applicability::not_applicable(reason),
            ..Self::new(id, statement)
        }
    }

    pub fn push_scalar(&mut self, chart: &Chart, at: String, residual: &Expr) {
        self.instances.push(Instance {
            at,
            residual: vec![chart.render(residual)],
            holds: residual.is_zero(),
        });
    }

    pub fn push_vector(&mut self, chart: &Chart, at: String, residual: &FrameVector) {
        self.instances.push(Instance {
            at,
            residual: residual.components().iter().map(|e| chart.render(e)).collect(),
            holds: residual.is_zero(),
        });
    }

    /// `None` when not applicable, else whether every instance holds.
    pub fn holds(&self) -> Option<bool> {
        self.applicability
            .is_applicable()
            .then(|| self.instances.iter().all(|r| r.holds))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(|r| !r.holds)
    }
}

/// `e1`, `e2`, ... labels for frame indices.
pub fn frame_label(i: usize) -> String {
    format!("e{}", i + 1)
}

pub fn frame_args(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|&i| frame_label(i)).collect();
    format!("({})", parts.join(", "))
}
