//! Pass/fail reports shared by the structural validators.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of checking one axiom, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub pass: bool,
    /// Offending vertices, nodes or an edge; empty on success.
    pub witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl AxiomCheck {
    pub fn pass(axiom: &str) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            pass: true,
            witness: Vec::new(),
            detail: None,
        }
    }

    pub fn fail(axiom: &str, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        AxiomCheck {
            axiom: axiom.to_string(),
            pass: false,
            witness,
            detail: Some(detail.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn push(&mut self, check: AxiomCheck) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// The check for `axiom`, if it was performed.
    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Turns the first failure into an error built by `make`.
    pub fn into_result(self, make: impl FnOnce(String) -> Error) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(c) => Err(make(format!(
                "{} failed (witness {:?}){}",
                c.axiom,
                c.witness,
                c.detail
                    .as_deref()
                    .map(|d| format!(": {d}"))
                    .unwrap_or_default()
            ))),
        }
    }
}
