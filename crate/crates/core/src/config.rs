use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical tolerances shared by the eigensolver checks and the extremal search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Absolute accuracy expected of computed eigenvalues.
    pub eigen: f64,
    /// Two spectral radii closer than this are treated as a tie.
    pub margin: f64,
    /// Off-diagonal threshold (per unit of order) for re-solving tied candidates.
    pub reverify: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen: 1e-9,
            margin: 1e-6,
            reverify: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eigen", self.eigen),
            ("margin", self.margin),
            ("reverify", self.reverify),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameters(format!(
                    "tolerance {name} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}
