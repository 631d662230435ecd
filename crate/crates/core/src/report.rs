//! Machine-readable outcomes for the verification entry points.

use serde::Serialize;

/// Outcome of one identity checked over a finite grid. A failure is data: the
/// check records where the identity first broke instead of erroring.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    /// Short stable name of the identity.
    pub name: String,
    /// Number of grid points evaluated.
    pub points: u64,
    /// True when every grid point satisfied the identity.
    pub pass: bool,
    /// Location and values of the first failure, when any.
    pub first_counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn from_scan(
        name: impl Into<String>,
        points: u64,
        first_counterexample: Option<String>,
    ) -> Self {
        Self {
            name: name.into(),
            points,
            pass: first_counterexample.is_none(),
            first_counterexample,
        }
    }
}
