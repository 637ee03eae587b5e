//! Numerical tolerances shared by every module.

use serde::{Deserialize, Serialize};

/// Central tolerance record. Every threshold used by the library is read
/// from here so that a run can be reproduced from its configuration alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Max-norm bound on `U†U - I` for a matrix to count as unitary.
    pub unitarity: f64,
    /// Structural identities (round trips, exp/log, dedup).
    pub structural: f64,
    /// Design verification residuals.
    pub verification: f64,
    /// Distance to -1 at which the principal logarithm is refused.
    pub branch_cut: f64,
    /// Coincidence threshold for the bialternant Schur formula.
    pub confluent: f64,
    /// Max-norm equality used when deduplicating matrices.
    pub dedup: f64,
    /// Residual bound for certified polynomial zeros.
    pub certification: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unitarity: 1e-10,
            structural: 1e-10,
            verification: 1e-8,
            branch_cut: 1e-8,
            confluent: 1e-9,
            dedup: 1e-10,
            certification: 1e-10,
        }
    }
}

/// Enumeration above this many elements must be forced explicitly.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

/// Guard on the number of element pairs in an exact frame potential.
pub const PAIR_LIMIT: u64 = 100_000_000;
