//! Periodicity and perfect state transfer certificates, theorem-backed
//! no-go rules, and pretty good state transfer witnesses.

mod necessity;
mod periodicity;
mod pgst;
mod pst;

pub use necessity::{antipodal_sign_check, pgst_necessity_residual, NecessityTerm};
pub use periodicity::{
    corona_periodicity, corona_vertex_periodicity, periodicity_verdict, recognize_support, PeriodicityRule, PeriodicityStatus, PeriodicityVerdict,
    RuleWitness,
};
pub use pgst::{
    pgst_construct_time, pgst_grid_search, ConstructionOptions, KroneckerTarget, PgstFamily, PgstWitness, DEFAULT_GRID_REFINEMENTS,
};
pub use pst::{
    digon_corona_pst, no_pst_rule, pst_certify, weighted_p4_pst, DigonReport, DigonVariant, NoPstKind, NoPstVerdict,
    PstCertificate, PstFailure, PstOutcome, WeightedP4Report,
};

use crate::number_theory::{DEFAULT_MAX_COEFF, DEFAULT_RECOGNITION_TOL};
use crate::spectral::DEFAULT_SUPPORT_TOL;

/// Tolerances shared by the certification routines.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    /// Threshold on `‖E_λ e_u‖` for eigenvalue support and cospectrality.
    pub support: f64,
    /// Acceptance radius when matching an eigenvalue to `(a + b√Δ)/2`.
    pub recognition: f64,
    /// Bound on `|a|`, `|b|` and `Δ` in the recognition search.
    pub max_coeff: i64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { support: DEFAULT_SUPPORT_TOL, recognition: DEFAULT_RECOGNITION_TOL, max_coeff: DEFAULT_MAX_COEFF }
    }
}
