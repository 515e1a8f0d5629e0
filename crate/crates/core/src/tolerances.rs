//! Central tolerance record.
//!
//! Every numeric threshold used for validation, clamping and bound
//! satisfaction lives here, so a report can state the tolerance set it was
//! produced under and tests never invent ad-hoc magic numbers.

use serde::Serialize;

/// The tolerance set in force for a run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    /// Hermiticity: max |H_jk - conj(H_kj)| <= hermiticity * max(1, max |H_jk|).
    pub hermiticity: f64,
    /// State normalization: | ||v|| - 1 | at construction.
    pub state_norm: f64,
    /// Eigenpair residual: ||H u - lambda u|| <= eigen_residual * (1 + |lambda|).
    pub eigen_residual: f64,
    /// Eigenvector orthonormality: || U'U - I ||_max.
    pub orthonormality: f64,
    /// Eigenvalues of a density matrix may dip this far below zero.
    pub psd_floor: f64,
    /// |trace - 1| allowed for a density matrix.
    pub density_trace: f64,
    /// Max-entry error allowed when squaring a matrix square root.
    pub sqrt_reconstruction: f64,
    /// Negative variances within this window (relative to the second moment)
    /// are rounding artifacts and clamp to zero.
    pub variance_clamp: f64,
    /// Imaginary residue allowed on quantities that must be real.
    pub imaginary_residue: f64,
    /// Slack used when marking a bound as satisfied.
    pub bound_satisfaction: f64,
    /// Assembled norm^2 at or below this is a degenerate superposition.
    pub degenerate_norm_sq: f64,
    /// Moment-expansion residual: <= expansion_residual * (1 + |exact|).
    pub expansion_residual: f64,
    /// Allowed spread between lower bound, exact value and upper bound in
    /// the saturation suites.
    pub saturation: f64,
    /// Slack on the second-moment cross-term inequality (rounding only).
    pub cross_term_slack: f64,
    /// |sum |alpha_i|^2 - 1| allowed for superposition coefficients.
    pub coefficient_norm: f64,
    /// Agreement required between the assembled norm^2 and its overlap form.
    pub assembly_agreement: f64,
    /// Random superpositions redraw when the assembled norm^2 falls below this.
    pub min_assembled_norm_sq: f64,
    /// Loader window: states with | ||v|| - 1 | inside it are silently
    /// renormalized; larger deviations need an explicit opt-in.
    pub state_renorm_window: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermiticity: 1e-12,
        state_norm: 1e-9,
        eigen_residual: 1e-9,
        orthonormality: 1e-10,
        psd_floor: 1e-10,
        density_trace: 1e-9,
        sqrt_reconstruction: 1e-8,
        variance_clamp: 1e-12,
        imaginary_residue: 1e-12,
        bound_satisfaction: 1e-9,
        degenerate_norm_sq: 1e-12,
        expansion_residual: 1e-9,
        saturation: 1e-8,
        cross_term_slack: 1e-9,
        coefficient_norm: 1e-9,
        assembly_agreement: 1e-10,
        min_assembled_norm_sq: 1e-6,
        state_renorm_window: 1e-4,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
