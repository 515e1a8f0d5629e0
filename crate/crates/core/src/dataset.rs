//! Bundled 4-dimensional reference instance used by the `sweep-paper`
//! command and the saturation/tightness test suites.
//!
//! The digits are stored verbatim; the state loaders renormalize (the
//! stored vectors have squared norms of about 1.00001).

use crate::linalg::{HermitianOperator, StateVector};
use num_complex::Complex64;

/// Real symmetric 4×4 observable, digits stored verbatim.
pub const OBSERVABLE_ENTRIES: [[f64; 4]; 4] = [
    [-1.3343, -0.7485, -0.5932, 0.1623],
    [-0.7485, 0.2060, -0.0115, 0.9184],
    [-0.5932, -0.0115, -0.3338, 0.3307],
    [0.1623, 0.9184, 0.3307, 1.2613],
];

/// First component state, digits stored verbatim (unnormalized).
pub const STATE_ONE_ENTRIES: [f64; 4] = [0.5506, 0.3628, 0.6016, 0.4509];

/// Second component state, digits stored verbatim (unnormalized).
pub const STATE_TWO_ENTRIES: [f64; 4] = [0.3511, 0.4912, 0.5296, 0.5958];

/// The reference observable; real symmetric, so validation accepts it
/// unchanged.
pub fn observable() -> HermitianOperator {
    let rows: Vec<Vec<f64>> = OBSERVABLE_ENTRIES.iter().map(|r| r.to_vec()).collect();
    HermitianOperator::from_real_rows(&rows).expect("reference observable is symmetric")
}

/// First component state, renormalized.
pub fn state_one() -> StateVector {
    normalized(&STATE_ONE_ENTRIES)
}

/// Second component state, renormalized.
pub fn state_two() -> StateVector {
    normalized(&STATE_TWO_ENTRIES)
}

fn normalized(entries: &[f64]) -> StateVector {
    StateVector::normalized(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .expect("reference states are nonzero")
}
