//! Two-slit demonstration: a discretized transverse-position observable on
//! a screen, Gaussian per-slit wavefunctions, and the spread of the
//! position reading with one or both slits open.
//!
//! No propagation physics is modeled (no wavelength, no slit-to-screen
//! distance); the interference between the packets enters only through
//! the overlap term in the assembled norm. The screen-wide spread is
//! computed rather than any detection-conditioned quantity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{variance_bounds, BoundsReport, SuperpositionSpec, Variant};
use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, StateVector};
use crate::stats::{moments, MomentSet};

/// Screen geometry, packet shape and slit amplitudes.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SlitConfig {
    pub grid_points: usize,
    pub y_min: f64,
    pub y_max: f64,
    /// Packet centers (μ₁, μ₂); equal centers model reopening the same slit.
    pub slit_centers: (f64, f64),
    /// Gaussian packet width σ.
    pub packet_width: f64,
    /// Complex amplitudes (α₁, α₂) with |α₁|² + |α₂|² = 1.
    pub amplitudes: ((f64, f64), (f64, f64)),
}

impl Default for SlitConfig {
    fn default() -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        SlitConfig {
            grid_points: 512,
            y_min: -10.0,
            y_max: 10.0,
            slit_centers: (-2.0, 2.0),
            packet_width: 0.5,
            amplitudes: ((w, 0.0), (w, 0.0)),
        }
    }
}

/// Which slit's packet to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slit {
    One,
    Two,
}

impl SlitConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 16 {
            return Err(Error::InvalidConfig(format!(
                "grid_points must be >= 16, got {}",
                self.grid_points
            )));
        }
        if !self.packet_width.is_finite() || self.packet_width <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "packet_width must be positive, got {}",
                self.packet_width
            )));
        }
        let (mu1, mu2) = self.slit_centers;
        if !(self.y_min < mu1 && mu1 <= mu2 && mu2 < self.y_max) {
            return Err(Error::InvalidConfig(format!(
                "slit centers must satisfy y_min < mu1 <= mu2 < y_max, got [{}, {}] in ({}, {})",
                mu1, mu2, self.y_min, self.y_max
            )));
        }
        let a1 = Complex64::new(self.amplitudes.0 .0, self.amplitudes.0 .1);
        let a2 = Complex64::new(self.amplitudes.1 .0, self.amplitudes.1 .1);
        let total = a1.norm_sqr() + a2.norm_sqr();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::CoefficientsNotNormalized {
                deviation: (total - 1.0).abs(),
            });
        }
        Ok(())
    }

    fn amplitude_pair(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.amplitudes.0 .0, self.amplitudes.0 .1),
            Complex64::new(self.amplitudes.1 .0, self.amplitudes.1 .1),
        )
    }

    /// Uniform screen coordinates, endpoints included.
    pub fn grid(&self) -> Vec<f64> {
        let step = (self.y_max - self.y_min) / (self.grid_points - 1) as f64;
        (0..self.grid_points)
            .map(|k| self.y_min + k as f64 * step)
            .collect()
    }
}

/// Diagonal position observable whose eigenvalues are exactly the grid
/// coordinates.
pub fn position_operator(config: &SlitConfig) -> Result<HermitianOperator> {
    config.validate()?;
    Ok(HermitianOperator::diagonal(&config.grid()))
}

/// Normalized Gaussian packet exp(−(y−μ)²/(4σ²)) sampled on the grid.
pub fn build_slit_state(config: &SlitConfig, which: Slit) -> Result<StateVector> {
    config.validate()?;
    let mu = match which {
        Slit::One => config.slit_centers.0,
        Slit::Two => config.slit_centers.1,
    };
    let four_sigma_sq = 4.0 * config.packet_width * config.packet_width;
    let amplitudes: Vec<Complex64> = config
        .grid()
        .iter()
        .map(|&y| Complex64::new((-(y - mu) * (y - mu) / four_sigma_sq).exp(), 0.0))
        .collect();
    StateVector::normalized(amplitudes)
}

/// Everything the demo reports: per-slit spreads, the both-slits-open
/// spread, and the two-component bounds around it.
#[derive(Debug, Clone, Serialize)]
pub struct DoubleSlitReport {
    pub config: SlitConfig,
    pub slit_one: MomentSet,
    pub slit_two: MomentSet,
    /// Statistics on the normalized superposition of the two packets.
    pub both_slits: MomentSet,
    /// ‖α₁ψ₁ + α₂ψ₂‖²
    pub norm_sq: f64,
    pub corrected: BoundsReport,
    pub printed: BoundsReport,
}

/// Builds both packets, superposes them with the configured amplitudes
/// and evaluates the spread and its bounds.
pub fn double_slit_report(config: &SlitConfig) -> Result<DoubleSlitReport> {
    config.validate()?;
    let position = position_operator(config)?;
    let psi1 = build_slit_state(config, Slit::One)?;
    let psi2 = build_slit_state(config, Slit::Two)?;
    let (a1, a2) = config.amplitude_pair();
    let spec = SuperpositionSpec::new(vec![a1, a2], vec![psi1.clone(), psi2.clone()])?;
    let corrected = variance_bounds(&spec, &position, Variant::Corrected)?;
    let printed = variance_bounds(&spec, &position, Variant::Printed)?;
    let assembled = crate::bounds::assemble(&spec)?;
    Ok(DoubleSlitReport {
        config: *config,
        slit_one: moments(&psi1, &position)?,
        slit_two: moments(&psi2, &position)?,
        both_slits: moments(&assembled.normalized, &position)?,
        norm_sq: assembled.norm_sq,
        corrected,
        printed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn position_operator_eigenvalues_are_the_grid() {
        let config = SlitConfig::default();
        let op = position_operator(&config).unwrap();
        let grid = config.grid();
        assert_eq!(grid.len(), 512);
        assert_eq!(grid[0], -10.0);
        assert_eq!(grid[511], 10.0);
        for (k, &y) in grid.iter().enumerate() {
            assert_eq!(op.get(k, k).re, y);
        }
        let e5 = StateVector::basis(config.grid_points, 5);
        let m = crate::stats::expectation(&e5, &op).unwrap();
        assert_eq!(m, grid[5]);
    }

    #[test]
    fn packet_is_normalized_and_centered() {
        let config = SlitConfig::default();
        let psi = build_slit_state(&config, Slit::One).unwrap();
        let n: f64 = psi.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((n - 1.0).abs() < 1e-12);

        // Packet fits the grid (|mu - edge| = 16 sigma, spacing ~ sigma/12),
        // so the discrete mean and spread match the continuum values.
        let op = position_operator(&config).unwrap();
        let m = moments(&psi, &op).unwrap();
        assert!(
            (m.mean - config.slit_centers.0).abs() < 1e-6,
            "mean {} vs center {}",
            m.mean,
            config.slit_centers.0
        );
        assert!((m.sd - config.packet_width).abs() / config.packet_width < 1e-4);
    }

    #[test]
    fn well_separated_slits_reproduce_the_mixture_variance() {
        let config = SlitConfig::default();
        let report = double_slit_report(&config).unwrap();
        let half_gap = 0.5 * (config.slit_centers.1 - config.slit_centers.0);
        let oracle = config.packet_width.powi(2) + half_gap.powi(2);
        let relative = (report.both_slits.variance - oracle).abs() / oracle;
        assert!(
            relative < 1e-3,
            "variance {} vs mixture oracle {oracle} (rel {relative})",
            report.both_slits.variance
        );
        assert!(report.corrected.lower_satisfied && report.corrected.upper_satisfied);
        assert!(report.corrected.upper >= report.corrected.lower_raw);
        assert!(report.corrected.lower >= 0.0);
    }

    #[test]
    fn single_open_slit_collapses_the_report() {
        let config = SlitConfig {
            amplitudes: ((1.0, 0.0), (0.0, 0.0)),
            ..SlitConfig::default()
        };
        let report = double_slit_report(&config).unwrap();
        assert!((report.both_slits.sd - report.slit_one.sd).abs() < 1e-12);
        assert!((report.norm_sq - 1.0).abs() < 1e-12);
        assert!((report.corrected.lower - report.corrected.exact).abs() < 1e-9);
        assert!((report.corrected.upper - report.corrected.exact).abs() < 1e-9);
    }

    #[test]
    fn identical_packets_superpose_to_the_same_spread() {
        let config = SlitConfig {
            slit_centers: (1.0, 1.0),
            ..SlitConfig::default()
        };
        let report = double_slit_report(&config).unwrap();
        assert!((report.norm_sq - 2.0).abs() < 1e-9);
        assert!((report.both_slits.sd - report.slit_one.sd).abs() < 1e-9);
    }

    #[test]
    fn cancelling_amplitudes_on_identical_packets_degenerate() {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        let config = SlitConfig {
            slit_centers: (1.0, 1.0),
            amplitudes: ((w, 0.0), (-w, 0.0)),
            ..SlitConfig::default()
        };
        assert!(matches!(
            double_slit_report(&config),
            Err(Error::DegenerateSuperposition { .. })
        ));
    }

    #[test]
    fn config_validation_rejects_bad_geometry() {
        let mut config = SlitConfig {
            grid_points: 8,
            ..SlitConfig::default()
        };
        assert!(config.validate().is_err());
        config.grid_points = 64;
        config.packet_width = 0.0;
        assert!(config.validate().is_err());
        config.packet_width = 0.5;
        config.slit_centers = (-11.0, 2.0);
        assert!(config.validate().is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let config = SlitConfig::default();
        let text = serde_json::to_string(&config).unwrap();
        let back: SlitConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(config.grid_points, back.grid_points);
        assert_eq!(config.slit_centers, back.slit_centers);
        assert_eq!(config.amplitudes, back.amplitudes);
    }
}
