//! Deterministic, seeded random generation of states, Hermitian operators
//! and superposition specs for property tests and fuzzing.
//!
//! All randomness flows through a self-contained SplitMix64 generator with
//! Box–Muller normal variates. The constants are fixed here (not taken
//! from an external crate) so golden values survive toolchain and
//! dependency upgrades, and every generated object is replayable from
//! `(master_seed, stream_index)` alone.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::SuperpositionSpec;
use crate::error::{Error, Result};
use crate::linalg::{norm_sq, validate_hermitian, HermitianOperator, Matrix, StateVector};
use crate::tolerances::Tolerances;

const TOL: Tolerances = Tolerances::DEFAULT;

/// SplitMix64 increment (Weyl constant).
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output mix.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed of an independent stream: the `stream_index`-th
/// SplitMix64 output of `master`. Distinct indices map through a bijection
/// of distinct counters, so streams never collide for a fixed master.
pub fn derive_seed(master: u64, stream_index: u64) -> u64 {
    mix(master.wrapping_add(stream_index.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// 64-bit SplitMix64 generator with cached Box–Muller output.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
    spare_normal: Option<f64>,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed,
            spare_normal: None,
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform in [0, 1) with 53 random bits.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in (0, 1]; safe as a logarithm argument.
    #[inline]
    fn next_open_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box–Muller; generates pairs, caches the second.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.next_open_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * theta.sin());
        r * theta.cos()
    }

    pub fn next_complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.next_normal(), self.next_normal())
    }
}

/// How superposition coefficients are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientScheme {
    /// |normal| draws, all real and nonnegative after normalization.
    RealPositive,
    /// Complex normal draws; uniform on the coefficient sphere.
    ComplexHaar,
}

/// How random observables are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorScheme {
    /// (M + M†)/2 with i.i.d. complex normal entries.
    Gue,
    /// (R + Rᵀ)/2 with i.i.d. real normal entries.
    RealSymmetric,
    /// i.i.d. normal diagonal.
    Diagonal,
}

/// Ensemble description; fully determines every generated object together
/// with a stream index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub dim: usize,
    pub n_components: usize,
    pub master_seed: u64,
    pub coefficient_scheme: CoefficientScheme,
    pub operator_scheme: OperatorScheme,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidConfig(format!(
                "dim must be >= 2, got {}",
                self.dim
            )));
        }
        if self.n_components < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_components must be >= 2, got {}",
                self.n_components
            )));
        }
        Ok(())
    }
}

/// Haar-distributed pure state: 2·dim independent normals, normalized.
pub fn random_state(dim: usize, rng: &mut SplitMix64) -> StateVector {
    loop {
        let amplitudes: Vec<Complex64> = (0..dim).map(|_| rng.next_complex_normal()).collect();
        // Zero draws have probability zero; redraw keeps the API infallible.
        if let Ok(state) = StateVector::normalized(amplitudes) {
            return state;
        }
    }
}

/// Random Hermitian operator under the given scheme; always passes
/// Hermiticity validation.
pub fn random_hermitian(
    dim: usize,
    rng: &mut SplitMix64,
    scheme: OperatorScheme,
) -> HermitianOperator {
    let raw = match scheme {
        OperatorScheme::Gue => {
            let mut m = Matrix::zeros(dim);
            for i in 0..dim {
                for j in 0..dim {
                    m.set(i, j, rng.next_complex_normal());
                }
            }
            m
        }
        OperatorScheme::RealSymmetric => {
            let mut m = Matrix::zeros(dim);
            for i in 0..dim {
                for j in 0..dim {
                    m.set(i, j, Complex64::new(rng.next_normal(), 0.0));
                }
            }
            m
        }
        OperatorScheme::Diagonal => {
            let entries: Vec<f64> = (0..dim).map(|_| rng.next_normal()).collect();
            return HermitianOperator::diagonal(&entries);
        }
    };
    // Symmetrization (raw + raw†)/2 happens inside validation.
    validate_hermitian(symmetrize_input(raw), TOL.hermiticity)
        .expect("symmetrized draw is Hermitian")
}

/// Pre-symmetrizes a raw draw so validation accepts it exactly.
fn symmetrize_input(raw: Matrix) -> Matrix {
    let d = raw.dim();
    let mut out = Matrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            out.set(i, j, (raw.get(i, j) + raw.get(j, i).conj()) * 0.5);
        }
    }
    out
}

const MAX_SPEC_ATTEMPTS: usize = 100;

/// Random superposition spec: Haar components plus coefficients drawn per
/// scheme and normalized to Σ|α|² = 1. Redraws (up to a cap) when the
/// assembled state nearly cancels.
pub fn random_spec(config: &EnsembleConfig, rng: &mut SplitMix64) -> Result<SuperpositionSpec> {
    config.validate()?;
    random_spec_unchecked(config.dim, config.n_components, config.coefficient_scheme, rng)
}

/// As `random_spec` but without the config-range restrictions; used by
/// test suites that need N = 1 or other corner sizes.
pub fn random_spec_unchecked(
    dim: usize,
    n_components: usize,
    scheme: CoefficientScheme,
    rng: &mut SplitMix64,
) -> Result<SuperpositionSpec> {
    spec_with_retries(rng, |rng| {
        let components: Vec<StateVector> =
            (0..n_components).map(|_| random_state(dim, rng)).collect();
        let coefficients = random_coefficients(n_components, scheme, rng);
        SuperpositionSpec::new(coefficients, components)
    })
}

/// Retry loop shared by all spec generators: a candidate whose assembled
/// state nearly cancels is redrawn, up to a hard cap.
fn spec_with_retries(
    rng: &mut SplitMix64,
    mut draw: impl FnMut(&mut SplitMix64) -> Result<SuperpositionSpec>,
) -> Result<SuperpositionSpec> {
    for _ in 0..MAX_SPEC_ATTEMPTS {
        let spec = draw(rng)?;
        if norm_sq(&spec.raw_sum()) >= TOL.min_assembled_norm_sq {
            return Ok(spec);
        }
    }
    Err(Error::GenerationFailure {
        attempts: MAX_SPEC_ATTEMPTS,
    })
}

fn random_coefficients(
    n: usize,
    scheme: CoefficientScheme,
    rng: &mut SplitMix64,
) -> Vec<Complex64> {
    loop {
        let draws: Vec<Complex64> = match scheme {
            CoefficientScheme::RealPositive => (0..n)
                .map(|_| Complex64::new(rng.next_normal().abs(), 0.0))
                .collect(),
            CoefficientScheme::ComplexHaar => {
                (0..n).map(|_| rng.next_complex_normal()).collect()
            }
        };
        let total: f64 = draws.iter().map(|z| z.norm_sqr()).sum();
        if total > 1e-12 {
            let inv = 1.0 / total.sqrt();
            return draws.into_iter().map(|z| z * inv).collect();
        }
    }
}
