//! Shared fixtures for the benchmark targets.

use sdbounds_core::ensembles::{derive_seed, random_hermitian, random_spec_unchecked};
use sdbounds_core::{
    CoefficientScheme, HermitianOperator, OperatorScheme, SplitMix64, SuperpositionSpec,
};

/// Deterministic operator fixture.
pub fn operator(dim: usize) -> HermitianOperator {
    let mut rng = SplitMix64::new(derive_seed(0xBE4C, dim as u64));
    random_hermitian(dim, &mut rng, OperatorScheme::Gue)
}

/// Deterministic spec fixture.
pub fn spec(dim: usize, components: usize) -> SuperpositionSpec {
    let mut rng = SplitMix64::new(derive_seed(0xBE4D, (dim * 31 + components) as u64));
    random_spec_unchecked(dim, components, CoefficientScheme::ComplexHaar, &mut rng)
        .expect("fixture spec generates")
}
