//! Spread of an observable over superposition states.
//!
//! For |ψ⟩ = Σ αᵢ|ψᵢ⟩ this crate computes standard deviations, skew
//! information and the incompatibility of observables, and brackets the
//! scaled variance ‖ψ‖²·Δ²_ψ̃A between bounds built only from
//! per-component statistics. A verification harness reproduces the
//! bundled two-component reference sweep, fuzzes bound validity over
//! seeded random ensembles, and exercises the saturation cases.

pub mod bounds;
pub mod dataset;
pub mod double_slit;
pub mod ensembles;
pub mod error;
pub mod linalg;
pub mod stats;
pub mod tolerances;
pub mod verify;

pub use bounds::{
    assemble, coherence_bounds, component_stats, expansion_identity, incompatibility_bounds,
    norm_squared, variance_bounds, Assembled, BoundsReport, ComponentMoments, ComponentStats,
    IncompatBoundsReport, PairCross, SuperpositionSpec, TermSet, Variant,
};
pub use double_slit::{
    build_slit_state, double_slit_report, position_operator, DoubleSlitReport, Slit, SlitConfig,
};
pub use ensembles::{
    derive_seed, random_hermitian, random_spec, random_state, CoefficientScheme, EnsembleConfig,
    OperatorScheme, SplitMix64,
};
pub use error::{Error, Result};
pub use linalg::{
    apply, eigh, inner, psd_sqrt, validate_hermitian, DensityMatrix, EigenDecomposition,
    HermitianOperator, Matrix, StateVector,
};
pub use num_complex::Complex64;
pub use stats::{
    expectation, incompatibility, moments, pure_state_coherence, skew_information,
    transition_moment, MomentSet,
};
pub use tolerances::Tolerances;
pub use verify::{
    cross_term_check, fuzz_bounds, saturation_suite, sweep_two_component, BoundSide,
    CrossTermCheck, FuzzReport, GapStats, SaturationReport, Sign, SweepReport, SweepRow,
    VariantFuzz, VariantRow, ViolationRecord,
};
