//! Bounds on the spread of an observable over a superposition state.
//!
//! Given |ψ⟩ = Σ αᵢ|ψᵢ⟩ with Σ|αᵢ|² = 1 and unit-norm (generally
//! non-orthogonal) components, the scaled variance ‖ψ‖²·Δ²_ψ̃A is bracketed
//! by terms built only from per-component means, variances and the
//! coefficient moduli. Two formula variants are kept side by side:
//!
//! * `Printed`: the correction term enters as +Σ|αᵢ|²⟨A⟩ᵢ, which is
//!   dimensionally odd for a variance bound and breaks single-component
//!   saturation;
//! * `Corrected`: the term enters as −Σ|αᵢ|²⟨A⟩ᵢ² inside the correction,
//!   consistent with ⟨A²⟩ᵢ = Δ²ᵢ + ⟨A⟩ᵢ², which restores saturation.
//!
//! `Corrected` is the default everywhere; `Printed` is retained so the
//! fuzzing harness can quantify the difference. Bound validity is
//! *reported*, never asserted: the step bounding the first-moment cross
//! terms uses a Cauchy–Schwarz argument that is only guaranteed for
//! positive-semidefinite observables, and reports carry satisfied-flags
//! instead of panicking when a bound fails.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    apply, inner, norm_sq, DensityMatrix, HermitianOperator, StateVector,
};
use crate::stats::{moments_of_applied, skew_information};
use crate::tolerances::Tolerances;

const TOL: Tolerances = Tolerances::DEFAULT;

/// Which reading of the correction term a report was computed under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Printed,
    Corrected,
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Printed => write!(f, "printed"),
            Variant::Corrected => write!(f, "corrected"),
        }
    }
}

/// Coefficients α and unit-norm components ψ of a superposition
/// |ψ⟩ = Σ αᵢ|ψᵢ⟩. The assembled vector need not be normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionSpec {
    coefficients: Vec<Complex64>,
    components: Vec<StateVector>,
}

impl SuperpositionSpec {
    pub fn new(coefficients: Vec<Complex64>, components: Vec<StateVector>) -> Result<Self> {
        if components.is_empty() || coefficients.is_empty() {
            return Err(Error::EmptySuperposition);
        }
        if coefficients.len() != components.len() {
            return Err(Error::DimensionMismatch {
                expected: components.len(),
                got: coefficients.len(),
            });
        }
        if coefficients
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let dim = components[0].dim();
        for c in &components[1..] {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: c.dim(),
                });
            }
        }
        let total: f64 = coefficients.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (total - 1.0).abs();
        if deviation > TOL.coefficient_norm {
            return Err(Error::CoefficientsNotNormalized { deviation });
        }
        Ok(Self {
            coefficients,
            components,
        })
    }

    /// Single component with coefficient one.
    pub fn single(component: StateVector) -> Self {
        Self {
            coefficients: vec![Complex64::new(1.0, 0.0)],
            components: vec![component],
        }
    }

    /// Two components weighted (x, sign·√(1−x²)); the standard
    /// two-component sweep parametrization.
    pub fn two_component(
        psi1: StateVector,
        psi2: StateVector,
        x: f64,
        negative_second: bool,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidConfig(format!(
                "sweep coordinate must be in [0, 1], got {x}"
            )));
        }
        let second = (1.0 - x * x).max(0.0).sqrt();
        let sign = if negative_second { -1.0 } else { 1.0 };
        Self::new(
            vec![
                Complex64::new(x, 0.0),
                Complex64::new(sign * second, 0.0),
            ],
            vec![psi1, psi2],
        )
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    pub fn components(&self) -> &[StateVector] {
        &self.components
    }

    /// Unnormalized Σ αᵢψᵢ.
    pub fn raw_sum(&self) -> Vec<Complex64> {
        let dim = self.dim();
        let mut raw = vec![Complex64::new(0.0, 0.0); dim];
        for (alpha, psi) in self.coefficients.iter().zip(&self.components) {
            for (acc, amp) in raw.iter_mut().zip(psi.amplitudes()) {
                *acc += alpha * amp;
            }
        }
        raw
    }
}

/// Squared norm of the assembled superposition via pairwise overlaps:
/// 1 + 2·Re Σ_{i<j} ᾱᵢαⱼ⟨ψᵢ|ψⱼ⟩.
pub fn norm_squared(spec: &SuperpositionSpec) -> Result<f64> {
    let alpha = spec.coefficients();
    let comps = spec.components();
    let mut cross = 0.0;
    for i in 0..spec.len() {
        for j in (i + 1)..spec.len() {
            let overlap = inner(comps[i].amplitudes(), comps[j].amplitudes())?;
            cross += (alpha[i].conj() * alpha[j] * overlap).re;
        }
    }
    let n = 1.0 + 2.0 * cross;
    if n <= TOL.degenerate_norm_sq {
        return Err(Error::DegenerateSuperposition { norm_sq: n });
    }
    Ok(n)
}

/// Assembled superposition: the raw sum, its squared norm and the
/// normalized state.
#[derive(Debug, Clone)]
pub struct Assembled {
    pub raw: Vec<Complex64>,
    pub norm_sq: f64,
    pub normalized: StateVector,
}

/// Builds Σ αᵢψᵢ, rejecting near-exact cancellation.
pub fn assemble(spec: &SuperpositionSpec) -> Result<Assembled> {
    let raw = spec.raw_sum();
    let n = norm_sq(&raw);
    if n <= TOL.degenerate_norm_sq {
        return Err(Error::DegenerateSuperposition { norm_sq: n });
    }
    debug_assert!(
        (n - norm_squared(spec)?).abs() <= TOL.assembly_agreement * (1.0 + n),
        "assembled norm disagrees with the overlap form"
    );
    let inv = 1.0 / n.sqrt();
    let normalized = StateVector::new(raw.iter().map(|z| z * inv).collect())?;
    Ok(Assembled {
        raw,
        norm_sq: n,
        normalized,
    })
}

/// Per-component moments of one observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentMoments {
    pub mean: f64,
    pub variance: f64,
    pub second_moment: f64,
}

/// Cross moments for one unordered component pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCross {
    pub i: usize,
    pub j: usize,
    /// ⟨ψᵢ|ψⱼ⟩
    pub overlap: Complex64,
    /// ⟨ψᵢ|A|ψⱼ⟩
    pub first_cross: Complex64,
    /// ⟨ψᵢ|A²|ψⱼ⟩
    pub second_cross: Complex64,
}

/// All single-component and pairwise statistics a bounds report needs.
#[derive(Debug, Clone)]
pub struct ComponentStats {
    pub per_component: Vec<ComponentMoments>,
    pub pairs: Vec<PairCross>,
}

/// Computes per-component moments and pairwise cross moments. Each
/// component's image A·ψᵢ is formed once; ⟨A²⟩ᵢⱼ = ⟨Aψᵢ|Aψⱼ⟩ then needs
/// no explicit A².
pub fn component_stats(
    spec: &SuperpositionSpec,
    a: &HermitianOperator,
) -> Result<ComponentStats> {
    if a.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            got: a.dim(),
        });
    }
    let n = spec.len();
    let comps = spec.components();
    let applied: Vec<Vec<Complex64>> = comps
        .iter()
        .map(|psi| apply(a, psi.amplitudes()))
        .collect::<Result<_>>()?;

    let mut per_component = Vec::with_capacity(n);
    for (psi, image) in comps.iter().zip(&applied) {
        let m = moments_of_applied(psi.amplitudes(), image)?;
        per_component.push(ComponentMoments {
            mean: m.mean,
            variance: m.variance,
            second_moment: m.second_moment,
        });
    }

    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let overlap = inner(comps[i].amplitudes(), comps[j].amplitudes())?;
            let first_cross = inner(comps[i].amplitudes(), &applied[j])?;
            let second_cross = inner(&applied[i], &applied[j])?;
            // Cauchy–Schwarz on the PSD operator A²; violation beyond
            // rounding means corrupted inputs.
            let si = per_component[i].second_moment;
            let sj = per_component[j].second_moment;
            assert!(
                second_cross.norm_sqr() <= si * sj + TOL.cross_term_slack * (1.0 + si * sj),
                "second-moment cross term exceeds its Cauchy-Schwarz bound"
            );
            pairs.push(PairCross {
                i,
                j,
                overlap,
                first_cross,
                second_cross,
            });
        }
    }
    Ok(ComponentStats {
        per_component,
        pairs,
    })
}

/// Aggregate terms of one observable entering the bound formulas.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TermSet {
    /// Σ|αᵢ|²·Δ²ᵢ
    pub weighted_variance: f64,
    /// Σ|αᵢ|²·⟨A⟩ᵢ²
    pub weighted_mean_sq: f64,
    /// Σ|αᵢ|²·⟨A⟩ᵢ
    pub weighted_mean: f64,
    /// Σ_{i<j} 2|αᵢαⱼ|·√|⟨A⟩ᵢ⟨A⟩ⱼ|, capping the first-moment cross terms
    pub cross_mean_bound: f64,
    /// Σ_{i<j} 2|αᵢαⱼ|·√(⟨A²⟩ᵢ⟨A²⟩ⱼ), capping the second-moment cross terms
    pub cross_second_bound: f64,
    /// Correction entering the lower bound
    pub correction_plus: f64,
    /// Correction entering the upper bound
    pub correction_minus: f64,
}

impl TermSet {
    fn compute(
        stats: &ComponentStats,
        weights: &[f64],
        pair_weights: &[f64],
        norm_sq: f64,
        variant: Variant,
    ) -> Self {
        let mut weighted_variance = 0.0;
        let mut weighted_mean_sq = 0.0;
        let mut weighted_mean = 0.0;
        for (w, m) in weights.iter().zip(&stats.per_component) {
            weighted_variance += w * m.variance;
            weighted_mean_sq += w * m.mean * m.mean;
            weighted_mean += w * m.mean;
        }
        let mut cross_mean_bound = 0.0;
        let mut cross_second_bound = 0.0;
        for (pw, pair) in pair_weights.iter().zip(&stats.pairs) {
            let mi = stats.per_component[pair.i].mean;
            let mj = stats.per_component[pair.j].mean;
            let si = stats.per_component[pair.i].second_moment;
            let sj = stats.per_component[pair.j].second_moment;
            cross_mean_bound += 2.0 * pw * (mi * mj).abs().sqrt();
            cross_second_bound += 2.0 * pw * (si * sj).sqrt();
        }
        // Both variants share the quadratic mean term; they differ in the
        // trailing term: +Σ|αᵢ|²⟨A⟩ᵢ as printed, −Σ|αᵢ|²⟨A⟩ᵢ² as the
        // moment identity ⟨A²⟩ᵢ = Δ²ᵢ + ⟨A⟩ᵢ² requires.
        let tail = match variant {
            Variant::Printed => weighted_mean,
            Variant::Corrected => -weighted_mean_sq,
        };
        let abs_mean = weighted_mean.abs();
        let correction_plus = (abs_mean + cross_mean_bound).powi(2) / norm_sq + tail;
        let correction_minus = (abs_mean - cross_mean_bound).powi(2) / norm_sq + tail;
        TermSet {
            weighted_variance,
            weighted_mean_sq,
            weighted_mean,
            cross_mean_bound,
            cross_second_bound,
            correction_plus,
            correction_minus,
        }
    }

    fn lower_raw(&self) -> f64 {
        self.weighted_variance - self.correction_plus - self.cross_second_bound
    }

    fn upper(&self) -> f64 {
        self.weighted_variance - self.correction_minus + self.cross_second_bound
    }
}

/// Everything a bound evaluation produced: the aggregate terms, the raw
/// and clamped lower bound, the upper bound, the exact scaled variance and
/// the satisfied flags at the configured slack.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub variant: Variant,
    /// ‖ψ‖² of the assembled superposition
    pub norm_sq: f64,
    pub terms: TermSet,
    /// Lower bound before clamping at zero
    pub lower_raw: f64,
    /// max(0, lower_raw)
    pub lower: f64,
    pub upper: f64,
    /// ‖ψ‖²·Δ²_ψ̃A, the bracketed quantity
    pub exact: f64,
    pub lower_satisfied: bool,
    pub upper_satisfied: bool,
    /// exact − lower
    pub lower_gap: f64,
    /// upper − exact
    pub upper_gap: f64,
}

fn weights_of(spec: &SuperpositionSpec) -> (Vec<f64>, Vec<f64>) {
    let weights: Vec<f64> = spec.coefficients().iter().map(|a| a.norm_sqr()).collect();
    let n = spec.len();
    let mut pair_weights = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pair_weights.push(
                spec.coefficients()[i].norm() * spec.coefficients()[j].norm(),
            );
        }
    }
    (weights, pair_weights)
}

fn report_from_terms(
    variant: Variant,
    norm_sq: f64,
    terms: TermSet,
    exact: f64,
) -> BoundsReport {
    let lower_raw = terms.lower_raw();
    let lower = lower_raw.max(0.0);
    let upper = terms.upper();
    BoundsReport {
        variant,
        norm_sq,
        terms,
        lower_raw,
        lower,
        upper,
        exact,
        lower_satisfied: lower <= exact + TOL.bound_satisfaction,
        upper_satisfied: exact <= upper + TOL.bound_satisfaction,
        lower_gap: exact - lower,
        upper_gap: upper - exact,
    }
}

/// Bounds on ‖ψ‖²·Δ²_ψ̃A from per-component statistics, with the exact
/// value evaluated directly on the assembled state.
pub fn variance_bounds(
    spec: &SuperpositionSpec,
    a: &HermitianOperator,
    variant: Variant,
) -> Result<BoundsReport> {
    let assembled = assemble(spec)?;
    let stats = component_stats(spec, a)?;
    let (weights, pair_weights) = weights_of(spec);
    let terms = TermSet::compute(&stats, &weights, &pair_weights, assembled.norm_sq, variant);
    let applied = apply(a, assembled.normalized.amplitudes())?;
    let exact =
        assembled.norm_sq * moments_of_applied(assembled.normalized.amplitudes(), &applied)?.variance;
    Ok(report_from_terms(variant, assembled.norm_sq, terms, exact))
}

/// Residual of the exact moment expansion
/// ‖ψ‖²Δ²_ψ̃A = S + T + Σ_{i≠j}ᾱᵢαⱼ⟨A²⟩ᵢⱼ − (M + Σ_{i≠j}ᾱᵢαⱼ⟨A⟩ᵢⱼ)²/‖ψ‖²,
/// where S, T, M are the weighted variance, squared-mean and mean sums.
/// The identity is algebraically exact, so the residual is the module's
/// primary internal oracle: anything beyond rounding is an implementation
/// bug.
pub fn expansion_identity(spec: &SuperpositionSpec, a: &HermitianOperator) -> Result<f64> {
    let assembled = assemble(spec)?;
    let stats = component_stats(spec, a)?;
    let alpha = spec.coefficients();
    let (weights, _) = weights_of(spec);

    let mut s = 0.0;
    let mut t = 0.0;
    let mut m = 0.0;
    for (w, cm) in weights.iter().zip(&stats.per_component) {
        s += w * cm.variance;
        t += w * cm.mean * cm.mean;
        m += w * cm.mean;
    }
    // Σ_{i≠j} ᾱᵢαⱼXᵢⱼ = 2·Re Σ_{i<j} ᾱᵢαⱼXᵢⱼ for Hermitian X.
    let mut cross_second = 0.0;
    let mut cross_first = 0.0;
    for pair in &stats.pairs {
        let w = alpha[pair.i].conj() * alpha[pair.j];
        cross_second += 2.0 * (w * pair.second_cross).re;
        cross_first += 2.0 * (w * pair.first_cross).re;
    }
    let n = assembled.norm_sq;
    let decomposed = s + t + cross_second - (m + cross_first).powi(2) / n;

    let applied = apply(a, assembled.normalized.amplitudes())?;
    let exact = n * moments_of_applied(assembled.normalized.amplitudes(), &applied)?.variance;
    Ok((decomposed - exact).abs())
}

/// Same bracket read as a coherence statement: on pure states the variance
/// equals the skew information of the projector, so the bounds transfer
/// verbatim. The exact value is evaluated through the skew-information
/// route (matrix square root and commutator), making this an independent
/// cross-check of `variance_bounds`.
pub fn coherence_bounds(
    spec: &SuperpositionSpec,
    a: &HermitianOperator,
    variant: Variant,
) -> Result<BoundsReport> {
    let assembled = assemble(spec)?;
    let stats = component_stats(spec, a)?;
    let (weights, pair_weights) = weights_of(spec);
    let terms = TermSet::compute(&stats, &weights, &pair_weights, assembled.norm_sq, variant);
    let projector = DensityMatrix::pure(&assembled.normalized);
    let exact = assembled.norm_sq * skew_information(&projector, a)?;
    Ok(report_from_terms(variant, assembled.norm_sq, terms, exact))
}

/// Bounds report for the incompatibility of two observables.
#[derive(Debug, Clone, Serialize)]
pub struct IncompatBoundsReport {
    pub variant: Variant,
    pub norm_sq: f64,
    pub a_terms: TermSet,
    pub b_terms: TermSet,
    /// Σ|αᵢ|²·(Δ²ᵢA + Δ²ᵢB)
    pub weighted_incompat: f64,
    /// Joint cross bound Σ 2|αᵢαⱼ|√(⟨A²⟩ᵢ+⟨B²⟩ᵢ)·√(⟨A²⟩ⱼ+⟨B²⟩ⱼ);
    /// never smaller than the two per-observable cross bounds combined
    pub cross_joint_bound: f64,
    pub lower_raw: f64,
    pub lower: f64,
    pub upper: f64,
    /// ‖ψ‖²·(Δ²_ψ̃A + Δ²_ψ̃B)
    pub exact: f64,
    pub lower_satisfied: bool,
    pub upper_satisfied: bool,
    pub lower_gap: f64,
    pub upper_gap: f64,
}

/// Distributes the incompatibility of two observables over superposition
/// components. Per-observable terms follow the selected variant; the two
/// separate cross bounds merge into the joint bound, which dominates
/// their sum by Cauchy–Schwarz (asserted).
pub fn incompatibility_bounds(
    spec: &SuperpositionSpec,
    a: &HermitianOperator,
    b: &HermitianOperator,
    variant: Variant,
) -> Result<IncompatBoundsReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    let assembled = assemble(spec)?;
    let n = assembled.norm_sq;
    let stats_a = component_stats(spec, a)?;
    let stats_b = component_stats(spec, b)?;
    let (weights, pair_weights) = weights_of(spec);
    let a_terms = TermSet::compute(&stats_a, &weights, &pair_weights, n, variant);
    let b_terms = TermSet::compute(&stats_b, &weights, &pair_weights, n, variant);

    let mut cross_joint_bound = 0.0;
    for (pw, (pa, pb)) in pair_weights
        .iter()
        .zip(stats_a.pairs.iter().zip(&stats_b.pairs))
    {
        let si = stats_a.per_component[pa.i].second_moment
            + stats_b.per_component[pb.i].second_moment;
        let sj = stats_a.per_component[pa.j].second_moment
            + stats_b.per_component[pb.j].second_moment;
        cross_joint_bound += 2.0 * pw * (si * sj).sqrt();
    }
    let separate = a_terms.cross_second_bound + b_terms.cross_second_bound;
    assert!(
        cross_joint_bound >= separate - TOL.cross_term_slack * (1.0 + separate.abs()),
        "joint cross bound {cross_joint_bound} fell below the separate bounds {separate}"
    );

    let weighted_incompat = a_terms.weighted_variance + b_terms.weighted_variance;
    let lower_raw = weighted_incompat
        - (a_terms.correction_plus + b_terms.correction_plus)
        - cross_joint_bound;
    let upper = weighted_incompat - (a_terms.correction_minus + b_terms.correction_minus)
        + cross_joint_bound;
    let lower = lower_raw.max(0.0);

    let applied_a = apply(a, assembled.normalized.amplitudes())?;
    let applied_b = apply(b, assembled.normalized.amplitudes())?;
    let exact = n
        * (moments_of_applied(assembled.normalized.amplitudes(), &applied_a)?.variance
            + moments_of_applied(assembled.normalized.amplitudes(), &applied_b)?.variance);

    Ok(IncompatBoundsReport {
        variant,
        norm_sq: n,
        a_terms,
        b_terms,
        weighted_incompat,
        cross_joint_bound,
        lower_raw,
        lower,
        upper,
        exact,
        lower_satisfied: lower <= exact + TOL.bound_satisfaction,
        upper_satisfied: exact <= upper + TOL.bound_satisfaction,
        lower_gap: exact - lower,
        upper_gap: upper - exact,
    })
}
