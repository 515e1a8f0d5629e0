//! Point statistics of observables on states: expectation values,
//! transition moments, variance and standard deviation, skew information
//! and the incompatibility of two observables.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    apply, inner, norm_sq, psd_sqrt, DensityMatrix, HermitianOperator, StateVector,
};
use crate::tolerances::Tolerances;

const TOL: Tolerances = Tolerances::DEFAULT;

/// Mean, second moment, variance and standard deviation of an observable
/// on a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSet {
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub sd: f64,
}

/// Expectation value ⟨ψ|A|ψ⟩, asserted real.
pub fn expectation(psi: &StateVector, a: &HermitianOperator) -> Result<f64> {
    let applied = apply(a, psi.amplitudes())?;
    let value = inner(psi.amplitudes(), &applied)?;
    assert_real(value, norm_sq(&applied));
    Ok(value.re)
}

/// Transition moment ⟨ψ_i|X|ψ_j⟩ between two (possibly different) states.
pub fn transition_moment(
    psi_i: &StateVector,
    x: &HermitianOperator,
    psi_j: &StateVector,
) -> Result<Complex64> {
    let applied = apply(x, psi_j.amplitudes())?;
    inner(psi_i.amplitudes(), &applied)
}

/// Full moment set. The second moment is taken as ‖A·ψ‖², which avoids
/// forming A² and keeps the variance nonnegative up to rounding.
pub fn moments(psi: &StateVector, a: &HermitianOperator) -> Result<MomentSet> {
    let applied = apply(a, psi.amplitudes())?;
    moments_of_applied(psi.amplitudes(), &applied)
}

/// Moment set from a state and its pre-applied image A·ψ.
pub(crate) fn moments_of_applied(psi: &[Complex64], applied: &[Complex64]) -> Result<MomentSet> {
    let mean_c = inner(psi, applied)?;
    let second_moment = norm_sq(applied);
    assert_real(mean_c, second_moment);
    let mean = mean_c.re;
    let variance = clamp_variance(second_moment - mean * mean, second_moment);
    Ok(MomentSet {
        mean,
        second_moment,
        variance,
        sd: variance.sqrt(),
    })
}

fn assert_real(value: Complex64, scale: f64) {
    assert!(
        value.im.abs() <= TOL.imaginary_residue * (1.0 + scale),
        "imaginary residue {} on a real quantity (scale {scale})",
        value.im
    );
}

/// Negative variances within the clamp window are rounding artifacts.
fn clamp_variance(variance: f64, second_moment: f64) -> f64 {
    if variance >= 0.0 {
        return variance;
    }
    let window = TOL.variance_clamp * (1.0 + second_moment);
    assert!(
        variance >= -window,
        "variance {variance} below the rounding window -{window}"
    );
    0.0
}

/// Skew information I(ϱ,K) = -(1/2)·Tr [ϱ^{1/2}, K]².
///
/// The commutator C is anti-Hermitian, so the trace of C² is real and
/// nonpositive; tiny positive residues clamp to zero. For degenerate K
/// this only detects coherence in the non-degenerate part of the
/// spectrum; no subspace decomposition is attempted here.
pub fn skew_information(rho: &DensityMatrix, k: &HermitianOperator) -> Result<f64> {
    if rho.dim() != k.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: k.dim(),
        });
    }
    let root = psd_sqrt(rho)?;
    let c = root.mul(k.matrix())?.sub(&k.matrix().mul(&root)?)?;
    // Tr(C·C) without forming the product.
    let d = c.dim();
    let mut trace_sq = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            trace_sq += c.get(i, j) * c.get(j, i);
        }
    }
    let scale = norm_sq(c.as_slice());
    assert_real(trace_sq, scale);
    let value = -0.5 * trace_sq.re;
    Ok(clamp_variance(value, scale))
}

/// Variance of an observable on a pure state; coincides with the skew
/// information of the state's projector.
pub fn pure_state_coherence(psi: &StateVector, k: &HermitianOperator) -> Result<f64> {
    Ok(moments(psi, k)?.variance)
}

/// Incompatibility of two observables on a state: the sum of their
/// variances. Zero means both can be simultaneously approximately
/// measured there.
pub fn incompatibility(
    psi: &StateVector,
    a: &HermitianOperator,
    b: &HermitianOperator,
) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(moments(psi, a)?.variance + moments(psi, b)?.variance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset;
    use crate::ensembles::{derive_seed, random_hermitian, random_state, OperatorScheme, SplitMix64};
    use crate::linalg::{eigh, Matrix};

    fn sigma_x() -> HermitianOperator {
        HermitianOperator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn sigma_y() -> HermitianOperator {
        let raw = Matrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        HermitianOperator::new(raw).unwrap()
    }

    fn sigma_z() -> HermitianOperator {
        HermitianOperator::diagonal(&[1.0, -1.0])
    }

    fn plus_state() -> StateVector {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::from_real(&[w, w]).unwrap()
    }

    #[test]
    fn expectation_on_basis_state_reads_the_diagonal() {
        let a = dataset::observable();
        let e1 = StateVector::basis(4, 0);
        let value = expectation(&e1, &a).unwrap();
        assert!((value - (-1.3343)).abs() < 1e-15);
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let id = HermitianOperator::diagonal(&[1.0; 5]);
        let mut rng = SplitMix64::new(derive_seed(21, 0));
        for _ in 0..20 {
            let psi = random_state(5, &mut rng);
            assert!((expectation(&psi, &id).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_of_sigma_z_on_plus_is_zero() {
        assert!(expectation(&plus_state(), &sigma_z()).unwrap().abs() < 1e-15);
    }

    #[test]
    fn transition_moment_on_equal_states_is_the_expectation() {
        let a = dataset::observable();
        let psi = dataset::state_one();
        let t = transition_moment(&psi, &a, &psi).unwrap();
        let e = expectation(&psi, &a).unwrap();
        assert!((t.re - e).abs() < 1e-14);
        assert!(t.im.abs() < 1e-14);
    }

    #[test]
    fn transition_moment_between_basis_states() {
        let e1 = StateVector::basis(2, 0);
        let e2 = StateVector::basis(2, 1);
        let t = transition_moment(&e1, &sigma_x(), &e2).unwrap();
        assert_eq!(t, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn transition_moment_conjugate_symmetry() {
        let a = dataset::observable();
        let p1 = dataset::state_one();
        let p2 = dataset::state_two();
        let t12 = transition_moment(&p1, &a, &p2).unwrap();
        let t21 = transition_moment(&p2, &a, &p1).unwrap();
        assert!((t12 - t21.conj()).norm() < 1e-14);
        // All inputs real, so the value is real; frozen from direct
        // matrix-vector arithmetic on the stored digits.
        assert!(t12.im.abs() < 1e-14);
        assert!((t12.re - 0.08796898452197895).abs() < 1e-12);
    }

    #[test]
    fn moments_of_sigma_z_on_plus() {
        let m = moments(&plus_state(), &sigma_z()).unwrap();
        assert!(m.mean.abs() < 1e-15);
        assert!((m.variance - 1.0).abs() < 1e-15);
        assert!((m.sd - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigenstate_has_zero_variance() {
        let mut rng = SplitMix64::new(derive_seed(22, 3));
        let h = random_hermitian(6, &mut rng, OperatorScheme::Gue);
        let eig = eigh(&h).unwrap();
        let psi = StateVector::new(eig.eigenvector(2)).unwrap();
        let m = moments(&psi, &h).unwrap();
        assert!(m.variance < 1e-12);
    }

    #[test]
    fn moments_on_reference_state() {
        // Direct arithmetic oracle: mean and second moment computed with
        // plain loops over the renormalized stored digits.
        let a = dataset::observable();
        let psi = dataset::state_one();
        let amps = psi.amplitudes();
        let mut applied = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            for j in 0..4 {
                applied[i] += a.get(i, j) * amps[j];
            }
        }
        let mean: f64 = (0..4).map(|i| (amps[i].conj() * applied[i]).re).sum();
        let second: f64 = applied.iter().map(|z| z.norm_sqr()).sum();
        let expected_sd = (second - mean * mean).sqrt();

        let m = moments(&psi, &a).unwrap();
        assert!((m.mean - mean).abs() < 1e-14);
        assert!((m.sd - expected_sd).abs() < 1e-14);
        // Frozen endpoint of the sweep's exact curve at x = 1.
        assert!((m.sd - 1.757410076485343).abs() < 1e-12);
    }

    #[test]
    fn skew_information_of_maximally_mixed_is_zero() {
        let mut rng = SplitMix64::new(derive_seed(23, 1));
        for d in [2usize, 3, 5] {
            let rho = DensityMatrix::maximally_mixed(d);
            let k = random_hermitian(d, &mut rng, OperatorScheme::Gue);
            assert!(skew_information(&rho, &k).unwrap() < 1e-12);
        }
    }

    #[test]
    fn skew_information_of_pure_plus_under_sigma_z() {
        let rho = DensityMatrix::pure(&plus_state());
        let v = skew_information(&rho, &sigma_z()).unwrap();
        assert!((v - 1.0).abs() < 1e-10);
    }

    #[test]
    fn skew_information_two_level_diagonal() {
        // Analytic 2x2 commutator: I(diag(3/4,1/4), sigma_x) = 1 - sqrt(3)/2.
        let rho = DensityMatrix::new(Matrix::diagonal(&[0.75, 0.25])).unwrap();
        let v = skew_information(&rho, &sigma_x()).unwrap();
        let expected = 1.0 - 3.0f64.sqrt() / 2.0;
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn pure_state_coherence_matches_skew_information() {
        let t = Tolerances::DEFAULT;
        for trial in 0..1000u64 {
            let mut rng = SplitMix64::new(derive_seed(0xC01E, trial));
            let d = 2 + (rng.next_u64() % 7) as usize; // d <= 8
            let psi = random_state(d, &mut rng);
            let k = random_hermitian(d, &mut rng, OperatorScheme::Gue);
            let variance = pure_state_coherence(&psi, &k).unwrap();
            let skew = skew_information(&DensityMatrix::pure(&psi), &k).unwrap();
            assert!(
                (variance - skew).abs() <= t.bound_satisfaction,
                "trial {trial}: variance {variance} vs skew {skew}"
            );
        }
    }

    #[test]
    fn eigenvector_has_zero_coherence_both_ways() {
        let mut rng = SplitMix64::new(derive_seed(24, 9));
        let k = random_hermitian(5, &mut rng, OperatorScheme::Gue);
        let eig = eigh(&k).unwrap();
        let psi = StateVector::new(eig.eigenvector(0)).unwrap();
        assert!(pure_state_coherence(&psi, &k).unwrap() < 1e-12);
        assert!(skew_information(&DensityMatrix::pure(&psi), &k).unwrap() < 1e-10);
    }

    #[test]
    fn skew_information_bounded_by_mixed_state_variance() {
        // 0 <= I(rho,K) <= Tr(rho K^2) - (Tr rho K)^2 on random mixed states.
        for trial in 0..300u64 {
            let mut rng = SplitMix64::new(derive_seed(0x5EEDBB, trial));
            let d = 2 + (rng.next_u64() % 7) as usize;
            let terms = 2 + (rng.next_u64() % 3) as usize;
            let mut weights: Vec<f64> = (0..terms).map(|_| rng.next_f64() + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let mut mat = Matrix::zeros(d);
            for &w in &weights {
                let psi = random_state(d, &mut rng);
                let proj = DensityMatrix::pure(&psi);
                for i in 0..d {
                    for j in 0..d {
                        let v = mat.get(i, j) + w * proj.matrix().get(i, j);
                        mat.set(i, j, v);
                    }
                }
            }
            let rho = DensityMatrix::new(mat).unwrap();
            let k = random_hermitian(d, &mut rng, OperatorScheme::Gue);
            let skew = skew_information(&rho, &k).unwrap();
            // Mixed-state variance via traces; used only as a test bound.
            let k2 = k.matrix().mul(k.matrix()).unwrap();
            let mean = rho.matrix().mul(k.matrix()).unwrap().trace().re;
            let second = rho.matrix().mul(&k2).unwrap().trace().re;
            let variance = second - mean * mean;
            assert!(skew >= 0.0);
            assert!(skew <= variance + 1e-9, "skew {skew} vs variance {variance}");
        }
    }

    #[test]
    fn incompatibility_of_pauli_pair_on_basis_state() {
        let e1 = StateVector::basis(2, 0);
        let u = incompatibility(&e1, &sigma_x(), &sigma_y()).unwrap();
        assert!((u - 2.0).abs() < 1e-14);
    }

    #[test]
    fn common_eigenvector_of_commuting_pair_gives_zero() {
        let a = HermitianOperator::diagonal(&[1.0, 2.0, 3.0]);
        let b = HermitianOperator::diagonal(&[-1.0, 0.5, 2.0]);
        let e2 = StateVector::basis(3, 1);
        assert!(incompatibility(&e2, &a, &b).unwrap() < 1e-14);
    }

    #[test]
    fn incompatibility_is_the_sum_of_variances() {
        let a = dataset::observable();
        let b = HermitianOperator::diagonal(&[1.0, -1.0, -1.0, 1.0]);
        let psi = dataset::state_one();
        let u = incompatibility(&psi, &a, &b).unwrap();
        let expected = moments(&psi, &a).unwrap().variance + moments(&psi, &b).unwrap().variance;
        assert!((u - expected).abs() < 1e-14);
    }

    #[test]
    fn incompatibility_dimension_mismatch() {
        let a = sigma_x();
        let b = HermitianOperator::diagonal(&[1.0, 2.0, 3.0]);
        let e1 = StateVector::basis(2, 0);
        assert!(matches!(
            incompatibility(&e1, &a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn shift_invariance_of_variance() {
        // variance(psi, A + cI) = variance(psi, A); bound terms elsewhere
        // are deliberately not shift invariant.
        for trial in 0..200u64 {
            let mut rng = SplitMix64::new(derive_seed(0x5417F, trial));
            let d = 2 + (rng.next_u64() % 7) as usize;
            let psi = random_state(d, &mut rng);
            let a = random_hermitian(d, &mut rng, OperatorScheme::Gue);
            let c = 20.0 * rng.next_f64() - 10.0;
            let mut shifted_raw = a.matrix().clone();
            for k in 0..d {
                let v = shifted_raw.get(k, k) + Complex64::new(c, 0.0);
                shifted_raw.set(k, k, v);
            }
            let shifted = HermitianOperator::new(shifted_raw).unwrap();
            let v0 = moments(&psi, &a).unwrap().variance;
            let v1 = moments(&psi, &shifted).unwrap().variance;
            assert!((v0 - v1).abs() <= 1e-9 * (1.0 + v0.abs()));
        }
    }

    #[test]
    fn global_phase_invariance_of_moments() {
        let mut rng = SplitMix64::new(derive_seed(0x9A5E, 0));
        let d = 4;
        let psi = random_state(d, &mut rng);
        let a = random_hermitian(d, &mut rng, OperatorScheme::Gue);
        let theta = 1.234;
        let phase = Complex64::from_polar(1.0, theta);
        let rotated =
            StateVector::new(psi.amplitudes().iter().map(|z| z * phase).collect()).unwrap();
        let m0 = moments(&psi, &a).unwrap();
        let m1 = moments(&rotated, &a).unwrap();
        assert!((m0.mean - m1.mean).abs() < 1e-13);
        assert!((m0.variance - m1.variance).abs() < 1e-13);
    }

    #[test]
    fn zero_variance_iff_eigenstate() {
        let mut rng = SplitMix64::new(derive_seed(0xE16E, 4));
        let d = 5;
        let h = random_hermitian(d, &mut rng, OperatorScheme::Gue);
        let eig = eigh(&h).unwrap();
        let eigenstate = StateVector::new(eig.eigenvector(1)).unwrap();
        let m = moments(&eigenstate, &h).unwrap();
        let applied = apply(&h, eigenstate.amplitudes()).unwrap();
        let residual: f64 = applied
            .iter()
            .zip(eigenstate.amplitudes())
            .map(|(hv, v)| (hv - m.mean * v).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(m.variance < 1e-12 && residual <= 1e-8);

        // Conversely a generic state has spread and a large residual.
        let generic = random_state(d, &mut rng);
        let mg = moments(&generic, &h).unwrap();
        let applied = apply(&h, generic.amplitudes()).unwrap();
        let residual: f64 = applied
            .iter()
            .zip(generic.amplitudes())
            .map(|(hv, v)| (hv - mg.mean * v).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(mg.variance > 1e-8 && residual > 1e-8);
        assert!((residual * residual - mg.variance).abs() < 1e-9 * (1.0 + mg.variance));
    }
}
