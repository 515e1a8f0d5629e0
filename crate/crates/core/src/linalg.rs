//! Dense complex vectors and matrices, Hermiticity validation, Hermitian
//! eigendecomposition and the positive-semidefinite matrix square root.
//!
//! Everything downstream builds on this module. Matrices are small and
//! dense (row-major `Vec<Complex64>`), so robustness is preferred over
//! asymptotic speed: the eigensolver is a cyclic Jacobi iteration for
//! Hermitian matrices with a hard sweep cap.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

const TOL: Tolerances = Tolerances::DEFAULT;

/// Hard cap on Jacobi sweeps; convergence is quadratic, so hitting this
/// means the input was not a valid Hermitian matrix.
const MAX_JACOBI_SWEEPS: usize = 100;

/// Squared l2 norm of a complex vector.
pub fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Inner product ⟨u|v⟩, conjugate-linear in the first argument.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a.conj() * b).sum())
}

fn all_finite(v: &[Complex64]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m.set(k, k, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Build from row vectors; every row must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare);
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (k, &x) in entries.iter().enumerate() {
            m.set(k, k, Complex64::new(x, 0.0));
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            out[i] = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let aik = self.get(i, k);
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Matrix {
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix { dim: self.dim, data })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest |M_jk - conj(M_kj)| over all entries.
    pub fn max_asymmetry(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                let dev = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }
}

/// Pure state: complex amplitude vector with unit l2 norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Accepts a vector already normalized to within the norm tolerance.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        if !all_finite(&amplitudes) {
            return Err(Error::NonFinite);
        }
        let deviation = (norm_sq(&amplitudes).sqrt() - 1.0).abs();
        if deviation > TOL.state_norm {
            return Err(Error::NonNormalizedState { deviation });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        if !all_finite(&amplitudes) {
            return Err(Error::NonFinite);
        }
        let n2 = norm_sq(&amplitudes);
        if n2 <= TOL.degenerate_norm_sq {
            return Err(Error::DegenerateSuperposition { norm_sq: n2 });
        }
        let inv = 1.0 / n2.sqrt();
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|z| z * inv).collect(),
        })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state e_k.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// Self-adjoint observable. Stored entries are the symmetrization
/// (raw + raw†)/2 of the validated input.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    mat: Matrix,
}

/// Checks Hermiticity of `raw` against `tol` (relative to the largest
/// entry) and returns the symmetrized operator.
pub fn validate_hermitian(raw: Matrix, tol: f64) -> Result<HermitianOperator> {
    if !all_finite(raw.as_slice()) {
        return Err(Error::NonFinite);
    }
    let scale = raw.max_abs().max(1.0);
    let max_asymmetry = raw.max_asymmetry();
    let tolerance = tol * scale;
    if max_asymmetry > tolerance {
        return Err(Error::NotHermitian {
            max_asymmetry,
            tolerance,
        });
    }
    let d = raw.dim();
    let mut mat = Matrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let v = (raw.get(i, j) + raw.get(j, i).conj()) * 0.5;
            mat.set(i, j, v);
        }
    }
    Ok(HermitianOperator { mat })
}

impl HermitianOperator {
    /// Validation with the default tolerance.
    pub fn new(raw: Matrix) -> Result<Self> {
        validate_hermitian(raw, TOL.hermiticity)
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_real_rows(rows)?)
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        // Real diagonal matrices are exactly Hermitian.
        HermitianOperator {
            mat: Matrix::diagonal(entries),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.mat.get(i, j)
    }
}

/// Applies the operator to a vector: H·v.
pub fn apply(h: &HermitianOperator, v: &[Complex64]) -> Result<Vec<Complex64>> {
    h.mat.apply(v)
}

/// Mixed state: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Matrix,
}

impl DensityMatrix {
    /// Full validation: Hermiticity, trace one, eigenvalues above the
    /// PSD floor (tiny negatives from numerical construction are allowed).
    pub fn new(raw: Matrix) -> Result<Self> {
        let herm = validate_hermitian(raw, TOL.hermiticity)?;
        let trace_dev = (herm.mat.trace().re - 1.0).abs();
        if trace_dev > TOL.density_trace {
            return Err(Error::TraceDeviation {
                deviation: trace_dev,
            });
        }
        let eig = eigh(&herm)?;
        let min = eig.eigenvalues[0];
        if min < -TOL.psd_floor {
            return Err(Error::NegativeEigenvalue {
                value: min,
                floor: TOL.psd_floor,
            });
        }
        Ok(Self { mat: herm.mat })
    }

    /// Projector |ψ⟩⟨ψ| onto a pure state; PSD and unit trace by
    /// construction.
    pub fn pure(psi: &StateVector) -> Self {
        let d = psi.dim();
        let a = psi.amplitudes();
        let mut mat = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                mat.set(i, j, a[i] * a[j].conj());
            }
        }
        Self { mat }
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mut mat = Matrix::zeros(dim);
        let w = Complex64::new(1.0 / dim as f64, 0.0);
        for k in 0..dim {
            mat.set(k, k, w);
        }
        Self { mat }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.mat
    }
}

/// Eigenvalues in ascending order with an orthonormal set of column
/// eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Column k is the eigenvector for eigenvalues[k].
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let d = self.eigenvectors.dim();
        (0..d).map(|i| self.eigenvectors.get(i, k)).collect()
    }
}

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair: the (p,q) entry is phased
/// to a real value and annihilated with a plane rotation whose angle comes
/// from the stable tangent formula. Off-diagonal mass decreases
/// monotonically, so for valid input the sweep cap is never reached.
pub fn eigh(h: &HermitianOperator) -> Result<EigenDecomposition> {
    let d = h.dim();
    let mut a = h.mat.clone();
    let mut u = Matrix::identity(d);

    if d == 1 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![a.get(0, 0).re],
            eigenvectors: u,
        });
    }

    let frobenius: f64 = norm_sq(a.as_slice()).sqrt();
    let stop = 1e-14 * (1.0 + frobenius);

    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let mut off_max = 0.0f64;
        for p in 0..d {
            for q in (p + 1)..d {
                off_max = off_max.max(a.get(p, q).norm());
            }
        }
        if off_max <= stop {
            converged = true;
            break;
        }

        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let b = apq.norm();
                if b <= stop * 1e-2 {
                    continue;
                }
                let phase = apq / b; // e^{i phi}
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let e_ip = phase;
                let e_mip = phase.conj();

                // A <- V' A V with V the identity except
                // V[p][p]=c, V[p][q]=s, V[q][p]=-s e^{-i phi}, V[q][q]=c e^{-i phi}.
                for k in 0..d {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * e_mip * akq);
                    a.set(k, q, s * akp + c * e_mip * akq);
                }
                for k in 0..d {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * e_ip * aqk);
                    a.set(q, k, s * apk + c * e_ip * aqk);
                }
                // Keep the transformed pivot exactly real/zero.
                let app_new = a.get(p, p);
                let aqq_new = a.get(q, q);
                a.set(p, p, Complex64::new(app_new.re, 0.0));
                a.set(q, q, Complex64::new(aqq_new.re, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                for k in 0..d {
                    let ukp = u.get(k, p);
                    let ukq = u.get(k, q);
                    u.set(k, p, c * ukp - s * e_mip * ukq);
                    u.set(k, q, s * ukp + c * e_mip * ukq);
                }
            }
        }
    }

    if !converged {
        return Err(Error::ConvergenceFailure {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    // Sort ascending, permuting eigenvector columns along.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .re
            .partial_cmp(&a.get(j, j).re)
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a.get(k, k).re).collect();
    let mut eigenvectors = Matrix::zeros(d);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..d {
            eigenvectors.set(row, col, u.get(row, k));
        }
    }

    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Positive-semidefinite square root V·diag(√max(λ,0))·V†.
///
/// Eigenvalues below the floor are rejected. Eigenvalues within the
/// eigensolver's resolution of zero (d·ε·λ_max, covering the allowed
/// tiny negatives) are clamped to exactly zero before the root: the
/// square root has infinite slope at zero, so √ of an eigenvalue that is
/// pure decomposition noise would otherwise inject ~√ε ≈ 1e-8 of
/// spurious mass into the result.
pub fn psd_sqrt(rho: &DensityMatrix) -> Result<Matrix> {
    let herm = HermitianOperator {
        mat: rho.mat.clone(),
    };
    let eig = eigh(&herm)?;
    let d = rho.dim();
    let lambda_max = eig.eigenvalues[d - 1].max(0.0);
    let zero_resolution = d as f64 * f64::EPSILON * lambda_max;
    let mut roots = Vec::with_capacity(d);
    for &lambda in &eig.eigenvalues {
        if lambda < -TOL.psd_floor {
            return Err(Error::NegativeEigenvalue {
                value: lambda,
                floor: TOL.psd_floor,
            });
        }
        let clamped = if lambda <= zero_resolution { 0.0 } else { lambda };
        roots.push(clamped.sqrt());
    }
    let mut out = Matrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += eig.eigenvectors.get(i, k)
                    * roots[k]
                    * eig.eigenvectors.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_x() -> HermitianOperator {
        HermitianOperator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap()
    }

    fn sigma_z() -> HermitianOperator {
        HermitianOperator::diagonal(&[1.0, -1.0])
    }

    #[test]
    fn sigma_x_accepted_unchanged() {
        let h = sigma_x();
        assert_eq!(h.get(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(h.get(1, 0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn anti_hermitian_rejected() {
        // [[0, i], [i, 0]]: conjugate-transpose mismatch of magnitude 2.
        let raw = Matrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        match validate_hermitian(raw, 1e-12) {
            Err(Error::NotHermitian { max_asymmetry, .. }) => {
                assert!((max_asymmetry - 2.0).abs() < 1e-15)
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn non_square_rejected() {
        let rows = vec![vec![Complex64::new(1.0, 0.0); 3], vec![Complex64::new(0.0, 0.0); 3]];
        assert_eq!(Matrix::from_rows(&rows).unwrap_err(), Error::NotSquare);
    }

    #[test]
    fn symmetrization_is_idempotent() {
        let raw = Matrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.25)],
            vec![Complex64::new(0.5, -0.25 + 1e-13), Complex64::new(-2.0, 0.0)],
        ])
        .unwrap();
        let once = validate_hermitian(raw, 1e-12).unwrap();
        let twice = validate_hermitian(once.mat.clone(), 1e-12).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(once.get(i, j), twice.get(i, j));
            }
        }
    }

    #[test]
    fn eigh_identity() {
        let h = HermitianOperator::diagonal(&[1.0, 1.0, 1.0]);
        let eig = eigh(&h).unwrap();
        for &l in &eig.eigenvalues {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eigh_sigma_z_sorted() {
        let eig = eigh(&sigma_z()).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 1.0).abs() < 1e-14);
        // Ascending order puts e2 first, e1 second.
        assert!((eig.eigenvector(0)[1].norm() - 1.0).abs() < 1e-12);
        assert!((eig.eigenvector(1)[0].norm() - 1.0).abs() < 1e-12);
    }

    fn check_decomposition(h: &HermitianOperator) {
        let t = Tolerances::DEFAULT;
        let eig = eigh(h).unwrap();
        let d = h.dim();
        for k in 0..d {
            let u = eig.eigenvector(k);
            let hu = apply(h, &u).unwrap();
            let lambda = eig.eigenvalues[k];
            let res: f64 = hu
                .iter()
                .zip(&u)
                .map(|(a, b)| (a - lambda * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(
                res <= t.eigen_residual * (1.0 + lambda.abs()),
                "residual {res} too large for eigenvalue {lambda}"
            );
        }
        // Orthonormality.
        for i in 0..d {
            for j in 0..d {
                let dot = inner(&eig.eigenvector(i), &eig.eigenvector(j)).unwrap();
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((dot - target).norm() <= t.orthonormality);
            }
        }
        // Spectral reconstruction.
        let scale = 1.0
            + eig
                .eigenvalues
                .iter()
                .fold(0.0f64, |m, &l| m.max(l.abs()));
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += eig.eigenvectors.get(i, k)
                        * eig.eigenvalues[k]
                        * eig.eigenvectors.get(j, k).conj();
                }
                assert!((acc - h.get(i, j)).norm() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn eigh_random_spectral_reconstruction() {
        use crate::ensembles::{derive_seed, random_hermitian, OperatorScheme, SplitMix64};
        for trial in 0..1000u64 {
            let mut rng = SplitMix64::new(derive_seed(0x5eed_0001, trial));
            let dim = 2 + (rng.next_u64() % 15) as usize; // d <= 16
            let scheme = if trial % 2 == 0 {
                OperatorScheme::Gue
            } else {
                OperatorScheme::RealSymmetric
            };
            let h = random_hermitian(dim, &mut rng, scheme);
            check_decomposition(&h);
        }
    }

    #[test]
    fn psd_sqrt_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(2);
        let root = psd_sqrt(&rho).unwrap();
        let expected = 1.0 / 2.0f64.sqrt();
        for i in 0..2 {
            for j in 0..2 {
                let target = if i == j { expected } else { 0.0 };
                assert!((root.get(i, j) - target).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn psd_sqrt_projector_is_idempotent() {
        let psi = StateVector::from_real(&[1.0, 0.0]).unwrap();
        let rho = DensityMatrix::pure(&psi);
        let root = psd_sqrt(&rho).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((root.get(i, j) - rho.matrix().get(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn psd_sqrt_diagonal() {
        let rho = DensityMatrix::new(Matrix::diagonal(&[0.75, 0.25])).unwrap();
        let root = psd_sqrt(&rho).unwrap();
        assert!((root.get(0, 0).re - 0.75f64.sqrt()).abs() < 1e-12);
        assert!((root.get(1, 1).re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back_on_random_densities() {
        use crate::ensembles::{derive_seed, random_state, SplitMix64};
        let t = Tolerances::DEFAULT;
        for trial in 0..200u64 {
            let mut rng = SplitMix64::new(derive_seed(0x5eed_0002, trial));
            let dim = 2 + (rng.next_u64() % 15) as usize;
            // Random mixed state: convex mixture of a few pure projectors.
            let terms = 1 + (rng.next_u64() % 4) as usize;
            let mut weights: Vec<f64> = (0..terms).map(|_| rng.next_f64() + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            for w in &mut weights {
                *w /= total;
            }
            let mut mat = Matrix::zeros(dim);
            for &w in &weights {
                let psi = random_state(dim, &mut rng);
                let proj = DensityMatrix::pure(&psi);
                for i in 0..dim {
                    for j in 0..dim {
                        let v = mat.get(i, j) + w * proj.matrix().get(i, j);
                        mat.set(i, j, v);
                    }
                }
            }
            let rho = DensityMatrix::new(mat).unwrap();
            let root = psd_sqrt(&rho).unwrap();
            let squared = root.mul(&root).unwrap();
            let err = squared.sub(rho.matrix()).unwrap().max_abs();
            assert!(err <= t.sqrt_reconstruction, "reconstruction error {err}");
        }
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        let raw = Matrix::diagonal(&[1.5, -0.5]);
        match DensityMatrix::new(raw) {
            Err(Error::NegativeEigenvalue { .. }) => {}
            other => panic!("expected NegativeEigenvalue, got {other:?}"),
        }
    }

    #[test]
    fn inner_of_basis_vectors() {
        let e1 = StateVector::basis(3, 0);
        let e2 = StateVector::basis(3, 1);
        let v = inner(e1.amplitudes(), e2.amplitudes()).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn inner_self_is_norm_squared() {
        let v = vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
        let s = inner(&v, &v).unwrap();
        assert!((s.re - 1.0).abs() < 1e-15);
        assert!(s.im.abs() < 1e-15);
    }

    #[test]
    fn inner_dimension_mismatch() {
        let u = vec![Complex64::new(1.0, 0.0)];
        let v = vec![Complex64::new(1.0, 0.0); 2];
        assert!(matches!(
            inner(&u, &v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn state_rejects_nan() {
        let v = vec![Complex64::new(f64::NAN, 0.0)];
        assert_eq!(StateVector::new(v).unwrap_err(), Error::NonFinite);
    }

    #[test]
    fn state_rejects_norm_deviation() {
        let v = vec![Complex64::new(0.9, 0.0)];
        assert!(matches!(
            StateVector::new(v),
            Err(Error::NonNormalizedState { .. })
        ));
    }
}
