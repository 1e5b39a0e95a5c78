//! Validated operator types: projectors, density matrices, tolerances.

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix, vec_dot, vec_norm_sqr};
use crate::rng::{Rng, random_unit_vector};

/// Default cap on the Hilbert-space dimension for randomized sweeps.
pub const DEFAULT_MAX_DIM: usize = 32;

/// Numerical tolerances used across validation and verification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceProfile {
    /// Bound on operator-identity residuals (Hermiticity, idempotence, trace).
    pub validation_tol: f64,
    /// Threshold for classifying eigenvalues against {0, 1} (and against 2
    /// for subspace intersections).
    pub eigen_gap_tol: f64,
    /// Bound below which a conditioning weight counts as null, and the default
    /// residual bound for probability-axiom checks.
    pub probability_tol: f64,
}

impl ToleranceProfile {
    pub fn new(validation_tol: f64, eigen_gap_tol: f64, probability_tol: f64) -> Result<Self> {
        if !(validation_tol > 0.0 && eigen_gap_tol > 0.0 && probability_tol > 0.0) {
            return Err(Error::invalid("tolerances must be strictly positive"));
        }
        if eigen_gap_tol >= 0.5 {
            return Err(Error::invalid(
                "eigen_gap_tol must stay below 0.5 so eigenvalue classes cannot overlap",
            ));
        }
        Ok(ToleranceProfile {
            validation_tol,
            eigen_gap_tol,
            probability_tol,
        })
    }
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            validation_tol: 1e-10,
            eigen_gap_tol: 1e-8,
            probability_tol: 1e-9,
        }
    }
}

/// Hermitian idempotent operator; eigenvalues in {0, 1} serve as the truth
/// values of the proposition it represents.
#[derive(Debug, Clone)]
pub struct Projector {
    matrix: ComplexMatrix,
    rank: usize,
    tol: f64,
}

impl Projector {
    /// Validates an arbitrary matrix as a projector: Hermitian and idempotent
    /// within `validation_tol`, every eigenvalue within `eigen_gap_tol` of
    /// {0, 1}; the rank is the count of eigenvalues classified as 1.
    pub fn new(matrix: ComplexMatrix, tol: &ToleranceProfile) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NotProjector {
                reason: "non-finite entries".into(),
                residual: f64::INFINITY,
            });
        }
        let herm = matrix.hermiticity_residual();
        if herm > tol.validation_tol {
            return Err(Error::NotProjector {
                reason: "not Hermitian".into(),
                residual: herm,
            });
        }
        let idem = matrix.mul(&matrix).max_abs_diff(&matrix);
        if idem > tol.validation_tol {
            return Err(Error::NotProjector {
                reason: "not idempotent".into(),
                residual: idem,
            });
        }
        let eig = hermitian_eigen(&matrix);
        let mut rank = 0usize;
        for &lambda in &eig.values {
            let d0 = lambda.abs();
            let d1 = (lambda - 1.0).abs();
            if d1 <= d0 {
                if d1 > tol.eigen_gap_tol {
                    return Err(Error::NotProjector {
                        reason: "eigenvalue away from {0, 1}".into(),
                        residual: d1,
                    });
                }
                rank += 1;
            } else if d0 > tol.eigen_gap_tol {
                return Err(Error::NotProjector {
                    reason: "eigenvalue away from {0, 1}".into(),
                    residual: d0,
                });
            }
        }
        Ok(Projector {
            matrix,
            rank,
            tol: tol.validation_tol,
        })
    }

    /// Projector assembled from orthonormal columns; rank is known by
    /// construction, so validation is limited to the cheap residuals.
    pub(crate) fn from_orthonormal_columns(
        dim: usize,
        cols: &[Vec<C64>],
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        let mut acc = ComplexMatrix::zeros(dim);
        for col in cols {
            debug_assert_eq!(col.len(), dim);
            acc = acc.add(&ComplexMatrix::outer(col));
        }
        Self::from_parts(acc, cols.len(), tol)
    }

    /// Wraps a matrix already known to be a rank-`rank` projector, checking
    /// only the Hermiticity and idempotence residuals.
    pub(crate) fn from_parts(
        matrix: ComplexMatrix,
        rank: usize,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        let herm = matrix.hermiticity_residual();
        let idem = matrix.mul(&matrix).max_abs_diff(&matrix);
        let residual = herm.max(idem);
        if residual > tol.validation_tol {
            return Err(Error::NotProjector {
                reason: "constructed operator violates projector residuals".into(),
                residual,
            });
        }
        Ok(Projector {
            matrix,
            rank,
            tol: tol.validation_tol,
        })
    }

    /// Identity projector (the proposition that is always true).
    pub fn identity(dim: usize) -> Self {
        Projector {
            matrix: ComplexMatrix::identity(dim),
            rank: dim,
            tol: ToleranceProfile::default().validation_tol,
        }
    }

    /// Zero projector (the proposition that is always false).
    pub fn zero(dim: usize) -> Self {
        Projector {
            matrix: ComplexMatrix::zeros(dim),
            rank: 0,
            tol: ToleranceProfile::default().validation_tol,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank == self.dim()
    }
}

/// Hermitian, positive-semidefinite, unit-trace operator: the state ρ.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    tol: f64,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, tol: &ToleranceProfile) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::NotDensityMatrix {
                reason: "non-finite entries".into(),
                residual: f64::INFINITY,
            });
        }
        let herm = matrix.hermiticity_residual();
        if herm > tol.validation_tol {
            return Err(Error::NotDensityMatrix {
                reason: "not Hermitian".into(),
                residual: herm,
            });
        }
        let tr = matrix.trace();
        let tr_res = (tr - C64::new(1.0, 0.0)).norm();
        if tr_res > tol.validation_tol {
            return Err(Error::NotDensityMatrix {
                reason: "trace differs from 1".into(),
                residual: tr_res,
            });
        }
        let eig = hermitian_eigen(&matrix);
        let min = eig.values.first().copied().unwrap_or(0.0);
        if min < -tol.validation_tol {
            return Err(Error::NotDensityMatrix {
                reason: "negative eigenvalue".into(),
                residual: -min,
            });
        }
        Ok(DensityMatrix {
            matrix,
            tol: tol.validation_tol,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Spectral decomposition, ascending eigenvalues.
    pub fn eigen(&self) -> crate::eigen::HermitianEigen {
        hermitian_eigen(&self.matrix)
    }
}

/// Orthogonal projector onto the span of `vectors`.
///
/// Linearly dependent inputs are deflated by modified Gram–Schmidt with
/// re-orthogonalization; a candidate whose residual norm (relative to its
/// original norm) falls below `eigen_gap_tol` is treated as dependent and
/// dropped. An empty or all-zero input yields the zero projector.
pub fn projector_from_basis(
    dim: usize,
    vectors: &[Vec<C64>],
    tol: &ToleranceProfile,
) -> Result<Projector> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: v.len(),
            });
        }
        let original = vec_norm_sqr(v).sqrt();
        if original == 0.0 {
            continue;
        }
        let mut r = v.clone();
        for _pass in 0..2 {
            for b in &basis {
                let proj = vec_dot(b, &r);
                for (ri, bi) in r.iter_mut().zip(b) {
                    *ri -= proj * bi;
                }
            }
        }
        let res = vec_norm_sqr(&r).sqrt();
        if res / original <= tol.eigen_gap_tol {
            continue;
        }
        let inv = 1.0 / res;
        for z in r.iter_mut() {
            *z *= inv;
        }
        basis.push(r);
    }
    if basis.is_empty() {
        return Ok(Projector::zero(dim));
    }
    Projector::from_orthonormal_columns(dim, &basis, tol)
}

/// Trace pairing tr(A·B).
pub fn trace_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.trace_product(b))
}

/// Seeded random state (purity_mix/d)·𝟙 + (1 − purity_mix)·|ψ⟩⟨ψ| with |ψ⟩
/// uniform on the unit sphere. purity_mix = 1 is fully mixed, 0 is pure.
pub fn random_state(
    dim: usize,
    purity_mix: f64,
    seed: u64,
    tol: &ToleranceProfile,
) -> Result<DensityMatrix> {
    if dim < 2 {
        return Err(Error::invalid("random_state requires dim >= 2"));
    }
    if !(0.0..=1.0).contains(&purity_mix) {
        return Err(Error::invalid("purity_mix must lie in [0, 1]"));
    }
    let mut rng = Rng::from_seed_stream(seed, 0x0574_7454);
    Ok(random_state_with(dim, purity_mix, &mut rng, tol))
}

/// Same construction driven by an existing generator stream.
pub fn random_state_with(
    dim: usize,
    purity_mix: f64,
    rng: &mut Rng,
    tol: &ToleranceProfile,
) -> DensityMatrix {
    let psi = random_unit_vector(dim, rng);
    let pure = ComplexMatrix::outer(&psi);
    let mixed = ComplexMatrix::identity(dim).scale(purity_mix / dim as f64);
    let matrix = mixed.add(&pure.scale(1.0 - purity_mix));
    DensityMatrix::new(matrix, tol).expect("mixture of a pure state and 1/d is a valid state")
}

/// Rank-`rank` projector onto the leading columns of a fresh random unitary.
pub fn random_projector(
    dim: usize,
    rank: usize,
    rng: &mut Rng,
    tol: &ToleranceProfile,
) -> Projector {
    assert!(rank <= dim);
    if rank == 0 {
        return Projector::zero(dim);
    }
    if rank == dim {
        return Projector::identity(dim);
    }
    let u = crate::rng::random_unitary(dim, rng);
    let cols: Vec<Vec<C64>> = (0..rank)
        .map(|k| (0..dim).map(|i| u.get(i, k)).collect())
        .collect();
    Projector::from_orthonormal_columns(dim, &cols, tol)
        .expect("orthonormal columns assemble into a projector")
}

/// Rank-`rank` projector onto a random column subset of a fixed unitary
/// basis; projectors built this way from the same basis all commute.
pub fn random_projector_in_basis(
    basis: &ComplexMatrix,
    rank: usize,
    rng: &mut Rng,
    tol: &ToleranceProfile,
) -> Projector {
    let dim = basis.dim();
    assert!(rank <= dim);
    if rank == 0 {
        return Projector::zero(dim);
    }
    let mut idx: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        let j = rng.index(i + 1);
        idx.swap(i, j);
    }
    let cols: Vec<Vec<C64>> = idx[..rank]
        .iter()
        .map(|&k| (0..dim).map(|i| basis.get(i, k)).collect())
        .collect();
    Projector::from_orthonormal_columns(dim, &cols, tol)
        .expect("orthonormal columns assemble into a projector")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    #[test]
    fn projector_onto_coordinate_axis() {
        let p = projector_from_basis(2, &[vec![c(1.0, 0.0), c(0.0, 0.0)]], &tol()).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-14);
    }

    #[test]
    fn dependent_inputs_deflate() {
        let v = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let p = projector_from_basis(2, &[v.clone(), v], &tol()).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[1.0, 0.0])) < 1e-14);
    }

    #[test]
    fn plus_state_projector_matches_outer_product() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = projector_from_basis(2, &[vec![c(s, 0.0), c(s, 0.0)]], &tol()).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            vec![c(0.5, 0.0), c(0.5, 0.0)],
            vec![c(0.5, 0.0), c(0.5, 0.0)],
        ])
        .unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.matrix().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn empty_or_zero_inputs_give_zero_projector() {
        let p = projector_from_basis(3, &[], &tol()).unwrap();
        assert!(p.is_zero());
        let q = projector_from_basis(3, &[vec![c(0.0, 0.0); 3]], &tol()).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn basis_dimension_mismatch_is_an_error() {
        let r = projector_from_basis(3, &[vec![c(1.0, 0.0); 2]], &tol());
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn trace_inner_examples() {
        let id = ComplexMatrix::identity(2);
        let half = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!((trace_inner(&id, &half).unwrap() - c(1.0, 0.0)).norm() < 1e-15);

        let p = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let w = ComplexMatrix::diagonal(&[0.3, 0.7]);
        assert!((trace_inner(&p, &w).unwrap() - c(0.3, 0.0)).norm() < 1e-15);

        // tr(|→⟩⟨→| · |↑⟩⟨↑|) = |⟨↑|→⟩|² = 1/2.
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = ComplexMatrix::outer(&[c(s, 0.0), c(s, 0.0)]);
        let up = ComplexMatrix::outer(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!((trace_inner(&plus, &up).unwrap() - c(0.5, 0.0)).norm() < 1e-15);

        assert!(trace_inner(&id, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn fully_mixed_limit() {
        let rho = random_state(2, 1.0, 999, &tol()).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::diagonal(&[0.5, 0.5])) < 1e-14);
    }

    #[test]
    fn pure_limit_is_rank_one() {
        let rho = random_state(4, 0.0, 7, &tol()).unwrap();
        let eig = rho.eigen();
        let near_one = eig.values.iter().filter(|l| (*l - 1.0).abs() < 1e-10).count();
        let near_zero = eig.values.iter().filter(|l| l.abs() < 1e-10).count();
        assert_eq!(near_one, 1);
        assert_eq!(near_zero, 3);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn half_mixed_spectrum_is_bounded_below() {
        let rho = random_state(3, 0.5, 1, &tol()).unwrap();
        let eig = rho.eigen();
        for &l in &eig.values {
            assert!(l >= 0.5 / 3.0 - 1e-12);
        }
    }

    #[test]
    fn purity_out_of_range_is_rejected() {
        assert!(random_state(3, 1.5, 0, &tol()).is_err());
        assert!(random_state(3, -0.1, 0, &tol()).is_err());
    }

    #[test]
    fn projector_validation_rejects_bad_matrices() {
        // Hermitian but not idempotent.
        let m = ComplexMatrix::diagonal(&[0.5, 0.5]);
        assert!(matches!(
            Projector::new(m, &tol()),
            Err(Error::NotProjector { .. })
        ));
        // Not Hermitian.
        let m = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.1, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            Projector::new(m, &tol()),
            Err(Error::NotProjector { .. })
        ));
    }

    #[test]
    fn density_validation_rejects_bad_matrices() {
        let m = ComplexMatrix::diagonal(&[0.9, 0.3]);
        assert!(matches!(
            DensityMatrix::new(m, &tol()),
            Err(Error::NotDensityMatrix { .. })
        ));
        let m = ComplexMatrix::diagonal(&[1.2, -0.2]);
        assert!(matches!(
            DensityMatrix::new(m, &tol()),
            Err(Error::NotDensityMatrix { .. })
        ));
    }

    #[test]
    fn tolerance_profile_invariants() {
        assert!(ToleranceProfile::new(1e-10, 0.6, 1e-9).is_err());
        assert!(ToleranceProfile::new(0.0, 1e-8, 1e-9).is_err());
        assert!(ToleranceProfile::new(1e-10, 1e-8, 1e-9).is_ok());
    }
}
