//! Hermitian eigendecomposition by cyclic Jacobi rotations.
//!
//! For the matrix sizes this crate works with (d ≤ 32) Jacobi is plenty fast,
//! converges unconditionally for Hermitian input, and accumulates an exactly
//! unitary eigenvector matrix, which is what the projector constructions
//! downstream rely on.
//!
//! Each rotation zeroes one off-diagonal pair (p, q). Writing the 2×2 block as
//! [[α, g·e^{iφ}], [g·e^{-iφ}, β]] with g = |a_pq|, the update is the unitary
//! U = diag(1, e^{-iφ}) · R(θ) where R is the classical real Jacobi rotation
//! for [[α, g], [g, β]]: with τ = (β − α)/(2g), t = sgn(τ)/(|τ| + √(1 + τ²)),
//! c = 1/√(1 + t²), s = t·c. The new diagonal entries are α − t·g and β + t·g.

use crate::matrix::{C64, ComplexMatrix};

/// Result of a Hermitian eigendecomposition: `values` ascending, and the
/// columns of `vectors` are the matching orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Extracts eigenvector column `k`.
    pub fn vector(&self, k: usize) -> Vec<C64> {
        let d = self.vectors.dim();
        (0..d).map(|i| self.vectors.get(i, k)).collect()
    }
}

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a (numerically) Hermitian matrix.
///
/// The input is symmetrized first, so tolerance-level asymmetry from earlier
/// floating-point arithmetic does not leak into the spectrum.
pub fn hermitian_eigen(m: &ComplexMatrix) -> HermitianEigen {
    let d = m.dim();
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(d);

    if d == 1 {
        return HermitianEigen {
            values: vec![a.get(0, 0).re],
            vectors: v,
        };
    }

    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = f64::EPSILON * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..d {
            for q in (p + 1)..d {
                off += a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= threshold {
            break;
        }

        for p in 0..d {
            for q in (p + 1)..d {
                let apq = a.get(p, q);
                let g = apq.norm();
                if g <= f64::MIN_POSITIVE {
                    continue;
                }
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (tau - (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / g;
                let phase_conj = phase.conj();

                // Column update: B = A·U and V ← V·U.
                for i in 0..d {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * c - aiq * phase_conj * s);
                    a.set(i, q, aip * s + aiq * phase_conj * c);

                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * c - viq * phase_conj * s);
                    v.set(i, q, vip * s + viq * phase_conj * c);
                }
                // Row update: A ← U†·B.
                for j in 0..d {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj * c - aqj * phase * s);
                    a.set(q, j, apj * s + aqj * phase * c);
                }
                // The rotation annihilates the (p, q) pair up to roundoff.
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = ComplexMatrix::from_fn(d, |i, j| v.get(i, order[j]));
    HermitianEigen { values, vectors }
}
