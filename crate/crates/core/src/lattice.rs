//! Lattice and logical operations on projectors.
//!
//! For commuting pairs these reduce to the Boolean formulas P∧Q = PQ,
//! P∨Q = P + Q − PQ, ¬P = 𝟙 − P. The meet and join are nevertheless defined
//! for arbitrary pairs through the subspace lattice: ∧ projects onto the
//! intersection of the ranges, ∨ onto their span. No Boolean identity is
//! claimed outside commuting families.

use std::collections::BTreeMap;

use crate::eigen::hermitian_eigen;
use crate::error::{Error, Result};
use crate::matrix::C64;
use crate::operators::{Projector, ToleranceProfile};

/// Commutation, ordering, and orthogonality classification of a pair.
#[derive(Debug, Clone)]
pub struct ProjectorPairClassification {
    pub commuting: bool,
    /// P ≤ Q, i.e. QP = P = PQ.
    pub ordered_le: bool,
    /// PQ = 0.
    pub orthogonal: bool,
    /// Residual norms backing each decision.
    pub residual_norms: BTreeMap<String, f64>,
}

/// ¬P = 𝟙 − P.
pub fn complement(p: &Projector) -> Projector {
    let matrix = p.matrix().complement_from_identity();
    let tol = ToleranceProfile {
        validation_tol: p.tol(),
        ..ToleranceProfile::default()
    };
    Projector::from_parts(matrix, p.dim() - p.rank(), &tol)
        .expect("complement of a valid projector is a valid projector")
}

fn check_dims(p: &Projector, q: &Projector) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    Ok(())
}

/// P∧Q: the orthogonal projector onto range(P) ∩ range(Q).
///
/// A vector lies in both ranges exactly when it is an eigenvector of P + Q
/// with eigenvalue 2, so the intersection is recovered from the top
/// eigenspace of one Hermitian eigendecomposition. Eigenvalues within
/// `eigen_gap_tol` of 2 are classified as intersection directions.
pub fn meet(p: &Projector, q: &Projector, tol: &ToleranceProfile) -> Result<Projector> {
    check_dims(p, q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(Projector::zero(p.dim()));
    }
    if p.is_identity() {
        return Ok(q.clone());
    }
    if q.is_identity() {
        return Ok(p.clone());
    }
    let sum = p.matrix().add(q.matrix());
    let eig = hermitian_eigen(&sum);
    let cols: Vec<Vec<C64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &l)| (l - 2.0).abs() <= tol.eigen_gap_tol)
        .map(|(k, _)| eig.vector(k))
        .collect();
    if cols.is_empty() {
        return Ok(Projector::zero(p.dim()));
    }
    Projector::from_orthonormal_columns(p.dim(), &cols, tol)
}

/// P∨Q: the orthogonal projector onto span(range(P) ∪ range(Q)),
/// computed as ¬(¬P ∧ ¬Q).
pub fn join(p: &Projector, q: &Projector, tol: &ToleranceProfile) -> Result<Projector> {
    check_dims(p, q)?;
    let inner = meet(&complement(p), &complement(q), tol)?;
    Ok(complement(&inner))
}

/// True when max|PQ − QP| ≤ tol.
pub fn commutes(p: &Projector, q: &Projector, tol: f64) -> bool {
    if p.dim() != q.dim() {
        return false;
    }
    commutator_norm(p, q) <= tol
}

/// max|PQ − QP|.
pub fn commutator_norm(p: &Projector, q: &Projector) -> f64 {
    let pq = p.matrix().mul(q.matrix());
    let qp = q.matrix().mul(p.matrix());
    pq.max_abs_diff(&qp)
}

/// Classifies a pair: commutation, ordering P ≤ Q, orthogonality PQ = 0.
///
/// Ordering and orthogonality each imply commutation, so both flags are
/// gated on the commutation decision to keep the classification consistent
/// at tolerance boundaries.
pub fn classify_pair(p: &Projector, q: &Projector, tol: f64) -> Result<ProjectorPairClassification> {
    check_dims(p, q)?;
    let pq = p.matrix().mul(q.matrix());
    let qp = q.matrix().mul(p.matrix());
    let comm_res = pq.max_abs_diff(&qp);
    let order_res = qp.max_abs_diff(p.matrix());
    let orth_res = pq.max_abs();

    let commuting = comm_res <= tol;
    let mut residual_norms = BTreeMap::new();
    residual_norms.insert("commutator".to_string(), comm_res);
    residual_norms.insert("order".to_string(), order_res);
    residual_norms.insert("orthogonality".to_string(), orth_res);

    Ok(ProjectorPairClassification {
        commuting,
        ordered_le: commuting && order_res <= tol,
        orthogonal: commuting && orth_res <= tol,
        residual_norms,
    })
}
