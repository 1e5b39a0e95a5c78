//! Boolean subalgebras of commuting projectors.
//!
//! A commuting projector family generates a Boolean algebra whose minimal
//! elements (atoms) are the nonzero sign-pattern products
//! Π_i [s_i·P_i + (1 − s_i)·(𝟙 − P_i)]. Atoms are pairwise orthogonal and
//! resolve the identity, so every element of the algebra is a subset-sum of
//! atoms and the element count is 2^k for k atoms. This module stores the
//! atoms only; elements are materialized on demand from bitmasks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::LabeledMatrix;
use crate::lattice::commutator_norm;
use crate::matrix::ComplexMatrix;
use crate::operators::{Projector, ToleranceProfile};
use crate::report::{AxiomReport, ResidualTracker};
use crate::rng::Rng;

/// Sign-pattern products with trace below this bound are classified as zero.
/// Trace is a rank proxy for projectors, so the midpoint between rank 0 and
/// rank 1 is the robust cut.
const ZERO_TRACE_CUT: f64 = 0.5;

/// A Boolean subalgebra of commuting projectors, represented by its atoms.
#[derive(Debug, Clone)]
pub struct BooleanSubalgebra {
    dim: usize,
    atoms: Vec<Projector>,
    generator_labels: Vec<String>,
}

impl BooleanSubalgebra {
    /// Validates atoms: nonzero, pairwise orthogonal within `tol`, and
    /// summing to the identity within `tol`. Atoms are re-sorted into
    /// canonical order (descending rank, then descending diagonal).
    pub fn new(
        dim: usize,
        mut atoms: Vec<Projector>,
        generator_labels: Vec<String>,
        tol: &ToleranceProfile,
    ) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::invalid("a Boolean subalgebra needs at least one atom"));
        }
        for atom in &atoms {
            if atom.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: atom.dim(),
                });
            }
            if atom.is_zero() {
                return Err(Error::invalid("atoms must be nonzero"));
            }
        }
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                let cross = atoms[i].matrix().mul(atoms[j].matrix()).max_abs();
                if cross > tol.validation_tol {
                    return Err(Error::invalid(format!(
                        "atoms {i} and {j} are not orthogonal (residual {cross:.3e})"
                    )));
                }
            }
        }
        let mut sum = ComplexMatrix::zeros(dim);
        for atom in &atoms {
            sum = sum.add(atom.matrix());
        }
        let res = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if res > tol.validation_tol {
            return Err(Error::invalid(format!(
                "atoms do not resolve the identity (residual {res:.3e})"
            )));
        }
        atoms.sort_by(canonical_atom_order);
        Ok(BooleanSubalgebra {
            dim,
            atoms,
            generator_labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[Projector] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// 2^k elements for k atoms.
    pub fn element_count(&self) -> u64 {
        1u64 << self.atoms.len()
    }

    pub fn generator_labels(&self) -> &[String] {
        &self.generator_labels
    }

    /// Subset-sum element addressed by an atom bitmask.
    pub fn element(&self, mask: u64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim);
        for (i, atom) in self.atoms.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc = acc.add(atom.matrix());
            }
        }
        acc
    }

    /// Bitmask of the atoms whose range lies inside `p`, when `p` is an
    /// element of the algebra; None when the reconstruction misses `p`.
    pub fn mask_of(&self, p: &Projector, tol: f64) -> Option<u64> {
        let mut mask = 0u64;
        for (i, atom) in self.atoms.iter().enumerate() {
            // Atom ⊆ range(p) exactly when p·A = A.
            let inside = p.matrix().mul(atom.matrix()).max_abs_diff(atom.matrix());
            if inside <= tol {
                mask |= 1 << i;
            }
        }
        if self.element(mask).max_abs_diff(p.matrix()) <= tol {
            Some(mask)
        } else {
            None
        }
    }

    /// Checks the Boolean identities (idempotence, commutativity,
    /// associativity, distributivity, duality) on the element set.
    ///
    /// Inside a commuting family the operations have operator expressions
    /// A∧B = AB, A∨B = A + B − AB, ¬A = 𝟙 − A, while in the atom
    /// representation they are pure bitmask logic. Each side of an identity
    /// is evaluated through the operator route and compared against the
    /// subset-sum element addressed by the bitmask route, so a residual ties
    /// the operator algebra to the Boolean algebra rather than comparing two
    /// algebraically identical expansions.
    ///
    /// With at most 64 elements every triple is enumerated; beyond that,
    /// `sample_budget` random triples are drawn from `seed`.
    pub fn verify_boolean_identities(
        &self,
        tol: f64,
        sample_budget: u64,
        seed: u64,
    ) -> AxiomReport {
        let k = self.atoms.len();
        let n_elems = 1u64 << k;
        let exhaustive = n_elems <= 64;
        let full = n_elems - 1;

        let cache: Vec<ComplexMatrix> = (0..n_elems.min(64))
            .map(|m| self.element(m))
            .collect();
        let elem = |mask: u64| -> ComplexMatrix {
            if exhaustive {
                cache[mask as usize].clone()
            } else {
                self.element(mask)
            }
        };

        let identity = ComplexMatrix::identity(self.dim);
        let op_meet = |a: &ComplexMatrix, b: &ComplexMatrix| a.mul(b);
        let op_join = |a: &ComplexMatrix, b: &ComplexMatrix| a.add(b).sub(&a.mul(b));
        let op_not = |a: &ComplexMatrix| identity.sub(a);

        let mut idem = ResidualTracker::new();
        let mut comm = ResidualTracker::new();
        let mut assoc_meet = ResidualTracker::new();
        let mut assoc_join = ResidualTracker::new();
        let mut dist_meet = ResidualTracker::new();
        let mut dist_join = ResidualTracker::new();
        let mut dual_meet = ResidualTracker::new();
        let mut dual_join = ResidualTracker::new();

        let triples: Vec<(u64, u64, u64)> = if exhaustive {
            let mut t = Vec::with_capacity((n_elems * n_elems * n_elems) as usize);
            for a in 0..n_elems {
                for b in 0..n_elems {
                    for c in 0..n_elems {
                        t.push((a, b, c));
                    }
                }
            }
            t
        } else {
            let mut rng = Rng::from_seed_stream(seed, 0xB001);
            (0..sample_budget)
                .map(|_| {
                    (
                        rng.next_u64() & full,
                        rng.next_u64() & full,
                        rng.next_u64() & full,
                    )
                })
                .collect()
        };

        for &(ma, mb, mc) in &triples {
            let a = elem(ma);
            let b = elem(mb);
            let c = elem(mc);

            let meet_ab = elem(ma & mb);
            idem.record(op_meet(&a, &a).max_abs_diff(&elem(ma)));
            idem.record(op_join(&a, &a).max_abs_diff(&elem(ma)));

            comm.record(op_meet(&a, &b).max_abs_diff(&meet_ab));
            comm.record(op_meet(&b, &a).max_abs_diff(&meet_ab));
            let join_ab = elem(ma | mb);
            comm.record(op_join(&a, &b).max_abs_diff(&join_ab));
            comm.record(op_join(&b, &a).max_abs_diff(&join_ab));

            let meet_abc = elem(ma & mb & mc);
            assoc_meet.record(op_meet(&op_meet(&a, &b), &c).max_abs_diff(&meet_abc));
            assoc_meet.record(op_meet(&a, &op_meet(&b, &c)).max_abs_diff(&meet_abc));
            let join_abc = elem(ma | mb | mc);
            assoc_join.record(op_join(&op_join(&a, &b), &c).max_abs_diff(&join_abc));
            assoc_join.record(op_join(&a, &op_join(&b, &c)).max_abs_diff(&join_abc));

            let dist_m = elem(ma & (mb | mc));
            dist_meet.record(op_meet(&a, &op_join(&b, &c)).max_abs_diff(&dist_m));
            dist_meet
                .record(op_join(&op_meet(&a, &b), &op_meet(&a, &c)).max_abs_diff(&dist_m));
            let dist_j = elem(ma | (mb & mc));
            dist_join.record(op_join(&a, &op_meet(&b, &c)).max_abs_diff(&dist_j));
            dist_join
                .record(op_meet(&op_join(&a, &b), &op_join(&a, &c)).max_abs_diff(&dist_j));

            let dual_m = elem(!(ma & mb) & full);
            dual_meet.record(op_not(&op_meet(&a, &b)).max_abs_diff(&dual_m));
            dual_meet.record(op_join(&op_not(&a), &op_not(&b)).max_abs_diff(&dual_m));
            let dual_j = elem(!(ma | mb) & full);
            dual_join.record(op_not(&op_join(&a, &b)).max_abs_diff(&dual_j));
            dual_join.record(op_meet(&op_not(&a), &op_not(&b)).max_abs_diff(&dual_j));
        }

        let mut report = AxiomReport::new("boolean-identities").with_seed(seed);
        report.instances = triples.len() as u64;
        report.config_entry("atoms", k);
        report.config_entry("elements", n_elems);
        report.config_entry(
            "enumeration",
            if exhaustive { "exhaustive" } else { "sampled" },
        );
        report.push_check(idem.into_check("boolean.idempotence", "A∧A = A∨A = A", tol));
        report.push_check(comm.into_check(
            "boolean.commutativity",
            "A∧B = B∧A and A∨B = B∨A",
            tol,
        ));
        report.push_check(assoc_meet.into_check(
            "boolean.associativity-meet",
            "A∧(B∧C) = (A∧B)∧C",
            tol,
        ));
        report.push_check(assoc_join.into_check(
            "boolean.associativity-join",
            "A∨(B∨C) = (A∨B)∨C",
            tol,
        ));
        report.push_check(dist_meet.into_check(
            "boolean.distributivity-meet",
            "A∧(B∨C) = (A∧B)∨(A∧C)",
            tol,
        ));
        report.push_check(dist_join.into_check(
            "boolean.distributivity-join",
            "A∨(B∧C) = (A∨B)∧(A∨C)",
            tol,
        ));
        report.push_check(dual_meet.into_check(
            "boolean.duality-meet",
            "¬(A∧B) = ¬A∨¬B",
            tol,
        ));
        report.push_check(dual_join.into_check(
            "boolean.duality-join",
            "¬(A∨B) = ¬A∧¬B",
            tol,
        ));
        report
    }

    pub fn to_json(&self) -> String {
        let doc = SubalgebraDocument {
            dim: self.dim,
            atoms: self
                .atoms
                .iter()
                .enumerate()
                .map(|(i, a)| LabeledMatrix::from_matrix(format!("atom-{i}"), a.matrix()))
                .collect(),
            generator_labels: self.generator_labels.clone(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("subalgebra serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str, tol: &ToleranceProfile) -> Result<Self> {
        let doc: SubalgebraDocument =
            serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))?;
        let atoms = doc
            .atoms
            .iter()
            .map(|lm| Projector::new(lm.to_matrix(doc.dim)?, tol))
            .collect::<Result<Vec<_>>>()?;
        BooleanSubalgebra::new(doc.dim, atoms, doc.generator_labels, tol)
    }
}

#[derive(Serialize, Deserialize)]
struct SubalgebraDocument {
    dim: usize,
    atoms: Vec<LabeledMatrix>,
    generator_labels: Vec<String>,
}

/// Descending rank, tie-broken by descending diagonal in the computation basis.
fn canonical_atom_order(a: &Projector, b: &Projector) -> std::cmp::Ordering {
    b.rank().cmp(&a.rank()).then_with(|| {
        for i in 0..a.dim() {
            let (da, db) = (a.matrix().get(i, i).re, b.matrix().get(i, i).re);
            let ord = db.total_cmp(&da);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Minimal projectors of the algebra generated by a commuting family on C^dim.
///
/// Starting from {𝟙}, each generator refines every current atom A into A·P
/// and A·(𝟙 − P), dropping products classified as zero by their trace. The
/// survivors are exactly the nonzero sign-pattern products, so the atom count
/// never exceeds the dimension. An empty generator set yields {𝟙}.
pub fn common_atoms(
    dim: usize,
    generators: &[Projector],
    tol: &ToleranceProfile,
) -> Result<Vec<Projector>> {
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: g.dim(),
            });
        }
    }
    for i in 0..generators.len() {
        for j in (i + 1)..generators.len() {
            let norm = commutator_norm(&generators[i], &generators[j]);
            if norm > tol.validation_tol {
                return Err(Error::NonCommutingGenerators {
                    first: i,
                    second: j,
                    norm,
                });
            }
        }
    }

    let mut atom_mats: Vec<ComplexMatrix> = vec![ComplexMatrix::identity(dim)];
    for g in generators {
        let not_g = g.matrix().complement_from_identity();
        let mut next = Vec::with_capacity(atom_mats.len() * 2);
        for a in &atom_mats {
            for half in [a.mul(g.matrix()), a.mul(&not_g)] {
                if half.trace().re >= ZERO_TRACE_CUT {
                    next.push(half);
                }
            }
        }
        atom_mats = next;
    }

    let mut atoms = Vec::with_capacity(atom_mats.len());
    for m in atom_mats {
        let rank = m.trace().re.round() as usize;
        atoms.push(Projector::from_parts(m, rank, tol)?);
    }
    atoms.sort_by(canonical_atom_order);
    Ok(atoms)
}

/// Closure of a commuting generator set under ¬ and ∧.
pub fn boolean_closure(
    dim: usize,
    generators: &[Projector],
    labels: Vec<String>,
    tol: &ToleranceProfile,
) -> Result<BooleanSubalgebra> {
    let atoms = common_atoms(dim, generators, tol)?;
    BooleanSubalgebra::new(dim, atoms, labels, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;
    use crate::operators::projector_from_basis;

    fn tol() -> ToleranceProfile {
        ToleranceProfile::default()
    }

    fn diag_projector(diag: &[f64]) -> Projector {
        Projector::new(ComplexMatrix::diagonal(diag), &tol()).unwrap()
    }

    #[test]
    fn single_generator_splits_into_p_and_not_p() {
        let p = diag_projector(&[1.0, 1.0, 0.0, 0.0]);
        let atoms = common_atoms(4, &[p], &tol()).unwrap();
        assert_eq!(atoms.len(), 2);
        let expect_a = ComplexMatrix::diagonal(&[1.0, 1.0, 0.0, 0.0]);
        let expect_b = ComplexMatrix::diagonal(&[0.0, 0.0, 1.0, 1.0]);
        assert!(atoms[0].matrix().max_abs_diff(&expect_a) < 1e-12);
        assert!(atoms[1].matrix().max_abs_diff(&expect_b) < 1e-12);
    }

    #[test]
    fn empty_generators_give_trivial_algebra() {
        let atoms = common_atoms(3, &[], &tol()).unwrap();
        assert_eq!(atoms.len(), 1);
        assert!(atoms[0].is_identity());

        let c = boolean_closure(3, &[], vec![], &tol()).unwrap();
        assert_eq!(c.atom_count(), 1);
        assert_eq!(c.element_count(), 2);
    }

    #[test]
    fn zero_generator_gives_trivial_algebra() {
        let c = boolean_closure(3, &[Projector::zero(3)], vec!["zero".into()], &tol()).unwrap();
        assert_eq!(c.atom_count(), 1);
        assert_eq!(c.element_count(), 2);
    }

    #[test]
    fn two_nested_diagonals_give_three_atoms() {
        // Of the four sign-pattern products, Q∧¬P vanishes because Q ⊂ P;
        // the survivors are the three coordinate axes.
        let p = diag_projector(&[1.0, 1.0, 0.0]);
        let q = diag_projector(&[1.0, 0.0, 0.0]);
        let atoms = common_atoms(3, &[p, q], &tol()).unwrap();
        assert_eq!(atoms.len(), 3);
        for atom in &atoms {
            assert_eq!(atom.rank(), 1);
        }
        let sum: ComplexMatrix = atoms
            .iter()
            .fold(ComplexMatrix::zeros(3), |acc, a| acc.add(a.matrix()));
        assert!(sum.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-12);
    }

    #[test]
    fn single_proper_generator_closure_has_four_elements() {
        let p = diag_projector(&[1.0, 0.0, 0.0]);
        let c = boolean_closure(3, std::slice::from_ref(&p), vec!["p".into()], &tol()).unwrap();
        assert_eq!(c.atom_count(), 2);
        assert_eq!(c.element_count(), 4);
        // The four elements are 0, P, ¬P, 𝟙.
        assert!(c.element(0).max_abs() < 1e-14);
        assert!(c.mask_of(&p, 1e-10).is_some());
        assert!(c.mask_of(&Projector::identity(3), 1e-10).is_some());
        assert!(c
            .element(c.element_count() - 1)
            .max_abs_diff(&ComplexMatrix::identity(3))
            < 1e-12);
    }

    fn section5_commuting_pair() -> (Projector, Projector) {
        let up = ComplexMatrix::diagonal(&[1.0, 0.0]);
        let id2 = ComplexMatrix::identity(2);
        let p = Projector::new(up.kron(&id2), &tol()).unwrap();
        let q = Projector::new(id2.kron(&up), &tol()).unwrap();
        (p, q)
    }

    #[test]
    fn commuting_tensor_pair_gives_four_atoms_sixteen_elements() {
        let (p, q) = section5_commuting_pair();
        // Independent oracle: the four explicit sign-pattern products are the
        // four rank-1 coordinate projectors.
        let not_p = p.matrix().complement_from_identity();
        let not_q = q.matrix().complement_from_identity();
        let products = [
            p.matrix().mul(q.matrix()),
            p.matrix().mul(&not_q),
            not_p.mul(q.matrix()),
            not_p.mul(&not_q),
        ];
        for (idx, prod) in products.iter().enumerate() {
            let mut expect = vec![0.0; 4];
            expect[idx] = 1.0;
            assert!(prod.max_abs_diff(&ComplexMatrix::diagonal(&expect)) < 1e-14);
        }

        let c = boolean_closure(4, &[p, q], vec!["P".into(), "Q".into()], &tol()).unwrap();
        assert_eq!(c.atom_count(), 4);
        assert_eq!(c.element_count(), 16);
    }

    #[test]
    fn identities_pass_on_small_algebras() {
        let p = diag_projector(&[1.0, 0.0]);
        let c = boolean_closure(2, &[p], vec!["p".into()], &tol()).unwrap();
        let report = c.verify_boolean_identities(1e-12, 0, 0);
        assert!(report.passed());
        assert!(report.max_residual() <= 1e-12);

        let (p, q) = section5_commuting_pair();
        let c = boolean_closure(4, &[p, q], vec![], &tol()).unwrap();
        let report = c.verify_boolean_identities(1e-11, 0, 0);
        assert!(report.passed());
        assert_eq!(report.instances, 16 * 16 * 16);
    }

    #[test]
    fn corrupted_atoms_fail_duality() {
        let p = diag_projector(&[1.0, 1.0, 0.0]);
        let atoms = common_atoms(3, &[p], &tol()).unwrap();
        let loose = ToleranceProfile::new(1e-2, 1e-2, 1e-9).unwrap();
        let corrupted: Vec<Projector> = atoms
            .iter()
            .map(|a| {
                let mut m = a.matrix().clone();
                m.set(0, 0, m.get(0, 0) + C64::new(1e-3, 0.0));
                Projector::new(m, &loose).unwrap()
            })
            .collect();
        let c = BooleanSubalgebra::new(3, corrupted, vec![], &loose).unwrap();
        let report = c.verify_boolean_identities(1e-10, 0, 0);
        assert!(!report.passed());
        let dual = report
            .checks
            .iter()
            .find(|c| c.id == "boolean.duality-meet")
            .unwrap();
        assert!(dual.max_residual > 1e-10);
    }

    #[test]
    fn non_commuting_generators_are_rejected_with_context() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let up = projector_from_basis(2, &[vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]], &tol())
            .unwrap();
        let plus =
            projector_from_basis(2, &[vec![C64::new(s, 0.0), C64::new(s, 0.0)]], &tol()).unwrap();
        match common_atoms(2, &[up, plus], &tol()) {
            Err(Error::NonCommutingGenerators { first, second, norm }) => {
                assert_eq!((first, second), (0, 1));
                assert!(norm > 0.1);
            }
            other => panic!("expected NonCommutingGenerators, got {other:?}"),
        }
    }

    #[test]
    fn generators_are_reconstructed_as_subset_sums() {
        let p = diag_projector(&[1.0, 1.0, 0.0, 0.0]);
        let q = diag_projector(&[1.0, 0.0, 1.0, 0.0]);
        let c = boolean_closure(4, &[p.clone(), q.clone()], vec![], &tol()).unwrap();
        assert!(c.mask_of(&p, 1e-10).is_some());
        assert!(c.mask_of(&q, 1e-10).is_some());
    }

    #[test]
    fn closure_is_idempotent_on_its_elements() {
        let p = diag_projector(&[1.0, 1.0, 0.0, 0.0]);
        let q = diag_projector(&[1.0, 0.0, 1.0, 0.0]);
        let c = boolean_closure(4, &[p, q], vec![], &tol()).unwrap();
        let elements: Vec<Projector> = (0..c.element_count())
            .map(|m| Projector::new(c.element(m), &tol()).unwrap())
            .filter(|p| !p.is_zero())
            .collect();
        let c2 = boolean_closure(4, &elements, vec![], &tol()).unwrap();
        assert_eq!(c2.atom_count(), c.atom_count());
        for (a, b) in c.atoms().iter().zip(c2.atoms()) {
            assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-10);
        }
    }

    #[test]
    fn atom_count_bounded_by_dimension() {
        let p = diag_projector(&[1.0, 1.0, 0.0, 0.0]);
        let q = diag_projector(&[1.0, 0.0, 1.0, 0.0]);
        let r = diag_projector(&[1.0, 1.0, 1.0, 0.0]);
        let c = boolean_closure(4, &[p, q, r], vec![], &tol()).unwrap();
        assert!(c.atom_count() <= 4);
        assert_eq!(c.element_count(), 1 << c.atom_count());
    }

    #[test]
    fn serialization_round_trip_is_bit_exact() {
        let (p, q) = section5_commuting_pair();
        let c = boolean_closure(4, &[p, q], vec!["P".into(), "Q".into()], &tol()).unwrap();
        let text = c.to_json();
        let back = BooleanSubalgebra::from_json(&text, &tol()).unwrap();
        assert_eq!(back.atom_count(), c.atom_count());
        for (a, b) in c.atoms().iter().zip(back.atoms()) {
            assert!(a.matrix().max_abs_diff(b.matrix()) == 0.0);
        }
        assert_eq!(back.generator_labels(), c.generator_labels());
        // Second serialization is byte-identical.
        assert_eq!(text, back.to_json());
    }
}
