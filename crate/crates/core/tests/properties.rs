//! Property tests for the structural invariants.

use proptest::prelude::*;

use qplaus_core::classical::{
    ProbabilityTable, RatioConditional, renyi_check, sum_rule_residual,
};
use qplaus_core::lattice::{complement, join, meet};
use qplaus_core::matrix::{C64, ComplexMatrix};
use qplaus_core::operators::{
    ToleranceProfile, projector_from_basis, random_projector, random_projector_in_basis,
    random_state, trace_inner,
};
use qplaus_core::quantum::lueders;
use qplaus_core::rng::{Rng, random_unitary};

fn tol() -> ToleranceProfile {
    ToleranceProfile::default()
}

fn arb_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec(
        (-10.0f64..10.0, -10.0f64..10.0),
        dim * dim,
    )
    .prop_map(move |entries| {
        ComplexMatrix::from_fn(dim, |i, j| {
            let (re, im) = entries[i * dim + j];
            C64::new(re, im)
        })
    })
}

fn arb_matrix_pair() -> impl Strategy<Value = (ComplexMatrix, ComplexMatrix)> {
    (1usize..5).prop_flat_map(|dim| (arb_matrix(dim), arb_matrix(dim)))
}

proptest! {
    #[test]
    fn trace_pairing_conjugation_symmetry((a, b) in arb_matrix_pair()) {
        let lhs = trace_inner(&a, &b).unwrap();
        let rhs = trace_inner(&b.adjoint(), &a.adjoint()).unwrap().conj();
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn random_states_are_valid_for_every_seed(
        seed in any::<u64>(),
        dim in 2usize..8,
        purity in 0.0f64..=1.0,
    ) {
        let rho = random_state(dim, purity, seed, &tol()).unwrap();
        prop_assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-12);
        let eig = rho.eigen();
        prop_assert!(eig.values[0] >= -1e-12);
    }

    #[test]
    fn every_constructed_projector_satisfies_the_residuals(
        seed in any::<u64>(),
        dim in 2usize..7,
    ) {
        let mut rng = Rng::new(seed);
        let p = random_projector(dim, 1 + rng.index(dim - 1), &mut rng, &tol());
        let q = random_projector(dim, 1 + rng.index(dim - 1), &mut rng, &tol());
        for candidate in [
            p.clone(),
            q.clone(),
            complement(&p),
            meet(&p, &q, &tol()).unwrap(),
            join(&p, &q, &tol()).unwrap(),
        ] {
            let m = candidate.matrix();
            prop_assert!(m.hermiticity_residual() <= tol().validation_tol);
            prop_assert!(m.mul(m).max_abs_diff(m) <= tol().validation_tol);
        }
    }

    #[test]
    fn meet_below_and_complement_laws(seed in any::<u64>(), dim in 2usize..6) {
        let mut rng = Rng::new(seed);
        let p = random_projector(dim, 1 + rng.index(dim - 1), &mut rng, &tol());
        let not_p = complement(&p);
        prop_assert!(join(&p, &not_p, &tol()).unwrap().is_identity());
        prop_assert!(meet(&p, &not_p, &tol()).unwrap().is_zero());
        prop_assert_eq!(not_p.rank(), dim - p.rank());
    }

    #[test]
    fn ratio_conditionals_satisfy_all_renyi_axioms(
        raw in proptest::collection::vec(0.01f64..1.0, 2..=6),
    ) {
        let total: f64 = raw.iter().sum();
        let mut weights: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let n = weights.len();
        let partial: f64 = weights[..n - 1].iter().sum();
        weights[n - 1] = 1.0 - partial;
        let table = ProbabilityTable::new(weights).unwrap();
        let report = renyi_check(&RatioConditional::new(&table), 1e-12, 0, 0);
        prop_assert!(report.passed());
    }

    #[test]
    fn sum_rule_holds_on_random_tables(
        raw in proptest::collection::vec(0.01f64..1.0, 2..=6),
        a in any::<u32>(),
        b in any::<u32>(),
        c in any::<u32>(),
    ) {
        let total: f64 = raw.iter().sum();
        let mut weights: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let n = weights.len();
        let partial: f64 = weights[..n - 1].iter().sum();
        weights[n - 1] = 1.0 - partial;
        let table = ProbabilityTable::new(weights).unwrap();
        let full = table.space().full();
        if let Ok(audit) = sum_rule_residual(&table, a & full, b & full, c & full) {
            prop_assert!(audit.residual <= 1e-12);
        }
    }

    #[test]
    fn lueders_values_stay_in_the_unit_interval(
        seed in any::<u64>(),
        dim in 2usize..7,
        purity in 0.05f64..=1.0,
    ) {
        let mut rng = Rng::new(seed);
        let rho = random_state(dim, purity, rng.next_u64(), &tol()).unwrap();
        let p = random_projector(dim, 1 + rng.index(dim), &mut rng, &tol());
        let q = random_projector(dim, 1 + rng.index(dim), &mut rng, &tol());
        if let Ok(cv) = lueders(&rho, &p, &q, &tol()) {
            prop_assert!(cv.value >= -1e-9);
            prop_assert!(cv.value <= 1.0 + 1e-9);
            prop_assert!(cv.denominator > 0.0);
            prop_assert!((cv.value - cv.numerator / cv.denominator).abs() <= 1e-14);
        }
    }

    #[test]
    fn projector_from_basis_is_span_invariant_under_duplication(
        seed in any::<u64>(),
        dim in 2usize..6,
    ) {
        let mut rng = Rng::new(seed);
        let u = random_unitary(dim, &mut rng);
        let v: Vec<C64> = (0..dim).map(|i| u.get(i, 0)).collect();
        let single = projector_from_basis(dim, std::slice::from_ref(&v), &tol()).unwrap();
        let doubled = projector_from_basis(dim, &[v.clone(), v], &tol()).unwrap();
        prop_assert_eq!(single.rank(), 1);
        prop_assert_eq!(doubled.rank(), 1);
        prop_assert!(single.matrix().max_abs_diff(doubled.matrix()) < 1e-12);
    }

    #[test]
    fn commuting_family_closure_counts(seed in any::<u64>(), dim in 2usize..7) {
        let mut rng = Rng::new(seed);
        let basis = random_unitary(dim, &mut rng);
        let generators: Vec<_> = (0..2)
            .map(|_| random_projector_in_basis(&basis, 1 + rng.index(dim - 1), &mut rng, &tol()))
            .collect();
        let c = qplaus_core::boolean::boolean_closure(dim, &generators, vec![], &tol()).unwrap();
        prop_assert!(c.atom_count() <= dim);
        prop_assert_eq!(c.element_count(), 1u64 << c.atom_count());
    }
}
