use rand::SeedableRng;

use super::*;
use crate::classify::{equivalent, inner_equivalent};
use crate::field::Gfp2;
use crate::poset::catalog;

fn gf9() -> Gfp2 {
    Gfp2::new(3).unwrap()
}

#[test]
fn unit_counts() {
    let budget = EnumerationBudget::default();
    let a = IncidenceAlgebra::new(catalog::chain(2), gf9());
    let units = enumerate_units(&a, &budget).unwrap();
    assert_eq!(units.total(), 576);
    let all: Vec<_> = units.collect();
    assert_eq!(all.len(), 576);
    assert!(all.iter().all(|u| a.is_unit(u)));
    let distinct: std::collections::HashSet<_> = all.iter().collect();
    assert_eq!(distinct.len(), 576);

    let one = IncidenceAlgebra::new(catalog::chain(1), gf9());
    assert_eq!(enumerate_units(&one, &budget).unwrap().total(), 8);

    let three = IncidenceAlgebra::new(catalog::chain(3), gf9());
    let stream = enumerate_units(&three, &budget).unwrap();
    assert_eq!(stream.total(), 373_248);
    assert_eq!(stream.total() as usize, enumerate_units(&three, &budget).unwrap().fold(0, |n, _| n + 1));
}

#[test]
fn budget_is_enforced() {
    let tight = EnumerationBudget { max_units: 100, ..EnumerationBudget::default() };
    let a = IncidenceAlgebra::new(catalog::chain(2), gf9());
    assert!(matches!(enumerate_units(&a, &tight), Err(OracleError::BudgetExceeded(_))));
    let small = EnumerationBudget { max_poset_size: 3, ..EnumerationBudget::default() };
    let d = IncidenceAlgebra::new(catalog::diamond(), gf9());
    assert!(matches!(enumerate_units(&d, &small), Err(OracleError::BudgetExceeded(_))));
    let q = IncidenceAlgebra::new(catalog::chain(2), crate::field::GaussianRationals);
    assert!(matches!(enumerate_units(&q, &EnumerationBudget::default()), Err(OracleError::InfiniteField)));
}

#[test]
fn symmetric_units_are_symmetric_and_complete() {
    let budget = EnumerationBudget::default();
    let a = IncidenceAlgebra::new(catalog::chain(3), gf9());
    let lambda = PosetMap::involution(a.poset(), vec![2, 1, 0]).unwrap();
    let star = rho_lambda_star(&a, &lambda).unwrap();
    let listed: std::collections::HashSet<_> = enumerate_symmetric_units(&a, &lambda, false, &budget).unwrap().collect();
    let direct: std::collections::HashSet<_> =
        enumerate_units(&a, &budget).unwrap().filter(|u| star.apply(&a, u) == *u).collect();
    assert_eq!(listed, direct);
    let normalized = enumerate_symmetric_units(&a, &lambda, true, &budget).unwrap().count();
    assert_eq!(normalized * 2, listed.len());
}

#[test]
fn involution_enumeration_examples() {
    let budget = EnumerationBudget::default();
    let two = IncidenceAlgebra::new(catalog::chain(2), gf9());
    let list = enumerate_second_kind_involutions(&two, &budget).unwrap();
    assert_eq!(list.len(), 12);
    assert!(list.iter().all(|e| is_involution(&two, &e.rho).is_ok()));

    let vee = IncidenceAlgebra::new(catalog::vee(), gf9());
    assert!(enumerate_second_kind_involutions(&vee, &budget).unwrap().is_empty());

    let one = IncidenceAlgebra::new(catalog::chain(1), gf9());
    let list = enumerate_second_kind_involutions(&one, &budget).unwrap();
    assert_eq!(list.len(), 1);
    assert!(list[0].rho.same_map(&rho_lambda_star(&one, &enumerate_involutions(one.poset())[0]).unwrap()));

    let crown = IncidenceAlgebra::new(catalog::crown(), gf9());
    assert!(matches!(enumerate_second_kind_involutions(&crown, &budget), Err(OracleError::H1Obstruction(_))));
}

#[test]
fn symmetric_sweep_matches_literal_sweep() {
    let budget = EnumerationBudget::default();
    for n in 1..=3 {
        let a = IncidenceAlgebra::new(catalog::chain(n), gf9());
        let mut fast: Vec<_> = enumerate_second_kind_involutions(&a, &budget).unwrap().into_iter().map(|e| e.rho).collect();
        let mut literal = admissible_unit_sweep(&a, &budget).unwrap();
        fast.sort();
        literal.sort();
        assert_eq!(fast, literal, "chain of length {n}");
    }
}

#[test]
fn raw_sweep_on_the_one_point_algebra() {
    let field = gf9();
    let found = raw_scalar_involutions(&field, &EnumerationBudget::default()).unwrap();
    assert_eq!(found, vec![(field.one(), field.neg(&field.i()))]);
    // Agrees with the structured sweep: ρ(i) = −i, ρ(1) = 1.
    let one = IncidenceAlgebra::new(catalog::chain(1), field);
    let list = enumerate_second_kind_involutions(&one, &EnumerationBudget::default()).unwrap();
    assert_eq!(list[0].rho.images()[0], one.delta());
    assert_eq!(*list[0].rho.i_image(), one.scalar(field.neg(&field.i())));
}

#[test]
fn literal_brute_force_on_the_two_chain() {
    let budget = EnumerationBudget::default();
    let a = IncidenceAlgebra::new(catalog::chain(2), gf9());
    let list = enumerate_second_kind_involutions(&a, &budget).unwrap();
    let inner = orbit_partition(&a, &list, false).unwrap();
    let full = orbit_partition(&a, &list, true).unwrap();
    assert_eq!(inner.classes(), 1);
    assert_eq!(full.classes(), 1);
    for e1 in &list {
        for e2 in &list {
            let brute = brute_equivalent(&a, &e1.rho, &e2.rho, &budget).unwrap();
            assert!(brute);
            assert_eq!(inner_equivalent(&a, &e1.rho, &e2.rho).unwrap().is_equivalent(), brute);
        }
    }
}

#[test]
fn brute_force_detects_inequivalence() {
    // Different kinds are never equivalent; the singleton's only second-kind
    // involution against a first-kind one (the identity on K).
    let budget = EnumerationBudget::default();
    let a = IncidenceAlgebra::new(catalog::chain(1), gf9());
    let star = rho_lambda_star(&a, &enumerate_involutions(a.poset())[0]).unwrap();
    let identity = InvolutionMap::from_images(&a, vec![a.delta()], a.scalar(a.field().i())).unwrap();
    assert!(brute_equivalent(&a, &star, &star, &budget).unwrap());
    assert!(!brute_equivalent(&a, &star, &identity, &budget).unwrap());
}

#[test]
fn diamond_partition_and_agreement() {
    let budget = EnumerationBudget::default();
    let a = IncidenceAlgebra::new(catalog::diamond(), gf9());
    let list = enumerate_second_kind_involutions(&a, &budget).unwrap();
    let inner = orbit_partition(&a, &list, false).unwrap();
    let full = orbit_partition(&a, &list, true).unwrap();
    // Two poset involutions, not conjugate (2 vs 0 fixed points).
    assert_eq!(inner.classes(), 2);
    assert_eq!(full.classes(), 2);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    let report = classifier_agreement(&a, &list, &inner, &full, 50, &mut rng).unwrap();
    assert!(report.disagreements.is_empty(), "{:?}", report.disagreements);
    assert!(report.pairs_checked > 100);
    assert!(equivalent(&a, &list[0].rho, &list[list.len() - 1].rho).is_ok());
}

#[test]
fn verify_theorems_outcomes() {
    let budget = EnumerationBudget::default();
    for (name, poset) in [("2-chain", catalog::chain(2)), ("diamond", catalog::diamond())] {
        let a = IncidenceAlgebra::new(poset, gf9());
        let records = verify_theorems(&a, name, &budget, 1).unwrap();
        for r in &records {
            assert_ne!(r.status, TheoremStatus::Fail, "{r:?}");
        }
        assert!(records.iter().any(|r| r.check == "classifier_agreement" && r.status == TheoremStatus::Pass));
    }
    let crown = IncidenceAlgebra::new(catalog::crown(), gf9());
    let records = verify_theorems(&crown, "crown", &budget, 1).unwrap();
    assert!(records.iter().all(|r| r.status != TheoremStatus::Fail), "{records:?}");
    let skipped: Vec<_> = records.iter().filter(|r| r.status == TheoremStatus::Skipped).collect();
    assert!(skipped.iter().any(|r| r.check == "h1_hypothesis"));
    assert!(skipped.iter().all(|r| r.detail.as_deref().unwrap().contains("H1Obstruction")));
    assert!(records.iter().any(|r| r.check == "idempotents_preserved" && r.status == TheoremStatus::Pass));
}
