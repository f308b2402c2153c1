use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::field::{GaussRat, GaussianRationals, Gfp2};
use crate::involution::{random_symmetric_unit, rho_lambda_star, twist};
use crate::poset::{catalog, enumerate_involutions};

type QAlg = IncidenceAlgebra<GaussianRationals>;

fn q(s: &str) -> GaussRat {
    s.parse().unwrap()
}

fn diamond() -> (QAlg, PosetMap) {
    let a = IncidenceAlgebra::new(catalog::diamond(), GaussianRationals);
    let lambda = PosetMap::involution(a.poset(), vec![3, 1, 2, 0]).unwrap();
    (a, lambda)
}

fn rho_eps(a: &QAlg, lambda: &PosetMap, ea: &str, eb: &str) -> InvolutionMap<GaussRat> {
    let values: BTreeMap<usize, GaussRat> = [(1, q(ea)), (2, q(eb))].into_iter().collect();
    build_rho_epsilon(a, lambda, &EpsilonMap::new(a, lambda, values).unwrap()).unwrap()
}

fn middle_swap(a: &QAlg) -> PosetMap {
    PosetMap::automorphism(a.poset(), vec![0, 2, 1, 3]).unwrap()
}

fn assert_checked<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    report: &EquivalenceReport<F::Elem>,
    rho1: &InvolutionMap<F::Elem>,
    rho2: &InvolutionMap<F::Elem>,
) {
    assert!(report.is_equivalent(), "{:?}", report.obstruction);
    assert!(report.checked);
    assert!(intertwines(alg, report.witness.as_ref().unwrap(), rho1, rho2).unwrap());
}

#[test]
fn coset_test_examples() {
    let (a, lambda) = diamond();
    let r13 = rho_eps(&a, &lambda, "1", "3");
    let r515 = rho_eps(&a, &lambda, "5", "15");
    let r31 = rho_eps(&a, &lambda, "3", "1");
    let r11 = rho_eps(&a, &lambda, "1", "1");

    let report = inner_equivalent(&a, &r13, &r515).unwrap();
    assert_checked(&a, &report, &r13, &r515);

    let report = inner_equivalent(&a, &r13, &r31).unwrap();
    assert_checked(&a, &report, &r13, &r31);

    let report = inner_equivalent(&a, &r11, &r13).unwrap();
    assert_eq!(report.verdict, Verdict::NotEquivalent);
    assert_eq!(report.obstruction, Some(Obstruction::CosetMismatch { at: 2, ratio: q("3") }));
    assert!(report.witness.is_none());
}

#[test]
fn coset_vector_normalisation_and_base_point_independence() {
    let (a, lambda) = diamond();
    let f = a.field();
    let e = |x: &str, y: &str| {
        EpsilonMap::new(&a, &lambda, [(1, q(x)), (2, q(y))].into_iter().collect()).unwrap()
    };
    let pairs = [(("1", "3"), ("5", "15")), (("1", "3"), ("3", "1")), (("1", "1"), ("1", "3")), (("2", "7"), ("-3", "5"))];
    for ((a1, b1), (a2, b2)) in pairs {
        let (e1, e2) = (e(a1, b1), e(a2, b2));
        let at_a = CosetVector::with_base(f, &e1, &e2, 1).unwrap();
        let at_b = CosetVector::with_base(f, &e1, &e2, 2).unwrap();
        assert_eq!(at_a.ratios[&1], q("1"));
        assert_eq!(at_b.ratios[&2], q("1"));
        assert_eq!(at_a.first_non_norm(f).unwrap().is_none(), at_b.first_non_norm(f).unwrap().is_none());
    }
    let v = CosetVector::new(f, &e("1", "3"), &e("5", "15")).unwrap();
    assert_eq!(v.base, 1);
    assert_eq!(v.ratios[&2], q("1"));
}

#[test]
fn empty_fixed_set_is_equivalent_to_canonical() {
    let a = IncidenceAlgebra::new(catalog::chain(4), GaussianRationals);
    let lambda = PosetMap::involution(a.poset(), vec![3, 2, 1, 0]).unwrap();
    let star = rho_lambda_star(&a, &lambda).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let w = random_symmetric_unit(&a, &star, &mut rng);
        let (rho, _) = twist(&a, &star, &w).unwrap();
        let report = inner_equivalent(&a, &rho, &star).unwrap();
        assert_checked(&a, &report, &rho, &star);
    }
}

#[test]
fn inner_test_requires_same_lambda() {
    let (a, lambda) = diamond();
    let other = PosetMap::involution(a.poset(), vec![3, 2, 1, 0]).unwrap();
    let r1 = rho_lambda_star(&a, &lambda).unwrap();
    let r2 = rho_lambda_star(&a, &other).unwrap();
    let report = inner_equivalent(&a, &r1, &r2).unwrap();
    assert_eq!(report.obstruction, Some(Obstruction::DifferentLambdaClass));
    let report = equivalent(&a, &r1, &r2).unwrap();
    assert_eq!(report.obstruction, Some(Obstruction::DifferentLambdaClass));
}

#[test]
fn first_kind_inputs() {
    let (a, lambda) = diamond();
    let images: Vec<_> = a.pairs().iter().map(|&(x, y)| a.basis(lambda.apply(y), lambda.apply(x)).unwrap()).collect();
    let first = InvolutionMap::from_images(&a, images, a.scalar(q("i"))).unwrap();
    let second = rho_lambda_star(&a, &lambda).unwrap();
    assert_eq!(inner_equivalent(&a, &first, &first), Err(ClassifyError::KindMismatch));
    assert_eq!(equivalent(&a, &first, &first), Err(ClassifyError::KindMismatch));
    let report = equivalent(&a, &first, &second).unwrap();
    assert_eq!(report.obstruction, Some(Obstruction::DifferentScalarAction));
}

#[test]
fn h1_obstruction_is_reported() {
    let a = IncidenceAlgebra::new(catalog::crown(), GaussianRationals);
    let lambda = PosetMap::involution(a.poset(), vec![2, 3, 0, 1]).unwrap();
    let star = rho_lambda_star(&a, &lambda).unwrap();
    let sigma = a.cocycle_from_covers(|x, y| if (x, y) == (0, 2) { q("2+i") } else { q("1") }).unwrap();
    let inv = a.validate_cocycle(sigma.values().iter().map(|v| a.field().inv(v).unwrap()).collect()).unwrap();
    let rho = star.conjugate_by(&a, |f| a.multiplicative(&sigma, f), |f| a.multiplicative(&inv, f));
    assert!(matches!(inner_equivalent(&a, &rho, &star), Err(ClassifyError::H1Obstruction { .. })));
}

#[test]
fn conjugation_by_poset_automorphisms() {
    let (a, lambda) = diamond();
    let r13 = rho_eps(&a, &lambda, "1", "3");
    assert!(conjugate_by_poset_auto(&a, &r13, &PosetMap::identity(a.poset())).same_map(&r13));
    let moved = conjugate_by_poset_auto(&a, &r13, &middle_swap(&a));
    assert!(moved.same_map(&rho_eps(&a, &lambda, "3", "1")));
    let star = rho_lambda_star(&a, &lambda).unwrap();
    assert!(conjugate_by_poset_auto(&a, &star, &middle_swap(&a)).same_map(&star));
}

#[test]
fn conjugating_epsilon_forms_relabels_epsilon() {
    let (a, lambda) = diamond();
    let values: BTreeMap<usize, GaussRat> = [(1, q("2")), (2, q("-5/7"))].into_iter().collect();
    let e = EpsilonMap::new(&a, &lambda, values).unwrap();
    let rho = build_rho_epsilon(&a, &lambda, &e).unwrap();
    for alpha in enumerate_automorphisms(a.poset()) {
        let conj_lambda = alpha.conjugate(&lambda);
        let expected = build_rho_epsilon(&a, &conj_lambda, &e.relabel(&alpha)).unwrap();
        assert!(conjugate_by_poset_auto(&a, &rho, &alpha).same_map(&expected));
    }
}

#[test]
fn general_equivalence_examples() {
    let (a, lambda) = diamond();
    let r13 = rho_eps(&a, &lambda, "1", "3");
    let r31 = rho_eps(&a, &lambda, "3", "1");
    let r11 = rho_eps(&a, &lambda, "1", "1");
    let report = equivalent(&a, &r13, &r31).unwrap();
    assert_checked(&a, &report, &r13, &r31);
    // The middle swap alone also works: the conjugate is ρ_{(1,3)} itself.
    let via_swap = Witness { alpha: middle_swap(&a), u: a.delta() };
    assert!(intertwines(&a, &via_swap, &r13, &r31).unwrap());

    let report = equivalent(&a, &r11, &r13).unwrap();
    assert_eq!(report.verdict, Verdict::NotEquivalent);
    assert_eq!(report.obstruction, Some(Obstruction::CosetMismatch { at: 2, ratio: q("3") }));
    let swapped = conjugate_by_poset_auto(&a, &r13, &middle_swap(&a));
    assert_eq!(
        inner_equivalent(&a, &r11, &swapped).unwrap().obstruction,
        Some(Obstruction::CosetMismatch { at: 2, ratio: q("1/3") })
    );
}

#[test]
fn single_fixed_point_chains_are_all_equivalent() {
    let a = IncidenceAlgebra::new(catalog::chain(3), GaussianRationals);
    let lambda = PosetMap::involution(a.poset(), vec![2, 1, 0]).unwrap();
    let star = rho_lambda_star(&a, &lambda).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let e: BTreeMap<usize, GaussRat> = [(1, a.field().random_k0_nonzero(&mut rng))].into_iter().collect();
        let rho_e = build_rho_epsilon(&a, &lambda, &EpsilonMap::new(&a, &lambda, e).unwrap()).unwrap();
        let w = random_symmetric_unit(&a, &rho_e, &mut rng);
        let (rho, _) = twist(&a, &rho_e, &w).unwrap();
        let w2 = random_symmetric_unit(&a, &star, &mut rng);
        let (other, _) = twist(&a, &star, &a.scale(&q("i"), &w2)).unwrap();
        let report = equivalent(&a, &rho, &other).unwrap();
        assert_checked(&a, &report, &rho, &other);
    }
}

#[test]
fn one_sided_inner_twists_exist_iff_lambda_and_action_agree() {
    let (a, lambda) = diamond();
    let other = PosetMap::involution(a.poset(), vec![3, 2, 1, 0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let star = rho_lambda_star(&a, &lambda).unwrap();
    let star_other = rho_lambda_star(&a, &other).unwrap();
    for _ in 0..5 {
        let (r1, _) = twist(&a, &star, &random_symmetric_unit(&a, &star, &mut rng)).unwrap();
        let (r2, _) = twist(&a, &star, &random_symmetric_unit(&a, &star, &mut rng)).unwrap();
        // Same λ and action: u = v₁·v₂⁻¹ from the symmetric normal forms.
        let v1 = symmetric_normal_form(&a, &r1).unwrap().v;
        let v2 = symmetric_normal_form(&a, &r2).unwrap().v;
        let u = a.mul(&v1, &a.invert(&v2).unwrap());
        assert!(twist(&a, &r2, &u).unwrap().0.same_map(&r1));
        // Any twist keeps the induced λ, so a different λ is never reached.
        let (r3, _) = twist(&a, &star_other, &random_symmetric_unit(&a, &star_other, &mut rng)).unwrap();
        let u = a.random_unit(&mut rng);
        if let Ok((t, _)) = twist(&a, &r3, &u) {
            assert_eq!(induced_poset_involution(&a, &t).unwrap(), other);
        }
        assert_ne!(induced_poset_involution(&a, &r1).unwrap(), other);
    }
}

#[test]
fn verdicts_form_an_equivalence_relation_over_gf9() {
    let field = Gfp2::new(3).unwrap();
    let a = IncidenceAlgebra::new(catalog::diamond(), field);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut rhos = Vec::new();
    for lambda in enumerate_involutions(a.poset()) {
        let star = rho_lambda_star(&a, &lambda).unwrap();
        for _ in 0..3 {
            rhos.push(twist(&a, &star, &random_symmetric_unit(&a, &star, &mut rng)).unwrap().0);
        }
    }
    let n = rhos.len();
    let rel: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| equivalent(&a, &rhos[i], &rhos[j]).unwrap().is_equivalent()).collect())
        .collect();
    for i in 0..n {
        assert!(rel[i][i]);
        for j in 0..n {
            assert_eq!(rel[i][j], rel[j][i]);
            for k in 0..n {
                assert!(!(rel[i][j] && rel[j][k]) || rel[i][k]);
            }
        }
    }
    // Necessity: inner verdicts imply equal λ.
    for i in 0..n {
        for j in 0..n {
            if inner_equivalent(&a, &rhos[i], &rhos[j]).unwrap().is_equivalent() {
                assert_eq!(induced_poset_involution(&a, &rhos[i]), induced_poset_involution(&a, &rhos[j]));
            }
        }
    }
}

#[test]
fn class_counts() {
    let gf9 = Gfp2::new(3).unwrap();
    let d = catalog::diamond();
    let lambda = PosetMap::involution(&d, vec![3, 1, 2, 0]).unwrap();
    assert_eq!(class_count(&d, &gf9, &lambda).unwrap(), ClassCount::Count(1));
    assert!(matches!(class_count(&d, &GaussianRationals, &lambda).unwrap(), ClassCount::InfiniteWithCriterion(_)));
    let c3 = catalog::chain(3);
    let rev = PosetMap::involution(&c3, vec![2, 1, 0]).unwrap();
    assert_eq!(class_count(&c3, &gf9, &rev).unwrap(), ClassCount::Count(1));
    // A single fixed point leaves nothing to compare, even over an infinite quotient.
    assert_eq!(class_count(&c3, &GaussianRationals, &rev).unwrap(), ClassCount::Count(1));
    let c2 = catalog::chain(2);
    let swap = PosetMap::involution(&c2, vec![1, 0]).unwrap();
    let count = class_count(&c2, &GaussianRationals, &swap).unwrap();
    assert_eq!(count, ClassCount::EmptyX3);
    assert_eq!(count.finite(), Some(1));
}
