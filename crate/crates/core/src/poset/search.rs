use super::{FinitePoset, MapKind, PosetMap};

/// All order automorphisms, in lexicographic order of their image vectors.
///
/// Backtracking over elements in index order; a candidate image must have the
/// same down/up degree and agree with every relation to elements already
/// placed.
pub fn enumerate_automorphisms(poset: &FinitePoset) -> Vec<PosetMap> {
    let n = poset.len();
    let sig: Vec<(usize, usize)> = (0..n).map(|x| (poset.down_degree(x), poset.up_degree(x))).collect();
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut out = Vec::new();
    auto_step(poset, &sig, 0, &mut images, &mut used, &mut out);
    out
}

fn auto_step(
    poset: &FinitePoset,
    sig: &[(usize, usize)],
    x: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<PosetMap>,
) {
    let n = poset.len();
    if x == n {
        out.push(PosetMap::from_parts_unchecked(images.clone(), MapKind::Automorphism));
        return;
    }
    for y in 0..n {
        if used[y] || sig[x] != sig[y] {
            continue;
        }
        let consistent = (0..x).all(|w| {
            poset.leq(w, x) == poset.leq(images[w], y) && poset.leq(x, w) == poset.leq(y, images[w])
        });
        if !consistent {
            continue;
        }
        images[x] = y;
        used[y] = true;
        auto_step(poset, sig, x + 1, images, used, out);
        used[y] = false;
        images[x] = usize::MAX;
    }
}

/// All order-reversing involutions `λ` (`λ² = id`, `x ≤ y ⟺ λ(y) ≤ λ(x)`).
/// Empty when the poset is not self-dual.
pub fn enumerate_involutions(poset: &FinitePoset) -> Vec<PosetMap> {
    let n = poset.len();
    let down: Vec<usize> = (0..n).map(|x| poset.down_degree(x)).collect();
    let up: Vec<usize> = (0..n).map(|x| poset.up_degree(x)).collect();
    let mut images = vec![usize::MAX; n];
    let mut out = Vec::new();
    inv_step(poset, &down, &up, 0, &mut images, &mut out);
    out
}

fn inv_step(
    poset: &FinitePoset,
    down: &[usize],
    up: &[usize],
    x: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<PosetMap>,
) {
    let n = poset.len();
    if x == n {
        out.push(PosetMap::from_parts_unchecked(images.clone(), MapKind::Involution));
        return;
    }
    if images[x] != usize::MAX {
        inv_step(poset, down, up, x + 1, images, out);
        return;
    }
    for y in x..n {
        if images[y] != usize::MAX || down[x] != up[y] || up[x] != down[y] {
            continue;
        }
        images[x] = y;
        images[y] = x;
        let consistent = (0..n).filter(|&w| images[w] != usize::MAX).all(|w| {
            [x, y].iter().all(|&z| {
                poset.leq(w, z) == poset.leq(images[z], images[w])
                    && poset.leq(z, w) == poset.leq(images[w], images[z])
            })
        });
        if consistent {
            inv_step(poset, down, up, x + 1, images, out);
        }
        images[x] = usize::MAX;
        images[y] = usize::MAX;
    }
}

/// First automorphism `α` (in enumeration order) with `α ∘ λ₂ = λ₁ ∘ α`.
pub fn poset_involutions_equivalent(
    poset: &FinitePoset,
    lambda1: &PosetMap,
    lambda2: &PosetMap,
) -> Option<PosetMap> {
    enumerate_automorphisms(poset)
        .into_iter()
        .find(|alpha| alpha.compose(lambda2) == lambda1.compose(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::catalog;

    fn all_bijections(n: usize) -> Vec<Vec<usize>> {
        fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n {
                out.push(cur.clone());
                return;
            }
            for y in 0..n {
                if !cur.contains(&y) {
                    cur.push(y);
                    rec(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn chain_is_rigid() {
        let autos = enumerate_automorphisms(&catalog::chain(3));
        assert_eq!(autos.len(), 1);
        assert!(autos[0].is_identity());
    }

    #[test]
    fn diamond_has_two_automorphisms() {
        let d = catalog::diamond();
        let autos = enumerate_automorphisms(&d);
        let brute: Vec<_> = all_bijections(4)
            .into_iter()
            .filter(|b| PosetMap::automorphism(&d, b.clone()).is_ok())
            .collect();
        assert_eq!(brute.len(), 2);
        assert_eq!(autos.iter().map(|a| a.images().to_vec()).collect::<Vec<_>>(), brute);
    }

    #[test]
    fn antichain_has_both_bijections() {
        let p = FinitePoset::from_covers::<&str>(&["x", "y"], &[]).unwrap();
        assert_eq!(enumerate_automorphisms(&p).len(), 2);
    }

    #[test]
    fn chain_involutions() {
        let two = enumerate_involutions(&catalog::chain(2));
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].images(), &[1, 0]);
        let three = enumerate_involutions(&catalog::chain(3));
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].images(), &[2, 1, 0]);
        assert_eq!(three[0].fixed_points(), vec![1]);
    }

    #[test]
    fn vee_is_not_self_dual() {
        assert!(enumerate_involutions(&catalog::vee()).is_empty());
    }

    #[test]
    fn search_matches_brute_force_on_small_posets() {
        for n in 1..=5 {
            for p in catalog::connected_posets(n) {
                let brute_auto: Vec<_> = all_bijections(n)
                    .into_iter()
                    .filter(|b| PosetMap::automorphism(&p, b.clone()).is_ok())
                    .collect();
                let found: Vec<_> = enumerate_automorphisms(&p).iter().map(|a| a.images().to_vec()).collect();
                assert_eq!(found, brute_auto, "{p:?}");
                let mut brute_inv: Vec<_> = all_bijections(n)
                    .into_iter()
                    .filter(|b| PosetMap::involution(&p, b.clone()).is_ok())
                    .collect();
                brute_inv.sort();
                let mut found: Vec<_> = enumerate_involutions(&p).iter().map(|a| a.images().to_vec()).collect();
                found.sort();
                assert_eq!(found, brute_inv, "{p:?}");
            }
        }
    }

    #[test]
    fn automorphisms_form_a_group() {
        for n in 1..=5 {
            for p in catalog::connected_posets(n) {
                let autos = enumerate_automorphisms(&p);
                let set: std::collections::HashSet<Vec<usize>> =
                    autos.iter().map(|a| a.images().to_vec()).collect();
                for a in &autos {
                    assert!(set.contains(a.inverse().images()));
                    for b in &autos {
                        assert!(set.contains(&a.compose(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn diamond_involutions_are_equivalent_via_middle_swap() {
        let d = catalog::diamond();
        let invs = enumerate_involutions(&d);
        assert_eq!(invs.len(), 2);
        let fixing = invs.iter().find(|l| l.fixed_points() == vec![1, 2]).unwrap();
        let swap = PosetMap::automorphism(&d, vec![0, 2, 1, 3]).unwrap();
        let twisted = PosetMap::involution(&d, fixing.compose(&swap)).unwrap();
        assert_eq!(twisted.fixed_points(), Vec::<usize>::new());
        // Different fixed-point counts, so no automorphism can relate them.
        assert!(poset_involutions_equivalent(&d, fixing, &twisted).is_none());
        let same = poset_involutions_equivalent(&d, fixing, fixing).unwrap();
        assert!(same.is_identity());
        // Conjugating by the middle swap relates λ to α∘λ∘α⁻¹ (here equal to λ).
        let conj = swap.conjugate(fixing);
        let alpha = poset_involutions_equivalent(&d, fixing, &conj).unwrap();
        assert_eq!(alpha.compose(&conj), fixing.compose(&alpha));
    }

    #[test]
    fn equivalent_involutions_have_equal_fixed_point_counts() {
        for n in 1..=5 {
            for p in catalog::connected_posets(n) {
                let invs = enumerate_involutions(&p);
                for l1 in &invs {
                    for l2 in &invs {
                        if poset_involutions_equivalent(&p, l1, l2).is_some() {
                            assert_eq!(l1.fixed_points().len(), l2.fixed_points().len());
                        }
                    }
                }
            }
        }
    }
}
