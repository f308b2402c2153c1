//! Named test posets and exhaustive generation of small connected posets.

use std::collections::BTreeSet;

use super::FinitePoset;

fn build(elements: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
    FinitePoset::from_covers(elements, covers).expect("catalog posets are valid")
}

/// `1 < 2 < … < n`.
pub fn chain(n: usize) -> FinitePoset {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let covers: Vec<(String, String)> = (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
    FinitePoset::from_covers(&labels, &covers).expect("chains are valid")
}

/// `0 < a, b < 1`.
pub fn diamond() -> FinitePoset {
    build(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
}

/// `1 < 2, 1 < 3`.
pub fn vee() -> FinitePoset {
    build(&["1", "2", "3"], &[("1", "2"), ("1", "3")])
}

/// `x, y < a, b`: the smallest poset whose multiplicative automorphisms are
/// not all inner.
pub fn crown() -> FinitePoset {
    build(
        &["x", "y", "a", "b"],
        &[("x", "a"), ("x", "b"), ("y", "a"), ("y", "b")],
    )
}

/// Zigzag `1 < 2 > 3 < 4`.
pub fn fence() -> FinitePoset {
    build(&["1", "2", "3", "4"], &[("1", "2"), ("3", "2"), ("3", "4")])
}

/// Every connected poset on `n` elements, one per isomorphism class, labelled
/// `1..=n`, in a fixed order.
pub fn connected_posets(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 6, "exhaustive generation is meant for tiny posets");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut rel = vec![false; n * n];
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !rel[i * n + j] || (0..n).all(|k| !rel[j * n + k] || rel[i * n + k]))
        });
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| code(&rel, n, p))
            .min()
            .expect("at least one permutation");
        seen.insert(canon);
    }
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    seen.into_iter()
        .map(|c| {
            let mut leq = vec![false; n * n];
            for i in 0..n {
                leq[i * n + i] = true;
                for j in 0..n {
                    if c >> (i * n + j) & 1 == 1 {
                        leq[i * n + j] = true;
                    }
                }
            }
            FinitePoset::from_relation(labels.clone(), leq).expect("generated relation is an order")
        })
        .filter(FinitePoset::is_connected)
        .collect()
}

fn code(rel: &[bool], n: usize, perm: &[usize]) -> u64 {
    let mut c = 0u64;
    for i in 0..n {
        for j in 0..n {
            if rel[i * n + j] {
                c |= 1 << (perm[i] * n + perm[j]);
            }
        }
    }
    c
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap(n, &mut cur, &mut out);
    out
}

fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_poset_counts() {
        // Unlabelled connected posets: 1, 1, 3, 10, 44.
        let counts: Vec<usize> = (1..=5).map(|n| connected_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 10, 44]);
    }

    #[test]
    fn named_posets() {
        assert_eq!(chain(4).cover_pairs().len(), 3);
        assert_eq!(crown().cover_pairs().len(), 4);
        assert!(fence().is_connected());
        assert_eq!(diamond().comparable_pairs().len(), 9);
    }
}
