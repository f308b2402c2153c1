//! Coboundary test and the first cohomology group `H¹(X, K^×)`.
//!
//! A cocycle is determined by its values on cover pairs, subject to every two
//! maximal chains of an interval having the same product. So cocycles are
//! `Hom(A, K^×)` with `A = Z^E / R` (`E` = cover pairs, `R` spanned by
//! differences of parallel cover paths). The boundary map `A → Z^V` sends a
//! cover `x ⋖ y` to `x − y`; for connected `X` its image is free of rank
//! `|V| − 1` and splits off, with coboundaries being exactly the characters
//! that factor through it. Hence, with invariant factors `dᵢ` of `R`,
//!
//! `H¹ ≅ (K^×)^r ⊕ ⊕ μ_{dᵢ}(K)`, `r = |E| − rank R − (|V| − 1)`,
//!
//! and `|μ_d(K)| = gcd(d, |μ(K)|)` because the roots of unity of `K` form a
//! finite cyclic group. This identification is cross-checked in the tests by
//! exhaustive cocycle enumeration over `GF(3²)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{smith_invariants, AlgebraError, Cocycle, IncidenceAlgebra};
use crate::field::InvolutiveField;
use crate::poset::FinitePoset;

/// Outcome of the coboundary test for a cocycle `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryVerdict<E> {
    /// `σ(x, y) = c(x) c(y)⁻¹`; then `M_σ = Ψ_d` for the diagonal unit `d = c`.
    Coboundary { c: Vec<E> },
    /// A closed walk `x₀, x₁, …, x₀` in the comparability graph whose oriented
    /// `σ`-product (σ(a,b) for a ≤ b, σ(b,a)⁻¹ otherwise) is not 1.
    Obstruction { walk: Vec<usize>, product: E },
}

impl<E> CoboundaryVerdict<E> {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryVerdict::Coboundary { .. })
    }
}

/// Spanning-tree propagation over the comparability graph (one tree per
/// component), followed by a check of every comparable pair.
pub fn is_coboundary<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, sigma: &Cocycle<F::Elem>) -> CoboundaryVerdict<F::Elem> {
    let field = alg.field();
    let poset = alg.poset();
    let n = poset.len();
    let s = |x: usize, y: usize| &sigma.values()[alg.idx(x, y)];
    let mut c: Vec<Option<F::Elem>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if c[root].is_some() {
            continue;
        }
        c[root] = Some(field.one());
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let cx = c[x].clone().expect("visited");
            for y in 0..n {
                if y == x || c[y].is_some() || !poset.comparable(x, y) {
                    continue;
                }
                let cy = if poset.leq(x, y) {
                    field.div(&cx, s(x, y)).expect("cocycle values are nonzero")
                } else {
                    field.mul(s(y, x), &cx)
                };
                c[y] = Some(cy);
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let c: Vec<F::Elem> = c.into_iter().map(|v| v.expect("every vertex reached")).collect();
    for &(x, y) in alg.pairs() {
        if x == y {
            continue;
        }
        let expected = field.div(&c[x], &c[y]).expect("nonzero");
        if *s(x, y) != expected {
            let path_to_root = |mut v: usize| {
                let mut p = vec![v];
                while parent[v] != usize::MAX {
                    v = parent[v];
                    p.push(v);
                }
                p
            };
            let mut walk: Vec<usize> = path_to_root(x).into_iter().rev().collect();
            walk.extend(path_to_root(y));
            let mut product = field.one();
            for w in walk.windows(2) {
                let (a, b) = (w[0], w[1]);
                let factor = if poset.leq(a, b) {
                    s(a, b).clone()
                } else {
                    field.inv(s(b, a)).expect("nonzero")
                };
                product = field.mul(&product, &factor);
            }
            return CoboundaryVerdict::Obstruction { walk, product };
        }
    }
    CoboundaryVerdict::Coboundary { c }
}

/// The integer data of `H¹(X, −)` for a connected poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Presentation {
    pub vertices: usize,
    pub cover_edges: Vec<(usize, usize)>,
    /// Number of path-difference relations.
    pub relations: usize,
    pub relation_rank: usize,
    /// `r` in `(K^×)^r`.
    pub free_rank: usize,
    /// Invariant factors `dᵢ > 1` of the relation lattice.
    pub torsion: Vec<BigInt>,
}

pub fn h1_presentation(poset: &FinitePoset) -> Result<H1Presentation, AlgebraError> {
    if !poset.is_connected() {
        return Err(AlgebraError::Disconnected);
    }
    let covers = poset.cover_pairs();
    let edge_of = |a: usize, b: usize| covers.iter().position(|&e| e == (a, b)).expect("cover edge");
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (x, y) in poset.comparable_pairs() {
        if x == y {
            continue;
        }
        let paths = cover_paths(poset, &covers, x, y);
        let vectors: Vec<Vec<BigInt>> = paths
            .iter()
            .map(|p| {
                let mut v = vec![BigInt::zero(); covers.len()];
                for w in p.windows(2) {
                    v[edge_of(w[0], w[1])] += 1;
                }
                v
            })
            .collect();
        for v in vectors.iter().skip(1) {
            rows.push(v.iter().zip(&vectors[0]).map(|(a, b)| a - b).collect());
        }
    }
    let relations = rows.len();
    let invariants = if rows.is_empty() { Vec::new() } else { smith_invariants(rows) };
    let relation_rank = invariants.len();
    let free_rank = covers.len() - relation_rank - (poset.len() - 1);
    Ok(H1Presentation {
        vertices: poset.len(),
        cover_edges: covers,
        relations,
        relation_rank,
        free_rank,
        torsion: invariants.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// All maximal chains of `[x, y]`, as vertex sequences.
fn cover_paths(poset: &FinitePoset, covers: &[(usize, usize)], x: usize, y: usize) -> Vec<Vec<usize>> {
    if x == y {
        return vec![vec![y]];
    }
    let mut out = Vec::new();
    for &(a, z) in covers {
        if a == x && poset.leq(z, y) {
            for mut tail in cover_paths(poset, covers, z, y) {
                tail.insert(0, x);
                out.push(tail);
            }
        }
    }
    out
}

/// `H¹(X, K^×)` for a concrete field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub presentation: H1Presentation,
    /// `|μ(K)|`.
    pub roots_of_unity: u64,
    /// `∏ gcd(dᵢ, |μ(K)|)`: the order of the torsion part of `H¹`.
    pub torsion_order: BigUint,
    /// `|H¹|` when `K` is finite.
    pub order: Option<BigUint>,
    pub trivial: bool,
}

pub fn h1_trivial<F: InvolutiveField>(poset: &FinitePoset, field: &F) -> Result<H1Report, AlgebraError> {
    let presentation = h1_presentation(poset)?;
    let m = BigInt::from(field.roots_of_unity_order());
    let torsion_order = presentation
        .torsion
        .iter()
        .fold(BigUint::one(), |acc, d| acc * d.gcd(&m).magnitude().clone());
    let order = field.elements().map(|elems| {
        let units = BigUint::from(elems.len() as u64 - 1);
        units.pow(presentation.free_rank as u32) * &torsion_order
    });
    let trivial = presentation.free_rank == 0 && torsion_order.is_one();
    Ok(H1Report {
        presentation,
        roots_of_unity: field.roots_of_unity_order(),
        torsion_order,
        order,
        trivial,
    })
}

/// Search bound for [`non_coboundary_cocycle`]: `3^|E|` cover assignments.
const WITNESS_MAX_EDGES: usize = 12;

/// An explicit cocycle that is not a coboundary, searched over cover
/// assignments `w^e` with `e ∈ {0, 1, −1}` for a few candidate values `w`
/// (a non-torsion element, `−1`, `i`, and for finite fields a generator and
/// roots of unity of the torsion orders). `None` when the search finds none
/// (which is the case whenever `H¹` is trivial).
pub fn non_coboundary_cocycle<F: InvolutiveField>(alg: &IncidenceAlgebra<F>) -> Option<Cocycle<F::Elem>> {
    let field = alg.field();
    let covers = alg.poset().cover_pairs();
    if covers.len() > WITNESS_MAX_EDGES {
        return None;
    }
    let mut candidates = Vec::new();
    match field.multiplicative_generator() {
        Some(g) => {
            let m = field.roots_of_unity_order();
            candidates.push(g.clone());
            if let Ok(p) = h1_presentation(alg.poset()) {
                for d in &p.torsion {
                    let d = d.to_u64().unwrap_or(1);
                    let k = m / d.gcd(&m);
                    candidates.push(field.pow(&g, k));
                }
            }
        }
        None => candidates.push(field.from_i64(2)),
    }
    candidates.push(field.neg(&field.one()));
    candidates.push(field.i());
    let total = 3usize.pow(covers.len() as u32);
    for w in &candidates {
        let w_inv = field.inv(w)?;
        for code in 1..total {
            let mut digits = code;
            let exps: Vec<usize> = (0..covers.len())
                .map(|_| {
                    let d = digits % 3;
                    digits /= 3;
                    d
                })
                .collect();
            let value = |a: usize, b: usize| {
                let e = covers.iter().position(|&c| c == (a, b)).expect("cover");
                match exps[e] {
                    0 => field.one(),
                    1 => w.clone(),
                    _ => w_inv.clone(),
                }
            };
            if let Ok(sigma) = alg.cocycle_from_covers(value) {
                if !is_coboundary(alg, &sigma).is_coboundary() {
                    return Some(sigma);
                }
            }
        }
    }
    None
}

/// Every cocycle over a finite field, or `None` when `|K^×|^|E|` exceeds `cap`.
pub fn enumerate_cocycles<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, cap: u64) -> Option<Vec<Cocycle<F::Elem>>> {
    let units: Vec<F::Elem> = alg.field().elements()?.into_iter().filter(|x| !alg.field().is_zero(x)).collect();
    let covers = alg.poset().cover_pairs();
    let total = (units.len() as u64).checked_pow(covers.len() as u32)?;
    if total > cap {
        return None;
    }
    let mut out = Vec::new();
    for code in 0..total {
        let mut digits = code;
        let choice: Vec<usize> = (0..covers.len())
            .map(|_| {
                let d = (digits % units.len() as u64) as usize;
                digits /= units.len() as u64;
                d
            })
            .collect();
        let value = |a: usize, b: usize| units[choice[covers.iter().position(|&c| c == (a, b)).expect("cover")]].clone();
        if let Ok(sigma) = alg.cocycle_from_covers(value) {
            out.push(sigma);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{GaussianRationals, Gfp2};
    use crate::poset::catalog;

    #[test]
    fn trivial_cocycle_is_a_coboundary() {
        let a = IncidenceAlgebra::new(catalog::diamond(), GaussianRationals);
        match is_coboundary(&a, &a.trivial_cocycle()) {
            CoboundaryVerdict::Coboundary { c } => assert!(c.iter().all(|v| a.field().is_one(v))),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coboundary_witness_absorbs_the_multiplicative_map() {
        let a = IncidenceAlgebra::new(catalog::diamond(), GaussianRationals);
        let f = a.field();
        let sigma = a
            .cocycle_from_covers(|x, y| {
                // 0 < a < 1 carries (3+i)·(1/2), 0 < b < 1 carries 5·(3+i)/10.
                let v = match (x, y) {
                    (0, 1) => "3+i",
                    (1, 3) => "1/2",
                    (0, 2) => "5",
                    _ => "3/10+1/10i",
                };
                f.parse(v).unwrap()
            })
            .unwrap();
        let CoboundaryVerdict::Coboundary { c } = is_coboundary(&a, &sigma) else {
            panic!("every diamond cocycle is a coboundary");
        };
        let d = a.diagonal_unit(&c);
        for k in 0..a.dimension() {
            let e = a.basis_at(k);
            assert_eq!(a.inner(&d, &e).unwrap(), a.multiplicative(&sigma, &e));
        }
    }

    #[test]
    fn crown_cocycle_is_obstructed() {
        let a = IncidenceAlgebra::new(catalog::crown(), GaussianRationals);
        let f = a.field();
        let t = f.from_i64(5);
        let sigma = a.cocycle_from_fn(|x, y| if (x, y) == (0, 2) { t.clone() } else { f.one() }).unwrap();
        match is_coboundary(&a, &sigma) {
            CoboundaryVerdict::Obstruction { walk, product } => {
                assert_eq!(walk.first(), walk.last());
                assert!(!f.is_one(&product));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn presentations() {
        let diamond = h1_presentation(&catalog::diamond()).unwrap();
        assert_eq!((diamond.free_rank, diamond.torsion.len()), (0, 0));
        let crown = h1_presentation(&catalog::crown()).unwrap();
        assert_eq!((crown.free_rank, crown.torsion.len()), (1, 0));
        for n in 1..=5 {
            assert_eq!(h1_presentation(&catalog::chain(n)).unwrap().free_rank, 0);
        }
        assert_eq!(h1_presentation(&catalog::fence()).unwrap().free_rank, 0);
        let two = catalog::chain(2).disjoint_union(&catalog::chain(1), "'");
        assert_eq!(h1_presentation(&two), Err(AlgebraError::Disconnected));
    }

    #[test]
    fn verdicts_over_both_fields() {
        let qi = GaussianRationals;
        let gf9 = Gfp2::new(3).unwrap();
        assert!(h1_trivial(&catalog::diamond(), &qi).unwrap().trivial);
        assert!(!h1_trivial(&catalog::crown(), &qi).unwrap().trivial);
        assert!(h1_trivial(&catalog::fence(), &gf9).unwrap().trivial);
        assert_eq!(h1_trivial(&catalog::crown(), &gf9).unwrap().order, Some(BigUint::from(8u32)));
    }

    #[test]
    fn crown_witness_is_explicit() {
        let a = IncidenceAlgebra::new(catalog::crown(), GaussianRationals);
        let sigma = non_coboundary_cocycle(&a).expect("crown has nontrivial H¹");
        assert!(!is_coboundary(&a, &sigma).is_coboundary());
        let d = IncidenceAlgebra::new(catalog::diamond(), GaussianRationals);
        assert!(non_coboundary_cocycle(&d).is_none());
    }

    /// |cocycles| / |coboundaries| must equal the predicted |H¹| on every
    /// connected poset with at most four elements over GF(3²).
    #[test]
    fn presentation_matches_exhaustive_count_over_gf9() {
        let field = Gfp2::new(3).unwrap();
        for n in 1..=4 {
            for p in catalog::connected_posets(n) {
                let a = IncidenceAlgebra::new(p.clone(), field);
                let cocycles = enumerate_cocycles(&a, 1 << 20).unwrap();
                let coboundaries = cocycles.iter().filter(|s| is_coboundary(&a, s).is_coboundary()).count();
                assert_eq!(coboundaries as u64, 8u64.pow(n as u32 - 1), "{p:?}");
                let report = h1_trivial(&p, &field).unwrap();
                let ratio = BigUint::from((cocycles.len() / coboundaries) as u64);
                assert_eq!(cocycles.len() % coboundaries, 0);
                assert_eq!(Some(ratio), report.order, "{p:?}");
                assert_eq!(report.trivial, cocycles.len() == coboundaries);
                assert_eq!(non_coboundary_cocycle(&a).is_some(), !report.trivial, "{p:?}");
            }
        }
    }
}
