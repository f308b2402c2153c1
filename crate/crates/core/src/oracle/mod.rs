//! Brute-force ground truth over tiny posets and finite fields.
//!
//! Involutions are enumerated as `Ψ_u∘ρ_λ^*` over all poset involutions `λ`
//! and all `ρ_λ^*`-symmetric units `u` up to `K₀^×`-scaling. Every
//! second-kind involution has this form when `H¹` is trivial; this is the one
//! structural fact the oracle relies on, so every produced map is validated
//! independently and the sweep is cross-checked against the raw
//! "`ρ_λ^*(u) = k·u`" sweep and, on the one-point poset, against a sweep of
//! all additive maps.

mod theorems;

pub use theorems::{verify_theorems, TheoremRecord, TheoremStatus};

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::algebra::{h1_trivial, AlgebraError, AlgebraElement, Cocycle, IncidenceAlgebra};
use crate::classify::ClassifyError;
use crate::field::InvolutiveField;
use crate::involution::{is_involution, rho_lambda_star, twist, InvolutionError, InvolutionMap};
use crate::poset::{enumerate_automorphisms, enumerate_involutions, poset_involutions_equivalent, PosetMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("the oracle needs a finite field")]
    InfiniteField,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("H¹(X, K^×) is nontrivial ({0}); the sweep would not be exhaustive")]
    H1Obstruction(String),
    #[error("enumeration is inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Limits keeping every oracle run at desk scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_poset_size: usize,
    pub max_field_size: u64,
    /// Cap on the number of units (or automorphisms) a single sweep visits.
    pub max_units: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_poset_size: 5, max_field_size: 49, max_units: 500_000 }
    }
}

impl EnumerationBudget {
    /// The field's elements, after checking the instance fits.
    pub fn admit<F: InvolutiveField>(&self, alg: &IncidenceAlgebra<F>) -> Result<Vec<F::Elem>, OracleError> {
        let elements = alg.field().elements().ok_or(OracleError::InfiniteField)?;
        if alg.poset().len() > self.max_poset_size {
            return Err(OracleError::BudgetExceeded(format!(
                "poset has {} elements, limit {}",
                alg.poset().len(),
                self.max_poset_size
            )));
        }
        if elements.len() as u64 > self.max_field_size {
            return Err(OracleError::BudgetExceeded(format!(
                "field has {} elements, limit {}",
                elements.len(),
                self.max_field_size
            )));
        }
        Ok(elements)
    }

    fn check_count(&self, what: &str, count: Option<u64>) -> Result<u64, OracleError> {
        match count {
            Some(n) if n <= self.max_units => Ok(n),
            _ => Err(OracleError::BudgetExceeded(format!(
                "{what}: {} exceeds the cap of {}",
                count.map_or("more than 2^64".to_string(), |n| n.to_string()),
                self.max_units
            ))),
        }
    }
}

/// Mixed-radix counter over per-slot choice lists, last slot fastest.
struct Odometer<E> {
    choices: Vec<Vec<E>>,
    digits: Vec<usize>,
    done: bool,
}

impl<E: Clone> Odometer<E> {
    fn new(choices: Vec<Vec<E>>) -> Self {
        let done = choices.iter().any(|c| c.is_empty());
        let digits = vec![0; choices.len()];
        Odometer { choices, digits, done }
    }

    fn count(choices: &[Vec<E>]) -> Option<u64> {
        choices.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
    }
}

impl<E: Clone> Iterator for Odometer<E> {
    type Item = Vec<E>;

    fn next(&mut self) -> Option<Vec<E>> {
        if self.done {
            return None;
        }
        let current = self.digits.iter().zip(&self.choices).map(|(&d, c)| c[d].clone()).collect();
        let mut slot = self.digits.len();
        loop {
            if slot == 0 {
                self.done = true;
                break;
            }
            slot -= 1;
            self.digits[slot] += 1;
            if self.digits[slot] < self.choices[slot].len() {
                break;
            }
            self.digits[slot] = 0;
        }
        Some(current)
    }
}

/// Streams every unit of `FI(X, K)` (nonzero diagonal, arbitrary elsewhere)
/// in a fixed order: coefficient vectors in pair order, odometer style.
pub struct UnitStream<'a, F: InvolutiveField> {
    alg: &'a IncidenceAlgebra<F>,
    inner: Odometer<F::Elem>,
    count: u64,
}

impl<'a, F: InvolutiveField> UnitStream<'a, F> {
    pub fn total(&self) -> u64 {
        self.count
    }
}

impl<'a, F: InvolutiveField> Iterator for UnitStream<'a, F> {
    type Item = AlgebraElement<F::Elem>;

    fn next(&mut self) -> Option<Self::Item> {
        let coeffs = self.inner.next()?;
        Some(self.alg.from_coeffs(coeffs).expect("one coefficient per pair"))
    }
}

fn unit_choices<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, elements: &[F::Elem], pin: Option<usize>) -> Vec<Vec<F::Elem>> {
    let field = alg.field();
    let nonzero: Vec<F::Elem> = elements.iter().filter(|c| !field.is_zero(c)).cloned().collect();
    alg.pairs()
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| {
            if Some(k) == pin {
                vec![field.one()]
            } else if x == y {
                nonzero.clone()
            } else {
                elements.to_vec()
            }
        })
        .collect()
}

/// All units. Errors when the count exceeds the budget.
pub fn enumerate_units<'a, F: InvolutiveField>(
    alg: &'a IncidenceAlgebra<F>,
    budget: &EnumerationBudget,
) -> Result<UnitStream<'a, F>, OracleError> {
    let elements = budget.admit(alg)?;
    let choices = unit_choices(alg, &elements, None);
    let count = budget.check_count("units", Odometer::count(&choices))?;
    Ok(UnitStream { alg, inner: Odometer::new(choices), count })
}

/// All units with `u(x₀, x₀) = 1` for the first element `x₀`: one
/// representative of each class modulo scalars, hence of each inner
/// automorphism.
pub fn enumerate_normalized_units<'a, F: InvolutiveField>(
    alg: &'a IncidenceAlgebra<F>,
    budget: &EnumerationBudget,
) -> Result<UnitStream<'a, F>, OracleError> {
    let elements = budget.admit(alg)?;
    let pin = alg.pair_index(0, 0);
    let choices = unit_choices(alg, &elements, pin);
    let count = budget.check_count("normalised units", Odometer::count(&choices))?;
    Ok(UnitStream { alg, inner: Odometer::new(choices), count })
}

/// `c` is the chosen representative of `c·K₀^×`: its first nonzero `K₀`
/// coordinate is 1.
fn is_scale_representative<F: InvolutiveField>(field: &F, c: &F::Elem) -> bool {
    let (re, im) = field.k0_parts(c);
    if field.is_zero(&re) {
        field.is_one(&im)
    } else {
        field.is_one(&re)
    }
}

/// Streams every unit `u` with `ρ_λ^*(u) = u`. The pairs split into orbits
/// of `(x, y) ↦ (λy, λx)`; a two-element orbit takes any value and its
/// conjugate, a fixed pair takes a value in `K₀`. With `normalized`, the
/// first diagonal orbit's value is restricted to representatives of `K₀^×`-cosets,
/// so each inner automorphism `Ψ_u` appears once.
pub fn enumerate_symmetric_units<'a, F: InvolutiveField>(
    alg: &'a IncidenceAlgebra<F>,
    lambda: &PosetMap,
    normalized: bool,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = AlgebraElement<F::Elem>> + 'a, OracleError> {
    let elements = budget.admit(alg)?;
    let field = alg.field();
    let mirror: Vec<usize> = alg
        .pairs()
        .iter()
        .map(|&(x, y)| alg.pair_index(lambda.apply(y), lambda.apply(x)).expect("λ reverses order"))
        .collect();
    let reps: Vec<usize> = (0..mirror.len()).filter(|&k| k <= mirror[k]).collect();
    // Scale on a diagonal orbit, whose value is never zero.
    let scale_slot = reps.iter().position(|&k| alg.pairs()[k].0 == alg.pairs()[k].1);
    let choices: Vec<Vec<F::Elem>> = reps
        .iter()
        .enumerate()
        .map(|(slot, &k)| {
            let (x, y) = alg.pairs()[k];
            elements
                .iter()
                .filter(|c| !(x == y && field.is_zero(c)))
                .filter(|c| mirror[k] != k || field.is_in_k0(c))
                .filter(|c| !(normalized && Some(slot) == scale_slot) || is_scale_representative(field, c))
                .cloned()
                .collect()
        })
        .collect();
    budget.check_count("symmetric units", Odometer::count(&choices))?;
    Ok(Odometer::new(choices).map(move |values| {
        let mut coeffs = vec![field.zero(); mirror.len()];
        for (&k, v) in reps.iter().zip(values) {
            coeffs[mirror[k]] = field.star(&v);
            coeffs[k] = v;
        }
        alg.from_coeffs(coeffs).expect("one coefficient per pair")
    }))
}

/// One enumerated involution `ρ = Ψ_u∘ρ_λ^*`.
#[derive(Clone, Debug)]
pub struct EnumeratedInvolution<E> {
    pub lambda: PosetMap,
    pub unit: AlgebraElement<E>,
    pub rho: InvolutionMap<E>,
}

fn map_key<E: Hash>(rho: &InvolutionMap<E>) -> u64 {
    let mut h = DefaultHasher::new();
    rho.hash(&mut h);
    h.finish()
}

/// Exact lookup of involutions by their spanning-set data.
struct MapIndex {
    buckets: HashMap<u64, Vec<usize>>,
}

impl MapIndex {
    fn new() -> Self {
        MapIndex { buckets: HashMap::new() }
    }

    fn find<E: Hash + Clone + PartialEq>(&self, list: &[EnumeratedInvolution<E>], rho: &InvolutionMap<E>) -> Option<usize> {
        self.buckets.get(&map_key(rho))?.iter().copied().find(|&j| list[j].rho.same_map(rho))
    }

    fn insert<E: Hash>(&mut self, rho: &InvolutionMap<E>, index: usize) {
        self.buckets.entry(map_key(rho)).or_default().push(index);
    }
}

fn require_trivial_h1<F: InvolutiveField>(alg: &IncidenceAlgebra<F>) -> Result<(), OracleError> {
    let report = h1_trivial(alg.poset(), alg.field())?;
    if report.trivial {
        Ok(())
    } else {
        let order = report.order.map_or("infinite".to_string(), |o| format!("order {o}"));
        Err(OracleError::H1Obstruction(order))
    }
}

/// Every second-kind involution, without duplicates, grouped by `λ` in
/// enumeration order. Each map is validated with [`is_involution`].
pub fn enumerate_second_kind_involutions<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    budget: &EnumerationBudget,
) -> Result<Vec<EnumeratedInvolution<F::Elem>>, OracleError> {
    budget.admit(alg)?;
    require_trivial_h1(alg)?;
    let mut out: Vec<EnumeratedInvolution<F::Elem>> = Vec::new();
    let mut index = MapIndex::new();
    for lambda in enumerate_involutions(alg.poset()) {
        let star = rho_lambda_star(alg, &lambda)?;
        for unit in enumerate_symmetric_units(alg, &lambda, true, budget)? {
            let (rho, _) = twist(alg, &star, &unit)?;
            if let Err(defect) = is_involution(alg, &rho) {
                return Err(OracleError::Inconsistent(format!("Ψ_u∘ρ_λ^* is not an involution: {defect:?}")));
            }
            if index.find(&out, &rho).is_none() {
                index.insert(&rho, out.len());
                out.push(EnumeratedInvolution { lambda: lambda.clone(), unit, rho });
            }
        }
    }
    Ok(out)
}

/// The literal sweep: all units `u` with `ρ_λ^*(u)·u⁻¹` scalar, giving
/// `Ψ_u∘ρ_λ^*`; duplicates removed. Only feasible on the smallest instances;
/// used to cross-check [`enumerate_second_kind_involutions`].
pub fn admissible_unit_sweep<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    budget: &EnumerationBudget,
) -> Result<Vec<InvolutionMap<F::Elem>>, OracleError> {
    let mut out: Vec<EnumeratedInvolution<F::Elem>> = Vec::new();
    let mut index = MapIndex::new();
    for lambda in enumerate_involutions(alg.poset()) {
        let star = rho_lambda_star(alg, &lambda)?;
        for unit in enumerate_units(alg, budget)? {
            if let Ok((rho, _)) = twist(alg, &star, &unit) {
                if index.find(&out, &rho).is_none() {
                    index.insert(&rho, out.len());
                    out.push(EnumeratedInvolution { lambda: lambda.clone(), unit, rho });
                }
            }
        }
    }
    Ok(out.into_iter().map(|e| e.rho).collect())
}

/// Second-kind involutions of the one-point algebra `K` found by sweeping
/// every additive map `K → K` (a `K₀`-linear map, fixed by the images of
/// `1` and `i`): returned as those image pairs.
pub fn raw_scalar_involutions<F: InvolutiveField>(
    field: &F,
    budget: &EnumerationBudget,
) -> Result<Vec<(F::Elem, F::Elem)>, OracleError> {
    let elements = field.elements().ok_or(OracleError::InfiniteField)?;
    budget.check_count("additive maps", (elements.len() as u64).checked_mul(elements.len() as u64))?;
    let apply = |(a, b): &(F::Elem, F::Elem), x: &F::Elem| {
        let (re, im) = field.k0_parts(x);
        field.add(&field.mul(&re, a), &field.mul(&im, b))
    };
    let mut out = Vec::new();
    for a in &elements {
        for b in &elements {
            let map = (a.clone(), b.clone());
            let second_kind = *b == field.neg(&field.i());
            let unital = field.is_one(a);
            let anti_multiplicative = || {
                elements.iter().all(|x| {
                    elements.iter().all(|y| apply(&map, &field.mul(x, y)) == field.mul(&apply(&map, y), &apply(&map, x)))
                })
            };
            let order_two = || elements.iter().all(|x| apply(&map, &apply(&map, x)) == *x);
            if second_kind && unital && anti_multiplicative() && order_two() {
                out.push(map);
            }
        }
    }
    Ok(out)
}

/// Literal test: is there `Φ = Ψ_u∘M_σ∘α̂`, over all units `u` (modulo
/// scalars), all cocycles `σ` and all poset automorphisms `α`, with
/// `Φ∘ρ₂ = ρ₁∘Φ`? Only feasible on the smallest instances.
pub fn brute_equivalent<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho1: &InvolutionMap<F::Elem>,
    rho2: &InvolutionMap<F::Elem>,
    budget: &EnumerationBudget,
) -> Result<bool, OracleError> {
    let units = enumerate_normalized_units(alg, budget)?;
    let cap = budget.max_units / units.total().max(1);
    let cocycles = crate::algebra::enumerate_cocycles(alg, cap)
        .ok_or_else(|| OracleError::BudgetExceeded("too many cocycles".into()))?;
    let autos = enumerate_automorphisms(alg.poset());
    budget.check_count(
        "automorphisms",
        units.total().checked_mul(cocycles.len() as u64).and_then(|n| n.checked_mul(autos.len() as u64)),
    )?;
    let spanning: Vec<AlgebraElement<F::Elem>> =
        (0..alg.dimension()).map(|k| alg.basis_at(k)).chain([alg.scalar(alg.field().i())]).collect();
    let units: Vec<(AlgebraElement<F::Elem>, AlgebraElement<F::Elem>)> = units
        .map(|u| {
            let inv = alg.invert(&u).expect("units are invertible");
            (u, inv)
        })
        .collect();
    let apply = |u: &(AlgebraElement<F::Elem>, AlgebraElement<F::Elem>), sigma: &Cocycle<F::Elem>, alpha: &PosetMap, f: &AlgebraElement<F::Elem>| {
        alg.conjugate(&u.0, &u.1, &alg.multiplicative(sigma, &alg.induced(alpha, f)))
    };
    for alpha in &autos {
        for sigma in &cocycles {
            for u in &units {
                if spanning
                    .iter()
                    .all(|b| apply(u, sigma, alpha, &rho2.apply(alg, b)) == rho1.apply(alg, &apply(u, sigma, alpha, b)))
                {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Orbits of the enumerated involutions under conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    class_of: Vec<usize>,
    classes: usize,
}

impl OrbitPartition {
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn same_class(&self, i: usize, j: usize) -> bool {
        self.class_of[i] == self.class_of[j]
    }

    /// First member of each class, by class id.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.classes];
        for (i, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = i;
            }
        }
        reps
    }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.components -= 1;
        }
    }

    fn into_partition(mut self) -> OrbitPartition {
        let n = self.parent.len();
        let mut ids = HashMap::new();
        let class_of = (0..n)
            .map(|i| {
                let r = self.find(i);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect();
        OrbitPartition { class_of, classes: ids.len() }
    }
}

/// Generators of the unit group: diagonal units carrying a multiplicative
/// generator of `K^×` at one point, and elementary units `δ + c·e_xy` for
/// `x < y` and `c ∈ {1, i}` (which span `K` over the prime field).
fn unit_generators<F: InvolutiveField>(alg: &IncidenceAlgebra<F>) -> Vec<AlgebraElement<F::Elem>> {
    let field = alg.field();
    let g = field.multiplicative_generator().expect("finite field");
    let n = alg.poset().len();
    let mut gens: Vec<AlgebraElement<F::Elem>> = (0..n)
        .map(|x| alg.diagonal_unit(&(0..n).map(|z| if z == x { g.clone() } else { field.one() }).collect::<Vec<_>>()))
        .collect();
    for &(x, y) in alg.pairs() {
        if x != y {
            for c in [field.one(), field.i()] {
                gens.push(alg.add(&alg.delta(), &alg.scale(&c, &alg.basis(x, y).expect("comparable"))));
            }
        }
    }
    gens
}

/// Orbits under inner automorphisms (and, with `with_poset_automorphisms`,
/// induced ones too). Every conjugate must already be in the list — otherwise
/// the enumeration was incomplete. The sweep stops early once the number of
/// orbits reaches its lower bound (distinct `λ`, or distinct `λ`-classes),
/// which never merges orbits that should be separate.
pub fn orbit_partition<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    list: &[EnumeratedInvolution<F::Elem>],
    with_poset_automorphisms: bool,
) -> Result<OrbitPartition, OracleError> {
    let mut index = MapIndex::new();
    for (i, e) in list.iter().enumerate() {
        index.insert(&e.rho, i);
    }
    let mut lambdas: Vec<PosetMap> = Vec::new();
    for e in list {
        if !lambdas.contains(&e.lambda) {
            lambdas.push(e.lambda.clone());
        }
    }
    let lower_bound = if with_poset_automorphisms {
        let mut classes: Vec<&PosetMap> = Vec::new();
        for l in &lambdas {
            if !classes.iter().any(|c| poset_involutions_equivalent(alg.poset(), c, l).is_some()) {
                classes.push(l);
            }
        }
        classes.len()
    } else {
        lambdas.len()
    };

    type Conj<'a, E> = Box<dyn Fn(&InvolutionMap<E>) -> InvolutionMap<E> + 'a>;
    let mut generators: Vec<Conj<'_, F::Elem>> = Vec::new();
    for g in unit_generators(alg) {
        let g_inv = alg.invert(&g)?;
        generators.push(Box::new(move |rho: &InvolutionMap<F::Elem>| {
            rho.conjugate_by(alg, |f| alg.conjugate(&g, &g_inv, f), |f| alg.conjugate(&g_inv, &g, f))
        }));
    }
    if with_poset_automorphisms {
        for alpha in enumerate_automorphisms(alg.poset()).into_iter().filter(|a| !a.is_identity()) {
            generators.push(Box::new(move |rho: &InvolutionMap<F::Elem>| {
                crate::classify::conjugate_by_poset_auto(alg, rho, &alpha)
            }));
        }
    }

    let mut uf = UnionFind::new(list.len());
    'sweep: for (i, e) in list.iter().enumerate() {
        for conj in &generators {
            if uf.components <= lower_bound {
                break 'sweep;
            }
            let image = conj(&e.rho);
            let j = index.find(list, &image).ok_or_else(|| {
                OracleError::Inconsistent(format!("a conjugate of enumerated involution #{i} is missing"))
            })?;
            uf.union(i, j);
        }
    }
    Ok(uf.into_partition())
}

/// Comparison of classifier verdicts with orbit membership.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AgreementReport {
    pub pairs_checked: usize,
    /// `(i, j, brute verdict, inner test)` for every disagreement.
    pub disagreements: Vec<(usize, usize, bool, bool)>,
}

/// Runs the general and the inner classifier on pairs of enumerated
/// involutions and compares with the orbit partitions. Small lists are
/// checked on all pairs; larger ones on every (member, representative) pair
/// in both orders, all representative pairs, and `extra_pairs` random pairs.
pub fn classifier_agreement<F: InvolutiveField, R: rand::Rng + ?Sized>(
    alg: &IncidenceAlgebra<F>,
    list: &[EnumeratedInvolution<F::Elem>],
    inner: &OrbitPartition,
    full: &OrbitPartition,
    extra_pairs: usize,
    rng: &mut R,
) -> Result<AgreementReport, OracleError> {
    let n = list.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if n <= 40 {
        pairs.extend((0..n).flat_map(|i| (0..n).map(move |j| (i, j))));
    } else {
        let reps = full.representatives();
        for i in 0..n {
            let r = reps[full.class_of(i)];
            pairs.push((i, r));
            pairs.push((r, i));
        }
        let inner_reps = inner.representatives();
        for &a in &inner_reps {
            for &b in &inner_reps {
                pairs.push((a, b));
            }
        }
        for _ in 0..extra_pairs {
            pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
        }
    }
    let mut report = AgreementReport::default();
    for (i, j) in pairs {
        let general = crate::classify::equivalent(alg, &list[i].rho, &list[j].rho)?.is_equivalent();
        if general != full.same_class(i, j) {
            report.disagreements.push((i, j, full.same_class(i, j), false));
        }
        let by_inner = crate::classify::inner_equivalent(alg, &list[i].rho, &list[j].rho)?.is_equivalent();
        if by_inner != inner.same_class(i, j) {
            report.disagreements.push((i, j, inner.same_class(i, j), true));
        }
        report.pairs_checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
