//! Deciding equivalence of second-kind involutions, with explicit witnesses.
//!
//! Every `Equivalent` verdict carries `Φ = Ψ_u∘α̂` and is only returned after
//! `Φ∘ρ₂ = ρ₁∘Φ` has been checked exactly on the spanning set.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraElement, IncidenceAlgebra};
use crate::field::InvolutiveField;
use crate::involution::{
    build_rho_epsilon, induced_poset_involution, restrict_to_scalars, split_symmetric_unit, symmetric_normal_form,
    EpsilonMap, InvolutionError, InvolutionMap, ScalarAction,
};
use crate::poset::{enumerate_automorphisms, lambda_decomposition, FinitePoset, PosetMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("involutions of the first kind are not classified here")]
    KindMismatch,
    #[error("multiplicative factor is not inner: cocycle product around {walk:?} is {product}")]
    H1Obstruction { walk: Vec<String>, product: String },
    #[error("assembled witness does not intertwine the involutions: {0}")]
    WitnessCheckFailed(String),
    #[error(transparent)]
    Involution(InvolutionError),
}

impl From<InvolutionError> for ClassifyError {
    fn from(e: InvolutionError) -> Self {
        match e {
            InvolutionError::H1Obstruction { walk, product } => ClassifyError::H1Obstruction { walk, product },
            other => ClassifyError::Involution(other),
        }
    }
}

/// `x ↦ [ε₂(x)ε₁(x)⁻¹] / [ε₂(x₀)ε₁(x₀)⁻¹]` on `X₃`: two `ε`-forms are
/// inner-equivalent exactly when every ratio is a norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetVector<E> {
    pub base: usize,
    pub ratios: BTreeMap<usize, E>,
}

impl<E: Clone> CosetVector<E> {
    /// `None` when `X₃` is empty. The base point is the smallest index.
    pub fn new<F: InvolutiveField<Elem = E>>(
        field: &F,
        eps1: &EpsilonMap<E>,
        eps2: &EpsilonMap<E>,
    ) -> Option<Self> {
        let base = *eps1.values().keys().next()?;
        Self::with_base(field, eps1, eps2, base)
    }

    pub fn with_base<F: InvolutiveField<Elem = E>>(
        field: &F,
        eps1: &EpsilonMap<E>,
        eps2: &EpsilonMap<E>,
        base: usize,
    ) -> Option<Self> {
        let ratio = |x: usize| Some(field.div(eps2.get(x)?, eps1.get(x)?).expect("ε values are nonzero"));
        let at_base = ratio(base)?;
        let ratios = eps1
            .values()
            .keys()
            .map(|&x| Some((x, field.div(&ratio(x)?, &at_base).expect("nonzero"))))
            .collect::<Option<_>>()?;
        Some(CosetVector { base, ratios })
    }

    /// First point whose ratio is not a norm, with that ratio.
    pub fn first_non_norm<F: InvolutiveField<Elem = E>>(&self, field: &F) -> Result<Option<(usize, E)>, ClassifyError> {
        for (&x, r) in &self.ratios {
            if !field.is_in_k1(r).map_err(InvolutionError::from)? {
                return Ok(Some((x, r.clone())));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
}

/// Why two involutions are not equivalent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction<E> {
    /// The induced poset involutions differ (inner test) or are not
    /// conjugate under any poset automorphism (general test).
    DifferentLambdaClass,
    DifferentScalarAction,
    /// The normalised ratio at `at` is not a norm.
    CosetMismatch { at: usize, ratio: E },
}

/// `Φ = Ψ_u∘α̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness<E> {
    pub alpha: PosetMap,
    pub u: AlgebraElement<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport<E> {
    pub verdict: Verdict,
    pub witness: Option<Witness<E>>,
    /// Whether the witness was verified on the spanning set.
    pub checked: bool,
    pub obstruction: Option<Obstruction<E>>,
}

impl<E> EquivalenceReport<E> {
    fn equivalent(witness: Witness<E>) -> Self {
        EquivalenceReport { verdict: Verdict::Equivalent, witness: Some(witness), checked: true, obstruction: None }
    }

    fn not_equivalent(obstruction: Obstruction<E>) -> Self {
        EquivalenceReport { verdict: Verdict::NotEquivalent, witness: None, checked: false, obstruction: Some(obstruction) }
    }

    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

/// `Φ∘ρ₂ = ρ₁∘Φ` on `{e_xy} ∪ {i·δ}` for `Φ = Ψ_u∘α̂`. `Φ` is `K`-linear, so
/// the spanning set suffices.
pub fn intertwines<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    witness: &Witness<F::Elem>,
    rho1: &InvolutionMap<F::Elem>,
    rho2: &InvolutionMap<F::Elem>,
) -> Result<bool, ClassifyError> {
    let u_inv = alg.invert(&witness.u).map_err(InvolutionError::from)?;
    let phi = |f: &AlgebraElement<F::Elem>| alg.conjugate(&witness.u, &u_inv, &alg.induced(&witness.alpha, f));
    let i_delta = alg.scalar(alg.field().i());
    Ok((0..alg.dimension())
        .map(|k| alg.basis_at(k))
        .chain([i_delta])
        .all(|b| phi(&rho2.apply(alg, &b)) == rho1.apply(alg, &phi(&b))))
}

/// `α̂∘ρ∘α̂⁻¹`; for `ρ = ρ_ε` this is `ρ_{ε∘α⁻¹}` over `α∘λ∘α⁻¹`.
pub fn conjugate_by_poset_auto<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
    alpha: &PosetMap,
) -> InvolutionMap<F::Elem> {
    let alpha_inv = alpha.inverse();
    rho.conjugate_by(alg, |f| alg.induced(alpha, f), |f| alg.induced(&alpha_inv, f))
}

/// The `ε`-form of a second-kind involution: `ρ = Ψ_w∘ρ_ε∘Ψ_w⁻¹`.
struct EpsilonForm<E> {
    lambda: PosetMap,
    epsilon: EpsilonMap<E>,
    rho_eps: InvolutionMap<E>,
    w: AlgebraElement<E>,
}

/// `ρ = Ψ_v∘ρ_λ^*` with `v` symmetric; `ε(x) = v(x, x)` on `X₃` and
/// `s = v·u_ε⁻¹` is `ρ_ε`-symmetric with diagonal 1 on `X₃`, so
/// `s = w·ρ_ε(w)` and `Ψ_w∘ρ_ε = ρ∘Ψ_w`.
fn epsilon_form<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
) -> Result<EpsilonForm<F::Elem>, ClassifyError> {
    let form = symmetric_normal_form(alg, rho)?;
    let lambda = form.lambda;
    let values = lambda.fixed_points().into_iter().map(|x| (x, alg.entry(&form.v, x, x))).collect();
    let epsilon = EpsilonMap::new(alg, &lambda, values)?;
    let rho_eps = build_rho_epsilon(alg, &lambda, &epsilon)?;
    let u_eps = epsilon.unit(alg);
    let s = alg.mul(&form.v, &alg.invert(&u_eps).map_err(InvolutionError::from)?);
    let sides = lambda_decomposition(alg.poset(), &lambda).map_err(InvolutionError::InvalidInvolution)?;
    let w = split_symmetric_unit(alg, &rho_eps, &sides, &s)?;
    Ok(EpsilonForm { lambda, epsilon, rho_eps, w })
}

fn second_kind_check<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho1: &InvolutionMap<F::Elem>,
    rho2: &InvolutionMap<F::Elem>,
) -> Result<Option<Obstruction<F::Elem>>, ClassifyError> {
    let a1 = restrict_to_scalars(alg, rho1)?;
    let a2 = restrict_to_scalars(alg, rho2)?;
    match (a1, a2) {
        (ScalarAction::Conjugation, ScalarAction::Conjugation) => Ok(None),
        (ScalarAction::Identity, ScalarAction::Identity) => Err(ClassifyError::KindMismatch),
        _ => Ok(Some(Obstruction::DifferentScalarAction)),
    }
}

/// Equivalence via inner automorphisms.
///
/// Necessary: same induced poset involution and same scalar action. Then
/// both are brought to `ε`-form; with `X₃` empty or a single point they are
/// always equivalent, otherwise exactly when the normalised ratios
/// `ε₂/ε₁` are norms. The witness is assembled from the two `ε`-form
/// conjugators and a split of `t = k⁻¹·u_{ε₁}·u_{ε₂}⁻¹`, then checked.
pub fn inner_equivalent<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho1: &InvolutionMap<F::Elem>,
    rho2: &InvolutionMap<F::Elem>,
) -> Result<EquivalenceReport<F::Elem>, ClassifyError> {
    if let Some(obstruction) = second_kind_check(alg, rho1, rho2)? {
        return Ok(EquivalenceReport::not_equivalent(obstruction));
    }
    if induced_poset_involution(alg, rho1)? != induced_poset_involution(alg, rho2)? {
        return Ok(EquivalenceReport::not_equivalent(Obstruction::DifferentLambdaClass));
    }
    let field = alg.field();
    let f1 = epsilon_form(alg, rho1)?;
    let f2 = epsilon_form(alg, rho2)?;
    let lambda = f1.lambda.clone();
    let u1 = f1.epsilon.unit(alg);
    let u2 = f2.epsilon.unit(alg);
    let k = match CosetVector::new(field, &f1.epsilon, &f2.epsilon) {
        None => field.one(),
        Some(coset) => {
            if let Some((at, ratio)) = coset.first_non_norm(field)? {
                return Ok(EquivalenceReport::not_equivalent(Obstruction::CosetMismatch { at, ratio }));
            }
            let x0 = coset.base;
            field.div(f1.epsilon.get(x0).expect("x₀ ∈ X₃"), f2.epsilon.get(x0).expect("x₀ ∈ X₃")).expect("nonzero")
        }
    };
    // ρ_{ε₁} = Ψ_t∘ρ_{ε₂} with t symmetric for ρ_{ε₂} and t(x₀, x₀) = 1.
    let u2_inv = alg.invert(&u2).map_err(InvolutionError::from)?;
    let t = alg.scale(&field.inv(&k).expect("nonzero"), &alg.mul(&u1, &u2_inv));
    let sides = lambda_decomposition(alg.poset(), &lambda).map_err(InvolutionError::InvalidInvolution)?;
    let w = split_symmetric_unit(alg, &f2.rho_eps, &sides, &t)?;
    debug_assert!(f1.rho_eps.same_map(&crate::involution::twist(alg, &f2.rho_eps, &t)?.0));
    let w2_inv = alg.invert(&f2.w).map_err(InvolutionError::from)?;
    let u = alg.mul3(&f1.w, &w, &w2_inv);
    let witness = Witness { alpha: PosetMap::identity(alg.poset()), u };
    if !intertwines(alg, &witness, rho1, rho2)? {
        return Err(ClassifyError::WitnessCheckFailed("Ψ_u∘ρ₂ ≠ ρ₁∘Ψ_u".into()));
    }
    Ok(EquivalenceReport::equivalent(witness))
}

/// Equivalence via arbitrary automorphisms.
///
/// Scalar actions must agree; then every poset automorphism `α` with
/// `α∘λ₂∘α⁻¹ = λ₁` is tried in enumeration order and the first one for which
/// `ρ₁` and `α̂∘ρ₂∘α̂⁻¹` are inner-equivalent wins. When both `X₃` have at
/// most one point the first such `α` always succeeds. The reported
/// obstruction is the one for the first intertwining `α`.
pub fn equivalent<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho1: &InvolutionMap<F::Elem>,
    rho2: &InvolutionMap<F::Elem>,
) -> Result<EquivalenceReport<F::Elem>, ClassifyError> {
    if let Some(obstruction) = second_kind_check(alg, rho1, rho2)? {
        return Ok(EquivalenceReport::not_equivalent(obstruction));
    }
    let lambda1 = induced_poset_involution(alg, rho1)?;
    let lambda2 = induced_poset_involution(alg, rho2)?;
    let mut first_obstruction = None;
    for alpha in enumerate_automorphisms(alg.poset()) {
        if alpha.compose(&lambda2) != lambda1.compose(&alpha) {
            continue;
        }
        let moved = conjugate_by_poset_auto(alg, rho2, &alpha);
        let report = inner_equivalent(alg, rho1, &moved)?;
        if let Some(inner) = report.witness {
            let witness = Witness { alpha, u: inner.u };
            if !intertwines(alg, &witness, rho1, rho2)? {
                return Err(ClassifyError::WitnessCheckFailed("Ψ_u∘α̂∘ρ₂ ≠ ρ₁∘Ψ_u∘α̂".into()));
            }
            return Ok(EquivalenceReport::equivalent(witness));
        }
        first_obstruction.get_or_insert(report.obstruction.expect("negative verdicts carry a reason"));
    }
    Ok(EquivalenceReport::not_equivalent(first_obstruction.unwrap_or(Obstruction::DifferentLambdaClass)))
}

/// Number of inner-equivalence classes of second-kind involutions inducing a
/// given poset involution: `|K₀^×/K₁|^(|X₃|−1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassCount {
    Count(u64),
    /// `X₃ = ∅`: exactly one class, that of `ρ_λ^*`.
    EmptyX3,
    /// `K₀^×/K₁` is infinite; classes are decided by the norm test on the
    /// normalised coset vector.
    InfiniteWithCriterion(String),
}

impl ClassCount {
    pub fn finite(&self) -> Option<u64> {
        match self {
            ClassCount::Count(n) => Some(*n),
            ClassCount::EmptyX3 => Some(1),
            ClassCount::InfiniteWithCriterion(_) => None,
        }
    }
}

pub fn class_count<F: InvolutiveField>(
    poset: &FinitePoset,
    field: &F,
    lambda: &PosetMap,
) -> Result<ClassCount, ClassifyError> {
    lambda_decomposition(poset, lambda).map_err(InvolutionError::InvalidInvolution)?;
    let fixed = lambda.fixed_points().len();
    if fixed == 0 {
        return Ok(ClassCount::EmptyX3);
    }
    if fixed == 1 {
        return Ok(ClassCount::Count(1));
    }
    Ok(match field.norm_quotient_order() {
        Some(q) => ClassCount::Count(q.pow(fixed as u32 - 1)),
        None => ClassCount::InfiniteWithCriterion(
            "ρ_ε₁ and ρ_ε₂ are inner-equivalent iff [ε₂(x)/ε₁(x)]/[ε₂(x₀)/ε₁(x₀)] is a norm a·a* for every fixed point x"
                .into(),
        ),
    })
}

#[cfg(test)]
mod tests;
