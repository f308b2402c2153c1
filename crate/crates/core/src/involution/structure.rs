use serde::{Deserialize, Serialize};

use super::{rho_lambda_star, InvolutionError, InvolutionMap};
use crate::algebra::{is_coboundary, AlgebraElement, CoboundaryVerdict, Cocycle, IncidenceAlgebra};
use crate::field::InvolutiveField;
use crate::poset::PosetMap;

/// The restriction of an involution to the scalars `K·δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarAction {
    /// `ρ|_K = *` (second kind).
    Conjugation,
    /// `ρ|_K = id` (first kind).
    Identity,
}

/// `λ(x)` is the unique `z` with `ρ(e_x)(z, z) = 1`; `ρ(e_x)` must be an
/// idempotent whose diagonal is the indicator of one point.
pub fn induced_poset_involution<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
) -> Result<PosetMap, InvolutionError> {
    let field = alg.field();
    let n = alg.poset().len();
    let mut images = Vec::with_capacity(n);
    for x in 0..n {
        let e = rho.apply(alg, &alg.idempotent(x));
        let malformed = || InvolutionError::MalformedIdempotent(alg.poset().label(x).to_string());
        if alg.mul(&e, &e) != e {
            return Err(malformed());
        }
        let diag = alg.diagonal(&e);
        let ones: Vec<usize> = (0..n).filter(|&z| field.is_one(&diag[z])).collect();
        let zeros = diag.iter().filter(|c| field.is_zero(c)).count();
        if ones.len() != 1 || zeros != n - 1 {
            return Err(malformed());
        }
        images.push(ones[0]);
    }
    PosetMap::involution(alg.poset(), images).map_err(InvolutionError::InvalidInvolution)
}

/// Reads `ρ(i·δ) = ±i·δ`.
pub fn restrict_to_scalars<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
) -> Result<ScalarAction, InvolutionError> {
    let field = alg.field();
    let i = field.i();
    match alg.as_scalar(rho.i_image()) {
        Some(c) if c == field.neg(&i) => Ok(ScalarAction::Conjugation),
        Some(c) if c == i => Ok(ScalarAction::Identity),
        _ => Err(InvolutionError::NotScalarStable),
    }
}

/// `ρ = Ψ_{f⁻¹}∘M_σ∘ρ_λ^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<E> {
    pub f: AlgebraElement<E>,
    pub sigma: Cocycle<E>,
    pub lambda: PosetMap,
    pub action: ScalarAction,
}

/// Factors a second-kind involution. `f(u, v) = ρ(e_{λ(u)})(u, v)` and
/// `σ(x, y) = (Ψ_f∘ρ∘ρ_λ^*)(e_xy)(x, y)`; every assumption (unit `f` with
/// diagonal 1, cocycle `σ`, exact factorisation on the spanning set) is
/// validated.
pub fn decompose<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
) -> Result<Decomposition<F::Elem>, InvolutionError> {
    if !alg.poset().is_connected() {
        return Err(InvolutionError::Disconnected);
    }
    let field = alg.field();
    let failure = |what: &str| InvolutionError::DecompositionFailure(what.to_string());
    let action = restrict_to_scalars(alg, rho)?;
    if action != ScalarAction::Conjugation {
        return Err(InvolutionError::NotSecondKind);
    }
    let lambda = induced_poset_involution(alg, rho)?;
    let rho_images: Vec<AlgebraElement<F::Elem>> =
        (0..alg.poset().len()).map(|x| rho.apply(alg, &alg.idempotent(lambda.apply(x)))).collect();
    let f = alg.from_fn(|u, v| alg.entry(&rho_images[u], u, v));
    if alg.diagonal(&f).iter().any(|c| !field.is_one(c)) {
        return Err(failure("f does not have diagonal 1"));
    }
    let f_inv = alg.invert(&f)?;
    let star = rho_lambda_star(alg, &lambda)?;
    let twisted: Vec<AlgebraElement<F::Elem>> = (0..alg.dimension())
        .map(|k| alg.conjugate(&f, &f_inv, &rho.apply(alg, &star.images()[k])))
        .collect();
    let sigma_values: Vec<F::Elem> = alg
        .pairs()
        .iter()
        .enumerate()
        .map(|(k, &(x, y))| alg.entry(&twisted[k], x, y))
        .collect();
    let sigma = alg
        .validate_cocycle(sigma_values)
        .map_err(|e| InvolutionError::DecompositionFailure(format!("σ is not a cocycle: {e}")))?;
    let decomposition = Decomposition { f, sigma, lambda, action };
    let rebuilt = reassemble(alg, &decomposition)?;
    if !rebuilt.same_map(rho) {
        return Err(failure("Ψ_{f⁻¹}∘M_σ∘ρ_λ^* differs from ρ on the spanning set"));
    }
    Ok(decomposition)
}

/// `Ψ_{f⁻¹}∘M_σ∘ρ_λ^*` as an explicit map.
pub fn reassemble<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    d: &Decomposition<F::Elem>,
) -> Result<InvolutionMap<F::Elem>, InvolutionError> {
    let star = rho_lambda_star(alg, &d.lambda)?;
    let f_inv = alg.invert(&d.f)?;
    let images = star
        .images()
        .iter()
        .map(|img| alg.conjugate(&f_inv, &d.f, &alg.multiplicative(&d.sigma, img)))
        .collect();
    let i_image = alg.conjugate(&f_inv, &d.f, &alg.multiplicative(&d.sigma, star.i_image()));
    InvolutionMap::from_images(alg, images, i_image)
}

/// `ρ = Ψ_v∘ρ_λ^*` with `ρ_λ^*(v) = v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm<E> {
    pub v: AlgebraElement<E>,
    pub lambda: PosetMap,
    /// The scalar `k` with `ρ_λ^*(u) = k·u` before normalisation.
    pub k: E,
}

/// Absorbs the multiplicative factor of [`decompose`] into an inner one using
/// the coboundary witness (`M_σ = Ψ_d`, `d` diagonal), so `ρ = Ψ_u∘ρ_λ^*` with
/// `u = f⁻¹d`; then `ρ_λ^*(u) = k·u`, `k = a*·a⁻¹`, and `v = a⁻¹u` is symmetric.
pub fn symmetric_normal_form<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
) -> Result<SymmetricForm<F::Elem>, InvolutionError> {
    let field = alg.field();
    let d = decompose(alg, rho)?;
    let c = match is_coboundary(alg, &d.sigma) {
        CoboundaryVerdict::Coboundary { c } => c,
        CoboundaryVerdict::Obstruction { walk, product } => {
            return Err(InvolutionError::H1Obstruction {
                walk: walk.iter().map(|&x| alg.poset().label(x).to_string()).collect(),
                product: field.format(&product),
            })
        }
    };
    let diag = alg.diagonal_unit(&c);
    let f_inv = alg.invert(&d.f)?;
    let u = alg.mul(&f_inv, &diag);
    let star = rho_lambda_star(alg, &d.lambda)?;
    let ratio = alg.mul(&star.apply(alg, &u), &alg.invert(&u)?);
    let k = alg.as_scalar(&ratio).ok_or(InvolutionError::NotScalar)?;
    let a = field.unitary_to_ratio(&k)?;
    let v = alg.scale(&field.inv(&a).expect("a ≠ 0"), &u);
    if star.apply(alg, &v) != v {
        return Err(InvolutionError::DecompositionFailure("normalised unit is not symmetric".into()));
    }
    let (rebuilt, _) = super::twist(alg, &star, &v)?;
    if !rebuilt.same_map(rho) {
        return Err(InvolutionError::DecompositionFailure("Ψ_v∘ρ_λ^* differs from ρ".into()));
    }
    Ok(SymmetricForm { v, lambda: d.lambda, k })
}
