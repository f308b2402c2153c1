//! Involutions on `FI(X, K)`: construction, validation and structural
//! decomposition.
//!
//! An involution is stored by its values on the spanning set
//! `{e_xy} ∪ {i·δ}`. Any additive map is linear over the prime field, and
//! `K₀` is the prime field for both supported fields, so
//! `ρ(Σ (a + b·i) e_xy) = Σ a·ρ(e_xy) + b·ρ(e_xy)·ρ(i·δ)`
//! (anti-multiplicativity turns `ρ(i·e_xy)` into `ρ(e_xy)ρ(i·δ)`).

mod epsilon;
mod split;
mod structure;

pub use epsilon::{build_rho_epsilon, EpsilonMap};
pub use split::split_symmetric_unit;
pub use structure::{
    decompose, induced_poset_involution, reassemble, restrict_to_scalars, symmetric_normal_form, Decomposition, ScalarAction,
    SymmetricForm,
};

use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, IncidenceAlgebra};
use crate::field::{FieldError, InvolutiveField};
use crate::poset::{enumerate_involutions, FinitePoset, MapKind, PosetError, PosetMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("invalid poset involution: {0}")]
    InvalidInvolution(PosetError),
    #[error("ρ(u)·u⁻¹ is not a scalar, so Ψ_u∘ρ is not an involution")]
    NotTwistable,
    #[error("ε must be defined exactly on the fixed points of λ: {0}")]
    DomainMismatch(String),
    #[error("ε({0}) = {1} is not a nonzero element of the fixed field")]
    EpsilonNotInK0(String, String),
    #[error("ρ(e_{0}) is not an idempotent with exactly one diagonal 1")]
    MalformedIdempotent(String),
    #[error("ρ(i·δ) is not ±i·δ")]
    NotScalarStable,
    #[error("the involution is of the first kind")]
    NotSecondKind,
    #[error("decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("multiplicative factor is not inner: cocycle product around {walk:?} is {product}")]
    H1Obstruction { walk: Vec<String>, product: String },
    #[error("ρ_λ^*(u)·u⁻¹ is not a scalar")]
    NotScalar,
    #[error("u is not symmetric for the given involution")]
    NotSymmetric,
    #[error("u({at},{at}) = {value} is not a norm")]
    NotInK1OnX3 { at: String, value: String },
    #[error("poset is not connected")]
    Disconnected,
    #[error("spanning-set data has the wrong shape")]
    Shape,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An additive, `K₀`-linear self-map of `FI(X, K)` given on the spanning set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvolutionMap<E> {
    images: Vec<AlgebraElement<E>>,
    i_image: AlgebraElement<E>,
    /// `ρ(i·e_p) = ρ(e_p)·ρ(i·δ)`, cached.
    i_images: Vec<AlgebraElement<E>>,
}

/// Which identity failed in [`is_involution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionDefect {
    /// `ρ(δ) ≠ δ`.
    NotUnital,
    /// `ρ(ab) ≠ ρ(b)ρ(a)` for the named spanning elements.
    NotAntiMultiplicative(String, String),
    /// `ρ(ρ(a)) ≠ a`.
    NotOrderTwo(String),
}

impl std::fmt::Display for InvolutionDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvolutionDefect::NotUnital => write!(f, "ρ(δ) ≠ δ"),
            InvolutionDefect::NotAntiMultiplicative(a, b) => write!(f, "ρ({a}·{b}) ≠ ρ({b})·ρ({a})"),
            InvolutionDefect::NotOrderTwo(a) => write!(f, "ρ(ρ({a})) ≠ {a}"),
        }
    }
}

impl<E: Clone + PartialEq> InvolutionMap<E> {
    /// Builds the map from `ρ(e_p)` (in pair order) and `ρ(i·δ)`.
    pub fn from_images<F: InvolutiveField<Elem = E>>(
        alg: &IncidenceAlgebra<F>,
        images: Vec<AlgebraElement<E>>,
        i_image: AlgebraElement<E>,
    ) -> Result<Self, InvolutionError> {
        let m = alg.dimension();
        if images.len() != m || images.iter().chain([&i_image]).any(|f| f.coeffs().len() != m) {
            return Err(InvolutionError::Shape);
        }
        let i_images = images.iter().map(|img| alg.mul(img, &i_image)).collect();
        Ok(InvolutionMap { images, i_image, i_images })
    }

    /// `ρ(e_p)` for every comparable pair, in the algebra's pair order.
    pub fn images(&self) -> &[AlgebraElement<E>] {
        &self.images
    }

    /// `ρ(i·δ)`.
    pub fn i_image(&self) -> &AlgebraElement<E> {
        &self.i_image
    }

    pub fn apply<F: InvolutiveField<Elem = E>>(&self, alg: &IncidenceAlgebra<F>, f: &AlgebraElement<E>) -> AlgebraElement<E> {
        let field = alg.field();
        let mut out = alg.zero().into_coeffs();
        let mut accumulate = |scalar: &E, image: &AlgebraElement<E>| {
            for (acc, v) in out.iter_mut().zip(image.coeffs()) {
                if !field.is_zero(v) {
                    *acc = field.add(acc, &field.mul(scalar, v));
                }
            }
        };
        for (k, c) in f.coeffs().iter().enumerate() {
            if field.is_zero(c) {
                continue;
            }
            let (re, im) = field.k0_parts(c);
            if !field.is_zero(&re) {
                accumulate(&re, &self.images[k]);
            }
            if !field.is_zero(&im) {
                accumulate(&im, &self.i_images[k]);
            }
        }
        alg.from_coeffs(out).expect("coefficient vector has the algebra's dimension")
    }

    /// The map `Φ∘ρ∘Φ⁻¹` for a `K`-linear automorphism `Φ` given with its inverse.
    pub fn conjugate_by<F: InvolutiveField<Elem = E>>(
        &self,
        alg: &IncidenceAlgebra<F>,
        phi: impl Fn(&AlgebraElement<E>) -> AlgebraElement<E>,
        phi_inv: impl Fn(&AlgebraElement<E>) -> AlgebraElement<E>,
    ) -> Self {
        let images = (0..alg.dimension())
            .map(|k| phi(&self.apply(alg, &phi_inv(&alg.basis_at(k)))))
            .collect();
        let i_image = phi(&self.i_image);
        Self::from_images(alg, images, i_image).expect("shapes are preserved")
    }

    /// Equality as maps (both are determined by the spanning-set data).
    pub fn same_map(&self, other: &Self) -> bool {
        self.images == other.images && self.i_image == other.i_image
    }
}

fn spanning_label<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, k: Option<usize>) -> String {
    match k {
        Some(k) => {
            let (x, y) = alg.pairs()[k];
            format!("e({},{})", alg.poset().label(x), alg.poset().label(y))
        }
        None => "i·δ".to_string(),
    }
}

/// Checks `ρ(δ) = δ`, `ρ(ab) = ρ(b)ρ(a)` for all `a, b` in the spanning set
/// `{e_xy} ∪ {i·δ}`, and `ρ² = id` on the spanning set. Together with the
/// semilinear extension this is equivalent to `ρ` being an involution.
pub fn is_involution<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
) -> Result<(), InvolutionDefect> {
    let field = alg.field();
    let m = alg.dimension();
    let pairs = alg.pairs();
    let rho_delta = rho.apply(alg, &alg.delta());
    if rho_delta != alg.delta() {
        return Err(InvolutionDefect::NotUnital);
    }
    let label = |k| spanning_label(alg, k);
    for a in 0..m {
        for b in 0..m {
            // e_xy e_zw = [y = z] e_xw
            let (x, y) = pairs[a];
            let (z, w) = pairs[b];
            let lhs = if y == z {
                rho.images[alg.pair_index(x, w).expect("x ≤ w")].clone()
            } else {
                alg.zero()
            };
            if lhs != alg.mul(&rho.images[b], &rho.images[a]) {
                return Err(InvolutionDefect::NotAntiMultiplicative(label(Some(a)), label(Some(b))));
            }
        }
        // (i·δ) e_p = e_p (i·δ) = i·e_p
        if rho.i_images[a] != alg.mul(&rho.images[a], &rho.i_image) {
            return Err(InvolutionDefect::NotAntiMultiplicative(label(None), label(Some(a))));
        }
        if rho.i_images[a] != alg.mul(&rho.i_image, &rho.images[a]) {
            return Err(InvolutionDefect::NotAntiMultiplicative(label(Some(a)), label(None)));
        }
    }
    let i_squared = field.mul(&field.i(), &field.i());
    if alg.scale(&i_squared, &rho_delta) != alg.mul(&rho.i_image, &rho.i_image) {
        return Err(InvolutionDefect::NotAntiMultiplicative(label(None), label(None)));
    }
    for a in 0..m {
        if rho.apply(alg, &rho.images[a]) != alg.basis_at(a) {
            return Err(InvolutionDefect::NotOrderTwo(label(Some(a))));
        }
    }
    if rho.apply(alg, &rho.i_image) != alg.scalar(field.i()) {
        return Err(InvolutionDefect::NotOrderTwo(label(None)));
    }
    Ok(())
}

fn check_lambda<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, lambda: &PosetMap) -> Result<(), InvolutionError> {
    if lambda.kind() != MapKind::Involution || lambda.len() != alg.poset().len() {
        return Err(InvolutionError::InvalidInvolution(PosetError::NotAnInvolution));
    }
    PosetMap::involution(alg.poset(), lambda.images().to_vec()).map_err(InvolutionError::InvalidInvolution)?;
    Ok(())
}

/// `ρ_λ^*(f)(x, y) = f(λ(y), λ(x))*`; on the basis `e_xy ↦ e_{λ(y)λ(x)}`,
/// and `i·δ ↦ −i·δ`.
pub fn rho_lambda_star<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    lambda: &PosetMap,
) -> Result<InvolutionMap<F::Elem>, InvolutionError> {
    check_lambda(alg, lambda)?;
    let images = alg
        .pairs()
        .iter()
        .map(|&(x, y)| alg.basis(lambda.apply(y), lambda.apply(x)).expect("λ reverses order"))
        .collect();
    let i_image = alg.scalar(alg.field().star(&alg.field().i()));
    InvolutionMap::from_images(alg, images, i_image)
}

/// Entrywise evaluation of `ρ_λ^*(f)`, independent of the stored images.
pub fn rho_lambda_star_apply<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    lambda: &PosetMap,
    f: &AlgebraElement<F::Elem>,
) -> AlgebraElement<F::Elem> {
    alg.from_fn(|x, y| alg.field().star(&alg.entry(f, lambda.apply(y), lambda.apply(x))))
}

/// `Ψ_u∘ρ` together with the scalar `k` with `ρ(u) = k·u` (which is then
/// `ρ`-unitary).
pub fn twist<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
    u: &AlgebraElement<F::Elem>,
) -> Result<(InvolutionMap<F::Elem>, F::Elem), InvolutionError> {
    let u_inv = alg.invert(u)?;
    let ratio = alg.mul(&rho.apply(alg, u), &u_inv);
    let k = alg.as_scalar(&ratio).ok_or(InvolutionError::NotTwistable)?;
    let images = rho.images.iter().map(|img| alg.conjugate(u, &u_inv, img)).collect();
    let i_image = alg.conjugate(u, &u_inv, &rho.i_image);
    Ok((InvolutionMap::from_images(alg, images, i_image)?, k))
}

/// Whether `FI(X, K)` carries an involution of the second kind: exactly when
/// the (connected) poset has an order-reversing involution, since both fields
/// here carry one.
pub fn exists_second_kind_involution(poset: &FinitePoset) -> Result<bool, InvolutionError> {
    if !poset.is_connected() {
        return Err(InvolutionError::Disconnected);
    }
    Ok(!enumerate_involutions(poset).is_empty())
}

/// A random unit `u` with `ρ(u) = u`, as `w + ρ(w)` for random `w` (retrying
/// until the sum is a unit).
pub fn random_symmetric_unit<F: InvolutiveField, R: rand::Rng + ?Sized>(
    alg: &IncidenceAlgebra<F>,
    rho: &InvolutionMap<F::Elem>,
    rng: &mut R,
) -> AlgebraElement<F::Elem> {
    loop {
        let w = alg.random(rng);
        let u = alg.add(&w, &rho.apply(alg, &w));
        if alg.is_unit(&u) {
            return u;
        }
    }
}
