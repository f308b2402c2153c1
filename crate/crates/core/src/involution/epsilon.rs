use std::collections::BTreeMap;

use super::{rho_lambda_star, twist, InvolutionError, InvolutionMap};
use crate::algebra::{AlgebraElement, IncidenceAlgebra};
use crate::field::InvolutiveField;
use crate::poset::PosetMap;

/// `ε : X₃ → K₀^×` on the fixed points of a poset involution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonMap<E> {
    values: BTreeMap<usize, E>,
}

impl<E: Clone> EpsilonMap<E> {
    /// Validates that the domain is exactly the fixed points of `λ` and that
    /// every value is a nonzero `*`-fixed element.
    pub fn new<F: InvolutiveField<Elem = E>>(
        alg: &IncidenceAlgebra<F>,
        lambda: &PosetMap,
        values: BTreeMap<usize, E>,
    ) -> Result<Self, InvolutionError> {
        let field = alg.field();
        let fixed = lambda.fixed_points();
        let domain: Vec<usize> = values.keys().copied().collect();
        if domain != fixed {
            let names = |v: &[usize]| v.iter().map(|&x| alg.poset().label(x).to_string()).collect::<Vec<_>>();
            return Err(InvolutionError::DomainMismatch(format!(
                "given {:?}, fixed points {:?}",
                names(&domain),
                names(&fixed)
            )));
        }
        for (&x, v) in &values {
            if field.is_zero(v) || !field.is_in_k0(v) {
                return Err(InvolutionError::EpsilonNotInK0(alg.poset().label(x).to_string(), field.format(v)));
            }
        }
        Ok(EpsilonMap { values })
    }

    /// `ε ≡ 1`.
    pub fn ones<F: InvolutiveField<Elem = E>>(field: &F, lambda: &PosetMap) -> Self {
        EpsilonMap { values: lambda.fixed_points().into_iter().map(|x| (x, field.one())).collect() }
    }

    pub fn values(&self) -> &BTreeMap<usize, E> {
        &self.values
    }

    pub fn get(&self, x: usize) -> Option<&E> {
        self.values.get(&x)
    }

    /// The diagonal unit `u_ε`: `ε(x)` on `X₃`, `1` elsewhere.
    pub fn unit<F: InvolutiveField<Elem = E>>(&self, alg: &IncidenceAlgebra<F>) -> AlgebraElement<E> {
        let diag: Vec<E> = (0..alg.poset().len())
            .map(|x| self.values.get(&x).cloned().unwrap_or_else(|| alg.field().one()))
            .collect();
        alg.diagonal_unit(&diag)
    }

    /// `ε∘α⁻¹`, defined on the fixed points of `α∘λ∘α⁻¹`.
    pub fn relabel(&self, alpha: &PosetMap) -> Self {
        EpsilonMap { values: self.values.iter().map(|(&x, v)| (alpha.apply(x), v.clone())).collect() }
    }
}

/// `ρ_ε = Ψ_{u_ε}∘ρ_λ^*`.
pub fn build_rho_epsilon<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    lambda: &PosetMap,
    epsilon: &EpsilonMap<F::Elem>,
) -> Result<InvolutionMap<F::Elem>, InvolutionError> {
    let fixed = lambda.fixed_points();
    if epsilon.values.keys().copied().collect::<Vec<_>>() != fixed {
        return Err(InvolutionError::DomainMismatch("ε is not defined on the fixed points of λ".into()));
    }
    let base = rho_lambda_star(alg, lambda)?;
    let (rho, k) = twist(alg, &base, &epsilon.unit(alg))?;
    debug_assert!(alg.field().is_one(&k));
    Ok(rho)
}
