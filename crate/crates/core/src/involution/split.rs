use super::{InvolutionError, InvolutionMap};
use crate::algebra::{AlgebraElement, IncidenceAlgebra};
use crate::field::InvolutiveField;
use crate::poset::{LambdaDecomposition, Side};

/// Writes a `ρ_ε`-symmetric unit as `u = v·ρ_ε(v)`.
///
/// Possible exactly when `u(x, x) ∈ K₁` on `X₃`. For `x ≤ y`:
///
/// | `x`  | `y`  | `v(x, y)`              |
/// |------|------|------------------------|
/// | `X₁` | `X₁` | `δ_xy`                 |
/// | `X₂` | `X₂` | `u(x, y)`              |
/// | `X₁` | `X₂` | `u(x, y)/2`            |
/// | `X₁` | `X₃` | `0`                    |
/// | `X₃` | `X₂` | `u(x, y)`              |
/// | `x = y ∈ X₃` || `a_x` with `a_x a_x* = u(x, x)` |
///
/// No other combination occurs because `X₁` is down-closed, `X₂` up-closed
/// and `X₃` an antichain. The identity `u = v·ρ_ε(v)` is verified.
pub fn split_symmetric_unit<F: InvolutiveField>(
    alg: &IncidenceAlgebra<F>,
    rho_eps: &InvolutionMap<F::Elem>,
    sides: &LambdaDecomposition,
    u: &AlgebraElement<F::Elem>,
) -> Result<AlgebraElement<F::Elem>, InvolutionError> {
    let field = alg.field();
    if !alg.is_unit(u) {
        return Err(crate::algebra::AlgebraError::NotInvertible(first_zero_diagonal(alg, u)).into());
    }
    if rho_eps.apply(alg, u) != *u {
        return Err(InvolutionError::NotSymmetric);
    }
    let mut a = vec![None; alg.poset().len()];
    for x in sides.x3() {
        let c = alg.entry(u, x, x);
        let not_norm = || InvolutionError::NotInK1OnX3 {
            at: alg.poset().label(x).to_string(),
            value: field.format(&c),
        };
        if !field.is_in_k1(&c)? {
            return Err(not_norm());
        }
        a[x] = Some(field.norm_preimage(&c).map_err(|_| not_norm())?);
    }
    let half = field.inv(&field.from_i64(2)).expect("characteristic is not 2");
    let v = alg.from_fn(|x, y| match (sides.side(x), sides.side(y)) {
        (Side::Lower, Side::Lower) => {
            if x == y {
                field.one()
            } else {
                field.zero()
            }
        }
        (Side::Upper, Side::Upper) | (Side::Fixed, Side::Upper) => alg.entry(u, x, y),
        (Side::Lower, Side::Upper) => field.mul(&alg.entry(u, x, y), &half),
        (Side::Lower, Side::Fixed) => field.zero(),
        (Side::Fixed, Side::Fixed) => a[x].clone().expect("x ∈ X₃, and X₃ is an antichain so x = y"),
        _ => unreachable!("λ-decomposition sides are closed under ≤"),
    });
    if alg.mul(&v, &rho_eps.apply(alg, &v)) != *u {
        return Err(InvolutionError::DecompositionFailure("v·ρ_ε(v) ≠ u".into()));
    }
    Ok(v)
}

fn first_zero_diagonal<F: InvolutiveField>(alg: &IncidenceAlgebra<F>, u: &AlgebraElement<F::Elem>) -> String {
    let d = alg.diagonal(u);
    let x = (0..d.len()).find(|&x| alg.field().is_zero(&d[x])).unwrap_or(0);
    alg.poset().label(x).to_string()
}
