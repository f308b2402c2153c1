//! Exact fields of characteristic ≠ 2 carrying an automorphism `*` of order 2.
//!
//! Every field here is presented as `K = K₀ ⊕ K₀·i` where `K₀` is the fixed
//! field of `*`, `i² ∈ K₀` and `i* = −i`. Field operations go through the
//! field value (which holds any modulus data), so elements stay plain values.

mod arith;
mod gaussian;
mod gfp2;

pub use gaussian::{GaussRat, GaussianRationals};
pub use gfp2::{Gfp2, Gfp2Elem};

use std::fmt;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("element `{0}` is not fixed by the involution")]
    NotInK0(String),
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("`{0}` is not a norm a·a*")]
    NotANorm(String),
    #[error("`{0}` is not unitary (k·k* ≠ 1)")]
    NotUnitary(String),
    #[error("cannot parse `{0}` as a field element")]
    Parse(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("integer {0} is too large to factor")]
    TooLarge(String),
}

/// JSON field descriptor: `{"type":"gaussian_rational"}` or `{"type":"gf_p2","p":3}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FieldDescriptor {
    GaussianRational,
    GfP2 { p: u64 },
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::GaussianRational => write!(f, "Q(i)"),
            FieldDescriptor::GfP2 { p } => write!(f, "GF({p}^2)"),
        }
    }
}

pub trait InvolutiveField: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + fmt::Debug + Send + Sync + 'static;

    fn descriptor(&self) -> FieldDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// The involution `*`.
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    /// The distinguished `i` with `i² ∈ K₀` and `i* = −i`.
    fn i(&self) -> Self::Elem;
    /// `(re, im)` with `a = re + im·i`, both in `K₀`.
    fn k0_parts(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Membership of `c ∈ K₀^×` in the norm group `K₁ = {a·a* : a ≠ 0}`.
    fn is_in_k1(&self, c: &Self::Elem) -> Result<bool, FieldError>;
    /// Some `a` with `a·a* = c`, chosen deterministically.
    fn norm_preimage(&self, c: &Self::Elem) -> Result<Self::Elem, FieldError>;
    /// `|K₀^× / K₁|`, `None` when infinite.
    fn norm_quotient_order(&self) -> Option<u64>;
    /// Order of the (cyclic) group of roots of unity in `K`.
    fn roots_of_unity_order(&self) -> u64;

    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    fn format(&self, a: &Self::Elem) -> String;

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// All elements, for finite fields.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// A generator of `K^×`, for finite fields.
    fn multiplicative_generator(&self) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_in_k0(&self, a: &Self::Elem) -> bool {
        self.star(a) == *a
    }

    /// `a·a*`, always in `K₀`.
    fn norm(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.star(a))
    }

    fn is_unitary(&self, k: &Self::Elem) -> bool {
        self.is_one(&self.norm(k))
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    fn random_k0<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.k0_parts(&self.random(rng)).0
    }

    fn random_k0_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let a = self.random_k0(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// Writes a unitary `k` as `a*·a⁻¹`.
    ///
    /// With `k = re + im·i`: `im = 0` forces `k = ±1`, answered by `1` and `i`;
    /// otherwise `a = (1 + re) − im·i`. The result is checked before returning.
    fn unitary_to_ratio(&self, k: &Self::Elem) -> Result<Self::Elem, FieldError> {
        if self.is_zero(k) || !self.is_unitary(k) {
            return Err(FieldError::NotUnitary(self.format(k)));
        }
        let (re, im) = self.k0_parts(k);
        let a = if self.is_zero(&im) {
            if self.is_one(k) {
                self.one()
            } else {
                // k = −1
                self.i()
            }
        } else {
            let one_plus = self.add(&self.one(), &re);
            // re = −1 with im ≠ 0 would give k·k* = 1 + im²·(−i²) ≠ 1.
            assert!(!self.is_zero(&one_plus), "unitary with re = −1 must have im = 0");
            self.sub(&one_plus, &self.mul(&im, &self.i()))
        };
        let check = self.div(&self.star(&a), &a).ok_or(FieldError::ZeroElement)?;
        if check != *k {
            return Err(FieldError::NotUnitary(self.format(k)));
        }
        Ok(a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field_laws<F: InvolutiveField>(field: &F) {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert_ne!(field.star(&field.i()), field.i(), "involution must be of the second kind");
        assert!(field.is_in_k0(&field.mul(&field.i(), &field.i())));
        for _ in 0..1000 {
            let x = field.random(&mut rng);
            let y = field.random(&mut rng);
            assert_eq!(field.star(&field.star(&x)), x);
            assert_eq!(field.star(&field.mul(&x, &y)), field.mul(&field.star(&x), &field.star(&y)));
            assert_eq!(field.star(&field.add(&x, &y)), field.add(&field.star(&x), &field.star(&y)));
            assert_eq!(field.norm(&field.mul(&x, &y)), field.mul(&field.norm(&x), &field.norm(&y)));
            assert!(field.is_in_k0(&field.norm(&x)));
            let (re, im) = field.k0_parts(&x);
            assert!(field.is_in_k0(&re) && field.is_in_k0(&im));
            assert_eq!(field.add(&re, &field.mul(&im, &field.i())), x);
            if let Some(xi) = field.inv(&x) {
                assert!(field.is_one(&field.mul(&x, &xi)));
            } else {
                assert!(field.is_zero(&x));
            }
            assert_eq!(field.parse(&field.format(&x)).unwrap(), x);
        }
    }

    fn k1_subgroup<F: InvolutiveField>(field: &F) {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let c = field.norm(&field.random_nonzero(&mut rng));
            let d = field.norm(&field.random_nonzero(&mut rng));
            assert!(field.is_in_k1(&c).unwrap());
            assert!(field.is_in_k1(&field.mul(&c, &d)).unwrap());
            assert!(field.is_in_k1(&field.inv(&c).unwrap()).unwrap());
            let a = field.norm_preimage(&c).unwrap();
            assert_eq!(field.norm(&a), c);
        }
    }

    fn unitary_ratios<F: InvolutiveField>(field: &F) {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let x = field.random_nonzero(&mut rng);
            let k = field.div(&field.star(&x), &x).unwrap();
            let a = field.unitary_to_ratio(&k).unwrap();
            assert_eq!(field.div(&field.star(&a), &a).unwrap(), k);
        }
        let minus_one = field.neg(&field.one());
        assert_eq!(field.unitary_to_ratio(&field.one()).unwrap(), field.one());
        assert_eq!(field.unitary_to_ratio(&minus_one).unwrap(), field.i());
    }

    #[test]
    fn gaussian_rationals() {
        let f = GaussianRationals;
        field_laws(&f);
        k1_subgroup(&f);
        unitary_ratios(&f);
    }

    #[test]
    fn gf9_and_gf25() {
        for p in [3, 5, 7] {
            let f = Gfp2::new(p).unwrap();
            field_laws(&f);
            k1_subgroup(&f);
            unitary_ratios(&f);
        }
    }

    #[test]
    fn descriptor_json() {
        let d: FieldDescriptor = serde_json::from_str(r#"{"type":"gf_p2","p":3}"#).unwrap();
        assert_eq!(d, FieldDescriptor::GfP2 { p: 3 });
        let q: FieldDescriptor = serde_json::from_str(r#"{"type":"gaussian_rational"}"#).unwrap();
        assert_eq!(q, FieldDescriptor::GaussianRational);
        assert_eq!(serde_json::to_string(&q).unwrap(), r#"{"type":"gaussian_rational"}"#);
    }

    #[test]
    fn non_unitary_is_rejected() {
        let f = GaussianRationals;
        let two = f.from_i64(2);
        assert!(matches!(f.unitary_to_ratio(&two), Err(FieldError::NotUnitary(_))));
        assert!(matches!(f.unitary_to_ratio(&f.zero()), Err(FieldError::NotUnitary(_))));
    }
}
