//! `GF(p²) = GF(p)[t]/(t² − n)` with the Frobenius `x ↦ x^p` as involution.

use std::fmt;

use rand::Rng;

use super::arith::{factor_u64, is_prime_u64, least_non_residue, mul_mod};
use super::{FieldDescriptor, FieldError, InvolutiveField};

/// `a + b·t` with `a, b ∈ [0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gfp2Elem {
    pub a: u64,
    pub b: u64,
}

impl fmt::Display for Gfp2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}t"),
            (a, b) => write!(f, "{a}+{b}t"),
        }
    }
}

/// The field with `p²` elements. `t² = n` for the least non-residue `n`,
/// `t^p = −t`, so the Frobenius is `a + bt ↦ a − bt` and `i = t`.
/// Every element of `GF(p)^×` is a norm, so `K₁ = K₀^×`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gfp2 {
    p: u64,
    n: u64,
}

/// Largest supported characteristic; keeps `p²` and products inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

impl Gfp2 {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p == 2 || p > MAX_CHARACTERISTIC || !is_prime_u64(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        Ok(Gfp2 { p, n: least_non_residue(p) })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// The non-residue `n = t²`.
    pub fn non_residue(&self) -> u64 {
        self.n
    }

    pub fn elem(&self, a: i64, b: i64) -> Gfp2Elem {
        Gfp2Elem { a: self.reduce(a), b: self.reduce(b) }
    }

    pub fn order(&self) -> u64 {
        self.p * self.p
    }

    fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    fn add_mod(&self, x: u64, y: u64) -> u64 {
        (x + y) % self.p
    }

    fn neg_mod(&self, x: u64) -> u64 {
        (self.p - x) % self.p
    }

    fn parse_residue(&self, s: &str) -> Option<u64> {
        let (neg, digits) = match s.strip_prefix('-') {
            Some(d) => (true, d),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let mut r = 0u64;
        for d in digits.bytes() {
            r = (mul_mod(r, 10, self.p) + u64::from(d - b'0')) % self.p;
        }
        Some(if neg { self.neg_mod(r) } else { r })
    }

    fn require_k0_nonzero(&self, c: &Gfp2Elem) -> Result<(), FieldError> {
        if c.b != 0 {
            return Err(FieldError::NotInK0(c.to_string()));
        }
        if c.a == 0 {
            return Err(FieldError::ZeroElement);
        }
        Ok(())
    }
}

impl InvolutiveField for Gfp2 {
    type Elem = Gfp2Elem;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::GfP2 { p: self.p }
    }

    fn zero(&self) -> Gfp2Elem {
        Gfp2Elem { a: 0, b: 0 }
    }

    fn one(&self) -> Gfp2Elem {
        Gfp2Elem { a: 1, b: 0 }
    }

    fn from_i64(&self, n: i64) -> Gfp2Elem {
        self.elem(n, 0)
    }

    fn add(&self, x: &Gfp2Elem, y: &Gfp2Elem) -> Gfp2Elem {
        Gfp2Elem { a: self.add_mod(x.a, y.a), b: self.add_mod(x.b, y.b) }
    }

    fn neg(&self, x: &Gfp2Elem) -> Gfp2Elem {
        Gfp2Elem { a: self.neg_mod(x.a), b: self.neg_mod(x.b) }
    }

    fn mul(&self, x: &Gfp2Elem, y: &Gfp2Elem) -> Gfp2Elem {
        let p = self.p;
        let bd = mul_mod(x.b, y.b, p);
        Gfp2Elem {
            a: (mul_mod(x.a, y.a, p) + mul_mod(bd, self.n, p)) % p,
            b: (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p,
        }
    }

    fn inv(&self, x: &Gfp2Elem) -> Option<Gfp2Elem> {
        if self.is_zero(x) {
            return None;
        }
        let p = self.p;
        // (a + bt)⁻¹ = (a − bt)/(a² − n b²)
        let norm = (mul_mod(x.a, x.a, p) + p - mul_mod(self.n, mul_mod(x.b, x.b, p), p)) % p;
        let inv_norm = super::arith::pow_mod(norm, p - 2, p);
        Some(Gfp2Elem { a: mul_mod(x.a, inv_norm, p), b: mul_mod(self.neg_mod(x.b), inv_norm, p) })
    }

    fn is_zero(&self, x: &Gfp2Elem) -> bool {
        x.a == 0 && x.b == 0
    }

    fn star(&self, x: &Gfp2Elem) -> Gfp2Elem {
        Gfp2Elem { a: x.a, b: self.neg_mod(x.b) }
    }

    fn i(&self) -> Gfp2Elem {
        Gfp2Elem { a: 0, b: 1 }
    }

    fn k0_parts(&self, x: &Gfp2Elem) -> (Gfp2Elem, Gfp2Elem) {
        (Gfp2Elem { a: x.a, b: 0 }, Gfp2Elem { a: x.b, b: 0 })
    }

    fn is_in_k1(&self, c: &Gfp2Elem) -> Result<bool, FieldError> {
        self.require_k0_nonzero(c)?;
        Ok(true)
    }

    /// Smallest `b`, then smallest `a`, with `a² − n·b² = c`.
    fn norm_preimage(&self, c: &Gfp2Elem) -> Result<Gfp2Elem, FieldError> {
        self.require_k0_nonzero(c)?;
        let p = self.p;
        for b in 0..p {
            // a² = c + n b²; test residuosity, then search for the root.
            let target = (c.a + mul_mod(self.n, mul_mod(b, b, p), p)) % p;
            if target != 0 && super::arith::pow_mod(target, (p - 1) / 2, p) != 1 {
                continue;
            }
            if let Some(a) = (0..p).find(|&a| mul_mod(a, a, p) == target) {
                return Ok(Gfp2Elem { a, b });
            }
        }
        Err(FieldError::NotANorm(c.to_string()))
    }

    fn norm_quotient_order(&self) -> Option<u64> {
        Some(1)
    }

    fn roots_of_unity_order(&self) -> u64 {
        self.p * self.p - 1
    }

    /// Accepts `a`, `bt`, `a+bt`, `a-bt`, `t`, `-t` with integer coefficients
    /// reduced mod `p`.
    fn parse(&self, s: &str) -> Result<Gfp2Elem, FieldError> {
        let err = || FieldError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('t') else {
            return Ok(Gfp2Elem { a: self.parse_residue(&t).ok_or_else(err)?, b: 0 });
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (a_text, b_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let b = match b_text {
            "" | "+" => 1,
            "-" => self.neg_mod(1),
            text => self.parse_residue(text).ok_or_else(err)?,
        };
        let a = if a_text.is_empty() { 0 } else { self.parse_residue(a_text).ok_or_else(err)? };
        Ok(Gfp2Elem { a, b })
    }

    fn format(&self, x: &Gfp2Elem) -> String {
        x.to_string()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Gfp2Elem {
        Gfp2Elem { a: rng.gen_range(0..self.p), b: rng.gen_range(0..self.p) }
    }

    fn elements(&self) -> Option<Vec<Gfp2Elem>> {
        let p = self.p;
        Some((0..p).flat_map(|b| (0..p).map(move |a| Gfp2Elem { a, b })).collect())
    }

    /// Least element (in `b`-major order) of multiplicative order `p² − 1`.
    fn multiplicative_generator(&self) -> Option<Gfp2Elem> {
        let order = self.roots_of_unity_order();
        let primes: Vec<u64> = factor_u64(order).into_iter().map(|(q, _)| q).collect();
        let p = self.p;
        (0..p)
            .flat_map(|b| (0..p).map(move |a| Gfp2Elem { a, b }))
            .filter(|x| !self.is_zero(x))
            .find(|x| primes.iter().all(|q| !self.is_one(&self.pow(x, order / q))))
    }
}
