//! The Gaussian rationals `Q(i)` with complex conjugation.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::arith::{factor, two_squares_prime};
use super::{FieldDescriptor, FieldError, InvolutiveField};

/// `re + im·i` with both parts exact rationals in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for GaussRat {
    type Err = FieldError;

    /// Accepts `a`, `bi`, `a+bi`, `a-bi` with rational `a`, `b` (`p` or `p/q`);
    /// a bare `i` / `-i` means `±1i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussRat::real(parse_rational(&t).ok_or_else(err)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_text, im_text) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_text {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            text => parse_rational(text).ok_or_else(err)?,
        };
        let re = if re_text.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_text).ok_or_else(err)?
        };
        Ok(GaussRat::new(re, im))
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |x: &str| {
        let digits = x.strip_prefix('-').unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// `Q(i)`; `K₀ = Q`, `K₁` = positive rationals that are sums of two squares.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GaussianRationals;

/// Inputs up to this size are solved by scanning `b = 0, 1, …` for `n − b²` square.
const SCAN_LIMIT: u64 = 1 << 24;

impl GaussianRationals {
    fn require_k0_nonzero(&self, c: &GaussRat) -> Result<BigRational, FieldError> {
        if !c.im.is_zero() {
            return Err(FieldError::NotInK0(c.to_string()));
        }
        if c.re.is_zero() {
            return Err(FieldError::ZeroElement);
        }
        Ok(c.re.clone())
    }

    /// `(a, b)` with `a² + b² = n`, `a ≥ b ≥ 0`, smallest `b`; `None` if `n`
    /// is not a sum of two squares.
    fn two_squares(n: &BigUint) -> Option<(BigUint, BigUint)> {
        if n.is_zero() {
            return Some((BigUint::zero(), BigUint::zero()));
        }
        if *n <= BigUint::from(SCAN_LIMIT) {
            let mut b = BigUint::zero();
            while &b * &b * 2u32 <= *n {
                let rest = n - &b * &b;
                let a = rest.sqrt();
                if &a * &a == rest {
                    return Some((a, b));
                }
                b += 1u32;
            }
            return None;
        }
        // Compose Gaussian primes: 2 = (1+i)(1−i), p ≡ 1 (mod 4) splits as
        // (a+bi)(a−bi), p ≡ 3 (mod 4) must appear to an even power.
        let mut z = (BigInt::one(), BigInt::zero());
        let mul = |(a, b): (BigInt, BigInt), (c, d): (BigInt, BigInt)| (&a * &c - &b * &d, &a * &d + &b * &c);
        for (p, e) in factor(n) {
            let r = (&p % 4u32).to_u32_digits().first().copied().unwrap_or(0);
            let gp = match r {
                2 => (BigInt::one(), BigInt::one()),
                1 => {
                    let (a, b) = two_squares_prime(&p);
                    (BigInt::from(a), BigInt::from(b))
                }
                _ => {
                    if e % 2 == 1 {
                        return None;
                    }
                    let scale = BigInt::from(p.pow(e / 2));
                    z = (&z.0 * &scale, &z.1 * &scale);
                    continue;
                }
            };
            for _ in 0..e {
                z = mul(z, gp.clone());
            }
        }
        let (a, b) = (z.0.magnitude().clone(), z.1.magnitude().clone());
        Some(if a >= b { (a, b) } else { (b, a) })
    }
}

impl InvolutiveField for GaussianRationals {
    type Elem = GaussRat;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::GaussianRational
    }

    fn zero(&self) -> GaussRat {
        GaussRat::from_ints(0, 0)
    }

    fn one(&self) -> GaussRat {
        GaussRat::from_ints(1, 0)
    }

    fn from_i64(&self, n: i64) -> GaussRat {
        GaussRat::from_ints(n, 0)
    }

    fn add(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        GaussRat::new(&a.re + &b.re, &a.im + &b.im)
    }

    fn sub(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        GaussRat::new(&a.re - &b.re, &a.im - &b.im)
    }

    fn neg(&self, a: &GaussRat) -> GaussRat {
        GaussRat::new(-&a.re, -&a.im)
    }

    fn mul(&self, a: &GaussRat, b: &GaussRat) -> GaussRat {
        // Real operands are common (K₀ scalars); skip the vanishing products.
        if a.im.is_zero() {
            let im = if b.im.is_zero() { BigRational::zero() } else { &a.re * &b.im };
            GaussRat::new(&a.re * &b.re, im)
        } else if b.im.is_zero() {
            GaussRat::new(&a.re * &b.re, &a.im * &b.re)
        } else {
            GaussRat::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
        }
    }

    fn inv(&self, a: &GaussRat) -> Option<GaussRat> {
        if self.is_zero(a) {
            return None;
        }
        let n = &a.re * &a.re + &a.im * &a.im;
        Some(GaussRat::new(&a.re / &n, -&a.im / &n))
    }

    fn is_zero(&self, a: &GaussRat) -> bool {
        a.re.is_zero() && a.im.is_zero()
    }

    fn star(&self, a: &GaussRat) -> GaussRat {
        GaussRat::new(a.re.clone(), -&a.im)
    }

    fn i(&self) -> GaussRat {
        GaussRat::from_ints(0, 1)
    }

    fn k0_parts(&self, a: &GaussRat) -> (GaussRat, GaussRat) {
        (GaussRat::real(a.re.clone()), GaussRat::real(a.im.clone()))
    }

    fn is_in_k1(&self, c: &GaussRat) -> Result<bool, FieldError> {
        let q = self.require_k0_nonzero(c)?;
        if q.is_negative() {
            return Ok(false);
        }
        let parity_ok = |n: &BigInt| {
            factor(n.magnitude())
                .iter()
                .all(|(p, &e)| e % 2 == 0 || (p % 4u32) != BigUint::from(3u32))
        };
        Ok(parity_ok(q.numer()) && parity_ok(q.denom()))
    }

    /// For `c = n/d` in lowest terms, writes `n·d = a² + b²` and returns
    /// `(a + b·i)/d` with `a ≥ b ≥ 0` and `b` minimal.
    fn norm_preimage(&self, c: &GaussRat) -> Result<GaussRat, FieldError> {
        let q = self.require_k0_nonzero(c)?;
        if !self.is_in_k1(c)? {
            return Err(FieldError::NotANorm(c.to_string()));
        }
        let nd = q.numer().magnitude() * q.denom().magnitude();
        let (a, b) = Self::two_squares(&nd).ok_or_else(|| FieldError::NotANorm(c.to_string()))?;
        let d = BigInt::from_biguint(Sign::Plus, q.denom().magnitude().clone());
        let out = GaussRat::new(
            BigRational::new(BigInt::from(a), d.clone()),
            BigRational::new(BigInt::from(b), d),
        );
        debug_assert_eq!(self.norm(&out), *c);
        Ok(out)
    }

    fn norm_quotient_order(&self) -> Option<u64> {
        None
    }

    fn roots_of_unity_order(&self) -> u64 {
        4
    }

    fn parse(&self, s: &str) -> Result<GaussRat, FieldError> {
        s.parse()
    }

    fn format(&self, a: &GaussRat) -> String {
        a.to_string()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GaussRat {
        let part = |rng: &mut R| {
            BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=6)))
        };
        let re = part(rng);
        let im = part(rng);
        GaussRat::new(re, im)
    }

    fn elements(&self) -> Option<Vec<GaussRat>> {
        None
    }

    fn multiplicative_generator(&self) -> Option<GaussRat> {
        None
    }
}
