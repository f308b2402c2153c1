//! Integer number theory used by the field implementations: primality,
//! factorisation and sums of two squares.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const SMALL_PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_LIMIT: u32 = 10_000;

/// Deterministic for n < 3.3·10²⁴ (first twelve prime bases), probabilistic above.
pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigUint::from(n))
}

/// Prime factorisation `n = ∏ p^e` for `n ≥ 1`.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p <= TRIAL_LIMIT {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            *out.entry(bp.clone()).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            *out.entry(m).or_insert(0) += 1;
            continue;
        }
        let d = pollard_rho(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of a u64 fits"), e))
        .collect()
}

/// A nontrivial divisor of a composite `n` (Floyd cycle detection).
fn pollard_rho(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    if let Some(r) = perfect_square_root(n) {
        return r;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn perfect_square_root(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `(a, b)` with `a² + b² = p`, `a ≥ b > 0`, for a prime `p ≡ 1 (mod 4)`.
///
/// Finds `x² ≡ −1 (mod p)` from a quadratic non-residue, then runs the
/// Euclidean algorithm on `(p, x)` until the remainder drops below `√p`.
pub fn two_squares_prime(p: &BigUint) -> (BigUint, BigUint) {
    let one = BigUint::one();
    let p_minus_1 = p - 1u32;
    let quarter = &p_minus_1 >> 2;
    let half = &p_minus_1 >> 1;
    let mut q = BigUint::from(2u32);
    let x = loop {
        if q.modpow(&half, p) == p_minus_1 {
            break q.modpow(&quarter, p);
        }
        q += &one;
    };
    let root = p.sqrt();
    let (mut a, mut b) = (p.clone(), x);
    while b > root {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let c = (p - &b * &b).sqrt();
    debug_assert_eq!(&b * &b + &c * &c, *p);
    if b >= c {
        (b, c)
    } else {
        (c, b)
    }
}

/// Least quadratic non-residue modulo an odd prime.
pub fn least_non_residue(p: u64) -> u64 {
    let half = (p - 1) / 2;
    (2..p).find(|&n| pow_mod(n, half, p) == p - 1).expect("odd primes have non-residues")
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}
