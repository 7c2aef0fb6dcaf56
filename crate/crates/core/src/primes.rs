//! Primality testing and trial-division factorization for machine-word
//! integers and for orders that arise as element orders.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest integer `factorize` accepts. Trial division runs up to its square
/// root, i.e. 10^6 iterations at most.
pub const FACTOR_CAP: u64 = 1_000_000_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{p} is not prime")))
    }
}

/// Factorizes `n` by trial division into ascending `(prime, exponent)` pairs.
/// `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    if n > FACTOR_CAP {
        return Err(Error::size("integer to factorize", n, FACTOR_CAP));
    }
    let mut out = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

const BIG_TRIAL_BOUND: u64 = 1 << 20;

/// Factorizes an arbitrary-precision integer whose prime factors fit in a
/// `u64`. Small factors are removed by trial division; a remaining cofactor
/// must be a prime or a prime power, otherwise a size error is returned.
pub fn factorize_big(n: &BigUint) -> Result<Vec<(u64, BigUint)>> {
    if n.is_zero() {
        return Err(Error::Domain("cannot factorize 0".into()));
    }
    if let Some(small) = n.to_u64() {
        if small <= FACTOR_CAP {
            return Ok(factorize(small)?
                .into_iter()
                .map(|(p, e)| (p, BigUint::from(e)))
                .collect());
        }
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= BIG_TRIAL_BOUND && BigUint::from(d) * d <= rest {
        let (q, r) = rest.div_rem(&BigUint::from(d));
        if r.is_zero() {
            rest = q;
            let mut e = BigUint::one();
            loop {
                let (q, r) = rest.div_rem(&BigUint::from(d));
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1u32;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    // No factor below the bound is left, so a cofactor under bound^2 is prime.
    if let Some(small) = rest.to_u64() {
        if small < BIG_TRIAL_BOUND * BIG_TRIAL_BOUND || is_prime(small) {
            out.push((small, BigUint::one()));
            return Ok(out);
        }
    }
    let bits = rest.bits() as u32;
    for e in 2..=bits {
        let root = rest.nth_root(e);
        if let Some(r) = root.to_u64() {
            if is_prime(r) && root.pow(e) == rest {
                out.push((r, BigUint::from(e)));
                out.sort_by_key(|&(p, _)| p);
                return Ok(out);
            }
        }
    }
    Err(Error::size(
        "cofactor without small prime factors",
        rest,
        "a single u64 prime power",
    ))
}
