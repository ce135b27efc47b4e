//! Word-sized modular arithmetic and small prime utilities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Result of trial division: small prime factors with multiplicity and the
/// remaining cofactor, which is 1 when the factorization is complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFactorization {
    pub factors: Vec<(u64, u32)>,
    pub cofactor: BigInt,
}

impl TrialFactorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Trial division of `|n|` by every prime up to `bound`. A cofactor below
/// `bound²` is necessarily prime and is promoted into the factor list when it
/// fits in a word.
pub fn trial_factor(n: &BigInt, bound: u64) -> TrialFactorization {
    let mut rest = n.abs();
    let mut factors = Vec::new();
    if rest.is_zero() {
        return TrialFactorization { factors, cofactor: rest };
    }
    for p in primes_up_to(bound) {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    if !rest.is_one() {
        let b = BigInt::from(bound);
        if rest <= &b * &b {
            if let Ok(p) = u64::try_from(&rest) {
                factors.push((p, 1));
                factors.sort_unstable();
                rest = BigInt::one();
            }
        }
    }
    TrialFactorization { factors, cofactor: rest }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_power() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(0, 7), None);
        assert_eq!(pow_mod(2, 10, 1000), 24);
        for p in [2u64, 3, 97, 1_000_003] {
            for a in 1..20u64.min(p) {
                assert_eq!(mul_mod(a, inv_mod(a, p).unwrap(), p), 1);
            }
        }
    }

    #[test]
    fn primality() {
        let sieve = primes_up_to(1000);
        for n in 0..=1000u64 {
            assert_eq!(is_prime(n), sieve.binary_search(&n).is_ok(), "{n}");
        }
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn trial_division() {
        let n = BigInt::from(2u64.pow(5) * 3 * 43 * 43 * 1_000_003);
        let f = trial_factor(&n, 1000);
        assert_eq!(f.factors, vec![(2, 5), (3, 1), (43, 2)]);
        assert_eq!(f.cofactor, BigInt::from(1_000_003));
        let f = trial_factor(&n, 1100);
        assert_eq!(f.factors, vec![(2, 5), (3, 1), (43, 2), (1_000_003, 1)]);
        assert!(f.cofactor.is_one());
    }
}
