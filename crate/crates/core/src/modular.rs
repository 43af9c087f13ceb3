//! Small-modulus number theory: Jacobi symbols, primality, orders.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::InvalidParameters(format!("Jacobi symbol needs odd n ≥ 1, got {n}")));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().expect("small");
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32() == Some(3) && (&n % 4u32).to_u32() == Some(3) {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    jacobi(a, &BigInt::from(p)).expect("odd prime")
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic Miller–Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
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

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&n| is_prime(n)).collect()
}

pub fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `x mod m` as a `u64` in `[0, m)`.
pub fn residue(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().expect("reduced")
}

/// Inverse of `a` modulo the prime `p`.
pub fn inverse_mod_prime(a: u64, p: u64) -> Option<u64> {
    (!a.is_multiple_of(p)).then(|| pow_mod(a, p - 2, p))
}

/// Multiplicative order of `a` modulo the prime `p`.
pub fn multiplicative_order(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, p);
        k += 1;
    }
    Some(k)
}

/// Exponent of `p` in `n`; `None` for `n = 0`.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(e);
        }
        n = q;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn jacobi_values() {
        assert_eq!(jacobi(&big(32), &big(35)).unwrap(), -1);
        assert_eq!(jacobi(&big(32), &big(7)).unwrap(), 1);
        assert_eq!(jacobi(&big(1), &big(91)).unwrap(), 1);
        assert_eq!(jacobi(&big(5), &big(15)).unwrap(), 0);
        assert_eq!(jacobi(&big(-1), &big(3)).unwrap(), -1);
        assert!(jacobi(&big(3), &big(10)).is_err());
    }

    #[test]
    fn jacobi_matches_euler_criterion() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in 1..p {
                let euler = pow_mod(a, (p - 1) / 2, p);
                let expected = if euler == 1 { 1 } else { -1 };
                assert_eq!(legendre(&big(a as i64), p), expected, "({a}|{p})");
            }
        }
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_up_to(30);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(561));
    }

    #[test]
    fn orders_and_valuations() {
        assert_eq!(multiplicative_order(3, 5), Some(4));
        assert_eq!(multiplicative_order(1, 3), Some(1));
        assert_eq!(multiplicative_order(0, 3), None);
        assert_eq!(inverse_mod_prime(2, 5), Some(3));
        assert_eq!(valuation(&big(6930), 3), Some(2));
        assert_eq!(valuation(&big(75025), 5), Some(2));
        assert_eq!(valuation(&big(0), 5), None);
    }
}
