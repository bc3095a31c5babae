//! Small-integer number theory used throughout: primality, factorization,
//! modular powers and inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
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

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (g, x, _) = ext_gcd_i128(a as i128 % p as i128, p as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(p as i128) as u64
}

fn ext_gcd_i128(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd_i128(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // deterministic for all u64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d as u128, n);
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

pub fn next_prime(n: u64) -> u64 {
    let mut k = n + 1;
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// Prime factorization by trial division, ascending primes.
pub fn factor_u128(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor_u128(n as u128)
        .into_iter()
        .map(|(p, e)| (p as u64, e))
        .collect()
}

/// Splits |n| into prime factors below `limit` and an unfactored cofactor
/// (1 when fully factored).
pub fn partial_factor(n: &BigInt, limit: u64) -> (Vec<BigInt>, BigInt) {
    let mut m = n.abs();
    let mut primes = Vec::new();
    if m.is_zero() {
        return (primes, m);
    }
    let mut d = 2u64;
    while d <= limit {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        if (&m % &bd).is_zero() {
            primes.push(bd.clone());
            while (&m % &bd).is_zero() {
                m /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let small = m.to_u64().map(is_prime).unwrap_or(false);
        if small || &BigInt::from(d) * &BigInt::from(d) > m {
            primes.push(m);
            m = BigInt::one();
        }
    }
    primes.sort();
    (primes, m)
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

pub fn is_prime_power_of(n: u64, p: u64) -> bool {
    let mut m = n;
    while m > 1 && m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// The largest exponent `s` with `t^s | n`.
pub fn valuation(mut n: u64, t: u64) -> u32 {
    let mut s = 0;
    while n > 0 && n.is_multiple_of(t) {
        n /= t;
        s += 1;
    }
    s
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn bigint_mod_u64(a: &BigInt, p: u64) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(91) && !is_prime(1));
        assert!(is_prime(1_000_003));
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(next_prime(7), 11);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(valuation(24, 2), 3);
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(2, 5), 3);
        for a in 1..13 {
            assert_eq!(mul_mod(a, inv_mod(a, 13), 13), 1);
        }
    }

    #[test]
    fn partial_factorization() {
        let (ps, rest) = partial_factor(&BigInt::from(-360), 1000);
        assert_eq!(ps, vec![BigInt::from(2), BigInt::from(3), BigInt::from(5)]);
        assert!(rest.is_one());
    }
}
