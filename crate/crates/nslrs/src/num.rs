//! Small integer helpers shared by the field and group layers.
//!
//! Everything here runs at desk scale: the largest integers we factor are
//! below 2^40, so plain trial division is sufficient and keeps the code
//! deterministic.

/// Greatest common divisor.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `base^exp` with overflow checks, as u128 to give callers headroom.
pub fn pow_u128(base: u64, exp: u32) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128).expect("power overflow");
    }
    acc
}

/// `base^exp mod m` over u64 moduli.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b: u128 = (base % m) as u128;
    let m = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, returned as (prime, exponent)
/// pairs in ascending prime order. Callers stay under 2^40 so the divisor
/// scan never exceeds 2^20 steps.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while (d as u128) * (d as u128) <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
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

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Writes `n` as `p^s` for a prime `p`, if it is a prime power.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let f = factorize(n);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Multiplicative order of `a` modulo `n`; requires gcd(a, n) = 1.
pub fn order_mod(a: u64, n: u64) -> u64 {
    assert_eq!(gcd(a % n, n), 1, "order_mod needs gcd(a, n) = 1");
    if n == 1 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1u64;
    while x != 1 {
        x = (x as u128 * (a % n) as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(2047), vec![(23, 1), (89, 1)]);
        // 2^23 - 1 is prime
        assert_eq!(factorize(8388607), vec![(47, 1), (178481, 1)]);
    }

    #[test]
    fn divisors_of_120() {
        assert_eq!(
            divisors(120),
            vec![1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 40, 60, 120]
        );
    }

    #[test]
    fn orders() {
        assert_eq!(order_mod(2, 23), 11);
        assert_eq!(order_mod(3, 8), 2);
        assert_eq!(order_mod(2, 7), 3);
        assert_eq!(order_mod(27, 104), 2);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(as_prime_power(27), Some((3, 3)));
        assert_eq!(as_prime_power(12), None);
        assert_eq!(as_prime_power(2), Some((2, 1)));
    }
}
