//! Small integer utilities shared across the crate: primality at desk
//! scale, Möbius, divisor enumeration, Legendre symbols and a tiny
//! deterministic PRNG for seeded sampling.

/// Deterministic trial-division primality test; inputs stay below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Möbius function of n >= 1.
pub fn mobius(mut n: u64) -> i64 {
    assert!(n >= 1);
    let mut factors = 0;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Euler phi.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// x^e mod m without overflow for m < 2^32.
pub fn pow_mod(mut x: u64, mut e: u64, m: u64) -> u64 {
    assert!(m > 0 && m < (1 << 32));
    let mut acc = 1 % m;
    x %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % m;
        }
        x = x * x % m;
        e >>= 1;
    }
    acc
}

/// Inverse of x mod m, for gcd(x, m) = 1.
pub fn inv_mod(x: u64, m: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (x % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{x} is not invertible mod {m}");
    t.rem_euclid(m as i128) as u64
}

/// Legendre symbol (a/p) for odd prime p: 0, 1 or -1.
pub fn legendre_symbol(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let s = pow_mod(a, (p - 1) / 2, p);
    if s == 1 {
        1
    } else {
        -1
    }
}

/// SplitMix64: tiny deterministic generator for seeded sampling. The
/// sequence for a given seed is part of the report contract, so this
/// stays hand-rolled rather than depending on an external RNG.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in [0, bound) by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    /// k distinct values from [0, bound), ascending. If k >= bound the
    /// whole range is returned.
    pub fn sample_distinct(&mut self, bound: u64, k: usize) -> Vec<u64> {
        if k as u64 >= bound {
            return (0..bound).collect();
        }
        let mut chosen = std::collections::BTreeSet::new();
        while chosen.len() < k {
            chosen.insert(self.below(bound));
        }
        chosen.into_iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(24), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn modular_inverse() {
        for m in [5u64, 7, 16, 25, 121] {
            for x in 1..m {
                if gcd(x, m) == 1 {
                    assert_eq!(x * inv_mod(x, m) % m, 1);
                }
            }
        }
    }

    #[test]
    fn legendre_matches_squares() {
        for p in [3u64, 5, 7, 11, 13] {
            let squares: std::collections::HashSet<u64> =
                (1..p).map(|x| x * x % p).collect();
            for a in 1..p {
                let expect = if squares.contains(&a) { 1 } else { -1 };
                assert_eq!(legendre_symbol(a as i64, p), expect);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut a = SplitMix64::new(0);
        let mut b = SplitMix64::new(0);
        assert_eq!(a.sample_distinct(1000, 10), b.sample_distinct(1000, 10));
        let s = SplitMix64::new(0).sample_distinct(8, 64);
        assert_eq!(s.len(), 8);
    }
}
