//! Deterministic factorization of `u64` values: trial division by small
//! primes, then Brent-cycle Pollard rho with a Miller-Rabin primality
//! check using a base set that is exact for the full 64-bit range.

/// Prime factorization as `(prime, exponent)` pairs in increasing prime
/// order; the empty list represents `1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
            .max(1)
    }

    /// All positive divisors, sorted increasing.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            let mut pk = 1u64;
            for _ in 0..=e {
                for &d in &divs {
                    next.push(d * pk);
                }
                pk = pk.saturating_mul(p);
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the fixed base set decides primality
/// correctly for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `n` must be odd, composite, and not a
/// prime power handled by trial division.
fn pollard_brent(n: u64) -> u64 {
    // Deterministic parameter sweep so factorizations are reproducible.
    for c in 1..64u64 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard rho exhausted its parameter sweep on {n}")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const TRIAL_BOUND: u64 = 100_000;

/// Exact, deterministic prime factorization of `n >= 1`.
pub fn factorize(n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut rest = n.max(1);
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut p = 3u64;
    while p <= TRIAL_BOUND && p * p <= rest {
        push(p, &mut rest);
        p += 2;
    }
    let mut stack = Vec::new();
    if rest > 1 {
        stack.push(rest);
    }
    let mut large = Vec::new();
    while let Some(v) = stack.pop() {
        if is_prime(v) {
            large.push(v);
            continue;
        }
        let r = v.isqrt();
        if r * r == v {
            stack.push(r);
            stack.push(r);
            continue;
        }
        let d = pollard_brent(v);
        stack.push(d);
        stack.push(v / d);
    }
    large.sort_unstable();
    for v in large {
        match factors.iter_mut().find(|(p, _)| *p == v) {
            Some((_, e)) => *e += 1,
            None => factors.push((v, 1)),
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Factorization { factors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_pins() {
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(1).factors(), &[]);
        // Cross-checked by the trial-division oracle below as well.
        assert_eq!(factorize(9991).factors(), &[(97, 1), (103, 1)]);
    }

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2u64;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factorize_matches_trial_division() {
        for n in 1..5_000u64 {
            assert_eq!(factorize(n).factors(), trial_division_oracle(n), "n = {n}");
        }
        for n in [
            999_999_937u64 * 2,
            1_000_003u64 * 1_000_033,
            (1 << 61) - 1,
            600_851_475_143,
        ] {
            assert_eq!(factorize(n).factors(), trial_division_oracle(n), "n = {n}");
            assert_eq!(factorize(n).value(), n);
        }
    }

    #[test]
    fn divisors_sorted_and_complete() {
        let d = factorize(360).divisors();
        assert_eq!(d.len(), 24);
        assert!(d.windows(2).all(|w| w[0] < w[1]));
        assert!(d.iter().all(|&x| 360 % x == 0));
    }

    #[test]
    fn is_prime_agrees_with_sieve() {
        let n = 10_000usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=n {
            if sieve[i] {
                for j in (i * i..=n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for i in 0..=n {
            assert_eq!(is_prime(i as u64), sieve[i], "i = {i}");
        }
    }
}
