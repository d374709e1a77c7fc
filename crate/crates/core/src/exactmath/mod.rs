//! Exact arbitrary-precision arithmetic and the number-theoretic
//! primitives used by the counting arguments: squarefree decomposition,
//! factorization, divisor counts, Legendre symbols, perfect-square tests,
//! and representation counts for `x^2 + D*y^2 = M`.
//!
//! All values are immutable and all operations are pure functions.

mod primes;
mod quad;

pub use primes::{factorize, is_prime, Factorization};
pub use quad::Quad;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("expected a positive integer, got {0}")]
    NotPositive(BigInt),
    #[error("expected a nonnegative integer, got {0}")]
    Negative(BigInt),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("value {0} does not fit the supported factorization range")]
    TooLarge(BigInt),
    #[error("discriminant {0} must be squarefree and different from 0 and 1")]
    BadDiscriminant(i64),
    #[error("mixed discriminants {0} and {1} in quadratic-field arithmetic")]
    MixedDiscriminants(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
}

/// Rational with value `n`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n / d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer value of `r`, if `r` has denominator one.
pub fn rat_to_int(r: &Rat) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Exact rational square root: `Some(s)` with `s >= 0` and `s^2 = r`, when
/// it exists.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = is_perfect_square_big(&r.numer().magnitude())?;
    let den = is_perfect_square_big(&r.denom().magnitude())?;
    Some(Rat::new(num.into(), den.into()))
}

fn is_perfect_square_big(n: &BigUint) -> Option<BigUint> {
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Square root of a nonnegative integer, when `n` is a perfect square.
///
/// Negative input is rejected rather than treated as "not a square".
pub fn is_perfect_square(n: &BigInt) -> Result<Option<BigInt>, ExactError> {
    if n.is_negative() {
        return Err(ExactError::Negative(n.clone()));
    }
    Ok(is_perfect_square_big(n.magnitude()).map(BigInt::from))
}

/// `u64` convenience form of [`is_perfect_square`].
pub fn is_square_u64(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Writes `n = s^2 * f` with `f` squarefree; returns `(s, f)`.
pub fn squarefree_decomp(n: u64) -> Result<(u64, u64), ExactError> {
    if n == 0 {
        return Err(ExactError::NotPositive(BigInt::zero()));
    }
    let mut s = 1u64;
    let mut f = 1u64;
    for &(p, e) in factorize(n).factors() {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f *= p;
        }
    }
    Ok((s, f))
}

/// [`squarefree_decomp`] for big integers that fit the factorization range.
pub fn squarefree_decomp_big(n: &BigInt) -> Result<(BigInt, u64), ExactError> {
    if !n.is_positive() {
        return Err(ExactError::NotPositive(n.clone()));
    }
    let small = n.to_u64().ok_or_else(|| ExactError::TooLarge(n.clone()))?;
    let (s, f) = squarefree_decomp(small)?;
    Ok((BigInt::from(s), f))
}

/// True when `n` has no repeated prime factor.
pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).factors().iter().all(|&(_, e)| e == 1)
}

/// Number of positive divisors of `n`.
pub fn tau(n: u64) -> Result<u64, ExactError> {
    if n == 0 {
        return Err(ExactError::NotPositive(BigInt::zero()));
    }
    Ok(factorize(n)
        .factors()
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product())
}

/// Legendre symbol `(a/p)` for an odd prime `p`: `0` when `p | a`, `1` for
/// nonzero quadratic residues, `-1` otherwise.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8, ExactError> {
    if p == 2 || !is_prime(p) {
        return Err(ExactError::NotOddPrime(p));
    }
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return Ok(0);
    }
    let r = a.modpow(&BigInt::from((p - 1) / 2), &pb);
    Ok(if r.is_one() { 1 } else { -1 })
}

/// Exact count of integer pairs `(x, y)` with `x^2 + D*y^2 = M`, counting
/// signs and zero coordinates.
///
/// Runs the brute-force scan over `|y| <= sqrt(M/D)`; this is the reference
/// path that every faster route must agree with.
pub fn count_representations(d: u64, m: u64) -> Result<u64, ExactError> {
    if d == 0 {
        return Err(ExactError::NotPositive(BigInt::zero()));
    }
    if m == 0 {
        return Err(ExactError::NotPositive(BigInt::zero()));
    }
    let mut count = 0u64;
    let mut y = 0u64;
    while let Some(rem) = m.checked_sub(d.saturating_mul(y * y)) {
        if is_square_u64(rem).is_some() {
            let x_ways = if rem == 0 { 1 } else { 2 };
            let y_ways = if y == 0 { 1 } else { 2 };
            count += x_ways * y_ways;
        }
        y += 1;
        if y.checked_mul(y).and_then(|yy| yy.checked_mul(d)).is_none() {
            break;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn squarefree_decomp_pins() {
        assert_eq!(squarefree_decomp(48).unwrap(), (4, 3));
        assert_eq!(squarefree_decomp(1).unwrap(), (1, 1));
        // 360 = 36 * 10, checked against the trial-factorization oracle below.
        assert_eq!(squarefree_decomp(360).unwrap(), (6, 10));
        assert!(squarefree_decomp(0).is_err());
    }

    #[test]
    fn squarefree_decomp_reassembles_exhaustively() {
        for n in 1..=1_000_000u64 {
            let (s, f) = squarefree_decomp(n).unwrap();
            assert_eq!(s * s * f, n, "n = {n}");
        }
    }

    #[test]
    fn squarefree_parts_are_squarefree_in_range() {
        for n in 1..=20_000u64 {
            let (_, f) = squarefree_decomp(n).unwrap();
            assert!(is_squarefree(f), "n = {n}, f = {f}");
        }
    }

    #[test]
    fn tau_pins() {
        assert_eq!(tau(1).unwrap(), 1);
        assert_eq!(tau(12).unwrap(), 6);
        for p in [2u64, 3, 97, 9973] {
            assert_eq!(tau(p).unwrap(), 2);
        }
    }

    #[test]
    fn tau_matches_divisor_sieve() {
        // Divisor-count sieve as the independent oracle.
        let n = 1_000_000usize;
        let mut counts = vec![0u32; n + 1];
        for d in 1..=n {
            for multiple in (d..=n).step_by(d) {
                counts[multiple] += 1;
            }
        }
        for v in 1..=n {
            assert_eq!(tau(v as u64).unwrap(), u64::from(counts[v]), "v = {v}");
        }
    }

    #[test]
    fn legendre_pins() {
        assert_eq!(legendre(&BigInt::from(1), 3).unwrap(), 1);
        assert_eq!(legendre(&BigInt::from(-1), 5).unwrap(), 1);
        assert_eq!(legendre(&BigInt::from(2), 3).unwrap(), -1);
        assert!(legendre(&BigInt::from(3), 2).is_err());
        assert!(legendre(&BigInt::from(3), 15).is_err());
    }

    #[test]
    fn legendre_matches_residue_tables() {
        for p in (3..=199u64).filter(|&p| is_prime(p)) {
            let mut residues = vec![false; p as usize];
            for x in 0..p {
                residues[((x * x) % p) as usize] = true;
            }
            for a in 0..p {
                let expected = if a == 0 {
                    0
                } else if residues[a as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(&BigInt::from(a), p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn perfect_square_pins() {
        assert_eq!(is_perfect_square(&BigInt::from(0)).unwrap(), Some(BigInt::from(0)));
        assert_eq!(is_perfect_square(&BigInt::from(25)).unwrap(), Some(BigInt::from(5)));
        assert_eq!(is_perfect_square(&BigInt::from(26)).unwrap(), None);
        assert!(is_perfect_square(&BigInt::from(-4)).is_err());
    }

    #[test]
    fn count_representations_pins() {
        // Brute force over |y| <= 5 finds 12 points on x^2 + y^2 = 25.
        assert_eq!(count_representations(1, 25).unwrap(), 12);
        assert_eq!(count_representations(1, 3).unwrap(), 0);
        // (+-4, +-1) and (+-1, +-2).
        assert_eq!(count_representations(5, 21).unwrap(), 8);
    }

    /// Independent brute force with the roles of the loop variables swapped:
    /// scan x and solve for y.
    fn count_representations_by_x(d: u64, m: u64) -> u64 {
        let mut count = 0;
        for x in 0..=m.isqrt() {
            let rem = m - x * x;
            if rem % d == 0 {
                if let Some(y) = is_square_u64(rem / d) {
                    count += if x == 0 { 1 } else { 2 } * if y == 0 { 1 } else { 2 };
                }
            }
        }
        count
    }

    #[test]
    fn count_representations_agrees_with_swapped_loop() {
        for d in 1..=20u64 {
            for m in (1..=10_000u64).step_by(7) {
                assert_eq!(
                    count_representations(d, m).unwrap(),
                    count_representations_by_x(d, m),
                    "d={d} m={m}"
                );
            }
        }
    }

    #[test]
    fn rat_sqrt_works() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(27, 4)), None);
        assert_eq!(rat_sqrt(&rat_int(0)), Some(rat_int(0)));
        assert_eq!(rat_sqrt(&rat_int(-1)), None);
    }

    proptest! {
        #[test]
        fn rat_field_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50, cd in 1i64..20) {
            let a = rat(an, ad);
            let b = rat(bn, bd);
            let c = rat(cn, cd);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !b.is_zero() {
                prop_assert_eq!(&a / &b * &b, a.clone());
            }
        }

        #[test]
        fn rat_canonical_form_unique(n in -1000i64..1000, d in 1i64..100, k in 1i64..50) {
            // Scaling numerator and denominator by k must give the identical value.
            prop_assert_eq!(rat(n * k, d * k), rat(n, d));
            let r = rat(n, d);
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one() || r.numer().is_zero());
        }

        #[test]
        fn squarefree_reassembly_random(n in 1u64..100_000_000) {
            let (s, f) = squarefree_decomp(n).unwrap();
            prop_assert_eq!(s * s * f, n);
            prop_assert!(is_squarefree(f));
        }
    }
}
