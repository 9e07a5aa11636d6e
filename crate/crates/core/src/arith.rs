//! Integer helpers: trial-division factorization and exact square roots.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Prime factorization `n = Π p^e`, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigInt, u32)] {
        &self.factors
    }

    /// Multiplies the factorization back out.
    pub fn product(&self) -> BigInt {
        self.factors.iter().fold(BigInt::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors `n >= 2` by trial division up to `sqrt(n)`.
///
/// Meant for the discriminant ranges this crate enumerates (up to about
/// 10^12); the cost is `O(sqrt(n))` divisions.
pub fn factorize(n: &BigInt) -> Result<Factorization> {
    if *n < BigInt::from(2) {
        return Err(Error::FactorizeDomain(n.clone()));
    }
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let push = |factors: &mut Vec<(BigInt, u32)>, rest: &mut BigInt, p: &BigInt| {
        let mut e = 0u32;
        while (&*rest % p).is_zero() {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
    };

    push(&mut factors, &mut rest, &BigInt::from(2));
    let mut p = BigInt::from(3);
    while &p * &p <= rest {
        // Machine words are much faster once the cofactor fits.
        if let (Ok(r), Ok(q)) = (u64::try_from(&rest), u64::try_from(&p)) {
            trial_divide_u64(r, q, &mut factors);
            return Ok(Factorization { factors });
        }
        push(&mut factors, &mut rest, &p);
        p += 2;
    }
    if rest > BigInt::one() {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// Trial division of an odd-part cofactor `n` by odd `p, p + 2, ...`.
fn trial_divide_u64(mut n: u64, mut p: u64, factors: &mut Vec<(BigInt, u32)>) {
    while p.saturating_mul(p) <= n {
        let mut e = 0u32;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((BigInt::from(p), e));
        }
        p += 2;
    }
    if n > 1 {
        factors.push((BigInt::from(n), 1));
    }
}

/// Deterministic primality by trial division.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    factorize(n).is_ok_and(|f| f.factors == [(n.clone(), 1)])
}

/// Returns `r` with `r * r == n` when `n` is a perfect square.
pub fn integer_sqrt_exact(n: &BigInt) -> Result<Option<BigInt>> {
    if n.is_negative() {
        return Err(Error::NegativeSqrt(n.clone()));
    }
    let r = n.sqrt();
    Ok((&r * &r == *n).then_some(r))
}

/// `n` is a perfect square (negative numbers are not).
pub fn is_square(n: &BigInt) -> bool {
    matches!(integer_sqrt_exact(n), Ok(Some(_)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn pairs(f: &Factorization) -> Vec<(i64, u32)> {
        f.factors()
            .iter()
            .map(|(p, e)| (i64::try_from(p).unwrap(), *e))
            .collect()
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(pairs(&factorize(&b(74)).unwrap()), [(2, 1), (37, 1)]);
        assert_eq!(pairs(&factorize(&b(2)).unwrap()), [(2, 1)]);
        assert_eq!(pairs(&factorize(&b(36)).unwrap()), [(2, 2), (3, 2)]);
        assert_eq!(pairs(&factorize(&b(999_983)).unwrap()), [(999_983, 1)]);
        assert_eq!(
            pairs(&factorize(&b(2 * 2 * 3 * 7 * 7 * 1009)).unwrap()),
            [(2, 2), (3, 1), (7, 2), (1009, 1)]
        );
    }

    #[test]
    fn factorize_rejects_small() {
        assert!(matches!(factorize(&b(1)), Err(Error::FactorizeDomain(_))));
        assert!(factorize(&b(0)).is_err());
        assert!(factorize(&b(-12)).is_err());
    }

    #[test]
    fn factorization_display() {
        assert_eq!(factorize(&b(360)).unwrap().to_string(), "2^3 * 3^2 * 5");
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(integer_sqrt_exact(&b(25)).unwrap(), Some(b(5)));
        assert_eq!(integer_sqrt_exact(&b(0)).unwrap(), Some(b(0)));
        assert_eq!(integer_sqrt_exact(&b(148)).unwrap(), None);
        assert!(matches!(
            integer_sqrt_exact(&b(-4)),
            Err(Error::NegativeSqrt(_))
        ));
    }

    #[test]
    fn sqrt_of_squares_up_to_1e5() {
        for n in 0..=100_000i64 {
            assert_eq!(integer_sqrt_exact(&b(n * n)).unwrap(), Some(b(n)));
        }
    }

    #[test]
    fn sqrt_huge() {
        let r: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(integer_sqrt_exact(&(&r * &r)).unwrap(), Some(r.clone()));
        assert_eq!(integer_sqrt_exact(&(&r * &r + 1)).unwrap(), None);
    }

    #[test]
    fn primality() {
        let primes: Vec<i64> = (0..60).filter(|n| is_prime(&b(*n))).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn product_inverts_factorize(n in 2i64..2_000_000) {
                let f = factorize(&b(n)).unwrap();
                prop_assert_eq!(f.product(), b(n));
                for w in f.factors().windows(2) {
                    prop_assert!(w[0].0 < w[1].0);
                }
                for p in f.primes() {
                    prop_assert!(is_prime(p));
                }
            }

            #[test]
            fn factorize_inverts_product(
                exps in proptest::collection::vec(0u32..4, 8)
            ) {
                let small = [2i64, 3, 5, 7, 11, 13, 17, 19];
                let expected: Vec<(BigInt, u32)> = small
                    .iter()
                    .zip(&exps)
                    .filter(|(_, e)| **e > 0)
                    .map(|(p, e)| (b(*p), *e))
                    .collect();
                prop_assume!(!expected.is_empty());
                let canon = Factorization { factors: expected };
                prop_assert_eq!(factorize(&canon.product()).unwrap(), canon);
            }
        }
    }
}
