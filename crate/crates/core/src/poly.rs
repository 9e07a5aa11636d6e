//! Univariate polynomials in the family parameter `k` with arbitrary-precision
//! integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer polynomial in `k`; `coeffs[i]` is the coefficient of `k^i`.
///
/// The zero polynomial is the empty coefficient list, and every other value
/// has a nonzero leading coefficient, so structural equality is polynomial
/// identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = IntPolynomial {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new([c.into()])
    }

    /// The parameter `k` itself.
    pub fn k() -> Self {
        Self::new([0, 1])
    }

    /// `slope * k + intercept`
    pub fn linear(slope: impl Into<BigInt>, intercept: impl Into<BigInt>) -> Self {
        Self::new([intercept.into(), slope.into()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        self.is_constant().then(|| self.coeff(0))
    }

    /// Horner evaluation at `k`.
    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    /// `self(inner(k))`
    pub fn compose(&self, inner: &IntPolynomial) -> IntPolynomial {
        self.coeffs
            .iter()
            .rev()
            .fold(IntPolynomial::zero(), |acc, c| {
                &(&acc * inner) + &IntPolynomial::constant(c.clone())
            })
    }

    pub fn pow(&self, e: u32) -> IntPolynomial {
        (0..e).fold(IntPolynomial::constant(1), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|x| x * c))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

/// Exact identity test on canonical coefficient lists.
pub fn poly_equal(p: &IntPolynomial, q: &IntPolynomial) -> bool {
    p == q
}

pub fn poly_eval(p: &IntPolynomial, k: &BigInt) -> BigInt {
    p.eval(k)
}

impl From<BigInt> for IntPolynomial {
    fn from(c: BigInt) -> Self {
        IntPolynomial::constant(c)
    }
}

impl From<i64> for IntPolynomial {
    fn from(c: i64) -> Self {
        IntPolynomial::constant(c)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)))
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)))
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

/// Renders as e.g. `72k^2 - 60k + 14`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("k")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn canonical_zero_is_empty() {
        assert!(IntPolynomial::new([0, 0, 0]).coeffs().is_empty());
        assert_eq!(IntPolynomial::new([0]), IntPolynomial::zero());
        assert_eq!(IntPolynomial::new([1, 2, 0]).degree(), Some(1));
        let p = IntPolynomial::linear(3, 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(poly_eval(&IntPolynomial::linear(12, -2), &b(1)), b(10));
        assert_eq!(poly_eval(&IntPolynomial::zero(), &b(1_000_000)), b(0));
        assert_eq!(poly_eval(&IntPolynomial::new([14, -60, 72]), &b(1)), b(26));
    }

    #[test]
    fn equality_examples() {
        let k1 = IntPolynomial::linear(1, 1);
        assert!(poly_equal(&k1.pow(2), &IntPolynomial::new([1, 2, 1])));
        assert!(!poly_equal(
            &IntPolynomial::linear(5, -4),
            &IntPolynomial::linear(6, -4)
        ));
    }

    #[test]
    fn compose_matches_substitution() {
        // (k^2 + 1)(2k - 3) = 4k^2 - 12k + 10
        let p = IntPolynomial::new([1, 0, 1]);
        let q = IntPolynomial::linear(2, -3);
        assert_eq!(p.compose(&q), IntPolynomial::new([10, -12, 4]));
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::new([14, -60, 72]).to_string(),
            "72k^2 - 60k + 14"
        );
        assert_eq!(IntPolynomial::new([0, -1]).to_string(), "-k");
        assert_eq!(IntPolynomial::new([-4, 6]).to_string(), "6k - 4");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::constant(-7).to_string(), "-7");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = IntPolynomial> {
            proptest::collection::vec(-1_000_000i64..=1_000_000, 0..=7).prop_map(IntPolynomial::new)
        }

        proptest! {
            #[test]
            fn identity_agrees_with_pointwise(
                p in poly(),
                q in poly(),
                perturb in proptest::option::of((0usize..7, -3i64..=3)),
                ks in proptest::collection::vec(-1_000i64..1_000, 20),
            ) {
                // Bias towards equal pairs so both branches are exercised.
                let q = match perturb {
                    Some((i, delta)) => {
                        let mut c: Vec<BigInt> = p.coeffs().to_vec();
                        c.resize(c.len().max(i + 1), BigInt::zero());
                        c[i] += delta;
                        IntPolynomial::new(c)
                    }
                    None => q,
                };
                let same = poly_equal(&p, &q);
                let mut all_agree = true;
                for k in &ks {
                    let k = b(*k);
                    let agree = p.eval(&k) == q.eval(&k);
                    if same {
                        prop_assert!(agree);
                    }
                    all_agree &= agree;
                }
                if !all_agree {
                    prop_assert!(!same);
                }
            }

            #[test]
            fn ring_ops_are_pointwise(p in poly(), q in poly(), k in -500i64..500) {
                let k = b(k);
                prop_assert_eq!((&p + &q).eval(&k), p.eval(&k) + q.eval(&k));
                prop_assert_eq!((&p - &q).eval(&k), p.eval(&k) - q.eval(&k));
                prop_assert_eq!((&p * &q).eval(&k), p.eval(&k) * q.eval(&k));
                prop_assert_eq!(p.compose(&q).eval(&k), p.eval(&q.eval(&k)));
            }
        }
    }
}
