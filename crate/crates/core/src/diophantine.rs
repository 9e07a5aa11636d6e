//! Hassett's conditions on a discriminant `d`:
//!
//! * `(*)`   `d > 6` and `d ≡ 0, 2 (mod 6)`;
//! * `(**)`  `d` is not divisible by 4, 9, or any odd prime `p ≡ 2 (mod 3)`;
//! * `(***)` `a²d = 2n² + 2n + 2` has an integral solution.
//!
//! `(***)` is decided exactly. Completing the square gives
//! `2a²d = (2n + 1)² + 3`, i.e. `x² − 2d·y² = −3` with `x = 2n + 1`, `y = a`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, integer_sqrt_exact};
use crate::error::{Error, Result};
use crate::pell::{cf_sqrt, pell_solve, pell_solve_nagell, PellSolution};

/// `(a, n)` with `a²d = 2n² + 2n + 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub a: BigInt,
    pub n: BigInt,
}

impl Witness {
    pub fn new(a: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        Witness {
            a: a.into(),
            n: n.into(),
        }
    }

    pub fn satisfies(&self, d: &BigInt) -> bool {
        &self.a * &self.a * d == rhs(&self.n)
    }

    /// Uses the symmetry `n ↦ −1 − n` to make `n ≥ 0`.
    pub fn normalized(&self) -> Witness {
        let n = if self.n.is_negative() {
            -BigInt::one() - &self.n
        } else {
            self.n.clone()
        };
        Witness { a: self.a.abs(), n }
    }

    /// `(2n + 1, a)` on `x² − 2d·y² = −3`.
    pub fn to_pell(&self, d: &BigInt) -> Result<PellSolution> {
        if !self.satisfies(d) {
            return Err(Error::NotAWitness {
                d: d.clone(),
                a: self.a.clone(),
                n: self.n.clone(),
            });
        }
        let w = self.normalized();
        PellSolution::new(&w.n * 2 + 1, w.a, d * 2, BigInt::from(-3))
    }

    /// Inverse of `to_pell`: requires `N = −3` and even `D`; `x` is odd
    /// because `x² ≡ −3 (mod 4)` has no even solution.
    pub fn from_pell(sol: &PellSolution) -> Result<Witness> {
        let not_witness = || Error::NotAWitness {
            d: sol.d.clone() / 2,
            a: sol.y.clone(),
            n: (&sol.x - BigInt::one()) / 2,
        };
        if !sol.verify() || sol.n != BigInt::from(-3) || sol.d.is_odd() || sol.y.is_zero() {
            return Err(not_witness());
        }
        let w = Witness {
            a: sol.y.clone(),
            n: (&sol.x - BigInt::one()).div_floor(&BigInt::from(2)),
        }
        .normalized();
        debug_assert!(w.satisfies(&(&sol.d / 2)));
        Ok(w)
    }
}

/// `2n² + 2n + 2`
pub fn rhs(n: &BigInt) -> BigInt {
    (n * n + n + 1) * 2
}

fn require_at_least(what: &'static str, min: i64, d: &BigInt) -> Result<()> {
    if *d < BigInt::from(min) {
        Err(Error::BelowMinimum {
            what,
            min,
            got: d.clone(),
        })
    } else {
        Ok(())
    }
}

pub fn condition_star(d: &BigInt) -> bool {
    let r = d.mod_floor(&BigInt::from(6));
    *d > BigInt::from(6) && (r.is_zero() || r == BigInt::from(2))
}

pub fn condition_double_star(d: &BigInt) -> Result<bool> {
    require_at_least("condition (**)", 2, d)?;
    let f = factorize(d)?;
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    let bad_prime = f.primes().any(|p| *p != two && p.mod_floor(&three) == two);
    Ok(f.exponent_of(&two) < 2 && f.exponent_of(&three) < 2 && !bad_prime)
}

/// The Pell certificate for `(***)`, or `None` when none exists.
///
/// Non-square `2d > 9` is decided by convergents; `2d` square by factor
/// pairs; the remaining `2d ∈ {2, 6, 8}` by the Nagell-bound search.
pub fn triple_star_certificate(d: &BigInt) -> Result<Option<PellSolution>> {
    require_at_least("condition (***)", 1, d)?;
    let big_d = d * 2;
    let n = BigInt::from(-3);
    if integer_sqrt_exact(&big_d)?.is_none() && big_d <= BigInt::from(9) {
        return pell_solve_nagell(&big_d, &n);
    }
    pell_solve(&big_d, &n)
}

/// Decides `(***)` and returns the witness with the smallest `a` (and
/// `n ≥ 0`) when it holds.
///
/// Accepts any `d ≥ 1`; only `d` satisfying `(*)` are discriminants of
/// special cubic fourfolds.
pub fn condition_triple_star(d: &BigInt) -> Result<(bool, Option<Witness>)> {
    let cert = triple_star_certificate(d)?;
    let witness = cert.as_ref().map(Witness::from_pell).transpose()?;
    Ok((witness.is_some(), witness))
}

/// Scans `a ∈ [1, a_max]` for `2a²d − 3 = x²` with `n = (x − 1)/2 ≤ n_max`.
///
/// `None` only means there is no witness in the box.
pub fn triple_star_bruteforce(d: &BigInt, a_max: u64, n_max: &BigInt) -> Option<Witness> {
    (1..=a_max).find_map(|a| {
        let a = BigInt::from(a);
        let t: BigInt = &a * &a * d * 2 - 3;
        if t.is_negative() {
            return None;
        }
        let x = integer_sqrt_exact(&t).ok()??;
        let n: BigInt = (x - 1) / 2;
        (n <= *n_max).then_some(Witness { a, n })
    })
}

/// All three conditions for one `d`, with certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub d: BigInt,
    pub star: bool,
    pub double_star: bool,
    pub triple_star: bool,
    pub witness: Option<Witness>,
    pub pell: Option<PellSolution>,
    /// Period length of the continued fraction of `√(2d)` when `2d` is not a
    /// perfect square.
    pub period_length: Option<usize>,
}

impl ConditionReport {
    /// `d = 1` has no prime divisors at all, so `(**)` holds vacuously there.
    pub fn evaluate(d: &BigInt) -> Result<Self> {
        require_at_least("condition report", 1, d)?;
        let pell = triple_star_certificate(d)?;
        let witness = pell.as_ref().map(Witness::from_pell).transpose()?;
        let double_star = if d.is_one() {
            true
        } else {
            condition_double_star(d)?
        };
        let period_length = match cf_sqrt(&(d * 2)) {
            Ok(cf) => Some(cf.period_len()),
            Err(Error::SquareRadicand(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(ConditionReport {
            d: d.clone(),
            star: condition_star(d),
            double_star,
            triple_star: witness.is_some(),
            witness,
            pell,
            period_length,
        })
    }
}
