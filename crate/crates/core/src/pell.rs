//! Continued fractions of quadratic surds and the generalized Pell equation
//! `x² − D·y² = N`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::integer_sqrt_exact;
use crate::error::{Error, Result};

/// `√D = [a0; period, period, ...]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpansion {
    pub a0: BigInt,
    pub period: Vec<BigInt>,
    /// PQa denominators `Q_1, ..., Q_L`; `Q_L = 1`.
    pub denominators: Vec<BigInt>,
}

impl SurdExpansion {
    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// Partial quotients `a1, a2, ...`, cycling through the period.
    pub fn quotients(&self) -> impl Iterator<Item = &BigInt> {
        self.period.iter().cycle()
    }

    /// `p_i² − D·q_i² = (−1)^(i+1)·Q_(i+1)` for the `i`-th convergent,
    /// read off the expansion without building the convergent.
    pub fn convergent_norm(&self, i: usize) -> BigInt {
        let q = &self.denominators[i % self.denominators.len()];
        if i.is_multiple_of(2) {
            -q
        } else {
            q.clone()
        }
    }
}

/// Simple continued fraction of `√D` for non-square `D > 0`, via the PQa
/// recurrence `P' = aQ − P`, `Q' = (D − P'²)/Q`, `a' = ⌊(a0 + P')/Q'⌋`.
/// The period ends at the first partial quotient equal to `2·a0`.
pub fn cf_sqrt(d: &BigInt) -> Result<SurdExpansion> {
    if !d.is_positive() {
        return Err(Error::NonPositiveRadicand(d.clone()));
    }
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        return Err(Error::SquareRadicand(d.clone()));
    }
    let two_a0 = &a0 * 2;
    let (mut p, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let mut period = Vec::new();
    let mut denominators = Vec::new();
    loop {
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
        a = (&a0 + &p) / &q;
        period.push(a.clone());
        denominators.push(q.clone());
        if a == two_a0 {
            break;
        }
    }
    Ok(SurdExpansion {
        a0,
        period,
        denominators,
    })
}

/// A solution of `x² − d·y² = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PellSolution {
    pub x: BigInt,
    pub y: BigInt,
    /// `D`
    pub d: BigInt,
    /// `N`
    pub n: BigInt,
}

impl PellSolution {
    /// Builds a solution after checking the equation exactly.
    pub fn new(x: BigInt, y: BigInt, d: BigInt, n: BigInt) -> Result<Self> {
        if &x * &x - &d * &y * &y != n {
            return Err(Error::NotASolution(Box::new(PellSolution { x, y, d, n })));
        }
        Ok(PellSolution { x, y, d, n })
    }

    pub fn verify(&self) -> bool {
        &self.x * &self.x - &self.d * &self.y * &self.y == self.n
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^2 - {}*{}^2 = {}", self.x, self.d, self.y, self.n)
    }
}

/// Convergents `p_i/q_i` of `√D`, starting with `a0/1`.
pub struct Convergents<'a> {
    quotients: std::iter::Cycle<std::slice::Iter<'a, BigInt>>,
    prev: (BigInt, BigInt),
    cur: (BigInt, BigInt),
    started: bool,
}

impl<'a> Convergents<'a> {
    pub fn new(cf: &'a SurdExpansion) -> Self {
        Convergents {
            quotients: cf.period.iter().cycle(),
            prev: (BigInt::one(), BigInt::zero()),
            cur: (cf.a0.clone(), BigInt::one()),
            started: false,
        }
    }
}

impl Iterator for Convergents<'_> {
    type Item = (BigInt, BigInt);

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
            return Some(self.cur.clone());
        }
        let a = self.quotients.next()?;
        let next = (
            a * &self.cur.0 + &self.prev.0,
            a * &self.cur.1 + &self.prev.1,
        );
        self.prev = std::mem::replace(&mut self.cur, next);
        Some(self.cur.clone())
    }
}

/// Number of convergents after which `p_i² − D·q_i²` repeats: one period when
/// its length is even, two when odd.
fn cycle_len(cf: &SurdExpansion) -> usize {
    let l = cf.period_len();
    if l.is_multiple_of(2) {
        l
    } else {
        2 * l
    }
}

fn check_norm(n: &BigInt) -> Result<()> {
    if n.is_zero() {
        Err(Error::ZeroNorm)
    } else {
        Ok(())
    }
}

/// Squares `g²` dividing `n`, ascending in `g`.
fn square_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut g = BigInt::one();
    while &g * &g <= n {
        if (&n % (&g * &g)).is_zero() {
            out.push(g.clone());
        }
        g += 1;
    }
    out
}

/// Smallest positive solution of `x² − D·y² = N` (ordered by `y`).
///
/// For non-square `D` this requires `0 < |N| < √D`, where every primitive
/// solution appears among the convergents of `√D`; a solution with
/// `gcd(x, y) = g` is `g` times a primitive solution for `N/g²`, so scanning
/// one full norm cycle of convergents for each square divisor decides
/// solvability. For square `D = r²` the equation factors as
/// `(x − ry)(x + ry) = N` and is settled by enumerating factor pairs.
pub fn pell_solve(d: &BigInt, n: &BigInt) -> Result<Option<PellSolution>> {
    if !d.is_positive() {
        return Err(Error::NonPositiveRadicand(d.clone()));
    }
    check_norm(n)?;
    if let Some(r) = integer_sqrt_exact(d)? {
        return Ok(solve_square(d, &r, n));
    }
    if n * n >= *d {
        return Err(Error::OutsideConvergentRegime {
            d: d.clone(),
            n: n.clone(),
        });
    }
    let cf = cf_sqrt(d)?;
    let mut best: Option<PellSolution> = None;
    for g in square_divisors(n) {
        let reduced = n / (&g * &g);
        let hit = (0..cycle_len(&cf))
            .find(|&i| cf.convergent_norm(i) == reduced)
            .and_then(|i| Convergents::new(&cf).nth(i));
        if let Some((p, q)) = hit {
            let sol = PellSolution {
                x: p * &g,
                y: q * &g,
                d: d.clone(),
                n: n.clone(),
            };
            if best.as_ref().is_none_or(|b| sol.y < b.y) {
                best = Some(sol);
            }
        }
    }
    Ok(best)
}

fn solve_square(d: &BigInt, r: &BigInt, n: &BigInt) -> Option<PellSolution> {
    // (x − ry)(x + ry) = N over all signed divisors u = x − ry of N
    let abs_n = n.abs();
    let mut best: Option<PellSolution> = None;
    let mut u = BigInt::one();
    while u <= abs_n {
        if (&abs_n % &u).is_zero() {
            for lo in [u.clone(), -&u] {
                let hi = n / &lo;
                let sum: BigInt = &lo + &hi;
                let diff: BigInt = &hi - &lo;
                if sum.is_odd() || sum.is_negative() {
                    continue;
                }
                let (y, rem) = diff.div_rem(&(r * 2));
                if !rem.is_zero() || !y.is_positive() {
                    continue;
                }
                let x = sum / 2;
                if best.as_ref().is_none_or(|b| (&y, &x) < (&b.y, &b.x)) {
                    best = Some(PellSolution {
                        x,
                        y,
                        d: d.clone(),
                        n: n.clone(),
                    });
                }
            }
        }
        u += 1;
    }
    best
}

/// Fundamental solution of `x² − D·y² = 1` for non-square `D`.
pub fn fundamental_unit(d: &BigInt) -> Result<PellSolution> {
    let cf = cf_sqrt(d)?;
    let (x, y) = Convergents::new(&cf)
        .nth(cycle_len(&cf) - 1)
        .expect("convergents are infinite");
    PellSolution::new(x, y, d.clone(), BigInt::one())
}

/// Decides `x² − D·y² = N` for non-square `D` and any nonzero `N` by
/// searching `y` up to Nagell's bound for fundamental solutions:
/// `y ≤ √(N(x₁−1)/(2D))` for `N > 0`, `y ≤ √(|N|(x₁+1)/(2D))` for `N < 0`,
/// where `(x₁, y₁)` is the fundamental unit.
///
/// Returns the smallest solution with `y ≥ 1` found, or a unit multiple of a
/// `y = 0` solution when that is the only class representative.
///
/// The search costs `O(√x₁)` steps, so this is only practical for radicands
/// with small fundamental units; `pell_solve` covers `|N| < √D`.
pub fn pell_solve_nagell(d: &BigInt, n: &BigInt) -> Result<Option<PellSolution>> {
    check_norm(n)?;
    let unit = fundamental_unit(d)?;
    let x1 = &unit.x;
    let bound_sq: BigInt = if n.is_positive() {
        n * (x1 - BigInt::one()) / (d * 2)
    } else {
        -n * (x1 + BigInt::one()) / (d * 2)
    };
    let bound = bound_sq.sqrt();
    let mut y = BigInt::zero();
    let mut trivial: Option<BigInt> = None;
    while y <= bound {
        let t = d * &y * &y + n;
        if !t.is_negative() {
            if let Some(x) = integer_sqrt_exact(&t)? {
                if y.is_zero() {
                    trivial = Some(x);
                } else {
                    return Ok(Some(PellSolution::new(x, y, d.clone(), n.clone())?));
                }
            }
        }
        y += 1;
    }
    Ok(match trivial {
        Some(x) => Some(PellSolution::new(
            &x * &unit.x,
            &x * &unit.y,
            d.clone(),
            n.clone(),
        )?),
        None => None,
    })
}
