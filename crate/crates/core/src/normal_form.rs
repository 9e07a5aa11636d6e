//! Normal forms for rank-3 sublattices `⟨H², Q, Σ⟩` (cubic fourfolds containing
//! a plane) and `⟨H², S, Σ⟩` (containing a sextic del Pezzo surface).
//!
//! Both reductions replace `Σ` by `ε·Σ + α·H² + β·(Q or S)`, a unimodular
//! change of basis fixing the first two vectors, so the rank-3 discriminant is
//! unchanged. `Σ'²` is always recomputed from the bilinear form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{k18, k8, Gram, GramMatrix, SymbolicGram};
use crate::poly::IntPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Geometry {
    Plane,
    Dp6,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::Plane => "plane",
            Geometry::Dp6 => "dp6",
        }
    }

    /// Gram matrix of `⟨H², Q⟩` or `⟨H², S⟩`.
    pub fn base_gram(self) -> GramMatrix {
        match self {
            Geometry::Plane => k8(),
            Geometry::Dp6 => k18(),
        }
    }

    fn labels(self) -> [&'static str; 3] {
        match self {
            Geometry::Plane => ["H2", "Q", "Sigma"],
            Geometry::Dp6 => ["H2", "S", "Sigma"],
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The displayed matrix shapes: `I`/`II` for the plane, `B0`/`B1`/`B2` (by
/// `H²·Σ = b`) for the sextic del Pezzo.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    I,
    II,
    B0,
    B1,
    B2,
}

impl CaseId {
    pub fn name(self) -> &'static str {
        match self {
            CaseId::I => "I",
            CaseId::II => "II",
            CaseId::B0 => "B0",
            CaseId::B1 => "B1",
            CaseId::B2 => "B2",
        }
    }

    pub fn geometry(self) -> Geometry {
        match self {
            CaseId::I | CaseId::II => Geometry::Plane,
            _ => Geometry::Dp6,
        }
    }

    /// `(H²·Σ, Σ² - 2k)` for this case.
    fn shape(self) -> (i64, i64) {
        match self {
            CaseId::I => (0, 0),
            CaseId::II => (1, 1),
            CaseId::B0 => (0, 0),
            CaseId::B1 => (1, 1),
            CaseId::B2 => (2, 0),
        }
    }

    /// Closed-form discriminant of the case as a polynomial in `k`.
    pub fn discriminant_formula(self, c: i64) -> IntPolynomial {
        let c2 = 3 * c * c;
        match self {
            CaseId::I => IntPolynomial::linear(16, -3),
            CaseId::II => IntPolynomial::linear(16, 5),
            CaseId::B0 => IntPolynomial::linear(36, -c2),
            CaseId::B1 => IntPolynomial::linear(36, -c2 + 12 * c),
            CaseId::B2 => IntPolynomial::linear(36, -c2 + 24 * c - 72),
        }
    }

    pub fn all() -> [CaseId; 5] {
        [CaseId::I, CaseId::II, CaseId::B0, CaseId::B1, CaseId::B2]
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pairings of a class `Σ` with the marked basis: `m = H²·Σ`,
/// `c = Q·Σ` or `S·Σ`, `s = Σ²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedClassData {
    pub geometry: Geometry,
    pub m: BigInt,
    pub c: BigInt,
    pub s: BigInt,
}

impl MarkedClassData {
    pub fn new(
        geometry: Geometry,
        m: impl Into<BigInt>,
        c: impl Into<BigInt>,
        s: impl Into<BigInt>,
    ) -> Self {
        MarkedClassData {
            geometry,
            m: m.into(),
            c: c.into(),
            s: s.into(),
        }
    }

    /// Reads `(m, c, s)` from the last column of a rank-3 Gram matrix.
    pub fn from_gram(geometry: Geometry, g: &GramMatrix) -> Result<Self> {
        if g.rank() != 3 {
            return Err(Error::WrongRank {
                expected: 3,
                got: g.rank(),
            });
        }
        Ok(MarkedClassData {
            geometry,
            m: g.entry(0, 2).clone(),
            c: g.entry(1, 2).clone(),
            s: g.entry(2, 2).clone(),
        })
    }

    /// Gram matrix of `⟨H², Q or S, Σ⟩`.
    pub fn gram(&self) -> GramMatrix {
        let base = self.geometry.base_gram();
        let e = |i, j| base.entry(i, j).clone();
        let entries = vec![
            vec![e(0, 0), e(0, 1), self.m.clone()],
            vec![e(1, 0), e(1, 1), self.c.clone()],
            vec![self.m.clone(), self.c.clone(), self.s.clone()],
        ];
        Gram::new(entries, self.geometry.labels()).expect("symmetric by construction")
    }

    pub fn discriminant(&self) -> BigInt {
        self.gram().discriminant()
    }

    /// `3s - m²` must be 0 or 2 mod 6.
    pub fn check_admissible(&self) -> Result<()> {
        let value = BigInt::from(3) * &self.s - &self.m * &self.m;
        let residue = value.mod_floor(&BigInt::from(6));
        if residue.is_zero() || residue == BigInt::from(2) {
            Ok(())
        } else {
            Err(Error::Admissibility {
                value,
                residue: u8::try_from(&residue).expect("residue is in 0..6"),
            })
        }
    }
}

/// `Σ' = sign·Σ + h2·H² + second·(Q or S)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    pub sign: i8,
    pub h2: BigInt,
    pub second: BigInt,
}

impl Substitution {
    fn matrix(&self) -> Vec<Vec<BigInt>> {
        let z = BigInt::zero;
        vec![
            vec![BigInt::one(), z(), self.h2.clone()],
            vec![z(), BigInt::one(), self.second.clone()],
            vec![z(), z(), BigInt::from(self.sign)],
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub geometry: Geometry,
    pub case: CaseId,
    /// `Q·Σ` (always 1) or `S·Σ ∈ {0, 1, 2}`.
    pub c: BigInt,
    pub k: BigInt,
    pub gram: GramMatrix,
    /// The substitution that produced this form from the input class.
    pub substitution: Substitution,
}

impl CanonicalForm {
    pub fn discriminant(&self) -> BigInt {
        self.gram.discriminant()
    }
}

fn check_case(geometry: Geometry, case: CaseId) -> Result<()> {
    if case.geometry() == geometry {
        Ok(())
    } else {
        Err(Error::InvalidCase {
            geometry: geometry.name(),
            case: case.name(),
        })
    }
}

fn check_pairing(geometry: Geometry, c: &BigInt) -> Result<()> {
    let ok = match geometry {
        Geometry::Plane => c.is_one(),
        Geometry::Dp6 => (BigInt::zero()..=BigInt::from(2)).contains(c),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPairing(c.clone()))
    }
}

/// The displayed normal-form matrix as a polynomial in `k`.
///
/// `c` is ignored for the plane, where `Q·Σ = 1`.
pub fn canonical_gram_symbolic(geometry: Geometry, case: CaseId, c: i64) -> Result<SymbolicGram> {
    check_case(geometry, case)?;
    let c = match geometry {
        Geometry::Plane => 1,
        Geometry::Dp6 => {
            check_pairing(geometry, &BigInt::from(c))?;
            c
        }
    };
    let base = geometry.base_gram();
    let e = |i, j| IntPolynomial::from(base.entry(i, j).clone());
    let (m, parity) = case.shape();
    let (m, c) = (IntPolynomial::from(m), IntPolynomial::from(c));
    let entries = vec![
        vec![e(0, 0), e(0, 1), m.clone()],
        vec![e(1, 0), e(1, 1), c.clone()],
        vec![m, c, IntPolynomial::linear(2, parity)],
    ];
    Gram::new(entries, geometry.labels())
}

pub fn canonical_gram(geometry: Geometry, case: CaseId, c: i64, k: &BigInt) -> Result<GramMatrix> {
    Ok(canonical_gram_symbolic(geometry, case, c)?.at(k))
}

/// Applies `sub`, reads the case off `H²·Σ'`, and solves for `k`.
fn finish(data: &MarkedClassData, sub: Substitution) -> CanonicalForm {
    let gram = data
        .gram()
        .change_basis(&sub.matrix())
        .expect("3x3 substitution");
    let gram = Gram::new(gram.rows().to_vec(), data.geometry.labels()).expect("same shape");
    let m = gram.entry(0, 2);
    let case = CaseId::all()
        .into_iter()
        .find(|case| case.geometry() == data.geometry && BigInt::from(case.shape().0) == *m)
        .expect("reduction lands on a displayed case");
    let parity = BigInt::from(case.shape().1);
    let (k, rem) = (gram.entry(2, 2) - &parity).div_rem(&BigInt::from(2));
    assert!(
        rem.is_zero(),
        "admissible input has the parity its case demands"
    );
    let c = gram.entry(1, 2).clone();
    debug_assert_eq!(
        gram,
        canonical_gram(
            data.geometry,
            case,
            i64::try_from(&c).expect("c is small"),
            &k
        )
        .unwrap()
    );
    CanonicalForm {
        geometry: data.geometry,
        case,
        c,
        k,
        gram,
        substitution: sub,
    }
}

/// `H²·Σ = 3a + b` with `0 ≤ b ≤ 2`; then `Σ' = Σ − 3a·H² + a·S`.
pub fn normalize_dp6(data: &MarkedClassData) -> Result<CanonicalForm> {
    if data.geometry != Geometry::Dp6 {
        return Err(Error::InvalidCase {
            geometry: data.geometry.name(),
            case: "dp6 reduction",
        });
    }
    check_pairing(Geometry::Dp6, &data.c)?;
    data.check_admissible()?;
    let a = data.m.div_floor(&BigInt::from(3));
    let sub = Substitution {
        sign: 1,
        h2: BigInt::from(-3) * &a,
        second: a,
    };
    Ok(finish(data, sub))
}

/// Solves `Σ' = ε·Σ + α·H² + β·Q` with `Q·Σ' = 1` and `H²·Σ' ∈ {0, 1}`.
///
/// `Q·Σ' = 1` forces `α = −2β` when `ε = 1` (so `H²·Σ' = m − 4β`) and
/// `α = 1 − 2β` when `ε = −1` (so `H²·Σ' = 3 − m − 4β`). Thus `m ≡ 0, 3
/// (mod 4)` reaches case I and `m ≡ 1, 2` case II, each by exactly one
/// substitution.
pub fn normalize_plane(data: &MarkedClassData) -> Result<CanonicalForm> {
    if data.geometry != Geometry::Plane {
        return Err(Error::InvalidCase {
            geometry: data.geometry.name(),
            case: "plane reduction",
        });
    }
    check_pairing(Geometry::Plane, &data.c)?;
    data.check_admissible()?;
    let four = BigInt::from(4);
    let m = &data.m;
    let residue = m.mod_floor(&four);
    let (sign, shifted) = match u8::try_from(&residue).expect("residue is in 0..4") {
        0 => (1, m.clone()),
        1 => (1, m - 1),
        2 => (-1, BigInt::from(2) - m),
        _ => (-1, BigInt::from(3) - m),
    };
    let beta = shifted / &four;
    let alpha = if sign == 1 {
        BigInt::from(-2) * &beta
    } else {
        BigInt::one() - BigInt::from(2) * &beta
    };
    let sub = Substitution {
        sign,
        h2: alpha,
        second: beta,
    };
    Ok(finish(data, sub))
}

pub fn normalize(data: &MarkedClassData) -> Result<CanonicalForm> {
    match data.geometry {
        Geometry::Plane => normalize_plane(data),
        Geometry::Dp6 => normalize_dp6(data),
    }
}
