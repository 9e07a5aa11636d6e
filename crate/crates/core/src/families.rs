//! Parametric witness families `(a(k), x(k), y(k), n(k))` for the rational
//! cubic fourfolds containing a plane or a sextic del Pezzo surface.
//!
//! Each family fixes a normal-form Gram matrix `⟨H², Q or S, Σ⟩` and a witness
//! making `a²·d(x, y) = 2n² + 2n + 2` an identity in `k`, where
//! `d(x, y) = disc⟨H², x·Q + y·Σ⟩` (or with `S`) is derived from the matrix.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::diophantine::{condition_star, condition_triple_star};
use crate::error::{Error, Result};
use crate::lattice::{restrict_form, QuadraticForm, SymbolicGram};
use crate::normal_form::{canonical_gram_symbolic, CaseId, Geometry};
use crate::poly::{poly_equal, IntPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    PlaneI,
    PlaneII,
    A,
    B,
    C,
    D,
    E,
    F,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::PlaneI,
        FamilyId::PlaneII,
        FamilyId::A,
        FamilyId::B,
        FamilyId::C,
        FamilyId::D,
        FamilyId::E,
        FamilyId::F,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::PlaneI => "PlaneI",
            FamilyId::PlaneII => "PlaneII",
            FamilyId::A => "A",
            FamilyId::B => "B",
            FamilyId::C => "C",
            FamilyId::D => "D",
            FamilyId::E => "E",
            FamilyId::F => "F",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = String;

    /// Case-insensitive; also accepts `plane-i`, `plane_ii`, `I`, `II`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_'))
            .collect::<String>()
            .to_ascii_lowercase();
        let id = match key.as_str() {
            "planei" | "i" => FamilyId::PlaneI,
            "planeii" | "ii" => FamilyId::PlaneII,
            "a" => FamilyId::A,
            "b" => FamilyId::B,
            "c" => FamilyId::C,
            "d" => FamilyId::D,
            "e" => FamilyId::E,
            "f" => FamilyId::F,
            _ => return Err(format!("unknown family id {s:?}")),
        };
        Ok(id)
    }
}

/// `a(k), x(k), y(k), n(k)`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPolys {
    pub a: IntPolynomial,
    pub x: IntPolynomial,
    pub y: IntPolynomial,
    pub n: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub geometry: Geometry,
    pub case: CaseId,
    /// `S·Σ` for the del Pezzo families; 1 for the plane.
    pub c: i64,
    pub witness: WitnessPolys,
    /// The quadratic form as printed alongside the witness. Kept for
    /// comparison only; verification always uses `derive_form`.
    pub printed_form: QuadraticForm<IntPolynomial>,
}

impl FamilySpec {
    pub fn gram(&self) -> SymbolicGram {
        canonical_gram_symbolic(self.geometry, self.case, self.c)
            .expect("catalog entries use valid cases")
    }

    /// Closed-form rank-3 discriminant of the family's lattice.
    pub fn lattice_discriminant(&self) -> IntPolynomial {
        self.case.discriminant_formula(self.c)
    }
}

fn lin(slope: i64, intercept: i64) -> IntPolynomial {
    IntPolynomial::linear(slope, intercept)
}

fn cst(c: i64) -> IntPolynomial {
    IntPolynomial::constant(c)
}

fn spec(
    id: FamilyId,
    case: CaseId,
    c: i64,
    witness: [IntPolynomial; 4],
    printed: (i64, i64, IntPolynomial),
) -> FamilySpec {
    let [a, x, y, n] = witness;
    FamilySpec {
        id,
        geometry: case.geometry(),
        case,
        c,
        witness: WitnessPolys { a, x, y, n },
        printed_form: QuadraticForm::new(cst(printed.0), cst(printed.1), printed.2),
    }
}

/// All eight families. Plane families use `Q·Σ = 1`; A, B, C use `S·Σ = 1`
/// and D, E, F use `S·Σ = 2`, each with `H²·Σ = 0, 1, 2`.
///
/// PlaneII's witness is printed with variable names `(a, y, z, n)` and is read
/// as `(a, x, y, n)`. Family C's printed `y²` coefficient is `5k − 4`; the
/// matrix gives `6k − 4`.
pub fn family_catalog() -> Vec<FamilySpec> {
    use FamilyId::*;
    vec![
        spec(
            PlaneI,
            CaseId::I,
            1,
            [cst(1), lin(-3, 1), cst(1), lin(-6, 2)],
            (8, 6, lin(6, 0)),
        ),
        spec(
            PlaneII,
            CaseId::II,
            1,
            [cst(1), lin(3, 0), cst(1), lin(6, 0)],
            (8, 2, lin(6, 2)),
        ),
        spec(
            A,
            CaseId::B0,
            1,
            [cst(1), lin(4, -1), cst(2), lin(12, -2)],
            (18, 6, lin(6, 0)),
        ),
        spec(
            B,
            CaseId::B1,
            1,
            [cst(1), lin(4, 1), cst(2), lin(12, 2)],
            (18, -6, lin(6, 2)),
        ),
        spec(
            C,
            CaseId::B2,
            1,
            [cst(1), lin(4, -5), cst(2), lin(12, -18)],
            (18, -18, lin(5, -4)),
        ),
        spec(
            D,
            CaseId::B0,
            2,
            [cst(1), lin(1, -1), cst(1), lin(3, -2)],
            (18, 12, lin(6, 0)),
        ),
        spec(
            E,
            CaseId::B1,
            2,
            [cst(1), lin(1, 0), cst(1), lin(3, 0)],
            (18, 0, lin(6, 2)),
        ),
        spec(
            F,
            CaseId::B2,
            2,
            [cst(1), lin(1, -1), cst(1), lin(3, -4)],
            (18, -12, lin(6, -4)),
        ),
    ]
}

pub fn family(id: FamilyId) -> FamilySpec {
    family_catalog()
        .into_iter()
        .find(|f| f.id == id)
        .expect("catalog covers every id")
}

/// `d(x, y)` restricted from the family's Gram matrix.
pub fn derive_form(spec: &FamilySpec) -> QuadraticForm<IntPolynomial> {
    restrict_form(&spec.gram()).expect("normal forms are rank 3 with H²·H² = 3")
}

/// Which quadratic form to test a witness against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormSource {
    #[default]
    Derived,
    Printed,
}

impl FormSource {
    pub fn form(self, spec: &FamilySpec) -> QuadraticForm<IntPolynomial> {
        match self {
            FormSource::Derived => derive_form(spec),
            FormSource::Printed => spec.printed_form.clone(),
        }
    }
}

/// Both sides of `a²·d(x, y) = 2n² + 2n + 2` expanded in `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicCheck {
    pub form: QuadraticForm<IntPolynomial>,
    /// `d(x(k), y(k))`
    pub d: IntPolynomial,
    pub lhs: IntPolynomial,
    pub rhs: IntPolynomial,
    pub holds: bool,
}

pub fn check_family_symbolic(spec: &FamilySpec, source: FormSource) -> SymbolicCheck {
    let form = source.form(spec);
    let w = &spec.witness;
    let d = form.compose(&w.x, &w.y);
    let lhs = &(&w.a * &w.a) * &d;
    let rhs = &(&(&(&w.n * &w.n) + &w.n) + &cst(1)) * &cst(2);
    let holds = poly_equal(&lhs, &rhs);
    SymbolicCheck {
        form,
        d,
        lhs,
        rhs,
        holds,
    }
}

/// The witness satisfies the identity for every integer `k`.
pub fn verify_family_symbolic(spec: &FamilySpec) -> bool {
    check_family_symbolic(spec, FormSource::Derived).holds
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericRow {
    pub k: BigInt,
    pub a: BigInt,
    pub x: BigInt,
    pub y: BigInt,
    pub n: BigInt,
    pub d: BigInt,
    pub lhs: BigInt,
    pub rhs: BigInt,
    /// Whether `d` satisfies `(*)`.
    pub star: bool,
    /// Verdict of the Pell decision procedure for `d > 0`; `None` otherwise.
    pub triple_star: Option<bool>,
    /// `lhs == rhs`, and `(***)` confirmed whenever `d > 0`.
    pub ok: bool,
}

/// Exact evaluation at each `k ∈ [k_min, k_max]`.
pub fn verify_family_numeric(
    spec: &FamilySpec,
    k_min: &BigInt,
    k_max: &BigInt,
    source: FormSource,
) -> Result<Vec<NumericRow>> {
    if k_min > k_max {
        return Err(Error::EmptyRange {
            min: k_min.clone(),
            max: k_max.clone(),
        });
    }
    let form = source.form(spec);
    let w = &spec.witness;
    let mut rows = Vec::new();
    let mut k = k_min.clone();
    while &k <= k_max {
        let f = form.at(&k);
        let (a, x, y, n) = (w.a.eval(&k), w.x.eval(&k), w.y.eval(&k), w.n.eval(&k));
        let d = f.eval(&x, &y);
        let lhs = &a * &a * &d;
        let rhs = (&n * &n + &n + 1) * 2;
        let triple_star = if d.is_positive() {
            Some(condition_triple_star(&d)?.0)
        } else {
            None
        };
        let ok = lhs == rhs && triple_star != Some(false);
        rows.push(NumericRow {
            star: condition_star(&d),
            k: k.clone(),
            a,
            x,
            y,
            n,
            d,
            lhs,
            rhs,
            triple_star,
            ok,
        });
        k += BigInt::one();
    }
    Ok(rows)
}

fn closure(start: u8, steps: &[fn(u8) -> u8]) -> BTreeSet<u8> {
    let mut seen = BTreeSet::from([start]);
    let mut frontier = vec![start];
    while let Some(r) = frontier.pop() {
        for step in steps {
            let next = step(r);
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    seen
}

/// For a residue `r₀` of `Σ·S (mod 6)`: whether sign changes and shifts by
/// `H²·S = 6` reach `{1, 2}`, and whether `r₀ − 3s` reaches `{1, 5}`
/// (`Σ'·F = Σ·S − 3(a + b)` coprime to 6).
pub fn residue_reachability(r0: u8) -> (bool, bool) {
    let r0 = r0 % 6;
    let pairing = closure(r0, &[|r| (6 - r) % 6, |r| r]);
    let section = closure(r0, &[|r| (r + 3) % 6]);
    (
        pairing.iter().any(|r| matches!(r, 1 | 2)),
        section.iter().any(|r| matches!(r, 1 | 5)),
    )
}

/// Exhaustive check over residues mod 6 that `Σ·S ∈ {1, 2}` is reachable
/// exactly when a rational section class `Σ'·F ≡ 1, 5 (mod 6)` is.
pub fn dp6_residue_equivalence_check() -> bool {
    (0..6).all(|r0| {
        let (pairing, section) = residue_reachability(r0);
        pairing == section
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn form(a: i64, b: i64, c: IntPolynomial) -> QuadraticForm<IntPolynomial> {
        QuadraticForm::new(cst(a), cst(b), c)
    }

    #[test]
    fn catalog_witnesses() {
        let w = family(FamilyId::PlaneI).witness;
        assert_eq!(
            (w.a, w.x, w.y, w.n),
            (cst(1), lin(-3, 1), cst(1), lin(-6, 2))
        );
        let w = family(FamilyId::E).witness;
        assert_eq!((w.a, w.x, w.y, w.n), (cst(1), lin(1, 0), cst(1), lin(3, 0)));
        let w = family(FamilyId::C).witness;
        assert_eq!(
            (w.a, w.x, w.y, w.n),
            (cst(1), lin(4, -5), cst(2), lin(12, -18))
        );
        assert_eq!(family_catalog().len(), 8);
    }

    #[test]
    fn geometry_linkage() {
        for f in family_catalog() {
            let expected_c = match f.id {
                FamilyId::PlaneI | FamilyId::PlaneII => 1,
                FamilyId::A | FamilyId::B | FamilyId::C => 1,
                _ => 2,
            };
            assert_eq!(f.c, expected_c, "{}", f.id);
        }
        let cases: Vec<_> = family_catalog().iter().map(|f| f.case).collect();
        use CaseId::*;
        assert_eq!(cases, [I, II, B0, B1, B2, B0, B1, B2]);
    }

    #[test]
    fn derived_forms() {
        assert_eq!(
            derive_form(&family(FamilyId::PlaneI)),
            form(8, 6, lin(6, 0))
        );
        assert_eq!(derive_form(&family(FamilyId::E)), form(18, 0, lin(6, 2)));
        assert_eq!(derive_form(&family(FamilyId::C)), form(18, -18, lin(6, -4)));
    }

    #[test]
    fn printed_forms_agree_except_c() {
        for f in family_catalog() {
            let same = derive_form(&f) == f.printed_form;
            assert_eq!(same, f.id != FamilyId::C, "{}", f.id);
        }
    }

    #[test]
    fn symbolic_examples() {
        let check = check_family_symbolic(&family(FamilyId::PlaneI), FormSource::Derived);
        assert!(check.holds);
        assert_eq!(check.lhs, IntPolynomial::new([14, -60, 72]));
        assert_eq!(check.rhs, IntPolynomial::new([14, -60, 72]));

        let check = check_family_symbolic(&family(FamilyId::PlaneII), FormSource::Derived);
        assert!(check.holds);
        assert_eq!(check.lhs, IntPolynomial::new([2, 12, 72]));

        let c = family(FamilyId::C);
        assert!(verify_family_symbolic(&c));
        let printed = check_family_symbolic(&c, FormSource::Printed);
        assert!(!printed.holds);
        // mismatch is exactly k·y² = 4k
        assert_eq!(&printed.rhs - &printed.lhs, lin(4, 0));
    }

    #[test]
    fn all_families_hold() {
        for f in family_catalog() {
            assert!(verify_family_symbolic(&f), "{}", f.id);
        }
    }

    #[test]
    fn numeric_examples() {
        let rows =
            verify_family_numeric(&family(FamilyId::PlaneI), &b(1), &b(1), FormSource::Derived)
                .unwrap();
        assert_eq!(
            (rows[0].d.clone(), rows[0].lhs.clone(), rows[0].rhs.clone()),
            (b(26), b(26), b(26))
        );
        assert!(rows[0].ok);

        let rows =
            verify_family_numeric(&family(FamilyId::A), &b(1), &b(1), FormSource::Derived).unwrap();
        assert_eq!(
            (rows[0].x.clone(), rows[0].y.clone(), rows[0].n.clone()),
            (b(3), b(2), b(10))
        );
        assert_eq!(rows[0].d, b(222));
        assert!(rows[0].ok);

        let rows =
            verify_family_numeric(&family(FamilyId::F), &b(1), &b(1), FormSource::Derived).unwrap();
        assert_eq!(
            (rows[0].x.clone(), rows[0].d.clone(), rows[0].n.clone()),
            (b(0), b(2), b(-1))
        );
        assert_eq!(rows[0].rhs, b(2));
        assert!(rows[0].ok);
    }

    #[test]
    fn numeric_rejects_empty_range() {
        assert!(matches!(
            verify_family_numeric(&family(FamilyId::A), &b(2), &b(1), FormSource::Derived),
            Err(Error::EmptyRange { .. })
        ));
    }

    #[test]
    fn printed_c_fails_off_zero() {
        let rows =
            verify_family_numeric(&family(FamilyId::C), &b(-50), &b(50), FormSource::Printed)
                .unwrap();
        for row in rows {
            assert_eq!(row.lhs == row.rhs, row.k == b(0), "k = {}", row.k);
        }
    }

    #[test]
    fn numeric_agrees_with_symbolic() {
        for f in family_catalog() {
            let symbolic = verify_family_symbolic(&f);
            for row in verify_family_numeric(&f, &b(-50), &b(50), FormSource::Derived).unwrap() {
                assert_eq!(row.ok, symbolic, "{} k={}", f.id, row.k);
            }
        }
    }

    #[test]
    fn lattice_discriminants_match_case_formulas() {
        for f in family_catalog() {
            let g = f.gram();
            for k in -20..=20 {
                let k = b(k);
                assert_eq!(
                    g.at(&k).discriminant(),
                    f.lattice_discriminant().eval(&k),
                    "{}",
                    f.id
                );
            }
        }
    }

    #[test]
    fn residue_examples() {
        assert!(dp6_residue_equivalence_check());
        assert_eq!(residue_reachability(3), (false, false));
        assert_eq!(residue_reachability(5), (true, true));
        assert_eq!(residue_reachability(0), (false, false));
        for r in [1, 2, 4] {
            assert_eq!(residue_reachability(r), (true, true));
        }
    }

    #[test]
    fn family_ids_parse() {
        for id in FamilyId::ALL {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert_eq!("plane-ii".parse::<FamilyId>().unwrap(), FamilyId::PlaneII);
        assert_eq!("c".parse::<FamilyId>().unwrap(), FamilyId::C);
        assert!("G".parse::<FamilyId>().is_err());
    }
}
