//! Gram matrices of rank ≤ 3 sublattices with a marked, ordered basis, their
//! discriminants, and the binary discriminant form on the pencil
//! `x·e₂ + y·e₃`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Commutative ring of Gram-matrix entries: plain integers, or integer
/// polynomials in the family parameter `k`.
pub trait GramEntry: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn from_int(n: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl GramEntry for BigInt {
    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl GramEntry for IntPolynomial {
    fn from_int(n: i64) -> Self {
        IntPolynomial::constant(n)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

/// Symmetric `r × r` intersection matrix, `1 ≤ r ≤ 3`, with one label per
/// basis vector. The first basis vector is the hyperplane-square class
/// wherever that role matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gram<T> {
    entries: Vec<Vec<T>>,
    labels: Vec<String>,
}

pub type GramMatrix = Gram<BigInt>;

/// Gram matrix whose entries are polynomials in `k`.
pub type SymbolicGram = Gram<IntPolynomial>;

impl<T: GramEntry> Gram<T> {
    pub fn new<L: Into<String>>(
        entries: Vec<Vec<T>>,
        labels: impl IntoIterator<Item = L>,
    ) -> Result<Self> {
        let rows = entries.len();
        if !(1..=3).contains(&rows) || entries.iter().any(|r| r.len() != rows) {
            return Err(Error::BadShape { rows });
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, col) in entries.iter().enumerate().skip(i + 1) {
                if row[j] != col[i] {
                    return Err(Error::Asymmetric { row: i, col: j });
                }
            }
        }
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let distinct = labels
            .iter()
            .enumerate()
            .all(|(i, l)| !labels[..i].contains(l));
        if labels.len() != rows || !distinct {
            return Err(Error::BadLabels { expected: rows });
        }
        Ok(Gram { entries, labels })
    }

    /// Labels the basis `e1, e2, ...`.
    pub fn unlabeled(entries: Vec<Vec<T>>) -> Result<Self> {
        let n = entries.len();
        Self::new(entries, (1..=n).map(|i| format!("e{i}")))
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.entries
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Pairing of two integer combinations of the basis.
    pub fn pair(&self, u: &[T], v: &[T]) -> T {
        let mut acc = T::from_int(0);
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc = acc.add(&ui.mul(&self.entries[i][j]).mul(vj));
            }
        }
        acc
    }

    pub fn discriminant(&self) -> T {
        determinant(&self.entries)
    }

    /// Gram matrix of the basis given by the columns of `u`, i.e. `uᵀ G u`.
    pub fn change_basis(&self, u: &[Vec<T>]) -> Result<Self> {
        let r = self.rank();
        if u.len() != r || u.iter().any(|row| row.len() != r) {
            return Err(Error::BadShape { rows: u.len() });
        }
        let col = |j: usize| -> Vec<T> { u.iter().map(|row| row[j].clone()).collect() };
        let entries = (0..r)
            .map(|i| (0..r).map(|j| self.pair(&col(i), &col(j))).collect())
            .collect();
        Gram::unlabeled(entries)
    }
}

impl SymbolicGram {
    /// Substitutes `k`.
    pub fn at(&self, k: &BigInt) -> GramMatrix {
        Gram {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|p| p.eval(k)).collect())
                .collect(),
            labels: self.labels.clone(),
        }
    }
}

impl From<&GramMatrix> for SymbolicGram {
    fn from(g: &GramMatrix) -> Self {
        Gram {
            entries: g
                .entries
                .iter()
                .map(|row| row.iter().cloned().map(IntPolynomial::constant).collect())
                .collect(),
            labels: g.labels.clone(),
        }
    }
}

fn determinant<T: GramEntry>(m: &[Vec<T>]) -> T {
    match m.len() {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        3 => {
            let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
                m[r1][c1].mul(&m[r2][c2]).sub(&m[r1][c2].mul(&m[r2][c1]))
            };
            m[0][0]
                .mul(&minor(1, 2, 1, 2))
                .sub(&m[0][1].mul(&minor(1, 2, 0, 2)))
                .add(&m[0][2].mul(&minor(1, 2, 0, 1)))
        }
        n => unreachable!("rank {n} is rejected at construction"),
    }
}

pub fn discriminant(g: &GramMatrix) -> BigInt {
    g.discriminant()
}

/// Determinant of a Gram matrix whose only non-constant entry is the last
/// diagonal slot (the `Σ²` position), as an exact polynomial in `k`.
pub fn discriminant_symbolic(g: &SymbolicGram) -> Result<IntPolynomial> {
    let r = g.rank();
    for i in 0..r {
        for j in 0..r {
            if (i, j) != (r - 1, r - 1) && !g.entries[i][j].is_constant() {
                return Err(Error::PolynomialOutsideSigmaSlot { row: i, col: j });
            }
        }
    }
    Ok(g.discriminant())
}

/// The intersection matrix of `⟨H², Q⟩` for a cubic fourfold containing a plane.
pub fn k8() -> GramMatrix {
    int_gram([[3, 2], [2, 4]], ["H2", "Q"])
}

/// The intersection matrix of `⟨H², S⟩` for a sextic del Pezzo class.
pub fn k18() -> GramMatrix {
    int_gram([[3, 6], [6, 18]], ["H2", "S"])
}

pub(crate) fn int_gram<const N: usize>(rows: [[i64; N]; N], labels: [&str; N]) -> GramMatrix {
    let entries = rows
        .iter()
        .map(|r| r.iter().copied().map(BigInt::from).collect())
        .collect();
    Gram::new(entries, labels).expect("static gram matrix is valid")
}

/// Parses `"3,2;2,4"`: rows split by `;`, entries by `,`.
impl FromStr for GramMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<BigInt>()
                            .map_err(|_| Error::Parse(format!("bad entry {:?}", e.trim())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Gram::unlabeled(entries)
    }
}

/// Renders rows in the same `;`/`,` format accepted by `from_str`.
impl<T: fmt::Display> fmt::Display for Gram<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// Binary quadratic form `a·x² + b·xy + c·y²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm<T = BigInt> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T> QuadraticForm<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        QuadraticForm { a, b, c }
    }
}

impl QuadraticForm<BigInt> {
    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }
}

impl QuadraticForm<IntPolynomial> {
    pub fn at(&self, k: &BigInt) -> QuadraticForm<BigInt> {
        QuadraticForm::new(self.a.eval(k), self.b.eval(k), self.c.eval(k))
    }

    /// `d(x(k), y(k))` as a polynomial in `k`.
    pub fn compose(&self, x: &IntPolynomial, y: &IntPolynomial) -> IntPolynomial {
        &(&(&self.a * &(x * x)) + &(&self.b * &(x * y))) + &(&self.c * &(y * y))
    }
}

pub fn eval_form(f: &QuadraticForm, x: &BigInt, y: &BigInt) -> BigInt {
    f.eval(x, y)
}

impl<T: fmt::Display> fmt::Display for QuadraticForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x^2 + ({})xy + ({})y^2", self.a, self.b, self.c)
    }
}

/// `d(x, y) = disc⟨e₁, x·e₂ + y·e₃⟩ = (e₁·e₁)(v·v) − (e₁·v)²` for a rank-3
/// Gram matrix whose first basis vector has square 3.
pub fn restrict_form<T: GramEntry>(g: &Gram<T>) -> Result<QuadraticForm<T>> {
    if g.rank() != 3 {
        return Err(Error::WrongRank {
            expected: 3,
            got: g.rank(),
        });
    }
    let h = T::from_int(3);
    if *g.entry(0, 0) != h {
        return Err(Error::NotHyperplaneSquare(g.entry(0, 0).to_string()));
    }
    let e = |i: usize, j: usize| g.entry(i, j);
    let (h2, h3) = (e(0, 1), e(0, 2));
    let two = T::from_int(2);
    let a = h.mul(e(1, 1)).sub(&h2.mul(h2));
    let b = two.mul(&h).mul(e(1, 2)).sub(&two.mul(h2).mul(h3));
    let c = h.mul(e(2, 2)).sub(&h3.mul(h3));
    Ok(QuadraticForm::new(a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn g3(rows: [[i64; 3]; 3]) -> GramMatrix {
        int_gram(rows, ["e1", "e2", "e3"])
    }

    /// Symbolic rank-3 matrix with `sigma_sq` in the last diagonal slot.
    fn sym(rows: [[i64; 3]; 3], sigma_sq: IntPolynomial) -> SymbolicGram {
        let mut g = SymbolicGram::from(&g3(rows));
        g.entries[2][2] = sigma_sq;
        g
    }

    #[test]
    fn k8_k18() {
        let g = k8();
        assert_eq!(g.to_string(), "3,2;2,4");
        assert_eq!(g.labels(), ["H2", "Q"]);
        assert_eq!(discriminant(&g), b(8));

        let g = k18();
        assert_eq!(g.to_string(), "3,6;6,18");
        assert_eq!(g.labels(), ["H2", "S"]);
        assert_eq!(discriminant(&g), b(18));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&g3([[3, 2, 0], [2, 4, 1], [0, 1, 2]])), b(13));
        assert_eq!(discriminant(&"3".parse().unwrap()), b(3));
        assert_eq!(
            discriminant(&g3([[3, 6, 0], [6, 18, 1], [0, 1, -28]])),
            b(-507)
        );
    }

    #[test]
    fn construction_checks() {
        assert!(matches!(
            "3,2;9,4".parse::<GramMatrix>(),
            Err(Error::Asymmetric { row: 0, col: 1 })
        ));
        assert!(matches!(
            "3,2;2".parse::<GramMatrix>(),
            Err(Error::BadShape { .. })
        ));
        assert!(matches!(
            "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1".parse::<GramMatrix>(),
            Err(Error::BadShape { rows: 4 })
        ));
        assert!(matches!(
            "3,x;x,4".parse::<GramMatrix>(),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            Gram::new(vec![vec![b(1), b(0)], vec![b(0), b(1)]], ["H2", "H2"]),
            Err(Error::BadLabels { expected: 2 })
        ));
        assert!(Gram::new(vec![vec![b(1)]], ["H2", "Q"]).is_err());
        assert_eq!(
            " 3, 2 ; 2 ,4".parse::<GramMatrix>().unwrap().to_string(),
            "3,2;2,4"
        );
    }

    #[test]
    fn symbolic_normal_form_discriminants() {
        let two_k = IntPolynomial::linear(2, 0);
        let plane1 = sym([[3, 2, 0], [2, 4, 1], [0, 1, 0]], two_k.clone());
        assert_eq!(
            discriminant_symbolic(&plane1).unwrap(),
            IntPolynomial::linear(16, -3)
        );
        let plane2 = sym(
            [[3, 2, 1], [2, 4, 1], [1, 1, 0]],
            IntPolynomial::linear(2, 1),
        );
        assert_eq!(
            discriminant_symbolic(&plane2).unwrap(),
            IntPolynomial::linear(16, 5)
        );
        for c in 0..=2i64 {
            let dp6 = sym([[3, 6, 0], [6, 18, c], [0, c, 0]], two_k.clone());
            assert_eq!(
                discriminant_symbolic(&dp6).unwrap(),
                IntPolynomial::linear(36, -3 * c * c)
            );
        }
    }

    #[test]
    fn symbolic_rejects_polynomial_off_sigma_slot() {
        let mut g = sym([[3, 2, 0], [2, 4, 1], [0, 1, 0]], IntPolynomial::k());
        g.entries[0][1] = IntPolynomial::k();
        g.entries[1][0] = IntPolynomial::k();
        assert_eq!(
            discriminant_symbolic(&g),
            Err(Error::PolynomialOutsideSigmaSlot { row: 0, col: 1 })
        );
    }

    #[test]
    fn restrict_form_examples() {
        let case1 = sym(
            [[3, 2, 0], [2, 4, 1], [0, 1, 0]],
            IntPolynomial::linear(2, 0),
        );
        assert_eq!(
            restrict_form(&case1).unwrap(),
            QuadraticForm::new(8.into(), 6.into(), IntPolynomial::linear(6, 0))
        );
        let case2 = sym(
            [[3, 2, 1], [2, 4, 1], [1, 1, 0]],
            IntPolynomial::linear(2, 1),
        );
        assert_eq!(
            restrict_form(&case2).unwrap(),
            QuadraticForm::new(8.into(), 2.into(), IntPolynomial::linear(6, 2))
        );
        let dp6_b2 = sym(
            [[3, 6, 2], [6, 18, 1], [2, 1, 0]],
            IntPolynomial::linear(2, 0),
        );
        assert_eq!(
            restrict_form(&dp6_b2).unwrap(),
            QuadraticForm::new(18.into(), (-18).into(), IntPolynomial::linear(6, -4))
        );
    }

    #[test]
    fn restrict_form_errors() {
        assert_eq!(
            restrict_form(&k8()),
            Err(Error::WrongRank {
                expected: 3,
                got: 2
            })
        );
        assert_eq!(
            restrict_form(&g3([[2, 0, 0], [0, 1, 0], [0, 0, 1]])),
            Err(Error::NotHyperplaneSquare("2".into()))
        );
    }

    #[test]
    fn eval_form_examples() {
        let f = QuadraticForm::new(b(8), b(6), b(6));
        assert_eq!(eval_form(&f, &b(-2), &b(1)), b(26));
        assert_eq!(eval_form(&f, &b(0), &b(0)), b(0));
        let f = QuadraticForm::new(b(8), b(2), b(8));
        assert_eq!(eval_form(&f, &b(3), &b(1)), b(86));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rank3_h3() -> impl Strategy<Value = GramMatrix> {
            (
                -20i64..=20,
                -20i64..=20,
                -20i64..=20,
                -20i64..=20,
                -20i64..=20,
            )
                .prop_map(|(q, r, s, t, u)| g3([[3, q, r], [q, s, t], [r, t, u]]))
        }

        fn symmetric3() -> impl Strategy<Value = GramMatrix> {
            proptest::array::uniform6(-50i64..=50)
                .prop_map(|[a, b, c, d, e, f]| g3([[a, b, c], [b, d, e], [c, e, f]]))
        }

        /// Product of elementary integer column operations.
        fn unimodular() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
            proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3, any::<bool>()), 1..12)
                .prop_map(|ops| {
                    let mut u: Vec<Vec<i64>> = (0..3)
                        .map(|i| (0..3).map(|j| i64::from(i == j)).collect())
                        .collect();
                    for (i, j, m, flip) in ops {
                        if i != j {
                            for row in u.iter_mut() {
                                row[j] += m * row[i];
                            }
                        } else if flip {
                            for row in u.iter_mut() {
                                row[i] = -row[i];
                            }
                        }
                    }
                    u.into_iter()
                        .map(|r| r.into_iter().map(BigInt::from).collect())
                        .collect()
                })
        }

        proptest! {
            #[test]
            fn restrict_form_matches_direct_disc(g in rank3_h3()) {
                let f = restrict_form(&g).unwrap();
                for x in -10i64..=10 {
                    for y in -10i64..=10 {
                        let v = [b(0), b(x), b(y)];
                        let e1 = [b(1), b(0), b(0)];
                        let pencil = Gram::unlabeled(vec![
                            vec![g.pair(&e1, &e1), g.pair(&e1, &v)],
                            vec![g.pair(&v, &e1), g.pair(&v, &v)],
                        ]).unwrap();
                        prop_assert_eq!(f.eval(&b(x), &b(y)), pencil.discriminant());
                    }
                }
            }

            #[test]
            fn disc_unimodular_invariant(g in symmetric3(), u in unimodular()) {
                let h = g.change_basis(&u).unwrap();
                prop_assert_eq!(discriminant(&h), discriminant(&g));
            }

            #[test]
            fn symbolic_agrees_with_substitution(
                off in proptest::array::uniform5(-10i64..=10),
                slope in -5i64..=5,
                intercept in -5i64..=5,
            ) {
                let [q, r, s, t, _] = off;
                let g = sym([[3, q, r], [q, s, t], [r, t, 0]], IntPolynomial::linear(slope, intercept));
                let p = discriminant_symbolic(&g).unwrap();
                let form = restrict_form(&g).unwrap();
                for k in -100i64..=100 {
                    let k = b(k);
                    let gk = g.at(&k);
                    prop_assert_eq!(p.eval(&k), discriminant(&gk));
                    prop_assert_eq!(form.at(&k), restrict_form(&gk).unwrap());
                }
            }
        }
    }
}
