//! Exact rational scalars and sparse linear algebra.
//!
//! Everything downstream (antisymmetrizer images, quotient normal forms,
//! subspace intersections) reduces to row reduction over `Q`. Vectors are
//! stored as ordered maps from column index to a nonzero rational, so the
//! exponentially large tensor bases only cost what their supports cost.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn int(value: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(value))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `num/den` rendering (denominator always printed, no spaces).
pub fn format_scalar(value: &Scalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// A finitely supported vector; no stored entry is ever zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector {
    entries: BTreeMap<usize, Scalar>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(col: usize) -> Self {
        let mut v = Self::new();
        v.entries.insert(col, Scalar::one());
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(entries: I) -> Self {
        let mut v = Self::new();
        for (col, value) in entries {
            v.add_at(col, &value);
        }
        v
    }

    pub fn from_ints(entries: &[(usize, i64)]) -> Self {
        Self::from_entries(entries.iter().map(|&(c, x)| (c, int(x))))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> Option<&Scalar> {
        self.entries.get(&col)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(&c, x)| (c, x))
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.iter().next().map(|(&c, x)| (c, x))
    }

    pub fn max_col(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }

    /// Adds `value` to the entry at `col`, dropping it if it cancels.
    pub fn add_at(&mut self, col: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(col) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(value.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &SparseVector, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (col, x) in other.iter() {
            self.add_at(col, &(x * factor));
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> SparseVector {
        if factor.is_zero() {
            return SparseVector::new();
        }
        SparseVector { entries: self.entries.iter().map(|(&c, x)| (c, x * factor)).collect() }
    }

    pub fn dot(&self, other: &SparseVector) -> Scalar {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.iter().filter_map(|(c, x)| large.get(c).map(|y| x * y)).fold(Scalar::zero(), |acc, t| acc + t)
    }

    pub fn into_entries(self) -> BTreeMap<usize, Scalar> {
        self.entries
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (c, x)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}: {}", format_scalar(x))?;
        }
        write!(f, "}}")
    }
}

/// Rows of sparse vectors over a fixed number of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: Vec<SparseVector>,
    ncols: usize,
}

impl SparseMatrix {
    pub fn new(rows: Vec<SparseVector>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().filter_map(SparseVector::max_col).find(|&c| c >= ncols) {
            return Err(Error::InvalidParameters(format!("column index {bad} out of range for {ncols} columns")));
        }
        Ok(Self { rows, ncols })
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self { rows: vec![SparseVector::new(); nrows], ncols }
    }

    pub fn identity(size: usize) -> Self {
        Self { rows: (0..size).map(SparseVector::unit).collect(), ncols: size }
    }

    pub fn from_dense(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows =
            rows.iter().map(|r| SparseVector::from_entries(r.iter().enumerate().map(|(c, &x)| (c, int(x))))).collect();
        Self { rows, ncols }
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        SparseVector::from_entries(self.rows.iter().enumerate().map(|(r, row)| (r, row.dot(v))))
    }
}

/// A fully reduced row echelon basis built one vector at a time.
///
/// Pivots are the smallest column of each row; every pivot column is zero in
/// all other rows, and each row is scaled so its pivot entry is 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVector>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVector> {
        self.rows.get(&pivot)
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVector)> + '_ {
        self.rows.iter().map(|(&c, r)| (c, r))
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        let hits: Vec<(usize, Scalar)> =
            v.iter().filter(|(c, _)| self.rows.contains_key(c)).map(|(c, x)| (c, x.clone())).collect();
        // Rows are fully reduced, so eliminating one pivot never reintroduces another.
        for (col, coeff) in hits {
            out.add_scaled(&self.rows[&col], &-coeff);
        }
        out
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: &SparseVector) -> Option<usize> {
        let rem = self.reduce(v);
        let (pivot, lead) = rem.leading().map(|(c, x)| (c, x.clone()))?;
        let row = rem.scaled(&lead.recip());
        for other in self.rows.values_mut() {
            if let Some(x) = other.get(pivot).cloned() {
                other.add_scaled(&row, &-x);
            }
        }
        self.rows.insert(pivot, row);
        Some(pivot)
    }

    pub fn extend<'a, I: IntoIterator<Item = &'a SparseVector>>(&mut self, vectors: I) {
        for v in vectors {
            self.insert(v);
        }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let mut ech = Echelon::new();
    ech.extend(m.rows());
    let pivots: Vec<usize> = ech.pivots().collect();
    let rows = ech.rows.into_values().collect();
    (SparseMatrix { rows, ncols: m.ncols }, pivots)
}

pub fn rank(m: &SparseMatrix) -> usize {
    rank_of(m.rows())
}

pub fn rank_of<'a, I: IntoIterator<Item = &'a SparseVector>>(vectors: I) -> usize {
    let mut ech = Echelon::new();
    ech.extend(vectors);
    ech.rank()
}

/// Basis of the right null space, one vector per free column in increasing
/// column order.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVector> {
    let mut ech = Echelon::new();
    ech.extend(m.rows());
    kernel_from_echelon(&ech, m.ncols)
}

pub(crate) fn kernel_from_echelon(ech: &Echelon, ncols: usize) -> Vec<SparseVector> {
    let mut by_free: BTreeMap<usize, SparseVector> =
        (0..ncols).filter(|c| !ech.is_pivot(*c)).map(|c| (c, SparseVector::unit(c))).collect();
    for (pivot, row) in ech.rows() {
        for (col, x) in row.iter() {
            if col != pivot {
                if let Some(v) = by_free.get_mut(&col) {
                    v.add_at(pivot, &-x.clone());
                }
            }
        }
    }
    by_free.into_values().collect()
}

/// `span(a) == span(b)`, decided by `rank(a) = rank(b) = rank(a ∪ b)`.
pub fn subspace_equal(gens_a: &[SparseVector], gens_b: &[SparseVector], ncols: usize) -> bool {
    debug_assert!(gens_a.iter().chain(gens_b).all(|v| v.max_col().is_none_or(|c| c < ncols)));
    let mut ech = Echelon::new();
    ech.extend(gens_a);
    let rank_a = ech.rank();
    let rank_b = rank_of(gens_b);
    if rank_a != rank_b {
        return false;
    }
    ech.extend(gens_b);
    ech.rank() == rank_a
}

pub fn is_positive(value: &Scalar) -> bool {
    value.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
        m.rows()
            .iter()
            .map(|r| (0..m.ncols()).map(|c| r.get(c).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect()
    }

    #[test]
    fn rref_rank_one() {
        let (r, piv) = rref(&SparseMatrix::from_dense(&[&[1, 2], &[2, 4]]));
        assert_eq!(dense(&r), vec![vec![int(1), int(2)]]);
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_identity_and_permutation() {
        let id = SparseMatrix::identity(3);
        let (r, piv) = rref(&id);
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1, 2]);

        let (r, piv) = rref(&SparseMatrix::from_dense(&[&[0, 1], &[1, 0]]));
        assert_eq!(dense(&r), vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zero(3, 4)), 0);
        assert_eq!(rank(&SparseMatrix::identity(5)), 5);
        assert_eq!(rank(&SparseMatrix::from_dense(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zero(1, 3)).len(), 3);
        let k = kernel_basis(&SparseMatrix::from_dense(&[&[1, 1]]));
        assert_eq!(k, vec![SparseVector::from_ints(&[(0, -1), (1, 1)])]);
    }

    #[test]
    fn subspace_examples() {
        let e0 = SparseVector::from_ints(&[(0, 1)]);
        let two_e0 = SparseVector::from_ints(&[(0, 2)]);
        let e1 = SparseVector::from_ints(&[(1, 1)]);
        assert!(subspace_equal(std::slice::from_ref(&e0), &[two_e0], 2));
        assert!(!subspace_equal(&[e0], &[e1], 2));
        assert!(subspace_equal(&[], &[], 2));
    }

    #[test]
    fn scalar_text_round_trip() {
        assert_eq!(format_scalar(&frac(-6, 4)), "-3/2");
        assert_eq!(format_scalar(&int(5)), "5/1");
        assert_eq!(parse_scalar("-3/2").unwrap(), frac(-3, 2));
        assert_eq!(parse_scalar("4/-2").unwrap(), int(-2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }

    #[test]
    fn matrix_rejects_out_of_range_columns() {
        assert!(SparseMatrix::new(vec![SparseVector::unit(3)], 3).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
                let rows = rows
                    .into_iter()
                    .map(|row| SparseVector::from_entries(row.into_iter().enumerate().map(|(i, x)| (i, int(x)))))
                    .collect();
                SparseMatrix::new(rows, c).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.ncols());
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn rref_idempotent_and_row_space_preserving(m in small_matrix()) {
            let (r, piv) = rref(&m);
            let (r2, piv2) = rref(&r);
            prop_assert_eq!(&r, &r2);
            prop_assert_eq!(piv, piv2);
            prop_assert!(subspace_equal(m.rows(), r.rows(), m.ncols()));
        }
    }
}
