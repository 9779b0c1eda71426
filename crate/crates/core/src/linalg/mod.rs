//! Exact integer matrices and the lattice normal forms built on them.
//!
//! All matrices act on row vectors from the right: a lattice is the row span
//! of a basis matrix, and a linear map `v -> v * A` has the image of the
//! `i`-th basis vector as its `i`-th row.

mod hnf;
mod lattice;
pub mod modp;
mod snf;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use hnf::{hnf, hnf_with_transform};
pub use lattice::{kernel, RowLattice};
pub use snf::{snf, SmithData};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix with `cols` columns whose rows are the given vectors.
    pub fn from_row_vecs(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Self {
            rows: r,
            cols,
            data,
        }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "dimension mismatch in apply");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(i)) {
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * c).collect();
        self.with_data(data)
    }

    /// `self - c * I`.
    pub fn sub_scalar(&self, c: i64) -> IntMatrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= c;
        }
        m
    }

    fn with_data(&self, data: Vec<BigInt>) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Columns of `self` followed by the columns of `other`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        IntMatrix::from_row_vecs(self.cols + other.cols, rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let rows = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        IntMatrix::from_row_vecs(self.cols, rows)
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let cols = range.len();
        let rows = (0..self.rows)
            .map(|i| self.row(i)[range.clone()].to_vec())
            .collect();
        IntMatrix::from_row_vecs(cols, rows)
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> IntMatrix {
        let keep: Vec<usize> = (0..self.rows)
            .filter(|&i| self.row(i).iter().any(|x| !x.is_zero()))
            .collect();
        self.select_rows(&keep)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for k in 0..c {
            self.data.swap(a * c + k, b * c + k);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`.
    pub(crate) fn row_submul(&mut self, dst: usize, src: usize, q: &BigInt) {
        debug_assert_ne!(dst, src);
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for k in 0..c {
            if self.data[src * c + k].is_zero() {
                continue;
            }
            let t = q * &self.data[src * c + k];
            self.data[dst * c + k] -= t;
        }
    }

    /// `col[dst] -= q * col[src]`.
    pub(crate) fn col_submul(&mut self, dst: usize, src: usize, q: &BigInt) {
        debug_assert_ne!(dst, src);
        if q.is_zero() {
            return;
        }
        let c = self.cols;
        for i in 0..self.rows {
            if self.data[i * c + src].is_zero() {
                continue;
            }
            let t = q * &self.data[i * c + src];
            self.data[i * c + dst] -= t;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -&*x;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            if piv != k {
                a.swap_rows(piv, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Rows rendered as base-10 strings (the on-disk cache representation).
    pub fn to_decimal_rows(&self) -> Vec<Vec<String>> {
        self.row_vecs()
            .map(|r| r.iter().map(|x| x.to_str_radix(10)).collect())
            .collect()
    }

    pub fn from_decimal_rows(cols: usize, rows: &[Vec<String>]) -> Result<Self, String> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(format!("row of length {} where {} expected", r.len(), cols));
            }
            let v = r
                .iter()
                .map(|s| {
                    BigInt::parse_bytes(s.as_bytes(), 10)
                        .ok_or_else(|| format!("bad decimal integer {s:?}"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.push(v);
        }
        Ok(Self::from_row_vecs(cols, out))
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in self.row_vecs() {
            let s: Vec<String> = r.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", s.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serialized as `{rows, cols, entries}` with decimal-string entries.
#[derive(Serialize, Deserialize)]
struct IntMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        IntMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_decimal_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = IntMatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows {
            return Err(serde::de::Error::custom("row count mismatch"));
        }
        IntMatrix::from_decimal_rows(repr.cols, &repr.entries).map_err(serde::de::Error::custom)
    }
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn vec_is_zero(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}
