//! Dense linear algebra over a prime field `F_p`.
//!
//! Entries are stored as `u64` and kept reduced between operations. Inside
//! elimination and products the reduction is delayed as long as the running
//! sums provably fit in 64 bits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

pub fn reduce_big(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        Self {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_int(a: &IntMatrix, p: u64) -> Self {
        let mut m = Self::zeros(a.rows(), a.cols(), p);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                m.data[i * a.cols() + j] = reduce_big(&a[(i, j)], p);
            }
        }
        m
    }

    /// Rows are reduced modulo `p` on the way in.
    pub fn from_rows(cols: usize, p: u64, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row.into_iter().map(|x| x % p));
        }
        Self {
            rows: r,
            cols,
            p,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    /// Largest number of `(p-1)^2` terms that may be summed in a `u64`.
    fn lazy_budget(&self) -> u64 {
        let sq = (self.p - 1).max(1).pow(2);
        (u64::MAX - self.p) / sq
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let budget = self.lazy_budget();
        let mut out = FpMatrix::zeros(self.rows, other.cols, p);
        let n = other.cols;
        for i in 0..self.rows {
            let acc = &mut out.data[i * n..(i + 1) * n];
            let mut pending = 0u64;
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                if pending == budget {
                    acc.iter_mut().for_each(|x| *x %= p);
                    pending = 0;
                }
                pending += 1;
                let b = &other.data[k * n..(k + 1) * n];
                for (x, &y) in acc.iter_mut().zip(b) {
                    *x += a * y;
                }
            }
            acc.iter_mut().for_each(|x| *x %= p);
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let p = self.p;
        let budget = self.lazy_budget();
        let mut acc = vec![0u64; self.cols];
        let mut pending = 0u64;
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if pending == budget {
                acc.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
            pending += 1;
            for (x, &y) in acc.iter_mut().zip(self.row(i)) {
                *x += a * y;
            }
        }
        acc.iter_mut().for_each(|x| *x %= p);
        acc
    }

    pub fn sub_scalar(&self, c: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let c = c % self.p;
        for i in 0..self.rows {
            let x = &mut m.data[i * self.cols + i];
            *x = (*x + self.p - c) % self.p;
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut result = FpMatrix::identity(self.rows, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            p: self.p,
            data,
        }
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        FpMatrix {
            rows: self.rows,
            cols,
            p: self.p,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns. The
    /// pivot rows come first and all later rows are zero.
    pub fn rref(&mut self) -> Vec<usize> {
        let (m, n, p) = (self.rows, self.cols, self.p);
        let budget = self.lazy_budget();
        let mut updates = vec![0u64; m];
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..n {
            if r == m {
                break;
            }
            let Some(piv) = (r..m).find(|&i| !self.data[i * n + j].is_multiple_of(p)) else {
                continue;
            };
            if piv != r {
                for k in 0..n {
                    self.data.swap(piv * n + k, r * n + k);
                }
                updates.swap(piv, r);
            }
            let inv = inv_mod_u64(self.data[r * n + j] % p, p);
            for k in j..n {
                let x = &mut self.data[r * n + k];
                *x = (*x % p) * inv % p;
            }
            updates[r] = 0;
            let (before, rest) = self.data.split_at_mut(r * n);
            let (pivot_row, after) = rest.split_at_mut(n);
            let eliminate = |row: &mut [u64], count: &mut u64| {
                let f = row[j] % p;
                if f == 0 {
                    return;
                }
                if *count == budget {
                    row[j..].iter_mut().for_each(|x| *x %= p);
                    *count = 0;
                }
                *count += 1;
                let c = p - f;
                for (x, &y) in row[j..].iter_mut().zip(&pivot_row[j..]) {
                    *x += c * y;
                }
            };
            for (i, row) in before.chunks_mut(n).enumerate() {
                eliminate(row, &mut updates[i]);
            }
            for (i, row) in after.chunks_mut(n).enumerate() {
                eliminate(row, &mut updates[r + 1 + i]);
            }
            pivots.push(j);
            r += 1;
        }
        self.data.iter_mut().for_each(|x| *x %= p);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}` as the rows of the result.
    pub fn right_kernel(&self) -> FpMatrix {
        let mut r = self.clone();
        let pivots = r.rref();
        let n = self.cols;
        let p = self.p;
        let mut is_pivot = vec![false; n];
        for &j in &pivots {
            is_pivot[j] = true;
        }
        let mut out = Vec::new();
        for f in (0..n).filter(|&j| !is_pivot[j]) {
            let mut x = vec![0u64; n];
            x[f] = 1;
            for (i, &j) in pivots.iter().enumerate() {
                x[j] = (p - r.get(i, f)) % p;
            }
            out.push(x);
        }
        FpMatrix::from_rows(n, p, out)
    }

    /// Basis of `{v : v A = 0}`.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().right_kernel()
    }
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    crate::arith::inv_mod(a as i64, p).expect("nonzero element of a prime field")
}

/// A subspace of `F_p^n` stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(gens: &FpMatrix) -> Self {
        let mut b = gens.clone();
        let pivots = b.rref();
        let keep = pivots.len();
        b.data.truncate(keep * b.cols);
        b.rows = keep;
        Self { basis: b, pivots }
    }

    pub fn whole(n: usize, p: u64) -> Self {
        Self::span(&FpMatrix::identity(n, p))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let c: Vec<u64> = self.pivots.iter().map(|&j| v[j] % self.basis.p).collect();
        let back = self.combine(&c);
        (back.iter().zip(v).all(|(a, b)| *a == b % self.basis.p)).then_some(c)
    }

    /// Coordinates read off the pivot positions without a membership check.
    pub fn coords_unchecked(&self, v: &[u64]) -> Vec<u64> {
        self.pivots.iter().map(|&j| v[j] % self.basis.p).collect()
    }

    pub fn combine(&self, c: &[u64]) -> Vec<u64> {
        self.basis.apply(c)
    }

    /// Matrix (in the echelon basis) of a map given by its values on the
    /// basis vectors. Panics if an image leaves the subspace.
    pub fn restrict_images(&self, images: &FpMatrix) -> FpMatrix {
        let rows = images
            .row_vecs()
            .map(|w| {
                self.coords(w)
                    .expect("operator does not preserve the subspace")
            })
            .collect();
        FpMatrix::from_rows(self.dim(), self.basis.p, rows)
    }

    /// Subspace spanned by the given combinations of basis vectors.
    pub fn sub_from_coords(&self, coords: &FpMatrix) -> Subspace {
        Subspace::span(&coords.mul(&self.basis))
    }
}

/// Basis of the generalized left kernel `{v : v S^n = 0}` of a square matrix.
pub fn generalized_kernel(s: &FpMatrix) -> FpMatrix {
    let n = s.rows();
    if n == 0 {
        return FpMatrix::zeros(0, 0, s.p);
    }
    // ker S^k stabilizes once two consecutive squarings agree in rank
    let mut power = s.clone();
    let mut k = 1usize;
    let mut rank = power.rank();
    while k < n {
        let next = power.mul(&power);
        let next_rank = next.rank();
        k *= 2;
        power = next;
        if next_rank == rank {
            break;
        }
        rank = next_rank;
    }
    power.left_kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, rows: &[&[u64]]) -> FpMatrix {
        FpMatrix::from_rows(rows[0].len(), p, rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn rref_and_kernel() {
        let a = m(5, &[&[1, 2, 3], &[2, 4, 1], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero());
        let rk = a.right_kernel();
        assert!(a.mul(&rk.transpose()).is_zero());
    }

    #[test]
    fn generalized_kernel_of_jordan_block() {
        let s = m(7, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(s.left_kernel().rows(), 1);
        assert_eq!(generalized_kernel(&s).rows(), 3);
        let t = m(7, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 2]]);
        assert_eq!(generalized_kernel(&t).rows(), 2);
    }

    #[test]
    fn lazy_reduction_with_large_prime() {
        let p = 4_294_967_291u64;
        let a = m(p, &[&[p - 1, p - 2], &[p - 3, p - 4]]);
        let b = a.mul(&a);
        assert_eq!(b.get(0, 0), (7u128 % p as u128) as u64);
        let mut r = a.clone();
        assert_eq!(r.rref().len(), 2);
    }

    #[test]
    fn subspace_coords() {
        let sp = Subspace::span(&m(5, &[&[1, 1, 0], &[0, 1, 1]]));
        assert_eq!(sp.dim(), 2);
        assert!(sp.coords(&[1, 2, 1]).is_some());
        assert!(sp.coords(&[1, 0, 0]).is_none());
    }
}
