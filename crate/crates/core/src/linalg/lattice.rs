use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::hnf::{hnf, hnf_with_transform, pivots};
use super::IntMatrix;
use crate::error::{Error, Result};

/// Basis (in Hermite form) of the left kernel `{v : v * A = 0}` over Z. The
/// result is saturated.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hnf_with_transform(a);
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .collect();
    hnf(&u.select_rows(&zero_rows)).nonzero_rows()
}

/// A sublattice of `Z^n` given by the Hermite basis of its row span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "IntMatrix", into = "IntMatrix")]
pub struct RowLattice {
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl From<IntMatrix> for RowLattice {
    fn from(basis: IntMatrix) -> Self {
        Self::from_hnf(basis)
    }
}

impl From<RowLattice> for IntMatrix {
    fn from(l: RowLattice) -> Self {
        l.basis
    }
}

impl RowLattice {
    pub fn from_generators(gens: &IntMatrix) -> Self {
        let basis = hnf(gens).nonzero_rows();
        Self::from_hnf(basis)
    }

    /// The caller guarantees `basis` is already in Hermite form without zero
    /// rows.
    pub fn from_hnf(basis: IntMatrix) -> Self {
        let pivots = pivots(&basis);
        Self { basis, pivots }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coefficients `c` with `c * basis = v`.
    pub fn coords(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut rest = v.to_vec();
        let mut c = Vec::with_capacity(self.rank());
        for (i, &j) in self.pivots.iter().enumerate() {
            let (q, r) = rest[j].div_rem(&self.basis[(i, j)]);
            if !r.is_zero() {
                return Err(Error::NotInLattice);
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(self.basis.row(i)) {
                    *x -= &q * b;
                }
            }
            c.push(q);
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotInLattice);
        }
        Ok(c)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coords(v).is_ok()
    }

    /// Matrix of the endomorphism `v -> v * a` (an ambient map) restricted to
    /// this lattice, in the Hermite basis.
    pub fn restrict(&self, a: &IntMatrix) -> Result<IntMatrix> {
        let rows = self
            .basis
            .row_vecs()
            .map(|b| self.coords(&a.apply(b)))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_row_vecs(self.rank(), rows))
    }

    pub fn contains_lattice(&self, other: &RowLattice) -> bool {
        other.basis.row_vecs().all(|b| self.contains(b))
    }

    /// Index `[self : other]` for a full-rank sublattice `other`, as the
    /// absolute determinant of `other` in this basis.
    pub fn index_of(&self, other: &RowLattice) -> Result<BigInt> {
        let rows = other
            .basis
            .row_vecs()
            .map(|b| self.coords(b))
            .collect::<Result<Vec<_>>>()?;
        let m = IntMatrix::from_row_vecs(self.rank(), rows);
        if m.rows() != m.cols() {
            return Ok(BigInt::zero());
        }
        let d = m.det();
        Ok(if d < BigInt::zero() { -d } else { d })
    }
}
