use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

/// Smith form `left * A * right = diag(d_1, ..., d_r)` with `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithData {
    #[serde(with = "decimal_vec")]
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithData {
    /// Number of nonzero invariants.
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariants different from 1.
    pub fn nontrivial(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| **d != BigInt::from(1))
            .cloned()
            .collect()
    }
}

pub fn snf(a: &IntMatrix) -> SmithData {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let r = m.min(n);
    'outer: for t in 0..r {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'outer };
            s.swap_rows(t, bi);
            left.swap_rows(t, bi);
            s.swap_cols(t, bj);
            right.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_submul(i, t, &q);
                left.row_submul(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_submul(j, t, &q);
                right.col_submul(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    s.row_submul(t, i, &minus_one);
                    left.row_submul(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            left.negate_row(t);
        }
    }
    let diag = (0..r).map(|i| s[(i, i)].clone()).collect();
    SmithData { diag, left, right }
}

mod decimal_vec {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|x| x.to_str_radix(10))
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|x| {
                BigInt::parse_bytes(x.as_bytes(), 10)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad integer {x:?}")))
            })
            .collect()
    }
}
