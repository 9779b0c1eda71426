use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form. Zero rows are kept at the bottom so the
/// shape of the input is preserved.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    reduce(&mut h, None);
    h
}

/// Returns `(H, U)` with `U` unimodular and `U * A = H`.
pub fn hnf_with_transform(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    reduce(&mut h, Some(&mut u));
    (h, u)
}

fn reduce(h: &mut IntMatrix, mut u: Option<&mut IntMatrix>) {
    let (m, n) = (h.rows(), h.cols());
    let mut r = 0;
    for j in 0..n {
        if r == m {
            break;
        }
        let mut found = false;
        loop {
            let piv = (r..m)
                .filter(|&i| !h[(i, j)].is_zero())
                .min_by(|&x, &y| h[(x, j)].abs().cmp(&h[(y, j)].abs()));
            let Some(piv) = piv else { break };
            found = true;
            h.swap_rows(piv, r);
            if let Some(u) = u.as_deref_mut() {
                u.swap_rows(piv, r);
            }
            let mut clean = true;
            for i in r + 1..m {
                if h[(i, j)].is_zero() {
                    continue;
                }
                let q = h[(i, j)].div_floor(&h[(r, j)]);
                h.row_submul(i, r, &q);
                if let Some(u) = u.as_deref_mut() {
                    u.row_submul(i, r, &q);
                }
                if !h[(i, j)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[(r, j)].is_negative() {
            h.negate_row(r);
            if let Some(u) = u.as_deref_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q: BigInt = h[(i, j)].div_floor(&h[(r, j)]);
            h.row_submul(i, r, &q);
            if let Some(u) = u.as_deref_mut() {
                u.row_submul(i, r, &q);
            }
        }
        r += 1;
    }
}

/// Column index of the leading entry of each nonzero row of an echelon matrix.
pub(crate) fn pivots(h: &IntMatrix) -> Vec<usize> {
    h.row_vecs()
        .filter_map(|r| r.iter().position(|x| !x.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(hnf(&id), id);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(hnf(&swap), id);
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(hnf(&a), IntMatrix::from_rows(&[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn transform_relation() {
        let a =
            IntMatrix::from_rows(&[vec![3, 5, 7], vec![2, -4, 6], vec![1, 1, 1], vec![5, 1, 13]]);
        let (h, u) = hnf_with_transform(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().abs(), BigInt::from(1));
        assert_eq!(hnf(&h), h);
        assert_eq!(pivots(&h), vec![0, 1, 2]);
    }
}
