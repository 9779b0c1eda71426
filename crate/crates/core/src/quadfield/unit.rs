//! Fundamental units of real quadratic fields from the continued fraction of
//! `(b + sqrt(D)) / 2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{inv_mod, isqrt, mul_mod};
use crate::linalg::modp::reduce_big;

/// `u = (x + y sqrt(D)) / 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadUnit {
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
    pub period: usize,
}

impl QuadUnit {
    pub fn period_parity(&self) -> usize {
        self.period % 2
    }

    /// `x^2 - D y^2`, which is `4 * norm`.
    pub fn norm_times_four(&self, d: i64) -> BigInt {
        &self.x * &self.x - BigInt::from(d) * &self.y * &self.y
    }

    /// Image under `sqrt(D) -> root` in `F_n`.
    pub fn reduce(&self, root: u64, n: u64) -> u64 {
        let x = reduce_big(&self.x, n);
        let y = reduce_big(&self.y, n);
        let half = inv_mod(2, n).expect("odd modulus");
        mul_mod((x + mul_mod(y, root, n)) % n, half, n)
    }
}

/// The greatest `b < sqrt(D)` with `b = D (mod 2)` and the `(P, Q)` start of
/// the purely periodic expansion.
fn start(d: i64) -> (i64, i64) {
    let s = isqrt(d as u64) as i64;
    let b = if (s - d).rem_euclid(2) == 0 { s } else { s - 1 };
    (b, 2)
}

/// Walks one period of the expansion and hands each partial quotient to `f`.
fn for_each_partial_quotient(d: i64, mut f: impl FnMut(i64)) -> usize {
    let s = isqrt(d as u64) as i64;
    let (p0, q0) = start(d);
    let (mut p, mut q) = (p0, q0);
    let mut len = 0;
    loop {
        let a = (p + s) / q;
        f(a);
        len += 1;
        p = a * q - p;
        q = (d - p * p) / q;
        if (p, q) == (p0, q0) {
            return len;
        }
    }
}

/// Exact fundamental unit `> 1` of the real quadratic field of
/// discriminant `d`.
pub fn fundamental_unit_exact(d: i64) -> QuadUnit {
    let (b, _) = start(d);
    // q_{-2} = 1, q_{-1} = 0
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    let period = for_each_partial_quotient(d, |a| {
        let next = BigInt::from(a) * &q + &q_prev;
        q_prev = std::mem::replace(&mut q, next);
    });
    let x = &q * BigInt::from(b) + &q_prev * 2;
    QuadUnit {
        x,
        y: q,
        norm: if period % 2 == 0 { 1 } else { -1 },
        period,
    }
}

/// Residue of the fundamental unit under `sqrt(D) -> root (mod n)`, computed
/// by running the convergent recurrence in `F_n`. Also returns the period.
pub fn unit_residue_tracked(d: i64, root: u64, n: u64) -> (u64, usize) {
    let (b, _) = start(d);
    let (mut q_prev, mut q) = (1u64 % n, 0u64);
    let period = for_each_partial_quotient(d, |a| {
        let next = (mul_mod(a.rem_euclid(n as i64) as u64, q, n) + q_prev) % n;
        q_prev = std::mem::replace(&mut q, next);
    });
    let half = inv_mod(2, n).expect("odd modulus");
    let b = b.rem_euclid(n as i64) as u64;
    // xi = (b + root) / 2, u = q xi + q_prev
    let xi = mul_mod((b + root) % n, half, n);
    ((mul_mod(q, xi, n) + q_prev) % n, period)
}
