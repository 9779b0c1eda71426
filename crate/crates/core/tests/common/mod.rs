#![allow(dead_code)]

use std::collections::BTreeSet;

use eistwist::arith::{gcd, kronecker};
use eistwist::eisenstein::{EisensteinContext, Valuation};
use eistwist::linalg::{IntMatrix, RowLattice};
use eistwist::modsym::ModularSymbolSpace;
use num_bigint::BigInt;

/// Gauss reduction of a positive definite form.
pub fn reduce_definite(mut f: (i64, i64, i64)) -> (i64, i64, i64) {
    loop {
        let (a, b, c) = f;
        if b > a || b <= -a {
            // translate b into (-a, a]
            let k = (a - b).div_euclid(2 * a);
            let nb = b + 2 * a * k;
            let nc = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
            f = (a, nb, nc);
        } else if a > c {
            f = (c, -b, a);
        } else if a == c && b < 0 {
            f = (a, -b, c);
        } else {
            return f;
        }
    }
}

/// Reduces every primitive form with small outer coefficients and counts
/// the distinct results.
pub fn brute_force_definite(d: i64) -> u64 {
    let bound = d.abs();
    let mut classes = BTreeSet::new();
    for a in 1..=bound {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if gcd(gcd(a, b), c) != 1 {
                continue;
            }
            classes.insert(reduce_definite((a, b, c)));
        }
    }
    classes.len() as u64
}

pub fn analytic_definite(d: i64) -> u64 {
    let m = d.unsigned_abs();
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let s: i64 = (1..m).map(|a| kronecker(d, a) as i64 * a as i64).sum();
    (-(w * s) / (2 * m as i64)) as u64
}

/// Smallest `y > 0` with `D y^2 +- 4` a square, up to `limit`.
pub fn pell_search(d: i64, limit: u64) -> Option<(u128, u128, i8)> {
    let d = d as u128;
    for y in 1..=limit as u128 {
        let t = d * y * y;
        for (n, sign) in [(t - 4, -1i8), (t + 4, 1)] {
            let x = (n as f64).sqrt() as u128;
            for x in x.saturating_sub(1)..=x + 1 {
                if x * x == n {
                    return Some((x, y, sign));
                }
            }
        }
    }
    None
}

pub fn analytic_indefinite(d: i64, log_eps: f64) -> f64 {
    let m = d as u64;
    let s: f64 = (1..m)
        .map(|a| kronecker(d, a) as f64 * (std::f64::consts::PI * a as f64 / m as f64).sin().ln())
        .sum();
    -s / (2.0 * log_eps)
}

pub fn add_into(acc: &mut [BigInt], v: &[BigInt], c: i64) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += x * c;
    }
}

/// `{g 0, g oo}` for the lift `g = [[0, -1], [1, d]]` of `(1 : d)`, and the
/// identity for `(0 : 1)`; endpoints as `(num, den)`.
pub fn symbol_endpoints(space: &ModularSymbolSpace, s: usize) -> ((i64, i64), (i64, i64)) {
    let (c, d) = space.p1().point(s);
    if c == 0 {
        ((0, 1), (1, 0))
    } else {
        ((-1, d as i64), (0, 1))
    }
}

pub fn act(m: [i64; 4], (x, y): (i64, i64)) -> (i64, i64) {
    (m[0] * x + m[1] * y, m[2] * x + m[3] * y)
}

/// Hecke operator from its coset definition, acting on paths.
pub fn coset_hecke(space: &ModularSymbolSpace, l: u64) -> IntMatrix {
    let l = l as i64;
    let mut cosets: Vec<[i64; 4]> = (0..l).map(|j| [1, j, 0, l]).collect();
    if l != space.level() as i64 {
        cosets.push([l, 0, 0, 1]);
    }
    let dim = space.dim_rel();
    let rows = space
        .lifts()
        .iter()
        .map(|lift| {
            let mut acc = vec![BigInt::from(0); dim];
            for &(s, c) in lift {
                let (a, b) = symbol_endpoints(space, s);
                for &g in &cosets {
                    let path = space.path_between(act(g, a), act(g, b)).unwrap();
                    add_into(&mut acc, &path, c);
                }
            }
            acc
        })
        .collect();
    IntMatrix::from_row_vecs(dim, rows)
}

/// Membership in `W_n + p^e M` by Hermite form of the stacked generators.
pub fn in_local_lattice_by_hnf(ctx: &EisensteinContext, x: &[BigInt], level: usize) -> bool {
    let k = ctx.rank();
    let e = ctx.p_exponent(level);
    let pe = BigInt::from(ctx.p).pow(e);
    let scaled = IntMatrix::identity(k).scale(&pe);
    RowLattice::from_generators(&ctx.w[level].basis().vstack(&scaled)).contains(x)
}

pub fn valuation_by_hnf(ctx: &EisensteinContext, x: &[BigInt]) -> Valuation {
    for level in 1..=ctx.n_max + 1 {
        if !in_local_lattice_by_hnf(ctx, x, level) {
            return Valuation::Exact(level as u32 - 1);
        }
    }
    Valuation::AtLeast(ctx.n_max as u32 + 1)
}
