//! Binary quadratic forms `(a, b, c)` of discriminant `b^2 - 4ac`.

use std::collections::HashSet;

use crate::arith::isqrt;

pub type Form = (i64, i64, i64);

/// Reduced positive definite forms of discriminant `d < 0`.
pub fn reduced_definite_forms(d: i64) -> Vec<Form> {
    assert!(d < 0);
    let mut out = Vec::new();
    let n = -d;
    // a <= sqrt(|d| / 3)
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b - d) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - d) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            out.push((a, b, c));
        }
        a += 1;
    }
    out
}

/// Whether an indefinite form is reduced: `|sqrt(d) - 2|a|| < b < sqrt(d)`.
pub fn is_reduced_indefinite(d: i64, (a, b, _): Form) -> bool {
    let s = isqrt(d as u64) as i64;
    b > 0 && b <= s && s - b < 2 * a.abs() && 2 * a.abs() <= s + b
}

/// All reduced indefinite forms of a non-square discriminant `d > 0`.
pub fn reduced_indefinite_forms(d: i64) -> Vec<Form> {
    assert!(d > 0);
    let s = isqrt(d as u64) as i64;
    let mut out = Vec::new();
    for b in 1..=s {
        if (b - d).rem_euclid(2) != 0 {
            continue;
        }
        let m = (d - b * b) / 4; // = -ac > 0
        for a in 1..=m {
            if m % a != 0 {
                continue;
            }
            if !(s - b < 2 * a && 2 * a <= s + b) {
                continue;
            }
            let c = m / a;
            out.push((a, b, -c));
            out.push((-a, b, c));
        }
    }
    out
}

/// The reduction operator `rho(a, b, c) = (c, b', c')` with
/// `b' = -b (mod 2c)` placed in the standard interval.
pub fn rho(d: i64, (_, b, c): Form) -> Form {
    let s = isqrt(d as u64) as i64;
    let ac = c.abs();
    let m = 2 * ac;
    let b1 = if ac <= s {
        // largest b' <= s with b' = -b (mod 2|c|)
        s - (s + b).rem_euclid(m)
    } else {
        // b' in (-|c|, |c|]
        let r = (-b).rem_euclid(m);
        if r > ac {
            r - m
        } else {
            r
        }
    };
    let c1 = (b1 * b1 - d) / (4 * c);
    (c, b1, c1)
}

/// Number of cycles of reduced indefinite forms (the narrow class number).
pub fn count_cycles(d: i64) -> u64 {
    let forms = reduced_indefinite_forms(d);
    let mut seen: HashSet<Form> = HashSet::new();
    let mut cycles = 0;
    for f in forms {
        if seen.contains(&f) {
            continue;
        }
        cycles += 1;
        let mut g = f;
        loop {
            seen.insert(g);
            g = rho(d, g);
            if g == f {
                break;
            }
            debug_assert!(is_reduced_indefinite(d, g));
        }
    }
    cycles
}
