//! Heilbronn matrices of determinant `n`, stored as `[a, b, c, d]`.

/// Cremona's family, valid for a prime `l` not dividing the level.
pub fn cremona(l: i64) -> Vec<[i64; 4]> {
    if l == 2 {
        return vec![[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]];
    }
    let mut out = vec![[1, 0, 0, l]];
    let half = (l - 1) / 2;
    for r in -half..=half {
        let (mut x1, mut x2, mut y1, mut y2) = (l, -r, 0i64, 1i64);
        let (mut a, mut b) = (-l, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = round_half_away(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push([x1, x2, y1, y2]);
        }
    }
    out
}

fn round_half_away(a: i64, b: i64) -> i64 {
    let q = a / b;
    let r = a - q * b;
    // compare 2|r| with |b|
    if 2 * r.abs() >= b.abs() {
        if (a < 0) == (b < 0) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Merel's family for any `n >= 1`.
pub fn merel(n: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for a in 1..=n {
        let q = n / a;
        if q * a == n {
            let d = q;
            for b in 0..a {
                out.push([a, b, 0, d]);
            }
            for c in 1..d {
                out.push([a, 0, c, d]);
            }
        }
        for d in q + 1..=n {
            let bc = a * d - n;
            for c in bc / a + 1..d {
                if bc % c == 0 {
                    out.push([a, bc / c, c, d]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        for l in [2i64, 3, 5, 7, 11, 13] {
            assert!(
                cremona(l).iter().all(|m| m[0] * m[3] - m[1] * m[2] == l),
                "{l}"
            );
        }
        for n in 1..20 {
            assert!(
                merel(n).iter().all(|m| m[0] * m[3] - m[1] * m[2] == n),
                "{n}"
            );
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_half_away(7, 2), 4);
        assert_eq!(round_half_away(-7, 2), -4);
        assert_eq!(round_half_away(5, 3), 2);
        assert_eq!(round_half_away(-5, -3), 2);
        assert_eq!(round_half_away(4, 3), 1);
    }
}
