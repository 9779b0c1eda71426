//! Elementary modular arithmetic on machine integers.
//!
//! Everything here works with `u64`/`i64` values well below `2^32`, so products
//! fit in `u128`/`i128` without overflow.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime(n)).collect()
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

pub fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Exponent of `p` in `n` (with `v_p(0)` reported as `u32::MAX`).
pub fn valuation(n: u64, p: u64) -> u32 {
    if n == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        v += 1;
    }
    v
}

pub fn modp(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, n);
        }
        b = mul_mod(b, b, n);
        exp >>= 1;
    }
    result
}

pub fn inv_mod(a: i64, n: u64) -> Result<u64> {
    let (mut old_r, mut r) = (modp(a, n) as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { x: a, n });
    }
    Ok(old_s.rem_euclid(n as i128) as u64)
}

/// Kronecker symbol `(d / n)` for `n > 0`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    if n == 0 {
        return if d.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut a = d as i128;
    let mut b = n as i128;
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while b % 2 == 0 {
        v += 1;
        b /= 2;
    }
    let mut k: i8 = if v % 2 == 0 || matches!(a.rem_euclid(8), 1 | 7) {
        1
    } else {
        -1
    };
    // b is now odd and positive; reduce to the Jacobi symbol.
    loop {
        if a == 0 {
            return if b == 1 { k } else { 0 };
        }
        let mut v = 0;
        while a % 2 == 0 {
            v += 1;
            a /= 2;
        }
        if v % 2 == 1 && matches!(b.rem_euclid(8), 3 | 5) {
            k = -k;
        }
        // reciprocity (with the sign of a folded in)
        if a < 0 {
            a = -a;
            if b.rem_euclid(4) == 3 {
                k = -k;
            }
        }
        if a.rem_euclid(4) == 3 && b.rem_euclid(4) == 3 {
            k = -k;
        }
        let r = b.rem_euclid(a);
        b = a;
        a = r;
    }
}

/// Square root of `a` modulo an odd prime `q` by Tonelli-Shanks.
///
/// Of the two roots `r` and `q - r` the smaller one is returned.
pub fn sqrt_mod(a: i64, q: u64) -> Result<u64> {
    let a = modp(a, q);
    if q == 2 || a == 0 {
        return Ok(a);
    }
    if pow_mod(a, (q - 1) / 2, q) != 1 {
        return Err(Error::NotASquare { a: a as i64, q });
    }
    let mut s = 0;
    let mut t = q - 1;
    while t.is_multiple_of(2) {
        t /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (q - 1) / 2, q) != q - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, t, q);
    let mut x = pow_mod(a, t, q);
    let mut r = pow_mod(a, t.div_ceil(2), q);
    while x != 1 {
        let mut i = 0;
        let mut y = x;
        while y != 1 {
            y = mul_mod(y, y, q);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), q);
        m = i;
        c = mul_mod(b, b, q);
        x = mul_mod(x, c, q);
        r = mul_mod(r, b, q);
    }
    Ok(r.min(q - r))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_primitive_root(g: u64, n: u64) -> bool {
    !g.is_multiple_of(n)
        && prime_factors(n - 1)
            .into_iter()
            .all(|q| pow_mod(g, (n - 1) / q, n) != 1)
}

pub fn smallest_primitive_root(n: u64) -> u64 {
    (2..n).find(|&g| is_primitive_root(g, n)).unwrap_or(1)
}

/// The surjection `log : (Z/NZ)^x -> Z/pZ` obtained from a discrete logarithm
/// to a primitive root, reduced modulo `p`.
#[derive(Clone, Debug)]
pub struct LogMap {
    modulus: u64,
    target: u64,
    generator: u64,
    baby_steps: HashMap<u64, u64>,
    giant_factor: u64,
    step: u64,
}

impl LogMap {
    /// Uses the smallest primitive root modulo `n`.
    pub fn new(n: u64, p: u64) -> Result<Self> {
        check_level_pair(n, p)?;
        Self::with_generator(n, p, smallest_primitive_root(n))
    }

    pub fn with_generator(n: u64, p: u64, g: u64) -> Result<Self> {
        check_level_pair(n, p)?;
        if !is_primitive_root(g, n) {
            return Err(Error::InvalidArgument(format!(
                "{g} is not a primitive root modulo {n}"
            )));
        }
        let order = n - 1;
        let step = isqrt(order) + 1;
        let mut baby_steps = HashMap::with_capacity(step as usize);
        let mut e = 1u64;
        for j in 0..step {
            baby_steps.entry(e).or_insert(j);
            e = mul_mod(e, g, n);
        }
        let giant_factor = inv_mod(pow_mod(g, step, n) as i64, n)?;
        Ok(Self {
            modulus: n,
            target: p,
            generator: g,
            baby_steps,
            giant_factor,
            step,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    /// Discrete logarithm to the base `generator` in `[0, N-1)`.
    pub fn dlog(&self, x: i64) -> Result<u64> {
        let x = modp(x, self.modulus);
        if x == 0 {
            return Err(Error::NotInvertible {
                x: 0,
                n: self.modulus,
            });
        }
        let mut gamma = x;
        for i in 0..self.step {
            if let Some(&j) = self.baby_steps.get(&gamma) {
                return Ok((i * self.step + j) % (self.modulus - 1));
            }
            gamma = mul_mod(gamma, self.giant_factor, self.modulus);
        }
        unreachable!("baby-step giant-step always terminates for a primitive root")
    }

    pub fn log(&self, x: i64) -> Result<u64> {
        Ok(self.dlog(x)? % self.target)
    }
}

/// Checks the standing hypotheses on `(N, p)`: both prime, `p >= 5`, `N >= 5`
/// and `p || N - 1`.
pub fn check_level_pair(n: u64, p: u64) -> Result<()> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n as i64));
    }
    if n < 5 {
        return Err(Error::LevelTooSmall(n));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p as i64));
    }
    if p < 5 || !(n - 1).is_multiple_of(p) || (n - 1).is_multiple_of(p * p) {
        return Err(Error::HypothesisViolated { n, p });
    }
    Ok(())
}
