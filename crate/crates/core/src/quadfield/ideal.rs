//! Primitive ideals `aZ + ((b + sqrt(D))/2)Z` of a real quadratic order and
//! their reduction cycles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::isqrt;
use crate::error::{Error, Result};

/// `(x + y sqrt(D)) / z` with `z > 0` and `gcd(x, y, z) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadElement {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl QuadElement {
    pub fn one() -> Self {
        Self::new(BigInt::one(), BigInt::zero(), BigInt::one())
    }

    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Self {
        assert!(!z.is_zero());
        let g = x.gcd(&y).gcd(&z);
        let sign = if z.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let g = g * sign;
        Self {
            x: x / &g,
            y: y / &g,
            z: z / &g,
        }
    }

    pub fn mul(&self, other: &Self, d: i64) -> Self {
        let d = BigInt::from(d);
        Self::new(
            &self.x * &other.x + d * &self.y * &other.y,
            &self.x * &other.y + &self.y * &other.x,
            &self.z * &other.z,
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.x.clone(), -&self.y, self.z.clone())
    }

    /// Norm as a reduced fraction `(num, den)`.
    pub fn norm(&self, d: i64) -> (BigInt, BigInt) {
        let num = &self.x * &self.x - BigInt::from(d) * &self.y * &self.y;
        let den = &self.z * &self.z;
        let g = num.gcd(&den);
        (num / &g, den / g)
    }

    pub fn inv(&self, d: i64) -> Self {
        let n = &self.x * &self.x - BigInt::from(d) * &self.y * &self.y;
        // z / (x + y sqrt D) = z (x - y sqrt D) / n
        Self::new(&self.z * &self.x, -&self.z * &self.y, n)
    }

    /// `(X + Y sqrt D) / 2` if the element is an algebraic integer written
    /// with that denominator.
    pub fn half_integral(&self) -> Option<(BigInt, BigInt)> {
        let two = BigInt::from(2);
        let (xq, xr) = (&self.x * &two).div_rem(&self.z);
        let (yq, yr) = (&self.y * &two).div_rem(&self.z);
        (xr.is_zero() && yr.is_zero()).then_some((xq, yq))
    }
}

/// The ideal `aZ + ((b + sqrt D)/2)Z` with `a > 0` and `b^2 = D (mod 4a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimitiveIdeal {
    pub a: BigInt,
    pub b: BigInt,
}

impl PrimitiveIdeal {
    pub fn is_reduced(&self, d: i64) -> bool {
        let s = BigInt::from(isqrt(d as u64));
        let two_a = &self.a * 2;
        self.b.is_positive() && self.b <= s && &s - &self.b < two_a && two_a <= &s + &self.b
    }

    /// One reduction step `a' = (beta_bar / a) a` with `beta = (b + sqrt D)/2`,
    /// returning the new ideal and the multiplier.
    pub fn rho(&self, d: i64) -> (PrimitiveIdeal, QuadElement) {
        let dd = BigInt::from(d);
        let c: BigInt = (&self.b * &self.b - &dd) / (&self.a * 4);
        let a1 = c.abs();
        let m = &a1 * 2;
        let s = BigInt::from(isqrt(d as u64));
        let b1 = if a1 <= s {
            &s - (&s + &self.b).mod_floor(&m)
        } else {
            let r = (-&self.b).mod_floor(&m);
            if r > a1 {
                r - &m
            } else {
                r
            }
        };
        let mult = QuadElement::new(self.b.clone(), -BigInt::one(), &self.a * 2);
        (PrimitiveIdeal { a: a1, b: b1 }, mult)
    }
}

/// Result of walking the reduction cycle of an ideal.
pub struct Reduction {
    /// `Some(pi)` with `(pi) = a` when the ideal is principal.
    pub generator: Option<QuadElement>,
}

/// Decides principality of `a` by reducing it and walking its cycle.
pub fn reduce_and_test(ideal: &PrimitiveIdeal, d: i64) -> Reduction {
    let mut cur = ideal.clone();
    let mut gamma = QuadElement::one();
    let mut steps = 0usize;
    while !cur.is_reduced(d) {
        if cur.a.is_one() {
            break;
        }
        let (next, m) = cur.rho(d);
        gamma = gamma.mul(&m, d);
        cur = next;
        steps += 1;
        assert!(steps < 10_000, "ideal reduction did not terminate");
    }
    let first = cur.clone();
    loop {
        if cur.a.is_one() {
            return Reduction {
                generator: Some(gamma.inv(d)),
            };
        }
        let (next, m) = cur.rho(d);
        gamma = gamma.mul(&m, d);
        cur = next;
        if cur == first {
            return Reduction { generator: None };
        }
    }
}

/// `N_1^k = (N^k, (b_k + sqrt D)/2)` where `N_1` is the prime above `n` on
/// which `sqrt D = root`.
pub fn split_prime_power(d: i64, n: u64, root: u64, k: u32) -> Result<PrimitiveIdeal> {
    let nb = BigInt::from(n);
    let dd = BigInt::from(d);
    let mut modulus = nb.clone();
    // b = -root (mod n); Hensel lift b^2 = D (mod n^k)
    let mut b = (-BigInt::from(root)).mod_floor(&nb);
    if !(&b * &b - &dd).mod_floor(&nb).is_zero() {
        return Err(Error::NotASquare { a: d, q: n });
    }
    for _ in 1..k {
        let next = &modulus * &nb;
        let f = (&b * &b - &dd).mod_floor(&next);
        let deriv = (&b * BigInt::from(2)).mod_floor(&nb);
        let inv = crate::arith::inv_mod(i64::try_from(deriv).expect("small residue"), n)?;
        let t = ((&f / &modulus) * BigInt::from(inv)).mod_floor(&nb);
        b = (&b - t * &modulus).mod_floor(&next);
        modulus = next;
    }
    if (&b - &dd).is_odd() {
        b += &modulus;
    }
    debug_assert!((&b * &b - &dd).mod_floor(&(&modulus * 4)).is_zero());
    Ok(PrimitiveIdeal { a: modulus, b })
}
