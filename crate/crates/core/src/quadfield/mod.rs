//! Quadratic fields `Q(sqrt D)`: class numbers, fundamental units and the
//! arithmetic of a prime `N` split in the field.

pub mod forms;
pub mod ideal;
pub mod unit;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_squarefree, kronecker, mul_mod, pow_mod, sqrt_mod, valuation, LogMap};
use crate::error::{Error, Result};
use crate::linalg::modp::reduce_big;

pub use ideal::{PrimitiveIdeal, QuadElement};
pub use unit::QuadUnit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Discriminant(i64);

pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Self(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 > 0
    }

    pub fn chi(self, n: u64) -> i8 {
        kronecker(self.0, n)
    }

    /// `chi_D(-1)`.
    pub fn sign(self) -> i8 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }
}

/// Whether `d` is usable for the twist sweep at `(n, p)`: fundamental, prime
/// to `p n`, of the requested sign, and with `n` split (real case) or inert
/// (imaginary case).
pub fn validate_discriminant(d: i64, n: u64, p: u64, want_split: bool) -> bool {
    admissibility(d, n, p, want_split).is_ok()
}

pub fn admissibility(d: i64, n: u64, p: u64, want_split: bool) -> Result<Discriminant> {
    let bad = |reason| Error::InadmissibleDiscriminant { d, n, p, reason };
    let disc = Discriminant::new(d)?;
    if d % p as i64 == 0 {
        return Err(bad("p divides D"));
    }
    if gcd(d, n as i64) != 1 {
        return Err(bad("N divides D"));
    }
    if want_split {
        if d < 0 {
            return Err(bad("D must be positive"));
        }
        if kronecker(d, n) != 1 {
            return Err(bad("N does not split"));
        }
    } else {
        if d > 0 {
            return Err(bad("D must be negative"));
        }
        if kronecker(d, n) != -1 {
            return Err(bad("N is not inert"));
        }
    }
    Ok(disc)
}

/// Wide class number `h(K)`.
pub fn class_number(d: Discriminant) -> u64 {
    let d = d.value();
    if d < 0 {
        forms::reduced_definite_forms(d).len() as u64
    } else {
        let narrow = forms::count_cycles(d);
        if unit::fundamental_unit_exact(d).norm == 1 {
            narrow / 2
        } else {
            narrow
        }
    }
}

pub fn fundamental_unit(d: Discriminant) -> Result<QuadUnit> {
    if !d.is_real() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a real quadratic discriminant",
            d.value()
        )));
    }
    Ok(unit::fundamental_unit_exact(d.value()))
}

/// The split prime `N` viewed in `K`: `N_1` is the prime on which
/// `sqrt D = r` with `r` the smaller square root, `N_2` its conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPrime {
    pub n: u64,
    pub r: u64,
}

impl SplitPrime {
    pub fn new(d: Discriminant, n: u64) -> Result<Self> {
        if kronecker(d.value(), n) != 1 {
            return Err(Error::InvalidArgument(format!(
                "{n} does not split in Q(sqrt {})",
                d.value()
            )));
        }
        Ok(Self {
            n,
            r: sqrt_mod(d.value(), n)?,
        })
    }

    /// Root of `D` attached to `N_i` for `i` in `{1, 2}`.
    pub fn root(&self, i: u8) -> u64 {
        match i {
            1 => self.r,
            _ => self.n - self.r,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitResidues {
    pub r: u64,
    pub u_mod_n1: u64,
    pub u_mod_n2: u64,
    pub norm: i8,
}

/// Residues of the fundamental unit modulo `N_1` and `N_2`, from the
/// convergent recurrence run modulo `N`.
pub fn unit_residues(d: Discriminant, n: u64) -> Result<UnitResidues> {
    let sp = SplitPrime::new(d, n)?;
    let (u1, period) = unit::unit_residue_tracked(d.value(), sp.root(1), n);
    let (u2, _) = unit::unit_residue_tracked(d.value(), sp.root(2), n);
    Ok(UnitResidues {
        r: sp.r,
        u_mod_n1: u1,
        u_mod_n2: u2,
        norm: if period % 2 == 0 { 1 } else { -1 },
    })
}

/// Whether `(u mod N_i)^h` is a `p`-th power in `F_N^x`.
pub fn unit_criterion_at(d: i64, n: u64, p: u64, i: u8) -> Result<bool> {
    let disc = admissibility(d, n, p, true)?;
    let h = class_number(disc);
    let res = unit_residues(disc, n)?;
    let u = if i == 1 { res.u_mod_n1 } else { res.u_mod_n2 };
    let e = (h % (n - 1)) * ((n - 1) / p) % (n - 1);
    Ok(pow_mod(u, e, n) == 1)
}

pub fn unit_criterion(d: i64, n: u64, p: u64) -> Result<bool> {
    let one = unit_criterion_at(d, n, p, 1)?;
    let two = unit_criterion_at(d, n, p, 2)?;
    assert_eq!(one, two, "unit criterion depends on the prime above N");
    Ok(one)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPrimeData {
    /// Order of `[N_1]` in the class group.
    pub s: u64,
    /// Generator `pi_1 = (x + y sqrt D)/2` of `N_1^s`, when computed.
    pub pi1: Option<(String, String)>,
    pub pi2_mod_n1: Option<u64>,
    pub log1_pi2: Option<u64>,
}

/// Least `s` with `N_1^s` principal together with a generator.
fn principal_power(d: Discriminant, sp: SplitPrime, h: u64) -> Result<(u64, QuadElement)> {
    for k in 1..=h {
        if !h.is_multiple_of(k) {
            continue;
        }
        let ideal = ideal::split_prime_power(d.value(), sp.n, sp.root(1), k as u32)?;
        if let Some(g) = ideal::reduce_and_test(&ideal, d.value()).generator {
            return Ok((k, g));
        }
    }
    unreachable!("N_1^h is principal")
}

/// Order of `[N_1]` only.
pub fn split_prime_order(d: Discriminant, n: u64) -> Result<u64> {
    let sp = SplitPrime::new(d, n)?;
    Ok(principal_power(d, sp, class_number(d))?.0)
}

pub fn split_prime_data(d: i64, n: u64, p: u64, log: &LogMap) -> Result<SplitPrimeData> {
    let disc = admissibility(d, n, p, true)?;
    let sp = SplitPrime::new(disc, n)?;
    let h = class_number(disc);
    let (s, pi1) = principal_power(disc, sp, h)?;
    let (x, y) = pi1
        .half_integral()
        .expect("generator of an integral ideal is integral");
    debug_assert_eq!(reduce_half_integral(&x, &y, sp.root(1), n), 0);
    let pi2 = reduce_half_integral(&x, &y, sp.root(2), n);
    Ok(SplitPrimeData {
        s,
        pi1: Some((x.to_string(), y.to_string())),
        pi2_mod_n1: Some(pi2),
        log1_pi2: Some(log.log(pi2 as i64)?),
    })
}

/// Whether the `p`-part of `Pic(O_K[1/N]) = Cl(K) / <[N_1]>` vanishes.
pub fn pic_zn_trivial(d: i64, n: u64, p: u64) -> Result<bool> {
    let disc = admissibility(d, n, p, true)?;
    let h = class_number(disc);
    if !h.is_multiple_of(p) {
        return Ok(true);
    }
    let s = split_prime_order(disc, n)?;
    Ok(valuation(s, p) == valuation(h, p))
}

/// Everything the even-twist check needs to know about `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadFieldProfile {
    pub d: i64,
    pub h: u64,
    pub h_mod_p: u64,
    pub r: u64,
    pub unit_norm: i8,
    pub u_mod_n1: u64,
    pub u_mod_n2: u64,
    pub s: u64,
    pub log1_u: u64,
    pub log2_u: u64,
    pub log1_pi2: Option<u64>,
    pub pic_zn_trivial: bool,
    pub criterion: bool,
}

impl QuadFieldProfile {
    pub fn p_divides_h(&self) -> bool {
        self.h_mod_p == 0
    }
}

/// Computes the profile of a real quadratic field in which `N` splits. The
/// generator data `log1_pi2` is only produced when `p` does not divide `h`.
pub fn profile(d: i64, n: u64, p: u64, log: &LogMap) -> Result<QuadFieldProfile> {
    let disc = admissibility(d, n, p, true)?;
    let h = class_number(disc);
    let res = unit_residues(disc, n)?;
    let log1_u = log.log(res.u_mod_n1 as i64)?;
    let log2_u = log.log(res.u_mod_n2 as i64)?;
    let h_mod_p = h % p;
    let (s, log1_pi2) = if h_mod_p == 0 {
        (split_prime_order(disc, n)?, None)
    } else {
        let data = split_prime_data(d, n, p, log)?;
        (data.s, data.log1_pi2)
    };
    let pic_zn_trivial = h_mod_p != 0 || valuation(s, p) == valuation(h, p);
    let criterion = (h_mod_p * log1_u).is_multiple_of(p);
    Ok(QuadFieldProfile {
        d,
        h,
        h_mod_p,
        r: res.r,
        unit_norm: res.norm,
        u_mod_n1: res.u_mod_n1,
        u_mod_n2: res.u_mod_n2,
        s,
        log1_u,
        log2_u,
        log1_pi2,
        pic_zn_trivial,
        criterion,
    })
}

/// `(x + y sqrt D)/2` reduced at the prime where `sqrt D = root`.
pub fn reduce_half_integral(x: &BigInt, y: &BigInt, root: u64, n: u64) -> u64 {
    let half = crate::arith::inv_mod(2, n).expect("odd modulus");
    let xr = reduce_big(x, n);
    let yr = reduce_big(y, n);
    mul_mod((xr + mul_mod(yr, root, n)) % n, half, n)
}
