use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::heilbronn;
use super::p1::P1;
use super::presentation::{present, Integers};
use crate::arith::{gcd, is_prime, kronecker};
use crate::error::{Error, Result};
use crate::linalg::{hnf_with_transform, kernel, snf, IntMatrix, RowLattice};
use crate::quadfield::Discriminant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i8(s: i8) -> Self {
        if s > 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `genus(X_0(N))` for a prime `N`.
pub fn genus(n: u64) -> u64 {
    let nu2 = 1 + kronecker(-4, n) as i64;
    let nu3 = 1 + kronecker(-3, n) as i64;
    // 12 g = 12 + (N + 1) - 3 nu2 - 4 nu3 - 12
    let twelve_g = (n as i64 + 1) - 3 * nu2 - 4 * nu3;
    (twelve_g / 12) as u64
}

/// The relative homology `H_1(X_0(N), cusps; Z)` as a quotient of the free
/// module on Manin symbols, with its cuspidal and signed sublattices.
#[derive(Clone, Debug)]
pub struct ModularSymbolSpace {
    n: u64,
    p1: P1,
    dim_rel: usize,
    symbol_coords: Vec<Vec<(u32, i64)>>,
    lifts: Vec<Vec<(usize, i64)>>,
    boundary: IntMatrix,
    cuspidal: RowLattice,
    star: IntMatrix,
    plus: RowLattice,
    minus: RowLattice,
}

fn symbol_boundary(p1: &P1, i: usize) -> [i64; 2] {
    // (c:d) is g{0, oo} = {b/d, a/c}; coordinates are (coef of oo, coef of 0)
    let (c, d) = p1.point(i);
    let mut v = [0i64; 2];
    v[if c == 0 { 0 } else { 1 }] += 1;
    v[if d == 0 { 0 } else { 1 }] -= 1;
    v
}

pub fn build_space(n: u64) -> Result<ModularSymbolSpace> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n as i64));
    }
    if n < 5 {
        return Err(Error::LevelTooSmall(n));
    }
    let p1 = P1::new(n);
    let pres = present(&p1, &Integers)?;
    let (dim_rel, symbol_coords, lifts) = if pres.leftover.is_empty() {
        let lifts = pres.free_symbols.iter().map(|&s| vec![(s, 1)]).collect();
        (pres.dim(), pres.symbol_coords, lifts)
    } else {
        saturate(&pres.symbol_coords, &pres.free_symbols, &pres.leftover)?
    };

    let mut boundary = IntMatrix::zeros(dim_rel, 2);
    for (j, lift) in lifts.iter().enumerate() {
        for &(s, c) in lift {
            let b = symbol_boundary(&p1, s);
            boundary[(j, 0)] += b[0] * c;
            boundary[(j, 1)] += b[1] * c;
        }
    }
    let mut space = ModularSymbolSpace {
        n,
        p1,
        dim_rel,
        symbol_coords,
        lifts,
        boundary,
        cuspidal: RowLattice::from_hnf(IntMatrix::zeros(0, dim_rel)),
        star: IntMatrix::zeros(0, 0),
        plus: RowLattice::from_hnf(IntMatrix::zeros(0, dim_rel)),
        minus: RowLattice::from_hnf(IntMatrix::zeros(0, dim_rel)),
    };
    space.cuspidal = RowLattice::from_hnf(kernel(&space.boundary));
    space.star = space.symbol_map(|p1, s| vec![p1.star(s)]);
    let (plus, minus) = space.star_decompose();
    space.plus = plus;
    space.minus = minus;
    Ok(space)
}

/// Passes to the torsion-free quotient when some relations could not be
/// eliminated with unit pivots.
#[allow(clippy::type_complexity)]
fn saturate(
    coords: &[Vec<(u32, i64)>],
    free: &[usize],
    leftover: &[Vec<(u32, i64)>],
) -> Result<(usize, Vec<Vec<(u32, i64)>>, Vec<Vec<(usize, i64)>>)> {
    let f = free.len();
    let mut h = IntMatrix::zeros(leftover.len(), f);
    for (i, rel) in leftover.iter().enumerate() {
        for &(v, c) in rel {
            h[(i, v as usize)] = BigInt::from(c);
        }
    }
    let sd = snf(&h);
    let r = sd.rank();
    let right = sd.right;
    let (_, right_inv) = hnf_with_transform(&right);
    let q = right.select_cols(r..f);
    let to_i64 = |x: &BigInt| x.to_i64().ok_or(Error::Overflow("saturated presentation"));
    let mut new_coords = Vec::with_capacity(coords.len());
    for c in coords {
        let mut dense = vec![BigInt::zero(); f];
        for &(v, x) in c {
            dense[v as usize] = BigInt::from(x);
        }
        let y = q.apply(&dense);
        let mut sparse = Vec::new();
        for (k, x) in y.iter().enumerate() {
            if !x.is_zero() {
                sparse.push((k as u32, to_i64(x)?));
            }
        }
        new_coords.push(sparse);
    }
    let mut lifts = Vec::new();
    for k in r..f {
        let mut l = Vec::new();
        for (v, x) in right_inv.row(k).iter().enumerate() {
            if !x.is_zero() {
                l.push((free[v], to_i64(x)?));
            }
        }
        lifts.push(l);
    }
    Ok((f - r, new_coords, lifts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeckeIndex {
    T(u64),
    U,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeOp {
    pub index: HeckeIndex,
    /// Action on the relative homology (row vectors).
    pub matrix: IntMatrix,
}

/// The theta element attached to a discriminant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaElement {
    pub d: Discriminant,
    /// Coordinates in the relative homology.
    pub rel_coords: Vec<BigInt>,
    /// Coordinates in the basis of the signed cuspidal lattice.
    pub coords: Vec<BigInt>,
    pub sign: Sign,
}

/// Manin symbols `(c, d)` (unreduced) whose sum is the path `{0, a/m}`.
pub fn continued_fraction_symbols(a: i64, m: i64) -> Result<Vec<(i64, i64)>> {
    if m <= 0 || gcd(a, m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    if a == 0 {
        return Ok(Vec::new());
    }
    // convergents p_k / q_k, k = -2, -1, 0, ...
    let (mut num, mut den) = (a, m);
    let (mut p_prev, mut p) = (0i64, 1i64);
    let (mut q_prev, mut q) = (1i64, 0i64);
    let mut out = vec![(0i64, 1i64)]; // k = -1
    let mut k = 0i64;
    let mut first_p = None;
    while den != 0 {
        let (ak, r) = num.div_mod_floor(&den);
        num = den;
        den = r;
        let pn = ak * p + p_prev;
        let qn = ak * q + q_prev;
        p_prev = p;
        p = pn;
        q_prev = q;
        q = qn;
        if first_p.is_none() {
            first_p = Some(pn);
        }
        let sign = if (k - 1).rem_euclid(2) == 0 { 1 } else { -1 };
        out.push((sign * q, q_prev));
        k += 1;
    }
    debug_assert_eq!((p, q), (a, m));
    if first_p == Some(0) {
        out.drain(0..2);
    }
    Ok(out)
}

impl ModularSymbolSpace {
    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn p1(&self) -> &P1 {
        &self.p1
    }

    pub fn num_generators(&self) -> usize {
        self.p1.len()
    }

    pub fn dim_rel(&self) -> usize {
        self.dim_rel
    }

    pub fn genus(&self) -> usize {
        self.cuspidal.rank() / 2
    }

    pub fn boundary(&self) -> &IntMatrix {
        &self.boundary
    }

    pub fn cuspidal(&self) -> &RowLattice {
        &self.cuspidal
    }

    pub fn star(&self) -> &IntMatrix {
        &self.star
    }

    pub fn signed(&self, sign: Sign) -> &RowLattice {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn lifts(&self) -> &[Vec<(usize, i64)>] {
        &self.lifts
    }

    /// Coordinates of the Manin symbol with the given index.
    pub fn symbol_coords(&self, s: usize) -> &[(u32, i64)] {
        &self.symbol_coords[s]
    }

    /// `M^+` and `M^-` as kernels of `boundary` and `star -+ 1`.
    pub fn star_decompose(&self) -> (RowLattice, RowLattice) {
        let sub = |sign: i64| {
            let m = self.boundary.hstack(&self.star.sub_scalar(sign));
            RowLattice::from_hnf(kernel(&m))
        };
        (sub(1), sub(-1))
    }

    /// Coordinates of a formal sum of Manin symbols given by index.
    pub fn coords_of_counts(&self, counts: &[i64]) -> Vec<BigInt> {
        let mut acc = vec![0i128; self.dim_rel];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(v, x) in &self.symbol_coords[s] {
                acc[v as usize] += c as i128 * x as i128;
            }
        }
        acc.into_iter().map(BigInt::from).collect()
    }

    /// Matrix on the relative homology of the map sending each Manin symbol
    /// to the sum of the listed symbols.
    fn symbol_map(&self, images: impl Fn(&P1, usize) -> Vec<usize>) -> IntMatrix {
        let mut rows = Vec::with_capacity(self.dim_rel);
        let mut counts = vec![0i64; self.p1.len()];
        for lift in &self.lifts {
            counts.iter_mut().for_each(|c| *c = 0);
            for &(s, c) in lift {
                for t in images(&self.p1, s) {
                    counts[t] += c;
                }
            }
            rows.push(self.coords_of_counts(&counts));
        }
        IntMatrix::from_row_vecs(self.dim_rel, rows)
    }

    fn heilbronn_matrix(&self, mats: &[[i64; 4]]) -> IntMatrix {
        self.symbol_map(|p1, s| mats.iter().filter_map(|m| p1.act(s, m)).collect())
    }

    /// `T_l` for a prime `l != N`, or `U_N` for `l = N`.
    pub fn hecke(&self, l: u64) -> Result<HeckeOp> {
        if !is_prime(l) {
            return Err(Error::NotPrime(l as i64));
        }
        if l == self.n {
            return Ok(HeckeOp {
                index: HeckeIndex::U,
                matrix: self.heilbronn_matrix(&heilbronn::merel(l as i64)),
            });
        }
        Ok(HeckeOp {
            index: HeckeIndex::T(l),
            matrix: self.heilbronn_matrix(&heilbronn::cremona(l as i64)),
        })
    }

    /// Counts of Manin symbols in the expansion of `{0, a/m}`.
    pub fn path_counts(&self, a: i64, m: i64, weight: i64, counts: &mut [i64]) -> Result<()> {
        for (c, d) in continued_fraction_symbols(a, m)? {
            let s = self.p1.index(c, d).expect("unimodular bottom row");
            counts[s] += weight;
        }
        Ok(())
    }

    /// `{0, a/m}` in relative homology coordinates.
    pub fn path_to_chain(&self, a: i64, m: i64) -> Result<Vec<BigInt>> {
        let mut counts = vec![0i64; self.p1.len()];
        self.path_counts(a, m, 1, &mut counts)?;
        Ok(self.coords_of_counts(&counts))
    }

    /// `{alpha, beta}` for rationals given as `(num, den)`; `den = 0` is the
    /// cusp at infinity.
    pub fn path_between(&self, alpha: (i64, i64), beta: (i64, i64)) -> Result<Vec<BigInt>> {
        let point = |(x, y): (i64, i64)| -> Result<Vec<BigInt>> {
            if y == 0 {
                // {0, oo} is the symbol (0:1)
                let mut counts = vec![0i64; self.p1.len()];
                counts[self.p1.len() - 1] = 1;
                return Ok(self.coords_of_counts(&counts));
            }
            let (x, y) = if y < 0 { (-x, -y) } else { (x, y) };
            let g = gcd(x, y);
            self.path_to_chain(x / g, y / g)
        };
        let a = point(alpha)?;
        let b = point(beta)?;
        Ok(b.into_iter().zip(a).map(|(x, y)| x - y).collect())
    }

    /// `sum_{a mod m, (a, m) = 1} chi(a) {0, a/m}`.
    pub fn twisted_sum(&self, m: u64, chi: impl Fn(u64) -> i64) -> Result<Vec<BigInt>> {
        let mut counts = vec![0i64; self.p1.len()];
        for a in 1..m {
            if gcd(a as i64, m as i64) != 1 {
                continue;
            }
            let w = chi(a);
            if w != 0 {
                self.path_counts(a as i64, m as i64, w, &mut counts)?;
            }
        }
        Ok(self.coords_of_counts(&counts))
    }

    pub fn theta_element(&self, d: Discriminant) -> Result<ThetaElement> {
        let dv = d.value();
        if gcd(dv, self.n as i64) != 1 || dv.unsigned_abs() <= 1 {
            return Err(Error::InvalidArgument(format!(
                "theta element needs gcd(D, N) = 1, got D = {dv}"
            )));
        }
        let m = dv.unsigned_abs();
        let rel_coords = self.twisted_sum(m, |a| d.chi(a) as i64)?;
        let sign = Sign::from_i8(d.sign());
        let coords = self.signed(sign).coords(&rel_coords)?;
        Ok(ThetaElement {
            d,
            rel_coords,
            coords,
            sign,
        })
    }

    /// Restriction of an operator on relative homology to `M^sign`.
    pub fn restrict(&self, op: &IntMatrix, sign: Sign) -> Result<IntMatrix> {
        self.signed(sign).restrict(op)
    }
}
