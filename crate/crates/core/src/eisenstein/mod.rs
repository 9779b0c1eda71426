//! The Eisenstein ideal acting on signed cuspidal homology: the filtration
//! `W_n = I^n M`, local valuations, `g_p` and the alpha map.

mod fast;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{check_level_pair, gcd, inv_mod, is_prime, next_prime, LogMap};
use crate::error::{Error, Result};
use crate::linalg::modp::{generalized_kernel, reduce_big, FpMatrix, Subspace};
use crate::linalg::{snf, IntMatrix, RowLattice, SmithData};
use crate::modsym::{HeckeIndex, ModularSymbolSpace, Sign};

pub use fast::g_p_modp;

pub const DEFAULT_N_MAX: usize = 3;

/// `ceil((N + 1) / 6)`.
pub fn sturm_bound(n: u64) -> u64 {
    (n + 1).div_ceil(6)
}

/// Indices of the Eisenstein generators: `T_l - l - 1` for primes `l <= bound`
/// with `l != N`, then `U_N - 1`.
pub fn generator_indices(n: u64, bound: u64) -> Vec<HeckeIndex> {
    let mut out: Vec<HeckeIndex> = (2..=bound)
        .filter(|&l| is_prime(l) && l != n)
        .map(HeckeIndex::T)
        .collect();
    out.push(HeckeIndex::U);
    out
}

fn eisenstein_shift(index: HeckeIndex) -> i64 {
    match index {
        HeckeIndex::T(l) => l as i64 + 1,
        HeckeIndex::U => 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Valuation {
    Exact(u32),
    AtLeast(u32),
}

impl Valuation {
    /// Whether the valuation is at least `k`.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v >= k,
        }
    }

    pub fn value(self) -> u32 {
        match self {
            Valuation::Exact(v) | Valuation::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Exact(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinContext {
    pub n: u64,
    pub p: u64,
    pub sign: Sign,
    pub n_max: usize,
    pub sturm_bound: u64,
    pub generator_indices: Vec<HeckeIndex>,
    /// `T - shift` restricted to `M^sign`, in its Hermite basis.
    pub generators: Vec<IntMatrix>,
    /// `W_0, ..., W_{n_max + 1}`.
    pub w: Vec<RowLattice>,
    pub smith: Vec<SmithData>,
}

/// The exponent `k` of `p^k` exactly dividing `x` (for `x != 0`).
fn vp(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

fn next_lattice(w: &RowLattice, gens: &[IntMatrix]) -> RowLattice {
    let k = w.ambient_dim();
    let mut rows = Vec::new();
    for g in gens {
        for b in w.basis().row_vecs() {
            rows.push(g.apply(b));
        }
    }
    RowLattice::from_generators(&IntMatrix::from_row_vecs(k, rows))
}

fn restricted_generator(
    space: &ModularSymbolSpace,
    sign: Sign,
    index: HeckeIndex,
) -> Result<IntMatrix> {
    let l = match index {
        HeckeIndex::T(l) => l,
        HeckeIndex::U => space.level(),
    };
    let op = space.hecke(l)?;
    Ok(space
        .restrict(&op.matrix, sign)?
        .sub_scalar(eisenstein_shift(index)))
}

pub fn build_context(
    space: &ModularSymbolSpace,
    p: u64,
    sign: Sign,
    n_max: usize,
) -> Result<EisensteinContext> {
    let n = space.level();
    check_level_pair(n, p)?;
    let bound = sturm_bound(n);
    let generator_indices = generator_indices(n, bound);
    let generators = generator_indices
        .iter()
        .map(|&i| restricted_generator(space, sign, i))
        .collect::<Result<Vec<_>>>()?;
    let k = space.signed(sign).rank();
    let mut w = vec![RowLattice::from_hnf(IntMatrix::identity(k))];
    for level in 1..=n_max + 1 {
        let next = next_lattice(&w[level - 1], &generators);
        if next.rank() != k {
            return Err(Error::DegenerateFiltration(level));
        }
        w.push(next);
    }
    // adjoining further T_l must not enlarge W_1
    let mut l = bound;
    for _ in 0..3 {
        l = next_prime(l);
        if l == n {
            l = next_prime(l);
        }
        let extra = restricted_generator(space, sign, HeckeIndex::T(l))?;
        let mut gens = generators.clone();
        gens.push(extra);
        if next_lattice(&w[0], &gens) != w[1] {
            return Err(Error::GeneratorSaturation(l));
        }
    }
    let smith = w.iter().map(|l| snf(l.basis())).collect();
    Ok(EisensteinContext {
        n,
        p,
        sign,
        n_max,
        sturm_bound: bound,
        generator_indices,
        generators,
        w,
        smith,
    })
}

impl EisensteinContext {
    pub fn rank(&self) -> usize {
        self.w[0].rank()
    }

    /// `v_p` of the invariants of `M / W_n`.
    pub fn p_part_invariants(&self, level: usize) -> Vec<u32> {
        self.smith[level]
            .diag
            .iter()
            .map(|d| vp(d, self.p))
            .filter(|&v| v > 0)
            .collect()
    }

    /// Exponent `e_n` of the `p`-part of `M / W_n`.
    pub fn p_exponent(&self, level: usize) -> u32 {
        self.p_part_invariants(level).into_iter().max().unwrap_or(0)
    }

    /// Whether `x` (coordinates in `M^sign`) lies in `W_n + p^{e_n} M`.
    pub fn in_local_lattice(&self, x: &[BigInt], level: usize) -> bool {
        let sd = &self.smith[level];
        let y = sd.right.apply(x);
        let pb = BigInt::from(self.p);
        sd.diag.iter().zip(&y).all(|(d, yi)| {
            let v = vp(d, self.p);
            v == 0 || yi.is_multiple_of(&pb.pow(v))
        })
    }

    /// Largest `n <= n_max` with `x in W_n + p^{e_n} M`, or a lower bound
    /// `n_max + 1`.
    pub fn p_local_valuation(&self, x: &[BigInt]) -> Result<Valuation> {
        if x.len() != self.rank() {
            return Err(Error::NotInLattice);
        }
        for level in 1..=self.n_max + 1 {
            if !self.in_local_lattice(x, level) {
                return Ok(Valuation::Exact(level as u32 - 1));
            }
        }
        Ok(Valuation::AtLeast(self.n_max as u32 + 1))
    }

    /// Index of the unique `p`-primary invariant of `M / W_1`, which must be
    /// exactly `p`.
    fn alpha_slot(&self) -> Result<usize> {
        let sd = &self.smith[1];
        let slots: Vec<(usize, u32)> = sd
            .diag
            .iter()
            .enumerate()
            .map(|(i, d)| (i, vp(d, self.p)))
            .filter(|&(_, v)| v > 0)
            .collect();
        match slots.as_slice() {
            [(i, 1)] => Ok(*i),
            _ => Err(Error::UnexpectedQuotient(format!(
                "{:?}",
                sd.nontrivial()
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
            ))),
        }
    }

    /// Image of `x` (coordinates in `M^sign`) in the `p`-part of `M / W_1`,
    /// identified with `Z/p`.
    pub fn alpha_image(&self, x: &[BigInt]) -> Result<u64> {
        let i = self.alpha_slot()?;
        let y = self.smith[1].right.apply(x);
        Ok(reduce_big(&y[i], self.p))
    }

    pub fn g_p_dimension(&self) -> Result<u64> {
        if self.sign != Sign::Plus {
            return Err(Error::WrongSign("g_p_dimension"));
        }
        let k = self.rank();
        let mut v = Subspace::whole(k, self.p);
        for g in &self.generators {
            v = shrink(&v, &FpMatrix::from_int(g, self.p));
            if v.dim() == 0 {
                break;
            }
        }
        Ok(v.dim() as u64)
    }
}

/// Generalized kernel of `op` restricted to the invariant subspace `v`.
fn shrink(v: &Subspace, op: &FpMatrix) -> Subspace {
    let images = v.basis().mul(op);
    let s = v.restrict_images(&images);
    v.sub_from_coords(&generalized_kernel(&s))
}

pub(crate) fn shrink_with_images(v: &Subspace, images: &FpMatrix, shift: u64) -> Subspace {
    let s = v.restrict_images(images).sub_scalar(shift);
    v.sub_from_coords(&generalized_kernel(&s))
}

/// Checks that `{0, b/d}` maps to `lambda * log(d)` in the `p`-part of
/// `M^+ / W_1` for a single nonzero `lambda`.
pub fn alpha_check(
    space: &ModularSymbolSpace,
    ctx: &EisensteinContext,
    log: &LogMap,
    samples: &[(i64, i64)],
) -> Result<bool> {
    if ctx.sign != Sign::Plus {
        return Err(Error::WrongSign("alpha_check"));
    }
    let p = ctx.p;
    let half = inv_mod(2, p)?;
    let mut pairs = Vec::with_capacity(samples.len());
    for &(b, d) in samples {
        if gcd(b, d) != 1 || gcd(d, space.level() as i64) != 1 {
            return Err(Error::NotCoprime { a: b, m: d });
        }
        let img = alpha_image_of_path(space, ctx, b, d)?;
        let img = img * half % p;
        pairs.push((img, log.log(d)?));
    }
    let Some(&(img0, log0)) = pairs.iter().find(|(_, l)| *l != 0) else {
        return Err(Error::UninformativeSamples);
    };
    let lambda = img0 * inv_mod(log0 as i64, p)? % p;
    if lambda == 0 {
        return Ok(false);
    }
    Ok(pairs.iter().all(|&(img, l)| img == lambda * l % p))
}

/// Image of `{0, b/d} + star {0, b/d}` in `Z/p`.
pub fn alpha_image_of_path(
    space: &ModularSymbolSpace,
    ctx: &EisensteinContext,
    b: i64,
    d: i64,
) -> Result<u64> {
    let (b, d) = if d < 0 { (-b, -d) } else { (b, d) };
    let x = space.path_to_chain(b, d)?;
    let sx = space.star().apply(&x);
    let plus: Vec<BigInt> = x.iter().zip(&sx).map(|(a, c)| a + c).collect();
    let coords = space.signed(Sign::Plus).coords(&plus)?;
    ctx.alpha_image(&coords)
}
