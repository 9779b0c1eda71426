//! Modular symbols with coefficients in `F_p`, for levels where exact
//! integral lattices are too large to be practical.

use super::heilbronn;
use super::p1::P1;
use super::presentation::{present, PrimeField, Sparse};
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::modp::{FpMatrix, Subspace};

/// `H_1(X_0(N), cusps; F_p)` for an odd prime `p >= 5`, with the cuspidal
/// plus part.
#[derive(Clone, Debug)]
pub struct ModpSpace {
    n: u64,
    p: u64,
    p1: P1,
    symbol_coords: Vec<Sparse<u64>>,
    free_symbols: Vec<usize>,
    plus: Subspace,
}

impl ModpSpace {
    pub fn build(n: u64, p: u64) -> Result<Self> {
        if !is_prime(n) {
            return Err(Error::NotPrime(n as i64));
        }
        if n < 5 {
            return Err(Error::LevelTooSmall(n));
        }
        if !is_prime(p) || p < 5 {
            return Err(Error::InvalidArgument(format!(
                "coefficient field needs a prime p >= 5, got {p}"
            )));
        }
        let p1 = P1::new(n);
        // over F_p with p >= 5 the 2- and 3-torsion of the relations vanish,
        // so the presentation is exact
        let pres = present(&p1, &PrimeField(p))?;
        let dim = pres.dim();
        let mut space = Self {
            n,
            p,
            p1,
            symbol_coords: pres.symbol_coords,
            free_symbols: pres.free_symbols,
            plus: Subspace::whole(0, p),
        };
        // M^+ = ker(boundary) & ker(star - 1)
        let mut boundary = FpMatrix::zeros(dim, 2, p);
        for (j, &s) in space.free_symbols.iter().enumerate() {
            let (c, d) = space.p1.point(s);
            let inf = u64::from(c == 0) + (p - u64::from(d == 0));
            let zero = u64::from(c != 0) + (p - u64::from(d != 0));
            boundary.set(j, 0, inf);
            boundary.set(j, 1, zero);
        }
        let star_images = space.images_of_basis(|p1, s, out| out.push(p1.star(s)));
        let star_minus_one = star_images.sub_scalar(1);
        let m = boundary.hstack(&star_minus_one);
        space.plus = Subspace::span(&m.left_kernel());
        Ok(space)
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn dim_rel(&self) -> usize {
        self.free_symbols.len()
    }

    pub fn plus(&self) -> &Subspace {
        &self.plus
    }

    fn add_symbol(&self, acc: &mut [u64], s: usize, w: u64) {
        for &(v, x) in &self.symbol_coords[s] {
            acc[v as usize] += w * x;
        }
    }

    /// Dense matrix whose `j`-th row is the image of the `j`-th basis vector
    /// under a map given on Manin symbols.
    fn images_of_basis(&self, f: impl Fn(&P1, usize, &mut Vec<usize>)) -> FpMatrix {
        let dim = self.dim_rel();
        let p = self.p;
        let mut rows = Vec::with_capacity(dim);
        let mut buf = Vec::new();
        for &s in &self.free_symbols {
            buf.clear();
            f(&self.p1, s, &mut buf);
            let mut acc = vec![0u64; dim];
            for (k, &t) in buf.iter().enumerate() {
                self.add_symbol(&mut acc, t, 1);
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            acc.iter_mut().for_each(|x| *x %= p);
            rows.push(acc);
        }
        FpMatrix::from_rows(dim, p, rows)
    }

    fn heilbronn_for(&self, l: u64) -> Vec<[i64; 4]> {
        if l == self.n {
            heilbronn::merel(l as i64)
        } else {
            heilbronn::cremona(l as i64)
        }
    }

    /// Full matrix of `T_l` (or `U_N`) on the relative homology.
    pub fn hecke_dense(&self, l: u64) -> FpMatrix {
        let mats = self.heilbronn_for(l);
        self.images_of_basis(|p1, s, out| out.extend(mats.iter().filter_map(|m| p1.act(s, m))))
    }

    /// Images of the given vectors of the relative homology under `T_l`,
    /// sharing the Heilbronn expansion between all vectors.
    pub fn hecke_apply(&self, l: u64, vectors: &FpMatrix) -> FpMatrix {
        let mats = self.heilbronn_for(l);
        let n = self.n;
        let p = self.p;
        let k = vectors.rows();
        let nsym = self.p1.len();
        let reduced: Vec<[u64; 4]> = mats
            .iter()
            .map(|m| {
                let r = |x: i64| x.rem_euclid(n as i64) as u64;
                [r(m[0]), r(m[1]), r(m[2]), r(m[3])]
            })
            .collect();
        let mut counts = vec![vec![0u64; nsym]; k];
        for (j, &s) in self.free_symbols.iter().enumerate() {
            let weights: Vec<u64> = (0..k).map(|i| vectors.get(i, j)).collect();
            if weights.iter().all(|&w| w == 0) {
                continue;
            }
            let (u, v) = self.p1.point(s);
            for m in &reduced {
                let c = (u * m[0] + v * m[2]) % n;
                let d = (u * m[1] + v * m[3]) % n;
                if let Some(t) = self.p1.index_reduced(c, d) {
                    for (cnt, &w) in counts.iter_mut().zip(&weights) {
                        cnt[t] += w;
                    }
                }
            }
            if j % 4096 == 4095 {
                counts.iter_mut().flatten().for_each(|x| *x %= p);
            }
        }
        let dim = self.dim_rel();
        let rows = counts
            .into_iter()
            .map(|cnt| {
                let mut acc = vec![0u64; dim];
                for (t, c) in cnt.into_iter().enumerate() {
                    let c = c % p;
                    if c != 0 {
                        for &(v, x) in &self.symbol_coords[t] {
                            acc[v as usize] = (acc[v as usize] + c * x) % p;
                        }
                    }
                }
                acc
            })
            .collect();
        FpMatrix::from_rows(dim, p, rows)
    }
}
