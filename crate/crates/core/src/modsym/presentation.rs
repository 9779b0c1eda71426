//! Quotient of the free module on Manin symbols by the 2-term and 3-term
//! relations, by sparse elimination with unit pivots.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::p1::P1;
use crate::error::{Error, Result};

/// Coefficient arithmetic for the elimination.
pub trait Coeffs {
    type E: Copy + PartialEq + std::fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn embed(&self, x: i64) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Result<Self::E>;
    fn mul(&self, a: Self::E, b: Self::E) -> Result<Self::E>;
    fn neg(&self, a: Self::E) -> Self::E;
    /// Inverse of `a` when it is a unit.
    fn unit_inverse(&self, a: Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: Self::E) -> bool {
        a == self.zero()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Integers;

impl Coeffs for Integers {
    type E = i64;
    fn zero(&self) -> i64 {
        0
    }
    fn embed(&self, x: i64) -> i64 {
        x
    }
    fn add(&self, a: i64, b: i64) -> Result<i64> {
        a.checked_add(b)
            .ok_or(Error::Overflow("Manin relation elimination"))
    }
    fn mul(&self, a: i64, b: i64) -> Result<i64> {
        a.checked_mul(b)
            .ok_or(Error::Overflow("Manin relation elimination"))
    }
    fn neg(&self, a: i64) -> i64 {
        -a
    }
    fn unit_inverse(&self, a: i64) -> Option<i64> {
        (a == 1 || a == -1).then_some(a)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PrimeField(pub u64);

impl Coeffs for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn embed(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
    fn add(&self, a: u64, b: u64) -> Result<u64> {
        Ok((a + b) % self.0)
    }
    fn mul(&self, a: u64, b: u64) -> Result<u64> {
        Ok(a * b % self.0)
    }
    fn neg(&self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn unit_inverse(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| crate::arith::inv_mod(a as i64, self.0).expect("prime field"))
    }
}

pub type Sparse<E> = Vec<(u32, E)>;

/// Result of the elimination. Coordinates are with respect to the free
/// variables, each of which is (the class of) a Manin symbol.
#[derive(Clone, Debug)]
pub struct Presentation<E> {
    /// Coordinates of every Manin symbol.
    pub symbol_coords: Vec<Sparse<E>>,
    /// The Manin symbol behind each free variable.
    pub free_symbols: Vec<usize>,
    /// Relations among the free variables that have no unit coefficient.
    pub leftover: Vec<Sparse<E>>,
}

impl<E: Copy> Presentation<E> {
    pub fn dim(&self) -> usize {
        self.free_symbols.len()
    }
}

struct Dense<'a, R: Coeffs> {
    ring: &'a R,
    vals: Vec<R::E>,
    touched: Vec<u32>,
    mark: Vec<bool>,
}

impl<'a, R: Coeffs> Dense<'a, R> {
    fn new(ring: &'a R, n: usize) -> Self {
        Self {
            ring,
            vals: vec![ring.zero(); n],
            touched: Vec::new(),
            mark: vec![false; n],
        }
    }

    fn add(&mut self, v: u32, c: R::E) -> Result<()> {
        let i = v as usize;
        self.vals[i] = self.ring.add(self.vals[i], c)?;
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(v);
        }
        Ok(())
    }

    fn take(&mut self, v: u32) -> R::E {
        std::mem::replace(&mut self.vals[v as usize], self.ring.zero())
    }

    fn drain(&mut self) -> Sparse<R::E> {
        let mut out = Vec::new();
        self.touched.sort_unstable();
        for &v in &self.touched {
            let i = v as usize;
            self.mark[i] = false;
            let x = std::mem::replace(&mut self.vals[i], self.ring.zero());
            if !self.ring.is_zero(x) {
                out.push((v, x));
            }
        }
        self.touched.clear();
        out
    }
}

struct Eliminator<'a, R: Coeffs> {
    ring: &'a R,
    /// `x_v = expr` for pivot variables, with creation time.
    pivot: Vec<Option<(usize, Sparse<R::E>)>>,
    order: Vec<u32>,
    dense: Dense<'a, R>,
}

impl<'a, R: Coeffs> Eliminator<'a, R> {
    fn new(ring: &'a R, nvars: usize) -> Self {
        Self {
            ring,
            pivot: vec![None; nvars],
            order: Vec::new(),
            dense: Dense::new(ring, nvars),
        }
    }

    /// Rewrites a relation in terms of non-pivot variables. Pivots are
    /// substituted oldest first; an expression only mentions variables that
    /// were free when it was created, so this terminates.
    fn reduce(&mut self, rel: &Sparse<R::E>) -> Result<Sparse<R::E>> {
        let mut heap = BinaryHeap::new();
        for &(v, c) in rel {
            self.dense.add(v, c)?;
            if let Some((t, _)) = &self.pivot[v as usize] {
                heap.push(Reverse((*t, v)));
            }
        }
        while let Some(Reverse((_, v))) = heap.pop() {
            let a = self.dense.take(v);
            if self.ring.is_zero(a) {
                continue;
            }
            let (_, expr) = self.pivot[v as usize].as_ref().expect("pivot");
            for &(w, c) in expr {
                let before = self.ring.is_zero(self.dense.vals[w as usize]);
                self.dense.add(w, self.ring.mul(a, c)?)?;
                if before {
                    if let Some((t, _)) = &self.pivot[w as usize] {
                        heap.push(Reverse((*t, w)));
                    }
                }
            }
        }
        Ok(self.dense.drain())
    }

    /// Tries to turn a reduced relation into a new pivot.
    fn absorb(&mut self, rel: Sparse<R::E>) -> Option<Sparse<R::E>> {
        let choice = rel
            .iter()
            .rev()
            .find_map(|&(v, c)| self.ring.unit_inverse(c).map(|inv| (v, inv)));
        let Some((v, inv)) = choice else {
            return Some(rel);
        };
        let f = self.ring.neg(inv);
        let expr = rel
            .into_iter()
            .filter(|&(w, _)| w != v)
            .map(|(w, c)| (w, self.ring.mul(f, c).expect("unit scaling")))
            .collect();
        let t = self.order.len();
        self.pivot[v as usize] = Some((t, expr));
        self.order.push(v);
        None
    }

    fn resolve(&mut self) -> Result<Vec<Option<Sparse<R::E>>>> {
        let n = self.pivot.len();
        let mut resolved: Vec<Option<Sparse<R::E>>> = vec![None; n];
        for &v in self.order.iter().rev() {
            let (_, expr) = self.pivot[v as usize].clone().expect("pivot");
            for (w, c) in expr {
                match &resolved[w as usize] {
                    Some(r) => {
                        for &(u, e) in r {
                            self.dense.add(u, self.ring.mul(c, e)?)?;
                        }
                    }
                    None => self.dense.add(w, c)?,
                }
            }
            resolved[v as usize] = Some(self.dense.drain());
        }
        Ok(resolved)
    }
}

/// Builds the quotient presentation over the given coefficient ring.
pub fn present<R: Coeffs>(p1: &P1, ring: &R) -> Result<Presentation<R::E>> {
    let n = p1.len();
    // 2-term relations: x = -xS, fixed points are torsion
    let rep: Vec<Option<(usize, i64)>> = (0..n)
        .map(|i| {
            let j = p1.s(i);
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Less => Some((i, 1)),
                std::cmp::Ordering::Greater => Some((j, -1)),
            }
        })
        .collect();
    let mut var_of = vec![u32::MAX; n];
    let mut var_symbol = Vec::new();
    for i in 0..n {
        if let Some((r, 1)) = rep[i] {
            if r == i {
                var_of[i] = var_symbol.len() as u32;
                var_symbol.push(i);
            }
        }
    }
    let nvars = var_symbol.len();
    let term = |i: usize| -> Option<(u32, i64)> { rep[i].map(|(r, s)| (var_of[r], s)) };

    let mut elim = Eliminator::new(ring, nvars);
    let mut hard = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let orbit = [i, p1.t(i), p1.t(p1.t(i))];
        for &k in &orbit {
            seen[k] = true;
        }
        let rel_terms: Vec<(u32, i64)> = if orbit[0] == orbit[1] {
            // fixed point of T: 3x = 0, torsion
            term(i).into_iter().collect()
        } else {
            orbit.iter().filter_map(|&k| term(k)).collect()
        };
        let rel: Sparse<R::E> = {
            let mut d = Dense::new(ring, nvars);
            for (v, c) in rel_terms {
                d.add(v, ring.embed(c))?;
            }
            d.drain()
        };
        let reduced = elim.reduce(&rel)?;
        if reduced.is_empty() {
            continue;
        }
        if let Some(rest) = elim.absorb(reduced) {
            hard.push(rest);
        }
    }
    // later pivots may have made earlier hard relations usable
    loop {
        let mut progress = false;
        let mut still = Vec::new();
        for rel in std::mem::take(&mut hard) {
            let r = elim.reduce(&rel)?;
            if r.is_empty() {
                progress = true;
                continue;
            }
            match elim.absorb(r) {
                None => progress = true,
                Some(rest) => still.push(rest),
            }
        }
        hard = still;
        if !progress || hard.is_empty() {
            break;
        }
    }
    let resolved = elim.resolve()?;
    let mut free_index = vec![u32::MAX; nvars];
    let mut free_symbols = Vec::new();
    for v in 0..nvars {
        if elim.pivot[v].is_none() {
            free_index[v] = free_symbols.len() as u32;
            free_symbols.push(var_symbol[v]);
        }
    }
    let var_coords = |v: u32| -> Sparse<R::E> {
        match &resolved[v as usize] {
            Some(r) => r
                .iter()
                .map(|&(w, c)| (free_index[w as usize], c))
                .collect(),
            None => vec![(free_index[v as usize], ring.embed(1))],
        }
    };
    let mut symbol_coords = Vec::with_capacity(n);
    for i in 0..n {
        let coords = match term(i) {
            None => Vec::new(),
            Some((v, s)) => {
                let c = var_coords(v);
                if s == 1 {
                    c
                } else {
                    c.into_iter().map(|(w, x)| (w, ring.neg(x))).collect()
                }
            }
        };
        symbol_coords.push(coords);
    }
    let mut leftover = Vec::new();
    for rel in hard {
        let mut d = Dense::new(ring, nvars);
        for (v, c) in rel {
            for (w, x) in var_coords(v) {
                d.add(w, ring.mul(c, x)?)?;
            }
        }
        let r = d.drain();
        if !r.is_empty() {
            leftover.push(r);
        }
    }
    Ok(Presentation {
        symbol_coords,
        free_symbols,
        leftover,
    })
}
