use crate::arith::inv_mod;

/// The projective line over `Z/NZ` for a prime `N`. The point `(1:d)` has
/// index `d` and `(0:1)` has index `N`.
#[derive(Clone, Debug)]
pub struct P1 {
    n: u64,
    inv: Vec<u32>,
}

impl P1 {
    pub fn new(n: u64) -> Self {
        let mut inv = vec![0u32; n as usize];
        for x in 1..n {
            inv[x as usize] = inv_mod(x as i64, n).expect("prime modulus") as u32;
        }
        Self { n, inv }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.n as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of `(c:d)`, or `None` when `c = d = 0 (mod N)`.
    pub fn index(&self, c: i64, d: i64) -> Option<usize> {
        let n = self.n as i64;
        let (c, d) = (c.rem_euclid(n) as u64, d.rem_euclid(n) as u64);
        self.index_reduced(c, d)
    }

    pub fn index_reduced(&self, c: u64, d: u64) -> Option<usize> {
        if c == 0 {
            return (d != 0).then_some(self.n as usize);
        }
        Some((d * self.inv[c as usize] as u64 % self.n) as usize)
    }

    /// Normalized representative `(c, d)` of the point with this index.
    pub fn point(&self, i: usize) -> (u64, u64) {
        if i == self.n as usize {
            (0, 1)
        } else {
            (1, i as u64)
        }
    }

    /// Image of point `i` under the right action of `[[a, b], [c, d]]`.
    pub fn act(&self, i: usize, m: &[i64; 4]) -> Option<usize> {
        let (u, v) = self.point(i);
        let (u, v) = (u as i64, v as i64);
        let n = self.n as i64;
        let a = m[0].rem_euclid(n);
        let b = m[1].rem_euclid(n);
        let c = m[2].rem_euclid(n);
        let d = m[3].rem_euclid(n);
        self.index((u * a + v * c) % n, (u * b + v * d) % n)
    }

    pub fn s(&self, i: usize) -> usize {
        let (c, d) = self.point(i);
        self.index(d as i64, -(c as i64)).expect("S permutes P1")
    }

    pub fn t(&self, i: usize) -> usize {
        let (c, d) = self.point(i);
        self.index(d as i64, -(c as i64) - d as i64)
            .expect("T permutes P1")
    }

    pub fn star(&self, i: usize) -> usize {
        let (c, d) = self.point(i);
        self.index(-(c as i64), d as i64).expect("star permutes P1")
    }
}
