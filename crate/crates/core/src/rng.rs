//! Seeded sampling of small integers. Every randomized routine takes a seed
//! and is deterministic given it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactcore::{monomials_of_degree, Matrix, MultiPoly, Scalar};

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Derived sampler for a sub-task; streams for different `k` are independent.
    pub fn fork(seed: u64, k: u64) -> Self {
        Sampler::new(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k.wrapping_mul(0xD1B5_4A32_D192_ED03)) ^ k)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let v = self.int(-bound, bound);
            if v != 0 {
                return v;
            }
        }
    }

    pub fn scalar(&mut self, bound: i64) -> Scalar {
        Scalar::from_int(self.int(-bound, bound))
    }

    pub fn scalars(&mut self, n: usize, bound: i64) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar(bound)).collect()
    }

    /// Random homogeneous polynomial of degree `deg` in the first `nvars` variables
    /// (embedded in a universe of `universe` variables).
    pub fn homogeneous(&mut self, universe: usize, nvars: usize, deg: u32, bound: i64) -> MultiPoly {
        let mut p = MultiPoly::zero(universe);
        for m in monomials_of_degree(nvars, deg) {
            let c = self.scalar(bound);
            if !c.is_zero() {
                p.add_term(m.extend(universe), &c);
            }
        }
        p
    }

    /// Like [`Sampler::homogeneous`] but never zero.
    pub fn homogeneous_nonzero(&mut self, universe: usize, nvars: usize, deg: u32, bound: i64) -> MultiPoly {
        loop {
            let p = self.homogeneous(universe, nvars, deg, bound);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix {
        Matrix::from_rows((0..rows).map(|_| self.scalars(cols, bound)).collect())
    }

    /// Random invertible square matrix.
    pub fn invertible(&mut self, n: usize, bound: i64) -> Matrix {
        loop {
            let m = self.matrix(n, n, bound);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn full_rank(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix {
        loop {
            let m = self.matrix(rows, cols, bound);
            if m.rank() == rows.min(cols) {
                return m;
            }
        }
    }

    pub fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
