//! Certified rank of integer matrices by modular elimination.
//!
//! The rank modulo a prime never exceeds the rank over ℚ. The kernel found
//! modulo primes is lifted by Chinese remaindering and rational
//! reconstruction and then checked exactly, which bounds the rank over ℚ
//! from above; when both bounds meet the rank is certified.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const PRIMES: [u64; 32] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
    4611686018427387733,
    4611686018427387709,
    4611686018427387701,
    4611686018427387631,
    4611686018427387617,
    4611686018427387587,
    4611686018427387461,
    4611686018427387421,
    4611686018427387409,
    4611686018427387329,
    4611686018427387323,
    4611686018427387301,
    4611686018427387271,
    4611686018427387241,
    4611686018427387139,
    4611686018427387131,
    4611686018427387127,
    4611686018427387113,
    4611686018427387091,
    4611686018427387073,
    4611686018427386981,
    4611686018427386923,
    4611686018427386911,
    4611686018427386903,
    4611686018427386897,
    4611686018427386887,
];

/// Number of primes after which a reconstruction is attempted.
const CHECKPOINTS: [usize; 8] = [1, 2, 3, 4, 6, 8, 16, 32];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Reduced row echelon form mod `p`: pivot columns and the pivot rows.
fn rref_mod(a: &[Vec<BigInt>], nc: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(k) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(k, r);
        let inv = powmod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..nc {
                if prow[j] != 0 {
                    row[j] = (row[j] + p - mulmod(f, prow[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (pivots, m)
}

/// `n/d` with `n ≡ d·u (mod m)` and `|n|, |d| ≤ √(m/2)`.
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound: BigInt = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !t1.gcd(m).is_one() {
        return None;
    }
    Some(if t1.is_negative() { (-r1, -t1) } else { (r1, t1) })
}

/// Lift the kernel vectors (one per free column) and check them exactly.
fn lift_and_verify(a: &[Vec<BigInt>], nc: usize, pivots: &[usize], res: &[Vec<BigInt>], modulus: &BigInt) -> bool {
    let free: Vec<usize> = (0..nc).filter(|j| !pivots.contains(j)).collect();
    for (k, &j) in free.iter().enumerate() {
        let mut nums = Vec::with_capacity(pivots.len());
        let mut den = BigInt::one();
        for row in res {
            let Some((n, d)) = rational_reconstruct(&row[k], modulus) else { return false };
            den = den.lcm(&d);
            nums.push((n, d));
        }
        // w = den · v with v[j] = 1, v[pivot_i] = −R[i][j]
        let mut w = vec![BigInt::zero(); nc];
        w[j] = den.clone();
        for ((n, d), &pc) in nums.iter().zip(pivots) {
            w[pc] = -(n * (&den / d));
        }
        for row in a {
            let s: BigInt = row.iter().zip(&w).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum();
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Exact rank of an integer matrix, or `None` when the modular lift did not
/// succeed with the available primes.
pub(crate) fn certified_rank(a: &[Vec<BigInt>], nc: usize) -> Option<usize> {
    let nr = a.len();
    if nr == 0 || nc == 0 {
        return Some(0);
    }
    // best (rank, pivots) so far, residues of R on the free columns, modulus
    let mut best: Option<(Vec<usize>, Vec<Vec<BigInt>>, BigInt, usize)> = None;
    for &p in PRIMES.iter() {
        let (pivots, r) = rref_mod(a, nc, p);
        if pivots.len() == nc || pivots.len() == nr {
            return Some(pivots.len());
        }
        let free: Vec<usize> = (0..nc).filter(|j| !pivots.contains(j)).collect();
        let vals: Vec<Vec<BigInt>> = r.iter().map(|row| free.iter().map(|&j| BigInt::from(row[j])).collect()).collect();
        let better = match &best {
            None => true,
            Some((bp, ..)) => pivots.len() > bp.len() || (pivots.len() == bp.len() && pivots < *bp),
        };
        if better {
            best = Some((pivots, vals, BigInt::from(p), 1));
        } else if best.as_ref().is_some_and(|(bp, ..)| *bp == pivots) {
            let (_, res, m, count) = best.as_mut().unwrap();
            let pm = BigInt::from(p);
            // CRT: x ≡ old (mod m), x ≡ new (mod p)
            let minv = BigInt::from(powmod(reduce(m, p), p - 2, p));
            for (orow, nrow) in res.iter_mut().zip(&vals) {
                for (o, n) in orow.iter_mut().zip(nrow) {
                    let diff = (n - &*o).mod_floor(&pm);
                    let t = (diff * &minv).mod_floor(&pm);
                    *o = &*o + &*m * t;
                }
            }
            *m *= &pm;
            *count += 1;
        } else {
            continue;
        }
        let (bp, res, m, count) = best.as_ref().unwrap();
        if CHECKPOINTS.contains(count) && lift_and_verify(a, nc, bp, res, m) {
            return Some(bp.len());
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(certified_rank(&mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]), 3), Some(2));
        assert_eq!(certified_rank(&mat(&[&[0, 0], &[0, 0]]), 2), Some(0));
        assert_eq!(certified_rank(&mat(&[&[3, 7], &[1, 5]]), 2), Some(2));
    }

    #[test]
    fn reconstruct() {
        let m = BigInt::from(1_000_003i64) * BigInt::from(999_983i64);
        // 3/7 mod m
        let u = (0..7i64).map(|k| BigInt::from(3) + &m * k).find(|x| (x % 7u32).is_zero()).unwrap() / 7u32;
        assert_eq!(rational_reconstruct(&u, &m), Some((BigInt::from(3), BigInt::from(7))));
    }
}
