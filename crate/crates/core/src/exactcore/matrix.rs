use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;

use super::poly::MultiPoly;
use super::scalar::Scalar;

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += &(a * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Flatten row-major.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rank(&self) -> usize {
        if self.data.iter().all(|x| x.is_rational()) {
            let ints = integer_rows(self);
            if self.rows * self.cols >= MODULAR_THRESHOLD {
                if let Some(r) = super::modrank::certified_rank(&ints, self.cols) {
                    return r;
                }
            }
            return integer_rank(ints, self.cols);
        }
        echelon(self).rank
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square());
        if self.rows == 0 {
            return Scalar::one();
        }
        let e = echelon(self);
        if e.rank < self.rows {
            return Scalar::zero();
        }
        // the last Bareiss pivot is the determinant of the row-scaled matrix
        let last = e.rows[self.rows - 1].0[e.pivots[self.rows - 1]].clone();
        let det = &last / &e.scale;
        if e.swaps % 2 == 1 {
            -det
        } else {
            det
        }
    }

    /// Solve `self · x = b`, returning a particular solution or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let r = rref(&aug);
        if r.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in r.pivots.iter().enumerate() {
            x[p] = r.matrix.get(i, self.cols).clone();
        }
        Some(x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_short()).collect();
            writeln!(f, "[{}]", r.join(", "))?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "matrix size mismatch");
        let mut m = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = m.get(i, j) + &(a * b);
                        m.set(i, j, v);
                    }
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

/// Sparse row used during elimination.
#[derive(Clone)]
struct Row(Vec<Scalar>);

struct Echelon {
    rank: usize,
    pivots: Vec<usize>,
    rows: Vec<Row>,
    /// product of the row multipliers applied before elimination
    scale: Scalar,
    swaps: usize,
}

/// Fraction-free (Bareiss) forward elimination.
///
/// Rows are first multiplied by the lcm of their denominators so entries lie
/// in ℤ[i]. Pivots are chosen column by column; within a column the nonzero
/// entry of smallest bit size wins. Every division in the update is exact.
fn echelon(m: &Matrix) -> Echelon {
    let (nr, nc) = (m.rows, m.cols);
    let mut scale = Scalar::one();
    let mut rows: Vec<Row> = (0..nr)
        .map(|i| {
            let r = m.row(i);
            let l = r.iter().fold(BigInt::from(1), |acc, x| acc.lcm(&x.denom_lcm()));
            let f = Scalar::from_bigint(l);
            scale = &scale * &f;
            Row(r.iter().map(|x| x * &f).collect())
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = Scalar::one();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let mut best: Option<(usize, u64)> = None;
        for (i, row) in rows.iter().enumerate().skip(r) {
            let v = &row.0[c];
            if !v.is_zero() {
                let s = v.bit_size();
                if best.is_none_or(|(_, bs)| s < bs) {
                    best = Some((i, s));
                }
            }
        }
        let Some((p, _)) = best else { continue };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let piv = rows[r].0[c].clone();
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let a = row.0[c].clone();
            for j in c..nc {
                let x = &row.0[j];
                let y = &pivot_row.0[j];
                let t = if a.is_zero() || y.is_zero() {
                    if x.is_zero() {
                        continue;
                    }
                    x * &piv
                } else {
                    &(x * &piv) - &(&a * y)
                };
                row.0[j] = if prev.is_one() { t } else { &t / &prev };
            }
        }
        pivots.push(c);
        prev = piv;
        r += 1;
    }
    Echelon { rank: r, pivots, rows, scale, swaps }
}

/// Below this many entries plain Bareiss is cheaper than the modular route.
const MODULAR_THRESHOLD: usize = 400;

/// Rows of a rational matrix scaled by the lcm of their denominators.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let r = m.row(i);
            let l = r.iter().fold(BigInt::from(1), |acc, x| acc.lcm(&x.denom_lcm()));
            r.iter().map(|x| (x.re() * &l).to_integer()).collect()
        })
        .collect()
}

/// Bareiss rank over ℤ after clearing row denominators; much cheaper than
/// [`echelon`] because entries stay plain integers.
fn integer_rank(mut rows: Vec<Vec<BigInt>>, nc: usize) -> usize {
    let nr = rows.len();
    let one = BigInt::from(1);
    let mut prev = one.clone();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let best = (r..nr).filter(|&i| rows[i][c].sign() != Sign::NoSign).min_by_key(|&i| rows[i][c].bits());
        let Some(p) = best else { continue };
        rows.swap(p, r);
        let (head, tail) = rows.split_at_mut(r + 1);
        let prow = &head[r];
        let piv = &prow[c];
        for row in tail.iter_mut() {
            let a = row[c].clone();
            let a_zero = a.sign() == Sign::NoSign;
            for j in c..nc {
                let y_zero = prow[j].sign() == Sign::NoSign;
                if a_zero && row[j].sign() == Sign::NoSign {
                    continue;
                }
                let t = if a_zero || y_zero { &row[j] * piv } else { &row[j] * piv - &a * &prow[j] };
                row[j] = if prev == one { t } else { t / &prev };
            }
        }
        prev = piv.clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over the field.
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

pub fn rref(m: &Matrix) -> Rref {
    let e = echelon(m);
    let nc = m.cols;
    let mut rows: Vec<Vec<Scalar>> = e.rows.into_iter().take(e.rank).map(|r| r.0).collect();
    for (i, &p) in e.pivots.iter().enumerate() {
        let inv = rows[i][p].inv().unwrap();
        for x in rows[i].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
    }
    for i in (0..rows.len()).rev() {
        let p = e.pivots[i];
        let (upper, lower) = rows.split_at_mut(i);
        let prow = &lower[0];
        for row in upper.iter_mut() {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for j in p..nc {
                if !prow[j].is_zero() {
                    row[j] = &row[j] - &(&f * &prow[j]);
                }
            }
        }
    }
    let mut out = Matrix::zeros(rows.len(), nc);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Rref { matrix: out, pivots: e.pivots }
}

/// Exact rank and a kernel basis.
///
/// The kernel basis has one vector per non-pivot column `j`: it carries a 1
/// in position `j`, zeros in the other free positions and the negated RREF
/// entries in the pivot positions. Stacked in increasing `j`, these vectors
/// form the reduced echelon basis of the kernel with respect to reversed
/// column order; equal inputs give identical output.
pub fn rank_kernel(m: &Matrix) -> (usize, Vec<Vec<Scalar>>) {
    let r = rref(m);
    let rank = r.pivots.len();
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    for j in 0..m.cols {
        if is_pivot[j] {
            continue;
        }
        let mut v = vec![Scalar::zero(); m.cols];
        v[j] = Scalar::one();
        for (i, &p) in r.pivots.iter().enumerate() {
            let x = r.matrix.get(i, j);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        kernel.push(v);
    }
    (rank, kernel)
}

/// Row space basis in reduced echelon form of the given vectors.
pub fn row_space(vectors: &[Vec<Scalar>], dim: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return vec![];
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert!(vectors.iter().all(|v| v.len() == dim));
    let r = rref(&m);
    (0..r.pivots.len()).map(|i| r.matrix.row(i).to_vec()).collect()
}

/// Square matrix with polynomial entries (used for resultants and exponentials).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, data: vec![MultiPoly::zero(nvars); rows * cols] }
    }

    pub fn from_scalar(m: &Matrix, nvars: usize) -> Self {
        let mut p = PolyMatrix::zeros(m.rows, m.cols, nvars);
        for i in 0..m.rows {
            for j in 0..m.cols {
                p.set(i, j, MultiPoly::constant(nvars, m.get(i, j).clone()));
            }
        }
        p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows);
        let nvars = self.data.first().map(|p| p.nvars()).unwrap_or(0);
        let mut m = PolyMatrix::zeros(self.rows, o.cols, nvars);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = MultiPoly::zero(nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Evaluate every entry at a point.
    pub fn eval(&self, point: &[Scalar]) -> Matrix {
        Matrix::from_vec(self.rows, self.cols, self.data.iter().map(|p| p.eval(point)).collect())
    }

    /// Determinant by fraction-free elimination; divisions are exact in the polynomial ring.
    pub fn determinant(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let nvars = self.data.first().map(|p| p.nvars()).unwrap_or(0);
        if n == 0 {
            return MultiPoly::one(nvars);
        }
        let mut a: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = false;
        let mut prev = MultiPoly::one(nvars);
        for k in 0..n {
            // choose the shortest nonzero pivot
            let p = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
            let Some(p) = p else { return MultiPoly::zero(nvars) };
            if p != k {
                a.swap(p, k);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = if prev.is_constant() {
                        t.scale(&prev.constant_value().unwrap().inv().unwrap())
                    } else {
                        t.div_exact(&prev).expect("Bareiss division is exact")
                    };
                }
                a[i][k] = MultiPoly::zero(nvars);
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }
}
