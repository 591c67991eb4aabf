//! Matrix Lie algebra utilities: brackets, orthogonal membership, Jordan
//! partitions of nilpotents, centralizers, the equation `[x, y] = y`, and
//! exact exponentials of nilpotent matrices.

use crate::exactcore::{rank_kernel, Matrix, MultiPoly, PolyMatrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("matrix sizes do not match")]
    SizeMismatch,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("the equation has no solution in the constrained algebra")]
    NoSolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieTag {
    Nilpotent,
    Semisimple,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub matrix: Matrix,
    pub tag: LieTag,
}

impl LieElement {
    /// Wrap a square matrix; a nilpotent tag is checked.
    pub fn new(matrix: Matrix, tag: LieTag) -> Result<Self, LieError> {
        if !matrix.is_square() {
            return Err(LieError::SizeMismatch);
        }
        if tag == LieTag::Nilpotent && !is_nilpotent(&matrix) {
            return Err(LieError::NotNilpotent);
        }
        Ok(LieElement { matrix, tag })
    }
}

/// Subalgebra of gl_n a computation is restricted to.
#[derive(Clone, Debug)]
pub enum Constraint {
    GeneralLinear,
    /// `x^T Q̂ + Q̂ x = 0`.
    Orthogonal(Matrix),
}

pub fn bracket(a: &Matrix, b: &Matrix) -> Result<Matrix, LieError> {
    if !a.is_square() || a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(LieError::SizeMismatch);
    }
    Ok(&(a * b) - &(b * a))
}

pub fn is_in_orthogonal(a: &Matrix, qhat: &Matrix) -> Result<bool, LieError> {
    if !a.is_square() || a.rows() != qhat.rows() || !qhat.is_square() {
        return Err(LieError::SizeMismatch);
    }
    Ok((&(&a.transpose() * qhat) + &(qhat * a)).is_zero())
}

pub fn is_nilpotent(m: &Matrix) -> bool {
    m.is_square() && m.pow(m.rows() as u32).is_zero()
}

/// Jordan partition of a nilpotent matrix, in decreasing order.
///
/// With `r_k = rank M^k`, the number of blocks of size ≥ k is `r_{k-1} - r_k`.
pub fn jordan_partition(m: &Matrix) -> Result<Vec<usize>, LieError> {
    if !m.is_square() {
        return Err(LieError::SizeMismatch);
    }
    if !is_nilpotent(m) {
        return Err(LieError::NotNilpotent);
    }
    let n = m.rows();
    let mut ranks = vec![n];
    let mut p = Matrix::identity(n);
    while *ranks.last().unwrap() > 0 {
        p = &p * m;
        ranks.push(p.rank());
    }
    // at_least[k] = number of blocks of size ≥ k+1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..at_least.len() {
        let exact = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..exact {
            parts.push(k + 1);
        }
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Ok(parts)
}

/// Centralizer dimension in gl_n predicted by a partition: `Σ (2i−1) λ_i`.
pub fn centralizer_dimension_formula(partition: &[usize]) -> usize {
    let mut p = partition.to_vec();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p.iter().enumerate().map(|(i, &l)| (2 * i + 1) * l).sum()
}

/// Row `i*n + j` of the unknown vector is `x_ij`; returns the equations
/// (as rows) of `x ↦ [x, n]` together with the constraint equations.
fn linear_system(n: &Matrix, constraint: &Constraint) -> Result<(Vec<Vec<Scalar>>, usize), LieError> {
    let k = n.rows();
    if !n.is_square() {
        return Err(LieError::SizeMismatch);
    }
    let mut rows = Vec::new();
    // ([x,n])_ij = Σ_l x_il n_lj − n_il x_lj
    for i in 0..k {
        for j in 0..k {
            let mut r = vec![Scalar::zero(); k * k];
            for l in 0..k {
                r[i * k + l] += n.get(l, j);
                r[l * k + j] -= n.get(i, l);
            }
            rows.push(r);
        }
    }
    let ncomm = rows.len();
    if let Constraint::Orthogonal(q) = constraint {
        if q.rows() != k || !q.is_square() {
            return Err(LieError::SizeMismatch);
        }
        // (x^T Q + Q x)_ij = Σ_l x_li q_lj + q_il x_lj
        for i in 0..k {
            for j in i..k {
                let mut r = vec![Scalar::zero(); k * k];
                for l in 0..k {
                    r[l * k + i] += q.get(l, j);
                    r[l * k + j] += q.get(i, l);
                }
                rows.push(r);
            }
        }
    }
    Ok((rows, ncomm))
}

/// Basis of `{x : [x, n] = 0}` inside the constraint subalgebra.
pub fn centralizer_basis(n: &Matrix, constraint: &Constraint) -> Result<Vec<Matrix>, LieError> {
    let k = n.rows();
    let (rows, _) = linear_system(n, constraint)?;
    let (_, ker) = rank_kernel(&Matrix::from_rows(rows));
    Ok(ker.into_iter().map(|v| Matrix::from_vec(k, k, v)).collect())
}

/// Basis of the constraint subalgebra itself.
pub fn algebra_basis(size: usize, constraint: &Constraint) -> Result<Vec<Matrix>, LieError> {
    centralizer_basis(&Matrix::zeros(size, size), constraint)
}

#[derive(Clone, Debug)]
pub struct AffineSolution {
    pub particular: Matrix,
    pub kernel: Vec<Matrix>,
    /// `y = 0`: the equation degenerates to the whole algebra.
    pub degenerate: bool,
}

/// Solutions of `[x, y] = y` in the constraint subalgebra.
pub fn bracket_eq_solutions(y: &Matrix, constraint: &Constraint) -> Result<AffineSolution, LieError> {
    if !y.is_square() {
        return Err(LieError::SizeMismatch);
    }
    if !is_nilpotent(y) {
        return Err(LieError::NotNilpotent);
    }
    let k = y.rows();
    let (rows, ncomm) = linear_system(y, constraint)?;
    let m = Matrix::from_rows(rows.clone());
    let mut rhs = vec![Scalar::zero(); rows.len()];
    for i in 0..k {
        for j in 0..k {
            rhs[i * k + j] = y.get(i, j).clone();
        }
    }
    debug_assert_eq!(ncomm, k * k);
    let part = m.solve(&rhs).ok_or(LieError::NoSolution)?;
    let (_, ker) = rank_kernel(&m);
    Ok(AffineSolution {
        particular: Matrix::from_vec(k, k, part),
        kernel: ker.into_iter().map(|v| Matrix::from_vec(k, k, v)).collect(),
        degenerate: y.is_zero(),
    })
}

/// `exp(tM) = Σ_k M^k t^k / k!` with `t` any polynomial.
pub fn exp_nilpotent(m: &Matrix, t: &MultiPoly) -> Result<PolyMatrix, LieError> {
    if !m.is_square() {
        return Err(LieError::SizeMismatch);
    }
    if !is_nilpotent(m) {
        return Err(LieError::NotNilpotent);
    }
    let n = m.rows();
    let nv = t.nvars();
    let mut out = PolyMatrix::zeros(n, n, nv);
    let mut power = Matrix::identity(n);
    let mut tk = MultiPoly::one(nv);
    let mut fact = Scalar::one();
    for k in 0..=n {
        if power.is_zero() {
            break;
        }
        let inv = fact.inv().unwrap();
        for i in 0..n {
            for j in 0..n {
                let c = power.get(i, j);
                if !c.is_zero() {
                    let e = out.get(i, j) + &tk.scale(&(c * &inv));
                    out.set(i, j, e);
                }
            }
        }
        power = &power * m;
        tk = &tk * t;
        fact = &fact * &Scalar::from_int(k as i64 + 1);
    }
    Ok(out)
}

/// Exact `exp(tM)` at a rational parameter value.
pub fn exp_nilpotent_at(m: &Matrix, t: &Scalar) -> Result<Matrix, LieError> {
    let e = exp_nilpotent(m, &MultiPoly::constant(0, t.clone()))?;
    Ok(e.eval(&[]))
}

/// Symmetric matrix of `q = x₂² − 2x₁x₃ + 2x₀x₄`, so that `q = xᵀ Q̂ x`.
pub fn standard_so5_form() -> Matrix {
    let mut q = Matrix::zeros(5, 5);
    q.set(2, 2, Scalar::one());
    q.set(1, 3, Scalar::from_int(-1));
    q.set(3, 1, Scalar::from_int(-1));
    q.set(0, 4, Scalar::one());
    q.set(4, 0, Scalar::one());
    q
}

/// Regular nilpotent of 𝔰𝔬(q) for the standard form: the single Jordan
/// block `J` with `J_{k,k+1} = 1`, i.e. the field `Σ x_{k+1} ∂/∂x_k`.
pub fn standard_regular_nilpotent() -> Matrix {
    let mut j = Matrix::zeros(5, 5);
    for k in 0..4 {
        j.set(k, k + 1, Scalar::one());
    }
    j
}

/// Matrix of a linear field given as a list of `(target, source)` pairs:
/// the term `x_source ∂/∂x_target` contributes `A[target][source] = 1`.
pub fn field_matrix(size: usize, terms: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(size, size);
    for &(t, s) in terms {
        m.set(t, s, Scalar::one());
    }
    m
}

/// Is `m` in the span of `basis`?
pub fn in_span(m: &Matrix, basis: &[Matrix]) -> bool {
    let mut rows: Vec<Vec<Scalar>> = basis.iter().map(|b| b.to_vec()).collect();
    let r0 = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.clone()).rank() };
    rows.push(m.to_vec());
    Matrix::from_rows(rows).rank() == r0
}
