use crate::exactcore::{Matrix, MultiPoly, Scalar};
use crate::extalg::{check_integrable, PolyForm};

use super::FolError;

fn x_degree(p: &MultiPoly, ndiff: usize) -> Option<u32> {
    let mut d = None;
    for (m, _) in p.terms() {
        let e: u32 = m.exps()[..ndiff].iter().map(|&e| e as u32).sum();
        match d {
            None => d = Some(e),
            Some(x) if x != e => return None,
            _ => {}
        }
    }
    d
}

/// Cleared logarithmic form `Σᵢ λᵢ (∏_{j≠i} fⱼ) dfᵢ`.
///
/// All variables of the `fᵢ` are differential. Requires `Σ λᵢ deg fᵢ = 0`,
/// which is what makes the form descend to projective space.
pub fn make_log_family(lambda: &[Scalar], f: &[MultiPoly]) -> Result<PolyForm, FolError> {
    if f.len() < 2 || lambda.len() != f.len() {
        return Err(FolError::ResidueConstraintViolated);
    }
    let nv = f[0].nvars();
    log_form(lambda, f, nv)
}

/// Same as [`make_log_family`] but with only the first `ndiff` variables differential.
pub(crate) fn log_form(lambda: &[Scalar], f: &[MultiPoly], ndiff: usize) -> Result<PolyForm, FolError> {
    let mut degs = Vec::new();
    for p in f {
        if p.is_zero() {
            return Err(FolError::InhomogeneousInput);
        }
        degs.push(x_degree(p, ndiff).ok_or(FolError::InhomogeneousInput)?);
    }
    let mut s = Scalar::zero();
    for (l, d) in lambda.iter().zip(&degs) {
        s += &(l * &Scalar::from_int(*d as i64));
    }
    if !s.is_zero() {
        return Err(FolError::ResidueConstraintViolated);
    }
    Ok(log_form_unchecked(lambda, f, ndiff))
}

pub(crate) fn log_form_unchecked(lambda: &[Scalar], f: &[MultiPoly], ndiff: usize) -> PolyForm {
    let nv = f[0].nvars();
    let k = f.len();
    // prefix/suffix products avoid recomputing ∏_{j≠i}
    let mut prefix = vec![MultiPoly::one(nv)];
    for p in f {
        let next = prefix.last().unwrap() * p;
        prefix.push(next);
    }
    let mut suffix = vec![MultiPoly::one(nv); k + 1];
    for i in (0..k).rev() {
        suffix[i] = &suffix[i + 1] * &f[i];
    }
    let mut w = PolyForm::zero(nv, ndiff, 1);
    for i in 0..k {
        if lambda[i].is_zero() {
            continue;
        }
        let others = &prefix[i] * &suffix[i + 1];
        let df = PolyForm::function(f[i].clone(), ndiff).d();
        w = &w + &df.mul_poly(&others.scale(&lambda[i]));
    }
    w
}

/// Pull back `η` along the linear map `x ↦ A x`, `A` of size (m+1)×(n+1).
pub fn make_linear_pullback(a: &Matrix, eta: &PolyForm) -> Result<PolyForm, FolError> {
    if a.rows() != eta.ndiff() || a.rows() > a.cols() || a.rank() != a.rows() {
        return Err(FolError::RankDeficientProjection);
    }
    let n1 = a.cols();
    let params = eta.nvars() - eta.ndiff();
    let tn = n1 + params;
    let images: Vec<MultiPoly> = (0..a.rows()).map(|i| MultiPoly::linear(tn, a.row(i))).collect();
    let pimg: Vec<MultiPoly> = (0..params).map(|k| MultiPoly::var(tn, n1 + k)).collect();
    Ok(eta.pullback(&images, &pimg, n1))
}

/// Functoriality check used by tests: pullback commutes with `d` and `∧`.
pub fn linear_pullback_check(a: &Matrix, x: &PolyForm, y: &PolyForm) -> Result<bool, FolError> {
    let px = make_linear_pullback(a, x)?;
    let py = make_linear_pullback(a, y)?;
    let d_ok = make_linear_pullback(a, &x.d())? == px.d();
    let w_ok = make_linear_pullback(a, &x.wedge(y)?)? == px.wedge(&py)?;
    Ok(d_ok && w_ok)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationReport {
    pub integrable_in_eps: bool,
    pub residues_ok: bool,
    pub limit_ok: bool,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.integrable_in_eps && self.residues_ok && self.limit_ok
    }
}

/// The family `(1+2ε)QH₂dH₁ − QH₁dH₂ − εH₁H₂dQ` with ε a ring parameter.
pub fn deformation_limit_check(q: &MultiPoly, h1: &MultiPoly, h2: &MultiPoly) -> Result<DeformationReport, FolError> {
    let n = q.nvars();
    if !q.is_homogeneous() || q.total_degree() != Some(2) {
        return Err(FolError::DegreeMismatch("Q must be a quadric".into()));
    }
    for h in [h1, h2] {
        if !h.is_homogeneous() || h.total_degree() != Some(1) {
            return Err(FolError::DegreeMismatch("H must be linear".into()));
        }
    }
    let e = n + 1;
    let eps = MultiPoly::var(e, n);
    let (qe, h1e, h2e) = (q.extend_vars(e), h1.extend_vars(e), h2.extend_vars(e));
    let one = MultiPoly::one(e);
    let lam = vec![&one + &eps.scale(&Scalar::from_int(2)), -&one, -&eps];
    let w = {
        let dh1 = PolyForm::function(h1e.clone(), n).d();
        let dh2 = PolyForm::function(h2e.clone(), n).d();
        let dq = PolyForm::function(qe.clone(), n).d();
        let a = dh1.mul_poly(&(&(&qe * &h2e) * &lam[0]));
        let b = dh2.mul_poly(&(&(&qe * &h1e) * &lam[1]));
        let c = dq.mul_poly(&(&(&h1e * &h2e) * &lam[2]));
        &(&a + &b) + &c
    };
    let integrable_in_eps = w.is_zero() || check_integrable(&w)?.integrable;
    // Σ λᵢ dᵢ with degrees (1, 1, 2)
    let res = &(&lam[0] + &lam[1]) + &lam[2].scale(&Scalar::from_int(2));
    let residues_ok = res.is_zero();
    let w0 = w.map_coeffs(|c| c.eval_var(n, &Scalar::zero())).with_nvars(n);
    let expect = make_log_family(&[Scalar::one(), Scalar::from_int(-1)], &[h1.clone(), h2.clone()])?.mul_poly(q);
    Ok(DeformationReport { integrable_in_eps, residues_ok, limit_ok: w0 == expect })
}
