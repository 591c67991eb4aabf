//! Exterior calculus on the affine cone: polynomial forms, vector fields,
//! wedge, `d`, contraction, Lie derivative and the integrability test.
//!
//! Sign conventions: `dx_I` for increasing `I`; the wedge reorders with the
//! permutation sign; `i_v` is the left interior product,
//! `i_v(dx_{i_0}∧⋯∧dx_{i_k}) = Σ_j (-1)^j v_{i_j} dx_{I∖i_j}`.

mod field;
mod form;

use std::collections::BTreeMap;

pub use field::PolyField;
pub use form::{Idx, PolyForm};

use crate::exactcore::{Matrix, Mono, MultiPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtError {
    #[error("forms or fields live on different ambient spaces")]
    AmbientMismatch,
    #[error("form degrees differ")]
    FormDegreeMismatch,
    #[error("contraction would lower the degree below zero")]
    DegreeUnderflow,
    #[error("the zero form is not allowed here")]
    ZeroForm,
    #[error("form is not annihilated by the radial field")]
    NotRadiallyAnnihilated,
    #[error("coefficients are not homogeneous of the stated degree")]
    NotHomogeneous,
}

/// Which identity failed in [`check_integrable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrabilityFailure {
    /// `ω ∧ dω ≠ 0` (1-forms).
    OmegaWedgeDOmega,
    /// `(i_V ω) ∧ ω ≠ 0` for the coordinate multivector `V`.
    Decomposability(Vec<usize>),
    /// `(i_V ω) ∧ dω ≠ 0` for the coordinate multivector `V`.
    Integrability(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityVerdict {
    pub integrable: bool,
    pub failure: Option<IntegrabilityFailure>,
}

/// Frobenius test. For 1-forms `ω∧dω = 0`; for q-forms the decomposability
/// and integrability conditions are tested against every coordinate
/// (q−1)-vector `∂_V`.
pub fn check_integrable(a: &PolyForm) -> Result<IntegrabilityVerdict, ExtError> {
    if a.is_zero() {
        return Err(ExtError::ZeroForm);
    }
    let q = a.degree();
    let ok = IntegrabilityVerdict { integrable: true, failure: None };
    if q == 0 {
        return Ok(ok);
    }
    let da = a.d();
    if q == 1 {
        return Ok(if a.wedge(&da)?.is_zero() {
            ok
        } else {
            IntegrabilityVerdict { integrable: false, failure: Some(IntegrabilityFailure::OmegaWedgeDOmega) }
        });
    }
    let (nv, nd) = (a.nvars(), a.ndiff());
    for tuple in increasing_tuples(nd, q - 1) {
        let fields: Vec<PolyField> = tuple.iter().map(|&i| PolyField::coordinate(nv, nd, i)).collect();
        let iv = a.contract_all(&fields)?;
        if iv.is_zero() {
            continue;
        }
        if !iv.wedge(a)?.is_zero() {
            return Ok(IntegrabilityVerdict { integrable: false, failure: Some(IntegrabilityFailure::Decomposability(tuple)) });
        }
        if !iv.wedge(&da)?.is_zero() {
            return Ok(IntegrabilityVerdict { integrable: false, failure: Some(IntegrabilityFailure::Integrability(tuple)) });
        }
    }
    Ok(ok)
}

/// Euler identity `i_R(da) = (m+q)·a` for a radially annihilated form with
/// homogeneous coefficients of degree `m`.
pub fn check_euler(a: &PolyForm, m: u32) -> Result<bool, ExtError> {
    let r = PolyField::radial(a.nvars(), a.ndiff());
    if a.is_zero() {
        return Ok(true);
    }
    if a.coeff_degree() != Some(m) {
        return Err(ExtError::NotHomogeneous);
    }
    if a.degree() > 0 && !a.contract(&r)?.is_zero() {
        return Err(ExtError::NotRadiallyAnnihilated);
    }
    let lhs = if a.degree() < a.ndiff() { a.d().contract(&r)? } else { PolyForm::zero(a.nvars(), a.ndiff(), a.degree()) };
    Ok(lhs == a.scale(&Scalar::from_int((m as usize + a.degree()) as i64)))
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coordinate dictionary turning forms into vectors over a shared basis of
/// `(index tuple, monomial)` keys. Keys are added on demand, so rank
/// computations only need the union of keys actually present.
#[derive(Default, Clone, Debug)]
pub struct Coords {
    keys: BTreeMap<(Idx, Mono), usize>,
}

impl Coords {
    pub fn new() -> Self {
        Coords::default()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn register(&mut self, w: &PolyForm) {
        for (i, m, _) in w.coordinates() {
            let n = self.keys.len();
            self.keys.entry((i.clone(), m.clone())).or_insert(n);
        }
    }

    pub fn register_poly(&mut self, p: &MultiPoly) {
        for (m, _) in p.terms() {
            let n = self.keys.len();
            self.keys.entry((Idx::new(), m.clone())).or_insert(n);
        }
    }

    /// Vector of a registered form (unregistered keys panic).
    pub fn vector(&self, w: &PolyForm) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.keys.len()];
        for (i, m, c) in w.coordinates() {
            v[self.keys[&(i.clone(), m.clone())]] = c.clone();
        }
        v
    }

    pub fn poly_vector(&self, p: &MultiPoly) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.keys.len()];
        for (m, c) in p.terms() {
            v[self.keys[&(Idx::new(), m.clone())]] = c.clone();
        }
        v
    }

    /// Rebuild a form from a coordinate vector.
    pub fn form(&self, v: &[Scalar], nvars: usize, ndiff: usize, degree: usize) -> PolyForm {
        let mut by_idx: BTreeMap<Idx, MultiPoly> = BTreeMap::new();
        for ((i, m), &k) in &self.keys {
            if !v[k].is_zero() {
                by_idx.entry(i.clone()).or_insert_with(|| MultiPoly::zero(nvars)).add_term(m.clone(), &v[k]);
            }
        }
        PolyForm::from_terms(nvars, ndiff, degree, by_idx)
    }
}

/// Matrix whose rows are the coordinate vectors of the given forms.
pub fn forms_matrix(forms: &[PolyForm]) -> (Matrix, Coords) {
    let mut c = Coords::new();
    for f in forms {
        c.register(f);
    }
    let rows = forms.iter().map(|f| c.vector(f)).collect::<Vec<_>>();
    let m = if rows.is_empty() { Matrix::zeros(0, c.len()) } else { Matrix::from_rows(rows) };
    (m, c)
}

/// Rank of a list of forms (as vectors over the field).
pub fn forms_rank(forms: &[PolyForm]) -> usize {
    if forms.is_empty() {
        return 0;
    }
    let (m, _) = forms_matrix(forms);
    if m.cols() == 0 {
        return 0;
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(4, i)
    }

    fn dx(i: usize) -> PolyForm {
        PolyForm::dx(4, 4, i)
    }

    #[test]
    fn basic_wedge() {
        let w = dx(0).wedge(&dx(1)).unwrap();
        assert_eq!(w.coeff(&[0, 1]), MultiPoly::one(4));
        let a = dx(1).mul_poly(&x(0));
        let b = dx(0).mul_poly(&x(1));
        let ab = a.wedge(&b).unwrap();
        assert_eq!(ab.coeff(&[0, 1]), -(&x(0) * &x(1)));
    }

    #[test]
    fn pencil_form() {
        let w = &dx(1).mul_poly(&x(0)) - &dx(0).mul_poly(&x(1));
        let dw = w.d();
        assert_eq!(dw.coeff(&[0, 1]), MultiPoly::constant(4, Scalar::from_int(2)));
        assert!(w.contract(&PolyField::radial(4, 4)).unwrap().is_zero());
        assert!(check_integrable(&w).unwrap().integrable);
        assert!(check_euler(&w, 1).unwrap());
    }

    #[test]
    fn contraction_of_volume() {
        let w = dx(0).wedge(&dx(1)).unwrap();
        let c = w.contract(&PolyField::coordinate(4, 4, 0)).unwrap();
        assert_eq!(c, dx(1));
    }
}
