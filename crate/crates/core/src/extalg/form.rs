use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use smallvec::SmallVec;

use super::field::PolyField;
use super::ExtError;
use crate::exactcore::{poly_gcd_many, Mono, MultiPoly, Scalar};

/// Strictly increasing tuple of differential indices.
pub type Idx = SmallVec<[u8; 6]>;

/// Polynomial differential form on the affine cone.
///
/// Coefficients live in a polynomial ring with `nvars` variables. The first
/// `ndiff` of them carry differentials `dx_i`; any further variables are
/// parameters (deformation variables such as ε) and are ignored by `d` and
/// by the radial field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyForm {
    nvars: usize,
    ndiff: usize,
    degree: usize,
    coeffs: BTreeMap<Idx, MultiPoly>,
}

/// Sign of the permutation sorting the concatenation of two increasing
/// tuples, or `None` when they share an index.
fn merge_sign(a: &[u8], b: &[u8]) -> Option<(bool, Idx)> {
    let mut out = Idx::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining entries of a
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((inversions % 2 == 1, out))
}

impl PolyForm {
    pub fn zero(nvars: usize, ndiff: usize, degree: usize) -> Self {
        assert!(ndiff <= nvars);
        PolyForm { nvars, ndiff, degree, coeffs: BTreeMap::new() }
    }

    /// The 0-form `f`.
    pub fn function(f: MultiPoly, ndiff: usize) -> Self {
        let mut w = PolyForm::zero(f.nvars(), ndiff, 0);
        w.add_term(Idx::new(), f);
        w
    }

    /// `dx_i`.
    pub fn dx(nvars: usize, ndiff: usize, i: usize) -> Self {
        let mut w = PolyForm::zero(nvars, ndiff, 1);
        w.add_term(smallvec::smallvec![i as u8], MultiPoly::one(nvars));
        w
    }

    /// `Σ a_i dx_i`.
    pub fn one_form(coeffs: &[MultiPoly], ndiff: usize) -> Self {
        assert_eq!(coeffs.len(), ndiff, "one coefficient per differential");
        let nvars = coeffs.first().map(|c| c.nvars()).unwrap_or(ndiff);
        let mut w = PolyForm::zero(nvars, ndiff, 1);
        for (i, c) in coeffs.iter().enumerate() {
            w.add_term(smallvec::smallvec![i as u8], c.clone());
        }
        w
    }

    /// `dx_0 ∧ ⋯ ∧ dx_{ndiff-1}`.
    pub fn volume(nvars: usize, ndiff: usize) -> Self {
        let mut w = PolyForm::zero(nvars, ndiff, ndiff);
        w.add_term((0..ndiff as u8).collect(), MultiPoly::one(nvars));
        w
    }

    /// Volume form on the listed coordinates (given in any order, sign follows the order).
    pub fn volume_on(nvars: usize, ndiff: usize, coords: &[usize]) -> Self {
        let mut w = PolyForm::function(MultiPoly::one(nvars), ndiff);
        for &c in coords {
            w = w.wedge(&PolyForm::dx(nvars, ndiff, c)).unwrap();
        }
        w
    }

    pub fn from_terms(nvars: usize, ndiff: usize, degree: usize, terms: impl IntoIterator<Item = (Idx, MultiPoly)>) -> Self {
        let mut w = PolyForm::zero(nvars, ndiff, degree);
        for (i, c) in terms {
            w.add_term(i, c);
        }
        w
    }

    /// Add `c · dx_I`; `I` must be strictly increasing with length equal to the degree.
    pub fn add_term(&mut self, idx: Idx, c: MultiPoly) {
        debug_assert_eq!(idx.len(), self.degree);
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(c.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ndiff(&self) -> usize {
        self.ndiff
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Idx, &MultiPoly)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, idx: &[u8]) -> MultiPoly {
        self.coeffs.get(idx).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// Coefficients of a 1-form as a vector `(a_0, …, a_{ndiff-1})`.
    pub fn one_form_coeffs(&self) -> Vec<MultiPoly> {
        assert_eq!(self.degree, 1);
        (0..self.ndiff).map(|i| self.coeff(&[i as u8])).collect()
    }

    /// The polynomial of a 0-form.
    pub fn as_function(&self) -> MultiPoly {
        assert_eq!(self.degree, 0);
        self.coeff(&[])
    }

    fn compatible(&self, o: &PolyForm) -> Result<(), ExtError> {
        if self.nvars != o.nvars || self.ndiff != o.ndiff {
            Err(ExtError::AmbientMismatch)
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &Scalar) -> PolyForm {
        if c.is_zero() {
            return PolyForm::zero(self.nvars, self.ndiff, self.degree);
        }
        self.map_coeffs(|p| p.scale(c))
    }

    pub fn mul_poly(&self, f: &MultiPoly) -> PolyForm {
        self.map_coeffs(|p| p * f)
    }

    /// Apply `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyForm {
        let mut w = PolyForm::zero(self.nvars, self.ndiff, self.degree);
        for (i, c) in &self.coeffs {
            w.add_term(i.clone(), f(c));
        }
        w
    }

    /// Coefficient-wise exact division, if every coefficient is divisible.
    pub fn div_poly(&self, f: &MultiPoly) -> Option<PolyForm> {
        let mut w = PolyForm::zero(self.nvars, self.ndiff, self.degree);
        for (i, c) in &self.coeffs {
            w.add_term(i.clone(), c.div_exact(f)?);
        }
        Some(w)
    }

    pub fn try_add(&self, o: &PolyForm) -> Result<PolyForm, ExtError> {
        self.compatible(o)?;
        if self.degree != o.degree {
            return Err(ExtError::FormDegreeMismatch);
        }
        let mut w = self.clone();
        for (i, c) in &o.coeffs {
            w.add_term(i.clone(), c.clone());
        }
        Ok(w)
    }

    /// Graded-anticommutative product.
    pub fn wedge(&self, o: &PolyForm) -> Result<PolyForm, ExtError> {
        self.compatible(o)?;
        let deg = self.degree + o.degree;
        let mut w = PolyForm::zero(self.nvars, self.ndiff, deg);
        if deg > self.ndiff {
            return Ok(w);
        }
        for (i, a) in &self.coeffs {
            for (j, b) in &o.coeffs {
                if let Some((neg, k)) = merge_sign(i, j) {
                    let p = a * b;
                    w.add_term(k, if neg { -p } else { p });
                }
            }
        }
        Ok(w)
    }

    /// Exterior derivative in the differential variables.
    pub fn d(&self) -> PolyForm {
        let mut w = PolyForm::zero(self.nvars, self.ndiff, self.degree + 1);
        if self.degree >= self.ndiff {
            return w;
        }
        for (idx, c) in &self.coeffs {
            for j in 0..self.ndiff {
                if idx.contains(&(j as u8)) || !c.involves(j) {
                    continue;
                }
                let (neg, k) = merge_sign(&[j as u8], idx).unwrap();
                let dc = c.derivative(j);
                w.add_term(k, if neg { -dc } else { dc });
            }
        }
        w
    }

    /// Interior product `i_v` (left contraction, Koszul signs).
    pub fn contract(&self, v: &PolyField) -> Result<PolyForm, ExtError> {
        if v.nvars() != self.nvars || v.ndiff() != self.ndiff {
            return Err(ExtError::AmbientMismatch);
        }
        if self.degree == 0 {
            return Err(ExtError::DegreeUnderflow);
        }
        let mut w = PolyForm::zero(self.nvars, self.ndiff, self.degree - 1);
        for (idx, c) in &self.coeffs {
            for (pos, &k) in idx.iter().enumerate() {
                let vk = v.component(k as usize);
                if vk.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let p = vk * c;
                w.add_term(rest, if pos % 2 == 1 { -p } else { p });
            }
        }
        Ok(w)
    }

    /// Contract with each field in turn, left to right: `i_{v_k}(⋯ i_{v_1}(a))`.
    pub fn contract_all(&self, vs: &[PolyField]) -> Result<PolyForm, ExtError> {
        if vs.len() > self.degree {
            return Err(ExtError::DegreeUnderflow);
        }
        let mut w = self.clone();
        for v in vs {
            w = w.contract(v)?;
        }
        Ok(w)
    }

    /// Lie derivative by Cartan's formula `L_v = i_v d + d i_v`.
    pub fn lie_derivative(&self, v: &PolyField) -> Result<PolyForm, ExtError> {
        let a = if self.degree < self.ndiff { self.d().contract(v)? } else { PolyForm::zero(self.nvars, self.ndiff, self.degree) };
        if self.degree == 0 {
            return Ok(a);
        }
        let b = self.contract(v)?.d();
        a.try_add(&b)
    }

    /// Substitute `x_i ↦ images[i]` for the differential variables (and keep
    /// parameters), pulling back `dx_i ↦ d(images[i])` in the target universe.
    ///
    /// `images` has one entry per differential variable of `self`, each a
    /// polynomial in a universe of `target_nvars` variables whose first
    /// `target_ndiff` are differential. Parameter variables of `self` map to
    /// `param_images` (same length as the number of parameters).
    pub fn pullback(&self, images: &[MultiPoly], param_images: &[MultiPoly], target_ndiff: usize) -> PolyForm {
        assert_eq!(images.len(), self.ndiff);
        assert_eq!(param_images.len(), self.nvars - self.ndiff);
        let tn = images.first().or(param_images.first()).map(|p| p.nvars()).expect("nonempty map");
        let mut all: Vec<MultiPoly> = images.to_vec();
        all.extend(param_images.iter().cloned());
        let dimg: Vec<PolyForm> = images.iter().map(|f| PolyForm::function(f.clone(), target_ndiff).d()).collect();
        let mut w = PolyForm::zero(tn, target_ndiff, self.degree);
        let mut cache: BTreeMap<Idx, PolyForm> = BTreeMap::new();
        for (idx, c) in &self.coeffs {
            let basis = cache
                .entry(idx.clone())
                .or_insert_with(|| {
                    let mut b = PolyForm::function(MultiPoly::one(tn), target_ndiff);
                    for &k in idx.iter() {
                        b = b.wedge(&dimg[k as usize]).unwrap();
                    }
                    b
                })
                .clone();
            let cc = c.compose(&all);
            if cc.is_zero() {
                continue;
            }
            for (j, b) in basis.coeffs {
                w.add_term(j, &cc * &b);
            }
        }
        w
    }

    /// Common degree in the differential variables of all coefficient terms.
    ///
    /// `None` for the zero form or when coefficients are not homogeneous.
    pub fn coeff_degree(&self) -> Option<u32> {
        let mut deg = None;
        for c in self.coeffs.values() {
            for (m, _) in c.terms() {
                let d: u32 = m.exps()[..self.ndiff].iter().map(|&e| e as u32).sum();
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }

    /// gcd of all coefficients (normalised); zero form gives 0.
    pub fn coefficient_gcd(&self) -> MultiPoly {
        poly_gcd_many(self.coeffs.values()).unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// Leading scalar used for normalisation: coefficient of the graded-lex
    /// leading monomial in the first nonzero index tuple.
    pub fn leading_scalar(&self) -> Option<Scalar> {
        self.coeffs.values().next().and_then(|c| c.leading_coeff().cloned())
    }

    /// Scale so that [`PolyForm::leading_scalar`] is 1.
    pub fn normalized(&self) -> PolyForm {
        match self.leading_scalar() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// `Some(c)` with `self = c · o` when the forms are proportional (and `o ≠ 0`).
    pub fn proportional_to(&self, o: &PolyForm) -> Option<Scalar> {
        if self.nvars != o.nvars || self.ndiff != o.ndiff || self.degree != o.degree {
            return None;
        }
        if o.is_zero() {
            return if self.is_zero() { Some(Scalar::zero()) } else { None };
        }
        let (idx, oc) = o.coeffs.iter().next().unwrap();
        let (m, ob) = oc.leading_term().unwrap();
        let c = &self.coeff(idx).coeff(m) / ob;
        if &o.scale(&c) == self {
            Some(c)
        } else {
            None
        }
    }

    /// Every monomial-level coordinate `(tuple, monomial, coefficient)`.
    pub fn coordinates(&self) -> impl Iterator<Item = (&Idx, &Mono, &Scalar)> {
        self.coeffs.iter().flat_map(|(i, c)| c.terms().map(move |(m, s)| (i, m, s)))
    }

    /// Change the polynomial universe (append parameter variables, or drop unused ones).
    pub fn with_nvars(&self, nvars: usize) -> PolyForm {
        let mut w = PolyForm::zero(nvars, self.ndiff, self.degree);
        for (i, c) in &self.coeffs {
            let c = if nvars >= self.nvars { c.extend_vars(nvars) } else { c.restrict_vars(nvars) };
            w.add_term(i.clone(), c);
        }
        w
    }

    /// Render with the given variable names, e.g. `x1*dx0 - x0*dx1`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (idx, c) in &self.coeffs {
            let diffs: Vec<String> = idx.iter().map(|&k| format!("d{}", names[k as usize])).collect();
            let body = c.fmt_with(names);
            let term = if diffs.is_empty() {
                body
            } else if c.is_constant() && c.constant_value().unwrap().is_one() {
                diffs.join("*")
            } else if c.is_monomial() && c.leading_coeff().unwrap().is_rational() {
                format!("{}*{}", body, diffs.join("*"))
            } else {
                format!("({})*{}", body, diffs.join("*"))
            };
            parts.push(term);
        }
        let mut s = String::new();
        for (k, p) in parts.into_iter().enumerate() {
            if k == 0 {
                s.push_str(&p);
            } else if let Some(rest) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(&p);
            }
        }
        s
    }
}

impl fmt::Display for PolyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = crate::exactcore::default_names(self.ndiff);
        for k in self.ndiff..self.nvars {
            names.push(if self.nvars - self.ndiff == 1 { "eps".to_string() } else { format!("p{}", k - self.ndiff) });
        }
        f.write_str(&self.fmt_with(&names))
    }
}

impl<'a> Add<&'a PolyForm> for &'a PolyForm {
    type Output = PolyForm;
    fn add(self, o: &PolyForm) -> PolyForm {
        self.try_add(o).expect("incompatible forms")
    }
}

impl<'a> Sub<&'a PolyForm> for &'a PolyForm {
    type Output = PolyForm;
    fn sub(self, o: &PolyForm) -> PolyForm {
        self.try_add(&-o).expect("incompatible forms")
    }
}

impl Neg for &PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        self.map_coeffs(|c| -c)
    }
}

impl Neg for PolyForm {
    type Output = PolyForm;
    fn neg(self) -> PolyForm {
        -&self
    }
}
