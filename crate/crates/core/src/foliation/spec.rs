use crate::exactcore::{MultiPoly, Scalar};
use crate::extalg::{check_integrable, PolyField, PolyForm};
use crate::rng::Sampler;

use super::FolError;

/// A foliation of codimension `q` on ℙⁿ, given by a q-form on ℂ^{n+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoliationSpec {
    n: usize,
    q: usize,
    omega: PolyForm,
    m: u32,
}

impl FoliationSpec {
    /// Validate every invariant: `i_R ω = 0`, homogeneity, integrability and
    /// trivial divisorial part.
    pub fn new(omega: PolyForm) -> Result<Self, FolError> {
        let s = FoliationSpec::unchecked_integrability(omega)?;
        if !check_integrable(&s.omega)?.integrable {
            return Err(FolError::NotIntegrable);
        }
        Ok(s)
    }

    /// Everything but integrability.
    pub fn unchecked_integrability(omega: PolyForm) -> Result<Self, FolError> {
        if omega.is_zero() {
            return Err(FolError::ZeroForm);
        }
        let m = omega.coeff_degree().ok_or(FolError::NotHomogeneous)?;
        let r = PolyField::radial(omega.nvars(), omega.ndiff());
        if omega.degree() == 0 || !omega.contract(&r)?.is_zero() {
            return Err(FolError::NotRadiallyAnnihilated);
        }
        if !omega.coefficient_gcd().is_constant() {
            return Err(FolError::GcdNotOne);
        }
        Ok(FoliationSpec { n: omega.ndiff() - 1, q: omega.degree(), omega, m })
    }

    pub fn form(&self) -> &PolyForm {
        &self.omega
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn codim(&self) -> usize {
        self.q
    }

    pub fn coeff_degree(&self) -> u32 {
        self.m
    }

    /// `d = m − 1`.
    pub fn degree(&self) -> i64 {
        self.m as i64 - 1
    }

    /// `deg N = d + q + 1`.
    pub fn normal_degree(&self) -> i64 {
        self.degree() + self.q as i64 + 1
    }

    /// `deg K_𝓕 = d + q − n`.
    pub fn canonical_degree(&self) -> i64 {
        self.degree() + self.q as i64 - self.n as i64
    }

    /// `μ = ((n − q) − d)/(n − q)`; `None` when `q = n`.
    pub fn slope(&self) -> Option<Scalar> {
        let r = self.n as i64 - self.q as i64;
        if r <= 0 {
            return None;
        }
        Some(Scalar::from_ratio(r - self.degree(), r))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeRoute {
    CoefficientDegree,
    TangencyDivisor,
}

/// Degree of the foliation defined by `ω`.
///
/// The tangency route restricts to a random linear `ℙ^q ⊂ ℙⁿ`. There the
/// pulled-back q-form is `h · i_R(dy_0∧⋯∧dy_q)` and `deg h` counts tangencies.
pub fn degree_of(omega: &PolyForm, route: DegreeRoute, seed: u64) -> Result<u32, FolError> {
    if omega.is_zero() {
        return Err(FolError::ZeroForm);
    }
    let m = omega.coeff_degree().ok_or(FolError::NotHomogeneous)?;
    let r = PolyField::radial(omega.nvars(), omega.ndiff());
    if omega.degree() == 0 || !omega.contract(&r)?.is_zero() {
        return Err(FolError::NotRadiallyAnnihilated);
    }
    if !omega.coefficient_gcd().is_constant() {
        return Err(FolError::GcdNotOne);
    }
    if m == 0 {
        return Err(FolError::DegreeMismatch("coefficient degree 0".into()));
    }
    match route {
        DegreeRoute::CoefficientDegree => Ok(m - 1),
        DegreeRoute::TangencyDivisor => {
            let q = omega.degree();
            let nd = omega.ndiff();
            let params = omega.nvars() - nd;
            let tn = q + 1 + params;
            let mut rng = Sampler::new(seed);
            for _ in 0..16 {
                let b = rng.full_rank(nd, q + 1, 5);
                let images: Vec<MultiPoly> = (0..nd)
                    .map(|i| MultiPoly::linear(tn, b.row(i)))
                    .collect();
                let pimg: Vec<MultiPoly> = (0..params).map(|k| MultiPoly::var(tn, q + 1 + k)).collect();
                let pulled = omega.pullback(&images, &pimg, q + 1);
                if pulled.is_zero() {
                    continue;
                }
                let idx: Vec<u8> = (1..=q as u8).collect();
                let y0 = MultiPoly::var(tn, 0);
                let h = pulled.coeff(&idx).div_exact(&y0).ok_or(FolError::DegenerateEmbedding)?;
                let ry = PolyField::radial(tn, q + 1);
                let vol = PolyForm::volume(tn, q + 1);
                let expect = vol.contract(&ry)?.mul_poly(&h);
                if expect != pulled {
                    return Err(FolError::NotRadiallyAnnihilated);
                }
                let d: u32 = h
                    .terms()
                    .map(|(mo, _)| mo.exps()[..q + 1].iter().map(|&e| e as u32).sum::<u32>())
                    .max()
                    .unwrap();
                return Ok(d);
            }
            Err(FolError::DegenerateEmbedding)
        }
    }
}

/// gcd of all coefficients; `1` iff the singular set has codimension ≥ 2.
pub fn singular_divisorial_part(omega: &PolyForm) -> MultiPoly {
    omega.coefficient_gcd()
}
