use crate::exactcore::{MultiPoly, Scalar};
use crate::extalg::PolyForm;
use crate::foliation::construct::log_form_unchecked;

use super::{QuadError, QuadricContext};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetSpace {
    Projective(usize),
    /// `ℙ^a × ℙ^b`, coordinates of the first factor first.
    Product(usize, usize),
    Weighted(Vec<u32>),
}

/// A rational map given by homogeneous components, grouped by target factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMapData {
    source_nvars: usize,
    target: TargetSpace,
    components: Vec<MultiPoly>,
}

impl RationalMapData {
    pub fn new(target: TargetSpace, components: Vec<MultiPoly>) -> Result<Self, QuadError> {
        let source_nvars = components.first().map(|c| c.nvars()).ok_or_else(|| QuadError::InvalidMap("no components".into()))?;
        let expected = match &target {
            TargetSpace::Projective(a) => a + 1,
            TargetSpace::Product(a, b) => a + b + 2,
            TargetSpace::Weighted(w) => w.len(),
        };
        if components.len() != expected || components.iter().any(|c| c.nvars() != source_nvars) {
            return Err(QuadError::InvalidMap(format!("expected {expected} components")));
        }
        let map = RationalMapData { source_nvars, target, components };
        for (f, idx) in map.factors().iter().enumerate() {
            let mut unit = None;
            for &i in idx {
                let c = &map.components[i];
                if c.is_zero() {
                    continue;
                }
                let d = c.total_degree().filter(|_| c.is_homogeneous()).ok_or_else(|| QuadError::InvalidMap("inhomogeneous component".into()))?;
                let w = map.weight(i);
                if d % w != 0 || *unit.get_or_insert(d / w) != d / w {
                    return Err(QuadError::InvalidMap(format!("components of factor {f} have inconsistent degrees")));
                }
            }
            if unit.is_none() {
                return Err(QuadError::InvalidMap(format!("factor {f} vanishes identically")));
            }
        }
        Ok(map)
    }

    pub fn source_nvars(&self) -> usize {
        self.source_nvars
    }

    pub fn target(&self) -> &TargetSpace {
        &self.target
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn target_nvars(&self) -> usize {
        self.components.len()
    }

    /// Target coordinate indices of each factor.
    pub fn factors(&self) -> Vec<Vec<usize>> {
        match &self.target {
            TargetSpace::Product(a, b) => vec![(0..=*a).collect(), (a + 1..a + b + 2).collect()],
            _ => vec![(0..self.components.len()).collect()],
        }
    }

    fn weight(&self, i: usize) -> u32 {
        match &self.target {
            TargetSpace::Weighted(w) => w[i],
            _ => 1,
        }
    }

    /// Weighted degree of a target polynomial in the variables of one factor.
    fn factor_degree(&self, p: &MultiPoly, factor: &[usize]) -> Option<u32> {
        let mut deg = None;
        for (m, _) in p.terms() {
            let d: u32 = factor.iter().map(|&i| m.exps()[i] as u32 * self.weight(i)).sum();
            if *deg.get_or_insert(d) != d {
                return None;
            }
        }
        deg
    }
}

/// `η = Σ rᵢ dPᵢ/Pᵢ` with polar polynomials in the target coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDescription {
    pub terms: Vec<(Scalar, MultiPoly)>,
}

impl LogDescription {
    pub fn new(terms: Vec<(Scalar, MultiPoly)>) -> Self {
        LogDescription { terms }
    }

    fn check(&self, map: &RationalMapData) -> Result<(), QuadError> {
        if self.terms.len() < 2 || self.terms.iter().any(|(_, p)| p.is_zero() || p.nvars() != map.target_nvars()) {
            return Err(QuadError::InvalidMap("polar polynomials must be nonzero target polynomials".into()));
        }
        for factor in map.factors() {
            let mut s = Scalar::zero();
            for (r, p) in &self.terms {
                let d = map.factor_degree(p, &factor).ok_or(QuadError::ResidueConstraintViolated)?;
                s += &(r * &Scalar::from_int(d as i64));
            }
            if !s.is_zero() {
                return Err(QuadError::ResidueConstraintViolated);
            }
        }
        Ok(())
    }
}

/// The cleared form `Σ rᵢ (∏_{j≠i} Pⱼ) dPᵢ` in the target coordinates.
pub fn target_form(map: &RationalMapData, eta: &LogDescription) -> Result<PolyForm, QuadError> {
    eta.check(map)?;
    let (r, p): (Vec<Scalar>, Vec<MultiPoly>) = eta.terms.iter().cloned().unzip();
    Ok(log_form_unchecked(&r, &p, map.target_nvars()))
}

/// Cleared pullback `Σ rᵢ (∏_{j≠i} Fⱼ) dFᵢ` with `Fᵢ = Pᵢ ∘ Φ`; components,
/// the `Fᵢ` and the result are reduced modulo the quadric when one is given.
pub fn pullback_form(map: &RationalMapData, eta: &LogDescription, ctx: Option<&QuadricContext>) -> Result<PolyForm, QuadError> {
    eta.check(map)?;
    let red = |p: &MultiPoly| ctx.map_or_else(|| p.clone(), |c| c.reduce(p));
    let comps: Vec<MultiPoly> = map.components.iter().map(red).collect();
    if comps.iter().all(|c| c.is_zero()) {
        return Err(QuadError::InvalidMap("all components vanish on the quadric".into()));
    }
    let r: Vec<Scalar> = eta.terms.iter().map(|(r, _)| r.clone()).collect();
    let f: Vec<MultiPoly> = eta.terms.iter().map(|(_, p)| red(&p.compose(&comps))).collect();
    if f.iter().any(|x| x.is_zero()) {
        return Err(QuadError::InvalidMap("a polar pulls back to zero".into()));
    }
    let w = log_form_unchecked(&r, &f, map.source_nvars);
    Ok(match ctx {
        Some(c) => c.reduce_form(&w),
        None => w,
    })
}
