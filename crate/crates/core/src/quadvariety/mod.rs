//! Computations on the smooth quadric threefold `Q³ ⊂ ℙ⁴`: reduction modulo
//! `q`, restricted-form equivalence, pullbacks along quotient maps,
//! sl₂ symmetric-power actions, and the scripted named examples.

mod context;
mod examples;
mod maps;

pub use context::{symmetric_matrix, QuadricContext, RelationSpace};
pub use examples::{
    affq_build, affq_curves, affq_point, harmonic_point_diagnostic, hyperplane_section_invariant, invariant_hyperplane_sections,
    named_example_report, verify_named_example, AffQBundle, NamedReport, NAMED_EXAMPLES,
};
pub use maps::{pullback_form, target_form, LogDescription, RationalMapData, TargetSpace};

use crate::exactcore::{monomials_of_degree, poly_gcd_many, rank_kernel, Matrix, MultiPoly, Scalar};
use crate::extalg::{PolyField, PolyForm};
use crate::liealg::{exp_nilpotent_at, is_nilpotent, LieError};
use crate::rng::Sampler;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuadError {
    #[error("not a quadratic form in five variables")]
    NotAQuadric,
    #[error("quadric is singular")]
    SingularQuadric,
    #[error("no monomial of q shares no variable with the others")]
    NoDistinguishedMonomial,
    #[error("coefficient degrees do not match")]
    DegreeMismatch,
    #[error("sampling kernel has dimension {0}, expected 1")]
    KernelDimensionUnexpected(usize),
    #[error("solver returned {0} independent solutions, expected 1")]
    SolverDimensionUnexpected(usize),
    #[error("field is neither nilpotent nor diagonal")]
    UnsupportedField,
    #[error("hypersurface is not invariant under the given fields")]
    NotInvariant,
    #[error("residues violate the degree constraint")]
    ResidueConstraintViolated,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// Matrices of the sl₂ action on binary forms `a₀sⁿ + a₁sⁿ⁻¹t + ⋯ + aₙtⁿ`
/// in the plain monomial basis: `E = t∂_s`, `F = s∂_t`, `H = [E, F]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPower {
    pub e: Matrix,
    pub h: Matrix,
    pub f: Matrix,
}

impl SymPower {
    /// Linear fields `v_A = Σ (A x)_i ∂_i`, in the order `(E, H, F)`.
    pub fn fields(&self, nvars: usize) -> [PolyField; 3] {
        [PolyField::linear(&self.e, nvars), PolyField::linear(&self.h, nvars), PolyField::linear(&self.f, nvars)]
    }
}

pub fn sym_power_fields(n: usize) -> SymPower {
    let k = n + 1;
    let mut e = Matrix::zeros(k, k);
    let mut h = Matrix::zeros(k, k);
    let mut f = Matrix::zeros(k, k);
    for i in 0..k {
        h.set(i, i, Scalar::from_int(2 * i as i64 - n as i64));
        if i < n {
            e.set(i + 1, i, Scalar::from_int((n - i) as i64));
        }
        if i > 0 {
            f.set(i - 1, i, Scalar::from_int(i as i64));
        }
    }
    SymPower { e, h, f }
}

fn is_integer_diagonal(m: &Matrix) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| if i == j { m.get(i, i).to_i64().is_some() } else { m.get(i, j).is_zero() }))
}

/// A random element of the group generated by the fields: nilpotent ones are
/// exponentiated exactly, integer diagonal ones are sampled as `diag(λ^{h_ii})`.
fn group_sample(fields: &[Matrix], rng: &mut Sampler) -> Result<Matrix, QuadError> {
    let k = fields[0].rows();
    let mut g = Matrix::identity(k);
    for m in fields {
        let step = if is_nilpotent(m) {
            exp_nilpotent_at(m, &rng.scalar(6))?
        } else if is_integer_diagonal(m) {
            let lam = Scalar::from_ratio(rng.int(2, 5), rng.int(1, 3)) * Scalar::from_int(if rng.int(0, 1) == 0 { 1 } else { -1 });
            let diag: Vec<Scalar> = (0..k)
                .map(|i| {
                    let e = m.get(i, i).to_i64().unwrap();
                    let p = lam.pow(e.unsigned_abs() as u32);
                    if e < 0 {
                        p.inv().unwrap()
                    } else {
                        p
                    }
                })
                .collect();
            Matrix::diagonal(&diag)
        } else {
            return Err(QuadError::UnsupportedField);
        };
        g = &g * &step;
    }
    Ok(g)
}

/// The degree-`degree` hypersurface containing the orbit of `p0` under the
/// group generated by `fields`, when it is unique.
///
/// Returns `None` when no such hypersurface exists and an error when there
/// are several. The result is checked to be semi-invariant under every field.
pub fn invariant_hypersurface(p0: &[Scalar], fields: &[Matrix], degree: u32, seed: u64) -> Result<Option<MultiPoly>, QuadError> {
    let k = p0.len();
    if fields.is_empty() || fields.iter().any(|m| m.rows() != k || !m.is_square()) || degree == 0 {
        return Err(QuadError::UnsupportedField);
    }
    let monos = monomials_of_degree(k, degree);
    let nsamples = monos.len() + 10;
    let mut rows = Vec::with_capacity(nsamples);
    let p = Matrix::from_columns(k, &[p0.to_vec()]);
    for s in 0..nsamples {
        let mut rng = Sampler::fork(seed, s as u64);
        let g = group_sample(fields, &mut rng)?;
        let pt = (&g * &p).column(0);
        rows.push(monos.iter().map(|m| MultiPoly::monomial(m.clone(), Scalar::one()).eval(&pt)).collect());
    }
    let (_, ker) = rank_kernel(&Matrix::from_rows(rows));
    match ker.len() {
        0 => return Ok(None),
        1 => {}
        d => return Err(QuadError::KernelDimensionUnexpected(d)),
    }
    let poly = MultiPoly::from_terms(k, monos.into_iter().zip(ker[0].iter().cloned())).primitive();
    for m in fields {
        let vp = PolyField::linear(m, k).apply(&poly);
        let ok = vp.is_zero() || vp.div_exact(&poly).is_some_and(|c| c.is_constant());
        if !ok {
            return Err(QuadError::NotInvariant);
        }
    }
    Ok(Some(poly))
}

/// A rational curve `(s:t) ↦ (c₀(s,t) : ⋯ : c_N(s,t))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParam {
    comps: Vec<MultiPoly>,
}

impl CurveParam {
    pub fn new(comps: Vec<MultiPoly>) -> Result<Self, QuadError> {
        if comps.is_empty() || comps.iter().all(|c| c.is_zero()) {
            return Err(QuadError::InvalidCurve("all components vanish".into()));
        }
        if comps.iter().any(|c| c.nvars() != 2) {
            return Err(QuadError::InvalidCurve("components must be binary forms".into()));
        }
        let degs: Vec<u32> = comps.iter().filter(|c| !c.is_zero()).map(|c| c.total_degree().unwrap()).collect();
        if comps.iter().any(|c| !c.is_homogeneous()) || degs.iter().any(|&d| d != degs[0]) {
            return Err(QuadError::InvalidCurve("components must share one degree".into()));
        }
        if !poly_gcd_many(&comps).is_some_and(|g| g.is_constant()) {
            return Err(QuadError::InvalidCurve("components have a common factor".into()));
        }
        Ok(CurveParam { comps })
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    /// Precompose with `(s, t) ↦ (a s + b t, c s + d t)`.
    pub fn reparametrize(&self, m: &Matrix) -> Result<CurveParam, QuadError> {
        if m.rows() != 2 || m.cols() != 2 || m.determinant().is_zero() {
            return Err(QuadError::InvalidCurve("reparametrization must be invertible".into()));
        }
        let img: Vec<MultiPoly> = (0..2).map(|i| MultiPoly::linear(2, m.row(i))).collect();
        CurveParam::new(self.comps.iter().map(|c| c.compose(&img)).collect())
    }

    pub fn eval_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.compose(&self.comps)
    }
}

/// Is the curve contained in the singular scheme of the foliation on `Q`?
///
/// A point of `Q` is singular when `ω` restricted to `TQ` vanishes, that is
/// when `ω ∧ dq = 0` there. Unlike the coefficients of `ω` themselves, this
/// does not depend on the representative of `ω` modulo forms vanishing on `Q`.
pub fn curve_in_singular_scheme(omega: &PolyForm, curve: &CurveParam, ctx: &QuadricContext) -> bool {
    if curve.components().len() != 5 || !curve.eval_poly(ctx.quadric()).is_zero() {
        return false;
    }
    let w = ctx.reduce_form(omega);
    let t = w.wedge(&ctx.dq()).unwrap();
    let ok = t.terms().all(|(_, c)| curve.eval_poly(c).is_zero());
    ok
}
