use crate::exactcore::{rank_kernel, row_space, Matrix, MultiPoly, Scalar};
use crate::extalg::{Coords, PolyField, PolyForm};

use super::solve::{annihilating_constant_fields, map_component_solve};
use super::{FolError, FoliationSpec};

/// `dω ∝ dL₁∧⋯∧dL_q∧dQ`: a rational map to ℙ(1,…,1,2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case1 {
    pub linear: Vec<MultiPoly>,
    pub quadric: MultiPoly,
    /// `dω = scalar · dL₁∧⋯∧dL_q∧dQ`
    pub scalar: Scalar,
}

/// `dω = i_X(dℓ_0∧⋯∧dℓ_{q+1})` with `X` linear: a linear pullback of the
/// foliation induced by a vector field on ℙ^{q+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2 {
    pub coordinates: Vec<MultiPoly>,
    /// Matrix of the linear field `X` in the ambient coordinates.
    pub field: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub degree: u32,
    pub codim: usize,
    pub essential_variables: usize,
    /// Degree 0: the essential linear forms `L_0, …, L_q`.
    pub linear_projection: Option<Vec<MultiPoly>>,
    pub case1: Option<Case1>,
    pub case2: Option<Case2>,
}

/// Linear forms vanishing on the given constant vectors, as a reduced basis.
fn annihilator(kernel: &[Vec<Scalar>], nd: usize, nv: usize) -> Vec<MultiPoly> {
    let basis: Vec<Vec<Scalar>> = if kernel.is_empty() {
        (0..nd).map(|i| (0..nd).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    } else {
        row_space(&rank_kernel(&Matrix::from_rows(kernel.to_vec())).1, nd)
    };
    basis.iter().map(|v| MultiPoly::linear(nv, v)).collect()
}

fn wedge_of_differentials(polys: &[MultiPoly], nv: usize, nd: usize) -> PolyForm {
    let mut w = PolyForm::function(MultiPoly::one(nv), nd);
    for p in polys {
        w = w.wedge(&PolyForm::function(p.clone(), nd).d()).unwrap();
    }
    w
}

/// Classify a foliation of degree 0 or 1.
pub fn classify_low_degree(spec: &FoliationSpec) -> Result<Classification, FolError> {
    let w = spec.form();
    let q = spec.codim();
    let nd = w.ndiff();
    let nv = w.nvars();
    match spec.degree() {
        0 => {
            let k = annihilating_constant_fields(w)?;
            let forms = annihilator(&k, nd, nv);
            if forms.len() != q + 1 {
                return Err(FolError::ClassificationIncomplete(format!(
                    "expected {} essential linear forms, found {}",
                    q + 1,
                    forms.len()
                )));
            }
            let r = PolyField::radial(nv, nd);
            let model = wedge_of_differentials(&forms, nv, nd).contract(&r)?;
            if w.proportional_to(&model).is_none() {
                return Err(FolError::ClassificationIncomplete("form is not i_R(dL_0∧⋯∧dL_q)".into()));
            }
            Ok(Classification {
                degree: 0,
                codim: q,
                essential_variables: nd - k.len(),
                linear_projection: Some(forms),
                case1: None,
                case2: None,
            })
        }
        1 => {
            let dw = w.d();
            let k = annihilating_constant_fields(&dw)?;
            let e = nd - k.len();
            let case2 = if e <= q + 2 { solve_case2(&dw, &k, q, nv, nd)? } else { None };
            let case1 = solve_case1(w, &dw, q, nv)?;
            if case1.is_none() && case2.is_none() {
                return Err(FolError::ClassificationIncomplete(format!(
                    "neither normal form found (essential variables of dω: {e})"
                )));
            }
            Ok(Classification { degree: 1, codim: q, essential_variables: e, linear_projection: None, case1, case2 })
        }
        _ => Err(FolError::NotLowDegree),
    }
}

fn solve_case2(dw: &PolyForm, k: &[Vec<Scalar>], q: usize, nv: usize, nd: usize) -> Result<Option<Case2>, FolError> {
    let mut ell = annihilator(k, nd, nv);
    // pad with coordinates until there are q+2 forms
    let mut i = 0;
    while ell.len() < q + 2 && i < nd {
        let mut cand = ell.clone();
        cand.push(MultiPoly::var(nv, i));
        let rows: Vec<Vec<Scalar>> = cand
            .iter()
            .map(|p| (0..nd).map(|j| p.coeff(&crate::exactcore::Mono::var(nv, j))).collect())
            .collect();
        if Matrix::from_rows(rows).rank() == cand.len() {
            ell = cand;
        }
        i += 1;
    }
    let vol = wedge_of_differentials(&ell, nv, nd);
    // unknown X = Σ X_ij x_j ∂_i
    let mut imgs = Vec::new();
    for a in 0..nd {
        for b in 0..nd {
            let mut comps = vec![MultiPoly::zero(nv); nd];
            comps[a] = MultiPoly::var(nv, b);
            imgs.push(vol.contract(&PolyField::new(comps))?);
        }
    }
    let mut c = Coords::new();
    c.register(dw);
    for f in &imgs {
        c.register(f);
    }
    let mut m = Matrix::zeros(c.len(), imgs.len());
    for (j, f) in imgs.iter().enumerate() {
        for (i, s) in c.vector(f).into_iter().enumerate() {
            m.set(i, j, s);
        }
    }
    Ok(m.solve(&c.vector(dw)).map(|x| Case2 { coordinates: ell, field: Matrix::from_vec(nd, nd, x) }))
}

fn solve_case1(w: &PolyForm, dw: &PolyForm, q: usize, nv: usize) -> Result<Option<Case1>, FolError> {
    let nd = w.ndiff();
    let lin = map_component_solve(w, 1);
    if lin.len() != q {
        return Ok(None);
    }
    let quad = map_component_solve(w, 2);
    let mut products = Vec::new();
    for i in 0..q {
        for j in i..q {
            products.push(&lin[i] * &lin[j]);
        }
    }
    let mut c = Coords::new();
    for p in quad.iter().chain(&products) {
        c.register_poly(p);
    }
    let prod_rows: Vec<Vec<Scalar>> = products.iter().map(|p| c.poly_vector(p)).collect();
    let base_rank = if prod_rows.is_empty() { 0 } else { Matrix::from_rows(prod_rows.clone()).rank() };
    let mut all = prod_rows.clone();
    all.extend(quad.iter().map(|p| c.poly_vector(p)));
    if all.is_empty() || Matrix::from_rows(all).rank() != base_rank + 1 {
        return Ok(None);
    }
    // first quadratic solution outside the span of the products
    let qpoly = quad
        .iter()
        .find(|p| {
            let mut rows = prod_rows.clone();
            rows.push(c.poly_vector(p));
            Matrix::from_rows(rows).rank() > base_rank
        })
        .cloned()
        .unwrap();
    let mut factors = lin.clone();
    factors.push(qpoly.clone());
    let model = wedge_of_differentials(&factors, nv, nd);
    Ok(dw.proportional_to(&model).filter(|s| !s.is_zero()).map(|scalar| Case1 { linear: lin, quadric: qpoly, scalar }))
}
