use crate::exactcore::{monomials_of_degree, rank_kernel, row_space, Matrix, MultiPoly, Scalar};
use crate::extalg::{Coords, PolyField, PolyForm};
use crate::quadvariety::{QuadricContext, RelationSpace};

use super::FolError;

/// Basis of the 1-forms `ω` with coefficients homogeneous of degree
/// `coeffdeg`, `i_R ω = 0` and `i_v ω = 0` for every field `v` (modulo the
/// quadric when a context is given).
///
/// With a context, solutions are taken modulo the forms vanishing on the
/// quadric; the returned basis consists of normal forms for that quotient.
pub fn tangent_form_solve(fields: &[PolyField], coeffdeg: u32, ctx: Option<&QuadricContext>) -> Vec<PolyForm> {
    let nd = fields.first().map(|f| f.ndiff()).unwrap_or(ctx.map(|_| 5).unwrap_or(0));
    let nv = fields.first().map(|f| f.nvars()).unwrap_or(nd);
    let monos = monomials_of_degree(nd, coeffdeg);
    let mut unknowns = Vec::new();
    for i in 0..nd {
        for m in &monos {
            unknowns.push(PolyForm::dx(nv, nd, i).mul_poly(&MultiPoly::monomial(m.extend(nv), Scalar::one())));
        }
    }
    let r = PolyField::radial(nv, nd);
    // images of every unknown under all the linear conditions
    let mut images: Vec<Vec<MultiPoly>> = Vec::with_capacity(unknowns.len());
    for u in &unknowns {
        let mut row = vec![u.contract(&r).unwrap().as_function()];
        for v in fields {
            let p = u.contract(v).unwrap().as_function();
            row.push(match ctx {
                Some(c) => c.reduce(&p),
                None => p,
            });
        }
        images.push(row);
    }
    let mut coords: Vec<Coords> = vec![Coords::new(); fields.len() + 1];
    for row in &images {
        for (k, p) in row.iter().enumerate() {
            coords[k].register_poly(p);
        }
    }
    let total: usize = coords.iter().map(|c| c.len()).sum();
    let mut m = Matrix::zeros(total, unknowns.len());
    for (j, row) in images.iter().enumerate() {
        let mut off = 0;
        for (k, p) in row.iter().enumerate() {
            for (i, s) in coords[k].poly_vector(p).into_iter().enumerate() {
                if !s.is_zero() {
                    m.set(off + i, j, s);
                }
            }
            off += coords[k].len();
        }
    }
    let (_, ker) = rank_kernel(&m);
    let sols: Vec<PolyForm> = ker
        .iter()
        .map(|v| {
            let mut w = PolyForm::zero(nv, nd, 1);
            for (c, u) in v.iter().zip(&unknowns) {
                if !c.is_zero() {
                    w = &w + &u.scale(c);
                }
            }
            w
        })
        .collect();
    match ctx {
        None => sols,
        Some(c) => {
            let mut rel = RelationSpace::new(c, coeffdeg + 1, &sols);
            for s in &sols {
                rel.register(s);
            }
            let reduced: Vec<Vec<Scalar>> = sols.iter().map(|s| rel.reduced_vector(s)).collect();
            let basis = row_space(&reduced, reduced.first().map(|r| r.len()).unwrap_or(0));
            basis.iter().map(|v| rel.form_of(v, nv, nd, 1)).collect()
        }
    }
}

/// `h·dω = dh∧ω`, i.e. `d(ω/h) = 0`.
pub fn closed_one_form_check(omega: &PolyForm, h: &MultiPoly) -> Result<bool, FolError> {
    if h.is_zero() {
        return Err(FolError::ZeroDenominator);
    }
    let dh = PolyForm::function(h.clone(), omega.ndiff()).d();
    Ok(omega.d().mul_poly(h) == dh.wedge(omega)?)
}

/// `θ = η∧ω + m·dω`.
pub fn invariante_theta(omega: &PolyForm, eta: &PolyForm, m: i64) -> Result<PolyForm, FolError> {
    Ok(&eta.wedge(omega)? + &omega.d().scale(&Scalar::from_int(m)))
}

/// Cleared variant: `η = η_c / h` with polynomial `η_c`. Returns
/// `(η_c∧ω + m·h·dω)/h` when the division is exact, `None` otherwise.
pub fn invariante_theta_cleared(omega: &PolyForm, eta_c: &PolyForm, h: &MultiPoly, m: i64) -> Result<Option<PolyForm>, FolError> {
    if h.is_zero() {
        return Err(FolError::ZeroDenominator);
    }
    let num = &eta_c.wedge(omega)? + &omega.d().mul_poly(&h.scale(&Scalar::from_int(m)));
    Ok(num.div_poly(h))
}

/// Basis of `{P homogeneous of degree d : dP ∧ dω = 0}` in reduced echelon
/// form with respect to descending graded-lex order.
pub fn map_component_solve(omega: &PolyForm, d: u32) -> Vec<MultiPoly> {
    let nd = omega.ndiff();
    let nv = omega.nvars();
    let monos = monomials_of_degree(nd, d);
    let dw = omega.d();
    let images: Vec<PolyForm> = monos
        .iter()
        .map(|m| PolyForm::function(MultiPoly::monomial(m.extend(nv), Scalar::one()), nd).d().wedge(&dw).unwrap())
        .collect();
    let mut c = Coords::new();
    for f in &images {
        c.register(f);
    }
    let mut mat = Matrix::zeros(c.len(), monos.len());
    for (j, f) in images.iter().enumerate() {
        for (i, s) in c.vector(f).into_iter().enumerate() {
            mat.set(i, j, s);
        }
    }
    let (_, ker) = rank_kernel(&mat);
    let basis = row_space(&ker, monos.len());
    basis
        .iter()
        .map(|v| MultiPoly::from_terms(nv, monos.iter().zip(v).map(|(m, s)| (m.extend(nv), s.clone()))))
        .collect()
}

/// Number of variables a form really depends on: `(n+1) − dim` of the
/// constant fields `v` with `i_v a = 0` and `i_v da = 0`.
pub fn essential_variables(a: &PolyForm) -> Result<usize, FolError> {
    Ok(a.ndiff() - annihilating_constant_fields(a)?.len())
}

/// Basis of constant fields `v` with `i_v a = 0` and `i_v da = 0`.
pub(crate) fn annihilating_constant_fields(a: &PolyForm) -> Result<Vec<Vec<Scalar>>, FolError> {
    if a.is_zero() {
        return Err(FolError::ZeroForm);
    }
    let nd = a.ndiff();
    let nv = a.nvars();
    let da = a.d();
    let mut imgs: Vec<(PolyForm, PolyForm)> = Vec::new();
    for i in 0..nd {
        let v = PolyField::coordinate(nv, nd, i);
        let x = if a.degree() > 0 { a.contract(&v)? } else { PolyForm::zero(nv, nd, 0) };
        let y = if da.is_zero() { PolyForm::zero(nv, nd, 0) } else { da.contract(&v)? };
        imgs.push((x, y));
    }
    let mut c1 = Coords::new();
    let mut c2 = Coords::new();
    for (x, y) in &imgs {
        c1.register(x);
        c2.register(y);
    }
    let mut m = Matrix::zeros(c1.len() + c2.len(), nd);
    for (j, (x, y)) in imgs.iter().enumerate() {
        for (i, s) in c1.vector(x).into_iter().chain(c2.vector(y)).enumerate() {
            m.set(i, j, s);
        }
    }
    Ok(rank_kernel(&m).1)
}
