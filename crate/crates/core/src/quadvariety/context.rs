use crate::exactcore::{monomials_of_degree, rref, Matrix, Mono, MultiPoly, Rref, Scalar};
use crate::extalg::{Coords, PolyField, PolyForm};

use super::QuadError;

/// The smooth quadric `{q = 0} ⊂ ℙ⁴` with its rewriting rule.
///
/// Reduction eliminates the distinguished monomial `m` of `q`, chosen as the
/// graded-lex smallest monomial of `q` that shares no variable with the other
/// monomials of `q`. Rewriting `m ↦ -(q - c_m m)/c_m` then strictly lowers the
/// exponents of the variables of `m`, so it terminates, and the normal form
/// (no monomial divisible by `m`) is unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricContext {
    q: MultiPoly,
    lead: Mono,
    /// `-(q - c_m m)/c_m`
    rule: MultiPoly,
    qhat: Matrix,
}

impl QuadricContext {
    pub fn new(q: MultiPoly) -> Result<Self, QuadError> {
        let lead = q
            .terms()
            .map(|(m, _)| m.clone())
            .find(|m| admissible_lead(&q, m))
            .ok_or(QuadError::NoDistinguishedMonomial)?;
        QuadricContext::with_distinguished(q, lead)
    }

    /// Use a specific monomial of `q` (sharing no variable with the others) for rewriting.
    pub fn with_distinguished(q: MultiPoly, lead: Mono) -> Result<Self, QuadError> {
        if q.nvars() != 5 || !q.is_homogeneous() || q.total_degree() != Some(2) {
            return Err(QuadError::NotAQuadric);
        }
        let qhat = symmetric_matrix(&q);
        if qhat.rank() != 5 {
            return Err(QuadError::SingularQuadric);
        }
        if !admissible_lead(&q, &lead) {
            return Err(QuadError::NoDistinguishedMonomial);
        }
        let c = q.coeff(&lead);
        let mut rest = q.clone();
        rest.add_term(lead.clone(), &-&c);
        let rule = rest.scale(&-c.inv().unwrap());
        Ok(QuadricContext { q, lead, rule, qhat })
    }

    pub fn quadric(&self) -> &MultiPoly {
        &self.q
    }

    pub fn distinguished_monomial(&self) -> &Mono {
        &self.lead
    }

    /// Symmetric matrix with `q = xᵀ Q̂ x`.
    pub fn matrix(&self) -> &Matrix {
        &self.qhat
    }

    /// Normal form modulo `(q)`.
    pub fn reduce(&self, p: &MultiPoly) -> MultiPoly {
        let n = p.nvars();
        let rule = if n == 5 { self.rule.clone() } else { self.rule.extend_vars(n) };
        let lead = if n == 5 { self.lead.clone() } else { self.lead.extend(n) };
        let mut out = MultiPoly::zero(n);
        let mut cur = p.clone();
        while !cur.is_zero() {
            let mut next = MultiPoly::zero(n);
            for (m, c) in cur.terms() {
                if lead.divides(m) {
                    let u = lead.quotient_of(m);
                    for (rm, rc) in rule.terms() {
                        next.add_term(rm.mul(&u), &(c * rc));
                    }
                } else {
                    out.add_term(m.clone(), c);
                }
            }
            cur = next;
        }
        out
    }

    pub fn reduce_form(&self, w: &PolyForm) -> PolyForm {
        w.map_coeffs(|c| self.reduce(c))
    }

    pub fn is_zero_mod(&self, p: &MultiPoly) -> bool {
        self.reduce(p).is_zero()
    }

    /// Monomials of degree `d` in normal form (not divisible by the distinguished monomial).
    pub fn reduced_monomials(&self, d: u32) -> Vec<Mono> {
        monomials_of_degree(5, d).into_iter().filter(|m| !self.lead.divides(m)).collect()
    }

    /// `h⁰(Q, O(d))`.
    pub fn h0(&self, d: u32) -> usize {
        self.reduced_monomials(d).len()
    }

    pub fn dq(&self) -> PolyForm {
        PolyForm::function(self.q.clone(), 5).d()
    }

    /// Does the linear field preserve the quadric (`v(q) ∈ (q)`)?
    pub fn preserves(&self, v: &PolyField) -> bool {
        let vq = v.apply(&self.q);
        vq.div_exact(&self.q).is_some() || vq.is_zero()
    }

    /// Radially annihilated 1-forms of the given twist that vanish on the quadric.
    ///
    /// These are `2qα − i_R(α)·dq` for α with coefficients of degree `twist − 3`.
    /// At twist 3 (α constant) this is `span{2q·dg − g·dq : g linear}`; in general
    /// it also contains `q·(admissible forms of twist − 2)`.
    pub fn relations(&self, twist: u32) -> Vec<PolyForm> {
        if twist < 3 {
            return vec![];
        }
        let r = PolyField::radial(5, 5);
        let dq = self.dq();
        let two_q = self.q.scale(&Scalar::from_int(2));
        let mut out = Vec::new();
        for m in monomials_of_degree(5, twist - 3) {
            for i in 0..5 {
                let a = PolyForm::dx(5, 5, i).mul_poly(&MultiPoly::monomial(m.clone(), Scalar::one()));
                let ira = a.contract(&r).unwrap().as_function();
                out.push(&a.mul_poly(&two_q) - &dq.mul_poly(&ira));
            }
        }
        out
    }

    /// Is the 3-form `ω ∧ dω` zero on the quadric, i.e. `ω∧dω∧dq ≡ 0 mod q`?
    pub fn integrable_on(&self, w: &PolyForm) -> bool {
        let t = w.wedge(&w.d()).unwrap().wedge(&self.dq()).unwrap();
        self.reduce_form(&t).is_zero()
    }

    /// `ω₁ ≡ ω₂` as sections on the quadric.
    pub fn restricted_equal(&self, a: &PolyForm, b: &PolyForm) -> Result<bool, QuadError> {
        if a.degree() != 1 || b.degree() != 1 {
            return Err(QuadError::DegreeMismatch);
        }
        let diff = a - b;
        if diff.is_zero() {
            return Ok(true);
        }
        let da = a.coeff_degree();
        let db = b.coeff_degree();
        if da.is_some() && db.is_some() && da != db {
            return Err(QuadError::DegreeMismatch);
        }
        let twist = diff.coeff_degree().ok_or(QuadError::DegreeMismatch)? + 1;
        let rel = RelationSpace::new(self, twist, std::slice::from_ref(&diff));
        Ok(rel.reduce(&diff).is_zero())
    }
}

fn admissible_lead(q: &MultiPoly, m: &Mono) -> bool {
    !q.coeff(m).is_zero()
        && q.terms().all(|(o, _)| o == m || m.exps().iter().zip(o.exps()).all(|(a, b)| *a == 0 || *b == 0))
}

/// Symmetric matrix `Q̂` with `q = xᵀ Q̂ x`.
pub fn symmetric_matrix(q: &MultiPoly) -> Matrix {
    let n = q.nvars();
    let mut m = Matrix::zeros(n, n);
    let half = Scalar::from_ratio(1, 2);
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = mono.exps().iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect();
        if idx.len() != 2 {
            continue;
        }
        if idx[0] == idx[1] {
            m.set(idx[0], idx[0], c.clone());
        } else {
            m.set(idx[0], idx[1], c * &half);
            m.set(idx[1], idx[0], c * &half);
        }
    }
    m
}

/// Row space of the relations at a twist, in reduced echelon form, used to
/// project forms onto a fixed complement (quotient coordinates).
pub struct RelationSpace {
    coords: Coords,
    rref: Option<Rref>,
}

impl RelationSpace {
    /// `extra` are forms whose coordinates must also be representable.
    pub fn new(ctx: &QuadricContext, twist: u32, extra: &[PolyForm]) -> Self {
        RelationSpace::from_relations(&ctx.relations(twist), extra)
    }

    pub fn from_relations(rels: &[PolyForm], extra: &[PolyForm]) -> Self {
        let mut coords = Coords::new();
        for r in rels {
            coords.register(r);
        }
        for e in extra {
            coords.register(e);
        }
        let rref = if rels.is_empty() {
            None
        } else {
            Some(rref(&Matrix::from_rows(rels.iter().map(|r| coords.vector(r)).collect())))
        };
        RelationSpace { coords, rref }
    }

    /// An empty relation space (plain projective space).
    pub fn trivial(extra: &[PolyForm]) -> Self {
        RelationSpace::from_relations(&[], extra)
    }

    pub fn rank(&self) -> usize {
        self.rref.as_ref().map(|r| r.pivots.len()).unwrap_or(0)
    }

    pub fn register(&mut self, w: &PolyForm) {
        let before = self.coords.len();
        self.coords.register(w);
        let after = self.coords.len();
        if after > before {
            if let Some(r) = &mut self.rref {
                // new keys never occur in the relations: pad with zero columns
                let mut m = Matrix::zeros(r.matrix.rows(), after);
                for i in 0..r.matrix.rows() {
                    for j in 0..before {
                        m.set(i, j, r.matrix.get(i, j).clone());
                    }
                }
                r.matrix = m;
            }
        }
    }

    /// Coordinates of `w` after subtracting its component along the relations.
    pub fn reduced_vector(&self, w: &PolyForm) -> Vec<Scalar> {
        let mut v = self.coords.vector(w);
        if let Some(r) = &self.rref {
            for (i, &p) in r.pivots.iter().enumerate() {
                if v[p].is_zero() {
                    continue;
                }
                let f = v[p].clone();
                for (j, x) in r.matrix.row(i).iter().enumerate() {
                    if !x.is_zero() {
                        v[j] = &v[j] - &(&f * x);
                    }
                }
            }
        }
        v
    }

    /// Form with the given coordinate vector.
    pub fn form_of(&self, v: &[Scalar], nvars: usize, ndiff: usize, degree: usize) -> PolyForm {
        self.coords.form(v, nvars, ndiff, degree)
    }

    /// Normal form of `w` modulo the relations.
    pub fn reduce(&self, w: &PolyForm) -> PolyForm {
        let v = self.reduced_vector(w);
        self.coords.form(&v, w.nvars(), w.ndiff(), w.degree())
    }

    /// Rank of the given forms in the quotient.
    pub fn quotient_rank(&mut self, forms: &[PolyForm]) -> usize {
        for f in forms {
            self.register(f);
        }
        let rows: Vec<Vec<Scalar>> = forms.iter().map(|f| self.reduced_vector(f)).collect();
        if rows.is_empty() || self.coords.is_empty() {
            return 0;
        }
        Matrix::from_rows(rows).rank()
    }
}
