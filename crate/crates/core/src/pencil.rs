//! Pencils `(f^p : g^q)`, their multiple fibers, absolute factor counts of
//! members, and Halphen triples.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::exactcore::{discriminant, poly_gcd, squarefree_part, Matrix, Mono, MultiPoly, Scalar};
use crate::extalg::PolyForm;
use crate::rng::Sampler;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("pencil invariant violated: {0}")]
    InvariantViolation(String),
    #[error("could not find a generic line")]
    DegenerateLine,
    #[error("plane sections disagree: {0} vs {1}")]
    PlaneDisagreement(usize, usize),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("entry {0} out of range")]
    EntryOutOfRange(i64),
    #[error("F^p + G^q + H^r is not zero")]
    RelationViolated,
}

/// The pencil spanned by `f^p` and `g^q`. Member `(α:β)` is `α f^p + β g^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    f: MultiPoly,
    g: MultiPoly,
    p: u32,
    q: u32,
}

impl Pencil {
    pub fn new(f: MultiPoly, g: MultiPoly, p: u32, q: u32) -> Result<Self, PencilError> {
        let bad = |s: &str| Err(PencilError::InvariantViolation(s.into()));
        if p == 0 || q == 0 || p.gcd(&q) != 1 {
            return bad("p and q must be coprime positive integers");
        }
        if f.nvars() != g.nvars() || f.is_constant() || g.is_constant() || !f.is_homogeneous() || !g.is_homogeneous() {
            return bad("f and g must be nonconstant homogeneous polynomials in the same variables");
        }
        if p * f.total_degree().unwrap() != q * g.total_degree().unwrap() {
            return bad("p·deg f must equal q·deg g");
        }
        if !poly_gcd(&f, &g).is_constant() {
            return bad("f and g share a factor");
        }
        Ok(Pencil { f, g, p, q })
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    pub fn exponents(&self) -> (u32, u32) {
        (self.p, self.q)
    }

    pub fn nvars(&self) -> usize {
        self.f.nvars()
    }

    pub fn member_degree(&self) -> u32 {
        self.p * self.f.total_degree().unwrap()
    }

    pub fn member(&self, alpha: &Scalar, beta: &Scalar) -> MultiPoly {
        &self.f.pow(self.p).scale(alpha) + &self.g.pow(self.q).scale(beta)
    }
}

/// `p·g·df − q·f·dg`, the cleared numerator of `d(f^p/g^q)`.
pub fn pencil_form(pc: &Pencil) -> PolyForm {
    let n = pc.nvars();
    let df = PolyForm::function(pc.f.clone(), n).d();
    let dg = PolyForm::function(pc.g.clone(), n).d();
    let a = df.mul_poly(&pc.g.scale(&Scalar::from_int(pc.p as i64)));
    let b = dg.mul_poly(&pc.f.scale(&Scalar::from_int(pc.q as i64)));
    &a - &b
}

pub fn is_non_reduced(member: &MultiPoly) -> Result<bool, PencilError> {
    if member.is_zero() {
        return Err(PencilError::ZeroPolynomial);
    }
    let s = squarefree_part(member).map_err(|_| PencilError::ZeroPolynomial)?;
    Ok(s.total_degree() != member.total_degree())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberBounds {
    pub lower: usize,
    pub upper: usize,
    /// Members `(α:β)` verified to be non-reduced.
    pub witnesses: Vec<(Scalar, Scalar)>,
}

const LINE_TRIES: usize = 16;

/// Bounds on the number of non-reduced members of the pencil.
///
/// Along a line `x = P + tQ` the member `f^p − c·g^q` is a polynomial in `t`
/// whose discriminant is a polynomial in `c`. Every non-reduced member makes
/// it vanish on every line, while spurious roots (tangencies, the value of `c`
/// where the degree in `t` drops) move with the line and disappear in the gcd.
pub fn multiple_fiber_bounds(pc: &Pencil, lines: usize, seed: u64) -> Result<FiberBounds, PencilError> {
    if lines < 2 {
        return Err(PencilError::InvariantViolation("at least two lines are needed".into()));
    }
    let n = pc.nvars();
    let (t, c) = (0, 1);
    let mut acc: Option<MultiPoly> = None;
    let mut used = 0;
    let mut attempt = 0u64;
    while used < lines {
        if attempt as usize >= lines * LINE_TRIES {
            return Err(PencilError::DegenerateLine);
        }
        let mut rng = Sampler::fork(seed, attempt);
        attempt += 1;
        let base = rng.scalars(n, 9);
        let dir = rng.scalars(n, 9);
        if pc.f.eval(&dir).is_zero() || pc.g.eval(&dir).is_zero() {
            continue;
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|i| &MultiPoly::constant(2, base[i].clone()) + &MultiPoly::var(2, t).scale(&dir[i]))
            .collect();
        let fl = pc.f.compose(&images).pow(pc.p);
        let gl = pc.g.compose(&images).pow(pc.q);
        let m = &fl - &(&gl * &MultiPoly::var(2, c));
        let disc = discriminant(&m, t).map_err(|_| PencilError::DegenerateLine)?;
        if disc.is_zero() {
            return Err(PencilError::InvariantViolation("the generic member is not reduced".into()));
        }
        acc = Some(match acc {
            None => disc,
            Some(a) => poly_gcd(&a, &disc),
        });
        used += 1;
    }
    let mut common = squarefree_part(&acc.unwrap()).map_err(|_| PencilError::ZeroPolynomial)?;
    let cv = MultiPoly::var(2, c);
    while let Some(r) = common.div_exact(&cv).filter(|_| !common.is_constant()) {
        common = r;
    }

    let one = Scalar::one();
    let zero = Scalar::zero();
    let mut witnesses = Vec::new();
    let mut upper = common.degree_in(c) as usize;
    for (a, b) in [(&one, &zero), (&zero, &one)] {
        if is_non_reduced(&pc.member(a, b))? {
            witnesses.push((a.clone(), b.clone()));
            upper += 1;
        }
    }
    let coeffs: Vec<Scalar> = common.coefficients_in(c).iter().map(|k| k.constant_value().unwrap_or_else(Scalar::zero)).collect();
    for root in rational_roots(&coeffs) {
        let beta = -root;
        if is_non_reduced(&pc.member(&one, &beta))? {
            witnesses.push((one.clone(), beta));
        }
    }
    Ok(FiberBounds { lower: witnesses.len(), upper, witnesses })
}

/// Largest integer whose divisors are enumerated when searching rational roots.
const DIVISOR_LIMIT: u64 = 1 << 40;

/// Nonzero rational roots of `Σ a_k c^k` with rational coefficients, by the
/// rational root theorem. Candidates are only enumerated while the extreme
/// coefficients stay below [`DIVISOR_LIMIT`]; above it only linear
/// polynomials are solved, so the result may be incomplete (the caller uses
/// it for a lower bound only).
fn rational_roots(a: &[Scalar]) -> Vec<Scalar> {
    let deg = a.iter().rposition(|x| !x.is_zero());
    let Some(deg) = deg else { return vec![] };
    if deg == 0 || a.iter().any(|x| !x.is_rational()) {
        return vec![];
    }
    let low = a.iter().position(|x| !x.is_zero()).unwrap();
    let a = &a[low..=deg];
    if a.len() == 1 {
        return vec![];
    }
    if a.len() == 2 {
        return vec![-(&a[0] * &a[1].inv().unwrap())];
    }
    let den = a.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom_lcm()));
    let ints: Vec<BigInt> = a.iter().map(|x| (x * &Scalar::from_bigint(den.clone())).to_integer().unwrap()).collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    let (Some(a0), Some(an)) = (a0.to_u64().filter(|v| *v <= DIVISOR_LIMIT), an.to_u64().filter(|v| *v <= DIVISOR_LIMIT)) else {
        return vec![];
    };
    let mut out = Vec::new();
    for num in divisors(a0) {
        for dn in divisors(an) {
            for sign in [1i64, -1] {
                let r = Scalar::from_bigint(BigInt::from(num) * sign) * Scalar::from_bigint(BigInt::from(dn)).inv().unwrap();
                if out.contains(&r) {
                    continue;
                }
                let v = a.iter().rev().fold(Scalar::zero(), |acc, k| &(&acc * &r) + k);
                if v.is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

const PLANE_TRIES: u64 = 8;

/// Number of distinct absolutely irreducible factors of `h`.
///
/// Forms in three or more variables are cut by a random plane (affine chart
/// of a random `ℙ²`); binary forms and univariate polynomials split into
/// linear factors and are counted directly. Two independent sections must
/// give the same count.
pub fn absolute_factor_count(h: &MultiPoly, seed: u64) -> Result<usize, PencilError> {
    if h.is_zero() {
        return Err(PencilError::ZeroPolynomial);
    }
    if h.is_constant() {
        return Err(PencilError::InvariantViolation("constant polynomial".into()));
    }
    let n = h.nvars();
    let hom = h.is_homogeneous();
    if n == 1 || (n == 2 && hom) {
        let s = squarefree_part(h).map_err(|_| PencilError::ZeroPolynomial)?;
        return Ok(s.total_degree().unwrap() as usize);
    }
    let mut counts = Vec::new();
    let mut k = 0;
    while k < PLANE_TRIES {
        let mut rng = Sampler::fork(seed, k);
        k += 1;
        if let Some(c) = plane_count(h, hom, &mut rng) {
            counts.push(c);
            if counts.len() >= 2 && counts[counts.len() - 1] == counts[counts.len() - 2] {
                return Ok(c);
            }
        }
    }
    match counts.as_slice() {
        [.., a, b] => Err(PencilError::PlaneDisagreement(*a, *b)),
        _ => Err(PencilError::InvariantViolation("no generic plane section found".into())),
    }
}

fn plane_count(h: &MultiPoly, hom: bool, rng: &mut Sampler) -> Option<usize> {
    let n = h.nvars();
    let (u, v) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    let images: Vec<MultiPoly> = (0..n)
        .map(|_| {
            let a = rng.scalars(3, 3);
            &(&u.scale(&a[0]) + &v.scale(&a[1])) + &MultiPoly::constant(2, a[2].clone())
        })
        .collect();
    let r = h.compose(&images);
    if r.total_degree() != h.total_degree() && hom {
        return None;
    }
    let s = squarefree_part(&r).ok()?;
    let d = s.total_degree()?;
    // generic coordinates: both partial degrees are full
    if d == 0 || s.degree_in(0) != d || s.degree_in(1) != d {
        return None;
    }
    if !poly_gcd(&s, &s.derivative(0)).is_constant() {
        return None;
    }
    Some(1 + ruppert_kernel_dim(&s))
}

/// Dimension of the space of pairs `(G, H)` with
/// `h(∂G/∂y − ∂H/∂x) − (G ∂h/∂y − H ∂h/∂x) = 0`,
/// `deg_x G ≤ m−1, deg_y G ≤ n, deg_x H ≤ m, deg_y H ≤ n−2` for `h` of bidegree `(m, n)`.
///
/// For squarefree `h` with `gcd(h, ∂h/∂x) = 1` this is one less than the number
/// of absolutely irreducible factors: the logarithmic derivatives of the
/// factors span the solutions with `deg_y H ≤ n−1`, and the tighter bound on
/// `H` imposes one linear condition on them.
pub fn ruppert_kernel_dim(h: &MultiPoly) -> usize {
    let (m, n) = (h.degree_in(0), h.degree_in(1));
    let (hx, hy) = (h.derivative(0), h.derivative(1));
    let mut images = Vec::new();
    for a in 0..m {
        for b in 0..=n {
            let g = MultiPoly::monomial(Mono::new(&[a as u16, b as u16]), Scalar::one());
            images.push(&(h * &g.derivative(1)) - &(&g * &hy));
        }
    }
    if n >= 2 {
        for a in 0..=m {
            for b in 0..=n - 2 {
                let k = MultiPoly::monomial(Mono::new(&[a as u16, b as u16]), Scalar::one());
                images.push(&(&k * &hx) - &(h * &k.derivative(0)));
            }
        }
    }
    if images.is_empty() {
        return 0;
    }
    let mut index: HashMap<Mono, usize> = HashMap::new();
    for p in &images {
        for (mo, _) in p.terms() {
            let next = index.len();
            index.entry(mo.clone()).or_insert(next);
        }
    }
    let mut mat = Matrix::zeros(index.len().max(1), images.len());
    for (j, p) in images.iter().enumerate() {
        for (mo, c) in p.terms() {
            mat.set(index[mo], j, c.clone());
        }
    }
    images.len() - mat.rank()
}

/// `Σ (absolute_factor_count(member) − 1)` over the listed members.
pub fn r_partial(pc: &Pencil, members: &[(Scalar, Scalar)], seed: u64) -> Result<usize, PencilError> {
    for (i, a) in members.iter().enumerate() {
        if members[..i].iter().any(|b| (&a.0 * &b.1 - &a.1 * &b.0).is_zero()) {
            return Err(PencilError::InvariantViolation("members must be distinct".into()));
        }
    }
    let mut total = 0;
    for (k, (a, b)) in members.iter().enumerate() {
        let m = pc.member(a, b);
        if m.is_zero() {
            return Err(PencilError::ZeroPolynomial);
        }
        let s = squarefree_part(&m).map_err(|_| PencilError::ZeroPolynomial)?;
        total += absolute_factor_count(&s, seed.wrapping_add(k as u64))? - 1;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalphenTriple {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl HalphenTriple {
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self, PencilError> {
        for x in [p, q, r] {
            if !(2..=u32::MAX as i64).contains(&x) {
                return Err(PencilError::EntryOutOfRange(x));
            }
        }
        Ok(HalphenTriple { p: p as u32, q: q as u32, r: r as u32 })
    }

    fn sorted(&self) -> [u32; 3] {
        let mut s = [self.p, self.q, self.r];
        s.sort_unstable();
        s
    }
}

/// `1/p + 1/q + 1/r > 1`.
pub fn halphen_admissible(t: &HalphenTriple) -> bool {
    let [a, b, c] = t.sorted().map(|x| x as u64);
    let ok = b * c + a * c + a * b > a * b * c;
    debug_assert_eq!(ok, halphen_listed(t));
    ok
}

/// Membership, up to permutation, in `(2,2,m), (2,3,3), (2,3,4), (2,3,5)`.
pub fn halphen_listed(t: &HalphenTriple) -> bool {
    matches!(t.sorted(), [2, 2, _] | [2, 3, 3] | [2, 3, 4] | [2, 3, 5])
}

/// Checks the cross-multiplied identities implied by `F^p + G^q + H^r = 0`
/// for binary forms, with `f = F^p`, `g = G^q`, `h = H^r` of degree `k`:
///
/// `p·F^{p−1}·η(F,G) = r·H^{r−1}·η(G,H)` and cyclically, where
/// `η(A,B) = (k/a) A dB − (k/b) B dA`. Each follows from
/// `f dg − g df = g dh − h dg = h df − f dh`.
pub fn halphen_witness_check(f: &MultiPoly, g: &MultiPoly, h: &MultiPoly, t: &HalphenTriple, k: u32) -> Result<bool, PencilError> {
    let (p, q, r) = (t.p, t.q, t.r);
    if f.nvars() != 2 || g.nvars() != 2 || h.nvars() != 2 {
        return Err(PencilError::InvariantViolation("F, G, H must be binary forms".into()));
    }
    let sum = &(&f.pow(p) + &g.pow(q)) + &h.pow(r);
    if !sum.is_zero() {
        return Err(PencilError::RelationViolated);
    }
    let degs = [(f, p), (g, q), (h, r)];
    if degs.iter().any(|(x, e)| x.is_zero() || !x.is_homogeneous() || x.total_degree().unwrap() * e != k) {
        return Ok(false);
    }
    let kk = Scalar::from_int(k as i64);
    let eta = |a: &MultiPoly, ea: u32, b: &MultiPoly, eb: u32| -> PolyForm {
        let ka = &kk * &Scalar::from_ratio(1, ea as i64);
        let kb = &kk * &Scalar::from_ratio(1, eb as i64);
        let da = PolyForm::function(a.clone(), 2).d();
        let db = PolyForm::function(b.clone(), 2).d();
        &db.mul_poly(&a.scale(&ka)) - &da.mul_poly(&b.scale(&kb))
    };
    let side = |c: u32, x: &MultiPoly, w: PolyForm| w.mul_poly(&x.pow(c - 1).scale(&Scalar::from_int(c as i64)));
    let checks = [
        (side(p, f, eta(f, p, g, q)), side(r, h, eta(g, q, h, r))),
        (side(q, g, eta(g, q, h, r)), side(p, f, eta(h, r, f, p))),
        (side(r, h, eta(h, r, f, p)), side(q, g, eta(f, p, g, q))),
    ];
    Ok(checks.iter().all(|(a, b)| !a.is_zero() && a == b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisors_small() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }

    #[test]
    fn rational_roots_quadratic() {
        // 2c² − 3c + 1 = (2c − 1)(c − 1)
        let a = [Scalar::from_int(1), Scalar::from_int(-3), Scalar::from_int(2)];
        let mut r = rational_roots(&a);
        r.sort_by_key(|x| x.to_canonical());
        assert_eq!(r, vec![Scalar::from_int(1), Scalar::from_ratio(1, 2)]);
    }
}
