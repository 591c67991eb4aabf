#![allow(dead_code)]

use folforge::extalg::{PolyField, PolyForm};
use folforge::rng::Sampler;
use folforge::{MultiPoly, Scalar};

pub fn x(n: usize, i: usize) -> MultiPoly {
    MultiPoly::var(n, i)
}

pub fn k(n: usize, c: i64) -> MultiPoly {
    MultiPoly::constant(n, Scalar::from_int(c))
}

pub fn s(c: i64) -> Scalar {
    Scalar::from_int(c)
}

pub fn q(a: i64, b: i64) -> Scalar {
    Scalar::from_ratio(a, b)
}

pub fn one_form(coeffs: &[MultiPoly]) -> PolyForm {
    let n = coeffs[0].nvars();
    PolyForm::one_form(coeffs, n)
}

pub fn d(p: &MultiPoly) -> PolyForm {
    PolyForm::function(p.clone(), p.nvars()).d()
}

pub fn radial(n: usize) -> PolyField {
    PolyField::radial(n, n)
}

/// Random `(deg+1)`-form with coefficients of degree `m − 1`, contracted with
/// the radial field: a radially annihilated `deg`-form of coefficient degree `m`.
pub fn random_radial_form(rng: &mut Sampler, n: usize, deg: usize, m: u32) -> PolyForm {
    loop {
        let mut b = PolyForm::zero(n, n, deg + 1);
        for idx in folforge::extalg::increasing_tuples(n, deg + 1) {
            let c = rng.homogeneous(n, n, m - 1, 3);
            if !c.is_zero() {
                b.add_term(idx.iter().map(|&i| i as u8).collect(), c);
            }
        }
        let w = b.contract(&radial(n)).unwrap();
        if !w.is_zero() {
            return w;
        }
    }
}

pub fn random_form(rng: &mut Sampler, n: usize, deg: usize, m: u32) -> PolyForm {
    let mut b = PolyForm::zero(n, n, deg);
    for idx in folforge::extalg::increasing_tuples(n, deg) {
        let c = rng.homogeneous(n, n, m, 3);
        if !c.is_zero() {
            b.add_term(idx.iter().map(|&i| i as u8).collect(), c);
        }
    }
    b
}

pub fn random_field(rng: &mut Sampler, n: usize, m: u32) -> PolyField {
    PolyField::new((0..n).map(|_| rng.homogeneous(n, n, m, 3)).collect())
}

/// Univariate Euclid over the scalars, coefficient vectors low degree first.
pub fn univariate_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    fn trim(v: &mut Vec<Scalar>) {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    }
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lb = b.last().unwrap().inv().unwrap();
        while a.len() >= b.len() {
            let f = a.last().unwrap() * &lb;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = &a[i + shift] - &(&f * c);
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Restriction of `p` to the line `t ↦ base + t·dir`, as coefficients in `t`.
pub fn on_line(p: &MultiPoly, base: &[Scalar], dir: &[Scalar]) -> Vec<Scalar> {
    let t = MultiPoly::var(1, 0);
    let img: Vec<MultiPoly> =
        base.iter().zip(dir).map(|(b, v)| &MultiPoly::constant(1, b.clone()) + &t.scale(v)).collect();
    let r = p.compose(&img);
    r.coefficients_in(0).iter().map(|c| c.constant_value().unwrap_or_else(Scalar::zero)).collect()
}

/// `i_R(dP₁∧⋯∧dP_k)` on ℂⁿ.
pub fn radial_of_wedge(n: usize, polys: &[MultiPoly]) -> PolyForm {
    let mut w = PolyForm::function(MultiPoly::one(n), n);
    for p in polys {
        w = w.wedge(&d(p)).unwrap();
    }
    w.contract(&radial(n)).unwrap()
}

/// Degree-0 foliation of codimension `q` on ℙ^{n−1}: a linear projection.
pub fn degree0_form(rng: &mut Sampler, n: usize, q: usize) -> PolyForm {
    loop {
        let ls: Vec<MultiPoly> = (0..=q).map(|_| rng.homogeneous_nonzero(n, n, 1, 4)).collect();
        let w = radial_of_wedge(n, &ls);
        if !w.is_zero() {
            return w;
        }
    }
}

/// Degree-1 foliation given by `q` linear forms and one quadric.
pub fn case1_form(rng: &mut Sampler, n: usize, q: usize) -> PolyForm {
    loop {
        let mut ps: Vec<MultiPoly> = (0..q).map(|_| rng.homogeneous_nonzero(n, n, 1, 4)).collect();
        ps.push(rng.homogeneous_nonzero(n, n, 2, 4));
        let w = radial_of_wedge(n, &ps);
        if !w.is_zero() && w.coefficient_gcd().is_constant() {
            return w;
        }
    }
}

/// Degree-1 foliation pulled back from a linear field on ℂ^{q+2} along a
/// random linear projection.
pub fn case2_form(rng: &mut Sampler, n: usize, q: usize) -> PolyForm {
    let k = q + 2;
    loop {
        let x = PolyField::linear(&rng.matrix(k, k, 4), k);
        // i_R i_X vol
        let eta = PolyForm::volume(k, k).contract_all(&[x, radial(k)]);
        let Ok(eta) = eta else { continue };
        if eta.is_zero() || !eta.coefficient_gcd().is_constant() {
            continue;
        }
        let a = rng.full_rank(k, n, 3);
        let w = folforge::foliation::make_linear_pullback(&a, &eta).unwrap();
        if w.coefficient_gcd().is_constant() {
            return w;
        }
    }
}
