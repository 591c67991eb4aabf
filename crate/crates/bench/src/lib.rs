//! Fixed inputs for the benchmarks in `benches/`.

use folforge::extalg::{PolyField, PolyForm};
use folforge::pencil::Pencil;
use folforge::rng::Sampler;
use folforge::{Matrix, MultiPoly, Scalar};

/// `3·g·df − f·dg` for random `f` linear and `g` cubic on ℂ⁴: a Rat(1,3) point.
pub fn rat13_form(seed: u64) -> PolyForm {
    let mut rng = Sampler::new(seed);
    let f = rng.homogeneous_nonzero(4, 4, 1, 5);
    let g = rng.homogeneous_nonzero(4, 4, 3, 5);
    let df = PolyForm::function(f.clone(), 4).d();
    let dg = PolyForm::function(g.clone(), 4).d();
    &df.mul_poly(&g).scale(&Scalar::from_int(3)) - &dg.mul_poly(&f)
}

/// A random integrable-looking 1-form that is not integrable.
pub fn generic_form(seed: u64) -> PolyForm {
    let mut rng = Sampler::new(seed);
    let mut b = PolyForm::zero(4, 4, 2);
    for i in 0..4u8 {
        for j in i + 1..4 {
            b.add_term(vec![i, j].into(), rng.homogeneous(4, 4, 2, 5));
        }
    }
    b.contract(&PolyField::radial(4, 4)).unwrap()
}

/// Dense random rational matrix.
pub fn dense_matrix(n: usize, seed: u64) -> Matrix {
    Sampler::new(seed).matrix(n, n, 50)
}

/// The (2,3) cubic/quadric pencil used in the tests.
pub fn cubic_quadric_pencil(seed: u64) -> Pencil {
    let mut rng = Sampler::new(seed);
    let f = rng.homogeneous_nonzero(4, 4, 3, 5);
    let g = rng.homogeneous_nonzero(4, 4, 2, 5);
    Pencil::new(f, g, 2, 3).unwrap()
}

/// Product of `k` random affine bivariate quadrics.
pub fn bivariate_product(k: usize, seed: u64) -> MultiPoly {
    let mut rng = Sampler::new(seed);
    (0..k).fold(MultiPoly::one(2), |acc, _| {
        let h = rng.homogeneous_nonzero(3, 3, 2, 4).eval_var(2, &Scalar::one()).restrict_vars(2);
        &acc * &h
    })
}
