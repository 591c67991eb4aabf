mod common;

use common::*;
use folforge::exactcore::*;
use folforge::rng::Sampler;
use proptest::prelude::*;

#[test]
fn gcd_examples() {
    let n = 2;
    let a = &x(n, 0).pow(2) * &x(n, 1);
    let b = &x(n, 0) * &x(n, 1).pow(2);
    assert_eq!(poly_gcd(&a, &b), &x(n, 0) * &x(n, 1));

    let a = &x(n, 0).pow(2) - &x(n, 1).pow(2);
    let b = &x(n, 0) - &x(n, 1);
    assert_eq!(poly_gcd(&a, &b), b);

    // gcd(0, b) is b normalised
    let b3 = b.scale(&s(3));
    assert_eq!(poly_gcd(&MultiPoly::zero(n), &b3), b);
    assert!(poly_gcd(&MultiPoly::zero(n), &MultiPoly::zero(n)).is_zero());
}

#[test]
fn gcd_of_affq_coefficients_is_one() {
    let omega = folforge::quadvariety::affq_build().unwrap().omega;
    let coeffs = omega.one_form_coeffs();
    assert!(poly_gcd_many(&coeffs).unwrap().is_constant());

    // independent check: restrict to a random line and run univariate Euclid
    let mut rng = Sampler::new(11);
    let base = rng.scalars(5, 7);
    let dir = rng.scalars(5, 7);
    let mut g = on_line(&coeffs[0], &base, &dir);
    for c in &coeffs[1..] {
        g = univariate_gcd(&g, &on_line(c, &base, &dir));
    }
    assert_eq!(g.len(), 1, "a common factor survives on a random line");
}

#[test]
fn squarefree_examples() {
    let n = 4;
    assert_eq!(squarefree_part(&(&x(n, 0).pow(2) * &x(n, 1))).unwrap(), &x(n, 0) * &x(n, 1));
    let p = &x(n, 0).pow(2) + &x(n, 1).pow(2);
    assert_eq!(squarefree_part(&p).unwrap(), p);

    let a = &x(n, 0) + &x(n, 1);
    let b = &x(n, 2) - &x(n, 3);
    let p = &a.pow(3) * &b.pow(2);
    let sf = squarefree_part(&p).unwrap();
    assert_eq!(sf, (&a * &b).monic());
    // oracle: p / gcd(p, all partials)
    let mut g = p.clone();
    for v in 0..n {
        g = poly_gcd(&g, &p.derivative(v));
    }
    assert_eq!(p.div_exact(&g).unwrap().monic(), sf);

    assert_eq!(squarefree_part(&MultiPoly::zero(2)), Err(ExactError::ZeroPolynomial));
}

#[test]
fn resultant_examples() {
    // variables (t, a, b)
    let n = 3;
    let u = &x(n, 0) - &x(n, 1);
    let v = &x(n, 0) - &x(n, 2);
    let r = resultant_univ(&u, &v, 0).unwrap();
    assert!(r == &x(n, 1) - &x(n, 2) || r == &x(n, 2) - &x(n, 1));

    // disc(t² + bt + c) = res(u, u') = −(b² − 4c)
    let u = &(&x(n, 0).pow(2) + &(&x(n, 1) * &x(n, 0))) + &x(n, 2);
    let disc = discriminant(&u, 0).unwrap();
    let expected = &(&x(n, 2) * &k(n, 4)) - &x(n, 1).pow(2);
    assert_eq!(disc, expected);

    assert_eq!(resultant_univ(&MultiPoly::zero(n), &u, 0), Err(ExactError::ZeroPolynomial));
}

#[test]
fn discriminant_of_pencil_line_vanishes_at_double_member() {
    // member λx₀² − μ(x₁x₂ + x₃²) restricted to a line; variables (t, λ, μ)
    let mut rng = Sampler::new(5);
    let base = rng.scalars(4, 5);
    let dir = rng.scalars(4, 5);
    let n = 3;
    let img: Vec<MultiPoly> = (0..4)
        .map(|i| &MultiPoly::constant(n, base[i].clone()) + &x(n, 0).scale(&dir[i]))
        .collect();
    let x4 = |i| x(4, i);
    let x0sq = x4(0).pow(2).compose(&img);
    let g = (&(&x4(1) * &x4(2)) + &x4(3).pow(2)).compose(&img);
    let member = &(&x0sq * &x(n, 1)) - &(&g * &x(n, 2));
    let disc = discriminant(&member, 0).unwrap();
    assert!(!disc.is_zero());
    assert!(disc.eval(&[s(0), s(1), s(0)]).is_zero());
    // a generic member is reduced
    assert!(!disc.eval(&[s(0), s(2), s(3)]).is_zero());
}

#[test]
fn rank_kernel_examples() {
    let (r, ker) = rank_kernel(&Matrix::identity(3));
    assert_eq!((r, ker.len()), (3, 0));

    let (r, ker) = rank_kernel(&Matrix::zeros(2, 5));
    assert_eq!((r, ker.len()), (0, 5));

    let m = Matrix::from_i64(&[vec![1, 2, 3, 4], vec![0, 1, 5, 2], vec![1, 2, 3, 4], vec![3, 1, 0, 1]]);
    let (r, _) = rank_kernel(&m);
    assert!(r <= 3);
    // the duplicate-row difference annihilates m from the left
    let mt = m.transpose();
    let (_, left) = rank_kernel(&mt);
    let diff = vec![s(1), s(0), s(-1), s(0)];
    assert!(mt.apply(&diff).iter().all(|c| c.is_zero()));
    assert!(!left.is_empty());
}

#[test]
fn scalar_canonical_strings() {
    assert_eq!(s(3).to_canonical(), "3/1");
    assert_eq!(q(-2, 4).to_canonical(), "-1/2");
    let z = &q(1, 2) + &(&Scalar::i() * &q(-3, 4));
    assert_eq!(z.to_canonical(), "1/2-3/4*i");
    assert_eq!(z.to_canonical().parse::<Scalar>().unwrap(), z);
    assert_eq!(&Scalar::i() * &Scalar::i(), s(-1));
}

#[test]
fn rank_of_large_integer_matrices() {
    // rank r products of random integer matrices, large enough for the
    // modular route; compared against elimination over ℚ(i)
    for seed in 0..6 {
        let mut rng = Sampler::new(seed);
        let r = 3 + seed as usize * 2;
        let a = rng.matrix(30, r, 50);
        let b = rng.matrix(r, 24, 50);
        let m = &a * &b;
        assert_eq!(m.rank(), rank_kernel(&m).0);
        assert!(m.rank() <= r);
    }
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6, any::<u64>()).prop_map(|(r, c, seed)| Sampler::new(seed).matrix(r, c, 4))
}

fn small_poly(n: usize) -> impl Strategy<Value = MultiPoly> {
    (1u32..3, any::<u64>()).prop_map(move |(d, seed)| Sampler::new(seed).homogeneous_nonzero(n, n, d, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_divides_both(a in small_poly(3), b in small_poly(3), c in small_poly(3)) {
        let (pa, pb) = (&a * &c, &b * &c);
        let g = poly_gcd(&pa, &pb);
        prop_assert!(pa.div_exact(&g).is_some());
        prop_assert!(pb.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c.monic()).is_some());
    }

    #[test]
    fn squarefree_ignores_multiplicity(p in small_poly(3), r in small_poly(3)) {
        prop_assume!(poly_gcd(&p, &r).is_constant());
        let a = squarefree_part(&(&p * &r.pow(2))).unwrap();
        let b = squarefree_part(&(&p * &r)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn rank_plus_nullity(m in small_matrix()) {
        let (r, ker) = rank_kernel(&m);
        prop_assert_eq!(r + ker.len(), m.cols());
        prop_assert_eq!(r, m.rank());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn operations_are_deterministic(m in small_matrix(), p in small_poly(3)) {
        prop_assert_eq!(rank_kernel(&m), rank_kernel(&m));
        prop_assert_eq!(squarefree_part(&p).unwrap().to_string(), squarefree_part(&p).unwrap().to_string());
    }
}
