mod common;

use common::*;
use folforge::extalg::{check_integrable, PolyField, PolyForm};
use folforge::foliation::*;
use folforge::quadvariety::sym_power_fields;
use folforge::rng::Sampler;
use folforge::{Matrix, MultiPoly};
use proptest::prelude::*;

fn pencil_of_planes(n: usize) -> PolyForm {
    &d(&x(n, 0)).mul_poly(&x(n, 1)) - &d(&x(n, 1)).mul_poly(&x(n, 0))
}

fn rat13(rng: &mut Sampler) -> (PolyForm, MultiPoly, MultiPoly) {
    let f1 = rng.homogeneous_nonzero(4, 4, 1, 4);
    let f2 = rng.homogeneous_nonzero(4, 4, 3, 4);
    let w = make_log_family(&[s(3), s(-1)], &[f1.clone(), f2.clone()]).unwrap();
    (w, f1, f2)
}

#[test]
fn spec_bookkeeping() {
    let w = pencil_of_planes(4);
    let sp = FoliationSpec::new(w).unwrap();
    assert_eq!((sp.ambient_dim(), sp.codim(), sp.coeff_degree(), sp.degree()), (3, 1, 1, 0));
    assert_eq!(sp.normal_degree(), 2);
    assert_eq!(sp.canonical_degree(), -2);
    assert_eq!(sp.slope(), Some(q(1, 1)));

    let mut rng = Sampler::new(4);
    let sp = FoliationSpec::new(rat13(&mut rng).0).unwrap();
    assert_eq!((sp.degree(), sp.normal_degree(), sp.canonical_degree()), (2, 4, 0));
    assert_eq!(sp.slope(), Some(q(0, 1)));

    assert_eq!(FoliationSpec::new(PolyForm::zero(4, 4, 1)), Err(FolError::ZeroForm));
    assert_eq!(FoliationSpec::new(d(&x(4, 0))), Err(FolError::NotRadiallyAnnihilated));
    assert_eq!(FoliationSpec::new(pencil_of_planes(4).mul_poly(&x(4, 2))), Err(FolError::GcdNotOne));
    let g = random_radial_form(&mut rng, 4, 1, 3);
    assert_eq!(FoliationSpec::new(g.clone()), Err(FolError::NotIntegrable));
    assert!(FoliationSpec::unchecked_integrability(g).is_ok());
}

#[test]
fn degree_examples() {
    let w = pencil_of_planes(4);
    for route in [DegreeRoute::CoefficientDegree, DegreeRoute::TangencyDivisor] {
        assert_eq!(degree_of(&w, route, 0).unwrap(), 0);
    }
    // K = 0 on ℙ³: degree 2
    let mut rng = Sampler::new(5);
    let ls: Vec<MultiPoly> = (0..4).map(|_| rng.homogeneous_nonzero(4, 4, 1, 4)).collect();
    let log = make_log_family(&[s(1), s(1), s(-1), s(-1)], &ls).unwrap();
    let (r13, _, _) = rat13(&mut rng);
    for f in [&log, &r13] {
        assert_eq!(degree_of(f, DegreeRoute::CoefficientDegree, 0).unwrap(), 2);
        assert_eq!(degree_of(f, DegreeRoute::TangencyDivisor, 7).unwrap(), 2);
    }
    // codimension two, degree one
    let c1 = case1_form(&mut rng, 5, 2);
    assert_eq!(degree_of(&c1, DegreeRoute::TangencyDivisor, 1).unwrap(), 1);
    assert_eq!(degree_of(&w.mul_poly(&x(4, 0)), DegreeRoute::CoefficientDegree, 0), Err(FolError::GcdNotOne));
}

#[test]
fn singular_divisorial_examples() {
    let w = pencil_of_planes(4).mul_poly(&x(4, 0));
    assert_eq!(singular_divisorial_part(&w), x(4, 0));
    let mut rng = Sampler::new(6);
    let (r13, _, _) = rat13(&mut rng);
    assert!(singular_divisorial_part(&r13).is_constant());
}

#[test]
fn log_family_examples() {
    let n = 4;
    let w = make_log_family(&[s(1), s(-1)], &[x(n, 0), x(n, 1)]).unwrap();
    assert_eq!(w, &d(&x(n, 0)).mul_poly(&x(n, 1)) - &d(&x(n, 1)).mul_poly(&x(n, 0)));

    let mut rng = Sampler::new(7);
    let (r13, f1, f2) = rat13(&mut rng);
    // direct expansion 3 f₂ df₁ − f₁ df₂
    assert_eq!(r13, &d(&f1).mul_poly(&f2.scale(&s(3))) - &d(&f2).mul_poly(&f1));
    assert!(check_integrable(&r13).unwrap().integrable);

    let ls: Vec<MultiPoly> = (0..4).map(|_| rng.homogeneous_nonzero(n, n, 1, 4)).collect();
    let log = make_log_family(&[s(1), s(1), s(-1), s(-1)], &ls).unwrap();
    assert!(check_integrable(&log).unwrap().integrable);
    assert_eq!(log.coeff_degree(), Some(3));

    assert_eq!(make_log_family(&[s(1), s(1)], &[x(n, 0), x(n, 1)]), Err(FolError::ResidueConstraintViolated));
    assert_eq!(make_log_family(&[s(1)], &[x(n, 0)]), Err(FolError::ResidueConstraintViolated));
    let inhom = &x(n, 0) + &x(n, 1).pow(2);
    assert_eq!(make_log_family(&[s(1), s(-1)], &[inhom, x(n, 1)]), Err(FolError::InhomogeneousInput));
}

#[test]
fn linear_pullback_examples() {
    let mut rng = Sampler::new(8);
    let eta = random_radial_form(&mut rng, 3, 1, 3);
    assert_eq!(make_linear_pullback(&Matrix::identity(3), &eta).unwrap(), eta);

    // coordinate projection ℙ³ ⇢ ℙ² of a degree-2 foliation on ℙ²
    let proj = Matrix::from_i64(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]);
    let w = make_linear_pullback(&proj, &eta).unwrap();
    assert_eq!(w.ndiff(), 4);
    assert_eq!(w.coeff_degree(), Some(3));
    assert!(check_integrable(&w).unwrap().integrable);
    assert!(w.contract(&radial(4)).unwrap().is_zero());
    // x₃ is inessential
    assert_eq!(essential_variables(&w).unwrap(), 3);

    let a = rng.full_rank(3, 4, 3);
    let y = random_form(&mut rng, 3, 1, 2);
    assert!(linear_pullback_check(&a, &eta, &y).unwrap());

    let bad = Matrix::from_i64(&[vec![1, 0, 0, 0], vec![2, 0, 0, 0], vec![0, 0, 1, 0]]);
    assert_eq!(make_linear_pullback(&bad, &eta), Err(FolError::RankDeficientProjection));
}

#[test]
fn tangent_form_examples() {
    let n = 4;
    let sols = tangent_form_solve(&[PolyField::coordinate(n, n, 2), PolyField::coordinate(n, n, 3)], 1, None);
    assert_eq!(sols.len(), 1);
    assert!(sols[0].proportional_to(&pencil_of_planes(n)).is_some());

    // the affine group acting on binary cubics
    let sp = sym_power_fields(3);
    let [e, h, _] = sp.fields(4);
    let sols = tangent_form_solve(&[e.clone(), h.clone()], 3, None);
    assert_eq!(sols.len(), 1);
    let recipe = PolyForm::volume(4, 4).contract_all(&[h, e, radial(4)]).unwrap();
    assert!(sols[0].proportional_to(&recipe).is_some());
    assert_eq!(essential_variables(&sols[0]).unwrap(), 4);
}

#[test]
fn closed_form_examples() {
    let n = 4;
    let w = pencil_of_planes(n);
    assert!(closed_one_form_check(&w, &(&x(n, 0) * &x(n, 1))).unwrap());
    assert!(!closed_one_form_check(&w, &x(n, 0)).unwrap());
    assert_eq!(closed_one_form_check(&w, &MultiPoly::zero(n)), Err(FolError::ZeroDenominator));

    let mut rng = Sampler::new(9);
    let ls: Vec<MultiPoly> = (0..4).map(|_| rng.homogeneous_nonzero(n, n, 1, 4)).collect();
    let log = make_log_family(&[s(1), s(1), s(-1), s(-1)], &ls).unwrap();
    let prod = ls.iter().fold(k(n, 1), |a, b| &a * b);
    assert!(closed_one_form_check(&log, &prod).unwrap());

    // a transverse symmetry v with L_vω = ω makes ω/i_vω closed
    let v = PolyField::linear(&Matrix::diagonal(&[s(1), s(0), s(0), s(0)]), n);
    assert_eq!(w.lie_derivative(&v).unwrap(), w);
    let hv = w.contract(&v).unwrap().as_function();
    assert_eq!(hv, &x(n, 0) * &x(n, 1));
    assert!(closed_one_form_check(&w, &hv).unwrap());

    // same statement for the Exc(2) form and each sl₂ field rescaling it
    let sp = sym_power_fields(3);
    let exc = tangent_form_solve(&sp.fields(4)[..2], 3, None).remove(0);
    for v in sp.fields(4) {
        let h = exc.contract(&v).unwrap().as_function();
        let lv = exc.lie_derivative(&v).unwrap();
        if !h.is_zero() && (lv.is_zero() || lv.proportional_to(&exc).is_some()) {
            assert!(closed_one_form_check(&exc, &h).unwrap());
        }
    }
}

#[test]
fn theta_examples() {
    let n = 4;
    let w = pencil_of_planes(n);
    let h = &x(n, 0) * &x(n, 1);
    // η = dx₀/x₀ − dx₁/x₁ cleared by x₀x₁ is ω itself
    assert!(invariante_theta_cleared(&w, &w, &h, 0).unwrap().unwrap().is_zero());
    // residues (1, 1): η_c = x₁dx₀ + x₀dx₁, θ = −4 dx₀∧dx₁
    let eta_c = &d(&x(n, 0)).mul_poly(&x(n, 1)) + &d(&x(n, 1)).mul_poly(&x(n, 0));
    let th = invariante_theta_cleared(&w, &eta_c, &h, 1).unwrap().unwrap();
    assert_eq!(th, PolyForm::volume_on(n, n, &[0, 1]).scale(&s(-4)));
    assert!(invariante_theta(&w, &PolyForm::zero(n, n, 1), 0).unwrap().is_zero());
    assert_eq!(invariante_theta_cleared(&w, &w, &MultiPoly::zero(n), 0), Err(FolError::ZeroDenominator));
}

#[test]
fn map_component_examples() {
    let n = 4;
    let w = pencil_of_planes(n);
    assert_eq!(map_component_solve(&w, 1).len(), 2);

    let qq = &(&x(n, 1) * &x(n, 2)) + &x(n, 3).pow(2);
    let w = radial_of_wedge(n, &[x(n, 0), qq.clone()]);
    let lin = map_component_solve(&w, 1);
    assert_eq!(lin.len(), 1);
    assert!(lin[0].div_exact(&x(n, 0)).is_some_and(|c| c.is_constant()));
    let quad = map_component_solve(&w, 2);
    assert_eq!(quad.len(), 2);
    // oracle: x₀² and Q both satisfy dP∧dω = 0
    for p in [x(n, 0).pow(2), qq] {
        assert!(d(&p).wedge(&w.d()).unwrap().is_zero());
    }
}

#[test]
fn essential_variable_examples() {
    let n = 4;
    assert_eq!(essential_variables(&PolyForm::volume_on(n, n, &[0, 1])).unwrap(), 2);
    assert_eq!(essential_variables(&pencil_of_planes(n)).unwrap(), 2);
    assert_eq!(essential_variables(&PolyForm::zero(n, n, 1)), Err(FolError::ZeroForm));
}

#[test]
fn classification_examples() {
    let mut rng = Sampler::new(10);
    let c = classify_low_degree(&FoliationSpec::new(degree0_form(&mut rng, 4, 1)).unwrap()).unwrap();
    assert_eq!(c.degree, 0);
    assert_eq!(c.linear_projection.as_ref().map(|v| v.len()), Some(2));

    // i_R(dx₀∧dx₁∧dQ) on ℂ⁵
    let n = 5;
    let qq = rng.homogeneous_nonzero(n, n, 2, 4);
    let w = radial_of_wedge(n, &[x(n, 0), x(n, 1), qq]);
    let c = classify_low_degree(&FoliationSpec::new(w).unwrap()).unwrap();
    let c1 = c.case1.expect("case (1)");
    assert_eq!(c1.linear.len(), 2);
    let span: Vec<Vec<folforge::Scalar>> = c1
        .linear
        .iter()
        .map(|l| (0..n).map(|i| l.coeff(&folforge::exactcore::Mono::var(n, i))).collect())
        .collect();
    // the recovered linear forms span ⟨x₀, x₁⟩
    for row in &span {
        assert!(row[2..].iter().all(|c| c.is_zero()));
    }

    // case (2): i_X vol pulled back from ℂ³
    let w = case2_form(&mut rng, 4, 1);
    let c = classify_low_degree(&FoliationSpec::new(w).unwrap()).unwrap();
    assert!(c.case2.is_some());
    assert_eq!(c.essential_variables, 3);

    let (r13, _, _) = rat13(&mut rng);
    assert_eq!(classify_low_degree(&FoliationSpec::new(r13).unwrap()), Err(FolError::NotLowDegree));
}

#[test]
fn deformation_examples() {
    let n = 4;
    let r = deformation_limit_check(&(&x(n, 2) * &x(n, 3)), &x(n, 0), &x(n, 1)).unwrap();
    assert!(r.passed());
    let mut rng = Sampler::new(11);
    let qq = &(&x(n, 0) * &x(n, 1)) + &(&x(n, 2) * &x(n, 3));
    let h1 = rng.homogeneous_nonzero(n, n, 1, 5);
    let h2 = rng.homogeneous_nonzero(n, n, 1, 5);
    assert!(deformation_limit_check(&qq, &h1, &h2).unwrap().passed());
    assert!(matches!(deformation_limit_check(&x(n, 0), &h1, &h2), Err(FolError::DegreeMismatch(_))));
    assert!(matches!(deformation_limit_check(&qq, &qq, &h2), Err(FolError::DegreeMismatch(_))));
}

fn seeded() -> impl Strategy<Value = Sampler> {
    any::<u64>().prop_map(Sampler::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn constructed_families_are_foliations(mut rng in seeded(), which in 0usize..4) {
        let n = 4;
        let w = match which {
            0 => rat13(&mut rng).0,
            1 => {
                let ls: Vec<MultiPoly> = (0..4).map(|_| rng.homogeneous_nonzero(n, n, 1, 4)).collect();
                make_log_family(&[s(1), s(2), s(-1), s(-2)], &ls).unwrap()
            }
            2 => {
                let a = rng.full_rank(3, 4, 3);
                loop {
                    let eta = random_radial_form(&mut rng, 3, 1, 3);
                    if eta.coefficient_gcd().is_constant() {
                        break make_linear_pullback(&a, &eta).unwrap();
                    }
                }
            }
            _ => case1_form(&mut rng, n, 1),
        };
        prop_assume!(w.coefficient_gcd().is_constant());
        prop_assert!(w.contract(&radial(n)).unwrap().is_zero());
        prop_assert!(check_integrable(&w).unwrap().integrable);
        let a = degree_of(&w, DegreeRoute::CoefficientDegree, 0).unwrap();
        let b = degree_of(&w, DegreeRoute::TangencyDivisor, 3).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn log_family_is_closed(mut rng in seeded(), k in 2usize..5) {
        let n = 4;
        let degs: Vec<u32> = (0..k).map(|_| rng.int(1, 2) as u32).collect();
        let fs: Vec<MultiPoly> = degs.iter().map(|&dd| rng.homogeneous_nonzero(n, n, dd, 3)).collect();
        // λ_k fixed by Σ λᵢ dᵢ = 0
        let mut lam: Vec<folforge::Scalar> = (0..k - 1).map(|_| s(rng.nonzero(4))).collect();
        let mut acc = s(0);
        for (l, dd) in lam.iter().zip(&degs) {
            acc = &acc + &(l * &s(*dd as i64));
        }
        lam.push(-(&acc * &q(1, degs[k - 1] as i64)));
        let w = make_log_family(&lam, &fs).unwrap();
        let prod = fs.iter().fold(k_one(n), |a, b| &a * b);
        prop_assert!(closed_one_form_check(&w, &prod).unwrap());
    }

    #[test]
    fn classification_is_coordinate_free(mut rng in seeded(), which in 0usize..3) {
        let n = 4;
        let w = match which {
            0 => degree0_form(&mut rng, n, 1),
            1 => case1_form(&mut rng, n, 1),
            _ => case2_form(&mut rng, n, 1),
        };
        let g = rng.invertible(n, 2);
        let wg = make_linear_pullback(&g, &w).unwrap();
        let flags = |w: PolyForm| {
            let c = classify_low_degree(&FoliationSpec::new(w).unwrap()).unwrap();
            (c.degree, c.linear_projection.is_some(), c.case1.is_some(), c.case2.is_some(), c.essential_variables)
        };
        prop_assert_eq!(flags(w), flags(wg));
    }
}

fn k_one(n: usize) -> MultiPoly {
    k(n, 1)
}
