//! End-to-end acceptance checks, one line per criterion.
//!
//! Run with `cargo test -p folforge --test acceptance -- --nocapture`.

mod common;

use common::*;
use folforge::extalg::{check_euler, check_integrable, PolyForm};
use folforge::foliation::{classify_low_degree, deformation_limit_check, FoliationSpec};
use folforge::liealg::*;
use folforge::moduli::*;
use folforge::pencil::*;
use folforge::quadvariety::*;
use folforge::rng::Sampler;
use folforge::{Matrix, MultiPoly, Scalar};
use std::time::{Duration, Instant};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn fam(kind: FamilyKind, ambient: Ambient) -> ComponentFamily {
    ComponentFamily::new(kind, ambient).unwrap()
}

fn p3() -> Ambient {
    Ambient::Projective(3)
}

fn c1_component_dimensions() -> Check {
    let mut out = Vec::new();
    for (kind, want) in [
        (FamilyKind::Rational(1, 3), 21),
        (FamilyKind::Rational(2, 2), 16),
        (FamilyKind::Logarithmic(vec![1, 1, 1, 1]), 14),
        (FamilyKind::LinearPullback { target: 2, degree: 2 }, 17),
    ] {
        let t = Instant::now();
        let r = certified_dimension(&fam(kind, p3()), 2, 0).map_err(|e| e.to_string())?;
        let el = t.elapsed();
        ensure(r.certified && r.lower == r.upper, format!("{} not certified ({}..{})", r.id, r.lower, r.upper))?;
        ensure(r.upper == want, format!("{} = {}, want {want}", r.id, r.upper))?;
        ensure(el < Duration::from_secs(60), format!("{} took {el:?}", r.id))?;
        out.push(format!("{}={}", r.id, r.upper));
    }
    Ok(out.join(" "))
}

fn c2_flagged_rows() -> Check {
    let mut out = Vec::new();
    for (kind, ambient) in [
        (FamilyKind::Logarithmic(vec![1, 1, 2]), p3()),
        (FamilyKind::Rational(1, 2), Ambient::standard_quadric()),
        (FamilyKind::Logarithmic(vec![1, 1, 1]), Ambient::standard_quadric()),
    ] {
        let f = fam(kind, ambient);
        let r = certified_dimension(&f, 2, 0).map_err(|e| e.to_string())?;
        ensure(r.certified, format!("{} uncertified", r.id))?;
        ensure(r.upper == f.domain_dimension() - r.fiber_dimension, format!("{} upper is not domain − fiber", r.id))?;
        ensure(
            r.discrepancy_flag == (r.table_value != Some(r.upper as u32)),
            format!("{} flag mechanics", r.id),
        )?;
        out.push(format!("{}={} (table {:?}, flag {})", r.id, r.upper, r.table_value, r.discrepancy_flag));
    }
    Ok(out.join(" "))
}

fn c3_orbit_dimensions() -> Check {
    let t = Instant::now();
    let exc = exc2_form().map_err(|e| e.to_string())?;
    let a = orbit_dimension(&exc, &sl_fields(4), None).map_err(|e| e.to_string())?;
    ensure(t.elapsed() < Duration::from_secs(60), "P3 orbit too slow")?;
    let t = Instant::now();
    let b = affq_build().map_err(|e| e.to_string())?;
    let q = orbit_dimension(&b.omega, &orthogonal_fields(&b.ctx), Some(&b.ctx)).map_err(|e| e.to_string())?;
    ensure(t.elapsed() < Duration::from_secs(60), "Q3 orbit too slow")?;
    ensure(a == 13 && q == 8, format!("got {a}, {q}"))?;
    Ok(format!("P3/Aff={a} Q3/Aff={q}"))
}

fn c4_rat11() -> Check {
    let got: Vec<usize> = (3..=7).map(rat11_dimension).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(got == vec![2, 4, 6, 8, 10], format!("{got:?}"))?;
    Ok(format!("{got:?}"))
}

/// A random log-type basepoint with the residue condition Σλᵢdᵢ = 0.
fn log_point(f: &ComponentFamily, rng: &mut Sampler) -> Basepoint {
    let d = f.degrees();
    let k = d.len();
    // every residue nonzero, otherwise the point leaves the family
    let lambda = loop {
        let mut lambda: Vec<Scalar> = (0..k - 1).map(|_| Scalar::from_int(rng.nonzero(5))).collect();
        let mut acc = Scalar::zero();
        for (l, di) in lambda.iter().zip(&d) {
            acc += &(l * &Scalar::from_int(*di as i64));
        }
        lambda.push(-(acc * Scalar::from_ratio(1, d[k - 1] as i64)));
        if !lambda[k - 1].is_zero() {
            break lambda;
        }
    };
    let nv = f.ambient.nvars();
    let polys = d.iter().map(|&di| rng.homogeneous_nonzero(nv, nv, di, 5)).collect();
    Basepoint::Log { lambda, f: polys }
}

fn pullback_point(target: usize, degree: u32, rng: &mut Sampler) -> Basepoint {
    let a = rng.full_rank(target + 1, 4, 4);
    let space = form_space(&Ambient::Projective(target), degree + 2).unwrap();
    let mut eta = PolyForm::zero(target + 1, target + 1, 1);
    for b in &space.basis {
        eta = &eta + &b.scale(&rng.scalar(4));
    }
    Basepoint::Pullback { a, eta }
}

fn is_foliation(w: &PolyForm) -> bool {
    !w.is_zero() && check_integrable(w).map(|v| v.integrable).unwrap_or(false) && w.coefficient_gcd().is_constant()
}

fn c5_integrability() -> Check {
    let mut rng = Sampler::new(5);
    let mut built = 0;
    for e in table1_catalog() {
        let Plan::Certified(f) = &e.plan else { continue };
        for _ in 0..5 {
            let bp = match &f.kind {
                FamilyKind::LinearPullback { target, degree } => pullback_point(*target, *degree, &mut rng),
                _ => log_point(f, &mut rng),
            };
            let w = evaluate(f, &bp).map_err(|e| e.to_string())?;
            ensure(is_foliation(&w), format!("{} point fails", e.id))?;
            built += 1;
        }
    }
    let exc = exc2_form().map_err(|e| e.to_string())?;
    ensure(is_foliation(&exc), "Exc(2) fails")?;
    let b = affq_build().map_err(|e| e.to_string())?;
    ensure(b.integrable && b.gcd_one, "affQ fails")?;
    built += 2;

    // Integrable 1-forms of coefficient degree 2 on ℙ³ form a closed subvariety
    // of the 45-dimensional form space whose components have dimension ≤ 21.
    // For a fixed nonzero coefficient of ω∧dω (cubic in the parameters)
    // Schwartz–Zippel bounds the chance that a uniform draw from [−B, B]^45
    // lands in it by 3/(2B+1); with B = 1000 that is < 0.0015 per form, and
    // the true rate is far lower given the codimension. Seeds are fixed, so
    // the outcome is reproducible.
    let space = form_space(&p3(), 4).map_err(|e| e.to_string())?;
    let mut rng = Sampler::new(55);
    for _ in 0..100 {
        let mut w = PolyForm::zero(4, 4, 1);
        for b in &space.basis {
            w = &w + &b.scale(&Scalar::from_int(rng.int(-1000, 1000)));
        }
        ensure(!check_integrable(&w).map_err(|e| e.to_string())?.integrable, "a random form is integrable")?;
    }
    Ok(format!("{built} constructed forms integrable with gcd 1; 100/100 random forms non-integrable"))
}

fn c6_euler() -> Check {
    let mut rng = Sampler::new(6);
    for q in 1..=2usize {
        for m in 1..=3u32 {
            for _ in 0..50 {
                let w = random_radial_form(&mut rng, 4, q, m);
                ensure(w.contract(&radial(4)).unwrap().is_zero(), "not radially annihilated")?;
                ensure(check_euler(&w, m).map_err(|e| e.to_string())?, format!("(q,m)=({q},{m})"))?;
                let lhs = w.d().contract(&radial(4)).unwrap();
                ensure(lhs == w.scale(&Scalar::from_int((m as usize + q) as i64)), format!("(q,m)=({q},{m}) direct"))?;
            }
        }
    }
    Ok("300 forms".into())
}

fn c7_affq() -> Check {
    let t = Instant::now();
    let b = affq_build().map_err(|e| e.to_string())?;
    ensure(b.solution_dim == 1, format!("{} invariant quadrics", b.solution_dim))?;
    ensure(b.ctx.matrix().rank() == 5, "quadric not of rank 5")?;
    for (name, c) in affq_curves() {
        ensure(curve_in_singular_scheme(&b.omega, &c, &b.ctx), format!("{name} not in the singular scheme"))?;
    }
    ensure(b.invariant_hyperplane_count() == 1, format!("{} invariant hyperplanes", b.invariant_hyperplane_count()))?;
    let el = t.elapsed();
    ensure(el < Duration::from_secs(120), format!("took {el:?}"))?;
    Ok(format!("quadric {}; {:.1}s", b.ctx.quadric(), el.as_secs_f64()))
}

fn c8_named() -> Check {
    for id in ["QCstar-01", "QCstar-11", "QCplus-2", "QCplus-3"] {
        let r = verify_named_example(id).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{id}: {:?}", r.first_failure()))?;
    }
    Ok("QCstar-01 QCstar-11 QCplus-2 QCplus-3".into())
}

fn c9_jordan() -> Check {
    let q = standard_so5_form();
    let j = standard_regular_nilpotent();
    let classes = [j.clone(), field_matrix(5, &[(0, 1), (1, 2)]), j.pow(3)];
    let parts: Vec<Vec<usize>> = classes.iter().map(jordan_partition).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(parts == vec![vec![5], vec![3, 1, 1], vec![2, 2, 1]], format!("{parts:?}"))?;
    let c = centralizer_basis(&j, &Constraint::Orthogonal(q.clone())).map_err(|e| e.to_string())?;
    ensure(c.len() == 2, format!("centralizer dim {}", c.len()))?;
    let sol = bracket_eq_solutions(&j, &Constraint::Orthogonal(q.clone())).map_err(|e| e.to_string())?;
    ensure(!sol.degenerate && sol.kernel.len() == 2, "bracket equation kernel")?;
    ensure(bracket(&sol.particular, &j).map_err(|e| e.to_string())? == j, "particular solution")?;
    ensure(is_in_orthogonal(&sol.particular, &q).map_err(|e| e.to_string())?, "particular not orthogonal")?;
    let d = Matrix::diagonal(&[Scalar::from_int(2), Scalar::one(), Scalar::zero(), Scalar::from_int(-1), Scalar::from_int(-2)]);
    ensure(in_span(&(&sol.particular - &d), &sol.kernel), "particular ≠ diag(2,1,0,−1,−2) + centralizer")?;
    Ok(format!("{parts:?}; centralizer 2; bracket 2 + affine point"))
}

fn c10_pencil() -> Check {
    let mut rng = Sampler::new(3);
    let f = rng.homogeneous_nonzero(4, 4, 3, 5);
    let g = rng.homogeneous_nonzero(4, 4, 2, 5);
    let pc = Pencil::new(f, g, 2, 3).map_err(|e| e.to_string())?;
    let b = multiple_fiber_bounds(&pc, 3, 0).map_err(|e| e.to_string())?;
    ensure(b.lower == 2 && b.upper == 2, format!("bounds ({}, {})", b.lower, b.upper))?;

    let n = 4;
    let pc = Pencil::new(&x(n, 0) * &x(n, 1), &x(n, 2) * &x(n, 3), 1, 1).map_err(|e| e.to_string())?;
    let (one, zero) = (Scalar::one(), Scalar::zero());
    let r = r_partial(&pc, &[(one.clone(), zero.clone()), (zero, one)], 0).map_err(|e| e.to_string())?;
    ensure(r == 2, format!("r_partial {r}"))?;

    let mut rng = Sampler::new(10);
    let mut tried = 0;
    while tried < 50 {
        let (d1, d2) = (rng.int(1, 2) as u32, rng.int(1, 2) as u32);
        let h1 = rng.homogeneous_nonzero(4, 4, d1, 4);
        let h2 = rng.homogeneous_nonzero(4, 4, d2, 4);
        if !folforge::exactcore::poly_gcd(&h1, &h2).is_constant() {
            continue;
        }
        tried += 1;
        let a = absolute_factor_count(&h1, 1).map_err(|e| e.to_string())?;
        let c = absolute_factor_count(&h2, 2).map_err(|e| e.to_string())?;
        let ab = absolute_factor_count(&(&h1 * &h2), 3).map_err(|e| e.to_string())?;
        ensure(ab == a + c, format!("additivity {ab} ≠ {a} + {c}"))?;
    }

    for p in 2..=12 {
        for qq in 2..=12 {
            for r in 2..=12 {
                let t = HalphenTriple::new(p, qq, r).map_err(|e| e.to_string())?;
                let mut s = [p, qq, r];
                s.sort_unstable();
                let listed = matches!(s, [2, 2, _] | [2, 3, 3] | [2, 3, 4] | [2, 3, 5]);
                ensure(halphen_admissible(&t) == listed, format!("({p},{qq},{r})"))?;
            }
        }
    }
    Ok("bounds (2,2); r_partial 2; 50 additive products; Halphen list".into())
}

fn c11_halphen_witness() -> Check {
    let (u, v) = (MultiPoly::var(2, 0), MultiPoly::var(2, 1));
    let f = &u.pow(2) - &v.pow(2);
    let g = (&u * &v).scale(&Scalar::from_int(2));
    let h = (&u.pow(2) + &v.pow(2)).scale(&Scalar::i());
    let t = HalphenTriple::new(2, 2, 2).map_err(|e| e.to_string())?;
    ensure(halphen_witness_check(&f, &g, &h, &t, 4).map_err(|e| e.to_string())?, "witness rejected")?;
    Ok("F² + G² + H² = 0".into())
}

fn c12_deformation() -> Check {
    let t = Instant::now();
    let mut rng = Sampler::new(12);
    for _ in 0..10 {
        let qq = rng.homogeneous_nonzero(4, 4, 2, 5);
        let h1 = rng.homogeneous_nonzero(4, 4, 1, 5);
        let h2 = rng.homogeneous_nonzero(4, 4, 1, 5);
        let r = deformation_limit_check(&qq, &h1, &h2).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{r:?}"))?;
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(30), format!("took {el:?}"))?;
    Ok(format!("10 triples, {:.1}s", el.as_secs_f64()))
}

fn c13_classification() -> Check {
    let mut rng = Sampler::new(13);
    let mut count = 0;
    for n in [4usize, 5] {
        for q in [1usize, 2] {
            for _ in 0..20 {
                let c = classify_low_degree(&FoliationSpec::new(degree0_form(&mut rng, n, q)).unwrap()).map_err(|e| e.to_string())?;
                ensure(c.degree == 0, "degree-0 form misread")?;
                let l = c.linear_projection.as_ref().map(|v| v.len());
                ensure(l == Some(q + 1), format!("ℂ^{n} q={q}: {l:?} linear forms"))?;
                ensure(c.essential_variables == q + 1, "essential variables")?;

                let c = classify_low_degree(&FoliationSpec::new(case1_form(&mut rng, n, q)).unwrap()).map_err(|e| e.to_string())?;
                ensure(c.degree == 1, "case (1) degree")?;
                let c1 = c.case1.ok_or(format!("ℂ^{n} q={q}: case (1) missed"))?;
                ensure(c1.linear.len() == q, "case (1) linear forms")?;

                let c = classify_low_degree(&FoliationSpec::new(case2_form(&mut rng, n, q)).unwrap()).map_err(|e| e.to_string())?;
                ensure(c.degree == 1, "case (2) degree")?;
                ensure(c.case2.is_some(), format!("ℂ^{n} q={q}: case (2) missed"))?;
                ensure(c.essential_variables == q + 2, "case (2) essential variables")?;
                count += 3;
            }
        }
    }
    Ok(format!("{count} forms"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("component dimensions", c1_component_dimensions),
        ("flagged rows", c2_flagged_rows),
        ("orbit dimensions", c3_orbit_dimensions),
        ("Rat(1,1) rows", c4_rat11),
        ("integrability suite", c5_integrability),
        ("Euler identity", c6_euler),
        ("invariant quadric example", c7_affq),
        ("named quadric examples", c8_named),
        ("Jordan and centralizer", c9_jordan),
        ("pencil suite", c10_pencil),
        ("Halphen witness", c11_halphen_witness),
        ("Poisson deformation", c12_deformation),
        ("degree ≤ 1 classification", c13_classification),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let el = t.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS criterion {}: {name}: {msg} [{el:.1}s]", i + 1),
            Err(msg) => {
                println!("FAIL criterion {}: {name}: {msg} [{el:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    // not a criterion: the harmonic quartic lies on a cubic but no quadric
    match harmonic_point_diagnostic() {
        Ok((q2, q3)) => println!(
            "note: harmonic quartic invariant quadric {}, invariant cubic {}",
            q2.map_or("none".into(), |p| p.to_string()),
            q3.map_or("none".into(), |p| p.to_string())
        ),
        Err(e) => println!("note: harmonic diagnostic failed: {e}"),
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
