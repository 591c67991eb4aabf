use folforge::extalg::PolyForm;
use folforge::{MultiPoly, Scalar};
use folforge_cli::expr::*;
use proptest::prelude::*;

fn p3() -> Vars {
    Vars::for_ambient("P3").unwrap()
}

fn eval(text: &str, vars: &Vars) -> PolyForm {
    parse_with(text, vars).unwrap().eval(vars).unwrap()
}

fn x(i: usize) -> MultiPoly {
    MultiPoly::var(4, i)
}

#[test]
fn pencil_form() {
    let w = eval("x1*dx0 - x0*dx1", &p3());
    let want = PolyForm::one_form(&[x(1), -&x(0), MultiPoly::zero(4), MultiPoly::zero(4)], 4);
    assert_eq!(w, want);
    // spacing and the split `d x0` spelling do not matter
    assert_eq!(eval(" x1 * d x0-x0*dx1 ", &p3()), want);
}

#[test]
fn quadric_on_five_variables() {
    let v = Vars::for_ambient("Q3").unwrap();
    let q = eval("(x0^2+x1*x2+x3*x4)", &v).as_function();
    let y = |i| MultiPoly::var(5, i);
    assert_eq!(q, &(&y(0).pow(2) + &(&y(1) * &y(2))) + &(&y(3) * &y(4)));
}

#[test]
fn scalars() {
    let v = Vars::new(vec![], false).unwrap();
    let c = |t: &str| eval(t, &v).as_function().constant_value().unwrap();
    assert_eq!(c("3/6"), Scalar::from_ratio(1, 2));
    assert_eq!(c("1/2 - 3/4*i"), "1/2-3/4*i".parse().unwrap());
    assert_eq!(c("i^2"), Scalar::from_int(-1));
    assert_eq!(c("-(2)^3"), Scalar::from_int(-8));
    assert_eq!(c("0^0"), Scalar::one());
}

#[test]
fn wedge_grading() {
    let w = eval("dx0*dx1", &p3());
    assert_eq!(w.degree(), 2);
    assert!(eval("dx0*dx0", &p3()).is_zero());
    assert_eq!(eval("dx1*dx0", &p3()), eval("-dx0*dx1", &p3()));
    assert_eq!(parse_expression("x0*dx1*dx2").unwrap().grade(), 2);
    assert_eq!(parse_expression("dx0^0").unwrap().grade(), 0);
}

#[test]
fn eps_is_a_parameter() {
    let w = eval("(1 + 2*eps)*x1*dx0", &p3());
    assert_eq!(w.nvars(), 5);
    assert_eq!(w.ndiff(), 4);
    let e = parse_with("deps", &p3()).unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier);
}

fn err(text: &str) -> ParseError {
    parse_with(text, &p3()).unwrap_err()
}

#[test]
fn errors_carry_positions() {
    let e = err("3*f2*dx1");
    assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::UnknownIdentifier, 1, 3));
    let e = err("x0 + x7");
    assert_eq!((e.kind, e.column), (ParseErrorKind::UnknownIdentifier, 6));
    assert!(e.message.contains("not declared"));
    let e = err("dx0^2");
    assert_eq!((e.kind, e.column), (ParseErrorKind::GradingError, 4));
    let e = err("x0 + dx1");
    assert_eq!((e.kind, e.column), (ParseErrorKind::GradingError, 4));
    let e = err("x0 +\n  (x1");
    assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::SyntaxError, 2, 6));
    let e = err("1/0");
    assert_eq!((e.kind, e.column), (ParseErrorKind::SyntaxError, 3));
    assert_eq!(err("x0 $ x1").kind, ParseErrorKind::SyntaxError);
    assert_eq!(err("x0 x1").kind, ParseErrorKind::SyntaxError);
    assert_eq!(err("d(x0)").kind, ParseErrorKind::SyntaxError);
    assert_eq!(err("").kind, ParseErrorKind::SyntaxError);
    assert!(err("dx0^2").to_string().contains("line 1, column 4"));
}

#[test]
fn printing() {
    for (src, printed) in [
        ("x1*dx0 - x0*dx1", "x1*dx0 - x0*dx1"),
        ("(x0+x1)*(x2-x3)", "(x0 + x1)*(x2 - x3)"),
        ("x0 - (x1 - x2)", "x0 - (x1 - x2)"),
        ("(x0 - x1) - x2", "x0 - x1 - x2"),
        ("-(x0*x1)", "-(x0*x1)"),
        ("(-x0)^2", "(-x0)^2"),
        ("3/4^2", "3/4^2"),
        ("x0*-x1", "x0*-x1"),
        ("6/4*i", "3/2*i"),
    ] {
        assert_eq!(parse_expression(src).unwrap().to_string(), printed, "{src}");
    }
}

const NAMES: [&str; 6] = ["x0", "x3", "y2", "s", "t", "eps"];

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0i64..20, 1i64..6).prop_map(|(a, b)| Expr::Num(Scalar::from_ratio(a, b))),
        Just(Expr::I),
        (0..NAMES.len()).prop_map(|k| Expr::Var(NAMES[k].into())),
    ]
}

/// Expressions of grade zero.
fn scalar_expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

/// One-forms: sums of `coefficient * dv` with optional signs.
fn one_form_expr() -> impl Strategy<Value = Expr> {
    let term = (scalar_expr(), 0usize..5, any::<bool>(), any::<bool>()).prop_map(|(c, k, left, neg)| {
        let d = Expr::Diff(NAMES[k].into());
        let t = if left { Expr::Mul(Box::new(c), Box::new(d)) } else { Expr::Mul(Box::new(d), Box::new(c)) };
        if neg {
            Expr::Neg(Box::new(t))
        } else {
            t
        }
    });
    prop::collection::vec((term, any::<bool>()), 1..4).prop_map(|ts| {
        let mut it = ts.into_iter();
        let (mut e, _) = it.next().unwrap();
        for (t, plus) in it {
            e = if plus { Expr::Add(Box::new(e), Box::new(t)) } else { Expr::Sub(Box::new(e), Box::new(t)) };
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn round_trip_scalar(e in scalar_expr()) {
        let printed = e.to_string();
        let back = parse_expression(&printed).unwrap();
        prop_assert_eq!(&back, &e, "{}", printed);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn round_trip_forms(e in one_form_expr()) {
        let printed = e.to_string();
        let back = parse_expression(&printed).unwrap();
        prop_assert_eq!(back.grade(), 1);
        prop_assert_eq!(&back, &e, "{}", printed);
    }

    #[test]
    fn printed_form_reparses_to_the_same_form(e in one_form_expr()) {
        // the library printer and the parser agree on the value
        let vars = Vars::new(NAMES[..5].iter().map(|s| s.to_string()).collect(), true).unwrap();
        let w = e.eval(&vars).unwrap();
        prop_assume!(!w.is_zero());
        let names = print_names(&vars, w.nvars());
        let text = w.fmt_with(&names);
        let back = parse_with(&text, &vars).unwrap().eval(&vars).unwrap();
        prop_assert_eq!(back.with_nvars(w.nvars()), w, "{}", text);
    }
}
