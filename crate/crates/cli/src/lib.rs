//! Command-line front end: expressions in, exact JSON reports out.

pub mod expr;

use clap::{Parser, Subcommand};
use expr::{parse_with, print_names, ParseError, Vars};
use folforge::extalg::{check_integrable, PolyField, PolyForm};
use folforge::foliation::{classify_low_degree, singular_divisorial_part, FoliationSpec};
use folforge::moduli::{
    certified_dimension, exc2_form, orbit_dimension, orthogonal_fields, sl_fields, table1_catalog, table_value, Ambient,
    ComponentFamily, FamilyKind, RowStatus,
};
use folforge::pencil::{multiple_fiber_bounds, r_partial, Pencil};
use folforge::quadvariety::{affq_build, named_example_report, QuadricContext};
use folforge::{Matrix, MultiPoly, Scalar};
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "folforge", version, about = "Exact computations with foliations on projective space and the quadric threefold")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Replay a JSON scenario instead of a subcommand.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integrability, radial annihilation, degree and divisorial part of a form.
    Check {
        #[arg(long, default_value = "P3")]
        ambient: String,
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Certified dimension of a parametrized family.
    Dim {
        /// Rat, Log, PBL or Aff.
        #[arg(long)]
        family: String,
        /// Comma-separated degrees; for PBL the foliation degree on ℙ².
        #[arg(long, default_value = "")]
        degrees: String,
        #[arg(long, default_value = "P3")]
        ambient: String,
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
    /// Orbit dimension of P3/Aff or Q3/Aff.
    Orbit {
        #[arg(long)]
        id: String,
    },
    /// Multiple-fiber bounds and r_partial of αf^p + βg^q.
    Pencil {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Members as `a:b` pairs separated by commas; defaults to the witnesses.
        #[arg(long, allow_hyphen_values = true)]
        members: Option<String>,
        #[arg(long, default_value = "P3")]
        ambient: String,
        /// Random lines intersected for the upper bound.
        #[arg(long, default_value_t = 3)]
        lines: usize,
    },
    /// Classify a foliation of degree 0 or 1.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long)]
        codim: usize,
        #[arg(long, default_value = "P3")]
        ambient: String,
    },
    /// Verify a named construction.
    Example {
        #[arg(long)]
        id: String,
    },
    /// Reproduce every catalog row.
    Catalog {
        #[arg(long, default_value_t = 2)]
        samples: usize,
    },
}

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(Value),
    Assertion(Value, String),
}

fn input_error(kind: &str, message: impl Into<String>) -> Failure {
    Failure::Input(json!({ "error": { "kind": kind, "message": message.into() } }))
}

fn parse_failure(field: &str, e: &ParseError) -> Failure {
    Failure::Input(json!({
        "error": { "kind": e.kind.name(), "message": e.message, "field": field, "line": e.line, "column": e.column }
    }))
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Run the CLI on `argv` (including the program name).
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: EXIT_OK, stdout: e.to_string(), stderr: String::new() };
            }
            let v = json!({ "error": { "kind": "UsageError", "message": e.to_string().trim_end() } });
            return Outcome { code: EXIT_INPUT, stdout: render(&v), stderr: String::new() };
        }
    };
    let result = match (&cli.scenario, &cli.command) {
        (Some(path), None) => run_scenario(path),
        (None, Some(cmd)) => dispatch(cmd, cli.seed),
        (Some(_), Some(_)) => Err(input_error("UsageError", "--scenario cannot be combined with a subcommand")),
        (None, None) => Err(input_error("UsageError", "a subcommand or --scenario is required")),
    };
    match result {
        Ok(v) => Outcome { code: EXIT_OK, stdout: render(&v), stderr: String::new() },
        Err(Failure::Input(v)) => Outcome { code: EXIT_INPUT, stdout: render(&v), stderr: String::new() },
        Err(Failure::Assertion(v, why)) => Outcome { code: EXIT_ASSERTION, stdout: render(&v), stderr: format!("{why}\n") },
    }
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Value, Failure> {
    match cmd {
        Command::Check { ambient, form } => check(ambient, form),
        Command::Dim { family, degrees, ambient, samples } => dim(family, degrees, ambient, *samples, seed),
        Command::Orbit { id } => orbit(id),
        Command::Pencil { f, g, p, q, members, ambient, lines } => pencil(f, g, *p, *q, members.as_deref(), ambient, *lines, seed),
        Command::Classify { form, codim, ambient } => classify(form, *codim, ambient),
        Command::Example { id } => example(id),
        Command::Catalog { samples } => catalog(*samples, seed),
    }
}

fn vars_for(ambient: &str) -> Result<Vars, Failure> {
    Vars::for_ambient(ambient).map_err(|m| input_error("UnknownAmbient", m))
}

fn ambient_of(label: &str) -> Result<Ambient, Failure> {
    match label {
        "Q3" => Ok(Ambient::standard_quadric()),
        _ => match label.strip_prefix('P').and_then(|d| d.parse::<usize>().ok()) {
            Some(n) if (1..=9).contains(&n) => Ok(Ambient::Projective(n)),
            _ => Err(input_error("UnknownAmbient", format!("unknown ambient '{label}' (expected P1..P9 or Q3)"))),
        },
    }
}

fn parse_form(field: &str, text: &str, vars: &Vars) -> Result<PolyForm, Failure> {
    let e = parse_with(text, vars).map_err(|e| parse_failure(field, &e))?;
    e.eval(vars).map_err(|m| input_error("GradingError", m))
}

fn parse_poly(field: &str, text: &str, vars: &Vars) -> Result<MultiPoly, Failure> {
    let e = parse_with(text, vars).map_err(|e| parse_failure(field, &e))?;
    if e.grade() != 0 || e.uses_eps() {
        return Err(input_error("GradingError", format!("--{field} must be a polynomial in the ambient variables")));
    }
    Ok(e.eval(vars).map_err(|m| input_error("GradingError", m))?.as_function())
}

fn parse_scalar(text: &str) -> Result<Scalar, Failure> {
    let vars = Vars::new(vec![], false).expect("empty");
    let e = parse_with(text, &vars).map_err(|e| parse_failure("members", &e))?;
    if e.grade() != 0 {
        return Err(input_error("GradingError", "pencil members must be scalars"));
    }
    e.eval(&vars)
        .map_err(|m| input_error("GradingError", m))?
        .as_function()
        .constant_value()
        .ok_or_else(|| input_error("SyntaxError", format!("'{text}' is not a constant")))
}

fn quadric_context(ambient: &Ambient) -> Option<&QuadricContext> {
    ambient.context()
}

fn check(ambient: &str, text: &str) -> Result<Value, Failure> {
    let vars = vars_for(ambient)?;
    let amb = ambient_of(ambient)?;
    let w = parse_form("form", text, &vars)?;
    let names = print_names(&vars, w.nvars());
    if w.is_zero() || w.degree() == 0 {
        return Err(input_error("GradingError", "--form must be a nonzero form of positive degree"));
    }
    let radial = PolyField::radial(w.nvars(), w.ndiff());
    let contracted = w.contract(&radial).map_err(|e| input_error("FormError", e.to_string()))?;
    let (integrable, radial_ok, divisorial) = match quadric_context(&amb) {
        Some(ctx) => {
            let reduced = ctx.reduce_form(&w);
            if reduced.is_zero() {
                return Err(input_error("FormError", "--form vanishes identically on the quadric"));
            }
            (ctx.integrable_on(&w), ctx.reduce_form(&contracted).is_zero(), singular_divisorial_part(&reduced))
        }
        None => {
            let v = check_integrable(&w).map_err(|e| input_error("FormError", e.to_string()))?;
            (v.integrable, contracted.is_zero(), singular_divisorial_part(&w))
        }
    };
    let m = w.coeff_degree();
    let degree = match (&amb, m) {
        (Ambient::Projective(_), Some(m)) => json!(m as i64 - 1),
        _ => Value::Null,
    };
    Ok(json!({
        "ambient": ambient,
        "form": w.fmt_with(&names),
        "codim": w.degree(),
        "integrable": integrable,
        "radial_ok": radial_ok,
        "coefficient_degree": m,
        "degree": degree,
        "singular_divisorial_part": divisorial.fmt_with(&names),
    }))
}

fn parse_degrees(s: &str) -> Result<Vec<u32>, Failure> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| input_error("UsageError", format!("bad degree '{t}'"))))
        .collect()
}

fn moduli_failure(e: folforge::moduli::ModuliError) -> Failure {
    input_error("ModuliError", e.to_string())
}

fn dim(family: &str, degrees: &str, ambient: &str, samples: usize, seed: u64) -> Result<Value, Failure> {
    let amb = ambient_of(ambient)?;
    let d = parse_degrees(degrees)?;
    let kind = match (family, d.as_slice()) {
        ("Rat", [a, b]) => FamilyKind::Rational(*a, *b),
        ("Log", _) => FamilyKind::Logarithmic(d.clone()),
        ("PBL", [deg]) => FamilyKind::LinearPullback { target: 2, degree: *deg },
        ("Aff", []) => FamilyKind::ActionOrbit(format!("{}/Aff", amb.label())),
        ("Rat", _) => return Err(input_error("UsageError", "Rat takes two degrees")),
        ("PBL", _) => return Err(input_error("UsageError", "PBL takes one degree")),
        ("Aff", _) => return Err(input_error("UsageError", "Aff takes no degrees")),
        _ => return Err(input_error("UsageError", format!("unknown family '{family}' (expected Rat, Log, PBL or Aff)"))),
    };
    let fam = ComponentFamily::new(kind, amb).map_err(moduli_failure)?;
    let r = certified_dimension(&fam, samples, seed).map_err(moduli_failure)?;
    Ok(json!({
        "id": r.id,
        "lower": r.lower,
        "upper": r.upper,
        "certified": r.certified,
        "table_value": r.table_value,
        "discrepancy_flag": r.discrepancy_flag,
        "domain_dimension": r.domain_dimension,
        "fiber_dimension": r.fiber_dimension,
        "ranks": r.ranks,
    }))
}

fn orbit(id: &str) -> Result<Value, Failure> {
    let dimension = match id {
        "P3/Aff" => orbit_dimension(&exc2_form().map_err(moduli_failure)?, &sl_fields(4), None).map_err(moduli_failure)?,
        "Q3/Aff" => {
            let b = affq_build().map_err(|e| input_error("QuadError", e.to_string()))?;
            orbit_dimension(&b.omega, &orthogonal_fields(&b.ctx), Some(&b.ctx)).map_err(moduli_failure)?
        }
        _ => return Err(input_error("UnknownId", format!("unknown orbit id '{id}' (expected P3/Aff or Q3/Aff)"))),
    };
    Ok(json!({ "id": id, "orbit_dimension": dimension, "table_value": table_value(id) }))
}

fn parse_members(text: &str) -> Result<Vec<(Scalar, Scalar)>, Failure> {
    if text.trim().is_empty() {
        return Ok(vec![]);
    }
    text.split(',')
        .map(|pair| {
            let (a, b) = pair.split_once(':').ok_or_else(|| input_error("SyntaxError", format!("member '{pair}' is not of the form a:b")))?;
            let (a, b) = (parse_scalar(a)?, parse_scalar(b)?);
            if a.is_zero() && b.is_zero() {
                return Err(input_error("SyntaxError", "member 0:0 is not a point of ℙ¹"));
            }
            Ok((a, b))
        })
        .collect()
}

fn pair_json(p: &[(Scalar, Scalar)]) -> Value {
    Value::Array(p.iter().map(|(a, b)| json!([a.to_canonical(), b.to_canonical()])).collect())
}

#[allow(clippy::too_many_arguments)]
fn pencil(f: &str, g: &str, p: u32, q: u32, members: Option<&str>, ambient: &str, lines: usize, seed: u64) -> Result<Value, Failure> {
    let vars = vars_for(ambient)?;
    let fp = parse_poly("f", f, &vars)?;
    let gp = parse_poly("g", g, &vars)?;
    let pc = Pencil::new(fp, gp, p, q).map_err(|e| input_error("PencilError", e.to_string()))?;
    let b = multiple_fiber_bounds(&pc, lines, seed).map_err(|e| input_error("PencilError", e.to_string()))?;
    let members = match members {
        Some(m) => parse_members(m)?,
        None => b.witnesses.clone(),
    };
    let r = r_partial(&pc, &members, seed).map_err(|e| input_error("PencilError", e.to_string()))?;
    Ok(json!({
        "multiple_lower": b.lower,
        "multiple_upper": b.upper,
        "r_partial": r,
        "witnesses": pair_json(&b.witnesses),
        "members": pair_json(&members),
    }))
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_canonical())).collect())).collect())
}

fn classify(text: &str, codim: usize, ambient: &str) -> Result<Value, Failure> {
    let vars = vars_for(ambient)?;
    if ambient == "Q3" {
        return Err(input_error("UnknownAmbient", "classification is only available on projective space"));
    }
    let w = parse_form("form", text, &vars)?;
    if w.degree() != codim {
        return Err(input_error("GradingError", format!("--form is a {}-form but --codim is {codim}", w.degree())));
    }
    let names = print_names(&vars, w.nvars());
    let polys = |ps: &[MultiPoly]| Value::Array(ps.iter().map(|p| json!(p.fmt_with(&names))).collect());
    let spec = FoliationSpec::new(w).map_err(|e| input_error("FoliationError", e.to_string()))?;
    let c = classify_low_degree(&spec).map_err(|e| input_error("FoliationError", e.to_string()))?;
    let kind = if c.linear_projection.is_some() {
        "linear projection"
    } else if c.case1.is_some() {
        "case (1)"
    } else {
        "case (2)"
    };
    Ok(json!({
        "degree": c.degree,
        "codim": c.codim,
        "essential_variables": c.essential_variables,
        "kind": kind,
        "linear_forms": c.linear_projection.as_deref().map(polys),
        "case1": c.case1.as_ref().map(|c1| json!({
            "linear": polys(&c1.linear),
            "quadric": c1.quadric.fmt_with(&names),
            "scalar": c1.scalar.to_canonical(),
        })),
        "case2": c.case2.as_ref().map(|c2| json!({
            "coordinates": polys(&c2.coordinates),
            "field": matrix_json(&c2.field),
        })),
    }))
}

fn example(id: &str) -> Result<Value, Failure> {
    let r = named_example_report(id).map_err(|e| input_error("UnknownId", e.to_string()))?;
    let checks: Vec<Value> = r.checks.iter().map(|(n, ok)| json!({ "name": n, "ok": ok })).collect();
    let mut details = Map::new();
    for (k, v) in &r.details {
        details.insert(k.clone(), json!(v));
    }
    let passed = r.passed();
    let v = json!({ "id": r.id, "passed": passed, "checks": checks, "details": details });
    if passed {
        Ok(v)
    } else {
        let why = format!("{id}: {} failed", r.first_failure().unwrap_or("check"));
        Err(Failure::Assertion(v, why))
    }
}

fn status_name(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Match => "match",
        RowStatus::Flagged => "flagged",
        RowStatus::Uncertified => "uncertified",
        RowStatus::NotBuildable => "not-buildable",
    }
}

fn catalog(samples: usize, seed: u64) -> Result<Value, Failure> {
    let rows: Vec<Value> = table1_catalog()
        .into_par_iter()
        .map(|e| match e.run(samples, seed) {
            Ok(o) => json!({
                "id": o.id,
                "expected": o.expected,
                "plan": o.plan_id,
                "value": o.value,
                "certified": o.certified,
                "status": status_name(o.status),
                "discrepancy": e.discrepancy,
            }),
            Err(err) => json!({
                "id": e.id,
                "expected": e.expected,
                "plan": e.plan_id(),
                "value": Value::Null,
                "certified": false,
                "status": "error",
                "discrepancy": e.discrepancy,
                "message": err.to_string(),
            }),
        })
        .collect();
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| matches!(r["status"].as_str(), Some("uncertified" | "error")))
        .map(|r| r["id"].as_str().unwrap_or("?").to_string())
        .collect();
    let v = json!({ "rows": rows });
    if bad.is_empty() {
        Ok(v)
    } else {
        Err(Failure::Assertion(v, format!("rows failed: {}", bad.join(", "))))
    }
}

/// Turn a scenario document into argv.
///
/// ```json
/// { "command": "dim", "seed": 0,
///   "args": { "family": "Rat", "degrees": "1,3", "ambient": "P3" },
///   "expect": { "upper": 21, "certified": true } }
/// ```
pub fn scenario_argv(doc: &Value) -> Result<Vec<String>, String> {
    let obj = doc.as_object().ok_or("scenario must be a JSON object")?;
    for k in obj.keys() {
        if !matches!(k.as_str(), "command" | "seed" | "args" | "expect" | "description") {
            return Err(format!("unknown scenario key '{k}'"));
        }
    }
    let command = obj.get("command").and_then(Value::as_str).ok_or("scenario needs a string 'command'")?;
    let seed = match obj.get("seed") {
        Some(s) => s.as_u64().ok_or("'seed' must be a non-negative integer")?,
        None => return Err("scenario seeds are explicit: 'seed' is required".into()),
    };
    let mut argv = vec!["folforge".to_string(), "--seed".into(), seed.to_string(), command.to_string()];
    if let Some(args) = obj.get("args") {
        for (k, v) in args.as_object().ok_or("'args' must be an object")? {
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(format!("argument '{k}' must be a string or a number")),
            };
            argv.push(format!("--{k}"));
            argv.push(s);
        }
    }
    Ok(argv)
}

fn run_scenario(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error("IoError", format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| input_error("ScenarioError", e.to_string()))?;
    let argv = scenario_argv(&doc).map_err(|m| input_error("ScenarioError", m))?;
    let cli = Cli::try_parse_from(&argv).map_err(|e| input_error("ScenarioError", e.to_string().trim_end()))?;
    let cmd = cli.command.ok_or_else(|| input_error("ScenarioError", "missing command"))?;
    let v = dispatch(&cmd, cli.seed)?;
    let mut mismatches = Vec::new();
    if let Some(expect) = doc.get("expect") {
        let expect = expect.as_object().ok_or_else(|| input_error("ScenarioError", "'expect' must be an object"))?;
        for (k, want) in expect {
            match v.get(k) {
                Some(got) if got == want => {}
                got => mismatches.push(format!("{k}: expected {want}, got {}", got.map_or("nothing".into(), |g| g.to_string()))),
            }
        }
    }
    if mismatches.is_empty() {
        Ok(v)
    } else {
        Err(Failure::Assertion(v, mismatches.join("\n")))
    }
}
