use folforge_cli::{run, scenario_argv, Outcome, EXIT_ASSERTION, EXIT_INPUT, EXIT_OK};
use serde_json::{json, Value};
use std::path::PathBuf;

fn folforge(args: &[&str]) -> Outcome {
    run(std::iter::once("folforge").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> Value {
    let o = folforge(args);
    assert_eq!(o.code, EXIT_OK, "{args:?}: {}", o.stdout);
    serde_json::from_str(&o.stdout).unwrap()
}

fn input_error(args: &[&str]) -> Value {
    let o = folforge(args);
    assert_eq!(o.code, EXIT_INPUT, "{args:?}: {}", o.stdout);
    serde_json::from_str::<Value>(&o.stdout).unwrap()["error"].clone()
}

#[test]
fn check_reports() {
    let v = ok(&["check", "--ambient", "P3", "--form", "x1*dx0 - x0*dx1"]);
    assert_eq!(v["integrable"], true);
    assert_eq!(v["radial_ok"], true);
    assert_eq!(v["degree"], 0);
    assert_eq!(v["singular_divisorial_part"], "1");

    // x0·(x1dx0 − x0dx1): a common factor, still integrable
    let v = ok(&["check", "--form", "x0*x1*dx0 - x0^2*dx1"]);
    assert_eq!(v["singular_divisorial_part"], "x0");
    // not radially annihilated, not integrable
    let v = ok(&["check", "--form", "x1*dx0 + x2*dx1 + x0*dx2"]);
    assert_eq!(v["radial_ok"], false);
    assert_eq!(v["integrable"], false);

    let v = ok(&["check", "--ambient", "Q3", "--form", "x1*dx0 - x0*dx1"]);
    assert_eq!(v["degree"], Value::Null);
    assert_eq!(v["integrable"], true);
    assert_eq!(input_error(&["check", "--ambient", "Q3", "--form", "(x0^2+x1*x2+x3*x4)*dx0"])["kind"], "FormError");
}

#[test]
fn parse_errors_are_input_errors() {
    let e = input_error(&["check", "--form", "3*f2*dx1"]);
    assert_eq!(e["kind"], "UnknownIdentifier");
    assert_eq!((e["line"].clone(), e["column"].clone()), (json!(1), json!(3)));
    assert_eq!(input_error(&["check", "--form", "dx0^2"])["kind"], "GradingError");
    assert_eq!(input_error(&["check", "--form", "x0 +"])["kind"], "SyntaxError");
    assert_eq!(input_error(&["check", "--form", "x0"])["kind"], "GradingError");
    assert_eq!(input_error(&["check", "--ambient", "P12", "--form", "dx0"])["kind"], "UnknownAmbient");
    assert_eq!(input_error(&["nope"])["kind"], "UsageError");
    assert_eq!(input_error(&[])["kind"], "UsageError");
}

#[test]
fn dim_reports() {
    let v = ok(&["dim", "--family", "Rat", "--degrees", "1,3", "--ambient", "P3"]);
    assert_eq!(v["id"], "P3/Rat(1,3)");
    assert_eq!(v["upper"], 21);
    assert_eq!(v["lower"], 21);
    assert_eq!(v["certified"], true);
    assert_eq!(v["table_value"], 21);
    let v = ok(&["dim", "--family", "PBL", "--degrees", "2"]);
    assert_eq!(v["upper"], 17);
    let v = ok(&["dim", "--family", "Rat", "--degrees", "1,2", "--ambient", "Q3"]);
    assert_eq!(v["discrepancy_flag"], true);
    assert_eq!(v["upper"], 16);
    assert_eq!(input_error(&["dim", "--family", "Rat", "--degrees", "1"])["kind"], "UsageError");
    assert_eq!(input_error(&["dim", "--family", "Foo"])["kind"], "UsageError");
    assert_eq!(input_error(&["dim", "--family", "Rat", "--degrees", "0,2"])["kind"], "ModuliError");
}

#[test]
fn orbit_reports() {
    assert_eq!(ok(&["orbit", "--id", "P3/Aff"])["orbit_dimension"], 13);
    assert_eq!(ok(&["orbit", "--id", "Q3/Aff"])["orbit_dimension"], 8);
    assert_eq!(input_error(&["orbit", "--id", "X5/Aff"])["kind"], "UnknownId");
}

#[test]
fn pencil_reports() {
    let v = ok(&["pencil", "--f", "x0", "--g", "x1", "--p", "1", "--q", "1"]);
    assert_eq!((v["multiple_lower"].clone(), v["multiple_upper"].clone(), v["r_partial"].clone()), (json!(0), json!(0), json!(0)));

    let v = ok(&["pencil", "--f", "x0*x1", "--g", "x2*x3", "--p", "1", "--q", "1", "--members", "1:0, 0:1"]);
    assert_eq!(v["r_partial"], 2);
    assert_eq!(v["members"], json!([["1/1", "0/1"], ["0/1", "1/1"]]));

    // (x0² : x1² + x2²) has the double member x0²; members may be complex
    let v = ok(&["pencil", "--f", "x0", "--g", "x1^2 + x2^2", "--p", "2", "--q", "1", "--members", "0:1,1:-1/2+i"]);
    assert_eq!(v["multiple_lower"], 1);
    assert_eq!(v["multiple_upper"], 1);
    assert_eq!(v["r_partial"], 1);
    assert_eq!(v["witnesses"], json!([["1/1", "0/1"]]));

    assert_eq!(input_error(&["pencil", "--f", "x0", "--g", "x1", "--p", "2", "--q", "1"])["kind"], "PencilError");
    assert_eq!(input_error(&["pencil", "--f", "x0", "--g", "x1", "--p", "1", "--q", "1", "--members", "1"])["kind"], "SyntaxError");
    assert_eq!(input_error(&["pencil", "--f", "dx0", "--g", "x1", "--p", "1", "--q", "1"])["kind"], "GradingError");
}

#[test]
fn classify_reports() {
    let v = ok(&["classify", "--form", "x1*dx0 - x0*dx1", "--codim", "1"]);
    assert_eq!(v["kind"], "linear projection");
    assert_eq!(v["linear_forms"].as_array().unwrap().len(), 2);

    let v = ok(&["classify", "--ambient", "P4", "--codim", "2", "--form", "x0*dx1*dx2 - x1*dx0*dx2 + x2*dx0*dx1"]);
    assert_eq!(v["kind"], "linear projection");
    assert_eq!(v["essential_variables"], 3);

    let v = ok(&["classify", "--codim", "1", "--form", "x0*(x1*dx2 + x2*dx1 + 2*x3*dx3) - 2*(x1*x2 + x3^2)*dx0"]);
    assert_eq!(v["degree"], 1);
    assert_eq!(v["kind"], "case (1)");
    assert_eq!(v["case1"]["linear"].as_array().unwrap().len(), 1);

    assert_eq!(input_error(&["classify", "--form", "x1*dx0 - x0*dx1", "--codim", "2"])["kind"], "GradingError");
    assert_eq!(input_error(&["classify", "--form", "x1*dx0 + x2*dx1", "--codim", "1"])["kind"], "FoliationError");
}

#[test]
fn example_reports() {
    let v = ok(&["example", "--id", "affQ"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["details"]["orbit_dimension"], "8");
    for id in ["QCstar-01", "QCstar-11", "QCplus-2", "QCplus-3"] {
        assert_eq!(ok(&["example", "--id", id])["passed"], true);
    }
    assert_eq!(input_error(&["example", "--id", "nope"])["kind"], "UnknownId");
}

#[test]
fn catalog_runs_every_row() {
    let v = ok(&["catalog"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), folforge::moduli::table1_catalog().len());
    for r in rows {
        let status = r["status"].as_str().unwrap();
        assert!(matches!(status, "match" | "flagged" | "not-buildable"), "{r}");
        assert_eq!(status == "flagged", r["discrepancy"] == true, "{r}");
    }
    // stable order
    let ids: Vec<&str> = rows.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let want: Vec<&str> = folforge::moduli::table1_catalog().iter().map(|e| e.id).collect();
    assert_eq!(ids, want);
}

#[test]
fn seeds_make_runs_identical() {
    for args in [
        vec!["--seed", "7", "dim", "--family", "Log", "--degrees", "1,1,1,1"],
        vec!["--seed", "3", "pencil", "--f", "x0*x1", "--g", "x2^2 + x3^2", "--p", "1", "--q", "1"],
        vec!["catalog"],
    ] {
        assert_eq!(folforge(&args), folforge(&args));
    }
}

fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scenarios")
}

#[test]
fn scenario_corpus_replays() {
    let mut n = 0;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(scenario_dir()).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for p in paths {
        let o = folforge(&["--scenario", p.to_str().unwrap()]);
        assert_eq!(o.code, EXIT_OK, "{}: {}{}", p.display(), o.stdout, o.stderr);
        // the replay equals the direct invocation
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        let argv = scenario_argv(&doc).unwrap();
        assert_eq!(run(argv).stdout, o.stdout);
        n += 1;
    }
    assert!(n >= 8);
}

#[test]
fn scenario_failures() {
    let dir = std::env::temp_dir().join(format!("folforge-scenarios-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, v: Value| {
        let p = dir.join(name);
        std::fs::write(&p, v.to_string()).unwrap();
        p
    };
    let wrong = write(
        "wrong.json",
        json!({ "command": "orbit", "seed": 0, "args": { "id": "P3/Aff" }, "expect": { "orbit_dimension": 12 } }),
    );
    let o = folforge(&["--scenario", wrong.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_ASSERTION);
    assert!(o.stderr.contains("orbit_dimension"));
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["orbit_dimension"], 13);

    let seedless = write("seedless.json", json!({ "command": "orbit", "args": { "id": "P3/Aff" } }));
    assert_eq!(folforge(&["--scenario", seedless.to_str().unwrap()]).code, EXIT_INPUT);
    let bad = write("bad.json", json!({ "command": "orbit", "seed": 0, "args": { "nope": "1" } }));
    assert_eq!(folforge(&["--scenario", bad.to_str().unwrap()]).code, EXIT_INPUT);
    assert_eq!(folforge(&["--scenario", dir.join("missing.json").to_str().unwrap()]).code, EXIT_INPUT);
    assert_eq!(folforge(&["--scenario", wrong.to_str().unwrap(), "catalog"]).code, EXIT_INPUT);
    std::fs::remove_dir_all(&dir).unwrap();
}
