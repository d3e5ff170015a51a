use std::path::Path;
use std::process::{Command, Output};

use heat_trace::deform::deformed_f5;
use heat_trace::{Coupling, SeriesPolicy};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heat-trace"))
        .args(args)
        .env_remove("HEAT_TRACE_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_value(o: &Output) -> f64 {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(o).lines().next().unwrap().parse().unwrap()
}

#[test]
fn compute_sphere_pc() {
    let o = run(&["compute", "sphere", "--d", "3", "--coupling", "pc"]);
    let text = stdout(&o);
    assert!(text.starts_with("0.030448457058"), "{text}");
    assert!(text.contains("method: closed_form"));
    for method in ["zeta", "integral"] {
        let v = first_value(&run(&[
            "compute",
            "sphere",
            "--d",
            "3",
            "--coupling",
            "pc",
            "--method",
            method,
        ]));
        assert!((v - 0.030_448_457_058_393).abs() < 1e-10, "{method}: {v}");
    }
    let v = first_value(&run(&[
        "compute", "sphere", "--d", "3", "--method", "series",
    ]));
    assert!((v - 0.063_807_054_776_198).abs() < 1e-12);
}

#[test]
fn compute_circle_and_cycle() {
    let exact = 3.139_723_465_013_058;
    let b = first_value(&run(&[
        "compute", "cycle", "--N", "17", "--ma", "1", "--method", "bessel",
    ]));
    let l = first_value(&run(&[
        "compute", "cycle", "--n", "17", "--ma", "1", "--method", "logdet",
    ]));
    let s = first_value(&run(&["compute", "s1", "--ma", "1"]));
    let w = first_value(&run(&["compute", "s1", "--ma", "1", "--method", "series"]));
    for v in [b, l, s, w] {
        assert!((v - exact).abs() < 1e-10, "{v}");
    }
    let pv = first_value(&run(&["compute", "s1", "--ma", "1", "--Ma", "2"]));
    assert!((pv - (-3.143_458_354_818_091)).abs() < 1e-10);
}

#[test]
fn compute_deformed_matches_library() {
    let o = run(&[
        "compute",
        "deformed",
        "--d",
        "5",
        "--N",
        "40",
        "--coupling",
        "conformal",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got = v["value"].as_f64().unwrap();
    assert!(got.is_finite());
    let lib: f64 = deformed_f5(40, Coupling::Conformal, &SeriesPolicy::with_tol(1e-12))
        .unwrap()
        .value;
    assert_eq!(got.to_bits(), lib.to_bits());
    assert_eq!(v["N"], 40);
    assert_eq!(v["coupling"], "conformal");

    let series = first_value(&run(&[
        "compute", "deformed", "--d", "3", "--N", "20", "--method", "series",
    ]));
    let integral = first_value(&run(&[
        "compute", "deformed", "--d", "3", "--N", "20", "--method", "integral",
    ]));
    let qsum = first_value(&run(&[
        "compute", "deformed", "--d", "3", "--N", "20", "--method", "bessel",
    ]));
    assert!((series - integral).abs() < 1e-9 && (series - qsum).abs() < 1e-9);

    let q = first_value(&run(&[
        "compute",
        "qdeformed",
        "--N",
        "20",
        "--coupling",
        "pc",
    ]));
    let z3 = 1.202_056_903_159_594_3;
    let z5 = 1.036_927_755_143_37;
    let pi2 = std::f64::consts::PI.powi(2);
    let want =
        z3 / (4.0 * pi2) + pi2 / 400.0 * (5.0 * z3 / (24.0 * pi2) + 5.0 * z5 / (8.0 * pi2 * pi2));
    assert!((q - want).abs() < 1e-12, "{q} vs {want}");
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn sweep_decreasing_and_one_percent_near_twenty() {
    let o = run(&[
        "sweep",
        "--d",
        "3",
        "--coupling",
        "conformal",
        "--N",
        "6:60:2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("N,F_deformed,F_limit,rel_error"));
    assert!(!text.contains('\r'));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 28);
    let ns: Vec<u32> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(ns, (6..=60).step_by(2).collect::<Vec<_>>());
    let errs: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));
    let at20 = errs[ns.iter().position(|&n| n == 20).unwrap()];
    assert!((0.005..=0.02).contains(&at20), "{at20}");
}

#[test]
fn sweep_json_matches_csv_bitwise() {
    let csv = stdout(&run(&[
        "sweep",
        "--d",
        "5",
        "--coupling",
        "pc",
        "--N",
        "10:30:5",
    ]));
    let json = stdout(&run(&[
        "sweep",
        "--d",
        "5",
        "--coupling",
        "pc",
        "--N",
        "10:30:5",
        "--format",
        "json",
    ]));
    let arr: Vec<Value> = serde_json::from_str(&json).unwrap();
    let rows = csv_rows(&csv);
    assert_eq!(arr.len(), rows.len());
    for (obj, row) in arr.iter().zip(&rows) {
        assert_eq!(obj["N"].to_string(), row[0]);
        for (key, cell) in ["F_deformed", "F_limit", "rel_error"].iter().zip(&row[1..]) {
            assert_eq!(obj[key].to_string(), *cell);
            let parsed: f64 = cell.parse().unwrap();
            assert_eq!(parsed.to_bits(), obj[key].as_f64().unwrap().to_bits());
        }
    }
}

#[test]
fn sweep_output_independent_of_thread_count() {
    let base = [
        "sweep",
        "--d",
        "7",
        "--coupling",
        "conformal",
        "--N",
        "14:60:3",
        "--method",
        "integral",
    ];
    let one = run(&[&base[..], &["--threads", "1"]].concat());
    let many = run(&[&base[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn compute_is_deterministic_and_writes_files() {
    let args = [
        "compute", "deformed", "--d", "3", "--N", "33", "--format", "csv",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let dir = std::env::temp_dir().join(format!("heat-trace-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.csv");
    let o = run(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), run(&args).stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tolerance_from_environment() {
    let loose = Command::new(env!("CARGO_BIN_EXE_heat-trace"))
        .args([
            "compute", "s1", "--ma", "0.1", "--method", "series", "--format", "json",
        ])
        .env("HEAT_TRACE_TOL", "1e-4")
        .output()
        .unwrap();
    let strict = run(&[
        "compute", "s1", "--ma", "0.1", "--method", "series", "--format", "json",
    ]);
    let terms = |o: &Output| {
        serde_json::from_slice::<Value>(&o.stdout).unwrap()["terms_or_nodes"]
            .as_u64()
            .unwrap()
    };
    assert!(terms(&loose) < terms(&strict));
    // an explicit flag wins over the environment
    let flagged = Command::new(env!("CARGO_BIN_EXE_heat-trace"))
        .args([
            "compute", "s1", "--ma", "0.1", "--method", "series", "--format", "json", "--tol",
            "1e-12",
        ])
        .env("HEAT_TRACE_TOL", "1e-4")
        .output()
        .unwrap();
    assert_eq!(flagged.stdout, strict.stdout);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["compute", "sphere", "--d", "4"],
        &["compute", "cycle", "--ma", "1"],
        &["compute", "cycle", "--N", "2", "--ma", "1"],
        &["compute", "s1", "--ma", "-1"],
        &["compute", "deformed", "--d", "5", "--N", "9"],
        &[
            "compute",
            "sphere",
            "--d",
            "3",
            "--coupling",
            "conformal",
            "--method",
            "zeta",
        ],
        &["compute", "qdeformed", "--d", "5", "--N", "20"],
        &["compute", "sphere", "--d", "3", "--ma", "0.3"],
        &["compute", "sphere", "--d", "3", "--tol", "0"],
        &["sweep", "--d", "3", "--N", "4:20:2"],
        &["sweep", "--d", "3", "--N", "20:10"],
        &["verify", "--suite", "everything"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
    let bad_env = Command::new(env!("CARGO_BIN_EXE_heat-trace"))
        .args(["compute", "s1", "--ma", "1"])
        .env("HEAT_TRACE_TOL", "tight")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn help_documents_flags() {
    let o = run(&["compute", "--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for flag in [
        "--d",
        "--N",
        "--coupling",
        "--ma",
        "--Ma",
        "--method",
        "--tol",
        "--format",
        "--output",
    ] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
    let text = stdout(&run(&["sweep", "--help"]));
    for flag in [
        "--d",
        "--N",
        "--coupling",
        "--method",
        "--threads",
        "--format",
    ] {
        assert!(text.contains(flag), "{flag} missing from sweep help");
    }
}

#[test]
fn verify_table1_all_pass() {
    let o = run(&["verify", "--suite", "table1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("10/10 checks passed"), "{text}");
    assert_eq!(text.matches("PASS").count(), 10);
}

#[test]
fn verify_identities_lists_required_checks() {
    let o = run(&["verify", "--suite", "identities", "--format", "json"]);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    for prefix in [
        "identity/alt_sum/",
        "identity/bessel_expansion/",
        "identity/discrete_bessel_sum/",
        "identity/poisson/",
        "identity/degeneracy_forms/",
        "identity/eta_zeta/",
        "identity/q_binomial/",
        "route/",
    ] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix}");
    }
    assert_eq!(report["all_pass"], true);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_figures_exit_code_mirrors_report() {
    let o = run(&["verify", "--suite", "figures", "--format", "json"]);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let checks = report["checks"].as_array().unwrap();
    let find = |name: &str| {
        checks
            .iter()
            .find(|c| c["name"] == name)
            .unwrap_or_else(|| panic!("{name}"))
    };
    for name in ["threshold/conformal/d=3", "threshold/pc/d=3"] {
        assert_eq!(find(name)["pass"], true);
    }
    find("threshold/conformal/d=5");
    find("threshold/pc/d=5");
    let all = checks.iter().all(|c| c["pass"] == true);
    assert_eq!(report["all_pass"], all);
    assert_eq!(o.status.code(), Some(if all { 0 } else { 1 }));
}

fn validate(schema: &Value, v: &Value, path: &str) {
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().map(|x| x.as_str().unwrap()).collect(),
            _ => panic!("bad schema type at {path}"),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "number" => v.is_number(),
            "integer" => v.is_u64() || v.is_i64(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => false,
        });
        assert!(ok, "{path}: {v} is not {types:?}");
    }
    if let Some(allowed) = schema.get("enum") {
        assert!(
            allowed.as_array().unwrap().contains(v),
            "{path}: {v} not in enum"
        );
    }
    if let (Some(props), Some(obj)) = (schema.get("properties"), v.as_object()) {
        for req in schema
            .get("required")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            assert!(
                obj.contains_key(req.as_str().unwrap()),
                "{path}: missing {req}"
            );
        }
        if schema.get("additionalProperties") == Some(&Value::Bool(false)) {
            for k in obj.keys() {
                assert!(props.get(k).is_some(), "{path}: unexpected key {k}");
            }
        }
        for (k, sub) in props.as_object().unwrap() {
            if let Some(x) = obj.get(k) {
                validate(sub, x, &format!("{path}.{k}"));
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(items, x, &format!("{path}[{i}]"));
        }
    }
}

#[test]
fn json_report_matches_schema_and_is_deterministic() {
    let schema_path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/verify_report.schema.json");
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    for suite in ["table1", "identities", "figures"] {
        let a = run(&["verify", "--suite", suite, "--format", "json"]);
        let b = run(&["verify", "--suite", suite, "--format", "json"]);
        let mut ra: Value = serde_json::from_slice(&a.stdout).unwrap();
        let mut rb: Value = serde_json::from_slice(&b.stdout).unwrap();
        validate(&schema, &ra, "$");
        ra["wall_time_ms"] = Value::Null;
        rb["wall_time_ms"] = Value::Null;
        assert_eq!(ra, rb);
    }
    let t1 = run(&["verify", "--suite", "table1"]);
    assert_eq!(t1.stdout, run(&["verify", "--suite", "table1"]).stdout);
}
