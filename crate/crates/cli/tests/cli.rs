use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pdmchan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdmchan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Checks the draft-07 keywords the bundled schemas use.
fn validate(root: &Value, schema: &Value, value: &Value, path: &str) -> Vec<String> {
    let mut errs = Vec::new();
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let target = r.trim_start_matches("#/").split('/').fold(root, |v, key| &v[key]);
        return validate(root, target, value, path);
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let ok = types.iter().any(|t| match *t {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "null" => value.is_null(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            _ => false,
        });
        if !ok {
            errs.push(format!("{path}: expected {types:?}, got {value}"));
            return errs;
        }
    }
    if let Some(options) = schema.get("enum").and_then(Value::as_array) {
        if !options.contains(value) {
            errs.push(format!("{path}: {value} not in {options:?}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), value.as_f64()) {
        if x < min {
            errs.push(format!("{path}: {x} < {min}"));
        }
    }
    if let (Some(min), Some(x)) = (schema.get("exclusiveMinimum").and_then(Value::as_f64), value.as_f64()) {
        if x <= min {
            errs.push(format!("{path}: {x} <= {min}"));
        }
    }
    if let Some(obj) = value.as_object() {
        for key in schema.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                errs.push(format!("{path}: missing {key}"));
            }
        }
        let props = schema.get("properties").and_then(Value::as_object);
        for (k, v) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => errs.extend(validate(root, sub, v, &format!("{path}.{k}"))),
                None if schema.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errs.push(format!("{path}: unexpected key {k}"))
                }
                None => {}
            }
        }
    }
    if let Some(arr) = value.as_array() {
        if let Some(min) = schema.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                errs.push(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(items) = schema.get("items") {
            for (i, v) in arr.iter().enumerate() {
                errs.extend(validate(root, items, v, &format!("{path}[{i}]")));
            }
        }
    }
    errs
}

fn assert_valid(schema_name: &str, doc: &str) {
    let s = schema(schema_name);
    let v: Value = serde_json::from_str(doc).unwrap();
    let errs = validate(&s, &s, &v, "$");
    assert!(errs.is_empty(), "{errs:#?}");
}

#[test]
fn validator_rejects_bad_documents() {
    let s = schema("spectrum.schema.json");
    let bad: Value = serde_json::json!({ "meta": {}, "entries": [{ "n": -1 }], "extra": 1 });
    let errs = validate(&s, &s, &bad, "$");
    assert!(errs.iter().any(|e| e.contains("missing")));
    assert!(errs.iter().any(|e| e.contains("unexpected key extra")));
    assert!(errs.iter().any(|e| e.contains("-1 < 0")));
}

#[test]
fn spectrum_csv_layout() {
    let text = stdout(&pdmchan(&["spectrum"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "geometry,n,l,m,s,delta,energy,degeneracy_class");
    assert_eq!(lines.len(), 1 + 27);
    assert_eq!(lines[1], "parallel,0,0,0,,1.41421356237310e0,8.24264068711928e0,0");
    let cyl = stdout(&pdmchan(&[
        "spectrum",
        "--geometry",
        "cylinder",
        "--m-max",
        "1",
        "--s-max",
        "1",
        "--n-max",
        "0",
    ]));
    let rows: Vec<&str> = cyl.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("cylinder,0,,0,1,2.40482555769577e0,"));
    assert!(rows[1].starts_with("cylinder,0,,-1,1,"));
    assert!(rows[2].starts_with("cylinder,0,,1,1,"));
}

#[test]
fn spectrum_json_matches_csv_and_schema() {
    for geometry in ["parallel", "cylinder"] {
        let csv = stdout(&pdmchan(&["spectrum", "--geometry", geometry]));
        let json = stdout(&pdmchan(&["spectrum", "--geometry", geometry, "--format", "json"]));
        assert_valid("spectrum.schema.json", &json);
        let doc: Value = serde_json::from_str(&json).unwrap();
        let entries = doc["entries"].as_array().unwrap();
        for (row, entry) in csv.lines().skip(1).zip(entries) {
            let fields: Vec<&str> = row.split(',').collect();
            assert_eq!(fields[5].parse::<f64>().unwrap(), entry["delta"].as_f64().unwrap());
            assert_eq!(fields[6].parse::<f64>().unwrap(), entry["energy"].as_f64().unwrap());
            assert_eq!(
                fields[7].parse::<u64>().unwrap(),
                entry["degeneracy_class"].as_u64().unwrap()
            );
        }
        assert_eq!(doc["meta"]["geometry"], geometry);
    }
}

#[test]
fn energies_in_units_of_q2() {
    let abs = stdout(&pdmchan(&[
        "spectrum", "--q", "2", "--n-max", "0", "--l-max", "0", "--m-max", "0",
    ]));
    let rel = stdout(&pdmchan(&[
        "spectrum",
        "--q",
        "2",
        "--n-max",
        "0",
        "--l-max",
        "0",
        "--m-max",
        "0",
        "--in-units-of-q2",
    ]));
    let e = |t: &str| {
        t.lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(6)
            .unwrap()
            .parse::<f64>()
            .unwrap()
    };
    assert!((e(&abs) / 4.0 - e(&rel)).abs() < 1e-13 * e(&rel));
}

#[test]
fn output_file_and_config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(
        &cfg,
        "geometry = cylinder\nR = 2\nn_max = 0\nm_max = 0\ns_max = 1\nq = 3\n",
    )
    .unwrap();
    let out = dir.path().join("spec.csv");
    let cfg_s = cfg.to_str().unwrap();
    let out_s = out.to_str().unwrap();
    let res = pdmchan(&["spectrum", "--config", cfg_s, "--q", "1", "--output", out_s]);
    assert!(res.status.success());
    assert!(res.stdout.is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    // q from the flag, R from the file: δ = j01 / (qR)
    let delta: f64 = text.lines().nth(1).unwrap().split(',').nth(5).unwrap().parse().unwrap();
    assert!((delta - 2.404825557695773 / 2.0).abs() < 1e-13);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["spectrum", "--k", "0"],
        vec!["spectrum", "--q", "-1"],
        vec!["spectrum", "--geometry", "sphere"],
        vec!["spectrum", "--no-such-flag"],
        vec!["spectrum", "--config", "/nonexistent/run.conf"],
        vec!["verify", "--grid-points", "2"],
        vec!["wavefunction", "--geometry", "cylinder", "--s", "0"],
        vec!["wavefunction", "--x", "-0.5"],
        vec!["wavefunction", "--y", "1.6"],
        vec!["wavefunction", "--geometry", "cylinder", "--rho", "1.5"],
        vec!["wavefunction", "--m", "-1"],
        vec!["wavefunction", "--x", "0:1"],
    ] {
        let out = pdmchan(&args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn wavefunction_columns() {
    let par = stdout(&pdmchan(&[
        "wavefunction",
        "--n",
        "1",
        "--l",
        "1",
        "--x",
        "0:2:5",
        "--y",
        "0.5",
        "--z",
        "-1:1:2",
    ]));
    let lines: Vec<&str> = par.lines().collect();
    assert_eq!(lines[0], "x,y,z,value");
    assert_eq!(lines.len(), 1 + 10);
    assert!(
        lines[1].ends_with(",0.00000000000000e0"),
        "psi vanishes at x = 0: {}",
        lines[1]
    );

    let cyl = stdout(&pdmchan(&[
        "wavefunction",
        "--geometry",
        "cylinder",
        "--m",
        "-2",
        "--s",
        "1",
        "--x",
        "1",
        "--rho",
        "0.5",
        "--phi",
        "0:1:3",
    ]));
    let lines: Vec<&str> = cyl.lines().collect();
    assert_eq!(lines[0], "x,rho,phi,re,im");
    assert_eq!(lines.len(), 4);
    // e^{-2iφ}: imaginary part negative for small φ > 0
    let im: f64 = lines[2].split(',').nth(4).unwrap().parse().unwrap();
    assert!(im < 0.0);
}

#[test]
fn degeneracy_tags() {
    let text = stdout(&pdmchan(&[
        "degeneracies",
        "--n-max",
        "0",
        "--l-max",
        "8",
        "--m-max",
        "8",
    ]));
    assert_eq!(text.lines().next().unwrap(), "class,kind,energy,size,members");
    assert!(text
        .lines()
        .any(|l| l.contains(",accidental,") && l.ends_with("(0,1,8) (0,5,6) (0,6,5) (0,8,1)")));
    let cyl = stdout(&pdmchan(&[
        "degeneracies",
        "--geometry",
        "cylinder",
        "--format",
        "json",
    ]));
    let doc: Value = serde_json::from_str(&cyl).unwrap();
    for class in doc["classes"].as_array().unwrap() {
        assert_eq!(class["kind"], "sign");
        let m: Vec<i64> = class["members"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m["m"].as_i64().unwrap())
            .collect();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0], -m[1]);
    }
    // a loose tolerance merges distinct cylinder levels; parallel levels are
    // also compared exactly and stay apart
    let loose = stdout(&pdmchan(&["degeneracies", "--geometry", "cylinder", "--tol", "0.05"]));
    assert!(loose.contains(",accidental,"));
    let loose = stdout(&pdmchan(&["degeneracies", "--tol", "0.05"]));
    assert!(!loose.contains(",accidental,"));
}

#[test]
fn verify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = pdmchan(&["verify", "--output", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary
        .lines()
        .any(|l| l.starts_with("spectrum cross-validation: PASS")));
    assert!(summary.ends_with("overall: PASS\n"));
    let json = std::fs::read_to_string(&report).unwrap();
    assert_valid("verify-report.schema.json", &json);

    let out = pdmchan(&["verify", "--geometry", "cylinder", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_valid("verify-report.schema.json", &String::from_utf8(out.stdout).unwrap());
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("radial orthonormality: PASS"));

    let out = pdmchan(&["verify", "--alpha", "0.5", "--beta", "-0.5"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("effective potential shift identically zero: N/A"));
}

#[test]
fn injected_fault_fails_verification() {
    let out = pdmchan(&["verify", "--inject-fault", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["passed"], false);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("spectrum cross-validation: FAIL"));
}

#[test]
fn logging_goes_to_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_pdmchan"))
        .args([
            "spectrum", "--k", "0.25", "--n-max", "0", "--l-max", "0", "--m-max", "0",
        ])
        .env("PDMCHAN_LOG", "warn")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("WARN"));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
}

#[test]
fn single_level_spectra() {
    let par = stdout(&pdmchan(&[
        "spectrum",
        "--geometry",
        "parallel",
        "--q",
        "1",
        "--k",
        "1",
        "--n-max",
        "0",
        "--l-max",
        "0",
        "--m-max",
        "0",
    ]));
    let rows: Vec<&str> = par.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let e: f64 = rows[0].split(',').nth(6).unwrap().parse().unwrap();
    assert!((e - (4.0 + 3.0 * 2f64.sqrt())).abs() < 1e-13);

    let cyl = stdout(&pdmchan(&[
        "spectrum",
        "--geometry",
        "cylinder",
        "--R",
        "1",
        "--n-max",
        "0",
        "--m-max",
        "0",
        "--s-max",
        "1",
    ]));
    let rows: Vec<&str> = cyl.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let e: f64 = rows[0].split(',').nth(6).unwrap().parse().unwrap();
    assert!((e - 14.997662636034104).abs() < 1e-12);
}

#[test]
fn wavefunction_boundaries_and_symmetry() {
    let text = stdout(&pdmchan(&["wavefunction", "--x", "0:2:3", "--y", "0", "--z", "0"]));
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 3);
    assert_eq!(values[0], 0.0);
    assert!(values[1] > 0.0);

    let a = stdout(&pdmchan(&["wavefunction", "--x", "0.7", "--y", "0.3", "--z", "-0.9"]));
    let b = stdout(&pdmchan(&["wavefunction", "--x", "0.7", "--y", "-0.9", "--z", "0.3"]));
    let value = |t: &str| t.lines().nth(1).unwrap().split(',').nth(3).unwrap().to_string();
    assert_eq!(value(&a), value(&b));

    let rim = stdout(&pdmchan(&[
        "wavefunction",
        "--geometry",
        "cylinder",
        "--m",
        "1",
        "--s",
        "1",
        "--x",
        "1",
        "--rho",
        "1",
        "--phi",
        "0.4",
    ]));
    let fields: Vec<f64> = rim
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|f| f.parse().unwrap())
        .collect();
    assert!(fields[3].abs() < 1e-14 && fields[4].abs() < 1e-14, "{fields:?}");
}

#[test]
fn ben_daniel_duke_line() {
    let out = pdmchan(&["verify", "--alpha", "0", "--beta", "-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("effective potential shift identically zero: PASS"));
}
