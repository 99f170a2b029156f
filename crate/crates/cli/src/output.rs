//! Byte-deterministic CSV and JSON rendering.

use pdmchan_core::analytic::{DegeneracyClass, QuantumNumbers, SpectrumEntry};
use pdmchan_core::verify::SuiteReport;
use serde_json::{json, Map, Value};

use crate::config::{GeometryArg, RunConfig};

/// Fixed scientific notation with 15 significant digits.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0.00000000000000e0".into()
    } else if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string()
    }
}

/// The value whose shortest representation is what [`fmt_float`] prints,
/// so CSV and JSON carry the same number. Non-finite values become `null`.
pub fn json_float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = fmt_float(x).parse().expect("formatted float parses");
    json!(rounded)
}

fn geometry_name(g: GeometryArg) -> &'static str {
    match g {
        GeometryArg::Parallel => "parallel",
        GeometryArg::Cylinder => "cylinder",
    }
}

pub fn meta(cfg: &RunConfig) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("geometry".into(), json!(geometry_name(cfg.geometry)));
    m.insert("q".into(), json_float(cfg.q));
    m.insert("k".into(), json_float(cfg.k));
    m.insert(
        "radius".into(),
        match cfg.geometry {
            GeometryArg::Parallel => Value::Null,
            GeometryArg::Cylinder => json_float(cfg.radius),
        },
    );
    m.insert("alpha".into(), json_float(cfg.alpha));
    m.insert("beta".into(), json_float(cfg.beta));
    m.insert(
        "energy_units".into(),
        json!(if cfg.in_units_of_q2 { "q2" } else { "absolute" }),
    );
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m
}

/// `(l, m, s)` columns; absent numbers are `None`.
fn transverse(qn: &QuantumNumbers) -> (Option<u32>, Option<i64>, Option<u32>) {
    match *qn {
        QuantumNumbers::Parallel { l, m, .. } => (Some(l), Some(m as i64), None),
        QuantumNumbers::Cylinder { m, s, .. } => (None, Some(m as i64), Some(s)),
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn qn_json(qn: &QuantumNumbers) -> Map<String, Value> {
    let (l, m, s) = transverse(qn);
    let mut o = Map::new();
    o.insert("n".into(), json!(qn.n()));
    o.insert("l".into(), json!(l));
    o.insert("m".into(), json!(m));
    o.insert("s".into(), json!(s));
    o
}

pub const SPECTRUM_HEADER: &str = "geometry,n,l,m,s,delta,energy,degeneracy_class";

pub fn spectrum_csv(cfg: &RunConfig, entries: &[SpectrumEntry]) -> String {
    let unit = cfg.energy_unit();
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for e in entries {
        let (l, m, s) = transverse(&e.qn);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            geometry_name(cfg.geometry),
            e.qn.n(),
            opt(l),
            opt(m),
            opt(s),
            fmt_float(e.delta),
            fmt_float(e.energy / unit),
            e.degeneracy_class
        ));
    }
    out
}

pub fn spectrum_json(cfg: &RunConfig, entries: &[SpectrumEntry]) -> String {
    let unit = cfg.energy_unit();
    let rows: Vec<Value> = entries
        .iter()
        .map(|e| {
            let mut o = Map::new();
            o.insert("geometry".into(), json!(geometry_name(cfg.geometry)));
            o.extend(qn_json(&e.qn));
            o.insert("delta".into(), json_float(e.delta));
            o.insert("energy".into(), json_float(e.energy / unit));
            o.insert("degeneracy_class".into(), json!(e.degeneracy_class));
            Value::Object(o)
        })
        .collect();
    pretty(&json!({ "meta": meta(cfg), "entries": rows }))
}

fn member_label(qn: &QuantumNumbers) -> String {
    match *qn {
        QuantumNumbers::Parallel { n, l, m } => format!("({n},{l},{m})"),
        QuantumNumbers::Cylinder { n, m, s } => format!("({n},{m},{s})"),
    }
}

pub fn degeneracies_csv(cfg: &RunConfig, classes: &[DegeneracyClass]) -> String {
    let unit = cfg.energy_unit();
    let mut out = String::from("class,kind,energy,size,members\n");
    for c in classes {
        let members: Vec<String> = c.members.iter().map(member_label).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            c.id,
            c.kind,
            fmt_float(c.energy / unit),
            c.members.len(),
            members.join(" ")
        ));
    }
    out
}

pub fn degeneracies_json(cfg: &RunConfig, classes: &[DegeneracyClass], tol: f64) -> String {
    let unit = cfg.energy_unit();
    let mut meta = meta(cfg);
    meta.insert("tolerance".into(), json_float(tol));
    let rows: Vec<Value> = classes
        .iter()
        .map(|c| {
            json!({
                "class": c.id,
                "kind": c.kind.as_str(),
                "energy": json_float(c.energy / unit),
                "members": c.members.iter().map(|m| Value::Object(qn_json(m))).collect::<Vec<_>>(),
            })
        })
        .collect();
    pretty(&json!({ "meta": meta, "classes": rows }))
}

/// One line per check: `name: PASS (value …, tol …; detail)`.
pub fn verify_summary(report: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(&format!(
            "{}: {} (value {}, tol {}; {})\n",
            c.name,
            c.outcome,
            fmt_float(c.value),
            fmt_float(c.tolerance),
            c.detail
        ));
    }
    for w in &report.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out.push_str(if report.passed() {
        "overall: PASS\n"
    } else {
        "overall: FAIL\n"
    });
    out
}

pub fn verify_json(cfg: &RunConfig, report: &SuiteReport) -> String {
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "outcome": c.outcome.to_string(),
                "value": json_float(c.value),
                "tolerance": json_float(c.tolerance),
                "detail": c.detail,
            })
        })
        .collect();
    let rows: Vec<Value> = report
        .cross_validation
        .rows
        .iter()
        .map(|r| {
            let mut o = qn_json(&r.qn);
            o.insert("delta".into(), json_float(r.delta));
            o.insert("e_analytic".into(), json_float(r.e_analytic));
            o.insert("e_numeric".into(), json_float(r.e_numeric));
            o.insert("rel_error".into(), json_float(r.rel_error));
            o.insert("passed".into(), json!(r.passed));
            Value::Object(o)
        })
        .collect();
    pretty(&json!({
        "meta": meta(cfg),
        "passed": report.passed(),
        "checks": checks,
        "cross_validation": rows,
        "warnings": report.warnings,
    }))
}

pub struct Sample {
    pub coords: [f64; 3],
    pub re: f64,
    pub im: f64,
}

pub fn wavefunction_csv(geometry: GeometryArg, samples: &[Sample]) -> String {
    let mut out = String::new();
    match geometry {
        GeometryArg::Parallel => {
            out.push_str("x,y,z,value\n");
            for s in samples {
                let [x, y, z] = s.coords.map(fmt_float);
                out.push_str(&format!("{x},{y},{z},{}\n", fmt_float(s.re)));
            }
        }
        GeometryArg::Cylinder => {
            out.push_str("x,rho,phi,re,im\n");
            for s in samples {
                let [x, rho, phi] = s.coords.map(fmt_float);
                out.push_str(&format!("{x},{rho},{phi},{},{}\n", fmt_float(s.re), fmt_float(s.im)));
            }
        }
    }
    out
}

pub fn wavefunction_json(cfg: &RunConfig, qn: &QuantumNumbers, samples: &[Sample]) -> String {
    let rows: Vec<Value> = samples
        .iter()
        .map(|s| {
            let [a, b, c] = s.coords.map(json_float);
            match cfg.geometry {
                GeometryArg::Parallel => json!({ "x": a, "y": b, "z": c, "value": json_float(s.re) }),
                GeometryArg::Cylinder => {
                    json!({ "x": a, "rho": b, "phi": c, "re": json_float(s.re), "im": json_float(s.im) })
                }
            }
        })
        .collect();
    let mut meta = meta(cfg);
    meta.insert("quantum_numbers".into(), Value::Object(qn_json(qn)));
    pretty(&json!({ "meta": meta, "samples": rows }))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}
