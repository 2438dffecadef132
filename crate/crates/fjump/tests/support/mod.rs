#![allow(dead_code)]

use fjump_core::{Ideal, MonomialOrder, Ring};
use serde_json::Value;

pub const JOB: &str = "\
# shared job for the report checks
ring p=2 vars=x,y
ideal a = x^3*y^2
ideal m = x, y
ideal f = x^3 + y^2
ideal g = x*y + y
ideal h = x^2 + x*y^2, y^3
ideal u = x + 1
";

pub const CUSP: &str = "ring p=7 vars=x,y\nideal f = x^2 + y^3\n";

/// One invocation per command, plus oracle mode and an exit-4 report.
pub const CASES: &[(&str, &[&str], i32)] = &[
    (JOB, &["root", "--ideal", "a", "--e", "1"], 0),
    (JOB, &["root", "--ideal", "h", "--e", "1", "--oracle"], 0),
    (JOB, &["root", "--ideal", "a", "--e", "2", "--oracle"], 0),
    (JOB, &["bracket", "--ideal", "h", "--e", "2"], 0),
    (JOB, &["tau", "--ideal", "m", "--c", "2", "--oracle"], 0),
    (JOB, &["tau", "--ideal", "f", "--c", "5/6"], 0),
    (JOB, &["tau", "--ideal", "g", "--c", "3/2", "--no-skoda"], 0),
    (JOB, &["taumixed", "--ideal", "a", "--ideal", "m", "--c", "1/2", "--c", "1"], 0),
    (JOB, &["nu", "--ideal", "m", "--j", "m", "--e", "3", "--oracle"], 0),
    (JOB, &["fthreshold", "--ideal", "a", "--j", "m", "--e-max", "3", "--oracle"], 0),
    (JOB, &["fpt", "--ideal", "m", "--e-max", "4"], 0),
    (CUSP, &["fpt", "--ideal", "f", "--e-max", "2", "--oracle"], 0),
    (JOB, &["jumps", "--ideal", "m", "--bound", "3"], 0),
    (JOB, &["jumps", "--ideal", "a", "--bound", "1"], 0),
    (JOB, &["gb", "--ideal", "h"], 0),
    (JOB, &["gb", "--ideal", "h", "--order", "lex"], 0),
    (JOB, &["denombound", "--ideal", "f"], 0),
    (JOB, &["tau", "--ideal", "g", "--c", "2/3", "--e-max", "1", "--plateau", "3"], 4),
    (JOB, &["tau", "--ideal", "h", "--c", "7/5", "--max-terms", "10"], 4),
];

/// Runs the CLI in process on `stdin`.
pub fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let argv = std::iter::once("fjump").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = fjump::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr"),
    )
}

pub fn validator() -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(fjump::REPORT_SCHEMA).expect("schema is JSON");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

pub fn schema_errors(v: &jsonschema::Validator, report: &Value) -> Vec<String> {
    v.iter_errors(report)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect()
}

/// The ring a report's generators live in, term order included.
pub fn ring_of(report: &Value) -> Ring {
    let p = report["ring"]["p"].as_u64().expect("ring.p");
    let vars: Vec<&str> = report["ring"]["vars"]
        .as_array()
        .expect("ring.vars")
        .iter()
        .map(|v| v.as_str().expect("variable name"))
        .collect();
    let order = match report["result"]["order"].as_str() {
        None | Some("grevlex") => MonomialOrder::Grevlex,
        Some("lex") => MonomialOrder::Lex,
        Some(o) => MonomialOrder::BlockElim(o.trim_start_matches("elim:").parse().expect("elim:<k>")),
    };
    Ring::with_order(p, &vars, order).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .expect("generator list")
        .iter()
        .map(|s| s.as_str().expect("generator string").to_string())
        .collect()
}

/// Every `generators` list in `v`, depth first.
pub fn generator_lists(v: &Value, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if k == "generators" {
                    out.push(strings(x));
                } else {
                    generator_lists(x, out);
                }
            }
        }
        Value::Array(items) => items.iter().for_each(|x| generator_lists(x, out)),
        _ => {}
    }
}

/// Re-parses every generator list and checks it prints back unchanged.
/// Returns the parsed ideals.
pub fn reparse(report: &Value) -> Result<Vec<Ideal>, String> {
    let ring = ring_of(report);
    let mut lists = Vec::new();
    generator_lists(&report["result"], &mut lists);
    let mut ideals = Vec::new();
    for gens in lists {
        let text = gens.join(", ");
        let i = Ideal::parse(&ring, &text).map_err(|e| format!("{text:?} does not parse: {e}"))?;
        let again: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
        if again != gens {
            return Err(format!("{gens:?} prints back as {again:?}"));
        }
        ideals.push(i);
    }
    Ok(ideals)
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => map.values().for_each(|x| leaves(x, out)),
        Value::Array(items) => items.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        Value::Null => {}
        other => out.push(other.to_string()),
    }
}

/// Every scalar of the JSON result and meta, except the timing, must be
/// present in the text rendering of the same job.
pub fn text_carries(json: &Value, text: &str) -> Result<(), String> {
    let mut vals = Vec::new();
    leaves(&json["result"], &mut vals);
    let mut meta = json["meta"].clone();
    meta.as_object_mut().unwrap().remove("wall_time_ms");
    leaves(&meta, &mut vals);
    for v in vals {
        if !text.contains(&v) {
            return Err(format!("text report lacks {v:?}"));
        }
    }
    Ok(())
}

/// Runs one case in both formats and checks schema, exit code, re-parsing
/// and format parity.
pub fn check_case(v: &jsonschema::Validator, job: &str, args: &[&str], code: i32) -> Result<(), String> {
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (c, out, err) = run(&json_args, job);
    if c != code {
        return Err(format!("{args:?}: exit {c}, expected {code}; stderr: {err}"));
    }
    let report: Value = serde_json::from_str(&out).map_err(|e| format!("{args:?}: bad JSON: {e}"))?;
    let errors = schema_errors(v, &report);
    if !errors.is_empty() {
        return Err(format!("{args:?}: schema: {errors:?}"));
    }
    let back: Value = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    if back != report {
        return Err(format!("{args:?}: JSON does not round-trip"));
    }
    reparse(&report).map_err(|e| format!("{args:?}: {e}"))?;
    let (c, text, _) = run(args, job);
    if c != code {
        return Err(format!("{args:?}: text run exit {c}, expected {code}"));
    }
    text_carries(&report, &text).map_err(|e| format!("{args:?}: {e}"))
}
