use fjump_core::{Ideal, NuRecord, Ring};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize, Debug)]
pub struct RingInfo {
    pub p: u32,
    pub vars: Vec<String>,
}

impl RingInfo {
    pub fn of(ring: &Ring) -> Self {
        RingInfo {
            p: ring.characteristic(),
            vars: ring.var_names().to_vec(),
        }
    }
}

#[derive(Serialize, Debug, Clone, Copy)]
pub struct Record {
    pub e: u32,
    pub nu: u64,
}

impl From<&NuRecord> for Record {
    fn from(r: &NuRecord) -> Self {
        Record { e: r.e, nu: r.nu }
    }
}

#[derive(Serialize, Debug)]
pub struct Meta {
    pub stabilized_at: Option<u32>,
    pub certified: bool,
    pub records: Option<Vec<Record>>,
    pub wall_time_ms: u64,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub ring: RingInfo,
    pub result: Value,
    pub meta: Meta,
    /// Printed under text output when the value is not certified.
    #[serde(skip)]
    pub caveat: Option<&'static str>,
}

/// Generator strings of an ideal, as printed and re-parsed.
pub fn generators(i: &Ideal) -> Value {
    json!(i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>())
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in map {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        out.push_str(&format!("ring: F_{}[{}]\n", self.ring.p, self.ring.vars.join(", ")));
        render(&mut out, "result", &self.result, 0);
        let meta = serde_json::to_value(&self.meta).expect("meta serializes");
        render(&mut out, "meta", &meta, 0);
        if let (false, Some(c)) = (self.meta.certified, self.caveat) {
            out.push_str(&format!("note: {c}\n"));
        }
        out
    }
}
