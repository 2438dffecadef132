//! The line-oriented job file:
//!
//! ```text
//! # comment
//! ring p=7 vars=x,y
//! ideal f = x^2 + y^3
//! ```

use std::collections::BTreeMap;

use fjump_core::{Ideal, Limits, Ring};

/// A parse failure located in the input text. Line and column are 1-based,
/// columns count characters.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug)]
pub struct Job {
    pub ring: Ring,
    pub ideals: BTreeMap<String, Ideal>,
}

fn column(line: &str, byte: usize) -> usize {
    line[..byte.min(line.len())].chars().count() + 1
}

fn err(line_no: usize, line: &str, byte: usize, message: impl Into<String>) -> InputError {
    InputError {
        line: line_no,
        column: column(line, byte),
        message: message.into(),
    }
}

/// Byte offset of `part` inside `line`; `part` must be a subslice.
fn offset(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_ring(no: usize, line: &str, rest: &str, limits: Limits) -> Result<Ring, InputError> {
    let mut p = None;
    let mut vars = None;
    for word in rest.split_whitespace() {
        let at = offset(line, word);
        let Some((key, value)) = word.split_once('=') else {
            return Err(err(no, line, at, format!("expected key=value, found {word:?}")));
        };
        let vat = at + key.len() + 1;
        match key {
            "p" => {
                let v: u64 = value
                    .parse()
                    .map_err(|_| err(no, line, vat, format!("bad characteristic {value:?}")))?;
                p = Some((v, vat));
            }
            "vars" => {
                let names: Vec<&str> = value.split(',').map(str::trim).collect();
                vars = Some((names, vat));
            }
            _ => return Err(err(no, line, at, format!("unknown ring key {key:?}"))),
        }
    }
    let end = line.trim_end().len();
    let (p, p_at) = p.ok_or_else(|| err(no, line, end, "ring needs p=<prime>"))?;
    let (vars, v_at) = vars.ok_or_else(|| err(no, line, end, "ring needs vars=<names>"))?;
    Ring::new(p, &vars).map(|r| r.with_limits(limits)).map_err(|e| {
        let at = match e {
            fjump_core::Error::NotPrime(_) => p_at,
            _ => v_at,
        };
        err(no, line, at, e.to_string())
    })
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse(text: &str, limits: Limits) -> Result<Job, InputError> {
    let mut ring: Option<Ring> = None;
    let mut ideals = BTreeMap::new();
    let mut last_line = (0, "");
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        last_line = (no, raw);
        let line = strip_comment(raw);
        let body = line.trim_start();
        if body.trim_end().is_empty() {
            continue;
        }
        let start = offset(raw, body);
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match keyword {
            "ring" => {
                if ring.is_some() {
                    return Err(err(no, raw, start, "only one ring per file"));
                }
                ring = Some(parse_ring(no, raw, rest, limits)?);
            }
            "ideal" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| err(no, raw, start, "ideal defined before the ring"))?;
                let Some((name, polys)) = rest.split_once('=') else {
                    return Err(err(no, raw, offset(raw, rest), "expected `ideal <name> = <polys>`"));
                };
                let name_t = name.trim();
                let name_at = offset(raw, name) + (name.len() - name.trim_start().len());
                if !valid_name(name_t) {
                    return Err(err(no, raw, name_at, format!("bad ideal name {name_t:?}")));
                }
                if ideals.contains_key(name_t) {
                    return Err(err(no, raw, name_at, format!("ideal {name_t:?} defined twice")));
                }
                let at = offset(raw, polys);
                let ideal = Ideal::parse(r, polys)
                    .map_err(|e| err(no, raw, at + e.offset, e.kind.to_string()))?;
                ideals.insert(name_t.to_string(), ideal);
            }
            _ => return Err(err(no, raw, start, format!("unknown statement {keyword:?}"))),
        }
    }
    let ring = ring.ok_or_else(|| {
        let (no, line) = last_line;
        err(no.max(1), line, line.len(), "no ring declared")
    })?;
    Ok(Job { ring, ideals })
}
