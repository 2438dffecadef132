//! Command-line front end for `fjump-core`.
//!
//! [`run`] takes the argument list and the standard streams and returns the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | usage error |
//! | 2 | input parse error (file or flag value) |
//! | 3 | precondition violated |
//! | 4 | resource limit, unsettled chain, jump search failure, or oracle disagreement |

pub mod input;
pub mod report;

/// JSON Schema for the `--format json` report.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fjump_core::oracle::{nu_bruteforce, root_monomial, tau_bruteforce};
use fjump_core::{
    bracket_power, denom_bound, fpt, frobenius_root, fthreshold, jumping_exponents, nu, tau,
    tau_mixed, Error, Ideal, Limits, MonomialOrder, Rat, TauParams, TauResult,
    ThresholdEstimate,
};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::input::Job;
use crate::report::{generators, Meta, Record, Report, RingInfo};

#[derive(Parser, Debug)]
#[command(
    name = "fjump",
    version,
    about = "Frobenius roots, test ideals, F-thresholds and F-jumping exponents"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Common {
    /// Job file with the ring and ideal definitions; `-` reads stdin.
    #[arg(short = 'i', long = "input", default_value = "-")]
    input: String,
    /// Name of the ideal to work on (repeat for taumixed).
    #[arg(long = "ideal", required = true)]
    ideals: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cross-check against the brute-force reference where feasible.
    #[arg(long)]
    oracle: bool,
    /// Maximum S-pair reductions per Gröbner basis run.
    #[arg(long, default_value_t = Limits::default().gb_max_steps)]
    gb_steps: usize,
    /// Maximum number of generators of an ideal power.
    #[arg(long, default_value_t = Limits::default().max_generators)]
    max_gens: usize,
    /// Maximum number of terms in an ideal power or product.
    #[arg(long, default_value_t = Limits::default().max_terms)]
    max_terms: usize,
}

#[derive(Args, Debug)]
struct Chain {
    #[arg(long, default_value_t = 1)]
    e_min: u32,
    #[arg(long, default_value_t = 20)]
    e_max: u32,
    /// Consecutive equal chain terms accepted as stable.
    #[arg(long, default_value_t = 2)]
    plateau: u32,
    /// Evaluate the chain directly instead of peeling off factors of a.
    #[arg(long)]
    no_skoda: bool,
}

impl Chain {
    fn params(&self) -> TauParams {
        TauParams {
            e_min: self.e_min,
            e_max: self.e_max,
            plateau: self.plateau,
            use_skoda: !self.no_skoda,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Frobenius root b^[1/p^e].
    Root {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        e: u32,
    },
    /// Frobenius power J^[p^e].
    Bracket {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        e: u32,
    },
    /// Test ideal τ(a^c).
    Tau {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        chain: Chain,
        /// Exponent as `num` or `num/den`.
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Mixed test ideal τ(a_1^{c_1} ... a_k^{c_k}); pair each --ideal with a --c.
    Taumixed {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        chain: Chain,
        #[arg(long, required = true, allow_hyphen_values = true)]
        c: Vec<String>,
    },
    /// ν^J_a(p^e), the largest r with a^r not inside J^[p^e].
    Nu {
        #[command(flatten)]
        common: Common,
        /// Name of the ideal J.
        #[arg(long)]
        j: String,
        #[arg(long)]
        e: u32,
    },
    /// Bracket and guess for the F-threshold c^J(a).
    Fthreshold {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        j: String,
        #[arg(long, default_value_t = 4)]
        e_max: u32,
    },
    /// Bracket and guess for the F-pure threshold.
    Fpt {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 4)]
        e_max: u32,
    },
    /// F-jumping exponents in [0, B] with the test ideals between them.
    Jumps {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        chain: Chain,
        /// Upper end B of the range.
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        /// Largest candidate denominator to consider.
        #[arg(long)]
        cap: Option<String>,
    },
    /// Reduced Gröbner basis.
    Gb {
        #[command(flatten)]
        common: Common,
        /// grevlex, lex or elim:<k>.
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Bound on the denominators of F-jumping exponents.
    Denombound {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Root { common, .. }
            | Command::Bracket { common, .. }
            | Command::Tau { common, .. }
            | Command::Taumixed { common, .. }
            | Command::Nu { common, .. }
            | Command::Fthreshold { common, .. }
            | Command::Fpt { common, .. }
            | Command::Jumps { common, .. }
            | Command::Gb { common, .. }
            | Command::Denombound { common } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Root { .. } => "root",
            Command::Bracket { .. } => "bracket",
            Command::Tau { .. } => "tau",
            Command::Taumixed { .. } => "taumixed",
            Command::Nu { .. } => "nu",
            Command::Fthreshold { .. } => "fthreshold",
            Command::Fpt { .. } => "fpt",
            Command::Jumps { .. } => "jumps",
            Command::Gb { .. } => "gb",
            Command::Denombound { .. } => "denombound",
        }
    }
}

/// How a job failed; the discriminant is the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Parse(String),
    Precondition(String),
    /// Exit 4. `partial` is the result payload to report anyway.
    Limit { message: String, partial: Value },
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Precondition(_) => 3,
            Failure::Limit { .. } => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Precondition(m) => m,
            Failure::Limit { message, .. } => message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Parse(_) => Failure::Parse(message),
            Error::DivisionByZero(_)
            | Error::NotPrime(_)
            | Error::InvalidRing(_)
            | Error::RingMismatch
            | Error::Precondition(_) => Failure::Precondition(message),
            Error::Inconclusive { chain, .. } => {
                let chain: Vec<Value> = chain
                    .iter()
                    .map(|(e, i)| json!({"e": e, "generators": generators(i)}))
                    .collect();
                Failure::Limit {
                    partial: json!({"error": message, "partial_chain": chain}),
                    message,
                }
            }
            Error::ExponentOverflow
            | Error::ResourceLimit(_)
            | Error::CapExceeded { .. }
            | Error::JumpVerification(_) => Failure::Limit {
                partial: json!({"error": message, "partial_chain": null}),
                message,
            },
        }
    }
}

/// A finished computation before timing and formatting.
struct Outcome {
    result: Value,
    stabilized_at: Option<u32>,
    certified: bool,
    records: Option<Vec<Record>>,
    caveat: Option<&'static str>,
    /// Oracle value when it disagrees with the result.
    disagreement: Option<String>,
}

impl Outcome {
    fn exact(result: Value) -> Self {
        Outcome {
            result,
            stabilized_at: None,
            certified: true,
            records: None,
            caveat: None,
            disagreement: None,
        }
    }

    /// Records the oracle verdict: `None` when the oracle is infeasible,
    /// otherwise the oracle's value and whether it agrees.
    fn oracle(&mut self, verdict: Option<(bool, String)>) {
        let agreement = verdict.as_ref().map(|(ok, _)| *ok);
        self.result["oracle_agreement"] = json!(agreement);
        if let Some((false, value)) = verdict {
            self.result["oracle_value"] = json!(value);
            self.disagreement = Some(value);
        }
    }
}

const CHAIN_CAVEAT: &str =
    "not certified: the value is where the Frobenius-root chain stopped changing";
const GUESS_CAVEAT: &str =
    "not certified: the guess is the simplest rational consistent with the computed ν values";

fn rational(s: &str, flag: &str) -> Result<Rat, Failure> {
    s.parse::<Rat>()
        .map_err(|e| Failure::Parse(format!("--{flag} {s:?}: {} at column {}", e.kind, e.offset + 1)))
}

fn natural(s: &str, flag: &str) -> Result<BigUint, Failure> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| Failure::Parse(format!("--{flag} {s:?}: expected a natural number")))
}

fn order(s: &str) -> Result<MonomialOrder, Failure> {
    match s {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => s
            .strip_prefix("elim:")
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::BlockElim)
            .ok_or_else(|| Failure::Usage(format!("unknown order {s:?}; use grevlex, lex or elim:<k>"))),
    }
}

fn lookup<'a>(job: &'a Job, name: &str) -> Result<&'a Ideal, Failure> {
    job.ideals.get(name).ok_or_else(|| {
        let known: Vec<&str> = job.ideals.keys().map(String::as_str).collect();
        Failure::Usage(format!("no ideal named {name:?} (defined: {})", known.join(", ")))
    })
}

fn single<'a>(job: &'a Job, common: &Common) -> Result<&'a Ideal, Failure> {
    match common.ideals.as_slice() {
        [name] => lookup(job, name),
        _ => Err(Failure::Usage("this command takes exactly one --ideal".into())),
    }
}

fn ideal_result(i: &Ideal) -> Value {
    json!({"generators": generators(i)})
}

fn tau_outcome(r: TauResult) -> Result<Outcome, Failure> {
    let ideal = r.ideal.canonical()?;
    Ok(Outcome {
        result: ideal_result(&ideal),
        stabilized_at: Some(r.stabilized_at),
        certified: r.certified,
        records: None,
        caveat: Some(CHAIN_CAVEAT),
        disagreement: None,
    })
}

/// The reference chain up to `e_hi`, shortened until it fits the limits.
fn brute_chain(a: &Ideal, c: &Rat, e_hi: u32) -> Option<Vec<(u32, Ideal)>> {
    (2..=e_hi).rev().find_map(|e| tau_bruteforce(a, c, e).ok())
}

/// Compares with the literal chain when its last two terms agree; every
/// term must lie in τ regardless.
fn tau_oracle(a: &Ideal, c: &Rat, t: &Ideal, e_max: u32) -> Result<Option<(bool, String)>, Failure> {
    let Some(chain) = brute_chain(a, c, e_max.min(4)) else {
        return Ok(None);
    };
    for (_, term) in &chain {
        if !term.subset(t)? {
            return Ok(Some((false, term.canonical()?.to_string())));
        }
    }
    let n = chain.len();
    if n < 2 || !chain[n - 1].1.equals(&chain[n - 2].1)? {
        return Ok(None);
    }
    let last = &chain[n - 1].1;
    Ok(Some((last.equals(t)?, last.canonical()?.to_string())))
}

fn records_oracle(a: &Ideal, j: &Ideal, est: &ThresholdEstimate) -> Option<(bool, String)> {
    let mut checked = Vec::new();
    let mut ok = true;
    for r in &est.records {
        if let Ok(v) = nu_bruteforce(a, j, r.e) {
            ok &= v == r.nu;
            checked.push(format!("nu(e={})={v}", r.e));
        }
    }
    (!checked.is_empty()).then(|| (ok, checked.join(", ")))
}

fn estimate(est: &ThresholdEstimate) -> Outcome {
    Outcome {
        result: json!({
            "lower": est.lower.to_string(),
            "upper": est.upper.to_string(),
            "guess": est.guess.as_ref().map(ToString::to_string),
        }),
        stabilized_at: None,
        certified: est.certified,
        records: Some(est.records.iter().map(Record::from).collect()),
        caveat: Some(GUESS_CAVEAT),
        disagreement: None,
    }
}

fn execute(cmd: &Command, job: &Job) -> Result<Outcome, Failure> {
    let oracle = cmd.common().oracle;
    match cmd {
        Command::Root { common, e } => {
            let b = single(job, common)?;
            let root = frobenius_root(b, *e)?.canonical()?;
            let mut out = Outcome::exact(ideal_result(&root));
            if oracle {
                let verdict = match root_monomial(b, *e) {
                    Ok(r) => Some((r.equals(&root)?, r.canonical()?.to_string())),
                    Err(_) => None,
                };
                out.oracle(verdict);
            }
            Ok(out)
        }
        Command::Bracket { common, e } => {
            let j = single(job, common)?;
            let mut out = Outcome::exact(ideal_result(&bracket_power(j, *e)?.canonical()?));
            if oracle {
                out.oracle(None);
            }
            Ok(out)
        }
        Command::Tau { common, chain, c } => {
            let a = single(job, common)?;
            let c = rational(c, "c")?;
            let r = tau(a, &c, &chain.params())?;
            let t = r.ideal.clone();
            let mut out = tau_outcome(r)?;
            if oracle {
                out.oracle(tau_oracle(a, &c, &t, chain.e_max)?);
            }
            Ok(out)
        }
        Command::Taumixed { common, chain, c } => {
            if common.ideals.len() != c.len() {
                return Err(Failure::Usage(format!(
                    "{} --ideal but {} --c; give one exponent per ideal",
                    common.ideals.len(),
                    c.len()
                )));
            }
            let mut pairs = Vec::new();
            let mut shown = Vec::new();
            for (name, c) in common.ideals.iter().zip(c) {
                let c = rational(c, "c")?;
                shown.push(json!({"ideal": name, "c": c.to_string()}));
                pairs.push((lookup(job, name)?.clone(), c));
            }
            let mut out = tau_outcome(tau_mixed(&pairs, &chain.params())?)?;
            out.result["pairs"] = json!(shown);
            if oracle {
                out.oracle(None);
            }
            Ok(out)
        }
        Command::Nu { common, j, e } => {
            let a = single(job, common)?;
            let jj = lookup(job, j)?;
            let v = nu(a, jj, *e)?;
            let mut out = Outcome::exact(json!({"nu": v}));
            out.records = Some(vec![Record { e: *e, nu: v }]);
            if oracle {
                let verdict = nu_bruteforce(a, jj, *e).ok().map(|b| (b == v, b.to_string()));
                out.oracle(verdict);
            }
            Ok(out)
        }
        Command::Fthreshold { common, j, e_max } => {
            let a = single(job, common)?;
            let jj = lookup(job, j)?;
            let est = fthreshold(a, jj, *e_max)?;
            let mut out = estimate(&est);
            if oracle {
                out.oracle(records_oracle(a, jj, &est));
            }
            Ok(out)
        }
        Command::Fpt { common, e_max } => {
            let a = single(job, common)?;
            let est = fpt(a, *e_max)?;
            let mut out = estimate(&est);
            if oracle {
                out.oracle(records_oracle(a, &Ideal::maximal(a.ring()), &est));
            }
            Ok(out)
        }
        Command::Jumps {
            common,
            chain,
            bound,
            cap,
        } => {
            let a = single(job, common)?;
            let b = rational(bound, "bound")?;
            let cap = cap.as_deref().map(|s| natural(s, "cap")).transpose()?;
            let list = jumping_exponents(a, &b, &chain.params(), cap)?;
            let mut jumps = Vec::new();
            for (at, i) in list.jumps.iter().zip(&list.ideals) {
                jumps.push(json!({"at": at.to_string(), "generators": generators(&i.canonical()?)}));
            }
            let mut out = Outcome {
                result: json!({
                    "bound": b.to_string(),
                    "d_max": list.bound.d_max().to_string(),
                    "cap": list.bound.cap.as_ref().map(ToString::to_string),
                    "jumps": jumps,
                }),
                stabilized_at: None,
                certified: list.certified,
                records: None,
                caveat: Some("not certified: some test ideals along the search rest on a chain plateau"),
                disagreement: None,
            };
            if oracle {
                out.oracle(None);
            }
            Ok(out)
        }
        Command::Gb { common, order: o } => {
            let a = single(job, common)?;
            let o = order(o)?;
            let gb = a.groebner_in(o)?;
            let basis: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
            let mut out = Outcome::exact(json!({"order": o.to_string(), "generators": basis}));
            if oracle {
                out.oracle(None);
            }
            Ok(out)
        }
        Command::Denombound { common } => {
            let a = single(job, common)?;
            let d = denom_bound(a)?;
            let mut out = Outcome::exact(json!({
                "m": d.m,
                "d": d.d,
                "n": d.n,
                "e0": d.e0,
                "big_n": d.big_n,
                "max_p_exponent": d.max_p_exponent(),
                "d_max": d.d_max().to_string(),
            }));
            if oracle {
                out.oracle(None);
            }
            Ok(out)
        }
    }
}

fn load(common: &Common, stdin: &mut dyn Read) -> Result<Job, Failure> {
    let mut text = String::new();
    if common.input == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(&common.input)
            .map_err(|e| Failure::Usage(format!("reading {}: {e}", common.input)))?;
    }
    let limits = Limits {
        gb_max_steps: common.gb_steps,
        max_generators: common.max_gens,
        max_terms: common.max_terms,
        ..Limits::default()
    };
    input::parse(&text, limits).map_err(|e| Failure::Parse(format!("{}: {e}", common.input)))
}

/// Runs one job. Reports go to `stdout` in a single write; diagnostics go
/// to `stderr`.
pub fn run<I, S>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let common = cli.command.common();
    let start = Instant::now();
    let job = match load(common, stdin) {
        Ok(j) => j,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            return f.code();
        }
    };
    let outcome = execute(&cli.command, &job);
    let wall_time_ms = start.elapsed().as_millis() as u64;
    let (outcome, code) = match outcome {
        Ok(o) => {
            let code = if o.disagreement.is_some() { 4 } else { 0 };
            (o, code)
        }
        Err(Failure::Limit { message, partial }) => {
            let _ = writeln!(stderr, "error: {message}");
            let mut o = Outcome::exact(partial);
            o.certified = false;
            (o, 4)
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            return f.code();
        }
    };
    if let Some(v) = &outcome.disagreement {
        let _ = writeln!(stderr, "error: oracle disagrees: computed {}, oracle {v}", outcome.result);
    }
    let report = Report {
        command: cli.command.name().to_string(),
        ring: RingInfo::of(&job.ring),
        result: outcome.result,
        meta: Meta {
            stabilized_at: outcome.stabilized_at,
            certified: outcome.certified,
            records: outcome.records,
            wall_time_ms,
        },
        caveat: if code == 0 { outcome.caveat } else { None },
    };
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let _ = stdout.write_all(text.as_bytes());
    code
}
