//! Command dispatch. Every command returns a complete report plus an exit
//! code; nothing is printed here.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nilmat::congruence::{select_modulus, Policy};
use nilmat::structure::{is_completely_reducible, is_finite, primary_decomposition, structure_report};
use nilmat::testkit::{closure, oracle_invariants};
use nilmat::verify::{verify_infinite, verify_witness};
use nilmat::{is_nilpotent, is_nilpotent_adjoint, GroupSpec, Options, Verdict};
use serde_json::{json, Map, Value};

use crate::codec::{congruence_json, field_json, matrices_json, parse_field, parse_infinite_witness, parse_witness, At, ParseError};
use crate::groupfile::parse_group_file;
use crate::report::{
    finiteness_json, oracle_json, series_json, structure_json, sylow_json, verdict_json, SCHEMA,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
/// verify-witness only: some claim failed to check.
pub const EXIT_REJECTED: i32 = 3;

const DEFAULT_ORACLE_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    IsNilpotent,
    IsFinite,
    Order,
    Sylow,
    Primary,
    IsCompletelyReducible,
    CrSeries,
    Reduce,
    Oracle,
    Report,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::IsNilpotent,
        Command::IsFinite,
        Command::Order,
        Command::Sylow,
        Command::Primary,
        Command::IsCompletelyReducible,
        Command::CrSeries,
        Command::Reduce,
        Command::Oracle,
        Command::Report,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::IsNilpotent => "is-nilpotent",
            Command::IsFinite => "is-finite",
            Command::Order => "order",
            Command::Sylow => "sylow",
            Command::Primary => "primary",
            Command::IsCompletelyReducible => "is-completely-reducible",
            Command::CrSeries => "cr-series",
            Command::Reduce => "reduce",
            Command::Oracle => "oracle",
            Command::Report => "report",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodFlag {
    #[default]
    Congruence,
    Adjoint,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub method: MethodFlag,
    pub prime: Option<u64>,
    pub class_bound: Option<usize>,
    pub cap: Option<usize>,
    pub seed: Option<u64>,
}

impl Flags {
    pub fn options(&self) -> Options {
        let mut o = Options::default();
        o.policy.forced_prime = self.prime;
        if let Some(s) = self.seed {
            o.policy.seed = s;
        }
        o.class_bound = self.class_bound;
        if let Some(c) = self.cap {
            o.closure_cap = c;
            o.presentation_cap = c;
        }
        o
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(Policy::default().seed)
    }

    /// The prime is left out: a replay with the recorded prime must produce
    /// the same bytes.
    fn echo(&self) -> Value {
        json!({
            "method": match self.method { MethodFlag::Congruence => "congruence", MethodFlag::Adjoint => "adjoint" },
            "class_bound": self.class_bound,
            "cap": self.cap,
            "seed": self.seed,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

impl Outcome {
    /// The report with the timing field removed.
    pub fn stable(&self) -> Value {
        let mut r = self.report.clone();
        if let Some(m) = r.as_object_mut() {
            m.remove("wall_time_ms");
        }
        r
    }
}

fn error_json(e: &nilmat::Error) -> Value {
    let dbg = format!("{e:?}");
    let kind = dbg.split(['(', ' ', '{']).next().unwrap_or("Error").to_string();
    json!({"kind": kind, "message": e.to_string()})
}

struct Run {
    opts: Options,
    flags: Flags,
    budgets: Vec<String>,
}

impl Run {
    fn verdict(&mut self, g: &GroupSpec) -> nilmat::Result<Verdict> {
        let v = match self.flags.method {
            MethodFlag::Adjoint => is_nilpotent_adjoint(g, &self.opts)?,
            MethodFlag::Congruence => is_nilpotent(g, &self.opts)?,
        };
        self.budgets.extend(v.notes.iter().filter(|n| n.contains("abandoned")).cloned());
        Ok(v)
    }

    fn dispatch(&mut self, cmd: Command, g: &GroupSpec) -> nilmat::Result<Value> {
        Ok(match cmd {
            Command::IsNilpotent => verdict_json(&self.verdict(g)?),
            Command::IsFinite | Command::Order | Command::Sylow => {
                let v = self.verdict(g)?;
                let mut out = json!({"verdict": verdict_json(&v)});
                if v.nilpotent {
                    let fin = is_finite(g, &v, &self.opts)?;
                    merge(&mut out, finiteness_json(&fin));
                    if cmd == Command::Sylow {
                        out["sylow"] = if fin.finite {
                            sylow_json(&primary_decomposition(g, &v, &self.opts)?)
                        } else {
                            Value::Null
                        };
                    }
                }
                out
            }
            Command::Primary => {
                let v = self.verdict(g)?;
                let mut out = json!({"verdict": verdict_json(&v)});
                if v.nilpotent {
                    out["primary"] = sylow_json(&primary_decomposition(g, &v, &self.opts)?);
                }
                out
            }
            Command::IsCompletelyReducible | Command::CrSeries => {
                let v = self.verdict(g)?;
                let mut out = json!({"verdict": verdict_json(&v)});
                if v.nilpotent {
                    let (cr, series) = is_completely_reducible(g)?;
                    if cmd == Command::IsCompletelyReducible {
                        out["completely_reducible"] = Value::Bool(cr);
                    }
                    out["cr_series"] = series_json(&series);
                }
                out
            }
            Command::Reduce => {
                let cd = select_modulus(g, &self.opts.policy)?;
                let images = g.gens.iter().map(|x| cd.apply(x)).collect::<nilmat::Result<Vec<_>>>()?;
                json!({"congruence": congruence_json(&cd), "images": matrices_json(&images)})
            }
            Command::Oracle => {
                let cap = self.flags.cap.unwrap_or(DEFAULT_ORACLE_CAP);
                let c = closure(&g.gens, g.dim, &g.field, cap);
                if c.overflowed {
                    return Err(nilmat::Error::CapExceeded(cap));
                }
                oracle_json(&oracle_invariants(&c, &g.gens, &g.field)?)
            }
            Command::Report => {
                let v = self.verdict(g)?;
                let mut out = json!({"verdict": verdict_json(&v)});
                if v.nilpotent {
                    let s = structure_report(g, &v, &self.opts)?;
                    out["structure"] = structure_json(&s);
                }
                out
            }
        })
    }
}

fn merge(into: &mut Value, from: Value) {
    if let (Some(a), Value::Object(b)) = (into.as_object_mut(), from) {
        a.extend(b);
    }
}

fn envelope(name: &str, file: &str, flags: &Flags, g: Option<&GroupSpec>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!({"name": name, "file": file, "flags": flags.echo()}));
    if let Some(g) = g {
        m.insert("group".into(), json!({"field": field_json(&g.field), "dim": g.dim, "ngens": g.ngens()}));
    }
    m
}

fn finish(mut m: Map<String, Value>, started: Instant, exit: i32) -> Outcome {
    m.insert("wall_time_ms".into(), json!(started.elapsed().as_millis() as u64));
    Outcome { report: Value::Object(m), exit }
}

pub fn run_command(cmd: Command, file: &str, g: &GroupSpec, flags: &Flags) -> Outcome {
    let started = Instant::now();
    let mut run = Run { opts: flags.options(), flags: flags.clone(), budgets: Vec::new() };
    let mut m = envelope(cmd.name(), file, flags, Some(g));
    let exit = match run.dispatch(cmd, g) {
        Ok(result) => {
            m.insert("result".into(), result);
            EXIT_OK
        }
        Err(e) => {
            if e.is_budget() {
                run.budgets.push(e.to_string());
            }
            m.insert("error".into(), error_json(&e));
            if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            }
        }
    };
    m.insert("budgets".into(), json!(run.budgets));
    finish(m, started, exit)
}

/// Report for a file that could not be loaded.
pub fn load_failure(name: &str, file: &str, flags: &Flags, err: &dyn std::fmt::Display) -> Outcome {
    let started = Instant::now();
    let mut m = envelope(name, file, flags, None);
    m.insert("error".into(), json!({"kind": "ParseError", "message": err.to_string()}));
    finish(m, started, EXIT_USAGE)
}

pub fn run_file(cmd: Command, path: &Path, flags: &Flags) -> Outcome {
    let file = path.display().to_string();
    match parse_group_file(path, flags.seed()) {
        Ok(g) => run_command(cmd, &file, &g, flags),
        Err(e) => load_failure(cmd.name(), &file, flags, &e),
    }
}

/// `*.json` files of `dir` in name order, one worker thread per file.
pub fn run_batch(cmd: Command, dir: &Path, flags: &Flags) -> std::io::Result<Vec<Outcome>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = files.iter().map(|p| s.spawn(move || run_file(cmd, p, flags))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    }))
}

// ---- verify-witness ----

/// Objects claiming `nilpotent: false` or `finite: false`, with their paths.
fn negative_claims<'a>(v: &'a Value, path: String, out: &mut Vec<(String, &'a Map<String, Value>)>) {
    match v {
        Value::Object(m) => {
            let neg = |k: &str| m.get(k) == Some(&Value::Bool(false));
            if neg("nilpotent") || neg("finite") {
                out.push((path.clone(), m));
            }
            for (k, x) in m {
                negative_claims(x, format!("{path}.{k}"), out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                negative_claims(x, format!("{path}[{i}]"), out);
            }
        }
        _ => {}
    }
}

fn check(kind: &str, path: &str, r: Result<(), String>) -> Value {
    match r {
        Ok(()) => json!({"path": path, "kind": kind, "ok": true}),
        Err(reason) => json!({"path": path, "kind": kind, "ok": false, "reason": reason}),
    }
}

/// Re-checks every negative verdict in `report` against `g`.
pub fn verify_report(g: &GroupSpec, report: &Value) -> Result<Value, ParseError> {
    let root = At::root(report);
    let recorded = parse_field(&root.key("group")?.key("field")?, 1)?;
    let mut checks = Vec::new();
    if recorded != g.field {
        checks.push(check("field", "$.group.field", Err("report was produced over a different field".into())));
    }
    let mut claims = Vec::new();
    negative_claims(root.key("result")?.value, "$.result".into(), &mut claims);
    for (path, m) in claims {
        let obj = Value::Object(m.clone());
        let at = At { value: &obj, path: path.clone() };
        if m.get("nilpotent") == Some(&Value::Bool(false)) {
            match at.opt("witness") {
                None => checks.push(check("missing", &path, Err("negative verdict without a witness".into()))),
                Some(w) => {
                    let w = parse_witness(&w, &g.field)?;
                    checks.push(check(w.kind(), &format!("{path}.witness"), verify_witness(g, &w)));
                }
            }
        }
        if m.get("finite") == Some(&Value::Bool(false)) {
            match at.opt("infinite_witness") {
                None => checks.push(check("missing", &path, Err("infinite verdict without a witness".into()))),
                Some(w) => {
                    let w = parse_infinite_witness(&w, &g.field)?;
                    checks.push(check(w.kind(), &format!("{path}.infinite_witness"), verify_infinite(g, &w)));
                }
            }
        }
    }
    let verified = checks.iter().all(|c| c["ok"] == Value::Bool(true));
    Ok(json!({"verified": verified, "checked": checks.len(), "checks": checks}))
}

pub fn run_verify(group_path: &Path, report_path: &Path, flags: &Flags) -> Outcome {
    let started = Instant::now();
    let file = group_path.display().to_string();
    let g = match parse_group_file(group_path, flags.seed()) {
        Ok(g) => g,
        Err(e) => return load_failure("verify-witness", &file, flags, &e),
    };
    let mut m = envelope("verify-witness", &file, flags, Some(&g));
    m.insert("report_file".into(), json!(report_path.display().to_string()));
    let parsed = std::fs::read_to_string(report_path)
        .map_err(|e| e.to_string())
        .and_then(|t| serde_json::from_str::<Value>(&t).map_err(|e| ParseError::from(e).to_string()))
        .and_then(|r| verify_report(&g, &r).map_err(|e| e.to_string()));
    let exit = match parsed {
        Ok(result) => {
            let ok = result["verified"] == Value::Bool(true);
            m.insert("result".into(), result);
            if ok {
                EXIT_OK
            } else {
                EXIT_REJECTED
            }
        }
        Err(msg) => {
            m.insert("error".into(), json!({"kind": "ParseError", "message": msg}));
            EXIT_USAGE
        }
    };
    finish(m, started, exit)
}
