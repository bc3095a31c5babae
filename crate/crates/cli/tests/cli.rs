use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nilmat::testkit::{corpus_finite, corpus_rational};
use nilmat::{is_nilpotent, Options};
use nilmat_cli::codec::{parse_infinite_witness, parse_witness, witness_json, infinite_witness_json, At};
use nilmat_cli::{group_json, run_command, Flags};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nilmat"))
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Scratch {
        let d = std::env::temp_dir().join(format!("nilmat-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        Scratch(d)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn group(&self, name: &str) -> PathBuf {
        let e = corpus_rational().into_iter().chain(corpus_finite()).find(|e| e.name == name).unwrap();
        self.write(&format!("{name}.json"), &group_json(&e.group, Some(name)).to_string())
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn run(args: &[&str], file: &Path) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn without_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_time_ms");
    v
}

#[test]
fn heisenberg_is_nilpotent() {
    let s = Scratch::new("heis");
    let o = run(&["is-nilpotent", "--json"], &s.group("heisenberg"));
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["schema"], "nilmat/1");
    assert_eq!(r["result"]["nilpotent"], true);
}

#[test]
fn s3_has_a_witness_that_verifies() {
    let s = Scratch::new("s3");
    let g = s.group("s3");
    let o = run(&["is-nilpotent", "--json"], &g);
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["result"]["nilpotent"], false);
    assert!(r["result"]["witness"]["kind"].is_string());
    let rp = s.write("s3.report.json", &r.to_string());
    let v = bin().args(["verify-witness", "--json"]).arg(&g).arg(&rp).output().unwrap();
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json_of(&v)["result"]["verified"], true);
}

#[test]
fn order_of_diag2_is_absent() {
    let s = Scratch::new("diag2");
    let o = run(&["order", "--json"], &s.group("diag2"));
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&o);
    assert_eq!(r["result"]["finite"], false);
    assert!(r["result"].get("order").is_none());
    assert_eq!(r["result"]["infinite_witness"]["kind"], "kernel_nontrivial");
}

#[test]
fn parse_errors_exit_2() {
    let s = Scratch::new("parse");
    for (name, text) in [
        ("zero_den", r#"{"field":{"kind":"Q"},"generators":[[["1/0","0"],["0","1"]]]}"#),
        ("non_square", r#"{"field":{"kind":"Q"},"generators":[[["1","0"]]]}"#),
        ("syntax", r#"{"field":{"kind":"Q"},"generators":[[["1"]]"#),
        ("singular", r#"{"field":{"kind":"Q"},"generators":[[["0"]]]}"#),
    ] {
        let o = run(&["is-nilpotent", "--json"], &s.write(&format!("{name}.json"), text));
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(json_of(&o)["error"]["message"].is_string());
    }
    let o = bin().args(["is-nilpotent", "--method", "bogus", "x.json"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_errors_exit_1() {
    let s = Scratch::new("budget");
    let o = run(&["oracle", "--json", "--cap", "10"], &s.group("s4"));
    assert_eq!(o.status.code(), Some(1));
    let r = json_of(&o);
    assert_eq!(r["error"]["kind"], "CapExceeded");
    assert_eq!(r["budgets"].as_array().unwrap().len(), 1);
}

#[test]
fn reports_replay_byte_identically() {
    let s = Scratch::new("replay");
    for name in ["diag3_swap", "d8_conj", "scalar_times_d8", "max_nilpotent_3_7^1"] {
        let g = s.group(name);
        let a = without_time(json_of(&run(&["report", "--json"], &g)));
        let b = without_time(json_of(&run(&["report", "--json"], &g)));
        assert_eq!(a.to_string(), b.to_string(), "{name}");
        let text = a.to_string();
        if let Some(i) = text.find("\"p\":") {
            let p: String = text[i + 4..].chars().take_while(char::is_ascii_digit).collect();
            let c = without_time(json_of(&run(&["report", "--json", "--prime", &p], &g)));
            assert_eq!(a.to_string(), c.to_string(), "{name} with --prime {p}");
        }
    }
}

#[test]
fn verify_rejects_tampered_reports() {
    let s = Scratch::new("tamper");
    let g = s.group("s4");
    let r = json_of(&run(&["is-nilpotent", "--json"], &g));
    let mut bad = r.clone();
    bad["result"]["witness"] = Value::Null;
    let rp = s.write("missing.json", &bad.to_string());
    let v = bin().args(["verify-witness", "--json"]).arg(&g).arg(&rp).output().unwrap();
    assert_eq!(v.status.code(), Some(3));
    let other = s.group("d8");
    let rp = s.write("other.json", &r.to_string());
    let v = bin().args(["verify-witness", "--json"]).arg(&other).arg(&rp).output().unwrap();
    assert_eq!(v.status.code(), Some(3));
}

#[test]
fn batch_mode_matches_single_runs() {
    let s = Scratch::new("batch");
    let names = ["d8", "s3", "heisenberg", "klein4"];
    for n in names {
        s.group(n);
    }
    let o = bin().args(["is-nilpotent", "--json", "--dir"]).arg(&s.0).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let all = json_of(&o);
    let all = all.as_array().unwrap();
    assert_eq!(all.len(), names.len());
    let mut sorted = names.to_vec();
    sorted.sort();
    for (r, n) in all.iter().zip(sorted) {
        let single = json_of(&run(&["is-nilpotent", "--json"], &s.0.join(format!("{n}.json"))));
        assert_eq!(without_time(r.clone()), without_time(single));
    }
}

#[test]
fn gen_writes_loadable_groups() {
    let s = Scratch::new("gen");
    let out = s.0.join("m.json");
    let o = bin().args(["gen", "max-abs-irr", "2", "5", "1", "--out"]).arg(&out).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&run(&["order", "--json"], &out));
    assert_eq!(r["result"]["order"], 32);
    let red = s.0.join("red.json");
    let o = bin().args(["gen", "reducible"]).arg(&out).arg("--out").arg(&red).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = json_of(&run(&["is-completely-reducible", "--json"], &red));
    assert_eq!(r["result"]["verdict"]["nilpotent"], true);
    assert_eq!(r["result"]["completely_reducible"], false);
    let o = bin().args(["gen", "max-abs-irr", "3", "5", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let dir = s.0.join("corpus");
    let o = bin().args(["gen", "corpus"]).arg(&dir).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), corpus_finite().len() + corpus_rational().len());
}

#[test]
fn human_output_summarizes() {
    let s = Scratch::new("human");
    let o = run(&["sylow"], &s.group("d8"));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("order: 8"), "{text}");
    assert!(text.contains("sylow: [2^8]"), "{text}");
}

#[test]
fn witnesses_round_trip_through_json() {
    let opts = Options::default();
    for e in corpus_rational().into_iter().chain(corpus_finite()) {
        let v = is_nilpotent(&e.group, &opts).unwrap();
        if let Some(w) = &v.witness {
            let j = witness_json(w);
            assert_eq!(&parse_witness(&At::root(&j), &e.group.field).unwrap(), w, "{}", e.name);
        }
        let out = run_command(nilmat_cli::Command::IsFinite, &e.name, &e.group, &Flags::default());
        if let Some(j) = out.report["result"].get("infinite_witness").filter(|j| !j.is_null()) {
            let w = parse_infinite_witness(&At::root(j), &e.group.field).unwrap();
            assert_eq!(&infinite_witness_json(&w), j, "{}", e.name);
        }
    }
}
