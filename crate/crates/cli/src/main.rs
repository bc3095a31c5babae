use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilmat_cli::commands::{EXIT_OK, EXIT_USAGE};
use nilmat_cli::render::human;
use nilmat_cli::{gen, parse_group_file, run_batch, run_file, run_verify, Command, Flags, MethodFlag, Outcome};
use serde_json::Value;

/// Nilpotency testing and structure of finitely generated matrix groups.
#[derive(Parser, Debug)]
#[command(name = "nilmat", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decide nilpotency, with a witness when the answer is no
    IsNilpotent(Analysis),
    /// Decide finiteness of a nilpotent group
    IsFinite(Analysis),
    /// Order of a finite nilpotent group
    Order(Analysis),
    /// Sylow subgroups of a finite nilpotent group
    Sylow(Analysis),
    /// Primary decomposition of a nilpotent group
    Primary(Analysis),
    /// Test complete reducibility of a nilpotent group
    IsCompletelyReducible(Analysis),
    /// Series whose factors are completely reducible
    CrSeries(Analysis),
    /// Select and apply a congruence homomorphism
    Reduce(Analysis),
    /// Brute-force closure invariants
    Oracle(Analysis),
    /// Full structure report of a nilpotent group
    Report(Analysis),
    /// Write group files
    Gen {
        #[command(subcommand)]
        what: GenCmd,
        /// Output file (default: stdout)
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Recheck every witness in a report against its group file
    VerifyWitness {
        group: PathBuf,
        report: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GenCmd {
    /// Absolutely irreducible maximal nilpotent subgroup of GL(n, p^l)
    MaxAbsIrr { n: usize, p: u64, l: usize },
    /// A reducible, not completely reducible nilpotent group built from a base group file
    Reducible { base: PathBuf },
    /// The test corpus, one file per group
    Corpus { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Congruence,
    Adjoint,
}

#[derive(Args, Debug)]
struct Analysis {
    /// Group file
    #[arg(required_unless_present = "dir")]
    file: Option<PathBuf>,
    /// Analyze every *.json file of a directory
    #[arg(long, conflicts_with = "file")]
    dir: Option<PathBuf>,
    /// Emit the JSON report
    #[arg(long)]
    json: bool,
    /// Use this prime for the congruence homomorphism
    #[arg(long)]
    prime: Option<u64>,
    /// Override the nilpotency class bound
    #[arg(long)]
    class_bound: Option<usize>,
    /// Cap on closures and Cayley graphs
    #[arg(long)]
    cap: Option<usize>,
    /// Seed for extension-field modulus searches
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "congruence")]
    method: MethodArg,
}

impl Analysis {
    fn flags(&self) -> Flags {
        Flags {
            method: match self.method {
                MethodArg::Congruence => MethodFlag::Congruence,
                MethodArg::Adjoint => MethodFlag::Adjoint,
            },
            prime: self.prime,
            class_bound: self.class_bound,
            cap: self.cap,
            seed: self.seed,
        }
    }
}

fn emit(o: &Outcome, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(&o.report).expect("serializable"));
    } else {
        println!("{}", human(&o.report));
    }
}

fn analyze(cmd: Command, a: &Analysis) -> i32 {
    let flags = a.flags();
    if let Some(dir) = &a.dir {
        let outs = match run_batch(cmd, dir, &flags) {
            Ok(o) => o,
            Err(e) => {
                eprintln!("error: {}: {e}", dir.display());
                return EXIT_USAGE;
            }
        };
        if a.json {
            let all: Vec<&Value> = outs.iter().map(|o| &o.report).collect();
            println!("{}", serde_json::to_string_pretty(&all).expect("serializable"));
        } else {
            for o in &outs {
                emit(o, false);
            }
        }
        return outs.iter().map(|o| o.exit).max().unwrap_or(EXIT_OK);
    }
    let out = run_file(cmd, a.file.as_ref().expect("clap requires a file"), &flags);
    emit(&out, a.json);
    out.exit
}

fn write_value(v: &Value, out: &Option<PathBuf>) -> i32 {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    match out {
        None => println!("{text}"),
        Some(p) => {
            if let Err(e) = std::fs::write(p, text + "\n") {
                eprintln!("error: {}: {e}", p.display());
                return EXIT_USAGE;
            }
        }
    }
    EXIT_OK
}

fn generate(what: &GenCmd, out: &Option<PathBuf>) -> i32 {
    let built = match what {
        GenCmd::MaxAbsIrr { n, p, l } => gen::max_abs_irr(*n, *p, *l).map_err(|e| e.to_string()),
        GenCmd::Reducible { base } => parse_group_file(base, 1)
            .map_err(|e| e.to_string())
            .and_then(|g| gen::reducible(&g).map_err(|e| e.to_string())),
        GenCmd::Corpus { dir } => {
            return match gen::write_corpus(dir) {
                Ok(names) => {
                    eprintln!("wrote {} group files to {}", names.len(), dir.display());
                    EXIT_OK
                }
                Err(e) => {
                    eprintln!("error: {}: {e}", dir.display());
                    EXIT_USAGE
                }
            };
        }
    };
    match built {
        Ok(v) => write_value(&v, out),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::IsNilpotent(a) => analyze(Command::IsNilpotent, a),
        Cmd::IsFinite(a) => analyze(Command::IsFinite, a),
        Cmd::Order(a) => analyze(Command::Order, a),
        Cmd::Sylow(a) => analyze(Command::Sylow, a),
        Cmd::Primary(a) => analyze(Command::Primary, a),
        Cmd::IsCompletelyReducible(a) => analyze(Command::IsCompletelyReducible, a),
        Cmd::CrSeries(a) => analyze(Command::CrSeries, a),
        Cmd::Reduce(a) => analyze(Command::Reduce, a),
        Cmd::Oracle(a) => analyze(Command::Oracle, a),
        Cmd::Report(a) => analyze(Command::Report, a),
        Cmd::Gen { what, out } => generate(what, out),
        Cmd::VerifyWitness { group, report, json } => {
            let o = run_verify(group, report, &Flags::default());
            emit(&o, *json);
            o.exit
        }
    };
    ExitCode::from(code as u8)
}
