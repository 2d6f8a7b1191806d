//! Command-line surface for the twintree toolkit.
//!
//! Exit codes: 0 for a positive decision or plain success, 1 for a negative
//! decision (the certificate is printed as the JSON payload), 2 for usage
//! or input errors (one diagnostic line on standard error).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use twintree::batch::ordered_map;
use twintree::dense::{dense_triple, DenseOutcome};
use twintree::generate::{generate, GeneratorSpec};
use twintree::graph::{from_text, to_text, Graph};
use twintree::oracle::{brute_subquartics, brute_triple, brute_two_trees};
use twintree::orient::{
    orient_4r4c, orient_quartic, triple_to_dot, triple_violation, OrientOutcome, STTriple,
};
use twintree::quartic::{as_quartic, check_normal, CoarsifyOutcome};
use twintree::sparsity::{generic_circuits, two_spanning_trees, TwoTreeOutcome};
use twintree::{Error, Result};

#[derive(Parser)]
#[command(
    name = "twintree",
    version,
    about = "Spanning tree pairs, circuit decompositions, and orientation certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a graph into two edge-disjoint spanning trees, or prove it
    /// impossible with a partition certificate.
    #[command(name = "check2t")]
    Check2t { file: PathBuf },
    /// Print the generic-circuit decomposition of a tight graph.
    Circuits { file: PathBuf },
    /// Decide whether a quartic is normal; print the coarsification tree or
    /// the obstruction certificate.
    Normal { file: PathBuf },
    /// Build an (s,t)-triple of a quartic rooted at two of its transits.
    Orient {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Emit a DOT rendering instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Build an (s,t)-triple of a 4-regular 4-connected graph.
    #[command(name = "orient4r4c")]
    Orient4r4c {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Emit a DOT rendering instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Grow a spanning tight subgraph with an (s,t)-triple inside a graph of
    /// minimum degree at least half its order.
    Dense {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Re-validate a triple JSON file against a graph.
    Verify { file: PathBuf, triple_file: PathBuf },
    /// Print a generated graph in the shared text format.
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exhaustive ground-truth procedures (small inputs only).
    Oracle {
        #[command(subcommand)]
        probe: OracleCommand,
    },
    /// Try every ordered transit pair of a quartic and report which admit
    /// triples.
    #[command(name = "explore-transits")]
    ExploreTransits { file: PathBuf },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exhaustive (s,t)-triple search over all vertex orders.
    Triple {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Enumerate all proper induced subquartics with boundary profiles.
    Subquartics { file: PathBuf },
    /// Exhaustive edge-disjoint spanning tree pair search.
    Trees { file: PathBuf },
}

/// A finished command: the payload for standard output plus the polarity of
/// the decision it reports.
enum Outcome {
    Positive(String),
    Negative(String),
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("payloads serialize")
}

fn load(file: &Path) -> Result<Graph> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", file.display())))?;
    from_text(&text)
}

#[derive(Serialize)]
struct VerifyReport {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<String>,
}

#[derive(Serialize)]
struct PairReport {
    s: usize,
    t: usize,
    admits: bool,
    outcome: OrientOutcome,
}

#[derive(Serialize)]
struct TransitSweep {
    transits: Vec<usize>,
    pairs: Vec<PairReport>,
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Check2t { file } => {
            let g = load(&file)?;
            Ok(match two_spanning_trees(&g)? {
                TwoTreeOutcome::Trees(pair) => Outcome::Positive(json(&pair)),
                TwoTreeOutcome::Infeasible(cert) => Outcome::Negative(json(&cert)),
            })
        }
        Command::Circuits { file } => {
            let g = load(&file)?;
            Ok(Outcome::Positive(json(&generic_circuits(&g)?)))
        }
        Command::Normal { file } => {
            let g = load(&file)?;
            let q = as_quartic(&g)?;
            Ok(match check_normal(&q) {
                CoarsifyOutcome::Tree(tree) => Outcome::Positive(json(&tree)),
                CoarsifyOutcome::Bad(cert) => Outcome::Negative(json(&cert)),
            })
        }
        Command::Orient { file, s, t, dot } => {
            let g = load(&file)?;
            let q = as_quartic(&g)?;
            Ok(match orient_quartic(&q, s, t)? {
                OrientOutcome::Triple(tr) => Outcome::Positive(if dot {
                    triple_to_dot(&g, &tr)
                } else {
                    json(&tr)
                }),
                OrientOutcome::Obstruction(cert) => Outcome::Negative(json(&cert)),
            })
        }
        Command::Orient4r4c { file, s, t, dot } => {
            let g = load(&file)?;
            let tr = orient_4r4c(&g, s, t)?;
            Ok(Outcome::Positive(if dot { triple_to_dot(&g, &tr) } else { json(&tr) }))
        }
        Command::Dense { file, s, t } => {
            let g = load(&file)?;
            Ok(match dense_triple(&g, s, t)? {
                found @ DenseOutcome::Found { .. } => Outcome::Positive(json(&found)),
                exceptional @ DenseOutcome::Exceptional { .. } => {
                    Outcome::Negative(json(&exceptional))
                }
            })
        }
        Command::Verify { file, triple_file } => {
            let g = load(&file)?;
            let text = fs::read_to_string(&triple_file).map_err(|e| {
                Error::InvalidInput(format!("cannot read {}: {e}", triple_file.display()))
            })?;
            let tr: STTriple = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad triple JSON: {e}")))?;
            Ok(match triple_violation(&g, &tr) {
                None => Outcome::Positive(json(&VerifyReport { valid: true, violation: None })),
                Some(violation) => Outcome::Negative(json(&VerifyReport {
                    valid: false,
                    violation: Some(violation),
                })),
            })
        }
        Command::Gen { family, params, seed } => {
            let g = generate(&GeneratorSpec { family, params, seed })?;
            Ok(Outcome::Positive(to_text(&g).trim_end().to_string()))
        }
        Command::Oracle { probe } => run_oracle(probe),
        Command::ExploreTransits { file } => {
            let g = load(&file)?;
            let q = as_quartic(&g)?;
            let mut pairs = Vec::new();
            for &s in &q.transits {
                for &t in &q.transits {
                    if s != t {
                        pairs.push((s, t));
                    }
                }
            }
            let outcomes: Vec<Result<OrientOutcome>> =
                ordered_map(&pairs, |&(s, t)| orient_quartic(&q, s, t));
            let mut reports = Vec::with_capacity(pairs.len());
            for (&(s, t), outcome) in pairs.iter().zip(outcomes) {
                let outcome = outcome?;
                let admits = matches!(outcome, OrientOutcome::Triple(_));
                reports.push(PairReport { s, t, admits, outcome });
            }
            Ok(Outcome::Positive(json(&TransitSweep { transits: q.transits.clone(), pairs: reports })))
        }
    }
}

fn run_oracle(probe: OracleCommand) -> Result<Outcome> {
    match probe {
        OracleCommand::Triple { file, s, t } => {
            let g = load(&file)?;
            let report = brute_triple(&g, s, t)?;
            Ok(if report.verdict {
                Outcome::Positive(json(&report))
            } else {
                Outcome::Negative(json(&report))
            })
        }
        OracleCommand::Subquartics { file } => {
            let g = load(&file)?;
            Ok(Outcome::Positive(json(&brute_subquartics(&g)?)))
        }
        OracleCommand::Trees { file } => {
            let g = load(&file)?;
            let report = brute_two_trees(&g)?;
            Ok(if report.verdict {
                Outcome::Positive(json(&report))
            } else {
                Outcome::Negative(json(&report))
            })
        }
    }
}

/// Prints the payload, swallowing broken-pipe errors so `twintree … | head`
/// exits cleanly.
fn emit(payload: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{payload}");
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let rendered = e.render().to_string();
                let line = rendered
                    .lines()
                    .find(|l| !l.trim().is_empty())
                    .unwrap_or("usage error");
                eprintln!("{line}");
                return ExitCode::from(2);
            }
            // --help / --version go to standard output with a zero exit.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(Outcome::Positive(payload)) => {
            emit(&payload);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Negative(payload)) => {
            emit(&payload);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
