//! The `iterdom` command-line front end.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 unsupported
//! configuration, 4 property violation or order dependence, 5 search
//! budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ars::newman_experiment;
use crate::dominance::DominanceRelation;
use crate::error::Error;
use crate::game::{BeliefMode, Game, Restriction};
use crate::io::{parse_game, TraceDocument};
use crate::par::Execution;
use crate::random::random_suite;
use crate::reduction::sampling::{sample_monotonic_pairs, sample_steps, CheckReport, StepProperty};
use crate::reduction::{explore, normal_form, OrderPolicy, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "iterdom", version, about = "Exact iterated elimination of dominated strategies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eliminate under one order and print the outcome.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long, value_enum, default_value_t = Policy::Fastest)]
        policy: Policy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the elimination trace as JSON.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Compute every outcome reachable under any elimination order.
    Orders {
        file: PathBuf,
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Check a property of the relation on sampled reduction steps.
    Check {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Check on this many random 2-player games instead of a file.
        #[arg(long, requires = "seed")]
        random: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        property: Property,
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Test Newman's lemma on random acyclic reduction systems.
    Ars {
        /// Largest number of nodes; each sample draws 1 to N.
        #[arg(long)]
        nodes: usize,
        /// Edge probability as a fraction P/Q.
        #[arg(long, value_parser = parse_probability)]
        edge_prob: (u64, u64),
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct RelationArgs {
    /// A relation name or a comma-joined intersection.
    #[arg(long)]
    relation: String,
    #[arg(long, value_enum, default_value_t = Beliefs::Pure)]
    beliefs: Beliefs,
}

impl RelationArgs {
    fn relation(&self) -> crate::Result<DominanceRelation> {
        let mode = match self.beliefs {
            Beliefs::Pure => BeliefMode::Pure,
            Beliefs::Mixed => BeliefMode::MixedIndependent,
            Beliefs::Correlated => BeliefMode::Correlated,
        };
        DominanceRelation::parse(&self.relation, mode)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Beliefs {
    Pure,
    Mixed,
    Correlated,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Policy {
    Fastest,
    SingleLex,
    SingleRandom,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Property {
    Hereditary,
    Monotonic,
    ProofShape,
}

fn parse_probability(text: &str) -> Result<(u64, u64), String> {
    let (p, q) = text.split_once('/').ok_or_else(|| format!("expected P/Q, got `{text}`"))?;
    let p: u64 = p.parse().map_err(|_| format!("bad numerator in `{text}`"))?;
    let q: u64 = q.parse().map_err(|_| format!("bad denominator in `{text}`"))?;
    if q == 0 || p > q {
        return Err(format!("`{text}` is not a probability"));
    }
    Ok((p, q))
}

/// Runs the CLI with the process's stdout and stderr.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs the CLI, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::UnsupportedConfiguration(_) | Error::AssumptionViolated { .. } => EXIT_UNSUPPORTED,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InvalidCertificate(_) => EXIT_VIOLATION,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

fn load(path: &Path) -> Result<Arc<Game>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })?;
    parse_game(&text)
        .map(Arc::new)
        .map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn print_outcome(out: &mut dyn Write, r: &Restriction) -> std::io::Result<()> {
    for (i, labels) in r.kept_labels().iter().enumerate() {
        writeln!(out, "player {}: {}", i + 1, labels.join(" "))?;
    }
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Reduce { file, relation, policy, seed, trace } => {
            let game = load(&file)?;
            let rel = relation.relation()?;
            let policy = match policy {
                Policy::Fastest => OrderPolicy::FullSpeed,
                Policy::SingleLex => OrderPolicy::SingleLex,
                Policy::SingleRandom => OrderPolicy::SingleRandom(seed),
            };
            let result = normal_form(&rel, &game, policy)?;
            print_outcome(out, &result.outcome)?;
            if let Some(path) = trace {
                std::fs::write(&path, TraceDocument::from_trace(&result).to_json())
                    .map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })?;
            }
            Ok(EXIT_OK)
        }
        Command::Orders { file, relation, budget } => {
            let game = load(&file)?;
            let rel = relation.relation()?;
            rel.check_supported(game.players())?;
            match explore(&rel, &game, budget, Execution::default()) {
                Ok(exploration) => {
                    let outcomes = exploration.outcomes();
                    for r in &outcomes {
                        writeln!(out, "{r}")?;
                    }
                    if outcomes.len() == 1 {
                        Ok(EXIT_OK)
                    } else {
                        writeln!(err, "order dependence: {} distinct outcomes", outcomes.len())?;
                        Ok(EXIT_VIOLATION)
                    }
                }
                Err(Error::BudgetExceeded { limit, explored, partial }) => {
                    for kept in partial {
                        writeln!(out, "{}", Restriction::new(&game, kept)?)?;
                    }
                    writeln!(err, "budget of {limit} restrictions exceeded after exploring {explored}")?;
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Check { file, random, seed, property, relation, samples } => {
            let seed = seed.unwrap_or(0);
            let games = match (file, random) {
                (Some(path), _) => vec![load(&path)?],
                (None, Some(n)) => random_suite(seed, n, 0),
                (None, None) => unreachable!("clap requires a file or --random"),
            };
            let rel = relation.relation()?;
            for g in &games {
                rel.check_supported(g.players())?;
            }
            let exec = Execution::default();
            let report: CheckReport = match property {
                Property::Hereditary => sample_steps(&rel, &games, StepProperty::Hereditary, samples, seed, exec)?,
                Property::ProofShape => sample_steps(&rel, &games, StepProperty::ProofShape, samples, seed, exec)?,
                Property::Monotonic => sample_monotonic_pairs(&rel, &games, samples, seed, exec)?,
            };
            writeln!(out, "checked: {}", report.checked)?;
            match report.violation {
                None => {
                    writeln!(out, "no violation")?;
                    Ok(EXIT_OK)
                }
                Some(v) => {
                    let game = v.before.game();
                    writeln!(out, "violation in game {}", v.game + 1)?;
                    writeln!(out, "before: {}", v.before)?;
                    writeln!(out, "after: {}", v.after)?;
                    writeln!(out, "witness: player {} strategy {}", v.witness.player + 1, game.label(v.witness))?;
                    Ok(EXIT_VIOLATION)
                }
            }
        }
        Command::Ars { nodes, edge_prob: (p, q), samples, seed } => {
            let report = newman_experiment(nodes, p, q, samples, seed, Execution::default())?;
            writeln!(out, "samples: {}", report.samples)?;
            writeln!(out, "weakly confluent: {}", report.weakly_confluent)?;
            writeln!(out, "not weakly confluent: {}", report.not_weakly_confluent)?;
            writeln!(out, "unique normal forms: {}", report.unique_normal_forms)?;
            writeln!(out, "failures: {}", report.failures)?;
            Ok(if report.failures == 0 { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}
