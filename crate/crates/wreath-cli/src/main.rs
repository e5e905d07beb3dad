//! Command-line decider for subsemigroups of the wreath product of the
//! integers with themselves: reads a generator file, decides the identity
//! or group problem, and prints a verdict report.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use wreath_cli::report::{self, OracleReport, Report};
use wreath_cli::{dump, input};
use wreath_core::decider::{self, OracleOutcome};
use wreath_core::ggraph::GGraph;
use wreath_core::wreath::{GeneratorSet, Word};

#[derive(Parser)]
#[command(
    name = "wreath-decide",
    version,
    about = "Decide identity and group membership for finitely generated subsemigroups of Z wr Z"
)]
struct Cli {
    /// Problem to decide.
    #[arg(long, value_enum)]
    problem: Problem,

    /// Construct an explicit witness word on a true verdict.
    #[arg(long)]
    witness: bool,

    /// Degree window half-width for the witness search.
    #[arg(
        long,
        value_name = "N",
        default_value_t = 6,
        allow_negative_numbers = true
    )]
    witness_degree_bound: i64,

    /// Cross-check the verdict against a breadth-first word search up to
    /// this length; an inconsistency aborts with exit code 3.
    #[arg(long, value_name = "DEPTH")]
    oracle_check: Option<usize>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the witness word's graph to PATH.json and PATH.dot.
    #[arg(long, value_name = "PATH", requires = "witness")]
    dump_graph: Option<PathBuf>,

    /// Generator file.
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Identity,
    Group,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}

fn run(cli: Cli) -> u8 {
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", cli.input.display());
            return 2;
        }
    };
    let gens = match input::parse_generators(&text) {
        Ok(gens) => gens,
        Err(err) => {
            eprintln!("error: {err}");
            return 2;
        }
    };
    let pair_count = gens.idx_pos().len() * gens.idx_neg().len();
    if pair_count > decider::MAX_PAIRS {
        eprintln!(
            "error: {pair_count} displacement pairs exceed the supported cap of {}",
            decider::MAX_PAIRS
        );
        return 2;
    }
    match cli.problem {
        Problem::Group => {
            let decision = match decider::decide_group(&gens) {
                Ok(decision) => decision,
                Err(err) => {
                    eprintln!("error: {err}");
                    return 2;
                }
            };
            let witness = witness_slot(cli.witness, decision.is_group, || {
                decider::group_witness(&gens, &decision, cli.witness_degree_bound)
            });
            let oracle = cli.oracle_check.map(|depth| {
                oracle_report(decider::bfs_oracle(&gens, depth), depth, decision.is_group)
            });
            let report = report::group_report(&decision, as_word_ref(&witness), oracle);
            finish(&cli, &gens, decision.is_group, &report, &witness)
        }
        Problem::Identity => {
            let decision = match decider::decide_identity(&gens) {
                Ok(decision) => decision,
                Err(err) => {
                    eprintln!("error: {err}");
                    return 2;
                }
            };
            let witness = witness_slot(cli.witness, decision.contains_identity, || {
                decider::identity_witness(&gens, &decision, cli.witness_degree_bound)
            });
            let oracle = cli.oracle_check.map(|depth| {
                oracle_report(
                    decider::bfs_identity_oracle(&gens, depth),
                    depth,
                    decision.contains_identity,
                )
            });
            let report = report::identity_report(&decision, as_word_ref(&witness), oracle);
            finish(&cli, &gens, decision.contains_identity, &report, &witness)
        }
    }
}

/// Witness field contents: absent unless requested on a true verdict.
fn witness_slot(
    requested: bool,
    verdict: bool,
    search: impl FnOnce() -> Option<Word>,
) -> Option<Option<Word>> {
    if requested && verdict {
        Some(search())
    } else {
        None
    }
}

fn as_word_ref(witness: &Option<Option<Word>>) -> Option<Option<&Word>> {
    witness.as_ref().map(|inner| inner.as_ref())
}

fn oracle_report(outcome: OracleOutcome, depth: usize, verdict: bool) -> OracleReport {
    let consistent = outcome.found_word.is_none() || verdict;
    OracleReport {
        depth,
        found: outcome.found_word.map(|w| w.letters().to_vec()),
        exhausted: outcome.exhausted,
        consistent,
    }
}

fn finish(
    cli: &Cli,
    gens: &GeneratorSet,
    verdict: bool,
    report: &Report,
    witness: &Option<Option<Word>>,
) -> u8 {
    match cli.format {
        Format::Json => {
            let text = serde_json::to_string_pretty(report).expect("report serializes");
            println!("{text}");
        }
        Format::Text => print!("{}", report::render_text(report)),
    }
    if let Some(path) = &cli.dump_graph {
        if let Some(Some(word)) = witness {
            if let Err(err) = write_graph_dumps(gens, word, path) {
                eprintln!("error: cannot write graph dump: {err}");
                return 2;
            }
        }
    }
    if report.oracle.as_ref().is_some_and(|o| !o.consistent) {
        eprintln!("error: word search found the identity but the verdict is false");
        return 3;
    }
    if verdict {
        0
    } else {
        1
    }
}

fn write_graph_dumps(gens: &GeneratorSet, word: &Word, path: &Path) -> std::io::Result<()> {
    let graph = GGraph::graph_of_word(gens, word).expect("verified witness word");
    let json = serde_json::to_string_pretty(&dump::graph_json(&graph)).expect("graph serializes");
    std::fs::write(with_suffix(path, ".json"), json + "\n")?;
    std::fs::write(with_suffix(path, ".dot"), dump::graph_dot(&graph))?;
    Ok(())
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut os: OsString = path.as_os_str().to_os_string();
    os.push(suffix);
    PathBuf::from(os)
}
