//! Command-line interface. [`run`] takes the argument list and output
//! streams and returns the process exit status: 0 on success, 1 on a usage
//! error, 2 on a data or constraint error.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;

use clap::{error::ErrorKind, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constraints::{evaluate_constraint, parse_constraint, EvalOptions};
use crate::curves::{compute_curve, CurveError};
use crate::hypergraph::ItemHyperGraph;
use crate::lattice::{DEFAULT_CAP, HARD_CAP};
use crate::measures::MeasureId;
use crate::miners::{self, MiningParams, ToRecord};
use crate::threshold::Threshold;
use crate::transactions::{Pattern, TransactionDatabase};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "itemlattice", version, about = "Constraint-based mining of higher-order item associations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One JSON object per line (miners), or a single JSON document.
    Json,
    Csv,
    /// Graph description text.
    Dot,
}

#[derive(Debug, Args)]
struct Io {
    /// Transaction database in basket format.
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
    /// Write results here instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
struct Minsup {
    /// minisupport: minimum support fraction, in (0, 1].
    #[arg(long, value_name = "R", default_value = "0.1", value_parser = parse_minsup)]
    minsup: Threshold,
}

#[derive(Debug, Args)]
struct Mincorr {
    /// min_correlation: minimum lift, greater than 0.
    #[arg(long, value_name = "R", default_value = "1", value_parser = parse_positive)]
    mincorr: Threshold,
}

#[derive(Debug, Args)]
struct Mediated {
    /// t_s: a pair is rare when its support is below this fraction, in [0, 1).
    #[arg(long, value_name = "R", default_value = "0.1", value_parser = parse_fraction)]
    ts: Threshold,
    /// t_f: minimum support of each item together with the mediator, in (0, 1].
    #[arg(long, value_name = "R", default_value = "0.4", value_parser = parse_minsup)]
    tf: Threshold,
    /// t_d: minimum dependence between each item and the mediator.
    #[arg(long, value_name = "R", default_value = "1", value_parser = parse_nonnegative)]
    td: Threshold,
    /// Dependence measure: d, lift, col, support, allconf or bond.
    #[arg(long, value_name = "NAME", default_value = "d", value_parser = parse_measure)]
    measure: MeasureId,
    /// Largest mediator size.
    #[arg(long = "max-mediator", value_name = "K", default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    max_mediator: u64,
}

#[derive(Debug, Args)]
struct Target {
    /// Pattern X as comma-separated item labels.
    #[arg(long, value_name = "L1,L2,...", value_parser = parse_labels)]
    pattern: Labels,
    /// Largest pattern whose sub-patterns may be enumerated.
    #[arg(long, value_name = "K", default_value_t = DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..=HARD_CAP as u64))]
    cap: u64,
}

#[derive(Debug, Clone)]
struct Labels(Vec<String>);

#[derive(Debug, Subcommand)]
enum Command {
    /// Frequent patterns, support at least minisupport.
    Frequent {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        minsup: Minsup,
        /// Longest pattern to report.
        #[arg(long = "max-len", value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        max_len: Option<u64>,
    },
    /// Closed frequent patterns: no proper superset has the same support.
    Closed {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        minsup: Minsup,
    },
    /// Maximal frequent patterns: no proper superset is frequent.
    Maximal {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        minsup: Minsup,
    },
    /// Maximal clique patterns: every item pair has support at least minisupport.
    Clique {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        minsup: Minsup,
    },
    /// Maximal bi-clique patterns: exactly the cross pairs are frequent.
    Biclique {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        minsup: Minsup,
        /// Smallest side size.
        #[arg(long = "min-side", value_name = "K", default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        min_side: u64,
    },
    /// Indirect associations: rare pairs tied through a mediator.
    Indirect {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        mediated: Mediated,
    },
    /// Star patterns: a mediator with two or more mutually rare leaves.
    Star {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        mediated: Mediated,
    },
    /// All-correlation patterns: every sub-pattern of two or more items has lift at least min_correlation.
    Allcorr {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        mincorr: Mincorr,
        /// Longest pattern to report.
        #[arg(long = "max-len", value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        max_len: Option<u64>,
    },
    /// Unexpected-correlation patterns: lift reaches min_correlation but no proper sub-pattern's does.
    Unexpected {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        mincorr: Mincorr,
        /// Longest pattern to report.
        #[arg(long = "max-len", value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
        max_len: Option<u64>,
        /// Also report two-item patterns.
        #[arg(long = "include-pairs")]
        include_pairs: bool,
    },
    /// Evaluate a constraint on a pattern.
    Eval {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        target: Target,
        /// Constraint formula over sub(X).
        #[arg(long, value_name = "STRING")]
        constraint: String,
    },
    /// Item hyper-graph of a pattern under a quantified edge constraint.
    Ihg {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        target: Target,
        /// Edge constraint: one quantifier over sub(X).
        #[arg(long, value_name = "STRING")]
        constraint: String,
    },
    /// Sub-pattern interestingness curve of a pattern as CSV.
    Curve {
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        target: Target,
        /// Measure: support, lift, col, allconf or bond.
        #[arg(long, value_name = "NAME", default_value = "support", value_parser = parse_measure)]
        measure: MeasureId,
    },
}

fn parse_decimal(s: &str) -> Result<Threshold, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_minsup(s: &str) -> Result<Threshold, String> {
    let t = parse_decimal(s)?;
    if t == Threshold::ZERO || t.as_f64() > 1.0 {
        return Err(format!("{s} is not in (0, 1]"));
    }
    Ok(t)
}

fn parse_fraction(s: &str) -> Result<Threshold, String> {
    let t = parse_decimal(s)?;
    if t.as_f64() >= 1.0 {
        return Err(format!("{s} is not in [0, 1)"));
    }
    Ok(t)
}

fn parse_positive(s: &str) -> Result<Threshold, String> {
    let t = parse_decimal(s)?;
    if t == Threshold::ZERO {
        return Err("must be greater than 0".into());
    }
    Ok(t)
}

fn parse_nonnegative(s: &str) -> Result<Threshold, String> {
    parse_decimal(s)
}

fn parse_measure(s: &str) -> Result<MeasureId, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_labels(s: &str) -> Result<Labels, String> {
    let labels: Vec<String> = s.split(',').map(|l| l.trim().to_string()).collect();
    if labels.iter().any(String::is_empty) {
        return Err("labels must be non-empty".into());
    }
    Ok(Labels(labels))
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

fn data<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Data(e.to_string())
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let err = Cli::command().error(ErrorKind::ValueValidation, msg);
            let _ = write!(stderr, "{}", err.render());
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
    }
}

fn load(path: &PathBuf) -> Result<TransactionDatabase, Failure> {
    let file = File::open(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    TransactionDatabase::load_basket(BufReader::new(file)).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn check_format(io: &Io, allowed: &[Format]) -> Result<Format, Failure> {
    let format = io.format.unwrap_or(allowed[0]);
    if !allowed.contains(&format) {
        return Err(Failure::Usage(format!(
            "--format {} is not available for this subcommand",
            format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
        )));
    }
    Ok(format)
}

fn emit(io: &Io, stdout: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match &io.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn records<R: ToRecord>(db: &TransactionDatabase, found: &[R]) -> String {
    found.iter().map(|r| format!("{}\n", r.to_record(db))).collect()
}

fn mediated_params(m: &Mediated) -> Result<MiningParams, Failure> {
    let params = MiningParams {
        t_s: m.ts,
        t_f: m.tf,
        t_d: m.td,
        dependence_measure: m.measure,
        max_mediator_len: m.max_mediator as usize,
        ..MiningParams::default()
    };
    params.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(params)
}

/// Loads the database with every label of the pattern and constraint
/// registered, so labels absent from the data behave as items that never
/// occur.
fn load_target(io: &Io, target: &Target, extra: Vec<String>) -> Result<(TransactionDatabase, Pattern), Failure> {
    let db = load(&io.input)?.with_items(target.pattern.0.iter().cloned().chain(extra));
    let x = db.pattern(&target.pattern.0).map_err(data)?;
    Ok((db, x))
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Frequent { io, minsup, max_len } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            let found = miners::mine_frequent(&db, minsup.minsup, max_len.map(|k| k as usize));
            emit(&io, stdout, &records(&db, &found))
        }
        Command::Closed { io, minsup } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            emit(&io, stdout, &records(&db, &miners::mine_closed(&db, minsup.minsup)))
        }
        Command::Maximal { io, minsup } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            emit(&io, stdout, &records(&db, &miners::mine_maximal(&db, minsup.minsup)))
        }
        Command::Clique { io, minsup } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            emit(&io, stdout, &records(&db, &miners::mine_clique(&db, minsup.minsup)))
        }
        Command::Biclique { io, minsup, min_side } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            let found = miners::mine_biclique(&db, minsup.minsup, min_side as usize);
            emit(&io, stdout, &records(&db, &found))
        }
        Command::Indirect { io, mediated } => {
            check_format(&io, &[Format::Json])?;
            let params = mediated_params(&mediated)?;
            let db = load(&io.input)?;
            emit(&io, stdout, &records(&db, &miners::mine_indirect(&db, &params)))
        }
        Command::Star { io, mediated } => {
            check_format(&io, &[Format::Json])?;
            let params = mediated_params(&mediated)?;
            let db = load(&io.input)?;
            emit(&io, stdout, &records(&db, &miners::mine_star(&db, &params)))
        }
        Command::Allcorr { io, mincorr, max_len } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            let found = miners::mine_all_correlation(&db, mincorr.mincorr, max_len.map(|k| k as usize));
            emit(&io, stdout, &records(&db, &found))
        }
        Command::Unexpected {
            io,
            mincorr,
            max_len,
            include_pairs,
        } => {
            check_format(&io, &[Format::Json])?;
            let db = load(&io.input)?;
            let max_len = max_len.map_or(db.item_count(), |k| k as usize);
            let found = miners::mine_unexpected_correlation(&db, mincorr.mincorr, max_len, include_pairs);
            emit(&io, stdout, &records(&db, &found))
        }
        Command::Eval { io, target, constraint } => {
            check_format(&io, &[Format::Json])?;
            let formula = parse_constraint(&constraint).map_err(data)?;
            let (db, x) = load_target(&io, &target, formula.literal_labels())?;
            let trace = evaluate_constraint(&db, &formula, &x, EvalOptions::with_cap(target.cap as usize)).map_err(data)?;
            let witnesses: Vec<Vec<String>> = trace.witnesses.iter().map(|w| db.sorted_labels(w)).collect();
            let doc = json!({
                "pattern": db.sorted_labels(&x),
                "verdict": trace.verdict,
                "witnesses": witnesses,
            });
            emit(&io, stdout, &format!("{doc}\n"))
        }
        Command::Ihg { io, target, constraint } => {
            let format = check_format(&io, &[Format::Json, Format::Dot])?;
            let formula = parse_constraint(&constraint).map_err(data)?;
            let (db, x) = load_target(&io, &target, formula.literal_labels())?;
            let graph = ItemHyperGraph::build(&db, &x, &formula, EvalOptions::with_cap(target.cap as usize)).map_err(data)?;
            let text = match format {
                Format::Dot => graph.to_dot(),
                _ => format!("{}\n", graph.to_json()),
            };
            emit(&io, stdout, &text)
        }
        Command::Curve { io, target, measure } => {
            check_format(&io, &[Format::Csv])?;
            let (db, x) = load_target(&io, &target, Vec::new())?;
            let curve = compute_curve(&db, &x, measure, target.cap as usize).map_err(|e| match e {
                CurveError::UnsupportedMeasure(_) => Failure::Usage(e.to_string()),
                CurveError::CapExceeded { .. } => data(e),
            })?;
            emit(&io, stdout, &curve.to_csv())
        }
    }
}
