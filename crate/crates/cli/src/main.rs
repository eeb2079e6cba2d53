//! `nkoszul`: dimensions, identity checks, products and experiments for the
//! N-symmetric algebras `S(V, N)`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nkoszul_core::koszul_calculus::{cap_left, cap_right, cup};
use nkoszul_core::serial::{self, Operand};
use nkoszul_core::suites::{self, Question, Suite, SuiteConfig};
use nkoszul_core::{AlgebraElement, Chain, Cochain, Error, IncreasingTuple, NSymAlgebra, Report};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "nkoszul", version, about = "Exact N-Koszul calculus for the N-symmetric algebras S(V, N)")]
struct Cli {
    /// Number of generators.
    #[arg(long = "n", global = true)]
    n: Option<usize>,
    /// Degree of the relations.
    #[arg(long = "N", global = true)]
    big_n: Option<usize>,
    /// Degree bound (algebra degree for `dims`, cochain degree elsewhere).
    #[arg(long, global = true, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, global = true, default_value = "all")]
    suite: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random operands per degree pattern, in addition to dual-basis ones.
    #[arg(long, global = true, default_value_t = 2)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the file-format grammar and exit.
    #[arg(long)]
    schema: bool,
    /// Include wall-clock time in reports (makes them nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ProductKind {
    Cup,
    Capl,
    Capr,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OperandKind {
    Cochain,
    Chain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of W_p, W_ν(p) and A_m, with the global dimension d.
    Dims,
    /// Run a verification suite (see --suite).
    Check,
    /// Cup or cap product of two operand files.
    Product {
        #[arg(long, value_enum)]
        kind: ProductKind,
        /// Cochain for `cup` and `capl`; chain for `capr`.
        left: PathBuf,
        /// Cochain for `cup` and `capr`; chain for `capl`.
        right: PathBuf,
    },
    /// Associativity or graded-commutativity defect tables.
    Experiment {
        #[arg(long, value_parser = ["assoc", "comm"])]
        question: String,
    },
    /// Write a cochain or chain file, or normalize an existing one.
    Serialize {
        #[arg(long, value_enum, required_unless_present = "input")]
        kind: Option<OperandKind>,
        /// Cohomological or homological degree.
        #[arg(long, required_unless_present = "input")]
        degree: Option<usize>,
        /// 1-based tuple for a dual-basis cochain or unit chain, e.g. `1,3`
        /// (`""` for the empty tuple).
        #[arg(long)]
        tuple: Option<String>,
        /// Value degree of random operands.
        #[arg(long, default_value_t = 1)]
        value_degree: usize,
        /// Existing file to re-emit in canonical form.
        #[arg(long, conflicts_with_all = ["kind", "degree", "tuple"])]
        input: Option<PathBuf>,
    },
}

fn parse_tuple(s: &str) -> CliResult<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| Failure::Usage(format!("--tuple `{x}`: {e}")))).collect()
}

enum Failure {
    Usage(String),
    Identity,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if cli.schema {
        return emit(cli, serial::SCHEMA.to_string() + "\n");
    }
    let Some(command) = &cli.command else {
        return Err(Failure::Usage("a subcommand is required (dims, check, product, experiment, serialize)".into()));
    };
    let started = Instant::now();
    match command {
        Command::Dims => {
            let cfg = config(cli)?;
            let (table, records) = suites::dims(&cfg)?;
            let mut report = Report::new("dims", cfg.to_json());
            report.tables.insert("dims".into(), table);
            report.extend(records);
            finish_report(cli, report, started)
        }
        Command::Check => {
            let cfg = config(cli)?;
            let suite: Suite = cli.suite.parse()?;
            let mut report = Report::new("check", json!({"suite": suite.as_str(), "params": cfg.to_json()}));
            report.extend(suites::run_suite(&cfg, suite)?);
            finish_report(cli, report, started)
        }
        Command::Experiment { question } => {
            let cfg = config(cli)?;
            let question: Question = question.parse()?;
            let (records, summary) = suites::experiment(&cfg, question)?;
            let mut report = Report::new("experiment", json!({"question": question.as_str(), "params": cfg.to_json()}));
            report.tables.insert("defects".into(), summary);
            report.extend(records);
            finish_report(cli, report, started)
        }
        Command::Product { kind, left, right } => product(cli, *kind, left, right),
        Command::Serialize { kind, degree, tuple, value_degree, input } => match input {
            Some(path) => normalize(cli, path),
            None => generate(
                cli,
                kind.expect("required by clap"),
                degree.expect("required by clap"),
                tuple.as_deref(),
                *value_degree,
            ),
        },
    }
}

fn config(cli: &Cli) -> CliResult<SuiteConfig> {
    let (Some(n), Some(big_n)) = (cli.n, cli.big_n) else {
        return Err(Failure::Usage("--n and --N are required".into()));
    };
    nkoszul_core::nsym_algebra::check_params(n, big_n)?;
    Ok(SuiteConfig { n, big_n, max_degree: cli.max_degree, seed: cli.seed, samples: cli.samples })
}

fn finish_report(cli: &Cli, mut report: Report, started: Instant) -> CliResult<()> {
    report.canonicalize();
    if cli.timing {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    let text = match cli.format {
        Format::Json => serial::to_text(&report.to_json()),
        Format::Plain => report.to_plain(),
        Format::Csv if report.command == "experiment" => defect_csv(&report)?,
        Format::Csv => {
            let (header, rows) = report.csv_rows();
            csv_text(&header, &rows)?
        }
    };
    emit(cli, text)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

/// Experiment rows flattened to one line per defect.
fn defect_csv(report: &Report) -> CliResult<String> {
    let header: Vec<String> =
        ["suite", "N", "n", "p", "q", "r", "operands", "status", "zero", "terms", "defect"].map(String::from).to_vec();
    let text = |v: Option<&Value>| match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    let rows = report
        .records
        .iter()
        .map(|r| {
            vec![
                r.suite.clone(),
                text(r.params.get("N")),
                text(r.params.get("n")),
                text(r.params.get("p")),
                text(r.params.get("q")),
                text(r.params.get("r")),
                text(r.params.get("operands")),
                r.status.as_str().to_string(),
                text(r.payload.get("zero")),
                text(r.payload.get("terms")),
                text(r.payload.get("defect")),
            ]
        })
        .collect::<Vec<_>>();
    csv_text(&header, &rows)
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| Failure::Usage(format!("csv output: {e}"));
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Usage(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields is utf-8"))
}

fn emit(cli: &Cli, text: String) -> CliResult<()> {
    match &cli.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn read_json(path: &PathBuf) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serial::parse_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Context from `--n/--N` when given, otherwise from the first file.
fn operand_context(cli: &Cli, first: &Value) -> CliResult<Arc<NSymAlgebra>> {
    let (n, big_n) = match (cli.n, cli.big_n) {
        (Some(n), Some(big_n)) => (n, big_n),
        (None, None) => serial::declared_context(first)?,
        _ => return Err(Failure::Usage("give both --n and --N, or neither".into())),
    };
    Ok(NSymAlgebra::new(n, big_n)?)
}

fn load(ctx: &Arc<NSymAlgebra>, path: &Path, v: &Value) -> CliResult<Operand> {
    serial::operand_from_json(ctx, v).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn product(cli: &Cli, kind: ProductKind, left: &PathBuf, right: &PathBuf) -> CliResult<()> {
    let (lv, rv) = (read_json(left)?, read_json(right)?);
    let ctx = operand_context(cli, &lv)?;
    let (l, r) = (load(&ctx, left, &lv)?, load(&ctx, right, &rv)?);
    let result = match (kind, l, r) {
        (ProductKind::Cup, Operand::Cochain(f), Operand::Cochain(g)) => Operand::Cochain(cup(&f, &g)?),
        (ProductKind::Capl, Operand::Cochain(f), Operand::Chain(z)) => Operand::Chain(cap_left(&f, &z)?),
        (ProductKind::Capr, Operand::Chain(z), Operand::Cochain(f)) => Operand::Chain(cap_right(&z, &f)?),
        (kind, _, _) => {
            let expected = match kind {
                ProductKind::Cup => "two cochains",
                ProductKind::Capl => "a cochain then a chain",
                ProductKind::Capr => "a chain then a cochain",
            };
            return Err(Failure::Usage(format!("{kind:?} expects {expected}").to_lowercase()));
        }
    };
    emit_operand(cli, &result)
}

fn emit_operand(cli: &Cli, x: &Operand) -> CliResult<()> {
    let text = match cli.format {
        Format::Json => serial::to_text(&serial::operand_to_json(x)),
        Format::Plain => match x {
            Operand::Cochain(f) => format!("cochain p={}: {f}\n", f.degree()),
            Operand::Chain(z) => format!("chain q={}: {z}\n", z.degree()),
        },
        Format::Csv => {
            let entries: Vec<(&IncreasingTuple, &AlgebraElement)> = match x {
                Operand::Cochain(f) => f.entries().collect(),
                Operand::Chain(z) => z.terms().collect(),
            };
            let header = ["tuple", "degree", "word", "coeff"].map(String::from).to_vec();
            let mut rows = Vec::new();
            for (t, a) in entries {
                for (w, c) in a.terms() {
                    rows.push(vec![
                        join(&t.to_one_based()),
                        w.len().to_string(),
                        join(&w.to_one_based()),
                        nkoszul_core::ratlin::format_scalar(&c),
                    ]);
                }
            }
            csv_text(&header, &rows)?
        }
    };
    emit(cli, text)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn normalize(cli: &Cli, path: &PathBuf) -> CliResult<()> {
    let v = read_json(path)?;
    let ctx = operand_context(cli, &v)?;
    let x = load(&ctx, path, &v)?;
    emit_operand(cli, &x)
}

fn generate(cli: &Cli, kind: OperandKind, degree: usize, tuple: Option<&str>, value_degree: usize) -> CliResult<()> {
    let cfg = config(cli)?;
    let ctx = cfg.context()?;
    let tuple = match tuple {
        Some(text) => Some(IncreasingTuple::from_one_based(&parse_tuple(text)?, ctx.n())?),
        None => None,
    };
    let x = match (kind, tuple) {
        (OperandKind::Cochain, Some(t)) => Operand::Cochain(Cochain::dual_basis(&ctx, degree, t)?),
        (OperandKind::Cochain, None) => Operand::Cochain(Cochain::random(&ctx, degree, value_degree, cli.seed)?),
        (OperandKind::Chain, Some(t)) => Operand::Chain(Chain::basis(&ctx, degree, AlgebraElement::one(&ctx), t)?),
        (OperandKind::Chain, None) => Operand::Chain(Chain::random(&ctx, degree, value_degree, cli.seed)?),
    };
    emit_operand(cli, &x)
}
