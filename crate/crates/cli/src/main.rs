//! `vassbound` command-line front end.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 input not
//! connected, 3 internal error, 4 witness requested for an exponential
//! system, 5 oracle budget exceeded, 6 witness check failed, 64 usage.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vassbound::analyzer::{analyze, Analysis, AnalyzeError, AnalyzeOptions, Status};
use vassbound::oracle::{self, Metric, OracleError, CSV_HEADER, DEFAULT_BUDGET};
use vassbound::witness::{build_witness, exponential_certificate, verify_witness, WitnessError};
use vassbound::{parse_vass, report, Vass};

const BUDGET_ENV: &str = "VASSBOUND_ORACLE_BUDGET";

#[derive(Parser)]
#[command(name = "vassbound", version, about = "Asymptotic bounds for vector addition systems with states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Toggle {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Compute variable and transition bounds.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Skip iterations that cannot change any bound.
        #[arg(long, value_enum, default_value = "on")]
        skip_opt: Toggle,
        /// Write the layer tree in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Build a lower-bound trace for one N.
    Witness {
        input: PathBuf,
        #[arg(long)]
        n: u64,
        /// Verify the trace and fail if any check fails.
        #[arg(long)]
        check: bool,
        /// Write the dump here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively compute a metric for small N.
    Oracle {
        input: PathBuf,
        #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
        n: Option<u64>,
        /// Inclusive range `a..b`.
        #[arg(long)]
        sweep: Option<String>,
        /// `longest`, `var:<name>` or `t:<id>`.
        #[arg(long, default_value = "longest")]
        metric: String,
        /// Maximum number of configurations; overrides the environment.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Parse and check connectivity.
    Validate {
        input: PathBuf,
        /// Print the canonical form.
        #[arg(long)]
        canonical: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(3, format!("i/o error: {e}"))
    }
}

impl From<AnalyzeError> for Failure {
    fn from(e: AnalyzeError) -> Self {
        let code = match e {
            AnalyzeError::NotConnected { .. } => 2,
            _ => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::BudgetExceeded(_) => 5,
            OracleError::UnknownMetric(_) => 64,
            OracleError::Overflow => 3,
        };
        Failure::new(code, e.to_string())
    }
}

fn load(path: &Path) -> Result<Vass, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))?;
    parse_vass(&text).map_err(|e| Failure::new(1, format!("{}: {e}", path.display())))
}

fn load_analyzed(path: &Path, options: AnalyzeOptions) -> Result<(Vass, Analysis), Failure> {
    let v = load(path)?;
    let a = analyze(&v, options)?;
    Ok((v, a))
}

fn cmd_analyze(input: &Path, json: bool, skip_opt: Toggle, dot: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    let options = AnalyzeOptions {
        skip_optimization: skip_opt == Toggle::On,
    };
    let (v, a) = load_analyzed(input, options)?;
    if let Some(path) = dot {
        fs::write(path, a.tree.to_dot(&v))?;
    }
    if json {
        writeln!(out, "{}", report::to_json_string(&v, &a.report))?;
        return Ok(());
    }
    write!(out, "{}", report::to_text(&v, &a.report))?;
    if a.report.status == Status::Exponential {
        let cert = exponential_certificate(&v, &a).map_err(|e| Failure::new(3, e.to_string()))?;
        cert.write_dump(&v, out)?;
    }
    Ok(())
}

fn cmd_witness(input: &Path, n: u64, check: bool, dump: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::new(64, "--n must be at least 1"));
    }
    let (v, a) = load_analyzed(input, AnalyzeOptions::default())?;
    let w = build_witness(&v, &a, n).map_err(|e| match e {
        WitnessError::NotPolynomial => Failure::new(4, "the system is exponential; no polynomial witness exists"),
        e => Failure::new(3, e.to_string()),
    })?;
    match dump {
        Some(path) => {
            let mut file = BufWriter::new(fs::File::create(path)?);
            w.write_dump(&mut file)?;
            file.flush()?;
        }
        None => w.write_dump(out)?,
    }
    if check {
        let r = verify_witness(&v, &w, &a.report.vexp, &a.report.texp);
        eprint!("{r}");
        if !r.passed() {
            return Err(Failure::new(6, "witness check failed"));
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::new(64, format!("invalid range `{s}`, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn budget(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .parse()
            .map_err(|_| Failure::new(64, format!("{BUDGET_ENV} must be a positive integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn cmd_oracle(
    input: &Path,
    n: Option<u64>,
    sweep: Option<&str>,
    metric: &str,
    budget_flag: Option<usize>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let v = load(input)?;
    let metric = Metric::parse(&v, metric)?;
    let budget = budget(budget_flag)?;
    let (a, b) = match (n, sweep) {
        (Some(n), _) => (n, n),
        (None, Some(s)) => parse_range(s)?,
        (None, None) => return Err(Failure::new(64, "either --n or --sweep is required")),
    };
    let rows = oracle::sweep(&v, a..=b, metric, budget)?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

fn cmd_validate(input: &Path, canonical: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let v = load(input)?;
    if let Some((s, t)) = v.unreachable_pair() {
        return Err(AnalyzeError::NotConnected {
            from: v.state_name(s).to_string(),
            to: v.state_name(t).to_string(),
        }
        .into());
    }
    if canonical {
        write!(out, "{}", v.to_canonical_string())?;
    } else {
        writeln!(
            out,
            "ok: {} states, {} transitions, {} variables",
            v.states().len(),
            v.transitions().len(),
            v.dim()
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Analyze {
            input,
            json,
            skip_opt,
            dot,
        } => cmd_analyze(&input, json, skip_opt, dot.as_deref(), &mut out)?,
        Command::Witness { input, n, check, out: dump } => cmd_witness(&input, n, check, dump.as_deref(), &mut out)?,
        Command::Oracle {
            input,
            n,
            sweep,
            metric,
            budget,
        } => cmd_oracle(&input, n, sweep.as_deref(), &metric, budget, &mut out)?,
        Command::Validate { input, canonical } => cmd_validate(&input, canonical, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
