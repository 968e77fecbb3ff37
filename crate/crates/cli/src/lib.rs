//! Command-line frontend: every subcommand writes one CSV or JSON table to
//! stdout (or `--out`), diagnostics go to stderr.
//!
//! Exit codes: 0 on success, 2 on usage errors (including out-of-range
//! arguments), 1 when a size limit is hit or the output cannot be written.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ruler_break_core::bounds::{
    constants, expectation_upper_bound, expectation_upper_bound_sharp, poisson_bound_form,
    reed_asymptote,
};
use ruler_break_core::exact::{tau_pgf, HeightTable};
use ruler_break_core::simulator::{self, SimConfig};
use ruler_break_core::trees::{
    enumerate_full_trees_capped, json::full_tree_to_json, scenario_probability,
    DEFAULT_ENUMERATION_LIMIT,
};
use ruler_break_core::{Mode, Rational, Scalar};

/// Environment variable overriding the enumeration size cap.
pub const NMAX_VAR: &str = "RULER_BREAK_NMAX";

#[derive(Debug, Parser)]
#[command(
    name = "ruler-break",
    version,
    about = "Random ruler breaking: exact laws, bounds and simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every breaking scenario of an n-inch ruler with its probability.
    Enumerate {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Exact law of the number of throws (pmf rows, then the mean).
    Exact {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Law of the throw on which stick j is isolated.
    Tau {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_parser = positive)]
        j: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Upper bounds and reference curves next to the exact expectation.
    Bounds {
        #[command(flatten)]
        lengths: Lengths,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo run: height histogram and optional isolation times.
    Simulate {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// Stick whose isolation time is tracked; may be repeated.
        #[arg(long, value_parser = positive)]
        j: Vec<usize>,
        #[arg(long, default_value_t = 10_000, value_parser = positive_u64)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Exact, simulated and bounded expectations side by side.
    Report {
        #[command(flatten)]
        lengths: Lengths,
        #[arg(long, default_value_t = 10_000, value_parser = positive_u64)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Defaults to json for enumerate and simulate, csv otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Lengths {
    #[arg(long, value_parser = positive, conflicts_with = "n_list")]
    pub n: Option<usize>,
    /// Comma-separated ruler lengths.
    #[arg(long, value_delimiter = ',', value_parser = positive)]
    pub n_list: Vec<usize>,
}

impl Lengths {
    fn resolve(&self) -> Result<Vec<usize>, CliError> {
        let ns = match self.n {
            Some(n) => vec![n],
            None => self.n_list.clone(),
        };
        if ns.is_empty() {
            return Err(CliError::Usage("one of --n or --n-list is required".into()));
        }
        if let Some(n) = ns.iter().find(|&&n| n < 2) {
            return Err(CliError::Usage(format!(
                "--n {n}: ruler length must be at least 2"
            )));
        }
        Ok(ns)
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_u64(s: &str) -> Result<u64, String> {
    positive(s).map(|v| v as u64)
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ruler_break_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(ruler_break_core::Error::InvalidInput(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

/// Parses `args` (program name first) and runs the command. `nmax` is the
/// value of [`NMAX_VAR`], if set.
pub fn run_cli<I, T>(
    args: I,
    nmax: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, nmax, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs one command, writing to `--out` when given and to `stdout`
/// otherwise.
pub fn execute(
    command: &Command,
    nmax: Option<&str>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let output = match command {
        Command::Enumerate { output, .. }
        | Command::Exact { output, .. }
        | Command::Tau { output, .. }
        | Command::Bounds { output, .. }
        | Command::Simulate { output, .. }
        | Command::Report { output, .. } => output,
    };
    // validate and compute before touching the output file
    let text = render(command, nmax)?;
    match &output.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()?;
        }
        None => {
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn render(command: &Command, nmax: Option<&str>) -> Result<String, CliError> {
    match command {
        Command::Enumerate { n, output } => enumerate(
            *n,
            enumeration_limit(nmax)?,
            output.format.unwrap_or(Format::Json),
        ),
        Command::Exact { n, mode, output } => {
            let format = output.format.unwrap_or(Format::Csv);
            match Mode::from(*mode) {
                Mode::Exact => exact::<Rational>(*n, Mode::Exact, format),
                Mode::Float => exact::<f64>(*n, Mode::Float, format),
            }
        }
        Command::Tau { n, j, mode, output } => {
            if j > n {
                return Err(CliError::Usage(format!("--j {j} is outside 1..={n}")));
            }
            let format = output.format.unwrap_or(Format::Csv);
            match Mode::from(*mode) {
                Mode::Exact => tau::<Rational>(*j, *n, Mode::Exact, format),
                Mode::Float => tau::<f64>(*j, *n, Mode::Float, format),
            }
        }
        Command::Bounds { lengths, output } => {
            bounds(&lengths.resolve()?, output.format.unwrap_or(Format::Csv))
        }
        Command::Simulate {
            n,
            j,
            trials,
            seed,
            output,
        } => {
            if let Some(bad) = j.iter().find(|&&j| j > *n) {
                return Err(CliError::Usage(format!("--j {bad} is outside 1..={n}")));
            }
            let config = SimConfig::new(*n, *trials, *seed).tracking(j.iter().copied());
            let result = simulator::run(&config)?;
            Ok(match output.format.unwrap_or(Format::Json) {
                Format::Json => result.to_json() + "\n",
                Format::Csv => result.to_csv(),
            })
        }
        Command::Report {
            lengths,
            trials,
            seed,
            output,
        } => report(
            &lengths.resolve()?,
            *trials,
            *seed,
            output.format.unwrap_or(Format::Csv),
        ),
    }
}

fn enumeration_limit(nmax: Option<&str>) -> Result<usize, CliError> {
    match nmax {
        None => Ok(DEFAULT_ENUMERATION_LIMIT),
        Some(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("{NMAX_VAR}={s:?} is not a non-negative integer"))
        }),
    }
}

fn enumerate(n: usize, limit: usize, format: Format) -> Result<String, CliError> {
    let trees = enumerate_full_trees_capped(n, limit)?;
    let rows = trees.iter().enumerate().map(|(i, t)| {
        let p = scenario_probability(t);
        (i, t, p.to_string(), t.height(), t.split_points())
    });
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("index,height,probability,splits\n");
            for (i, _, p, h, splits) in rows {
                let splits: Vec<String> = splits.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{i},{h},{p},{}", splits.join(";"));
            }
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .map(|(i, t, p, h, splits)| {
                    json!({
                        "index": i,
                        "height": h,
                        "probability": p,
                        "splits": splits,
                        "tree": full_tree_to_json(t),
                    })
                })
                .collect();
            out = json_lines(&records);
        }
    }
    Ok(out)
}

/// A JSON array with one element per line.
fn json_lines(records: &[Value]) -> String {
    if records.is_empty() {
        return "[]\n".into();
    }
    let body: Vec<String> = records.iter().map(Value::to_string).collect();
    format!("[\n{}\n]\n", body.join(",\n"))
}

/// Exact values as "p/q" strings, floats as JSON numbers.
fn json_value<S: Scalar>(x: &S) -> Value {
    if S::EXACT {
        Value::String(x.render())
    } else {
        json!(x.to_f64())
    }
}

fn exact<S: Scalar>(n: usize, mode: Mode, format: Format) -> Result<String, CliError> {
    let table = HeightTable::<S>::new(n)?;
    let cdf = table.cdf(n)?;
    let mean = table.expected_height(n)?;
    let pmf: Vec<(usize, S)> = cdf
        .pmf_values()
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("h,P\n");
            for (h, p) in &pmf {
                let _ = writeln!(out, "{h},{}", p.render());
            }
            let _ = writeln!(out, "mean,{}", mean.render());
            out
        }
        Format::Json => {
            let doc = json!({
                "n": n,
                "mode": mode.to_string(),
                "pmf": pmf.iter().map(|(h, p)| json!({"h": h, "P": json_value(p)})).collect::<Vec<_>>(),
                "cdf": cdf.values().iter().map(json_value).collect::<Vec<_>>(),
                "mean": json_value(&mean),
            });
            doc.to_string() + "\n"
        }
    })
}

fn tau<S: Scalar>(j: usize, n: usize, mode: Mode, format: Format) -> Result<String, CliError> {
    let pgf = tau_pgf::<S>(j, n)?;
    let pmf: Vec<(usize, &S)> = pgf
        .pmf()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let (mean, variance) = (pgf.mean(), pgf.variance());
    Ok(match format {
        Format::Csv => {
            let mut out = String::from("k,P\n");
            for (k, p) in &pmf {
                let _ = writeln!(out, "{k},{}", p.render());
            }
            let _ = writeln!(out, "mean,{}", mean.render());
            let _ = writeln!(out, "variance,{}", variance.render());
            out
        }
        Format::Json => {
            let doc = json!({
                "j": j,
                "n": n,
                "mode": mode.to_string(),
                "pmf": pmf.iter().map(|(k, p)| json!({"k": k, "P": json_value(*p)})).collect::<Vec<_>>(),
                "mean": json_value(&mean),
                "variance": json_value(&variance),
            });
            doc.to_string() + "\n"
        }
    })
}

/// Float table covering every length in `ns` that the DP accepts.
fn expectation_table(ns: &[usize]) -> Result<Option<HeightTable<f64>>, CliError> {
    let top = ns
        .iter()
        .copied()
        .filter(|&n| n <= f64::HEIGHT_DP_LIMIT)
        .max();
    Ok(match top {
        Some(top) => Some(HeightTable::<f64>::new(top)?),
        None => None,
    })
}

fn expectation(table: &Option<HeightTable<f64>>, n: usize) -> Option<f64> {
    table
        .as_ref()
        .filter(|t| n <= t.n_max())
        .map(|t| t.expected_height(n).expect("n within table"))
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| v.render()).unwrap_or_default()
}

fn number(x: Option<f64>) -> Value {
    x.map_or(Value::Null, |v| json!(v))
}

/// Rows keyed by ruler length; `header[0]` names the length column.
fn table_output(header: &[&str], rows: &[(usize, Vec<Option<f64>>)], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = header.join(",") + "\n";
            for (n, row) in rows {
                let cells: Vec<String> = row.iter().map(|&x| cell(x)).collect();
                let _ = writeln!(out, "{n},{}", cells.join(","));
            }
            out
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|(n, row)| {
                    let mut map = serde_json::Map::new();
                    map.insert(header[0].to_string(), json!(n));
                    for (k, &v) in header[1..].iter().zip(row) {
                        map.insert(k.to_string(), number(v));
                    }
                    Value::Object(map)
                })
                .collect();
            json_lines(&records)
        }
    }
}

fn bounds(ns: &[usize], format: Format) -> Result<String, CliError> {
    let table = expectation_table(ns)?;
    let c = constants();
    let rows: Vec<(usize, Vec<Option<f64>>)> = ns
        .iter()
        .map(|&n| {
            let row = vec![
                expectation(&table, n),
                Some(expectation_upper_bound(n)),
                Some(expectation_upper_bound_sharp(n)),
                reed_asymptote(n).ok(),
                poisson_bound_form(n).ok(),
                Some(c.alpha),
                Some(c.beta),
            ];
            (n, row)
        })
        .collect();
    let header = [
        "n", "a_n", "simple", "sharp", "reed", "poisson", "alpha", "beta",
    ];
    Ok(table_output(&header, &rows, format))
}

fn report(ns: &[usize], trials: u64, seed: u64, format: Format) -> Result<String, CliError> {
    let table = expectation_table(ns)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let sim = simulator::run(&SimConfig::new(n, trials, seed))?.height_summary;
        rows.push((
            n,
            vec![
                expectation(&table, n),
                Some(sim.mean),
                Some(sim.std_error),
                Some(expectation_upper_bound(n)),
                Some(expectation_upper_bound_sharp(n)),
                reed_asymptote(n).ok(),
            ],
        ));
    }
    let header = [
        "n",
        "exact",
        "sim_mean",
        "sim_stderr",
        "simple",
        "sharp",
        "reed",
    ];
    Ok(table_output(&header, &rows, format))
}
