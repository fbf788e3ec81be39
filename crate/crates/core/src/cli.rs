//! Command-line front end and the text formats it reads and writes.
//!
//! Exit codes: 0 ok, 1 I/O failure, 2 parse error, 3 invalid input
//! semantics, 4 unsupported scale, 5 recovery mismatch, 6 query-bound
//! violation.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::ops::ControlFlow;
use std::path::Path;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::boolcube::{build_matrix, Dimension, MonotoneTable, TruthTable, VecIndex};
use crate::error::MbfError;
use crate::generator::{dedekind_count, gen_all, GenConfig, COUNT_MAX_N};
use crate::identify::{identify, verify_sweep, IdentResult, SweepReport};
use crate::oracle::{MinTOracle, TableOracle};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_SCALE: i32 = 4;
pub const EXIT_MISMATCH: i32 = 5;
pub const EXIT_BOUND: i32 = 6;

/// Largest `n` for `identify --minT`.
pub const MIN_T_MAX_N: u32 = 32;

/// Largest `n` for `matrix`.
pub const PRINT_MATRIX_MAX_N: u32 = 6;

#[derive(Parser, Debug)]
#[command(
    name = "mbf",
    version,
    about = "Monotone Boolean functions: generation, counting and identification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print all monotone functions of N variables in lexicographic order.
    Generate {
        #[arg(long)]
        n: u32,
        /// Resume after this function (bit string or x-prefixed hex).
        #[arg(long)]
        from: Option<String>,
        /// Stop after this many lines.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Bits)]
        format: Format,
        /// Allow N above 6.
        #[arg(long)]
        force: bool,
    },
    /// Count the monotone functions of N variables.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Identify one function by membership queries.
    Identify {
        #[arg(long)]
        n: u32,
        /// Truth table (bit string or x-prefixed hex).
        #[arg(long, conflicts_with = "min_t", required_unless_present = "min_t")]
        fun: Option<String>,
        /// Comma-separated minimal true vector indices.
        #[arg(long = "minT", allow_hyphen_values = true)]
        min_t: Option<String>,
    },
    /// Identify every function of N variables and report query statistics.
    Verify {
        #[arg(long)]
        n: u32,
        /// Directory for the histogram CSV files.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Print the precedence matrix P_N.
    Matrix {
        #[arg(long)]
        n: u32,
        /// Print the transpose (Pascal's triangle mod 2).
        #[arg(long)]
        transpose: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Bits,
    Hex,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<MbfError> for CliError {
    fn from(e: MbfError) -> Self {
        let code = match &e {
            MbfError::Parse(_) => EXIT_PARSE,
            MbfError::NotMonotone { .. }
            | MbfError::NotAntichain { .. }
            | MbfError::IndexOutOfRange { .. }
            | MbfError::DimensionMismatch { .. }
            | MbfError::InvalidRelation(_) => EXIT_INVALID,
            MbfError::DimensionTooLarge { .. }
            | MbfError::TableTooLarge { .. }
            | MbfError::MatrixTooLarge { .. }
            | MbfError::UnsupportedScale(_) => EXIT_SCALE,
            MbfError::RecoveryMismatch { .. } | MbfError::InconsistentOracle(_) => EXIT_MISMATCH,
            MbfError::Io(_) => EXIT_IO,
        };
        Self::new(code, e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        MbfError::Io(e).into()
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    match execute(cli.command, out).and_then(|()| out.flush().map_err(CliError::from)) {
        Ok(()) => EXIT_OK,
        Err(e) if e.code == EXIT_IO && e.message.contains("Broken pipe") => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Generate {
            n,
            from,
            limit,
            format,
            force,
        } => cmd_generate(n, from, limit, format, force, out),
        Command::Count { n, threads } => cmd_count(n, threads, out),
        Command::Identify { n, fun, min_t } => cmd_identify(n, fun, min_t, out),
        Command::Verify {
            n,
            out: dir,
            threads,
        } => cmd_verify(n, dir.as_deref(), threads, out),
        Command::Matrix { n, transpose } => cmd_matrix(n, transpose, out),
    }
}

fn dimension(n: u32) -> Result<Dimension, CliError> {
    Ok(Dimension::new(n)?)
}

/// Parses a function for `n` variables; wrong lengths are parse errors.
pub fn parse_function(text: &str, dim: Dimension) -> Result<TruthTable, MbfError> {
    let t: TruthTable = text.parse()?;
    if t.dimension() != dim {
        return Err(MbfError::Parse(format!(
            "function {text:?} has {} positions, expected {} for n = {dim}",
            t.len(),
            dim.size()
        )));
    }
    Ok(t)
}

/// Parses `i1,i2,…` (possibly empty, spaces allowed).
pub fn parse_index_list(text: &str) -> Result<Vec<VecIndex>, MbfError> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<VecIndex>()
                .map_err(|e| MbfError::Parse(format!("bad index {s:?}: {e}")))
        })
        .collect()
}

fn format_table(t: &TruthTable, format: Format) -> String {
    match format {
        Format::Bits => t.to_bit_string(),
        Format::Hex => t.to_hex_string().expect("hex format checked for n >= 2"),
    }
}

fn cmd_generate(
    n: u32,
    from: Option<String>,
    limit: Option<u64>,
    format: Format,
    force: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let dim = dimension(n)?;
    if n > COUNT_MAX_N && !force {
        return Err(CliError::new(
            EXIT_SCALE,
            format!("n = {n} produces too many functions; pass --force to run anyway"),
        ));
    }
    if format == Format::Hex && n < 2 {
        return Err(CliError::new(EXIT_PARSE, "hex output needs n >= 2"));
    }
    let resume_from = match from {
        Some(text) => Some(MonotoneTable::new(parse_function(&text, dim)?)?),
        None => None,
    };
    let cfg = GenConfig {
        resume_from,
        ..Default::default()
    };
    let mut remaining = limit.unwrap_or(u64::MAX);
    if remaining == 0 {
        return Ok(());
    }
    let mut w = io::BufWriter::new(out);
    gen_all(dim, &cfg, |t| {
        writeln!(w, "{}", format_table(t, format))?;
        remaining -= 1;
        Ok(if remaining == 0 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        })
    })?;
    w.flush()?;
    Ok(())
}

fn cmd_count(n: u32, threads: usize, out: &mut dyn Write) -> Result<(), CliError> {
    let count = dedekind_count(dimension(n)?, threads)?;
    writeln!(out, "M_{n} = {count}")?;
    Ok(())
}

/// One identification outcome as a single text line:
/// `n=3 minT=[2,5] maxF=[1,4] q=5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentRecord {
    pub n: u32,
    pub min_t: Vec<VecIndex>,
    pub max_f: Vec<VecIndex>,
    pub q: u64,
}

impl IdentRecord {
    pub fn new(n: u32, r: &IdentResult) -> Self {
        let mut rec = Self {
            n,
            min_t: r.min_t.clone(),
            max_f: r.max_f.clone(),
            q: r.queries,
        };
        rec.min_t.sort_unstable();
        rec.max_f.sort_unstable();
        rec
    }
}

fn join(v: &[VecIndex]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for IdentRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} minT=[{}] maxF=[{}] q={}",
            self.n,
            join(&self.min_t),
            join(&self.max_f),
            self.q
        )
    }
}

impl FromStr for IdentRecord {
    type Err = MbfError;

    fn from_str(s: &str) -> Result<Self, MbfError> {
        let mut fields = s.split_whitespace();
        let mut next = |key: &str| {
            fields
                .next()
                .and_then(|f| f.strip_prefix(key))
                .ok_or_else(|| MbfError::Parse(format!("expected field {key:?} in {s:?}")))
        };
        let n = next("n=")?
            .parse()
            .map_err(|e| MbfError::Parse(format!("bad n: {e}")))?;
        let min_t = parse_index_list(next("minT=")?)?;
        let max_f = parse_index_list(next("maxF=")?)?;
        let q = next("q=")?
            .parse()
            .map_err(|e| MbfError::Parse(format!("bad q: {e}")))?;
        Ok(Self { n, min_t, max_f, q })
    }
}

fn cmd_identify(
    n: u32,
    fun: Option<String>,
    min_t: Option<String>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let dim = dimension(n)?;
    let result = match (fun, min_t) {
        (Some(text), _) => {
            let table = MonotoneTable::new(parse_function(&text, dim)?)?;
            identify(&mut TableOracle::new(table))?
        }
        (None, Some(list)) => {
            if n > MIN_T_MAX_N {
                return Err(CliError::new(
                    EXIT_SCALE,
                    format!("--minT supports n <= {MIN_T_MAX_N}"),
                ));
            }
            identify(&mut MinTOracle::from_min_t(dim, parse_index_list(&list)?)?)?
        }
        (None, None) => {
            return Err(CliError::new(
                EXIT_PARSE,
                "one of --fun or --minT is required",
            ))
        }
    };
    writeln!(out, "{}", IdentRecord::new(n, &result))?;
    Ok(())
}

/// `num / den` to two decimals, rounding half to even.
pub fn format_two_decimals(num: u64, den: u64) -> String {
    if den == 0 {
        return "0.00".to_owned();
    }
    let scaled = num as u128 * 100;
    let (den, mut q) = (den as u128, scaled / den as u128);
    let r = scaled % den;
    if 2 * r > den || (2 * r == den && q % 2 == 1) {
        q += 1;
    }
    format!("{}.{:02}", q / 100, q % 100)
}

pub const SUMMARY_HEADER: &str = "n,total,q_max,q_ave,peak_tpi_max,peak_tpc_max";
pub const Q_HISTOGRAM_HEADER: &str = "q,count";
pub const RATIO_HISTOGRAM_HEADER: &str = "ratio_percent_bin,count_excluding_zero_function";

pub fn summary_row(r: &SweepReport) -> String {
    format!(
        "{},{},{},{},{},{}",
        r.n,
        r.total,
        r.q_max,
        format_two_decimals(r.q_sum, r.total),
        r.peak_tpi_max,
        r.peak_tpc_max
    )
}

pub fn q_histogram_csv(r: &SweepReport) -> String {
    let mut s = format!("{Q_HISTOGRAM_HEADER}\n");
    for (q, c) in &r.q_histogram {
        s += &format!("{q},{c}\n");
    }
    s
}

pub fn ratio_histogram_csv(r: &SweepReport) -> String {
    let mut s = format!("{RATIO_HISTOGRAM_HEADER}\n");
    for (b, c) in &r.ratio_histogram {
        s += &format!("{b},{c}\n");
    }
    s
}

fn write_atomically(path: &Path, contents: &str) -> io::Result<()> {
    let tmp = path.with_extension("csv.tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

fn cmd_verify(
    n: u32,
    dir: Option<&Path>,
    threads: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let report = match verify_sweep(dimension(n)?, threads) {
        Ok(r) => r,
        Err(MbfError::RecoveryMismatch { function }) => {
            writeln!(out, "mismatch: {function}")?;
            return Err(CliError::new(
                EXIT_MISMATCH,
                format!("identification of {function} recovered the wrong function"),
            ));
        }
        Err(e) => return Err(e.into()),
    };
    writeln!(out, "{SUMMARY_HEADER}")?;
    writeln!(out, "{}", summary_row(&report))?;
    if let Some((q_max, q_ave)) = report.reference() {
        let rel = (report.q_ave() - q_ave) / q_ave * 100.0;
        writeln!(
            out,
            "reference q_max={q_max} q_ave={q_ave:.2} deviation q_max={:+} q_ave={rel:+.2}%",
            report.q_max as i64 - q_max as i64
        )?;
    }
    writeln!(
        out,
        "initial_complete={} peak_excess_functions={} peak_excess_max={} bound_violations={}",
        report.initial_complete,
        report.peak_excess_functions,
        report.peak_excess_max,
        report.bound_violations
    )?;
    if report.bound_violations > 0 {
        for f in &report.violation_examples {
            writeln!(out, "violation: {f}")?;
        }
        return Err(CliError::new(
            EXIT_BOUND,
            format!(
                "{} functions exceeded the n*m query bound",
                report.bound_violations
            ),
        ));
    }
    if let Some(dir) = dir {
        fs::create_dir_all(dir)?;
        write_atomically(
            &dir.join(format!("q_histogram_n{n}.csv")),
            &q_histogram_csv(&report),
        )?;
        write_atomically(
            &dir.join(format!("ratio_histogram_n{n}.csv")),
            &ratio_histogram_csv(&report),
        )?;
    }
    Ok(())
}

fn cmd_matrix(n: u32, transpose: bool, out: &mut dyn Write) -> Result<(), CliError> {
    if n > PRINT_MATRIX_MAX_N {
        return Err(CliError::new(
            EXIT_SCALE,
            format!("matrix printing supports n <= {PRINT_MATRIX_MAX_N}"),
        ));
    }
    let p = build_matrix(dimension(n)?)?;
    let p = if transpose { p.transpose() } else { p };
    write!(out, "{p}")?;
    Ok(())
}
