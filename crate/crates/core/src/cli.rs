//! The `snzeros` command line.
//!
//! Results go to stdout, diagnostics to stderr. Exit status is 0 on success,
//! 1 on usage errors and 2 when a size cap is exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::census::{self, DEFAULT_SCAN_CAP, DEFAULT_TYPE1_CAP};
use crate::code::BoundaryCode;
use crate::error::{Error, Result};
use crate::mn::{character, classify};
use crate::montecarlo::{self, EstimateRequest, SweepRow, Workers, CSV_HEADER};
use crate::partition::Partition;
use crate::sampler::{
    random_partition, PartitionCountTable, SampleStream, DEFAULT_TABLE_CAP, RNG_NAME,
};

pub const ENV_SCAN_CAP: &str = "SNZEROS_SCAN_CAP";
pub const ENV_PTABLE_CAP: &str = "SNZEROS_PTABLE_CAP";
pub const ENV_TYPE1_CAP: &str = "SNZEROS_TYPE1_CAP";

const CSV_SCHEMA_HELP: &str = "\
Output: CSV with header
  n,samples,mode,count_zero,count_type1,count_type2,z_hat,z1_hat,z2_hat,master_seed,rng_name,elapsed_seconds
count_zero and z_hat are empty in types-only rows. Densities have 6 decimals.";

#[derive(Debug, Parser)]
#[command(
    name = "snzeros",
    version,
    about = "Character values and zero densities of symmetric-group character tables",
    after_help = "Size caps can be raised with SNZEROS_SCAN_CAP (default 20), \
                  SNZEROS_PTABLE_CAP (default 100000) and SNZEROS_TYPE1_CAP (default 5000)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the character value χ_λ(μ).
    Eval(PairArgs),
    /// Report whether (λ, μ) is a zero and whether it is of type I / II.
    #[command(
        after_help = "Output: one line `is_zero=<bool> type1=<bool> type2=<bool> evaluated=<bool>`.\n\
                            With --no-eval, is_zero is the type-II lower bound."
    )]
    Classify {
        #[command(flatten)]
        pair: PairArgs,
        /// Skip character evaluation; report the type-II lower bound.
        #[arg(long)]
        no_eval: bool,
    },
    /// Draw uniformly random partitions of n, one per line.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stream index of the first sample.
        #[arg(long, default_value_t = 0)]
        index: u64,
        /// Number of consecutive stream indices to draw.
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        ptable: Option<PathBuf>,
    },
    /// Monte Carlo density estimates over a range of n, streamed as CSV.
    #[command(after_help = CSV_SCHEMA_HELP)]
    Sweep {
        /// Values of n: `a:b[:step]`, a comma list, or a single value.
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 20_000)]
        samples: u64,
        /// `types-only` or `full-eval`; default is full-eval for n ≤ 300.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        threads: ThreadArgs,
        /// Load (or create) the partition-count cache at this path.
        #[arg(long)]
        ptable: Option<PathBuf>,
        /// Write a JSON sidecar with version, generator and request.
        #[arg(long)]
        metadata: Option<PathBuf>,
        /// Append a `z2_minus_z1` column (type II but not type I).
        #[arg(long)]
        with_diff: bool,
    },
    /// Exact zero counts over whole character tables, as CSV.
    #[command(
        after_help = "Output: the sweep CSV schema with samples=exact and empty seed/generator \
                            fields. --ratio appends a `z1_over_z` column (3 decimals)."
    )]
    Scan {
        /// Values of n: `a:b[:step]`, a comma list, or a single value.
        #[arg(long)]
        n: String,
        /// Append z_I / z rounded to 3 decimals.
        #[arg(long)]
        ratio: bool,
        #[command(flatten)]
        threads: ThreadArgs,
    },
    /// Exact number of type-I zeros of S_n.
    #[command(name = "count-type1")]
    #[command(
        after_help = "Output: the count as a decimal integer, or with --probe a CSV \
                            `n,count_type1,p_n,z1,non_increasing`."
    )]
    CountType1 {
        #[arg(long, required_unless_present = "probe")]
        n: Option<usize>,
        /// Check z_I(n) ≥ z_I(n+1) over `a:b` (exact).
        #[arg(long, conflicts_with = "n")]
        probe: Option<String>,
    },
    /// Number of t-core partitions of n.
    Cores {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// The partition number p(n).
    Pn {
        #[arg(long)]
        n: usize,
    },
    /// Boundary word of λ, as a 0b literal.
    Encode {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Partition traced by a boundary word.
    Decode {
        #[arg(long)]
        code: String,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Comma-separated parts, e.g. 6,5,3,2,1,1.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Cycle type, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    mu: String,
}

#[derive(Debug, Args)]
struct ThreadArgs {
    /// Worker threads (`auto` or a count). Results do not depend on it.
    #[arg(long, default_value = "auto")]
    threads: String,
}

impl ThreadArgs {
    fn workers(&self) -> Result<Workers> {
        if self.threads == "auto" {
            return Ok(Workers::Auto);
        }
        match self.threads.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Workers::Fixed(k)),
            _ => Err(Error::Parse(format!("bad thread count `{}`", self.threads))),
        }
    }
}

/// Parses `a:b`, `a:b:step`, `a,b,c` or `a`.
pub fn parse_range(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad number `{}` in `{s}`: {e}", t.trim())))
    };
    if s.contains(':') {
        let fields: Vec<&str> = s.split(':').collect();
        let (lo, hi, step) = match fields.as_slice() {
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => return Err(Error::Parse(format!("bad range `{s}`"))),
        };
        if step == 0 {
            return Err(Error::Parse(format!("zero step in `{s}`")));
        }
        Ok((lo..=hi).step_by(step).collect())
    } else if s.trim().is_empty() {
        Ok(Vec::new())
    } else {
        s.split(',').map(num).collect()
    }
}

fn env_cap(name: &str, default: usize) -> usize {
    std::env::var(name)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::ResourceLimit {
            what,
            requested,
            cap,
        });
    }
    Ok(())
}

/// Loads the cache at `path` if it covers `max_n`, otherwise builds a table
/// and (when a path is given) saves it.
fn load_table(
    max_n: usize,
    path: Option<&PathBuf>,
    err: &mut dyn Write,
) -> Result<PartitionCountTable> {
    let cap = env_cap(ENV_PTABLE_CAP, DEFAULT_TABLE_CAP);
    check_cap("partition-count table size", max_n, cap)?;
    if let Some(path) = path {
        if path.exists() {
            let table = PartitionCountTable::load(path)?;
            if table.max_n() >= max_n {
                return Ok(table);
            }
            let _ = writeln!(
                err,
                "cache at {} stops at {}; rebuilding",
                path.display(),
                table.max_n()
            );
        }
    }
    let table = PartitionCountTable::build_with_cap(max_n, cap)?;
    if let Some(path) = path {
        table.save(path)?;
    }
    Ok(table)
}

fn with_workers<T: Send>(workers: Workers, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        Workers::Auto => Ok(f()),
        Workers::Fixed(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidRequest(format!("thread pool: {e}"))),
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_resource_limit() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Eval(pair) => {
            let (lambda, mu) = pair.parse()?;
            writeln!(out, "{}", character(&lambda, &mu)?)?;
        }
        Command::Classify { pair, no_eval } => {
            let (lambda, mu) = pair.parse()?;
            let c = classify(&lambda, &mu, !no_eval)?;
            writeln!(
                out,
                "is_zero={} type1={} type2={} evaluated={}",
                c.is_zero, c.is_type_i, c.is_type_ii, c.evaluated
            )?;
        }
        Command::Sample {
            n,
            seed,
            index,
            count,
            ptable,
        } => {
            let table = load_table(n, ptable.as_ref(), err)?;
            for i in index..index + count {
                let lambda = random_partition(n, SampleStream::new(seed, i), &table)?;
                writeln!(out, "{lambda}")?;
            }
        }
        Command::Sweep {
            n,
            samples,
            mode,
            seed,
            threads,
            ptable,
            metadata,
            with_diff,
        } => {
            let request = EstimateRequest {
                n_values: parse_range(&n)?,
                samples_per_n: samples,
                master_seed: seed,
                mode: mode.as_deref().map(str::parse).transpose()?,
                workers: threads.workers()?,
            };
            request.validate()?;
            run_sweep(
                &request,
                ptable.as_ref(),
                metadata.as_ref(),
                with_diff,
                out,
                err,
            )?;
        }
        Command::Scan { n, ratio, threads } => {
            let values = parse_range(&n)?;
            let cap = env_cap(ENV_SCAN_CAP, DEFAULT_SCAN_CAP);
            if let Some(&max) = values.iter().max() {
                check_cap("full table scan size", max, cap)?;
            }
            let workers = threads.workers()?;
            write!(out, "{CSV_HEADER}")?;
            if ratio {
                write!(out, ",z1_over_z")?;
            }
            writeln!(out)?;
            for n in values {
                let start = Instant::now();
                let s = with_workers(workers, || census::full_table_scan_with_cap(n, cap))??;
                write!(
                    out,
                    "{},exact,full-eval,{},{},{},{},{},{},,,{:.3}",
                    n,
                    s.zero_count,
                    s.type1_count,
                    s.type2_count,
                    s.z(6),
                    s.z1(6),
                    s.z2(6),
                    start.elapsed().as_secs_f64()
                )?;
                if ratio {
                    write!(out, ",{}", s.type1_share(3).unwrap_or_default())?;
                }
                writeln!(out)?;
                out.flush()?;
            }
        }
        Command::CountType1 { n, probe } => {
            let cap = env_cap(ENV_TYPE1_CAP, DEFAULT_TYPE1_CAP);
            if let Some(range) = probe {
                let values = parse_range(&range)?;
                let (lo, hi) = match (values.first(), values.last()) {
                    (Some(&lo), Some(&hi)) => (lo, hi),
                    _ => return Err(Error::Parse("empty probe range".into())),
                };
                check_cap("type-I count size", hi, cap)?;
                let (rows, violations) = census::type1_monotonicity_probe(lo, hi)?;
                writeln!(out, "n,count_type1,p_n,z1,non_increasing")?;
                for (k, row) in rows.iter().enumerate() {
                    let ok = rows.get(k + 1).map(|next| row.at_least(next));
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        row.n,
                        row.count,
                        row.p_n,
                        row.density(12),
                        ok.map(|b| b.to_string()).unwrap_or_default()
                    )?;
                }
                if violations.is_empty() {
                    writeln!(err, "z_I non-increasing on {lo}..={hi}")?;
                } else {
                    writeln!(err, "z_I increases after n = {violations:?}")?;
                }
            } else if let Some(n) = n {
                writeln!(out, "{}", census::count_type1_with_cap(n, cap)?)?;
            }
        }
        Command::Cores { n, t } => {
            if t == 0 {
                return Err(Error::Parse("t must be at least 1".into()));
            }
            check_cap(
                "partition-count table size",
                n,
                env_cap(ENV_PTABLE_CAP, DEFAULT_TABLE_CAP),
            )?;
            writeln!(out, "{}", census::count_t_cores(n, t))?;
        }
        Command::Pn { n } => {
            let table = load_table(n, None, err)?;
            writeln!(out, "{}", table.p(n))?;
        }
        Command::Encode { lambda } => {
            let lambda: Partition = lambda.parse()?;
            writeln!(out, "{:#}", BoundaryCode::encode(&lambda))?;
        }
        Command::Decode { code } => {
            let code: BoundaryCode = code.parse()?;
            writeln!(out, "{}", code.decode())?;
        }
    }
    Ok(())
}

impl PairArgs {
    fn parse(&self) -> Result<(Partition, Partition)> {
        Ok((self.lambda.parse()?, self.mu.parse()?))
    }
}

fn run_sweep(
    request: &EstimateRequest,
    ptable: Option<&PathBuf>,
    metadata: Option<&PathBuf>,
    with_diff: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    if let Some(path) = metadata {
        let sidecar = json!({
            "tool": "snzeros",
            "version": env!("CARGO_PKG_VERSION"),
            "rng_name": RNG_NAME,
            "request": request,
        });
        std::fs::write(
            path,
            serde_json::to_string_pretty(&sidecar).map_err(|e| Error::Parse(e.to_string()))?,
        )?;
    }

    write!(out, "{CSV_HEADER}")?;
    if with_diff {
        write!(out, ",z2_minus_z1")?;
    }
    writeln!(out)?;
    if request.n_values.is_empty() {
        return Ok(());
    }

    // table sized for the largest n that fits under the cap; larger n become error rows
    let cap = env_cap(ENV_PTABLE_CAP, DEFAULT_TABLE_CAP);
    let max_n = request
        .n_values
        .iter()
        .copied()
        .filter(|&n| n <= cap)
        .max()
        .unwrap_or(0);
    let table = load_table(max_n, ptable, err)?;

    let mut io_result = Ok(());
    montecarlo::sweep(request, &table, |row| {
        if io_result.is_err() {
            return;
        }
        io_result = write_sweep_row(&row, request, with_diff, out, err);
    })?;
    io_result
}

fn write_sweep_row(
    row: &SweepRow,
    request: &EstimateRequest,
    with_diff: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    match row {
        SweepRow::Estimate(e) => {
            write!(out, "{}", e.csv_row())?;
            if with_diff {
                write!(out, ",{:.6}", e.type2_excess())?;
            }
        }
        SweepRow::Failed { n, error, .. } => {
            writeln!(err, "n={n}: {error}")?;
            write!(
                out,
                "{n},{},error,,,,,,,{},{},",
                request.samples_per_n, request.master_seed, RNG_NAME
            )?;
            if with_diff {
                write!(out, ",")?;
            }
        }
    }
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// Entry point used by the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    run(std::env::args_os(), &mut out, &mut err)
}
