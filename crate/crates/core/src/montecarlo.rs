//! Seeded Monte Carlo estimates of zero densities.
//!
//! Sample `i` at size `n` draws λ from stream `2i` and μ from stream `2i + 1`
//! of the per-n seed `mix_seed(master_seed, n)`. Samples are split into
//! contiguous blocks; block tallies are summed, so counts never depend on the
//! number of workers.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::BoundaryCode;
use crate::error::{Error, Result};
use crate::mn::classify_code;
use crate::sampler::{
    mix_seed, random_partition_with, PartitionCountTable, SampleStream, RNG_NAME,
};

/// Above this size the default mode skips full evaluation.
pub const FULL_EVAL_DEFAULT_MAX_N: usize = 300;

const BLOCK: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Core tests only: estimates z_I and z_II.
    TypesOnly,
    /// Core tests plus character evaluation: also estimates z.
    FullEval,
}

impl Mode {
    pub fn default_for(n: usize) -> Mode {
        if n > FULL_EVAL_DEFAULT_MAX_N {
            Mode::TypesOnly
        } else {
            Mode::FullEval
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::TypesOnly => "types-only",
            Mode::FullEval => "full-eval",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "types-only" => Ok(Mode::TypesOnly),
            "full-eval" => Ok(Mode::FullEval),
            other => Err(Error::InvalidMode(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Workers {
    #[default]
    Auto,
    Fixed(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateRequest {
    pub n_values: Vec<usize>,
    pub samples_per_n: u64,
    pub master_seed: u64,
    /// `None` picks [`Mode::default_for`] per `n`.
    pub mode: Option<Mode>,
    pub workers: Workers,
}

impl EstimateRequest {
    pub fn validate(&self) -> Result<()> {
        if self.samples_per_n == 0 {
            return Err(Error::InvalidRequest(
                "samples per n must be at least 1".into(),
            ));
        }
        if let Workers::Fixed(0) = self.workers {
            return Err(Error::InvalidRequest(
                "worker count must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Tallies for one `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub n: usize,
    pub samples: u64,
    pub mode: Mode,
    /// Present only in full-eval mode.
    pub count_zero: Option<u64>,
    pub count_type1: u64,
    pub count_type2: u64,
    pub master_seed: u64,
    pub rng_name: &'static str,
    pub elapsed_seconds: f64,
}

impl DensityEstimate {
    pub fn z_hat(&self) -> Option<f64> {
        self.count_zero.map(|c| c as f64 / self.samples as f64)
    }

    pub fn z1_hat(&self) -> f64 {
        self.count_type1 as f64 / self.samples as f64
    }

    pub fn z2_hat(&self) -> f64 {
        self.count_type2 as f64 / self.samples as f64
    }

    /// Fraction of samples of type II but not type I.
    pub fn type2_excess(&self) -> f64 {
        (self.count_type2 - self.count_type1) as f64 / self.samples as f64
    }

    /// Same counts, ignoring wall-clock time.
    pub fn same_counts(&self, other: &DensityEstimate) -> bool {
        (
            self.n,
            self.samples,
            self.mode,
            self.count_zero,
            self.count_type1,
            self.count_type2,
        ) == (
            other.n,
            other.samples,
            other.mode,
            other.count_zero,
            other.count_type1,
            other.count_type2,
        )
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    zero: u64,
    type1: u64,
    type2: u64,
}

/// Estimates densities at one `n` from `samples` independent uniform pairs.
pub fn estimate(
    n: usize,
    samples: u64,
    master_seed: u64,
    mode: Mode,
    table: &PartitionCountTable,
    workers: Workers,
) -> Result<DensityEstimate> {
    table.covers(n)?;
    if samples == 0 {
        return Err(Error::InvalidRequest("samples must be at least 1".into()));
    }
    let start = Instant::now();
    let seed = mix_seed(master_seed, n as u64);
    let evaluate = mode == Mode::FullEval;

    let run_block = |block: u64| {
        let lo = block * BLOCK;
        let hi = (lo + BLOCK).min(samples);
        let mut tally = Tally::default();
        for i in lo..hi {
            let lambda = random_partition_with(n, &mut SampleStream::new(seed, 2 * i).rng(), table);
            let mu = random_partition_with(n, &mut SampleStream::new(seed, 2 * i + 1).rng(), table);
            let class = classify_code(&BoundaryCode::encode(&lambda), &mu, evaluate);
            tally.zero += class.is_zero as u64;
            tally.type1 += class.is_type_i as u64;
            tally.type2 += class.is_type_ii as u64;
        }
        tally
    };
    let blocks = samples.div_ceil(BLOCK);
    let merge = |a: Tally, b: Tally| Tally {
        zero: a.zero + b.zero,
        type1: a.type1 + b.type1,
        type2: a.type2 + b.type2,
    };

    let tally = match workers {
        Workers::Fixed(0) => {
            return Err(Error::InvalidRequest(
                "worker count must be at least 1".into(),
            ))
        }
        Workers::Fixed(1) => (0..blocks).map(run_block).fold(Tally::default(), merge),
        Workers::Fixed(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Error::InvalidRequest(format!("thread pool: {e}")))?;
            pool.install(|| {
                (0..blocks)
                    .into_par_iter()
                    .map(run_block)
                    .reduce(Tally::default, merge)
            })
        }
        Workers::Auto => (0..blocks)
            .into_par_iter()
            .map(run_block)
            .reduce(Tally::default, merge),
    };

    Ok(DensityEstimate {
        n,
        samples,
        mode,
        count_zero: evaluate.then_some(tally.zero),
        count_type1: tally.type1,
        count_type2: tally.type2,
        master_seed,
        rng_name: RNG_NAME,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// A sweep row: an estimate, or the error that prevented it.
#[derive(Debug)]
pub enum SweepRow {
    Estimate(DensityEstimate),
    Failed { n: usize, mode: Mode, error: Error },
}

/// Runs `estimate` for each requested `n` in order, handing each row to
/// `sink` as soon as it is ready. Per-n failures become
/// [`SweepRow::Failed`] and do not stop the sweep.
pub fn sweep<F: FnMut(SweepRow)>(
    request: &EstimateRequest,
    table: &PartitionCountTable,
    mut sink: F,
) -> Result<()> {
    request.validate()?;
    for &n in &request.n_values {
        let mode = request.mode.unwrap_or_else(|| Mode::default_for(n));
        let row = match estimate(
            n,
            request.samples_per_n,
            request.master_seed,
            mode,
            table,
            request.workers,
        ) {
            Ok(e) => SweepRow::Estimate(e),
            Err(error) => SweepRow::Failed { n, mode, error },
        };
        sink(row);
    }
    Ok(())
}

/// [`sweep`] collected into a vector.
pub fn sweep_collect(
    request: &EstimateRequest,
    table: &PartitionCountTable,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(request.n_values.len());
    sweep(request, table, |r| rows.push(r))?;
    Ok(rows)
}

/// CSV header shared by `sweep` and `scan` output.
pub const CSV_HEADER: &str =
    "n,samples,mode,count_zero,count_type1,count_type2,z_hat,z1_hat,z2_hat,master_seed,rng_name,elapsed_seconds";

impl DensityEstimate {
    /// One CSV line (no newline) in [`CSV_HEADER`] order.
    pub fn csv_row(&self) -> String {
        let count_zero = self.count_zero.map(|c| c.to_string()).unwrap_or_default();
        let z_hat = self.z_hat().map(|z| format!("{z:.6}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{:.6},{:.6},{},{},{:.3}",
            self.n,
            self.samples,
            self.mode,
            count_zero,
            self.count_type1,
            self.count_type2,
            z_hat,
            self.z1_hat(),
            self.z2_hat(),
            self.master_seed,
            self.rng_name,
            self.elapsed_seconds
        )
    }
}
