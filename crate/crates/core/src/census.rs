//! Exact zero statistics.
//!
//! Small tables are scanned entry by entry. For large `n` the number of
//! type-I zeros is counted without touching the table:
//! `|Z_I(S_n)| = Σ_t q(n, t) · c_t(n)`, where `q(n, t)` counts partitions of
//! `n` with largest part `t` and `c_t(n)` counts `t`-core partitions of `n`,
//! read off `∏_k (1 − x^{tk})^t / (1 − x^k)`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::code::BoundaryCode;
use crate::error::{Error, Result};
use crate::mn::classify_code;
use crate::partition::Partition;
use crate::sampler::PartitionCountTable;

pub const DEFAULT_SCAN_CAP: usize = 20;
pub const DEFAULT_TYPE1_CAP: usize = 5000;

/// Exact counts over the whole `p_n × p_n` table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub n: usize,
    pub total_entries: BigUint,
    pub zero_count: BigUint,
    pub type1_count: BigUint,
    pub type2_count: BigUint,
}

impl ScanResult {
    pub fn z(&self, digits: usize) -> String {
        decimal_ratio(&self.zero_count, &self.total_entries, digits).unwrap_or_default()
    }

    pub fn z1(&self, digits: usize) -> String {
        decimal_ratio(&self.type1_count, &self.total_entries, digits).unwrap_or_default()
    }

    pub fn z2(&self, digits: usize) -> String {
        decimal_ratio(&self.type2_count, &self.total_entries, digits).unwrap_or_default()
    }

    /// `z_I / z`; `None` when the table has no zeros.
    pub fn type1_share(&self, digits: usize) -> Option<String> {
        decimal_ratio(&self.type1_count, &self.zero_count, digits)
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    zero: u64,
    type1: u64,
    type2: u64,
}

impl std::ops::Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            zero: self.zero + o.zero,
            type1: self.type1 + o.type1,
            type2: self.type2 + o.type2,
        }
    }
}

/// Evaluates every entry of the character table of `S_n` (default cap).
pub fn full_table_scan(n: usize) -> Result<ScanResult> {
    full_table_scan_with_cap(n, DEFAULT_SCAN_CAP)
}

pub fn full_table_scan_with_cap(n: usize, cap: usize) -> Result<ScanResult> {
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "full table scan size",
            requested: n,
            cap,
        });
    }
    let lambdas: Vec<BoundaryCode> = Partition::all(n)
        .map(|l| BoundaryCode::encode(&l))
        .collect();
    let mus: Vec<Partition> = Partition::all(n).collect();

    // one column per task
    let tally = mus
        .par_iter()
        .map(|mu| {
            lambdas.iter().fold(Tally::default(), |acc, code| {
                let c = classify_code(code, mu, true);
                acc + Tally {
                    zero: c.is_zero as u64,
                    type1: c.is_type_i as u64,
                    type2: c.is_type_ii as u64,
                }
            })
        })
        .reduce(Tally::default, |a, b| a + b);

    let p = BigUint::from(lambdas.len());
    Ok(ScanResult {
        n,
        total_entries: &p * &p,
        zero_count: tally.zero.into(),
        type1_count: tally.type1.into(),
        type2_count: tally.type2.into(),
    })
}

/// Coefficients `c_t(0..=n)` of the `t`-core generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorePolynomial {
    pub t: usize,
    pub coefficients: Vec<BigUint>,
}

impl CorePolynomial {
    pub fn compute(n: usize, t: usize, table: &PartitionCountTable) -> Self {
        let numerator = core_numerator(n, t);
        let coefficients = (0..=n)
            .map(|m| convolve_at(&numerator, t, m, table))
            .collect();
        CorePolynomial { t, coefficients }
    }
}

/// Number of `t`-core partitions of `n`.
pub fn count_t_cores(n: usize, t: usize) -> BigUint {
    let table = PartitionCountTable::from_pentagonal(n);
    count_t_cores_with(n, t, &table)
}

/// [`count_t_cores`] against a prebuilt table covering `n`.
pub fn count_t_cores_with(n: usize, t: usize, table: &PartitionCountTable) -> BigUint {
    assert!(t >= 1, "core size must be positive");
    if t > n {
        return table.p(n).clone();
    }
    convolve_at(&core_numerator(n, t), t, n, table)
}

/// `∏_{k : tk ≤ n} (1 − y^k)^t` truncated at `y^{⌊n/t⌋}`, where `y = x^t`.
/// Each factor is applied as `t` sparse multiplications by `(1 − y^k)`.
fn core_numerator(n: usize, t: usize) -> Vec<BigInt> {
    let len = n / t + 1;
    let mut a = vec![BigInt::zero(); len];
    a[0] = BigInt::from(1);
    for k in 1..len {
        for _ in 0..t {
            for i in (k..len).rev() {
                let (lo, hi) = a.split_at_mut(i);
                if !lo[i - k].is_zero() {
                    hi[0] -= &lo[i - k];
                }
            }
        }
    }
    a
}

/// Coefficient of `x^m` in `numerator(x^t) · Σ p(j) x^j`.
fn convolve_at(numerator: &[BigInt], t: usize, m: usize, table: &PartitionCountTable) -> BigUint {
    let mut acc = BigInt::zero();
    for (i, a) in numerator.iter().enumerate() {
        let shift = t * i;
        if shift > m {
            break;
        }
        if !a.is_zero() {
            acc += a * BigInt::from_biguint(Sign::Plus, table.p(m - shift).clone());
        }
    }
    debug_assert!(!acc.is_negative());
    acc.into_parts().1
}

/// `q[t]` = number of partitions of `n` with largest part exactly `t`, for
/// `t` in `0..=n` (`q[0]` is 1 when `n = 0`, else 0).
pub fn count_max_part(n: usize) -> Vec<BigUint> {
    let mut q = vec![BigUint::zero(); n + 1];
    if n == 0 {
        q[0] = BigUint::from(1u32);
        return q;
    }
    // bounded[m] = partitions of m with all parts ≤ t, rolled forward in t
    let mut bounded = vec![BigUint::zero(); n + 1];
    bounded[0] = BigUint::from(1u32);
    for t in 1..=n {
        for m in t..=n {
            let (lo, hi) = bounded.split_at_mut(m);
            hi[0] += &lo[m - t];
        }
        // largest part t: remove one t, the rest has parts ≤ t
        q[t] = bounded[n - t].clone();
    }
    q
}

/// `|Z_I(S_n)|` with the default cap.
pub fn count_type1(n: usize) -> Result<BigUint> {
    count_type1_with_cap(n, DEFAULT_TYPE1_CAP)
}

pub fn count_type1_with_cap(n: usize, cap: usize) -> Result<BigUint> {
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "type-I count size",
            requested: n,
            cap,
        });
    }
    let table = PartitionCountTable::from_pentagonal(n);
    Ok(count_type1_with(n, &table))
}

/// `Σ_t q(n, t) · c_t(n)` using a prebuilt table.
pub fn count_type1_with(n: usize, table: &PartitionCountTable) -> BigUint {
    let q = count_max_part(n);
    (1..=n)
        .into_par_iter()
        .map(|t| {
            if q[t].is_zero() {
                BigUint::zero()
            } else {
                &q[t] * count_t_cores_with(n, t, table)
            }
        })
        .reduce(BigUint::zero, |a, b| a + b)
}

/// One row of the monotonicity probe for exact type-I densities.
#[derive(Clone, Debug)]
pub struct Type1Density {
    pub n: usize,
    pub count: BigUint,
    pub p_n: BigUint,
}

impl Type1Density {
    pub fn density(&self, digits: usize) -> String {
        decimal_ratio(&self.count, &(&self.p_n * &self.p_n), digits).unwrap_or_default()
    }

    /// Exact comparison `z_I(self) ≥ z_I(next)`.
    pub fn at_least(&self, next: &Type1Density) -> bool {
        &self.count * &next.p_n * &next.p_n >= &next.count * &self.p_n * &self.p_n
    }
}

/// Exact type-I densities for `lo..=hi` and the values of `n` in `lo..hi`
/// where `z_I(n) < z_I(n+1)`.
pub fn type1_monotonicity_probe(lo: usize, hi: usize) -> Result<(Vec<Type1Density>, Vec<usize>)> {
    if hi > DEFAULT_TYPE1_CAP {
        return Err(Error::ResourceLimit {
            what: "type-I count size",
            requested: hi,
            cap: DEFAULT_TYPE1_CAP,
        });
    }
    let table = PartitionCountTable::from_pentagonal(hi);
    let rows: Vec<Type1Density> = (lo.max(1)..=hi)
        .map(|n| Type1Density {
            n,
            count: count_type1_with(n, &table),
            p_n: table.p(n).clone(),
        })
        .collect();
    let violations = rows
        .windows(2)
        .filter(|w| !w[0].at_least(&w[1]))
        .map(|w| w[0].n)
        .collect();
    Ok((rows, violations))
}

/// `num / den` as a fixed-point decimal with `digits` places, rounded half
/// to even. `None` if `den` is zero.
pub fn decimal_ratio(num: &BigUint, den: &BigUint, digits: usize) -> Option<String> {
    if den.is_zero() {
        return None;
    }
    let scale = BigUint::from(10u32).pow(digits as u32);
    let (mut q, r) = (num * &scale).div_rem(den);
    let twice = &r << 1usize;
    if twice > *den || (twice == *den && q.is_odd()) {
        q += 1u32;
    }
    let s = q.to_str_radix(10);
    if digits == 0 {
        return Some(s);
    }
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    Some(format!("{int}.{frac}"))
}

impl PartitionCountTable {
    /// Table without a cap check, for internal exact counting.
    pub(crate) fn from_pentagonal(max_n: usize) -> Self {
        PartitionCountTable::build_with_cap(max_n, usize::MAX).expect("uncapped build cannot fail")
    }
}
