//! Exact partition counts and exactly uniform random partitions.
//!
//! Counts come from Euler's pentagonal-number recurrence. Sampling uses the
//! table-driven method that picks a part `d` with multiplicity `j` with
//! probability `d·p(n−dj) / (n·p(n))`, appends `j` copies of `d` and recurses
//! on `n − dj`. Draws are made on exact integers, so the output distribution
//! is exactly uniform over the partitions of `n`.
//!
//! Every sample reads its own random stream, a pure function of
//! `(master_seed, index)`.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest table size built unless the caller raises the cap.
pub const DEFAULT_TABLE_CAP: usize = 100_000;

/// Recorded in every output that depends on random draws.
pub const RNG_NAME: &str = "chacha8-splitmix64";

const CACHE_MAGIC: &str = "snzeros-ptable v1";

/// `p(0), ..., p(max_n)` plus divisor sums used by the sampler.
#[derive(Clone, Debug)]
pub struct PartitionCountTable {
    counts: Vec<BigUint>,
    sigma: Vec<u64>,
}

impl PartitionCountTable {
    /// Builds the table with the default cap.
    pub fn build(max_n: usize) -> Result<Self> {
        Self::build_with_cap(max_n, DEFAULT_TABLE_CAP)
    }

    pub fn build_with_cap(max_n: usize, cap: usize) -> Result<Self> {
        if max_n > cap {
            return Err(Error::ResourceLimit {
                what: "partition-count table size",
                requested: max_n,
                cap,
            });
        }
        Ok(Self::from_counts(pentagonal_counts(max_n)))
    }

    fn from_counts(counts: Vec<BigUint>) -> Self {
        let sigma = divisor_sums(counts.len().saturating_sub(1));
        PartitionCountTable { counts, sigma }
    }

    pub fn max_n(&self) -> usize {
        self.counts.len() - 1
    }

    /// p(m). Panics if `m > max_n`.
    pub fn p(&self, m: usize) -> &BigUint {
        &self.counts[m]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn covers(&self, n: usize) -> Result<()> {
        if n > self.max_n() {
            return Err(Error::ResourceLimit {
                what: "partition size beyond partition-count table",
                requested: n,
                cap: self.max_n(),
            });
        }
        Ok(())
    }

    /// Writes the decimal cache format: a header line with `max_n`, then one
    /// count per line.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = std::io::BufWriter::new(fs::File::create(path)?);
        writeln!(out, "{CACHE_MAGIC} max_n={}", self.max_n())?;
        for c in &self.counts {
            writeln!(out, "{c}")?;
        }
        out.flush()?;
        Ok(())
    }

    /// Reads a cache written by [`save`](Self::save). The first entries are
    /// checked against a fresh computation, including p(50) and p(100) when
    /// the cache reaches that far.
    pub fn load(path: &Path) -> Result<Self> {
        let reader = BufReader::new(fs::File::open(path)?);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::TableCache("empty file".into()))??;
        let max_n: usize = header
            .strip_prefix(CACHE_MAGIC)
            .and_then(|rest| rest.trim().strip_prefix("max_n="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::TableCache(format!("bad header `{header}`")))?;

        let mut counts = Vec::with_capacity(max_n + 1);
        for line in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let v = line
                .trim()
                .parse::<BigUint>()
                .map_err(|e| Error::TableCache(format!("bad entry {}: {e}", counts.len())))?;
            counts.push(v);
        }
        if counts.len() != max_n + 1 {
            return Err(Error::TableCache(format!(
                "header says max_n={max_n} but found {} entries",
                counts.len()
            )));
        }
        let check = pentagonal_counts(max_n.min(100));
        if counts[..check.len()] != check[..] {
            return Err(Error::TableCache(
                "stored counts disagree with recomputation".into(),
            ));
        }
        Ok(Self::from_counts(counts))
    }
}

/// p(0..=max_n) by `p(m) = Σ_{k≥1} (−1)^{k+1} [p(m − k(3k−1)/2) + p(m − k(3k+1)/2)]`.
pub fn pentagonal_counts(max_n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(max_n + 1);
    p.push(BigUint::from(1u32));
    for m in 1..=max_n {
        let mut plus = BigUint::zero();
        let mut minus = BigUint::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let acc = if k % 2 == 1 { &mut plus } else { &mut minus };
            *acc += &p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                *acc += &p[m - g2];
            }
        }
        p.push(plus - minus);
    }
    p
}

fn divisor_sums(max_n: usize) -> Vec<u64> {
    let mut sigma = vec![0u64; max_n + 1];
    for d in 1..=max_n {
        for m in (d..=max_n).step_by(d) {
            sigma[m] += d as u64;
        }
    }
    sigma
}

/// Address of one sample's private random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SampleStream {
    pub master_seed: u64,
    pub index: u64,
}

impl SampleStream {
    pub fn new(master_seed: u64, index: u64) -> Self {
        SampleStream { master_seed, index }
    }

    /// The generator for this stream; depends only on `(master_seed, index)`.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut seed = [0u8; 32];
        let mut state = mix_seed(self.master_seed, self.index);
        for chunk in seed.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        ChaCha8Rng::from_seed(seed)
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hashes two words into one; used for per-sample and per-n seeds.
pub fn mix_seed(a: u64, b: u64) -> u64 {
    let mut s = a;
    let h = splitmix64(&mut s);
    let mut s = h ^ b.wrapping_mul(0xD6E8_FEB8_6659_FD93);
    splitmix64(&mut s)
}

/// Uniform integer in `[0, bound)` by rejection from random bits.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let top_mask = if top_bits == 32 {
        u32::MAX
    } else {
        (1u32 << top_bits) - 1
    };
    let mut digits = vec![0u32; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        digits[words - 1] &= top_mask;
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// A uniformly random partition of `n`, determined by `stream`.
pub fn random_partition(
    n: usize,
    stream: SampleStream,
    table: &PartitionCountTable,
) -> Result<Partition> {
    table.covers(n)?;
    let mut rng = stream.rng();
    Ok(random_partition_with(n, &mut rng, table))
}

/// Same as [`random_partition`] but drawing from a caller-supplied generator.
/// `n` must be covered by `table`.
pub fn random_partition_with<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    table: &PartitionCountTable,
) -> Partition {
    // multiplicity of each part size
    let mut mult = vec![0usize; n + 1];
    let mut remaining = n;
    while remaining > 0 {
        let (d, j) = choose_part(remaining, rng, table);
        mult[d] += j;
        remaining -= d * j;
    }
    let parts = (1..=n)
        .rev()
        .flat_map(|d| std::iter::repeat_n(d, mult[d]))
        .collect();
    Partition::from_parts_unchecked(parts)
}

/// Picks `(d, j)` with probability `d·p(n−dj) / (n·p(n))`.
///
/// Pairs are grouped by `m = dj`: the group weight is `σ(m)·p(n−m)`, and
/// inside a group the divisor `d` has weight `d`.
fn choose_part<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
    table: &PartitionCountTable,
) -> (usize, usize) {
    let total = table.p(n) * BigUint::from(n);
    let mut r = uniform_below(rng, &total);
    for m in 1..=n {
        let rest = table.p(n - m);
        let w = rest * table.sigma[m];
        if r < w {
            let mut q = (r / rest)
                .to_u64()
                .expect("offset within a divisor group fits in u64");
            for d in divisors(m) {
                if q < d as u64 {
                    return (d, m / d);
                }
                q -= d as u64;
            }
            unreachable!("divisor weights sum to sigma(m)");
        }
        r -= w;
    }
    unreachable!("weights sum to n·p(n)")
}

fn divisors(m: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    /// p(m) counting partitions with parts ≤ k, the classic bounded-part DP.
    fn bounded_part_counts(max_n: usize) -> Vec<BigUint> {
        let mut dp = vec![BigUint::zero(); max_n + 1];
        dp[0] = BigUint::from(1u32);
        for k in 1..=max_n {
            for m in k..=max_n {
                let prev = dp[m - k].clone();
                dp[m] += prev;
            }
        }
        dp
    }

    #[test]
    fn small_tables() {
        let t = PartitionCountTable::build(0).unwrap();
        assert_eq!(t.counts(), &[BigUint::from(1u32)]);
        let t = PartitionCountTable::build(50).unwrap();
        assert_eq!(*t.p(5), BigUint::from(7u32));
        assert_eq!(*t.p(5), BigUint::from(Partition::all(5).count()));
        assert_eq!(*t.p(50), BigUint::from(204_226u32));
    }

    #[test]
    fn agrees_with_bounded_part_oracle() {
        let t = PartitionCountTable::build(200).unwrap();
        assert_eq!(t.counts(), &bounded_part_counts(200)[..]);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            PartitionCountTable::build_with_cap(11, 10),
            Err(Error::ResourceLimit {
                requested: 11,
                cap: 10,
                ..
            })
        ));
        let t = PartitionCountTable::build(5).unwrap();
        assert!(random_partition(6, SampleStream::new(0, 0), &t)
            .unwrap_err()
            .is_resource_limit());
    }

    #[test]
    fn divisor_sums_and_lists() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(49), [1, 7, 49]);
        let s = divisor_sums(12);
        assert_eq!(s[12], 28);
        assert_eq!(s[7], 8);
    }

    #[test]
    fn samples_are_partitions_and_deterministic() {
        let t = PartitionCountTable::build(300).unwrap();
        for i in 0..50 {
            let s = SampleStream::new(7, i);
            let a = random_partition(300, s, &t).unwrap();
            assert_eq!(a.n(), 300);
            assert_eq!(a, random_partition(300, s, &t).unwrap());
        }
        assert_eq!(
            random_partition(1, SampleStream::new(3, 9), &t)
                .unwrap()
                .parts(),
            &[1]
        );
        assert!(random_partition(0, SampleStream::new(3, 9), &t)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn uniform_below_stays_in_range() {
        let mut rng = SampleStream::new(1, 2).rng();
        let bound = BigUint::from(5u32);
        let mut seen = [0usize; 5];
        for _ in 0..5000 {
            let v = uniform_below(&mut rng, &bound).to_usize().unwrap();
            seen[v] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800));
        let big: BigUint = BigUint::from(1u32) << 200usize;
        assert!(uniform_below(&mut rng, &(big.clone() + 1u32)) <= big);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("snzeros-ptable-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("p.txt");
        let t = PartitionCountTable::build(120).unwrap();
        t.save(&path).unwrap();
        let back = PartitionCountTable::load(&path).unwrap();
        assert_eq!(back.counts(), t.counts());

        // corrupt p(50)
        let text = fs::read_to_string(&path).unwrap();
        let bad = text.replacen("204226", "204227", 1);
        fs::write(&path, bad).unwrap();
        assert!(matches!(
            PartitionCountTable::load(&path),
            Err(Error::TableCache(_))
        ));
        fs::remove_dir_all(&dir).unwrap();
    }
}
