//! Integer partitions, their hook lengths and the hook-length formula.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The empty sequence is the unique partition of 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

impl Partition {
    /// Validates `parts` and builds a partition.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(index) = parts.iter().position(|&p| p == 0) {
            return Err(Error::NonPositivePart { index, value: 0 });
        }
        if let Some(index) = parts.windows(2).position(|w| w[0] < w[1]) {
            return Err(Error::NotWeaklyDecreasing { index: index + 1 });
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// Same as [`Partition::new`] but accepts signed input, so that
    /// negative entries are reported as such rather than wrapped.
    pub fn from_parts(parts: &[i64]) -> Result<Self> {
        let mut checked = Vec::with_capacity(parts.len());
        for (index, &value) in parts.iter().enumerate() {
            if value < 1 {
                return Err(Error::NonPositivePart { index, value });
            }
            checked.push(value as usize);
        }
        Self::new(checked)
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        let n = parts.iter().sum();
        Partition { parts, n }
    }

    /// The partition `(1, 1, ..., 1)` of `n`.
    pub fn ones(n: usize) -> Self {
        Self::from_parts_unchecked(vec![1; n])
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::default()
        } else {
            Self::from_parts_unchecked(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts, ℓ(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// λ₁, or 0 for the empty partition.
    pub fn largest_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The parts after the first, ν = (μ₂, μ₃, ...).
    pub fn tail(&self) -> &[usize] {
        self.parts.get(1..).unwrap_or(&[])
    }

    /// Distinct part values in decreasing order.
    pub fn distinct_parts(&self) -> impl Iterator<Item = usize> + '_ {
        self.multiplicities().map(|(d, _)| d)
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .chunk_by(|a, b| a == b)
            .map(|run| (run[0], run.len()))
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Self {
        let cols = self.largest_part();
        let parts = (1..=cols)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Self::from_parts_unchecked(parts)
    }

    /// Hook lengths of every cell, straight from
    /// `h(i, j) = λ_i − j + |{s ≥ i : λ_s ≥ j}|`.
    pub fn hook_lengths(&self) -> HookMultiset {
        let mut hooks = Vec::with_capacity(self.n);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 1..=row {
                let below = self.parts[i..].iter().filter(|&&p| p >= j).count();
                hooks.push(row - j + below);
            }
        }
        HookMultiset::new(hooks)
    }

    /// `n! / ∏ hooks`, the degree of the irreducible character.
    pub fn dimension(&self) -> BigUint {
        dimension_from_hooks(self.n, self.hook_lengths().iter())
    }

    /// Order of the centralizer of a permutation with this cycle type,
    /// `∏_d d^{m_d} · m_d!`.
    pub fn centralizer_size(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (d, m) in self.multiplicities() {
            for k in 1..=m {
                acc *= BigUint::from(d) * BigUint::from(k);
            }
        }
        acc
    }

    /// All partitions of `n` in reverse lexicographic order, starting at `(n)`.
    pub fn all(n: usize) -> Partitions {
        Partitions::new(n)
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts, e.g. `6,5,3,2,1,1`; the empty partition prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() {
            return Ok(Partition::default());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad part `{}`: {e}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_parts(&parts)
    }
}

/// Iterator over the partitions of a fixed integer.
#[derive(Clone, Debug)]
pub struct Partitions {
    current: Option<Vec<usize>>,
}

impl Partitions {
    fn new(n: usize) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions {
            current: Some(first),
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition::from_parts_unchecked(cur.clone());

        // Successor in reverse lexicographic order: drop trailing 1s, decrement
        // the last part greater than 1, then refill greedily.
        let mut next = cur;
        let mut freed = 0;
        while next.last() == Some(&1) {
            next.pop();
            freed += 1;
        }
        if let Some(last) = next.last_mut() {
            *last -= 1;
            let cap = *last;
            freed += 1;
            while freed > 0 {
                let p = freed.min(cap);
                next.push(p);
                freed -= p;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// The multiset of hook lengths of a partition, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookMultiset(Vec<usize>);

impl HookMultiset {
    pub fn new(mut hooks: Vec<usize>) -> Self {
        hooks.sort_unstable();
        HookMultiset(hooks)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn any_divisible_by(&self, t: usize) -> bool {
        self.0.iter().any(|h| h % t == 0)
    }
}

/// Exact `n! / ∏ hooks`, assuming the hooks come from a partition of `n`.
///
/// Works on prime exponents so no intermediate value exceeds the result.
pub fn dimension_from_hooks(n: usize, hooks: impl IntoIterator<Item = usize>) -> BigUint {
    let mut exps = vec![0i64; n + 2];
    for k in 2..=n {
        add_factorization(&mut exps, k, 1);
    }
    for h in hooks {
        if h >= 2 {
            add_factorization(&mut exps, h, -1);
        }
    }

    let mut result = BigUint::one();
    let mut chunk: u64 = 1;
    for (p, &e) in exps.iter().enumerate() {
        debug_assert!(e >= 0, "hooks do not divide n!");
        for _ in 0..e {
            match chunk.checked_mul(p as u64) {
                Some(c) => chunk = c,
                None => {
                    result *= chunk;
                    chunk = p as u64;
                }
            }
        }
    }
    result * chunk
}

fn add_factorization(exps: &mut Vec<i64>, mut k: usize, sign: i64) {
    if k >= exps.len() {
        exps.resize(k + 1, 0);
    }
    let mut p = 2;
    while p * p <= k {
        while k.is_multiple_of(p) {
            exps[p] += sign;
            k /= p;
        }
        p += 1;
    }
    if k > 1 {
        exps[k] += sign;
    }
}
