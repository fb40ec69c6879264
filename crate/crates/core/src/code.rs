//! Boundary words of Young diagrams.
//!
//! Walking the outer boundary of a Young diagram from the lower left to the
//! upper right and writing 1 for each horizontal edge and 0 for each vertical
//! edge gives a binary word. Index 0 is the first edge of the walk; printed
//! literals put index 0 first, so `(6,5,3,2,1,1)` reads `100101011010`.
//!
//! Removing a rim hook of size `t` is flipping a `1` at index `a` together
//! with a `0` at index `a + t`. Its height is the number of 0-bits strictly
//! between the two.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::partition::{dimension_from_hooks, HookMultiset, Partition};

type Words = SmallVec<[u64; 2]>;

/// A variable-length bit sequence in walk order.
///
/// Bits past `len` in the last word are always zero, so derived equality
/// and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryCode {
    words: Words,
    len: usize,
}

impl BoundaryCode {
    /// Builds a code from raw bits; no canonicalization.
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut code = BoundaryCode::default();
        for b in bits {
            code.push(b);
        }
        code
    }

    fn zeroed(len: usize) -> Self {
        let mut words = Words::new();
        words.resize(len.div_ceil(64), 0);
        BoundaryCode { words, len }
    }

    fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    /// Canonical boundary word of `lambda`.
    pub fn encode(lambda: &Partition) -> Self {
        let len = lambda.largest_part() + lambda.len();
        let mut code = Self::zeroed(len);
        let mut pos = 0;
        let mut prev = 0;
        for &row in lambda.parts().iter().rev() {
            for _ in prev..row {
                code.set(pos);
                pos += 1;
            }
            pos += 1;
            prev = row;
        }
        debug_assert_eq!(pos, len);
        code
    }

    /// The partition traced by this word, after stripping leading 0-bits
    /// and trailing 1-bits.
    pub fn decode(&self) -> Partition {
        let mut ones = 0;
        let mut rows = Vec::with_capacity(self.count_zeros());
        for i in 0..self.len {
            if self.get(i) {
                ones += 1;
            } else if ones > 0 {
                rows.push(ones);
            }
        }
        rows.reverse();
        Partition::from_parts_unchecked(rows)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Number of cells of the encoded diagram.
    pub fn weight(&self) -> usize {
        let mut ones = 0;
        let mut cells = 0;
        for i in 0..self.len {
            if self.get(i) {
                ones += 1;
            } else {
                cells += ones;
            }
        }
        cells
    }

    /// 64 bits starting at `start`; positions past the end read as 0.
    #[inline]
    fn window(&self, start: usize) -> u64 {
        let w = start / 64;
        let s = start % 64;
        let lo = self.words.get(w).copied().unwrap_or(0);
        if s == 0 {
            lo
        } else {
            let hi = self.words.get(w + 1).copied().unwrap_or(0);
            (lo >> s) | (hi << (64 - s))
        }
    }

    /// Ones in the half-open index range `lo..hi`.
    fn count_ones_in(&self, lo: usize, hi: usize) -> usize {
        let mut count = 0;
        let mut pos = lo;
        while pos < hi {
            let take = (hi - pos).min(64);
            let mut w = self.window(pos);
            if take < 64 {
                w &= (1u64 << take) - 1;
            }
            count += w.count_ones() as usize;
            pos += take;
        }
        count
    }

    /// Copy of the bits in `lo..hi`.
    fn slice(&self, lo: usize, hi: usize) -> Self {
        let len = hi - lo;
        let mut out = Self::zeroed(len);
        for (k, word) in out.words.iter_mut().enumerate() {
            *word = self.window(lo + 64 * k);
        }
        if !len.is_multiple_of(64) {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
        out
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| 64 * k + w.trailing_zeros() as usize)
    }

    fn last_zero(&self) -> Option<usize> {
        (0..self.len).rev().find(|&i| !self.get(i))
    }

    /// First bit 1, last bit 0 (or empty).
    pub fn is_canonical(&self) -> bool {
        self.is_empty() || (self.get(0) && !self.get(self.len - 1))
    }

    /// Strips leading 0-bits and trailing 1-bits.
    pub fn normalized(&self) -> Self {
        let mut out = self.clone();
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.is_canonical() {
            return;
        }
        match (self.first_one(), self.last_zero()) {
            (Some(lo), Some(hi)) if lo < hi => *self = self.slice(lo, hi + 1),
            _ => *self = BoundaryCode::default(),
        }
    }

    /// Indices `a` with `bits[a] = 1` and `bits[a + t] = 0`, ascending.
    ///
    /// Each one marks a removable rim hook of size `t`.
    pub fn removable_heads(&self, t: usize) -> RemovableHeads<'_> {
        assert!(t >= 1, "rim hook size must be positive");
        RemovableHeads {
            code: self,
            t,
            limit: self.len.saturating_sub(t),
            base: 0,
            pending: 0,
        }
    }

    /// True iff no rim hook of size `t` can be removed, i.e. no hook length
    /// is divisible by `t`.
    pub fn is_core(&self, t: usize) -> bool {
        self.removable_heads(t).next().is_none()
    }

    /// Applies `f(result, sign)` to every shape obtained by removing a rim
    /// hook of size `t`, in ascending order of the flipped 1-bit.
    pub fn for_each_rim_hook_removal<F>(&self, t: usize, mut f: F)
    where
        F: FnMut(BoundaryCode, i8),
    {
        for a in self.removable_heads(t) {
            let b = a + t;
            let interior_zeros = (t - 1) - self.count_ones_in(a + 1, b);
            let sign = if interior_zeros.is_multiple_of(2) {
                1
            } else {
                -1
            };
            let mut next = self.clone();
            next.flip(a);
            next.flip(b);
            next.normalize();
            f(next, sign);
        }
    }

    /// All `(λ \ ρ, (−1)^ht(ρ))` for rim hooks `ρ` of size `t`, ordered by
    /// ascending position of the flipped 1-bit. Results are canonical.
    pub fn rim_hook_removals(&self, t: usize) -> Vec<(BoundaryCode, i8)> {
        let mut out = Vec::new();
        self.for_each_rim_hook_removal(t, |c, s| out.push((c, s)));
        out
    }

    /// Hook lengths read off the word as `{ b − a : bits[a] = 1, bits[b] = 0, a < b }`.
    pub fn hook_lengths(&self) -> HookMultiset {
        HookMultiset::new(self.hooks_unsorted())
    }

    fn hooks_unsorted(&self) -> Vec<usize> {
        let mut hooks = Vec::new();
        let mut ones_at = Vec::with_capacity(self.count_ones());
        for i in 0..self.len {
            if self.get(i) {
                ones_at.push(i);
            } else {
                hooks.extend(ones_at.iter().map(|&a| i - a));
            }
        }
        hooks
    }

    /// Degree of the character indexed by the encoded shape.
    pub fn dimension(&self) -> BigUint {
        dimension_from_hooks(self.weight(), self.hooks_unsorted())
    }

    /// Boundary word of the transposed diagram: reverse and complement.
    pub fn conjugate(&self) -> Self {
        Self::from_bits((0..self.len).rev().map(|i| !self.get(i)))
    }
}

/// Iterator returned by [`BoundaryCode::removable_heads`].
pub struct RemovableHeads<'a> {
    code: &'a BoundaryCode,
    t: usize,
    limit: usize,
    base: usize,
    pending: u64,
}

impl Iterator for RemovableHeads<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.pending != 0 {
                let bit = self.pending.trailing_zeros() as usize;
                self.pending &= self.pending - 1;
                return Some(self.base - 64 + bit);
            }
            if self.base >= self.limit {
                return None;
            }
            let mut w = self.code.window(self.base) & !self.code.window(self.base + self.t);
            let valid = self.limit - self.base;
            if valid < 64 {
                w &= (1u64 << valid) - 1;
            }
            self.pending = w;
            self.base += 64;
        }
    }
}

impl From<&Partition> for BoundaryCode {
    fn from(lambda: &Partition) -> Self {
        BoundaryCode::encode(lambda)
    }
}

impl fmt::Display for BoundaryCode {
    /// Walk-order bits; `{:#}` adds a `0b` prefix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str("0b")?;
        }
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoundaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoundaryCode({self:#})")
    }
}

impl FromStr for BoundaryCode {
    type Err = Error;

    /// Parses a bit string such as `0b100101011010`. The result is not
    /// canonicalized.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let digits = s.strip_prefix("0b").unwrap_or(s);
        digits
            .chars()
            .filter(|&c| c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit `{other}` in `{s}`"))),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BoundaryCode::from_bits)
    }
}
