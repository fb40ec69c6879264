//! Character values by the Murnaghan–Nakayama rule on boundary words.
//!
//! The recursion keeps an expansion front: a map from shapes (as canonical
//! boundary words) to integer coefficients. Each part of the cycle type is
//! peeled off in turn by removing rim hooks of that size from every shape in
//! the front. Once only parts equal to 1 remain, each surviving shape
//! contributes its coefficient times its degree from the hook-length formula.

use std::collections::hash_map::Entry;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};
use rustc_hash::FxHashMap;

use crate::code::BoundaryCode;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Exact character value.
pub type CharValue = BigInt;

/// Expansion front of the recursion: canonical shape → nonzero coefficient.
#[derive(Clone, Debug, Default)]
pub struct TermBag {
    terms: FxHashMap<BoundaryCode, CharValue>,
}

impl TermBag {
    /// The bag `{ code: 1 }`.
    pub fn singleton(code: BoundaryCode) -> Self {
        let mut terms = FxHashMap::default();
        terms.insert(code.normalized(), BigInt::from(1));
        TermBag { terms }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BoundaryCode, &CharValue)> {
        self.terms.iter()
    }

    /// Replaces every shape by its signed rim-hook removals of size `t`,
    /// merging equal shapes and dropping cancelled terms.
    pub fn peel(self, t: usize) -> TermBag {
        let mut next: FxHashMap<BoundaryCode, CharValue> =
            FxHashMap::with_capacity_and_hasher(self.terms.len() * 2, Default::default());
        for (code, coeff) in self.terms {
            code.for_each_rim_hook_removal(t, |shape, sign| match next.entry(shape) {
                Entry::Occupied(mut e) => {
                    if sign > 0 {
                        *e.get_mut() += &coeff;
                    } else {
                        *e.get_mut() -= &coeff;
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(if sign > 0 { coeff.clone() } else { -&coeff });
                }
            });
        }
        next.retain(|_, c| !c.is_zero());
        TermBag { terms: next }
    }

    /// `Σ coeff · dim(shape)`: the base case once only 1-cycles remain.
    pub fn finish_with_dimensions(&self) -> CharValue {
        let mut total = BigInt::zero();
        for (code, coeff) in &self.terms {
            total += coeff * BigInt::from_biguint(Sign::Plus, code.dimension());
        }
        total
    }
}

/// χ_λ(μ).
pub fn character(lambda: &Partition, mu: &Partition) -> Result<CharValue> {
    check_weights(lambda, mu)?;
    Ok(character_of_code(&BoundaryCode::encode(lambda), mu.parts()))
}

/// χ at an already-encoded shape. `cycle_type` must be weakly decreasing
/// and sum to the weight of `code`.
pub fn character_of_code(code: &BoundaryCode, cycle_type: &[usize]) -> CharValue {
    let mut bag = TermBag::singleton(code.clone());
    for &t in cycle_type {
        if t == 1 {
            break;
        }
        bag = bag.peel(t);
        if bag.is_empty() {
            return BigInt::zero();
        }
    }
    bag.finish_with_dimensions()
}

fn check_weights(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.n() != mu.n() {
        return Err(Error::WeightMismatch {
            lambda: lambda.n(),
            mu: mu.n(),
        });
    }
    Ok(())
}

/// Which vanishing criteria a table entry satisfies.
///
/// `is_zero` is exact when `evaluated` is set; otherwise it is the type-II
/// lower bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZeroClass {
    pub is_zero: bool,
    pub is_type_i: bool,
    pub is_type_ii: bool,
    pub evaluated: bool,
}

/// Classifies (λ, μ): type I if λ is a μ₁-core, type II if λ is a
/// μ_k-core for some part μ_k. With `evaluate`, the character is computed
/// when neither core test settles it.
pub fn classify(lambda: &Partition, mu: &Partition, evaluate: bool) -> Result<ZeroClass> {
    check_weights(lambda, mu)?;
    Ok(classify_code(&BoundaryCode::encode(lambda), mu, evaluate))
}

/// [`classify`] for an already-encoded λ of the right weight.
pub fn classify_code(code: &BoundaryCode, mu: &Partition, evaluate: bool) -> ZeroClass {
    let is_type_i = !mu.is_empty() && code.is_core(mu.largest_part());
    let is_type_ii = is_type_i || mu.distinct_parts().skip(1).any(|t| code.is_core(t));
    let is_zero = if is_type_ii || !evaluate {
        is_type_ii
    } else {
        character_of_code(code, mu.parts()).is_zero()
    };
    ZeroClass {
        is_zero,
        is_type_i,
        is_type_ii,
        evaluated: evaluate,
    }
}

/// Upper bound check |χ_λ(μ)| ≤ χ_λ(1ⁿ).
pub fn within_degree(value: &CharValue, lambda: &Partition) -> bool {
    value.abs().magnitude() <= &lambda.dimension()
}
