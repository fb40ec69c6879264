//! Independent oracles and property checks shared by the property tests and
//! the acceptance runner. Each check returns `Err(description)` on the first
//! counterexample.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use snzeros::census::{count_t_cores_with, full_table_scan};
use snzeros::montecarlo::{estimate, Mode, Workers};
use snzeros::sampler::random_partition_with;
use snzeros::{
    character, classify, BoundaryCode, Partition, PartitionCountTable, SampleStream, TermBag,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

pub type Check = Result<(), String>;

/// Murnaghan–Nakayama on beta-sets (first-column hook lengths), peeling
/// every part including 1s. Shares no code with the boundary-word engine.
pub fn naive_character(lambda: &[usize], mu: &[usize]) -> i128 {
    let Some((&t, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let len = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0i128;
    for (k, &b) in beta.iter().enumerate() {
        if b < t || beta.contains(&(b - t)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| b - t < c && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[k] = b - t;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        total += sign * naive_character(&shape, rest);
    }
    total
}

fn fail(msg: String) -> Check {
    Err(msg)
}

pub fn check_round_trip(max_n: usize) -> Check {
    for n in 0..=max_n {
        for lam in Partition::all(n) {
            let code = BoundaryCode::encode(&lam);
            if !code.is_canonical() || code.decode() != lam {
                return fail(format!("round trip failed for ({lam})"));
            }
            if code.count_ones() != lam.largest_part() || code.count_zeros() != lam.len() {
                return fail(format!("bit counts wrong for ({lam})"));
            }
        }
    }
    Ok(())
}

pub fn check_hook_identity(max_n: usize) -> Check {
    for n in 0..=max_n {
        for lam in Partition::all(n) {
            let code = BoundaryCode::encode(&lam);
            if code.hook_lengths() != lam.hook_lengths() {
                return fail(format!("hook multiset mismatch for ({lam})"));
            }
        }
    }
    Ok(())
}

pub fn check_core_equivalence(max_n: usize) -> Check {
    for n in 0..=max_n {
        for lam in Partition::all(n) {
            let code = BoundaryCode::encode(&lam);
            let hooks = lam.hook_lengths();
            for t in 1..=n + 1 {
                let by_code = code.is_core(t);
                let by_hooks = !hooks.any_divisible_by(t);
                let removals = code.rim_hook_removals(t);
                if by_code != by_hooks || by_code != removals.is_empty() {
                    return fail(format!("core tests disagree for ({lam}), t={t}"));
                }
                if let Some((c, _)) = removals.iter().find(|(c, _)| c.decode().n() != n - t) {
                    return fail(format!("removal {c:?} from ({lam}) has wrong weight"));
                }
            }
        }
    }
    Ok(())
}

pub fn check_conjugate_dimension(max_n: usize) -> Check {
    for n in 0..=max_n {
        for lam in Partition::all(n) {
            let code = BoundaryCode::encode(&lam);
            let conj = code.conjugate();
            if conj.decode() != lam.conjugate() || conj.dimension() != lam.dimension() {
                return fail(format!("conjugate dimension mismatch for ({lam})"));
            }
        }
    }
    Ok(())
}

pub fn check_base_case(max_n: usize) -> Check {
    for n in 0..=max_n {
        let ones = Partition::ones(n);
        for lam in Partition::all(n) {
            let chi = character(&lam, &ones).map_err(|e| e.to_string())?;
            if chi != BigInt::from(lam.dimension()) {
                return fail(format!("χ_({lam})(1^{n}) ≠ dim"));
            }
        }
    }
    Ok(())
}

pub fn check_column_orthogonality(max_n: usize) -> Check {
    for n in 1..=max_n {
        let lambdas: Vec<Partition> = Partition::all(n).collect();
        for mu in Partition::all(n) {
            let sum: BigInt = lambdas
                .iter()
                .map(|lam| {
                    let v = character(lam, &mu).unwrap();
                    &v * &v
                })
                .sum();
            if sum != BigInt::from(mu.centralizer_size()) {
                return fail(format!("column ({mu}) of S_{n}: Σχ² = {sum}"));
            }
        }
    }
    Ok(())
}

pub fn check_naive_oracle(max_n: usize) -> Check {
    for n in 0..=max_n {
        for lam in Partition::all(n) {
            for mu in Partition::all(n) {
                let fast = character(&lam, &mu).map_err(|e| e.to_string())?;
                let slow = naive_character(lam.parts(), mu.parts());
                if fast != BigInt::from(slow) {
                    return fail(format!("χ_({lam})({mu}): engine {fast}, oracle {slow}"));
                }
            }
        }
    }
    Ok(())
}

pub fn check_type_soundness(max_n: usize) -> Check {
    for n in 1..=max_n {
        for lam in Partition::all(n) {
            for mu in Partition::all(n) {
                let c = classify(&lam, &mu, false).map_err(|e| e.to_string())?;
                if c.is_type_i && !c.is_type_ii {
                    return fail(format!("type I without type II at ({lam}),({mu})"));
                }
                if c.is_type_ii && !character(&lam, &mu).unwrap().is_zero() {
                    return fail(format!("type II but nonzero at ({lam}),({mu})"));
                }
            }
        }
    }
    Ok(())
}

/// After peeling parts summing to `s`, every shape in the bag has weight `n − s`.
pub fn check_bag_weights(max_n: usize) -> Check {
    for n in 1..=max_n {
        for lam in Partition::all(n) {
            for mu in Partition::all(n) {
                let mut bag = TermBag::singleton(BoundaryCode::encode(&lam));
                let mut peeled = 0;
                for &t in mu.parts().iter().take_while(|&&t| t > 1) {
                    bag = bag.peel(t);
                    peeled += t;
                    if let Some((code, _)) = bag.iter().find(|(c, _)| c.weight() != n - peeled) {
                        return fail(format!("bag key {code:?} has wrong weight"));
                    }
                    if bag.iter().any(|(_, v)| v.is_zero()) {
                        return fail("bag stores a zero coefficient".into());
                    }
                }
            }
        }
    }
    Ok(())
}

/// Pearson chi-square of `samples` draws of partitions of `n` against the
/// uniform distribution, at significance `alpha`.
pub fn check_sampler_uniformity(n: usize, samples: u64, seed: u64, alpha: f64) -> Check {
    let table = PartitionCountTable::build(n).map_err(|e| e.to_string())?;
    let cells: Vec<Partition> = Partition::all(n).collect();
    let mut counts: HashMap<Partition, u64> = cells.iter().map(|p| (p.clone(), 0)).collect();
    for i in 0..samples {
        let lam = random_partition_with(n, &mut SampleStream::new(seed, i).rng(), &table);
        *counts
            .get_mut(&lam)
            .ok_or_else(|| format!("sampled non-partition ({lam})"))? += 1;
    }
    let expected = samples as f64 / cells.len() as f64;
    let stat: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dof = (cells.len() - 1) as f64;
    let critical = ChiSquared::new(dof).unwrap().inverse_cdf(1.0 - alpha);
    if stat > critical {
        return fail(format!(
            "n={n}: chi-square {stat:.2} > {critical:.2} (dof {dof})"
        ));
    }
    Ok(())
}

pub fn check_worker_invariance(n: usize, samples: u64, mode: Mode) -> Check {
    let table = PartitionCountTable::build(n).map_err(|e| e.to_string())?;
    let runs: Vec<_> = [1, 2, 8]
        .iter()
        .map(|&k| estimate(n, samples, 77, mode, &table, Workers::Fixed(k)).unwrap())
        .collect();
    if !runs.windows(2).all(|w| w[0].same_counts(&w[1])) {
        return fail(format!(
            "n={n}: counts differ across worker counts: {runs:?}"
        ));
    }
    Ok(())
}

/// Full-eval estimates within `4·sqrt(p(1−p)/samples)` of the exact densities.
pub fn check_estimator_consistency(max_n: usize, samples: u64) -> Check {
    let table = PartitionCountTable::build(max_n).map_err(|e| e.to_string())?;
    for n in 1..=max_n {
        let exact = full_table_scan(n).map_err(|e| e.to_string())?;
        let total = exact.total_entries.to_f64().unwrap();
        let est = estimate(n, samples, 2024, Mode::FullEval, &table, Workers::Auto)
            .map_err(|e| e.to_string())?;
        let pairs = [
            ("z", est.z_hat().unwrap(), &exact.zero_count),
            ("z_I", est.z1_hat(), &exact.type1_count),
            ("z_II", est.z2_hat(), &exact.type2_count),
        ];
        for (name, hat, count) in pairs {
            let p = count.to_f64().unwrap() / total;
            let tol = 4.0 * (p * (1.0 - p) / samples as f64).sqrt();
            if (hat - p).abs() > tol {
                return fail(format!(
                    "n={n} {name}: estimate {hat:.5}, exact {p:.5}, tol {tol:.5}"
                ));
            }
        }
    }
    Ok(())
}

/// Brute-force t-core counts against the series, for all n ≤ max_n and t ≤ n+1.
pub fn check_core_series(max_n: usize) -> Check {
    let table = PartitionCountTable::build(max_n).map_err(|e| e.to_string())?;
    for n in 0..=max_n {
        for t in 1..=n + 1 {
            let brute = Partition::all(n)
                .filter(|l| !l.hook_lengths().any_divisible_by(t))
                .count();
            if count_t_cores_with(n, t, &table) != BigUint::from(brute) {
                return fail(format!("c_{t}({n}) disagrees with enumeration"));
            }
        }
    }
    Ok(())
}
