//! Exhaustive search spread over a rayon thread pool.
//!
//! The index space `0..2^D` is cut into equal chunks that are scanned
//! independently and merged in index order, so results do not depend on the
//! number of threads.

use rayon::prelude::*;

use kolam_core::engine::check_brute_limit;
use kolam_core::{brute_distribution_range, enumerate_solutions, Assignment, ComponentDistribution, MorseProgram};

fn chunks(sites: usize) -> Vec<std::ops::Range<u64>> {
    let total = 1u64 << sites;
    let parts = 1u64 << sites.min(12);
    let step = total / parts;
    (0..parts).map(|k| k * step..(k + 1) * step).collect()
}

pub fn par_brute_distribution(program: &MorseProgram, limit: usize) -> kolam_core::Result<ComponentDistribution> {
    let d = check_brute_limit(program, limit)?;
    chunks(d).into_par_iter().map(|range| brute_distribution_range(program, range)).try_reduce(
        ComponentDistribution::default,
        |mut acc, part| {
            acc.merge(&part);
            Ok(acc)
        },
    )
}

/// All single-curve assignments in ascending index order.
pub fn par_enumerate_solutions(program: &MorseProgram, limit: usize) -> kolam_core::Result<Vec<Assignment>> {
    let d = check_brute_limit(program, limit)?;
    let parts: Vec<Vec<Assignment>> = chunks(d)
        .into_par_iter()
        .map(|range| enumerate_solutions(program, limit).map(|s| s.within(range).collect()))
        .collect::<kolam_core::Result<_>>()?;
    Ok(parts.into_iter().flatten().collect())
}

/// Runs `f` on a pool of `threads` workers, or on the global pool for `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) => rayon::ThreadPoolBuilder::new().num_threads(k).build().expect("thread pool").install(f),
        None => f(),
    }
}
