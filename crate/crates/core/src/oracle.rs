//! Brute-force ground truth: mark every covered integer in `[1, product]` for
//! a concrete residue assignment and tally the multiplicities.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counting::{coverage_counts, exact_coverage_histogram, CoverageHistogram};
use crate::error::{Error, Result};
use crate::system::{check_assignment, CoverageCounts, ModulusSystem, ResidueAssignment};

pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 20;
pub const DEFAULT_PRODUCT_LIMIT: u64 = 1_000_000_000;
/// Upper bound on the number of assignments in exhaustive mode.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Mismatching assignments kept in a report; the count is always exact.
const MAX_REPORTED_MISMATCHES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    chunk_size: u64,
    product_limit: BigUint,
    /// Worker threads; 0 uses the global rayon pool.
    threads: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            chunk_size: DEFAULT_CHUNK_SIZE,
            product_limit: BigUint::from(DEFAULT_PRODUCT_LIMIT),
            threads: 0,
        }
    }
}

impl SieveConfig {
    pub fn new(chunk_size: u64, product_limit: BigUint, threads: usize) -> Result<Self> {
        if chunk_size == 0 {
            return Err(Error::InvalidConfig("chunk_size must be at least 1"));
        }
        if product_limit < BigUint::one() {
            return Err(Error::InvalidConfig("product_limit must be at least 1"));
        }
        Ok(SieveConfig {
            chunk_size,
            product_limit,
            threads,
        })
    }

    pub fn chunk_size(&self) -> u64 {
        self.chunk_size
    }

    pub fn product_limit(&self) -> &BigUint {
        &self.product_limit
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    fn window(&self, system: &ModulusSystem) -> Result<u64> {
        let too_large = || Error::ProductTooLarge {
            product: system.product().clone(),
            limit: self.product_limit.clone(),
        };
        if system.product() > &self.product_limit {
            return Err(too_large());
        }
        system.product().to_u64().ok_or_else(too_large)
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        if self.threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

pub fn sieve_histogram(
    system: &ModulusSystem,
    assignment: &ResidueAssignment,
    config: &SieveConfig,
) -> Result<CoverageHistogram> {
    check_assignment(system, assignment)?;
    let window = config.window(system)?;
    let tally = config.install(|| sieve_window(system.moduli(), assignment.residues(), window, config.chunk_size));
    Ok(to_histogram(tally))
}

pub fn oracle_counts(
    system: &ModulusSystem,
    assignment: &ResidueAssignment,
    config: &SieveConfig,
) -> Result<CoverageCounts> {
    Ok(sieve_histogram(system, assignment, config)?.to_counts())
}

/// Tallies gamma over `[1, window]`, one chunk at a time. Chunks are
/// independent and their tallies add, so they run on the current rayon pool.
fn sieve_window(moduli: &[u64], residues: &[u64], window: u64, chunk_size: u64) -> Vec<u64> {
    let k = moduli.len();
    let chunks = window.div_ceil(chunk_size);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = 1 + c * chunk_size;
            let hi = window.min(lo - 1 + chunk_size);
            sieve_chunk(moduli, residues, lo, hi)
        })
        .reduce(|| vec![0u64; k + 1], merge)
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Histogram of gamma over the inclusive range `[lo, hi]`.
fn sieve_chunk(moduli: &[u64], residues: &[u64], lo: u64, hi: u64) -> Vec<u64> {
    let len = (hi - lo + 1) as usize;
    let mut cover = vec![0u8; len];
    for (&p, &r) in moduli.iter().zip(residues) {
        // first n >= lo with n ≡ r (mod p)
        let offset = (r + p - lo % p) % p;
        let mut i = offset as usize;
        let step = p as usize;
        while i < len {
            cover[i] = cover[i].saturating_add(1);
            i += step;
        }
    }
    let mut tally = vec![0u64; moduli.len() + 1];
    for &g in &cover {
        tally[(g as usize).min(moduli.len())] += 1;
    }
    tally
}

fn to_histogram(tally: Vec<u64>) -> CoverageHistogram {
    CoverageHistogram::new(tally.into_iter().map(BigUint::from).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub assignment: ResidueAssignment,
    pub observed: CoverageCounts,
}

/// Outcome of sieving many residue assignments for one system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub exhaustive: bool,
    /// Counts predicted by the recurrences.
    pub expected: CoverageCounts,
    pub expected_histogram: CoverageHistogram,
    pub assignments_tested: u64,
    /// Assignments whose (available, free, occupied) matched `expected`.
    pub agreeing: u64,
    /// Assignments whose full histogram matched `expected_histogram`.
    pub histogram_agreeing: u64,
    pub mismatches: Vec<Mismatch>,
}

impl IndependenceReport {
    pub fn all_agree(&self) -> bool {
        self.agreeing == self.assignments_tested
    }
}

/// Sieves `trials` seeded pseudo-random assignments, or every assignment when
/// `exhaustive`, and compares each against [`coverage_counts`].
pub fn residue_independence_check(
    system: &ModulusSystem,
    trials: u64,
    seed: u64,
    config: &SieveConfig,
    exhaustive: bool,
) -> Result<IndependenceReport> {
    let window = config.window(system)?;
    let assignments: Vec<Vec<u64>> = if exhaustive {
        let count = system.assignment_count();
        if count > &BigUint::from(EXHAUSTIVE_LIMIT) {
            return Err(Error::TooManyAssignments {
                count: count.clone(),
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        all_assignments(system.moduli())
    } else {
        random_assignments(system.moduli(), trials, seed)
    };

    let expected = coverage_counts(system);
    let expected_histogram = exact_coverage_histogram(system)?;
    let mut report = IndependenceReport {
        exhaustive,
        expected,
        expected_histogram,
        assignments_tested: 0,
        agreeing: 0,
        histogram_agreeing: 0,
        mismatches: Vec::new(),
    };
    config.install(|| {
        for residues in assignments {
            let histogram = to_histogram(sieve_window(system.moduli(), &residues, window, config.chunk_size));
            let observed = histogram.to_counts();
            report.assignments_tested += 1;
            if histogram == report.expected_histogram {
                report.histogram_agreeing += 1;
            }
            if observed == report.expected {
                report.agreeing += 1;
            } else if report.mismatches.len() < MAX_REPORTED_MISMATCHES {
                report.mismatches.push(Mismatch {
                    assignment: ResidueAssignment::from_reduced(residues),
                    observed,
                });
            }
        }
    });
    Ok(report)
}

/// Assignment `i` draws each residue uniformly from `[0, p_j)`.
pub fn random_assignments(moduli: &[u64], trials: u64, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| moduli.iter().map(|&p| rng.gen_range(0..p)).collect())
        .collect()
}

/// Every assignment in mixed-radix order, last modulus varying fastest.
fn all_assignments(moduli: &[u64]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = vec![0u64; moduli.len()];
    loop {
        out.push(current.clone());
        let mut i = moduli.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < moduli[i] {
                break;
            }
            current[i] = 0;
        }
    }
}
