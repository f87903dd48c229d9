//! Counting free, available and occupied integers without sieving, plus the
//! OEIS sequences over the first primes.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::determinant::{available_det, free_det, recurrence_steps};
use crate::error::{Error, Result};
use crate::primes::first_primes;
use crate::system::{CoverageCounts, ModulusSystem};

/// Largest system accepted by [`exact_coverage_histogram`].
pub const HISTOGRAM_MAX_K: usize = 25;

/// `counts[j]` is the number of `n` in `[1, product]` with `gamma(n) = j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageHistogram {
    counts: Vec<BigUint>,
}

impl CoverageHistogram {
    pub fn new(counts: Vec<BigUint>) -> Self {
        CoverageHistogram { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `Σ j * counts[j]`, the total number of (integer, class) incidences.
    pub fn weighted_total(&self) -> BigUint {
        self.counts
            .iter()
            .enumerate()
            .map(|(j, c)| c * BigUint::from(j))
            .sum()
    }

    pub fn to_counts(&self) -> CoverageCounts {
        let free = self.counts.first().cloned().unwrap_or_default();
        let available = &free + self.counts.get(1).cloned().unwrap_or_default();
        CoverageCounts::new(available, free, self.total())
    }
}

/// Counts from the determinant recurrences. They do not depend on the residues.
pub fn coverage_counts(system: &ModulusSystem) -> CoverageCounts {
    CoverageCounts::new(
        available_det(system),
        free_det(system),
        system.product().clone(),
    )
}

/// Iterates `occ(t) = P_{t-1} + (p_t - 1) occ(t-1) - free(t-1)` from
/// `occ(1) = 0`, tracking `free` and the running product alongside.
pub fn occ_recurrence(system: &ModulusSystem) -> BigUint {
    let mut moduli = system.moduli().iter();
    let first = BigUint::from(*moduli.next().expect("validated system is non-empty"));
    let mut occupied = BigUint::zero();
    let mut free = &first - 1u32;
    let mut product = first;
    for &p in moduli {
        let p = BigUint::from(p);
        let pm1 = &p - 1u32;
        occupied = &product + &pm1 * &occupied - &free;
        free *= &pm1;
        product *= p;
    }
    occupied
}

/// Histogram of coverage multiplicities, valid for every residue assignment.
///
/// By the CRT, the integers covered by exactly the classes in a set `S` number
/// `Π_{i∉S}(p_i - 1)`, so `counts[j]` is the coefficient of `x^j` in
/// `Π_i ((p_i - 1) + x)`. Expanding the product costs O(k²).
pub fn exact_coverage_histogram(system: &ModulusSystem) -> Result<CoverageHistogram> {
    let k = system.len();
    if k > HISTOGRAM_MAX_K {
        return Err(Error::KTooLarge {
            k,
            max: HISTOGRAM_MAX_K,
        });
    }
    let mut coeffs = vec![BigUint::one()];
    for &p in system.moduli() {
        let c = BigUint::from(p - 1);
        let mut next = vec![BigUint::zero(); coeffs.len() + 1];
        for (j, a) in coeffs.iter().enumerate() {
            next[j] += a * &c;
            next[j + 1] += a;
        }
        coeffs = next;
    }
    Ok(CoverageHistogram::new(coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceId {
    /// Available counts over the first primes.
    A067549,
    /// Free counts over the first primes.
    A005867,
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::A067549 => f.write_str("A067549"),
            SequenceId::A005867 => f.write_str("A005867"),
        }
    }
}

impl std::str::FromStr for SequenceId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A067549" => Ok(SequenceId::A067549),
            "A005867" => Ok(SequenceId::A005867),
            other => Err(format!("unknown sequence {other:?}")),
        }
    }
}

/// Terms `(index, value)` with indices consecutive from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    pub name: SequenceId,
    pub terms: Vec<(u64, BigUint)>,
}

pub fn oeis_a067549(n_terms: usize) -> SequenceTable {
    generate(SequenceId::A067549, n_terms)
}

pub fn oeis_a005867(n_terms: usize) -> SequenceTable {
    generate(SequenceId::A005867, n_terms)
}

pub fn generate(name: SequenceId, n_terms: usize) -> SequenceTable {
    let primes = first_primes(n_terms);
    let terms = recurrence_steps(&primes)
        .enumerate()
        .map(|(i, (available, free))| {
            let value = match name {
                SequenceId::A067549 => available,
                SequenceId::A005867 => free,
            };
            (i as u64 + 1, value)
        })
        .collect();
    SequenceTable { name, terms }
}
