//! Exact counts of the integers in `[1, P]` that lie in none, at most one, or
//! at least two of `k` residue classes modulo distinct primes `p_1..p_k`, where
//! `P = p_1 * ... * p_k`.
//!
//! The counts do not depend on which residue classes are chosen. Three routes
//! compute them and are checked against each other:
//!
//! - [`determinant`]: determinants of a ones matrix with the primes on the
//!   diagonal (available count) and of a bordered variant (free count), by
//!   fraction-free elimination, cofactor expansion, or an O(k) recurrence;
//! - [`counting`]: the counting recurrences and the full multiplicity histogram;
//! - [`oracle`]: a chunked sieve over the window for concrete residues.

pub mod bfile;
pub mod counting;
pub mod determinant;
pub mod error;
pub mod oracle;
pub mod parse;
pub mod primes;
pub mod system;

pub use counting::{
    coverage_counts, exact_coverage_histogram, oeis_a005867, oeis_a067549, occ_recurrence,
    CoverageHistogram, SequenceId, SequenceTable,
};
pub use determinant::{
    available_det, build_available_matrix, build_free_matrix, det_bareiss, det_laplace, free_det,
    IntegerMatrix,
};
pub use error::{Error, Result};
pub use oracle::{
    oracle_counts, residue_independence_check, sieve_histogram, IndependenceReport, SieveConfig,
};
pub use system::{gamma, CoverageCounts, ModulusSystem, ResidueAssignment};
