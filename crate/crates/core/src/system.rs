//! Progression systems: moduli, residue choices and the coverage multiplicity.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// A validated, ordered list of pairwise-distinct moduli together with their
/// product, the length of the window `[1, product]` on which coverage repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusSystem {
    moduli: Vec<u64>,
    product: BigUint,
    coprime_mode: bool,
}

impl ModulusSystem {
    /// Validates `moduli` in order. With `coprime_mode` off every modulus must
    /// be prime; with it on, pairwise-coprime composites are accepted.
    pub fn new(moduli: &[u64], coprime_mode: bool) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::Empty);
        }
        for (i, &m) in moduli.iter().enumerate() {
            if m < 2 {
                return Err(Error::TooSmall { modulus: m });
            }
            if moduli[..i].contains(&m) {
                return Err(Error::Duplicate { modulus: m });
            }
            if coprime_mode {
                if let Some(&other) = moduli[..i].iter().find(|&&o| o.gcd(&m) != 1) {
                    return Err(Error::NotCoprime {
                        first: other,
                        second: m,
                    });
                }
            } else if !is_prime(m) {
                return Err(Error::NotPrime { modulus: m });
            }
        }
        let product = moduli
            .iter()
            .fold(BigUint::one(), |acc, &m| acc * BigUint::from(m));
        Ok(ModulusSystem {
            moduli: moduli.to_vec(),
            product,
            coprime_mode,
        })
    }

    /// The first `k` primes, the setting of the OEIS sequences.
    pub fn first_primes(k: usize) -> Result<Self> {
        Self::new(&crate::primes::first_primes(k), false)
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn product(&self) -> &BigUint {
        &self.product
    }

    pub fn coprime_mode(&self) -> bool {
        self.coprime_mode
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// The system made of the first `len` moduli. `None` when `len` is 0 or
    /// larger than the system.
    pub fn prefix(&self, len: usize) -> Option<Self> {
        if len == 0 || len > self.moduli.len() {
            return None;
        }
        let moduli = self.moduli[..len].to_vec();
        let product = moduli
            .iter()
            .fold(BigUint::one(), |acc, &m| acc * BigUint::from(m));
        Some(ModulusSystem {
            moduli,
            product,
            coprime_mode: self.coprime_mode,
        })
    }

    /// Number of distinct residue assignments, `Π p_i`.
    pub fn assignment_count(&self) -> &BigUint {
        &self.product
    }
}

/// One residue per modulus, each reduced into `[0, p_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueAssignment {
    residues: Vec<u64>,
}

impl ResidueAssignment {
    /// Reduces every residue modulo its modulus; negative inputs are mapped to
    /// their least nonnegative representative.
    pub fn new(system: &ModulusSystem, residues: &[i128]) -> Result<Self> {
        if residues.len() != system.len() {
            return Err(Error::LengthMismatch {
                expected: system.len(),
                got: residues.len(),
            });
        }
        let residues = residues
            .iter()
            .zip(system.moduli())
            .map(|(&r, &m)| r.rem_euclid(m as i128) as u64)
            .collect();
        Ok(ResidueAssignment { residues })
    }

    /// Residue 0 for every modulus.
    pub fn zeros(system: &ModulusSystem) -> Self {
        ResidueAssignment {
            residues: vec![0; system.len()],
        }
    }

    pub(crate) fn from_reduced(residues: Vec<u64>) -> Self {
        ResidueAssignment { residues }
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

/// Exact counts over `[1, product]`: `available` integers lie in at most one
/// chosen class, `free` in none, `occupied` in two or more.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverageCounts {
    available: BigUint,
    free: BigUint,
    occupied: BigUint,
    product: BigUint,
}

impl CoverageCounts {
    /// Panics if `free > available` or `available > product`.
    pub fn new(available: BigUint, free: BigUint, product: BigUint) -> Self {
        assert!(free <= available, "free count exceeds available count");
        assert!(available <= product, "available count exceeds product");
        let occupied = &product - &available;
        CoverageCounts {
            available,
            free,
            occupied,
            product,
        }
    }

    pub fn available(&self) -> &BigUint {
        &self.available
    }

    pub fn free(&self) -> &BigUint {
        &self.free
    }

    pub fn occupied(&self) -> &BigUint {
        &self.occupied
    }

    pub fn product(&self) -> &BigUint {
        &self.product
    }
}

/// Number of chosen residue classes containing `n`, for `n` in `[1, product]`.
pub fn gamma(system: &ModulusSystem, assignment: &ResidueAssignment, n: &BigUint) -> Result<usize> {
    if n.is_zero() || n > system.product() {
        return Err(Error::OutOfRange {
            n: n.clone(),
            product: system.product().clone(),
        });
    }
    check_assignment(system, assignment)?;
    Ok(system
        .moduli()
        .iter()
        .zip(assignment.residues())
        .filter(|&(&m, &r)| n % m == BigUint::from(r))
        .count())
}

pub(crate) fn check_assignment(system: &ModulusSystem, assignment: &ResidueAssignment) -> Result<()> {
    if assignment.residues().len() != system.len() {
        return Err(Error::LengthMismatch {
            expected: system.len(),
            got: assignment.residues().len(),
        });
    }
    Ok(())
}
