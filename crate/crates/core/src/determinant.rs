//! The two structured matrix families and three ways to evaluate their
//! determinants: fraction-free elimination, cofactor expansion, and the O(k)
//! recurrences that exploit the all-ones structure.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::system::ModulusSystem;

/// Largest dimension accepted by [`det_laplace`].
pub const LAPLACE_MAX_DIMENSION: usize = 8;

/// Dense square matrix of big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    dimension: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(dimension: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dimension == 0 || entries.len() != dimension * dimension {
            return Err(Error::NotSquare {
                expected: dimension * dimension,
                got: entries.len(),
            });
        }
        Ok(IntegerMatrix { dimension, entries })
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let dimension = rows.len();
        let entries: Vec<BigInt> = rows.iter().flatten().map(|&v| v.into()).collect();
        if rows.iter().any(|r| r.len() != dimension) {
            return Err(Error::NotSquare {
                expected: dimension * dimension,
                got: entries.len(),
            });
        }
        Self::new(dimension, entries)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dimension + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dimension)
    }
}

/// k×k matrix with the moduli on the diagonal and ones elsewhere.
pub fn build_available_matrix(system: &ModulusSystem) -> IntegerMatrix {
    let k = system.len();
    let mut entries = vec![BigInt::one(); k * k];
    for (i, &p) in system.moduli().iter().enumerate() {
        entries[i * k + i] = BigInt::from(p);
    }
    IntegerMatrix {
        dimension: k,
        entries,
    }
}

/// (k+1)×(k+1) bordered matrix: an all-ones first row, then row `i` carries
/// `p_i` in column `i - 1`; every other entry, including the last column, is 1.
pub fn build_free_matrix(system: &ModulusSystem) -> IntegerMatrix {
    let n = system.len() + 1;
    let mut entries = vec![BigInt::one(); n * n];
    for (i, &p) in system.moduli().iter().enumerate() {
        entries[(i + 1) * n + i] = BigInt::from(p);
    }
    IntegerMatrix {
        dimension: n,
        entries,
    }
}

/// Exact determinant by Bareiss fraction-free elimination. Every division in
/// the inner update is exact. Rows are swapped when a pivot vanishes.
pub fn det_bareiss(matrix: &IntegerMatrix) -> BigInt {
    let n = matrix.dimension;
    let mut a: Vec<Vec<BigInt>> = matrix.rows().map(|r| r.to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Cofactor expansion along the last row. Exponential; only for dimension
/// up to [`LAPLACE_MAX_DIMENSION`].
pub fn det_laplace(matrix: &IntegerMatrix) -> Result<BigInt> {
    if matrix.dimension > LAPLACE_MAX_DIMENSION {
        return Err(Error::DimensionTooLarge {
            dimension: matrix.dimension,
            max: LAPLACE_MAX_DIMENSION,
        });
    }
    let rows: Vec<usize> = (0..matrix.dimension).collect();
    let cols = rows.clone();
    Ok(expand(matrix, &rows, &cols))
}

fn expand(matrix: &IntegerMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
    match rows.len() {
        1 => return matrix.get(rows[0], cols[0]).clone(),
        2 => {
            return matrix.get(rows[0], cols[0]) * matrix.get(rows[1], cols[1])
                - matrix.get(rows[0], cols[1]) * matrix.get(rows[1], cols[0])
        }
        _ => {}
    }
    let last = rows.len() - 1;
    let row = rows[last];
    let minor_rows = &rows[..last];
    let mut total = BigInt::zero();
    let mut minor_cols = Vec::with_capacity(last);
    for (j, &col) in cols.iter().enumerate() {
        let entry = matrix.get(row, col);
        if entry.is_zero() {
            continue;
        }
        minor_cols.clear();
        minor_cols.extend(cols.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &c)| c));
        let term = entry * expand(matrix, minor_rows, &minor_cols);
        // sign of position (last, j)
        if (last + j).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// A_k by the recurrence `A_t = F_{t-1} + (p_t - 1) A_{t-1}` with `A_1 = p_1`,
/// `F_1 = p_1 - 1`, taken over the moduli in the order given.
pub fn available_det(system: &ModulusSystem) -> BigUint {
    let (available, _) = recurrence_pair(system.moduli());
    available
}

/// F_k = Π (p_i - 1), the free count, as a nonnegative integer. The raw
/// bordered determinant equals `(-1)^k F_k`.
pub fn free_det(system: &ModulusSystem) -> BigUint {
    let (_, free) = recurrence_pair(system.moduli());
    free
}

/// `(-1)^k` times the determinant of the bordered matrix, converted back to a
/// count. Used by the elimination and expansion routes.
pub fn signed_free_count(system: &ModulusSystem, raw_det: &BigInt) -> BigInt {
    if system.len().is_multiple_of(2) {
        raw_det.clone()
    } else {
        -raw_det
    }
}

/// Runs both recurrences together, yielding `(A_k, F_k)` after each modulus.
pub fn recurrence_steps(moduli: &[u64]) -> impl Iterator<Item = (BigUint, BigUint)> + '_ {
    let mut state: Option<(BigUint, BigUint)> = None;
    moduli.iter().map(move |&p| {
        let p = BigUint::from(p);
        let pm1 = &p - 1u32;
        let next = match state.take() {
            None => (p, pm1),
            Some((available, free)) => (&free + &pm1 * available, free * pm1),
        };
        state = Some(next.clone());
        next
    })
}

fn recurrence_pair(moduli: &[u64]) -> (BigUint, BigUint) {
    recurrence_steps(moduli)
        .last()
        .unwrap_or_else(|| (BigUint::one(), BigUint::one()))
}
