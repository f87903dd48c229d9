use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus list is empty")]
    Empty,
    #[error("modulus {modulus} is smaller than 2")]
    TooSmall { modulus: u64 },
    #[error("modulus {modulus} appears more than once")]
    Duplicate { modulus: u64 },
    #[error("modulus {modulus} is not prime")]
    NotPrime { modulus: u64 },
    #[error("moduli {first} and {second} are not coprime")]
    NotCoprime { first: u64, second: u64 },
    #[error("expected {expected} residues, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("n = {n} lies outside [1, {product}]")]
    OutOfRange { n: BigUint, product: BigUint },
    #[error("matrix of dimension {dimension} exceeds the cofactor-expansion limit {max}")]
    DimensionTooLarge { dimension: usize, max: usize },
    #[error("matrix needs {expected} entries, got {got}")]
    NotSquare { expected: usize, got: usize },
    #[error("{k} moduli exceed the histogram limit {max}")]
    KTooLarge { k: usize, max: usize },
    #[error("product {product} exceeds the sieve limit {limit}")]
    ProductTooLarge { product: BigUint, limit: BigUint },
    #[error("{count} residue assignments exceed the exhaustive limit {limit}")]
    TooManyAssignments { count: BigUint, limit: u64 },
    #[error("invalid sieve configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
