use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is not coprime to {modulus}")]
    NotCoprime { value: u64, modulus: u64 },

    #[error("invalid metacyclic parameters: {0}")]
    Metacyclic(#[from] MetacyclicError),

    #[error("parse error at position {position} near `{token}`: {message}")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("unsupported at this scale: {what} (order {order}, limit {limit})")]
    Scale {
        what: String,
        order: usize,
        limit: usize,
    },

    #[error("resource cap exceeded: {what} grew past {cap} elements")]
    Resource { what: String, cap: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}

/// Distinct reasons a tuple `(p, a, q, b, r)` does not define a group.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetacyclicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("kernel and complement primes coincide ({0})")]
    EqualPrimes(u64),
    #[error("exponents must be at least 1 (a = {a}, b = {b})")]
    Exponent { a: u32, b: u32 },
    #[error("r = {r} outside 2 <= r < {kernel_order}")]
    RRange { r: u64, kernel_order: u64 },
    #[error("p = {p} divides r = {r}")]
    PDividesR { p: u64, r: u64 },
    #[error("r^{complement_order} = {residue} (mod {kernel_order}), not 1")]
    NotWellDefined {
        complement_order: u64,
        kernel_order: u64,
        residue: u64,
    },
    #[error("group order p^a * q^b overflows")]
    Overflow,
}
