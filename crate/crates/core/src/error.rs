use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    NotPrime(u64),
    EvenModulus(u64),
    /// An enumeration over the field would exceed the stated bound.
    FieldTooLarge { elements: u64, limit: u64 },
    /// `floor(sqrt(m)) - 1` halves to zero, so the additive sets are empty.
    ModulusTooSmall(u64),
    /// A pairwise sumset is smaller than the product of the set sizes.
    SumsetDeficient { i: usize, j: usize, size: usize, expected: usize },
    TooLargeToMaterialize { evaluations: u128, limit: u128 },
    SamePart { part: usize },
    BadVertexId(u32),
    DuplicatePairs,
    BudgetExceeded { needed: u128, budget: u128 },
    TooManyOrbits { orbits: u128, limit: u128 },
    /// Generic size guard for brute-force routines.
    TooLarge { what: &'static str, size: u128, limit: u128 },
    /// The pattern has a single edge, so the deletion exponent is undefined.
    DegenerateTarget,
    UnsupportedSizes,
    DuplicateEdge,
    /// An edge has repeated vertices, the wrong arity, or an id outside `0..n`.
    InvalidEdge,
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::EvenModulus(p) => write!(f, "modulus {p} is even; only odd primes are supported"),
            Error::FieldTooLarge { elements, limit } => {
                write!(f, "field enumeration of {elements} elements exceeds limit {limit}")
            }
            Error::ModulusTooSmall(m) => write!(f, "modulus {m} too small: additive sets are empty"),
            Error::SumsetDeficient { i, j, size, expected } => {
                write!(f, "|S{} + S{}| = {size}, expected {expected}", i + 1, j + 1)
            }
            Error::TooLargeToMaterialize { evaluations, limit } => write!(
                f,
                "materialization needs {evaluations} triple evaluations, limit is {limit}"
            ),
            Error::SamePart { part } => write!(f, "two vertices lie in part {part}"),
            Error::BadVertexId(v) => write!(f, "vertex id {v} out of range"),
            Error::DuplicatePairs => write!(f, "pairs are not pairwise distinct"),
            Error::BudgetExceeded { needed, budget } => {
                write!(f, "work of {needed} configurations exceeds budget {budget}")
            }
            Error::TooManyOrbits { orbits, limit } => {
                write!(f, "{orbits} coefficient orbits exceed limit {limit}")
            }
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what} = {size} exceeds limit {limit}")
            }
            Error::DegenerateTarget => write!(f, "pattern has fewer than two edges"),
            Error::UnsupportedSizes => write!(f, "unsupported part sizes"),
            Error::DuplicateEdge => write!(f, "duplicate edge"),
            Error::InvalidEdge => write!(f, "invalid edge"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
