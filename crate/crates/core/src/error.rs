use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group too large (more than {cap} elements)")]
    GroupTooLarge { cap: usize },
    #[error("enumeration too large (group order {order} exceeds cap {cap})")]
    EnumerationTooLarge { order: usize, cap: usize },
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),
    #[error("odd primes only (got p = {0})")]
    OddPrimesOnly(u64),
    #[error("not a p-group: order {order} is not a power of {prime}")]
    NotPGroup { order: usize, prime: u64 },
    #[error("invalid element index {index} (group order {order})")]
    InvalidElement { index: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("not normal")]
    NotNormal,
    #[error("not a group isomorphism: {0}")]
    NotIsomorphism(String),
    #[error("not a group homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid biset: {0}")]
    InvalidBiset(String),
    #[error("transfer undefined: not left free")]
    NotLeftFree,
    #[error("not genetic: {0}")]
    NotGenetic(String),
    #[error("not a genetic basis: {0}")]
    NotGeneticBasis(String),
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
