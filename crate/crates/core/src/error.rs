use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invariant factor {0} is not positive")]
    NonPositiveFactor(i64),
    #[error("element {element} is not valid in a group with invariant factors {factors:?}")]
    InvalidElement { element: String, factors: Vec<u64> },
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("parity bit set on generator {generator} of odd order {order}")]
    IllDefinedParity { generator: usize, order: u64 },
    #[error("image of generator {generator} does not respect its order {order}")]
    InvalidHom { generator: usize, order: u64 },
    #[error("operands live over different groups")]
    GroupMismatch,
    #[error("element has odd order {0}")]
    OddOrder(u64),
    #[error("zero element has no meaningful zero-divisor test")]
    ZeroElement,
    #[error("residue {residue} is not valid modulo {modulus}")]
    BadResidue { modulus: i64, residue: i64 },
    #[error("inconsistent complex: {0}")]
    InconsistentComplex(String),
    #[error("input exceeds enumeration guardrails: {0}")]
    TooLarge(String),
    #[error("series truncated at order {have}, but order {needed} is required")]
    OrderTooSmall { needed: usize, have: usize },
    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
