use thiserror::Error;

use crate::format::FormatError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("carrier has {0} elements; at most {max} are supported", max = crate::subset::MAX_CARRIER)]
    CarrierTooLarge(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid element label `{0}`")]
    InvalidLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operation table has {found} cells, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("empty hyperoperation cell at ({x},{y})")]
    EmptyCell { x: String, y: String },
    #[error("subset argument must be non-empty")]
    EmptySubset,
    #[error("invalid membership degree `{0}`: must be a rational in [0,1]")]
    InvalidFuzzyValue(String),
    #[error("membership function covers {found} elements, carrier has {expected}")]
    MembershipShape { expected: usize, found: usize },
    #[error("subset {0} is not a subalgebra")]
    NotSubalgebra(String),
    #[error("map is not a homomorphism: {0}")]
    NotHom(String),
    #[error("map is not a fuzzy homomorphism: {0}")]
    NotFuzzyHom(String),
    #[error("morphisms do not fit together: {0}")]
    Mismatch(String),
    #[error("the blocks do not partition the carrier")]
    NotPartition,
    #[error("{what} of size {size} exceeds the bound {bound}")]
    SizeBound { what: &'static str, size: usize, bound: usize },
    #[error("empty factor list; the nullary product is the terminal object")]
    EmptyProduct,
    #[error("{0}")]
    Format(#[from] FormatError),
    /// A constructed instance contradicts a published claim.
    #[error("claim violated ({claim}): {witness}")]
    ClaimViolation { claim: &'static str, witness: String },
}

impl Error {
    pub fn is_claim_violation(&self) -> bool {
        matches!(self, Error::ClaimViolation { .. })
    }
}
