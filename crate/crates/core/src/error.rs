use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum CaError {
    #[error("malformed group spec: {0}")]
    MalformedSpec(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("malformed local rule: {0}")]
    MalformedRule(String),

    #[error("local rule table has wrong length: expected {expected}, got {got}")]
    BadTableLength { expected: usize, got: usize },

    #[error("transformation is not G-equivariant")]
    NotEquivariant,

    #[error("stabilizer of the source is not dominated by any conjugate of the target stabilizer")]
    StabilizerNotDominated,

    #[error("source and target lie in the same orbit")]
    SameOrbit,

    #[error("stabilizer conjugacy classes differ")]
    ClassMismatch,

    #[error("operation requires an abelian group")]
    NotAbelian,

    #[error("state space too large: needs {needed}, guard is {guard}")]
    SpaceTooLarge { needed: u128, guard: u128 },

    #[error("closure cap of {cap} elements exceeded")]
    CapExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, CaError>;

impl CaError {
    /// CLI / FFI exit-code contract: 1 = input, 2 = guard, 3 = internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CaError::MalformedSpec(_)
            | CaError::NotAGroup(_)
            | CaError::MalformedRule(_)
            | CaError::BadTableLength { .. }
            | CaError::NotAbelian
            | CaError::SameOrbit
            | CaError::ClassMismatch
            | CaError::StabilizerNotDominated
            | CaError::NotEquivariant => 1,
            CaError::SpaceTooLarge { .. } | CaError::CapExceeded { .. } => 2,
        }
    }
}
