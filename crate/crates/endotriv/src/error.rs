use thiserror::Error;

/// Errors surfaced by the library. Budget variants map to guard limits that
/// keep desk-scale inputs from exploding; the rest are input validation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds cap of {cap} (reached at least {reached})")]
    OrderCapExceeded { cap: usize, reached: usize },
    #[error("subgroup count exceeds cap of {0}")]
    SubgroupCapExceeded(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal in the chosen overgroup")]
    NotNormal,
    #[error("subgroup is not contained in the chosen overgroup")]
    NotContained,
    #[error("expected a p-group for this operation")]
    NotPGroup,
    #[error("expected a cyclic p-group")]
    NotCyclicPGroup,
    #[error("expected a normal p-subgroup")]
    NotNormalPSubgroup,
    #[error("tensor budget exceeded: predicted {predicted} basis points > budget {budget}")]
    BudgetExceeded { predicted: u128, budget: usize },
    #[error("unit enumeration guard: {0} subgroup classes > 20")]
    UnitGuardExceeded(usize),
    #[error("differentials do not compose to zero")]
    NonComplex,
    #[error("vector length {got} does not match class count {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("malformed group file: {0}")]
    GroupFile(String),
    #[error("unknown builtin group '{0}'")]
    UnknownBuiltin(String),
}

pub type Result<T> = std::result::Result<T, Error>;
