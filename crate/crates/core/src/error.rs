use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("scalar division by zero")]
    DivisionByZero,
    #[error("empty support")]
    EmptySupport,
    #[error("order undefined for zero")]
    OrderOfZero,
    #[error("evaluation point must be nonzero")]
    EvaluateAtZero,
    #[error("not invertible over Laurent polynomials")]
    NotInvertible,
    #[error("zero matrix has no polyphase support")]
    ZeroMatrix,
    #[error("gain scaling factor must be nonzero")]
    ZeroGain,
    #[error("cascade inversion requires an identity base")]
    NonIdentityBase,
    #[error("{0} defined on irreducible cascades")]
    Reducible(&'static str),
    #[error("witness construction collapsed")]
    WitnessCollapsed,
    #[error("peel failed (m={update}, group={group})")]
    PeelFailed { update: u8, group: String },
    #[error("not factorable in structure: {0}")]
    NotFactorable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
