use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero vector has no primitive part")]
    ZeroVector,
    #[error("the inequality system is infeasible")]
    EmptyPolytope,
    #[error("the inequality system is unbounded")]
    Unbounded,
    #[error("singular matrix")]
    Singular,
    #[error("point is not in the interior: {0}")]
    NotInterior(String),
    #[error("not a lattice polytope: {0}")]
    NotLattice(String),
    #[error("mutation not well defined: {0}")]
    NotWellDefined(String),
    #[error("image is not convex (volume defect {defect})")]
    NonConvexImage { defect: String },
    #[error("index {0} is frozen or out of range")]
    Frozen(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("poset is not pure")]
    NotPure,
    #[error("trace step {step}: {cause}")]
    TraceStep { step: usize, cause: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
