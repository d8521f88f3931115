use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("group too large for desk scale: more than {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("rack of size {size} exceeds the dense table cap {cap}")]
    RackTooLarge { size: usize, cap: usize },

    #[error("matrix with {rows} rows exceeds the row cap {cap}")]
    MatrixTooLarge { rows: usize, cap: usize },

    #[error("symmetrizer oracle limited to degree {cap}, got {degree}")]
    OracleDegree { degree: usize, cap: usize },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("invalid rack: {0}")]
    InvalidRack(String),

    #[error("invalid cocycle: identity fails at (x, y, z) = ({x}, {y}, {z})")]
    CocycleViolation { x: usize, y: usize, z: usize },

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("subset is not closed under the rack product")]
    NotClosed,

    #[error("subrack is not abelian")]
    NotAbelian,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
