use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {requested} exceeds the configured limit {limit}")]
    ConductorLimit { requested: u32, limit: u32 },
    #[error("rational overflow in exact arithmetic")]
    Overflow,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("operation not supported for {0} scalars")]
    UnsupportedScalarKind(&'static str),
    #[error("matrix is not an involution")]
    NotAnInvolution,
    #[error("incompatible input: {0}")]
    SpecMismatch(String),
    #[error("representative is not in the group")]
    NotInGroup,
    #[error("the set does not contain the origin")]
    MissingOrigin,
    #[error("the set is not antipodal")]
    NotAntipodal,
    #[error("subgroup rank {rank} exceeds the materialization bound {limit}")]
    RankLimit { rank: usize, limit: usize },
    #[error("subgroup does not contain the distinguished involution")]
    MissingThetaBar,
    #[error("point is not fixed by the symmetry at the origin")]
    NotFixed,
    #[error("fiber representatives are required in oracle mode")]
    FiberDataRequired,
    #[error("pool size exceeds the cap {cap}")]
    PoolLimit { cap: usize },
    #[error("set is not pool-maximal")]
    NotMaximal,
    #[error("no canonical set recipe for {0}")]
    NoRecipe(String),
    #[error("unknown space id {id:?}; valid ids: {valid}")]
    UnknownSpace { id: String, valid: String },
    #[error("witness construction failed: {0}")]
    WitnessUnavailable(String),
    #[error("malformed input: {0}")]
    Parse(String),
}
