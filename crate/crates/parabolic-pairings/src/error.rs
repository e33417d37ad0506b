use thiserror::Error;

/// Engine errors; the message names the operation that raised it.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rootsys: unsupported Lie type {0}")]
    UnsupportedType(String),
    #[error("rootsys: weights belong to different Lie types ({0} vs {1})")]
    TypeMismatch(String, String),
    #[error("rootsys: not a root: {0}")]
    NotARoot(String),
    #[error("weyl: simple root index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("weyl: Weyl group of order {0} exceeds the enumeration cap {1}")]
    OrbitTooLarge(u128, u128),
    #[error("weyl: root {0} does not lie in g_-1")]
    NotInGminus1(String),
    #[error("parabolic: parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("parabolic: rank mismatch, expected {expected} nodes, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("parabolic: the grading is not |1|-graded (k0 = {0})")]
    NotOneGraded(usize),
    #[error("repthy: dimension {0} exceeds the cap {1}")]
    DimensionCap(u128, u128),
    #[error("repthy: weight {0} is not dominant")]
    NotDominant(String),
    #[error("repthy: family {0} unsupported for this operation")]
    FamilyUnsupported(String),
    #[error("central: operation requires {0}")]
    WrongFamily(String),
    #[error("pairings: target {0} does not occur in g1 (x) V (x) W")]
    TargetAbsent(String),
    #[error("pairings: root {0} is not extremal")]
    NotExtremal(String),
    #[error("pairings: roots {0} and {1} lie in different Weyl orbits")]
    OrbitMismatch(String, String),
    #[error("pairings: dominance fails at step j = {0}")]
    DominanceFails(usize),
    #[error("pairings: unsupported geometry {0}")]
    UnsupportedGeometry(String),
    #[error("oracle: degree {0} exceeds the cap {1}")]
    DegreeCap(usize, usize),
    #[error("oracle: degenerate weights q = {0}, q' = {1} for order {2}")]
    DegenerateWeights(String, String, usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
