use thiserror::Error;

use crate::subset::SubsetMask;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,
    #[error("ground set of size {n} exceeds the supported maximum of {max}")]
    GroundSetTooLarge { n: usize, max: usize },
    #[error("basis family is empty")]
    EmptyBasisFamily,
    #[error("set {set} is not contained in [{n}]")]
    ElementOutOfRange { set: SubsetMask, n: usize },
    #[error("bases {first} and {other} have different cardinalities")]
    UnequalCardinality { first: SubsetMask, other: SubsetMask },
    #[error("basis exchange fails: removing {element} from {first} admits no replacement from {second}")]
    ExchangeAxiomViolation {
        first: SubsetMask,
        second: SubsetMask,
        element: usize,
    },
    #[error("truncation rank {requested} outside 1..={rank}")]
    InvalidTruncationRank { requested: usize, rank: usize },
    #[error("uniform matroid U({k},{n}) needs 0 <= k <= n and n >= 1")]
    InvalidUniformParams { k: usize, n: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("edge {edge} uses vertex {vertex}, but the graph has {vertices} vertices")]
    InvalidEdge { edge: usize, vertex: usize, vertices: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("cannot add decompositions over different families or ground sets")]
    FamilyMismatch,
    #[error("profile kind does not match the requested transform")]
    KindMismatch,
    #[error("profile value on the empty set must be 0")]
    NonzeroEmptyValue,
    #[error("profile has {got} values, expected 2^{n}")]
    BadProfileLength { got: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VolumeError {
    #[error("matroid is disconnected")]
    DisconnectedMatroid,
    #[error("matroid has loops {loops}, so its truncation flag polytope is not (n-1)-dimensional")]
    LoopsInFlagMatroid { loops: SubsetMask },
    #[error("normalized volume {volume} is not an integer")]
    NonIntegerNormalizedVolume { volume: String },
    #[error("tuple length {got} does not match the ambient dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("decomposition is empty over a zero-dimensional ambient space")]
    EmptyGroundSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("point set is empty or zero-dimensional")]
    DegenerateInput,
    #[error("expected affine dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points live in different ambient dimensions")]
    AmbientMismatch,
    #[error("points do not lie in a hyperplane of constant coordinate sum")]
    NotInSumHyperplane,
}
