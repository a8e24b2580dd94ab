use thiserror::Error;

/// Every domain failure the library reports.
///
/// Node indices carried in variants are 1-based, matching how nodes are
/// presented to users.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square and non-empty (got {rows} rows, row {bad_row} has {cols} entries)")]
    NotSquare { rows: usize, bad_row: usize, cols: usize },
    #[error("matrix is empty")]
    EmptyMatrix,
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("diagonal entry a[{0}][{0}] = {1}, expected 2")]
    DiagonalNotTwo(usize, i64),
    #[error("off-diagonal entry a[{i}][{j}] = {value} is positive")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("zero pattern is not symmetric: a[{i}][{j}] = {aij} but a[{j}][{i}] = {aji}")]
    ZeroPatternAsymmetric { i: usize, j: usize, aij: i64, aji: i64 },
    #[error("matrix is not symmetrizable: cycle condition fails on edge ({i}, {j})")]
    NotSymmetrizable { i: usize, j: usize },
    #[error("node {node} is out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("series caps differ ({0} vs {1})")]
    CapMismatch(u32, u32),
    #[error("series variable counts differ ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("constant term must be 0")]
    ConstantTermNotZero,

    #[error("pairing at node {node} is {value}, must be a non-negative integer")]
    NegativeIntegrability { node: usize, value: i64 },
    #[error("pairings must be given exactly on the node set (node {node})")]
    WeightKeysMismatch { node: usize },
    #[error("character coefficient at {exponent} is {value}, not a non-negative integer")]
    NonIntegralCharacter { exponent: String, value: String },
    #[error("root multiplicity at {exponent} is {value}, not an integer")]
    NonIntegralMultiplicity { exponent: String, value: String },
    #[error("leading coefficient requires a non-empty node set")]
    EmptyNodeSet,

    #[error("list must not be empty")]
    EmptyList,
    #[error("lists have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("permutation does not preserve the Cartan matrix at ({i}, {j})")]
    NotCompatible { i: usize, j: usize },
    #[error("classes do not partition 1..={0}")]
    InvalidPartition(usize),
    #[error("greedy search found no connected transversal")]
    NoTransversal,
    #[error("node set is not a union of classes (node {node})")]
    NotClassUnion { node: usize },
    #[error("node set has no connected lift")]
    NoLift,
    #[error("{what} has {size} nodes; the limit is {limit}")]
    SizeLimit { what: &'static str, size: usize, limit: usize },
    #[error("weight is not symmetric: nodes {i} and {j} are equivalent but have pairings {vi} and {vj}")]
    NotSymmetric { i: usize, j: usize, vi: u32, vj: u32 },
    #[error("node set is not equiconnected")]
    NotEquiconnected,

    #[error("leading coefficient at {exponent} is {value}, not positive")]
    NegativeLeadingCoefficient { exponent: String, value: String },
    #[error("candidate support {support} is not connected")]
    DisconnectedCandidateSupport { support: String },
    #[error("residual is non-zero after {steps} peeling steps")]
    NonzeroResidual { steps: usize },
    #[error("recovered {recovered} factors but only {r} were declared")]
    TooManyFactors { recovered: usize, r: usize },
    #[error("candidate class support {support} is not equiconnected")]
    NotEquiconnectedCandidate { support: String },
    #[error("folded exponent {exponent} is not divisible by the lean-lift counts")]
    DivisibilityFailure { exponent: String },
}

pub type Result<T> = std::result::Result<T, Error>;
