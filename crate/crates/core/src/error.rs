use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group parameters must satisfy r > a >= 1, got r={r}, a={a}")]
    InvalidGroup { r: u64, a: u64 },

    #[error("r={r} and a={a} are not coprime")]
    NotCoprime { r: u64, a: u64 },

    #[error("label list must be non-empty")]
    EmptyLabels,

    #[error("label {index} is {value}, every label must be at least 2")]
    InvalidLabel { index: usize, value: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("vertex {vertex} out of range 0..={n}")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("chart index {t} out of range for n={n}")]
    InvalidChart { t: usize, n: usize },

    #[error("point is not in the overlap of charts {t} and {prev}: second coordinate is zero", prev = .t - 1)]
    NotInOverlap { t: usize },

    #[error("degree bound must be at least 1")]
    ZeroDegree,

    #[error("path enumeration refused: {reached} paths exceed the cap of {limit}")]
    ResourceCap { limit: usize, reached: u128 },

    #[error("chart {chart}: arrow propagation stalled with {unknown} undetermined arrows")]
    PropagationStalled { chart: usize, unknown: usize },

    #[error("representation violates relation {index}: {detail}")]
    RelationViolated { index: usize, detail: String },
}
