use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set of size {0} exceeds the supported maximum of 64")]
    GroundSetTooLarge(usize),

    #[error("vertex {vertex} is outside the ground set [1, {n}]")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("strict complex is missing the singleton {{{0}}}")]
    MissingSingleton(usize),

    #[error("face family is not closed under taking subsets: {face} is missing")]
    NotDownwardClosed { face: String },

    #[error("operation requires a strict-mode complex")]
    RelaxedComplex,

    #[error("faces of different degree cannot be compared ({left} vs {right})")]
    DegreeMismatch { left: usize, right: usize },

    #[error("shift pair ({i}, {j}) is invalid on [{n}]; need 1 <= i < j <= n")]
    PairOutOfRange { i: usize, j: usize, n: usize },

    #[error("shifting did not terminate within {0} steps")]
    IterationLimit(usize),

    #[error("shift enumeration visited more than {0} states")]
    StateLimit(usize),

    #[error("complex is not shifted")]
    NotShifted,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("matrix is singular")]
    Singular,

    #[error("generic initial ideal did not stabilise across {attempts} random coordinate changes")]
    SeedDisagreement { attempts: usize },

    #[error("f-vector is not realised by a lexsegment complex: {0}")]
    NotAnFVector(String),

    #[error("shifted complex does not have the expected block form: {0}")]
    NotBlockForm(String),

    #[error("not a valid argument: {0}")]
    InvalidArgument(String),

    #[error("complex file: {0}")]
    Format(String),
}
