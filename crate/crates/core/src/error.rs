use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rewrite rule for `{lhs}` is not strictly decreasing: `{offending}` is not smaller than its leading monomial")]
    NonTerminatingRule { lhs: String, offending: String },

    #[error("invalid rewrite rule: {0}")]
    InvalidRule(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("operands live in different rings (`{left}` and `{right}`)")]
    RingMismatch { left: String, right: String },

    #[error("class is not a unit: degree-0 coefficient is {0}, expected 1")]
    NotAUnit(String),

    #[error("top-degree monomial `{0}` has no entry in the integration table")]
    UnknownTopMonomial(String),

    #[error("invalid integration table entry `{monomial}`: {reason}")]
    InvalidTableEntry { monomial: String, reason: String },

    #[error("multinomial parts sum to {sum}, expected {d}")]
    PartsMismatch { d: u64, sum: u64 },

    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("normal bundle has rank {rank} but codimension {codim}")]
    RankCodimMismatch { rank: u32, codim: u32 },

    #[error("rank {rank} does not match dimension {dimension}")]
    DimensionMismatch { rank: u64, dimension: u64 },

    #[error("monomial has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u64, found: u64 },

    #[error("expected an integer, got {0}")]
    NonIntegerResult(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid stratum: {0}")]
    InvalidStratum(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse `{input}` at byte {offset}: {reason}")]
    Syntax {
        input: String,
        offset: usize,
        reason: String,
    },

    #[error("type error: {0}")]
    Type(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("configuration error: {0}")]
    Config(String),
}
