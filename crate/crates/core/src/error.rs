use thiserror::Error;

/// Errors raised by every coding scheme in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("invalid codeword set: {0}")]
    InvalidCodewordSet(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("symbol {symbol:?} is not in the alphabet")]
    SymbolNotInAlphabet { symbol: char },

    #[error("no codeword for symbol {symbol} in context {context}")]
    UnmappedContext { symbol: String, context: String },

    #[error("unknown symbol {symbol:?}")]
    UnmappedSymbol { symbol: char },

    #[error("malformed stream at bit {offset}: {reason}")]
    MalformedStream { offset: usize, reason: String },

    #[error("trailing bits at offset {offset} do not complete a codeword")]
    TrailingGarbage { offset: usize },

    #[error("stream truncated at bit {offset}")]
    TruncatedStream { offset: usize },

    #[error("table is not prefix-certified: context {context} has {first_symbol}->{first} and {second_symbol}->{second}")]
    Uncertified {
        context: String,
        first_symbol: String,
        first: String,
        second_symbol: String,
        second: String,
    },

    #[error("budget exceeded: {needed} required, limit {budget} (tried {tried})")]
    BudgetExceeded { needed: String, budget: u64, tried: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("unsupported alphabet: {0}")]
    UnsupportedAlphabet(String),

    #[error("code is not an adaptive code: no generator polynomial has first component 1")]
    NotAnAdaptiveCode,

    #[error("unsupported initial register state: {0}")]
    UnsupportedInitialState(String),

    #[error("input of length {len} is shorter than block width {q}")]
    BlockUnderflow { len: usize, q: usize },

    #[error("position {position} is beyond the rule horizon {horizon}")]
    HorizonExceeded { position: usize, horizon: usize },

    #[error("decoded block at bit {offset} disagrees with the previous block on the overlap")]
    InconsistentOverlap { offset: usize },

    #[error("frequency counter overflow")]
    CounterOverflow,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, CodeError>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> CodeError {
    CodeError::Parse {
        line,
        message: message.into(),
    }
}
