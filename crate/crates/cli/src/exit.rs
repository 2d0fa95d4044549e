//! Process exit statuses, one per failure kind.

use adaptive_codes::CodeError;

pub const IO: u8 = 3;
pub const ORACLE_FAIL: u8 = 30;

const TABLE: &[(u8, &str)] = &[
    (0, "success"),
    (2, "usage error"),
    (IO, "file or stream I/O error"),
    (4, "parse error in a table, rule, spec or key file"),
    (5, "invalid alphabet"),
    (6, "symbol not in the alphabet"),
    (7, "invalid codeword set"),
    (8, "no codeword for a (symbol, context) pair"),
    (9, "unknown symbol"),
    (10, "malformed stream"),
    (11, "trailing bits that do not complete a codeword"),
    (12, "truncated stream"),
    (13, "table or rule is not prefix-certified"),
    (14, "budget exceeded"),
    (15, "invalid configuration"),
    (16, "unsupported alphabet"),
    (17, "convolutional code is not an adaptive code"),
    (18, "unsupported initial register state"),
    (19, "input shorter than the block width"),
    (20, "position beyond the rule horizon"),
    (21, "decoded blocks disagree on their overlap"),
    (22, "frequency counter overflow"),
    (ORACLE_FAIL, "injectivity oracle found a collision"),
];

pub fn code(err: &CodeError) -> u8 {
    match err {
        CodeError::Parse { .. } => 4,
        CodeError::InvalidAlphabet(_) => 5,
        CodeError::SymbolNotInAlphabet { .. } => 6,
        CodeError::InvalidCodewordSet(_) => 7,
        CodeError::UnmappedContext { .. } => 8,
        CodeError::UnmappedSymbol { .. } => 9,
        CodeError::MalformedStream { .. } => 10,
        CodeError::TrailingGarbage { .. } => 11,
        CodeError::TruncatedStream { .. } => 12,
        CodeError::Uncertified { .. } => 13,
        CodeError::BudgetExceeded { .. } => 14,
        CodeError::InvalidConfiguration(_) => 15,
        CodeError::UnsupportedAlphabet(_) => 16,
        CodeError::NotAnAdaptiveCode => 17,
        CodeError::UnsupportedInitialState(_) => 18,
        CodeError::BlockUnderflow { .. } => 19,
        CodeError::HorizonExceeded { .. } => 20,
        CodeError::InconsistentOverlap { .. } => 21,
        CodeError::CounterOverflow => 22,
    }
}

/// The exit status list shown at the end of `--help`.
pub fn help() -> String {
    let mut out = String::from("Exit status:\n");
    for (code, what) in TABLE {
        out.push_str(&format!("  {code:>3}  {what}\n"));
    }
    out
}
