//! Adaptive variable-length codes and the schemes expressible as them.
//!
//! An adaptive code of order `n` picks the codeword of each symbol from the
//! `n` symbols before it. A GA code generalizes this with an arbitrary
//! function choosing the context. Adaptive Huffman coding, Lempel-Ziv
//! parsing and convolutional codes are all provided both directly and as
//! such codes, together with a convolutional stream cipher and the (p,q) and
//! time-varying extensions.
//!
//! Bitstrings are `Vec<bool>` wrappers rendered as `0`/`1` text; λ is `-`.

pub mod adaptive;
pub mod conv;
pub mod crypto;
pub mod error;
pub mod extensions;
mod format;
pub mod ga;
pub mod huffman;
pub mod lz;
pub mod oracle;
pub mod symbols;

pub use adaptive::{ContextCodeTable, PrefixCertificate, PrefixViolation};
pub use conv::{as_adaptive_code, conv_encode, ConvAdaptiveCode, ConvCodeSpec};
pub use crypto::{brute_force_attack, decrypt, encrypt, keyspace_bound, KeyMaterial, KeyVisibility};
pub use error::{CodeError, Result};
pub use extensions::{AtvRule, PqCodeTable, RuleTable, TimeVaryingRule};
pub use ga::{AdaptiveFunction, GaCode};
pub use huffman::{decode_ah, encode_ah, HuffmanTree, HuffmanTreeState};
pub use lz::{lz_decode, lz_encode, lz_parse};
pub use oracle::{injectivity_oracle, Verdict};
pub use symbols::{Alphabet, Bitstring, SymString, Symbol};
