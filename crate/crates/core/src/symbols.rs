//! Strings, bitstrings and alphabets shared by every scheme.
//!
//! Symbols are single `char`s. The empty string λ is rendered as `-` in
//! file formats and diagnostics; `-`, `*` and whitespace are therefore not
//! accepted as alphabet symbols.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{CodeError, Result};

pub type Symbol = char;

/// Text used for λ in files and diagnostics.
pub const LAMBDA: &str = "-";

/// An ordered set of distinct symbols. A symbol's index is its list position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(CodeError::InvalidAlphabet("alphabet is empty".into()));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            if s.is_whitespace() || s == '-' || s == '*' {
                return Err(CodeError::InvalidAlphabet(format!(
                    "symbol {s:?} is reserved"
                )));
            }
            if index.insert(s, i).is_some() {
                return Err(CodeError::InvalidAlphabet(format!(
                    "duplicate symbol {s:?}"
                )));
            }
        }
        Ok(Self { symbols, index })
    }

    /// The binary alphabet `0 1`.
    pub fn binary() -> Self {
        Self::new(['0', '1']).expect("binary alphabet is valid")
    }

    /// Digits `0..9` followed by `base` in declared order.
    pub fn with_digits(base: &Alphabet) -> Result<Self> {
        if let Some(d) = base.symbols.iter().find(|c| c.is_ascii_digit()) {
            return Err(CodeError::InvalidConfiguration(format!(
                "alphabet already contains digit {d:?}"
            )));
        }
        Self::new(('0'..='9').chain(base.symbols.iter().copied()))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Option<Symbol> {
        self.symbols.get(index).copied()
    }

    pub fn index_of(&self, symbol: Symbol) -> Option<usize> {
        self.index.get(&symbol).copied()
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        self.index.contains_key(&symbol)
    }

    /// Fails on the first symbol of `s` outside the alphabet.
    pub fn check(&self, s: &[Symbol]) -> Result<()> {
        match s.iter().find(|c| !self.contains(**c)) {
            Some(&symbol) => Err(CodeError::SymbolNotInAlphabet { symbol }),
            None => Ok(()),
        }
    }

    /// All strings of length exactly `len`, in lexicographic order of symbol index.
    pub fn strings_of_len(&self, len: usize) -> impl Iterator<Item = SymString> + '_ {
        let k = self.len();
        let total = k.checked_pow(len as u32).unwrap_or(usize::MAX);
        (0..total).map(move |mut code| {
            let mut out = vec![self.symbols[0]; len];
            for slot in out.iter_mut().rev() {
                *slot = self.symbols[code % k];
                code /= k;
            }
            SymString(out)
        })
    }

    /// All strings of length `0..=max_len`, shortest first.
    pub fn strings_up_to(&self, max_len: usize) -> impl Iterator<Item = SymString> + '_ {
        (0..=max_len).flat_map(move |len| self.strings_of_len(len))
    }
}

impl FromStr for Alphabet {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.chars())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A string of symbols. The empty value is λ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymString(Vec<Symbol>);

impl SymString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    /// Parses file-format text, where `-` is λ.
    pub fn from_token(token: &str) -> Self {
        if token == LAMBDA {
            Self::new()
        } else {
            Self(token.chars().collect())
        }
    }

    /// File-format text, `-` for λ.
    pub fn to_token(&self) -> String {
        if self.0.is_empty() {
            LAMBDA.to_string()
        } else {
            self.to_string()
        }
    }

    pub fn push(&mut self, symbol: Symbol) {
        self.0.push(symbol);
    }

    pub fn extend_from_slice(&mut self, s: &[Symbol]) {
        self.0.extend_from_slice(s);
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }
}

impl Deref for SymString {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<&str> for SymString {
    fn from(s: &str) -> Self {
        Self(s.chars().collect())
    }
}

impl From<Vec<Symbol>> for SymString {
    fn from(v: Vec<Symbol>) -> Self {
        Self(v)
    }
}

impl From<&[Symbol]> for SymString {
    fn from(v: &[Symbol]) -> Self {
        Self(v.to_vec())
    }
}

impl FromIterator<Symbol> for SymString {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl fmt::Display for SymString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// A string over `{0, 1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bitstring(Vec<bool>);

impl Bitstring {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        Self(bits.into_iter().collect())
    }

    /// `width` low bits of `value`, most significant first.
    pub fn from_uint(value: u64, width: u32) -> Self {
        Self((0..width).rev().map(|b| (value >> b) & 1 == 1).collect())
    }

    /// Reads `bits` as an unsigned integer, most significant first.
    pub fn to_uint(bits: &[bool]) -> u64 {
        bits.iter().fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn append(&mut self, other: &Bitstring) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Bitstring) -> Bitstring {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn is_prefix_of(&self, bits: &[bool]) -> bool {
        bits.starts_with(&self.0)
    }

    /// Bitwise XOR of two equal-length strings.
    pub fn xor(&self, other: &Bitstring) -> Option<Bitstring> {
        (self.len() == other.len())
            .then(|| self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// The same bits as symbols `0`/`1`.
    pub fn to_symbols(&self) -> SymString {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Reads a symbol string over `0`/`1`.
    pub fn from_symbols(s: &[Symbol]) -> Result<Self> {
        s.iter()
            .map(|&c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                symbol => Err(CodeError::SymbolNotInAlphabet { symbol }),
            })
            .collect()
    }
}

impl Deref for Bitstring {
    type Target = [bool];

    fn deref(&self) -> &[bool] {
        &self.0
    }
}

impl FromIterator<bool> for Bitstring {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl FromStr for Bitstring {
    type Err = CodeError;

    /// ASCII `0`/`1` with no separators; `-` is λ.
    fn from_str(s: &str) -> Result<Self> {
        if s == LAMBDA {
            return Ok(Self::new());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(CodeError::InvalidCodewordSet(format!(
                    "{other:?} is not a bit"
                ))),
            })
            .collect()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0
            .iter()
            .try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

/// First pair of indices `(i, j)` where codeword `i` is a prefix of (or equal
/// to) codeword `j`. Repeated codewords count as a violation.
pub fn prefix_violation(codewords: &[Bitstring]) -> Option<(usize, usize)> {
    let mut order: Vec<usize> = (0..codewords.len()).collect();
    order.sort_by(|&a, &b| codewords[a].cmp(&codewords[b]));
    // In lexicographic order a prefix sorts directly before some extension of
    // it, so adjacent pairs suffice.
    order
        .windows(2)
        .find(|w| codewords[w[0]].is_prefix_of(&codewords[w[1]]))
        .map(|w| (w[0], w[1]))
}

/// True iff no codeword is a proper prefix of another.
pub fn is_prefix_code(codewords: &[Bitstring]) -> Result<bool> {
    if codewords.is_empty() {
        return Err(CodeError::InvalidCodewordSet("empty set".into()));
    }
    if codewords.iter().any(Bitstring::is_empty) {
        return Err(CodeError::InvalidCodewordSet(
            "the empty string is not a codeword".into(),
        ));
    }
    Ok(prefix_violation(codewords).is_none())
}

/// The last `n` symbols of `u`, or all of `u` when it is shorter.
pub fn context_window<T>(u: &[T], n: usize) -> &[T] {
    &u[u.len().saturating_sub(n)..]
}

/// Tuple operators on finite sequences.
pub mod tuple {
    /// `(p_1..p_t) ◁ q = (p_1..p_t, q)`.
    pub fn append<T: Clone>(p: &[T], q: T) -> Vec<T> {
        let mut out = p.to_vec();
        out.push(q);
        out
    }

    /// `P ▷ i`: removes the `i`-th component, counting from 1.
    ///
    /// Panics if `i` is 0 or beyond the tuple length.
    pub fn remove<T: Clone>(p: &[T], i: usize) -> Vec<T> {
        assert!(i >= 1 && i <= p.len(), "component {i} out of range");
        let mut out = p.to_vec();
        out.remove(i - 1);
        out
    }

    /// `U △ V`: concatenation.
    pub fn concat<T: Clone>(u: &[T], v: &[T]) -> Vec<T> {
        let mut out = u.to_vec();
        out.extend_from_slice(v);
        out
    }
}
