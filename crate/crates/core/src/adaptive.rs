//! Order-n adaptive codes: a codeword for every (symbol, context) pair, where
//! the context is the window of at most `n` preceding symbols.

use std::collections::HashMap;
use std::fmt;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::Rng;
use sha2::{Digest, Sha256};

use crate::error::{parse_err, CodeError, Result};
use crate::format;
use crate::symbols::{context_window, prefix_violation, Alphabet, Bitstring, SymString, Symbol};

/// Two codewords of one context column where one is a prefix of the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixViolation {
    pub context: SymString,
    pub first_symbol: SymString,
    pub first: Bitstring,
    pub second_symbol: SymString,
    pub second: Bitstring,
}

impl PrefixViolation {
    pub fn into_error(self) -> CodeError {
        CodeError::Uncertified {
            context: self.context.to_token(),
            first_symbol: self.first_symbol.to_token(),
            first: self.first.to_string(),
            second_symbol: self.second_symbol.to_token(),
            second: self.second.to_string(),
        }
    }
}

impl fmt::Display for PrefixViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "context {}: {} -> {} and {} -> {}",
            self.context.to_token(),
            self.first_symbol.to_token(),
            self.first,
            self.second_symbol.to_token(),
            self.second
        )
    }
}

/// Outcome of checking every context column of a table for the prefix property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCertificate {
    /// First 8 bytes of the SHA-256 of the table's canonical text, big-endian.
    pub table_digest: u64,
    pub contexts_checked: usize,
    pub refusal: Option<PrefixViolation>,
}

impl PrefixCertificate {
    pub fn is_certified(&self) -> bool {
        self.refusal.is_none()
    }

    pub fn into_result(self) -> Result<()> {
        match self.refusal {
            None => Ok(()),
            Some(v) => Err(v.into_error()),
        }
    }
}

pub(crate) fn text_digest(text: &str) -> u64 {
    let hash = Sha256::digest(text.as_bytes());
    u64::from_be_bytes(hash[..8].try_into().expect("SHA-256 is 32 bytes"))
}

/// Finds a prefix violation among labelled codewords of one column.
pub(crate) fn check_column<'a>(
    context: &SymString,
    column: impl IntoIterator<Item = (SymString, &'a Bitstring)>,
) -> Option<PrefixViolation> {
    let (labels, words): (Vec<SymString>, Vec<Bitstring>) =
        column.into_iter().map(|(l, w)| (l, w.clone())).unzip();
    prefix_violation(&words).map(|(i, j)| PrefixViolation {
        context: context.clone(),
        first_symbol: labels[i].clone(),
        first: words[i].clone(),
        second_symbol: labels[j].clone(),
        second: words[j].clone(),
    })
}

/// The codeword map `(σ, u) -> c(σ, u)` of an order-n adaptive code.
///
/// Tables may be partial; encoding a string that needs a missing entry fails.
/// Entries keep their insertion order so saved files round-trip unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextCodeTable {
    alphabet: Alphabet,
    order: usize,
    entries: IndexMap<(Symbol, SymString), Bitstring>,
}

impl ContextCodeTable {
    pub const HEADER: &'static str = "adaptive-code";

    pub fn new(alphabet: Alphabet, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(CodeError::InvalidConfiguration(
                "order must be at least 1".into(),
            ));
        }
        Ok(Self {
            alphabet,
            order,
            entries: IndexMap::new(),
        })
    }

    /// Builds a table from `(symbol, context, codeword)` rows, `-` denoting λ.
    pub fn from_rows(alphabet: Alphabet, order: usize, rows: &[(char, &str, &str)]) -> Result<Self> {
        let mut table = Self::new(alphabet, order)?;
        for &(symbol, context, codeword) in rows {
            table.insert(symbol, SymString::from_token(context), codeword.parse()?)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, symbol: Symbol, context: SymString, codeword: Bitstring) -> Result<()> {
        self.alphabet.check(&[symbol])?;
        self.alphabet.check(&context)?;
        if context.len() > self.order {
            return Err(CodeError::InvalidConfiguration(format!(
                "context {} is longer than the order {}",
                context.to_token(),
                self.order
            )));
        }
        if codeword.is_empty() {
            return Err(CodeError::InvalidCodewordSet(format!(
                "empty codeword for ({symbol}, {})",
                context.to_token()
            )));
        }
        let key = (symbol, context);
        if self.entries.contains_key(&key) {
            return Err(CodeError::InvalidConfiguration(format!(
                "duplicate entry ({}, {})",
                key.0,
                key.1.to_token()
            )));
        }
        self.entries.insert(key, codeword);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Symbol, &SymString, &Bitstring)> {
        self.entries.iter().map(|((s, u), c)| (*s, u, c))
    }

    pub fn get(&self, symbol: Symbol, context: &[Symbol]) -> Option<&Bitstring> {
        self.entries.get(&(symbol, SymString::from(context)))
    }

    /// Codeword for `symbol` given everything before it; only the last `n`
    /// symbols of `history` are consulted.
    pub fn codeword(&self, symbol: Symbol, history: &[Symbol]) -> Result<&Bitstring> {
        let u = context_window(history, self.order);
        self.get(symbol, u).ok_or_else(|| CodeError::UnmappedContext {
            symbol: symbol.to_string(),
            context: SymString::from(u).to_token(),
        })
    }

    /// `c(x_1, λ) c(x_2, x_1) ... c(x_m, window)`; λ encodes to λ.
    pub fn encode(&self, x: &[Symbol]) -> Result<Bitstring> {
        self.alphabet.check(x)?;
        let mut out = Bitstring::new();
        for i in 0..x.len() {
            out.append(self.codeword(x[i], &x[..i])?);
        }
        Ok(out)
    }

    /// Context columns in first-appearance order.
    fn columns(&self) -> IndexMap<&SymString, Vec<(Symbol, &Bitstring)>> {
        let mut cols: IndexMap<&SymString, Vec<(Symbol, &Bitstring)>> = IndexMap::new();
        for ((s, u), c) in &self.entries {
            cols.entry(u).or_default().push((*s, c));
        }
        cols
    }

    /// Checks that every context column present in the table is a prefix code.
    pub fn verify(&self) -> PrefixCertificate {
        let cols = self.columns();
        let refusal = cols.iter().find_map(|(u, col)| {
            check_column(u, col.iter().map(|(s, c)| (SymString::from(vec![*s]), *c)))
        });
        PrefixCertificate {
            table_digest: self.digest(),
            contexts_checked: cols.len(),
            refusal,
        }
    }

    /// Greedy left-to-right decoding; requires a prefix certificate.
    pub fn decode(&self, y: &[bool]) -> Result<SymString> {
        self.verify().into_result()?;
        let cols: HashMap<&SymString, Vec<(Symbol, &Bitstring)>> = self.columns().into_iter().collect();
        let mut out = SymString::new();
        let mut offset = 0;
        while offset < y.len() {
            let rest = &y[offset..];
            let u = SymString::from(context_window(&out, self.order));
            let col = cols.get(&u).map(Vec::as_slice).unwrap_or(&[]);
            match col.iter().find(|(_, c)| c.is_prefix_of(rest)) {
                Some((s, c)) => {
                    out.push(*s);
                    offset += c.len();
                }
                None if col.iter().any(|(_, c)| c.starts_with(rest)) => {
                    return Err(CodeError::TrailingGarbage { offset });
                }
                None => {
                    return Err(CodeError::MalformedStream {
                        offset,
                        reason: format!("no codeword of context {} matches", u.to_token()),
                    });
                }
            }
        }
        Ok(out)
    }

    fn digest(&self) -> u64 {
        text_digest(&self.to_text())
    }

    /// Canonical text form: a header line then one tab-separated line per entry.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} n={} sigma={}\n", Self::HEADER, self.order, self.alphabet);
        for ((s, u), c) in &self.entries {
            out.push_str(&format!("{s}\t{}\t{c}\n", u.to_token()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = format::content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty table file"))?;
        let fields = format::parse_header(header, Self::HEADER, line_no)?;
        let order = format::number(format::required(&fields, "n", line_no)?, "n", line_no)?;
        let alphabet: Alphabet = format::required(&fields, "sigma", line_no)?.parse()?;
        let mut table = Self::new(alphabet, order)?;
        for (line_no, line) in lines {
            let cols = format::columns(line, 3, line_no)?;
            let symbol = format::single_symbol(cols[0], line_no)?;
            let codeword: Bitstring = cols[2].parse().map_err(|e: CodeError| parse_err(line_no, e.to_string()))?;
            table
                .insert(symbol, SymString::from_token(cols[1]), codeword)
                .map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        Ok(table)
    }
}

/// A random total table whose every context column is a complete prefix code.
pub fn random_certified_table<R: Rng + ?Sized>(alphabet: &Alphabet, order: usize, rng: &mut R) -> Result<ContextCodeTable> {
    let mut table = ContextCodeTable::new(alphabet.clone(), order)?;
    for u in alphabet.strings_up_to(order) {
        let mut words = random_prefix_code(alphabet.len(), rng);
        words.shuffle(rng);
        for (&s, w) in alphabet.symbols().iter().zip(words) {
            table.insert(s, u.clone(), w)?;
        }
    }
    Ok(table)
}

/// `k` leaf codes of a random full binary tree. A single codeword is one random bit.
pub fn random_prefix_code<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Bitstring> {
    if k == 1 {
        return vec![Bitstring::from_bits([rng.gen::<bool>()])];
    }
    let mut leaves = vec![Bitstring::new()];
    while leaves.len() < k {
        let leaf = leaves.swap_remove(rng.gen_range(0..leaves.len()));
        let mut zero = leaf.clone();
        zero.push(false);
        let mut one = leaf;
        one.push(true);
        leaves.push(zero);
        leaves.push(one);
    }
    leaves
}
