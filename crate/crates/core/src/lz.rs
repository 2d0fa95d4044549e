//! Lempel-Ziv incremental parsing, a dictionary codeword stream, and the GA
//! code view in which each position's context carries its own index.
//!
//! Stream format: block `z` (1-based) is written as the dictionary index of
//! the block minus its last symbol (0 for λ) in `ceil(log2 z)` bits, then the
//! last symbol's alphabet index in `max(1, ceil(log2 |Σ|))` bits. A final
//! block that repeats an earlier one is written the same way. The stream
//! ends when the bits run out, so no terminator is needed.

use std::collections::HashMap;

use crate::error::{CodeError, Result};
use crate::ga::{AdaptiveFunction, GaCode};
use crate::symbols::{Alphabet, Bitstring, SymString, Symbol};

/// Splits `w` into blocks, each the shortest prefix of the remainder that is
/// not an earlier block. The last block may repeat an earlier one.
pub fn lz_parse(w: &[Symbol]) -> Vec<SymString> {
    let mut seen: HashMap<&[Symbol], ()> = HashMap::new();
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < w.len() {
        let rest = &w[pos..];
        let len = (1..=rest.len())
            .find(|&l| !seen.contains_key(&rest[..l]))
            .unwrap_or(rest.len());
        seen.insert(&rest[..len], ());
        blocks.push(SymString::from(&rest[..len]));
        pos += len;
    }
    blocks
}

/// `ceil(log2 z)`: bits needed for a dictionary index that may point at any of
/// the `z` entries λ, B_1, ..., B_{z-1}.
pub fn index_width(z: usize) -> u32 {
    debug_assert!(z >= 1);
    usize::BITS - (z - 1).leading_zeros()
}

pub fn symbol_width(alphabet: &Alphabet) -> u32 {
    index_width(alphabet.len()).max(1)
}

/// One block as it appears in the stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCodeword {
    /// 1-based block number.
    pub number: usize,
    pub block: SymString,
    /// Dictionary index of the block minus its last symbol; 0 is λ.
    pub prefix_index: usize,
    pub index_width: u32,
    pub bits: Bitstring,
}

fn block_bits(alphabet: &Alphabet, number: usize, prefix_index: usize, last: Symbol) -> Result<Bitstring> {
    let symbol = alphabet.index_of(last).ok_or(CodeError::SymbolNotInAlphabet { symbol: last })?;
    let mut bits = Bitstring::from_uint(prefix_index as u64, index_width(number));
    bits.append(&Bitstring::from_uint(symbol as u64, symbol_width(alphabet)));
    Ok(bits)
}

/// The parse of `w` with the codeword of each block.
pub fn block_codewords(alphabet: &Alphabet, w: &[Symbol]) -> Result<Vec<BlockCodeword>> {
    alphabet.check(w)?;
    let blocks = lz_parse(w);
    let mut index: HashMap<&[Symbol], usize> = HashMap::new();
    let mut out = Vec::with_capacity(blocks.len());
    for (i, block) in blocks.iter().enumerate() {
        let number = i + 1;
        let (last, head) = block.split_last().expect("blocks are non-empty");
        let prefix_index = if head.is_empty() {
            0
        } else {
            *index.get(head).expect("block prefixes are earlier blocks")
        };
        index.entry(block).or_insert(number);
        out.push(BlockCodeword {
            number,
            block: block.clone(),
            prefix_index,
            index_width: index_width(number),
            bits: block_bits(alphabet, number, prefix_index, *last)?,
        });
    }
    Ok(out)
}

pub fn lz_encode(alphabet: &Alphabet, w: &[Symbol]) -> Result<Bitstring> {
    let mut out = Bitstring::new();
    for cw in block_codewords(alphabet, w)? {
        out.append(&cw.bits);
    }
    Ok(out)
}

fn read_field(y: &[bool], offset: usize, width: u32, what: &str) -> Result<u64> {
    let end = offset + width as usize;
    if end > y.len() {
        return Err(CodeError::MalformedStream {
            offset,
            reason: format!("truncated {what} field"),
        });
    }
    Ok(Bitstring::to_uint(&y[offset..end]))
}

/// Inverse of [`lz_encode`]; the empty stream is λ.
pub fn lz_decode(alphabet: &Alphabet, y: &[bool]) -> Result<SymString> {
    let mut blocks: Vec<SymString> = Vec::new();
    let mut known: HashMap<SymString, usize> = HashMap::new();
    let mut out = SymString::new();
    let mut offset = 0;
    while offset < y.len() {
        let number = blocks.len() + 1;
        let start = offset;
        let width = index_width(number);
        let prefix = read_field(y, offset, width, "index")? as usize;
        offset += width as usize;
        if prefix >= number {
            return Err(CodeError::MalformedStream {
                offset: start,
                reason: format!("index {prefix} outside a dictionary of {number} entries"),
            });
        }
        let value = read_field(y, offset, symbol_width(alphabet), "symbol")?;
        let symbol = alphabet.symbol(value as usize).ok_or_else(|| CodeError::MalformedStream {
            offset,
            reason: format!("symbol index {value} outside the alphabet"),
        })?;
        offset += symbol_width(alphabet) as usize;
        let mut block = if prefix == 0 {
            SymString::new()
        } else {
            blocks[prefix - 1].clone()
        };
        block.push(symbol);
        if known.contains_key(&block) && offset < y.len() {
            return Err(CodeError::MalformedStream {
                offset: start,
                reason: "repeated block before the end of the stream".into(),
            });
        }
        out.extend_from_slice(&block);
        known.insert(block.clone(), number);
        blocks.push(block);
    }
    Ok(out)
}

/// A context string `d_1..d_r σ_f v`: position digits, the marker, and the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaView {
    pub digits: SymString,
    pub payload: SymString,
}

impl GaView {
    /// Splits `u` at its first non-digit, which must be `sigma_f`, with at
    /// least one digit before it and at least one symbol after it.
    pub fn parse(u: &[Symbol], sigma_f: Symbol) -> Option<Self> {
        let r = u.iter().position(|c| !c.is_ascii_digit())?;
        (u.len() >= 3 && r >= 1 && u[r] == sigma_f && r + 1 < u.len()).then(|| Self {
            digits: SymString::from(&u[..r]),
            payload: SymString::from(&u[r + 1..]),
        })
    }

    /// The decimal position encoded by the digits, if it fits in `usize`.
    pub fn position(&self) -> Option<usize> {
        self.digits.to_string().parse().ok()
    }

    /// Whether the encoded position points inside the payload. In terms of
    /// `u`, the referenced symbol sits at `|left| + 1 + position`, which must
    /// lie in `[|left| + 2, |u|]`.
    pub fn good_position(&self) -> bool {
        self.position().is_some_and(|p| (1..=self.payload.len()).contains(&p))
    }
}

pub fn ga_view_fixed(u: &[Symbol], sigma_f: Symbol) -> bool {
    GaView::parse(u, sigma_f).is_some()
}

pub fn ga_view_left(u: &[Symbol], sigma_f: Symbol) -> SymString {
    GaView::parse(u, sigma_f).map(|v| v.digits).unwrap_or_default()
}

pub fn ga_view_right(u: &[Symbol], sigma_f: Symbol) -> SymString {
    GaView::parse(u, sigma_f).map(|v| v.payload).unwrap_or_default()
}

pub fn ga_view_goodpos(u: &[Symbol], sigma_f: Symbol) -> bool {
    GaView::parse(u, sigma_f).is_some_and(|v| v.good_position())
}

/// The GA code over `Σ ∪ {0..9}` whose adaptive function prefixes the whole
/// input with the decimal position and `sigma_f`. Positions that end a block
/// receive that block's stream codeword; every other position receives λ.
pub fn as_ga(sigma: &Alphabet, sigma_f: Symbol) -> Result<GaCode> {
    if !sigma.contains(sigma_f) {
        return Err(CodeError::InvalidConfiguration(format!(
            "marker {sigma_f:?} is not in the alphabet"
        )));
    }
    let extended = Alphabet::with_digits(sigma)?;
    let adaptive = AdaptiveFunction::new(false, move |i, s| {
        let mut u: SymString = i.to_string().chars().collect();
        u.push(sigma_f);
        u.extend_from_slice(s);
        u
    });
    let alphabet = extended.clone();
    Ok(GaCode::new(extended, adaptive, move |symbol, u| {
        let Some(view) = GaView::parse(u, sigma_f).filter(GaView::good_position) else {
            return Ok(Bitstring::new());
        };
        let position = view.position().expect("good position parses");
        if view.payload[position - 1] != symbol {
            return Ok(Bitstring::new());
        }
        let mut end = 0;
        for cw in block_codewords(&alphabet, &view.payload)? {
            end += cw.block.len();
            if end == position {
                return Ok(cw.bits);
            }
            if end > position {
                break;
            }
        }
        Ok(Bitstring::new())
    }))
}
