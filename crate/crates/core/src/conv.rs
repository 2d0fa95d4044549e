//! (n, 1, m) convolutional encoding and its reading as an adaptive code of order m.
//!
//! The word fed to every generator polynomial is the current input bit
//! followed by the register contents, most recent first. After each input bit
//! the registers shift: the new bit enters `m_1` and `m_m` is dropped.

use std::fmt;
use std::str::FromStr;

use crate::adaptive::ContextCodeTable;
use crate::error::{parse_err, CodeError, Result};
use crate::format;
use crate::symbols::{Alphabet, Bitstring, SymString};

/// XOR of the `word` components selected by the 1-positions of `poly`.
pub fn poly_apply(poly: &[bool], word: &[bool]) -> Result<bool> {
    if poly.len() != word.len() {
        return Err(CodeError::InvalidConfiguration(format!(
            "polynomial has {} components but the word has {}",
            poly.len(),
            word.len()
        )));
    }
    Ok(poly.iter().zip(word).fold(false, |acc, (&p, &w)| acc ^ (p & w)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvCodeSpec {
    m: usize,
    polys: Vec<Bitstring>,
    initial: Bitstring,
}

impl ConvCodeSpec {
    /// An `(n, k, m)` code; only `k = 1` is supported. `initial` defaults to all zeros.
    pub fn new(n: usize, k: usize, m: usize, polys: Vec<Bitstring>, initial: Option<Bitstring>) -> Result<Self> {
        if k != 1 {
            return Err(CodeError::InvalidConfiguration(format!(
                "only (n,1,m) codes are supported, got k={k}"
            )));
        }
        if n == 0 || m == 0 {
            return Err(CodeError::InvalidConfiguration("n and m must be at least 1".into()));
        }
        if polys.len() != n {
            return Err(CodeError::InvalidConfiguration(format!(
                "expected {n} generator polynomials, got {}",
                polys.len()
            )));
        }
        if let Some(p) = polys.iter().find(|p| p.len() != m + 1) {
            return Err(CodeError::InvalidConfiguration(format!(
                "polynomial {p} does not have m+1 = {} components",
                m + 1
            )));
        }
        if polys.iter().all(|p| p.iter().all(|b| !b)) {
            return Err(CodeError::InvalidConfiguration("every polynomial is zero".into()));
        }
        let initial = initial.unwrap_or_else(|| Bitstring::from_bits(vec![false; m]));
        if initial.len() != m {
            return Err(CodeError::InvalidConfiguration(format!(
                "initial registers must have {m} bits, got {}",
                initial.len()
            )));
        }
        Ok(Self { m, polys, initial })
    }

    pub fn n(&self) -> usize {
        self.polys.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn polys(&self) -> &[Bitstring] {
        &self.polys
    }

    pub fn initial_registers(&self) -> &Bitstring {
        &self.initial
    }

    /// Some polynomial taps the current input bit.
    pub fn satisfies_decodability(&self) -> bool {
        self.polys.iter().any(|p| p[0])
    }

    pub fn encoder(&self) -> ConvEncoder<'_> {
        ConvEncoder {
            spec: self,
            state: RegisterState {
                bits: self.initial.bits().to_vec(),
                position: 0,
            },
        }
    }

    pub const HEADER: &'static str = "conv";
}

impl FromStr for ConvCodeSpec {
    type Err = CodeError;

    /// `conv n=<n> m=<m> P1=<bits> ... Pn=<bits> Q=<bits>`.
    fn from_str(text: &str) -> Result<Self> {
        let (line_no, line) = format::content_lines(text)
            .next()
            .ok_or_else(|| parse_err(1, "empty spec"))?;
        let fields = format::parse_header(line, Self::HEADER, line_no)?;
        let n = format::number(format::required(&fields, "n", line_no)?, "n", line_no)?;
        let m = format::number(format::required(&fields, "m", line_no)?, "m", line_no)?;
        let bits = |key: &str| -> Result<Bitstring> {
            format::required(&fields, key, line_no)?
                .parse()
                .map_err(|e: CodeError| parse_err(line_no, format!("{key}: {e}")))
        };
        let polys = (1..=n).map(|j| bits(&format!("P{j}"))).collect::<Result<Vec<_>>>()?;
        let initial = match format::field(&fields, "Q") {
            Some(_) => Some(bits("Q")?),
            None => None,
        };
        Self::new(n, 1, m, polys, initial).map_err(|e| parse_err(line_no, e.to_string()))
    }
}

impl fmt::Display for ConvCodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} m={}", Self::HEADER, self.n(), self.m)?;
        for (j, p) in self.polys.iter().enumerate() {
            write!(f, " P{}={p}", j + 1)?;
        }
        write!(f, " Q={}", self.initial)
    }
}

/// Register contents `m_1..m_m` and the number of bits encoded so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterState {
    pub bits: Vec<bool>,
    pub position: usize,
}

impl RegisterState {
    /// Shifts `bit` into `m_1`, dropping `m_m`.
    pub fn shift_in(&mut self, bit: bool) {
        self.bits.pop();
        self.bits.insert(0, bit);
        self.position += 1;
    }
}

/// A streaming encoder session.
#[derive(Debug, Clone)]
pub struct ConvEncoder<'a> {
    spec: &'a ConvCodeSpec,
    state: RegisterState,
}

impl ConvEncoder<'_> {
    pub fn state(&self) -> &RegisterState {
        &self.state
    }

    /// The `n` output bits for one input bit.
    pub fn push(&mut self, bit: bool) -> Bitstring {
        let mut word = Vec::with_capacity(self.spec.m + 1);
        word.push(bit);
        word.extend_from_slice(&self.state.bits);
        let out = self
            .spec
            .polys
            .iter()
            .map(|p| poly_apply(p, &word).expect("lengths checked at construction"))
            .collect();
        self.state.shift_in(bit);
        out
    }
}

/// Output of `n` bits per input bit; no flush bits are appended.
pub fn conv_encode(spec: &ConvCodeSpec, x: &[bool]) -> Bitstring {
    let mut enc = spec.encoder();
    let mut out = Bitstring::new();
    for &b in x {
        out.append(&enc.push(b));
    }
    out
}

pub fn check_theorem5_condition(spec: &ConvCodeSpec) -> bool {
    spec.satisfies_decodability()
}

/// The code viewed as `c: {0,1} × {0,1}^{≤m} → {0,1}^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvAdaptiveCode {
    spec: ConvCodeSpec,
}

/// Requires a polynomial tapping the current bit and all-zero initial registers.
pub fn as_adaptive_code(spec: &ConvCodeSpec) -> Result<ConvAdaptiveCode> {
    if !spec.satisfies_decodability() {
        return Err(CodeError::NotAnAdaptiveCode);
    }
    if spec.initial.iter().any(|&b| b) {
        return Err(CodeError::UnsupportedInitialState(format!(
            "registers start at {}, expected all zeros",
            spec.initial
        )));
    }
    Ok(ConvAdaptiveCode { spec: spec.clone() })
}

impl ConvAdaptiveCode {
    pub fn order(&self) -> usize {
        self.spec.m
    }

    /// `context` holds the previous input bits, oldest first, at most `m` of them.
    pub fn codeword(&self, bit: bool, context: &[bool]) -> Bitstring {
        let m = self.spec.m;
        debug_assert!(context.len() <= m);
        let mut word = Vec::with_capacity(m + 1);
        word.push(bit);
        word.extend(context.iter().rev());
        word.resize(m + 1, false);
        self.spec
            .polys
            .iter()
            .map(|p| poly_apply(p, &word).expect("word has m+1 components"))
            .collect()
    }

    /// Every entry of `c` as a table over the symbols `0` and `1`.
    pub fn to_table(&self) -> ContextCodeTable {
        let binary = Alphabet::binary();
        let mut table = ContextCodeTable::new(binary.clone(), self.spec.m).expect("m >= 1");
        for u in binary.strings_up_to(self.spec.m) {
            let ctx = Bitstring::from_symbols(&u).expect("binary context");
            for (s, bit) in [('0', false), ('1', true)] {
                table
                    .insert(s, u.clone(), self.codeword(bit, &ctx))
                    .expect("entries are distinct and non-empty");
            }
        }
        table
    }

    /// Decodes through the table view; every context column is a prefix code of
    /// fixed-length words.
    pub fn decode(&self, y: &[bool]) -> Result<Bitstring> {
        let x: SymString = self.to_table().decode(y)?;
        Bitstring::from_symbols(&x)
    }
}
