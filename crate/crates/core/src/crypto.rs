//! A (1,1,m) convolutional code used as a cipher, keyed by its generator
//! polynomial `P` and initial registers `Q`.
//!
//! Encryption XORs each input bit with the registers tapped by `P` (components
//! 2..m+1) and then shifts the plaintext bit in. Decryption needs `P.1 = 1`:
//! with tap sum `z`, a ciphertext bit 0 means the plaintext bit was `z`, a 1
//! means it was the complement, and the recovered bit is shifted in.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::conv::ConvCodeSpec;
use crate::error::{parse_err, CodeError, Result};
use crate::format;
use crate::symbols::{tuple, Bitstring};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeyMaterial {
    /// `m + 1` components; the first is always 1.
    p: Bitstring,
    /// `m` components; `Q.i` is the initial content of register `m_i`.
    q: Bitstring,
}

impl KeyMaterial {
    pub fn new(p: Bitstring, q: Bitstring) -> Result<Self> {
        let key = Self::new_unchecked(p, q)?;
        if !key.p[0] {
            return Err(CodeError::InvalidConfiguration(
                "P.1 must be 1 for the ciphertext to be decryptable".into(),
            ));
        }
        Ok(key)
    }

    /// Skips the `P.1 = 1` check; the result may not be decryptable.
    pub(crate) fn new_unchecked(p: Bitstring, q: Bitstring) -> Result<Self> {
        if q.is_empty() {
            return Err(CodeError::InvalidConfiguration("m must be at least 1".into()));
        }
        if p.len() != q.len() + 1 {
            return Err(CodeError::InvalidConfiguration(format!(
                "P has {} components, expected m+1 = {}",
                p.len(),
                q.len() + 1
            )));
        }
        Ok(Self { p, q })
    }

    pub fn m(&self) -> usize {
        self.q.len()
    }

    pub fn p(&self) -> &Bitstring {
        &self.p
    }

    pub fn q(&self) -> &Bitstring {
        &self.q
    }

    /// Register indices (1-based) tapped by `P.2..P.{m+1}`.
    fn taps(&self) -> Vec<usize> {
        (2..=self.m() + 1).filter(|&i| self.p[i - 1]).map(|i| i - 1).collect()
    }

    /// The same key as a `(1,1,m)` convolutional code.
    pub fn as_conv_spec(&self) -> ConvCodeSpec {
        ConvCodeSpec::new(1, 1, self.m(), vec![self.p.clone()], Some(self.q.clone()))
            .expect("P.1 = 1 makes P non-zero")
    }

    pub const HEADER: &'static str = "convkey";
}

impl fmt::Display for KeyMaterial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} m={} P={} Q={}", Self::HEADER, self.m(), self.p, self.q)
    }
}

fn tap_sum(registers: &[bool], taps: &[usize]) -> bool {
    taps.iter().fold(false, |z, &j| z ^ registers[j - 1])
}

/// Shifts `bit` in at `m_1`: `Q ← (bit) △ (Q ▷ m)`.
fn shift(registers: &[bool], bit: bool) -> Vec<bool> {
    tuple::concat(&[bit], &tuple::remove(registers, registers.len()))
}

pub fn encrypt(key: &KeyMaterial, x: &[bool]) -> Bitstring {
    let taps = key.taps();
    let mut q = key.q.bits().to_vec();
    x.iter()
        .map(|&bit| {
            let z = (key.p[0] & bit) ^ tap_sum(&q, &taps);
            q = shift(&q, bit);
            z
        })
        .collect()
}

pub fn decrypt(key: &KeyMaterial, y: &[bool]) -> Bitstring {
    let taps = key.taps();
    let mut q = key.q.bits().to_vec();
    y.iter()
        .map(|&bit| {
            let z = tap_sum(&q, &taps);
            let x = if bit { !z } else { z };
            q = shift(&q, x);
            x
        })
        .collect()
}

/// Which of `m`, `P`, `Q` an attacker is assumed to know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KeyVisibility {
    /// Public ∅, private {P, Q, m}.
    AllPrivate,
    /// Public {m}, private {P, Q}.
    MPublic,
    /// Public {P}, private {Q}; `m` follows from `P`.
    PPublic,
    /// Public {Q}, private {P}; `m` follows from `Q`.
    QPublic,
}

impl KeyVisibility {
    pub fn name(self) -> &'static str {
        match self {
            KeyVisibility::AllPrivate => "none",
            KeyVisibility::MPublic => "m",
            KeyVisibility::PPublic => "P",
            KeyVisibility::QPublic => "Q",
        }
    }
}

impl FromStr for KeyVisibility {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "" => Ok(KeyVisibility::AllPrivate),
            "m" => Ok(KeyVisibility::MPublic),
            "P" => Ok(KeyVisibility::PPublic),
            "Q" => Ok(KeyVisibility::QPublic),
            other => Err(CodeError::InvalidConfiguration(format!(
                "public key set must be one of none, m, P, Q; got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for KeyVisibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Maximum number of decoding attempts for a given partition and register count.
pub fn keyspace_bound(visibility: KeyVisibility, m: usize) -> BigUint {
    let one = BigUint::one();
    match visibility {
        // 4^1 + ... + 4^m = (4^{m+1} - 4) / 3
        KeyVisibility::AllPrivate => ((&one << (2 * m + 2)) - 4u32) / 3u32,
        KeyVisibility::MPublic => &one << (2 * m),
        KeyVisibility::PPublic | KeyVisibility::QPublic => &one << m,
    }
}

/// Two significant digits, truncated: `2.1e60`.
pub fn scientific(value: &BigUint) -> String {
    let digits = value.to_str_radix(10);
    let exponent = digits.len() - 1;
    let mut chars = digits.chars();
    let lead = chars.next().unwrap_or('0');
    let next = chars.next().unwrap_or('0');
    format!("{lead}.{next}e{exponent}")
}

/// Parts of a key the attacker already knows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PublicValues {
    pub m: Option<usize>,
    pub p: Option<Bitstring>,
    pub q: Option<Bitstring>,
}

pub const DEFAULT_ATTACK_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackReport {
    /// Every key reproducing the ciphertext, sorted.
    pub keys: Vec<KeyMaterial>,
    pub examined: u64,
    /// `keyspace_bound` for the searched partition.
    pub bound: BigUint,
}

fn all_tuples(len: usize) -> impl Iterator<Item = Bitstring> + Clone {
    (0..1u64 << len).map(move |v| Bitstring::from_uint(v, len as u32))
}

fn reproduces(key: &KeyMaterial, plain: &[bool], cipher: &[bool]) -> bool {
    let taps = key.taps();
    let mut q = key.q.bits().to_vec();
    plain.iter().zip(cipher).all(|(&x, &y)| {
        let ok = ((key.p[0] & x) ^ tap_sum(&q, &taps)) == y;
        q = shift(&q, x);
        ok
    })
}

/// Known-plaintext search over the keys allowed by `visibility`: `m`
/// ascending, then every `P` with `P.1 = 1`, then every `Q`.
///
/// With everything private, `m` runs from 1 to `m_max`. The per-`m` work is
/// split across threads; keys come back sorted by `m`, `P`, `Q` whatever the split.
pub fn brute_force_attack(
    ciphertext: &[bool],
    known_plaintext: &[bool],
    visibility: KeyVisibility,
    public: &PublicValues,
    m_max: usize,
    budget: u64,
) -> Result<AttackReport> {
    if ciphertext.len() != known_plaintext.len() {
        return Err(CodeError::InvalidConfiguration(format!(
            "ciphertext has {} bits but the plaintext has {}",
            ciphertext.len(),
            known_plaintext.len()
        )));
    }
    let need = |what: &str| CodeError::InvalidConfiguration(format!("public {what} is required"));
    let (m_range, bound) = match visibility {
        KeyVisibility::AllPrivate => (1..=m_max, keyspace_bound(visibility, m_max)),
        KeyVisibility::MPublic => {
            let m = public.m.ok_or_else(|| need("m"))?;
            (m..=m, keyspace_bound(visibility, m))
        }
        KeyVisibility::PPublic => {
            let m = public.p.as_ref().ok_or_else(|| need("P"))?.len().saturating_sub(1);
            (m..=m, keyspace_bound(visibility, m))
        }
        KeyVisibility::QPublic => {
            let m = public.q.as_ref().ok_or_else(|| need("Q"))?.len();
            (m..=m, keyspace_bound(visibility, m))
        }
    };
    if *m_range.start() == 0 {
        return Err(CodeError::InvalidConfiguration("m must be at least 1".into()));
    }

    let mut keys = Vec::new();
    let mut examined: u64 = 0;
    for m in m_range {
        let p_candidates: Vec<Bitstring> = match visibility {
            KeyVisibility::PPublic => vec![public.p.clone().unwrap()],
            _ => all_tuples(m).map(|rest| Bitstring::from_bits([true]).concat(&rest)).collect(),
        };
        let q_candidates: Vec<Bitstring> = match visibility {
            KeyVisibility::QPublic => vec![public.q.clone().unwrap()],
            _ => all_tuples(m).collect(),
        };
        let count = (p_candidates.len() * q_candidates.len()) as u64;
        if examined + count > budget {
            return Err(CodeError::BudgetExceeded {
                needed: bound.to_string(),
                budget,
                tried: examined,
            });
        }
        let found: Vec<KeyMaterial> = p_candidates
            .par_iter()
            .flat_map_iter(|p| {
                q_candidates.iter().filter_map(move |q| {
                    let key = KeyMaterial::new(p.clone(), q.clone()).ok()?;
                    reproduces(&key, known_plaintext, ciphertext).then_some(key)
                })
            })
            .collect();
        keys.extend(found);
        examined += count;
    }
    keys.sort_by(|a, b| (a.m(), &a.p, &a.q).cmp(&(b.m(), &b.p, &b.q)));
    debug_assert!(bound.to_u64().is_none_or(|b| examined <= b));
    Ok(AttackReport { keys, examined, bound })
}

/// A key file: the `convkey` line, whose `P`/`Q` may be absent for attack
/// inputs, plus an optional `public=<none|m|P|Q>` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyFile {
    pub m: usize,
    pub p: Option<Bitstring>,
    pub q: Option<Bitstring>,
    pub visibility: KeyVisibility,
}

impl KeyFile {
    pub fn key(&self) -> Result<KeyMaterial> {
        match (&self.p, &self.q) {
            (Some(p), Some(q)) => KeyMaterial::new(p.clone(), q.clone()),
            _ => Err(CodeError::InvalidConfiguration(
                "key file lacks P or Q".into(),
            )),
        }
    }

    pub fn public_values(&self) -> PublicValues {
        PublicValues {
            m: Some(self.m),
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = format::content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty key file"))?;
        let fields = format::parse_header(header, KeyMaterial::HEADER, line_no)?;
        let m = format::number(format::required(&fields, "m", line_no)?, "m", line_no)?;
        let bits = |key: &str| -> Result<Option<Bitstring>> {
            format::field(&fields, key)
                .map(|v| v.parse().map_err(|e: CodeError| parse_err(line_no, format!("{key}: {e}"))))
                .transpose()
        };
        let (p, q) = (bits("P")?, bits("Q")?);
        if p.as_ref().is_some_and(|p| p.len() != m + 1) || q.as_ref().is_some_and(|q| q.len() != m) {
            return Err(parse_err(line_no, "P or Q length does not match m"));
        }
        if p.as_ref().is_some_and(|p| !p[0]) {
            return Err(parse_err(line_no, "P.1 must be 1"));
        }
        let mut visibility = KeyVisibility::AllPrivate;
        for (line_no, line) in lines {
            let value = line
                .strip_prefix("public=")
                .ok_or_else(|| parse_err(line_no, "expected `public=<none|m|P|Q>`"))?;
            visibility = value.parse().map_err(|e: CodeError| parse_err(line_no, e.to_string()))?;
        }
        Ok(Self { m, p, q, visibility })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} m={}", KeyMaterial::HEADER, self.m);
        if let Some(p) = &self.p {
            out.push_str(&format!(" P={p}"));
        }
        if let Some(q) = &self.q {
            out.push_str(&format!(" Q={q}"));
        }
        out.push_str(&format!("\npublic={}\n", self.visibility));
        out
    }
}
