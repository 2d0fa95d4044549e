//! Exhaustive injectivity check over all short inputs.

use std::collections::HashMap;

use crate::error::{CodeError, Result};
use crate::symbols::{Alphabet, Bitstring, SymString};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Every string of length `1..=max_len` has a distinct encoding.
    Pass { strings: u64 },
    /// Two distinct inputs with the same encoding.
    Fail { first: SymString, second: SymString },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass { .. })
    }
}

/// Number of strings of length `1..=max_len`, or `None` on overflow.
pub fn enumeration_size(alphabet_len: usize, max_len: usize) -> Option<u64> {
    let k = alphabet_len as u64;
    (1..=max_len as u32).try_fold(0u64, |acc, len| acc.checked_add(k.checked_pow(len)?))
}

/// Encodes every string of length `1..=max_len` and compares all encodings
/// jointly across lengths.
pub fn injectivity_oracle<F>(
    encoder: F,
    alphabet: &Alphabet,
    max_len: usize,
    budget: u64,
) -> Result<Verdict>
where
    F: Fn(&SymString) -> Result<Bitstring>,
{
    if max_len == 0 {
        return Err(CodeError::InvalidConfiguration(
            "max_len must be at least 1".into(),
        ));
    }
    let needed = enumeration_size(alphabet.len(), max_len);
    if needed.is_none_or(|n| n > budget) {
        return Err(CodeError::BudgetExceeded {
            needed: needed.map_or_else(|| "more than 2^64".into(), |n| n.to_string()),
            budget,
            tried: 0,
        });
    }
    let mut seen: HashMap<Bitstring, SymString> = HashMap::new();
    for x in (1..=max_len).flat_map(|len| alphabet.strings_of_len(len)) {
        let y = encoder(&x)?;
        if let Some(first) = seen.get(&y) {
            return Ok(Verdict::Fail {
                first: first.clone(),
                second: x,
            });
        }
        seen.insert(y, x);
    }
    Ok(Verdict::Pass {
        strings: needed.unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        "ab".parse().unwrap()
    }

    #[test]
    fn constant_encoder_collides_on_first_pair() {
        let v = injectivity_oracle(|_| Ok("0".parse().unwrap()), &ab(), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            v,
            Verdict::Fail {
                first: "a".into(),
                second: "b".into()
            }
        );
    }

    #[test]
    fn homomorphic_bit_encoder_passes() {
        let enc = |x: &SymString| Ok(x.iter().map(|&c| c == 'b').collect());
        let v = injectivity_oracle(enc, &ab(), 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(v, Verdict::Pass { strings: 126 });
    }

    #[test]
    fn collisions_across_lengths_are_detected() {
        // a -> 0, b -> 00: "aa" and "b" collide.
        let enc = |x: &SymString| {
            Ok(x.iter()
                .flat_map(|&c| if c == 'a' { vec![false] } else { vec![false, false] })
                .collect())
        };
        let v = injectivity_oracle(enc, &ab(), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            v,
            Verdict::Fail {
                first: "b".into(),
                second: "aa".into()
            }
        );
    }

    #[test]
    fn budget_is_enforced() {
        let err = injectivity_oracle(|_| Ok(Bitstring::new()), &ab(), 20, 1000).unwrap_err();
        assert!(matches!(err, CodeError::BudgetExceeded { budget: 1000, .. }));
        assert!(injectivity_oracle(|_| Ok(Bitstring::new()), &ab(), 0, 10).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(enumeration_size(2, 6), Some(126));
        assert_eq!(enumeration_size(3, 8), Some(9840));
        assert_eq!(enumeration_size(1000, 10), None);
    }
}
