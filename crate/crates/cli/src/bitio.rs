//! Bitstrings on the wire: `0`/`1` text, or a packed container of an 8-byte
//! little-endian bit count followed by the bits, MSB first, zero-padded.

use adaptive_codes::{Bitstring, CodeError, SymString};

/// Input text with one trailing line break removed; `-` alone is λ.
pub fn trim_input(raw: &[u8]) -> Result<String, CodeError> {
    let text = std::str::from_utf8(raw).map_err(|_| CodeError::MalformedStream {
        offset: 0,
        reason: "input is not UTF-8".into(),
    })?;
    let text = text.strip_suffix('\n').unwrap_or(text);
    let text = text.strip_suffix('\r').unwrap_or(text);
    Ok(if text == "-" { String::new() } else { text.to_string() })
}

pub fn symbols_from_text(raw: &[u8]) -> Result<SymString, CodeError> {
    Ok(trim_input(raw)?.chars().collect())
}

pub fn bits_from_text(raw: &[u8]) -> Result<Bitstring, CodeError> {
    let text = trim_input(raw)?;
    if text.is_empty() {
        return Ok(Bitstring::new());
    }
    text.parse()
}

pub fn pack(bits: &Bitstring) -> Vec<u8> {
    let mut out = (bits.len() as u64).to_le_bytes().to_vec();
    for chunk in bits.chunks(8) {
        let byte = chunk.iter().enumerate().fold(0u8, |b, (i, &bit)| b | ((bit as u8) << (7 - i)));
        out.push(byte);
    }
    out
}

pub fn unpack(raw: &[u8]) -> Result<Bitstring, CodeError> {
    let header: [u8; 8] = raw
        .get(..8)
        .and_then(|h| h.try_into().ok())
        .ok_or(CodeError::TruncatedStream { offset: raw.len() * 8 })?;
    let len = u64::from_le_bytes(header) as usize;
    let body = &raw[8..];
    if body.len() != len.div_ceil(8) {
        return Err(CodeError::MalformedStream {
            offset: 64,
            reason: format!("header declares {len} bits but {} bytes follow", body.len()),
        });
    }
    let bits: Bitstring = (0..len).map(|i| body[i / 8] >> (7 - i % 8) & 1 == 1).collect();
    if pack(&bits)[8..] != *body {
        return Err(CodeError::MalformedStream {
            offset: 64 + len,
            reason: "padding bits are not zero".into(),
        });
    }
    Ok(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_round_trip() {
        for text in ["", "1", "00011010", "101100111"] {
            let bits: Bitstring = if text.is_empty() { Bitstring::new() } else { text.parse().unwrap() };
            assert_eq!(unpack(&pack(&bits)).unwrap(), bits);
        }
        assert_eq!(pack(&"101".parse().unwrap()), [3, 0, 0, 0, 0, 0, 0, 0, 0b1010_0000]);
    }

    #[test]
    fn packed_errors() {
        assert!(unpack(&[1, 0]).is_err());
        assert!(unpack(&[3, 0, 0, 0, 0, 0, 0, 0]).is_err());
        assert!(unpack(&[3, 0, 0, 0, 0, 0, 0, 0, 0b1010_0001]).is_err());
    }

    #[test]
    fn text_input() {
        assert_eq!(trim_input(b"abaa\n").unwrap(), "abaa");
        assert_eq!(trim_input(b"abaa\r\n").unwrap(), "abaa");
        assert_eq!(trim_input(b"-\n").unwrap(), "");
        assert!(bits_from_text(b"\n").unwrap().is_empty());
        assert!(bits_from_text(b"012").is_err());
    }
}
