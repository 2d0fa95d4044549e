//! Loading a coding scheme from command-line parameters.

use std::path::Path;

use adaptive_codes::conv::{as_adaptive_code, conv_encode, ConvCodeSpec};
use adaptive_codes::extensions::{decode_atv, decode_pq, encode_atv, encode_pq, AtvRule, PqCodeTable, RuleTable};
use adaptive_codes::{huffman, lz, Alphabet, Bitstring, CodeError, ContextCodeTable, PrefixCertificate, SymString};
use clap::ValueEnum;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeKind {
    /// Order-n adaptive code table (`adaptive-code` file).
    Table,
    /// Adaptive Huffman coding over `--alphabet`.
    Huffman,
    /// Lempel-Ziv parsing over `--alphabet`, taken in the given order.
    Lz,
    /// (n,1,m) convolutional code (`conv` file); input and output are bits.
    Conv,
    /// (p,q)-adaptive code table (`pq-adaptive` file).
    Pq,
    /// Time-varying code (`time-varying` file).
    Tv,
    /// Adaptive time-varying code (`adaptive-time-varying` file).
    Atv,
}

pub enum Scheme {
    Table(ContextCodeTable),
    Huffman(Alphabet),
    Lz(Alphabet),
    Conv(ConvCodeSpec),
    Pq(PqCodeTable),
    Rule { table: RuleTable, rule: AtvRule },
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

impl Scheme {
    pub fn load(kind: SchemeKind, table: Option<&Path>, alphabet: Option<&str>) -> Result<Self, Failure> {
        let file = |what: &str| -> Result<String, Failure> {
            let path = table.ok_or_else(|| Failure::Usage(format!("--scheme {what} needs --table")))?;
            read_file(path)
        };
        let sigma = |what: &str| -> Result<Alphabet, Failure> {
            let text = alphabet.ok_or_else(|| Failure::Usage(format!("--scheme {what} needs --alphabet")))?;
            Ok(text.parse::<Alphabet>()?)
        };
        Ok(match kind {
            SchemeKind::Table => Scheme::Table(ContextCodeTable::parse(&file("table")?)?),
            SchemeKind::Huffman => Scheme::Huffman(sigma("huffman")?),
            SchemeKind::Lz => Scheme::Lz(sigma("lz")?),
            SchemeKind::Conv => Scheme::Conv(file("conv")?.parse()?),
            SchemeKind::Pq => Scheme::Pq(PqCodeTable::parse(&file("pq")?)?),
            SchemeKind::Tv | SchemeKind::Atv => {
                let table = RuleTable::parse(&file(if kind == SchemeKind::Tv { "tv" } else { "atv" })?)?;
                if kind == SchemeKind::Tv {
                    table.to_tv_rule()?;
                }
                let rule = table.to_rule();
                Scheme::Rule { table, rule }
            }
        })
    }

    /// Picks the scheme from a file's header line.
    pub fn detect(text: &str) -> Option<SchemeKind> {
        let header = text.lines().find(|l| !l.trim().is_empty() && !l.starts_with('#'))?;
        Some(match header.split(' ').next()? {
            ContextCodeTable::HEADER => SchemeKind::Table,
            ConvCodeSpec::HEADER => SchemeKind::Conv,
            PqCodeTable::HEADER => SchemeKind::Pq,
            RuleTable::TV_HEADER => SchemeKind::Tv,
            RuleTable::ATV_HEADER => SchemeKind::Atv,
            _ => return None,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Scheme::Table(t) => t.alphabet().clone(),
            Scheme::Huffman(a) | Scheme::Lz(a) => a.clone(),
            Scheme::Conv(_) => Alphabet::binary(),
            Scheme::Pq(t) => t.alphabet().clone(),
            Scheme::Rule { rule, .. } => rule.alphabet().clone(),
        }
    }

    pub fn encode(&self, x: &SymString) -> Result<Bitstring, CodeError> {
        match self {
            Scheme::Table(t) => t.encode(x),
            Scheme::Huffman(a) => huffman::encode_ah(a, x),
            Scheme::Lz(a) => lz::lz_encode(a, x),
            Scheme::Conv(spec) => Ok(conv_encode(spec, &Bitstring::from_symbols(x)?)),
            Scheme::Pq(t) => encode_pq(t, x),
            Scheme::Rule { rule, .. } => encode_atv(rule, x),
        }
    }

    pub fn decode(&self, y: &Bitstring) -> Result<SymString, CodeError> {
        match self {
            Scheme::Table(t) => t.decode(y),
            Scheme::Huffman(a) => huffman::decode_ah(a, y),
            Scheme::Lz(a) => lz::lz_decode(a, y),
            Scheme::Conv(spec) => Ok(as_adaptive_code(spec)?.decode(y)?.to_symbols()),
            Scheme::Pq(t) => decode_pq(t, y),
            Scheme::Rule { rule, .. } => decode_atv(rule, y),
        }
    }

    /// Prefix certificate of a table-backed scheme.
    pub fn certify(&self) -> Result<PrefixCertificate, CodeError> {
        match self {
            Scheme::Table(t) => Ok(t.verify()),
            Scheme::Conv(spec) => Ok(as_adaptive_code(spec)?.to_table().verify()),
            Scheme::Pq(t) => Ok(t.verify()),
            Scheme::Rule { table, .. } => Ok(table.verify()),
            Scheme::Huffman(_) | Scheme::Lz(_) => Err(CodeError::InvalidConfiguration(
                "only table, conv, pq, tv and atv files can be certified".into(),
            )),
        }
    }
}
