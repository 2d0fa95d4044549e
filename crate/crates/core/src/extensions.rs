//! (p,q)-adaptive codes, time-varying codes and adaptive time-varying codes.
//!
//! A (p,q) code assigns codewords to overlapping width-`q` blocks (stride 1),
//! conditioned on at most `p` symbols before the block. A time-varying code
//! conditions on the position of the symbol; the adaptive variant of order `n`
//! conditions on both the position and the `n` preceding symbols.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::adaptive::{check_column, text_digest, PrefixCertificate, PrefixViolation};
use crate::error::{parse_err, CodeError, Result};
use crate::format;
use crate::symbols::{context_window, Alphabet, Bitstring, SymString, Symbol};

/// Codeword map `(block, context) -> c` of a `(p,q)`-adaptive code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqCodeTable {
    alphabet: Alphabet,
    p: usize,
    q: usize,
    entries: IndexMap<(SymString, SymString), Bitstring>,
}

impl PqCodeTable {
    pub const HEADER: &'static str = "pq-adaptive";

    pub fn new(alphabet: Alphabet, p: usize, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(CodeError::InvalidConfiguration("block width q must be at least 1".into()));
        }
        Ok(Self { alphabet, p, q, entries: IndexMap::new() })
    }

    /// Builds a table from `(block, context, codeword)` rows, `-` denoting λ.
    pub fn from_rows(alphabet: Alphabet, p: usize, q: usize, rows: &[(&str, &str, &str)]) -> Result<Self> {
        let mut table = Self::new(alphabet, p, q)?;
        for &(block, context, codeword) in rows {
            table.insert(SymString::from(block), SymString::from_token(context), codeword.parse()?)?;
        }
        Ok(table)
    }

    pub fn insert(&mut self, block: SymString, context: SymString, codeword: Bitstring) -> Result<()> {
        self.alphabet.check(&block)?;
        self.alphabet.check(&context)?;
        if block.len() != self.q {
            return Err(CodeError::InvalidConfiguration(format!(
                "block {} does not have width {}",
                block.to_token(),
                self.q
            )));
        }
        if context.len() > self.p {
            return Err(CodeError::InvalidConfiguration(format!(
                "context {} is longer than p = {}",
                context.to_token(),
                self.p
            )));
        }
        if codeword.is_empty() {
            return Err(CodeError::InvalidCodewordSet(format!(
                "empty codeword for ({}, {})",
                block.to_token(),
                context.to_token()
            )));
        }
        let key = (block, context);
        if self.entries.contains_key(&key) {
            return Err(CodeError::InvalidConfiguration(format!(
                "duplicate entry ({}, {})",
                key.0.to_token(),
                key.1.to_token()
            )));
        }
        self.entries.insert(key, codeword);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SymString, &SymString, &Bitstring)> {
        self.entries.iter().map(|((b, u), c)| (b, u, c))
    }

    pub fn get(&self, block: &[Symbol], context: &[Symbol]) -> Option<&Bitstring> {
        self.entries.get(&(SymString::from(block), SymString::from(context)))
    }

    fn columns(&self) -> IndexMap<&SymString, Vec<(&SymString, &Bitstring)>> {
        let mut cols: IndexMap<&SymString, Vec<(&SymString, &Bitstring)>> = IndexMap::new();
        for ((b, u), c) in &self.entries {
            cols.entry(u).or_default().push((b, c));
        }
        cols
    }

    /// Checks that the block codewords of every context form a prefix code.
    pub fn verify(&self) -> PrefixCertificate {
        let cols = self.columns();
        let refusal = cols
            .iter()
            .find_map(|(u, col)| check_column(u, col.iter().map(|(b, c)| ((*b).clone(), *c))));
        PrefixCertificate { table_digest: text_digest(&self.to_text()), contexts_checked: cols.len(), refusal }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} p={} q={} sigma={}\n", Self::HEADER, self.p, self.q, self.alphabet);
        for ((b, u), c) in &self.entries {
            out.push_str(&format!("{}\t{}\t{c}\n", b.to_token(), u.to_token()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = format::content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty table file"))?;
        let fields = format::parse_header(header, Self::HEADER, line_no)?;
        let p = format::number(format::required(&fields, "p", line_no)?, "p", line_no)?;
        let q = format::number(format::required(&fields, "q", line_no)?, "q", line_no)?;
        let alphabet: Alphabet = format::required(&fields, "sigma", line_no)?.parse()?;
        let mut table = Self::new(alphabet, p, q).map_err(|e| parse_err(line_no, e.to_string()))?;
        for (line_no, line) in lines {
            let cols = format::columns(line, 3, line_no)?;
            let codeword: Bitstring = cols[2].parse().map_err(|e: CodeError| parse_err(line_no, e.to_string()))?;
            table
                .insert(SymString::from(cols[0]), SymString::from_token(cols[1]), codeword)
                .map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        Ok(table)
    }
}

fn unmapped(what: &[Symbol], context: &[Symbol]) -> CodeError {
    CodeError::UnmappedContext {
        symbol: SymString::from(what).to_token(),
        context: SymString::from(context).to_token(),
    }
}

/// `c(x_1..x_q, λ) c(x_2..x_{q+1}, x_1) ...`, one codeword per window.
pub fn encode_pq(table: &PqCodeTable, x: &[Symbol]) -> Result<Bitstring> {
    table.alphabet.check(x)?;
    if x.is_empty() {
        return Ok(Bitstring::new());
    }
    if x.len() < table.q {
        return Err(CodeError::BlockUnderflow { len: x.len(), q: table.q });
    }
    let mut out = Bitstring::new();
    for i in 0..=x.len() - table.q {
        let block = &x[i..i + table.q];
        let u = context_window(&x[..i], table.p);
        out.append(table.get(block, u).ok_or_else(|| unmapped(block, u))?);
    }
    Ok(out)
}

/// Greedy inverse of [`encode_pq`]; each block after the first must repeat
/// the last `q - 1` symbols already decoded.
pub fn decode_pq(table: &PqCodeTable, y: &[bool]) -> Result<SymString> {
    table.verify().into_result()?;
    let cols: HashMap<&SymString, Vec<(&SymString, &Bitstring)>> = table.columns().into_iter().collect();
    let mut out = SymString::new();
    let mut offset = 0;
    let mut step = 0;
    while offset < y.len() {
        let rest = &y[offset..];
        let u = SymString::from(context_window(&out[..step], table.p));
        let col = cols.get(&u).map(Vec::as_slice).unwrap_or(&[]);
        let Some((block, c)) = col.iter().find(|(_, c)| c.is_prefix_of(rest)) else {
            if col.iter().any(|(_, c)| c.starts_with(rest)) {
                return Err(CodeError::TrailingGarbage { offset });
            }
            return Err(CodeError::MalformedStream {
                offset,
                reason: format!("no block codeword of context {} matches", u.to_token()),
            });
        };
        if step == 0 {
            out.extend_from_slice(block);
        } else {
            if block[..table.q - 1] != out[step..] {
                return Err(CodeError::InconsistentOverlap { offset });
            }
            out.push(block[table.q - 1]);
        }
        offset += c.len();
        step += 1;
    }
    Ok(out)
}

type AtvFn = dyn Fn(Symbol, &[Symbol], usize) -> Option<Bitstring> + Send + Sync;

/// Codeword function `(σ, context, position) -> c` of an adaptive time-varying
/// code of order `n`. Positions count from 1.
///
/// A rule with a horizon is only defined on positions up to it.
#[derive(Clone)]
pub struct AtvRule {
    alphabet: Alphabet,
    order: usize,
    horizon: Option<usize>,
    eval: Arc<AtvFn>,
}

impl fmt::Debug for AtvRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AtvRule")
            .field("alphabet", &self.alphabet)
            .field("order", &self.order)
            .field("horizon", &self.horizon)
            .finish_non_exhaustive()
    }
}

impl AtvRule {
    /// `eval` receives the context window (at most `order` symbols) and the
    /// position; `None` means the rule has no value there.
    pub fn new(
        alphabet: Alphabet,
        order: usize,
        horizon: Option<usize>,
        eval: impl Fn(Symbol, &[Symbol], usize) -> Option<Bitstring> + Send + Sync + 'static,
    ) -> Self {
        Self { alphabet, order, horizon, eval: Arc::new(eval) }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn horizon(&self) -> Option<usize> {
        self.horizon
    }

    fn check_position(&self, position: usize) -> Result<()> {
        match self.horizon {
            Some(horizon) if position > horizon => Err(CodeError::HorizonExceeded { position, horizon }),
            _ => Ok(()),
        }
    }

    /// Codeword for `symbol` at 1-based `position` after `history`.
    pub fn codeword(&self, symbol: Symbol, history: &[Symbol], position: usize) -> Result<Bitstring> {
        self.check_position(position)?;
        let u = context_window(history, self.order);
        match (self.eval)(symbol, u, position) {
            Some(c) if c.is_empty() => Err(CodeError::InvalidCodewordSet(format!(
                "empty codeword for ({symbol}, {}, {position})",
                SymString::from(u).to_token()
            ))),
            Some(c) => Ok(c),
            None => Err(unmapped(&[symbol], u)),
        }
    }
}

/// `c(x_1, λ, 1) c(x_2, x_1, 2) ...` with contexts of at most `n` symbols.
pub fn encode_atv(rule: &AtvRule, x: &[Symbol]) -> Result<Bitstring> {
    rule.alphabet.check(x)?;
    let mut out = Bitstring::new();
    for i in 0..x.len() {
        out.append(&rule.codeword(x[i], &x[..i], i + 1)?);
    }
    Ok(out)
}

/// Greedy inverse of [`encode_atv`]. The codewords offered at each step must
/// form a prefix code; otherwise decoding refuses with the witness.
pub fn decode_atv(rule: &AtvRule, y: &[bool]) -> Result<SymString> {
    let mut out = SymString::new();
    let mut offset = 0;
    while offset < y.len() {
        let position = out.len() + 1;
        rule.check_position(position)?;
        let u = SymString::from(context_window(&out, rule.order));
        let col: Vec<(Symbol, Bitstring)> = rule
            .alphabet
            .symbols()
            .iter()
            .filter_map(|&s| rule.codeword(s, &out, position).ok().map(|c| (s, c)))
            .collect();
        if let Some(v) = family_violation(&u, &col) {
            return Err(v.into_error());
        }
        let rest = &y[offset..];
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
                    reason: format!("no codeword of context {} at position {position} matches", u.to_token()),
                });
            }
        }
    }
    Ok(out)
}

fn family_violation(context: &SymString, col: &[(Symbol, Bitstring)]) -> Option<PrefixViolation> {
    check_column(context, col.iter().map(|(s, c)| (SymString::from(vec![*s]), c)))
}

/// Codeword function `(σ, position) -> c` of a time-varying code.
#[derive(Clone, Debug)]
pub struct TimeVaryingRule {
    inner: AtvRule,
}

impl TimeVaryingRule {
    pub fn new(
        alphabet: Alphabet,
        horizon: Option<usize>,
        eval: impl Fn(Symbol, usize) -> Option<Bitstring> + Send + Sync + 'static,
    ) -> Self {
        Self { inner: AtvRule::new(alphabet, 0, horizon, move |s, _, i| eval(s, i)) }
    }

    /// The same code as an adaptive time-varying code of order 0.
    pub fn as_atv(&self) -> &AtvRule {
        &self.inner
    }

    pub fn codeword(&self, symbol: Symbol, position: usize) -> Result<Bitstring> {
        self.inner.codeword(symbol, &[], position)
    }
}

/// `c(x_1, 1) c(x_2, 2) ... c(x_m, m)`.
pub fn encode_tv(rule: &TimeVaryingRule, x: &[Symbol]) -> Result<Bitstring> {
    encode_atv(&rule.inner, x)
}

pub fn decode_tv(rule: &TimeVaryingRule, y: &[bool]) -> Result<SymString> {
    decode_atv(&rule.inner, y)
}

/// How a finite rule table covers the unbounded position range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionLimit {
    /// Position `i` uses the entries of position `((i - 1) mod k) + 1`.
    Period(usize),
    /// Positions beyond `k` are rejected.
    Horizon(usize),
}

impl PositionLimit {
    pub fn bound(self) -> usize {
        match self {
            PositionLimit::Period(k) | PositionLimit::Horizon(k) => k,
        }
    }

    fn resolve(self, position: usize) -> usize {
        match self {
            PositionLimit::Period(k) => (position - 1) % k + 1,
            PositionLimit::Horizon(_) => position,
        }
    }
}

/// Context column of a rule table entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ContextPattern {
    Exact(SymString),
    /// `*`: any context without an exact entry.
    Any,
}

impl ContextPattern {
    fn to_token(&self) -> String {
        match self {
            ContextPattern::Exact(u) => u.to_token(),
            ContextPattern::Any => "*".into(),
        }
    }
}

/// File form of a time-varying (order 0) or adaptive time-varying rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleTable {
    alphabet: Alphabet,
    order: usize,
    limit: PositionLimit,
    entries: IndexMap<(Symbol, ContextPattern, usize), Bitstring>,
}

impl RuleTable {
    pub const TV_HEADER: &'static str = "time-varying";
    pub const ATV_HEADER: &'static str = "adaptive-time-varying";

    pub fn new(alphabet: Alphabet, order: usize, limit: PositionLimit) -> Result<Self> {
        if limit.bound() == 0 {
            return Err(CodeError::InvalidConfiguration("period or horizon must be at least 1".into()));
        }
        Ok(Self { alphabet, order, limit, entries: IndexMap::new() })
    }

    pub fn insert(&mut self, symbol: Symbol, context: ContextPattern, position: usize, codeword: Bitstring) -> Result<()> {
        self.alphabet.check(&[symbol])?;
        if let ContextPattern::Exact(u) = &context {
            self.alphabet.check(u)?;
            if u.len() > self.order {
                return Err(CodeError::InvalidConfiguration(format!(
                    "context {} is longer than the order {}",
                    u.to_token(),
                    self.order
                )));
            }
        }
        if position == 0 || position > self.limit.bound() {
            return Err(CodeError::InvalidConfiguration(format!(
                "position {position} is outside 1..={}",
                self.limit.bound()
            )));
        }
        if codeword.is_empty() {
            return Err(CodeError::InvalidCodewordSet(format!("empty codeword for ({symbol}, {position})")));
        }
        let key = (symbol, context, position);
        if self.entries.contains_key(&key) {
            return Err(CodeError::InvalidConfiguration(format!(
                "duplicate entry ({}, {}, {})",
                key.0,
                key.1.to_token(),
                key.2
            )));
        }
        self.entries.insert(key, codeword);
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn limit(&self) -> PositionLimit {
        self.limit
    }

    fn lookup(&self, symbol: Symbol, context: &[Symbol], position: usize) -> Option<&Bitstring> {
        let i = self.limit.resolve(position);
        self.entries
            .get(&(symbol, ContextPattern::Exact(SymString::from(context)), i))
            .or_else(|| self.entries.get(&(symbol, ContextPattern::Any, i)))
    }

    /// Checks every (context, position) family reachable through the table,
    /// including the wildcard family seen by contexts without exact entries.
    pub fn verify(&self) -> PrefixCertificate {
        let mut families: IndexMap<(Option<&SymString>, usize), ()> = IndexMap::new();
        for (_, u, i) in self.entries.keys() {
            let u = match u {
                ContextPattern::Exact(u) => Some(u),
                ContextPattern::Any => None,
            };
            families.insert((u, *i), ());
        }
        let refusal = families.keys().find_map(|&(u, i)| {
            let col: Vec<(Symbol, Bitstring)> = self
                .alphabet
                .symbols()
                .iter()
                .filter_map(|&s| {
                    let c = match u {
                        Some(u) => self.lookup(s, u, i),
                        None => self.entries.get(&(s, ContextPattern::Any, i)),
                    };
                    c.map(|c| (s, c.clone()))
                })
                .collect();
            let label = u.cloned().unwrap_or_else(|| SymString::from("*"));
            family_violation(&label, &col)
        });
        PrefixCertificate { table_digest: text_digest(&self.to_text()), contexts_checked: families.len(), refusal }
    }

    pub fn to_rule(&self) -> AtvRule {
        let table = self.clone();
        let horizon = match self.limit {
            PositionLimit::Horizon(k) => Some(k),
            PositionLimit::Period(_) => None,
        };
        AtvRule::new(self.alphabet.clone(), self.order, horizon, move |s, u, i| table.lookup(s, u, i).cloned())
    }

    /// A time-varying rule; fails for tables of order above 0.
    pub fn to_tv_rule(&self) -> Result<TimeVaryingRule> {
        if self.order != 0 {
            return Err(CodeError::InvalidConfiguration(format!(
                "rule has order {}, a time-varying rule has none",
                self.order
            )));
        }
        Ok(TimeVaryingRule { inner: self.to_rule() })
    }

    pub fn to_text(&self) -> String {
        let limit = match self.limit {
            PositionLimit::Period(k) => format!("period={k}"),
            PositionLimit::Horizon(k) => format!("horizon={k}"),
        };
        let mut out = if self.order == 0 {
            format!("{} sigma={} {limit}\n", Self::TV_HEADER, self.alphabet)
        } else {
            format!("{} n={} sigma={} {limit}\n", Self::ATV_HEADER, self.order, self.alphabet)
        };
        for ((s, u, i), c) in &self.entries {
            if self.order == 0 {
                out.push_str(&format!("{s}\t{i}\t{c}\n"));
            } else {
                out.push_str(&format!("{s}\t{}\t{i}\t{c}\n", u.to_token()));
            }
        }
        out
    }

    /// Parses either header. Time-varying entries are `σ pos cw`; adaptive
    /// ones `σ ctx pos cw`, where `ctx` is `-`, a string or `*`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = format::content_lines(text);
        let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty rule file"))?;
        let tv = header.split(' ').next() == Some(Self::TV_HEADER);
        let fields = format::parse_header(header, if tv { Self::TV_HEADER } else { Self::ATV_HEADER }, line_no)?;
        let order = if tv { 0 } else { format::number(format::required(&fields, "n", line_no)?, "n", line_no)? };
        let alphabet: Alphabet = format::required(&fields, "sigma", line_no)?.parse()?;
        let limit = match (format::field(&fields, "period"), format::field(&fields, "horizon")) {
            (Some(k), None) => PositionLimit::Period(format::number(k, "period", line_no)?),
            (None, Some(k)) => PositionLimit::Horizon(format::number(k, "horizon", line_no)?),
            _ => return Err(parse_err(line_no, "exactly one of `period=` or `horizon=` is required")),
        };
        let mut table = Self::new(alphabet, order, limit).map_err(|e| parse_err(line_no, e.to_string()))?;
        for (line_no, line) in lines {
            let cols = format::columns(line, if tv { 3 } else { 4 }, line_no)?;
            let symbol = format::single_symbol(cols[0], line_no)?;
            let context = match (tv, cols[1]) {
                (true, _) => ContextPattern::Exact(SymString::new()),
                (false, "*") => ContextPattern::Any,
                (false, u) => ContextPattern::Exact(SymString::from_token(u)),
            };
            let position = format::number(cols[cols.len() - 2], "position", line_no)?;
            let codeword: Bitstring = cols[cols.len() - 1]
                .parse()
                .map_err(|e: CodeError| parse_err(line_no, e.to_string()))?;
            table
                .insert(symbol, context, position, codeword)
                .map_err(|e| parse_err(line_no, e.to_string()))?;
        }
        if tv {
            for &s in table.alphabet.symbols() {
                for i in 1..=limit.bound() {
                    if table.lookup(s, &[], i).is_none() {
                        return Err(parse_err(line_no, format!("no entry for ({s}, {i})")));
                    }
                }
            }
        }
        Ok(table)
    }
}
