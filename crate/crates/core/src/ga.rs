//! Generalized adaptive (GA) codes: the context of each position is chosen by
//! an adaptive function that may inspect the whole input.

use std::fmt;
use std::sync::Arc;

use crate::adaptive::ContextCodeTable;
use crate::error::Result;
use crate::symbols::{Alphabet, Bitstring, SymString, Symbol};

type ContextFn = dyn Fn(usize, &[Symbol]) -> SymString + Send + Sync;
type CodewordFn = dyn Fn(Symbol, &[Symbol]) -> Result<Bitstring> + Send + Sync;

/// `F(i, s)`: the context handed to the codeword function at 1-based position `i`.
#[derive(Clone)]
pub struct AdaptiveFunction {
    eval: Arc<ContextFn>,
    causal: bool,
}

impl AdaptiveFunction {
    /// `causal` declares that `F(i, s)` reads only `s_1..s_{i-1}`; it is not checked.
    pub fn new<F>(causal: bool, eval: F) -> Self
    where
        F: Fn(usize, &[Symbol]) -> SymString + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            causal,
        }
    }

    /// λ at position 1 and past the end, otherwise at most `n` preceding symbols.
    pub fn previous_symbols(n: usize) -> Self {
        Self::new(true, move |i, s| {
            if i <= 1 || i > s.len() {
                SymString::new()
            } else {
                SymString::from(&s[(i - 1).saturating_sub(n)..i - 1])
            }
        })
    }

    /// λ at position 1 and past the end, otherwise the whole prefix `s_1..s_{i-1}`.
    pub fn full_prefix() -> Self {
        Self::new(true, |i, s| {
            if i <= 1 || i > s.len() {
                SymString::new()
            } else {
                SymString::from(&s[..i - 1])
            }
        })
    }

    pub fn evaluate(&self, i: usize, s: &[Symbol]) -> SymString {
        (self.eval)(i, s)
    }

    pub fn is_causal(&self) -> bool {
        self.causal
    }
}

impl fmt::Debug for AdaptiveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdaptiveFunction").field("causal", &self.causal).finish_non_exhaustive()
    }
}

/// A codeword function `c_F(σ, context)` paired with its adaptive function.
#[derive(Clone)]
pub struct GaCode {
    alphabet: Alphabet,
    codeword: Arc<CodewordFn>,
    adaptive: AdaptiveFunction,
}

impl GaCode {
    pub fn new<C>(alphabet: Alphabet, adaptive: AdaptiveFunction, codeword: C) -> Self
    where
        C: Fn(Symbol, &[Symbol]) -> Result<Bitstring> + Send + Sync + 'static,
    {
        Self {
            alphabet,
            codeword: Arc::new(codeword),
            adaptive,
        }
    }

    /// Embeds an order-n table: `F` is the `previous_symbols(n)` window.
    pub fn from_order_n(table: &ContextCodeTable) -> Self {
        let table = table.clone();
        let alphabet = table.alphabet().clone();
        let adaptive = AdaptiveFunction::previous_symbols(table.order());
        Self::new(alphabet, adaptive, move |s, u| table.codeword(s, u).cloned())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn adaptive_function(&self) -> &AdaptiveFunction {
        &self.adaptive
    }

    pub fn codeword(&self, symbol: Symbol, context: &[Symbol]) -> Result<Bitstring> {
        (self.codeword)(symbol, context)
    }

    /// `c_F(x_1, F(1, x)) ... c_F(x_m, F(m, x))`.
    pub fn encode(&self, x: &[Symbol]) -> Result<Bitstring> {
        self.alphabet.check(x)?;
        let mut out = Bitstring::new();
        for (i, &s) in x.iter().enumerate() {
            let u = self.adaptive.evaluate(i + 1, x);
            out.append(&self.codeword(s, &u)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for GaCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaCode")
            .field("alphabet", &self.alphabet.to_string())
            .field("adaptive", &self.adaptive)
            .finish_non_exhaustive()
    }
}
