//! Adaptive Huffman coding by the sibling transformation.
//!
//! Every symbol starts with frequency 1, so there is no escape leaf. Nodes are
//! ordered level by level from the deepest level up to the root, left to right
//! within a level; a node's successors are the nodes after it in that order.
//! Each update walks from the coded leaf to the root. At each node of
//! frequency `k`, if the immediate successor has frequency below `k + 1`, the
//! node's subtree is exchanged with the subtree of the last successor whose
//! frequency is at most `k` (never with its own parent), and the node's
//! frequency becomes `k + 1`.
//!
//! Frequencies are generic over the counter type; [`HuffmanTree`] fixes it to
//! `u64`.

use std::collections::VecDeque;

use num_traits::{PrimInt, Unsigned};

use crate::error::{CodeError, Result};
use crate::ga::{AdaptiveFunction, GaCode};
use crate::symbols::{Alphabet, Bitstring, SymString, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node<W> {
    weight: W,
    parent: Option<usize>,
    children: Option<(usize, usize)>,
    symbol: Option<Symbol>,
}

/// A Huffman tree `T_i` together with its frequencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanTreeState<W = u64> {
    alphabet: Alphabet,
    nodes: Vec<Node<W>>,
    root: usize,
    /// Arena index of each symbol's leaf, by alphabet index.
    leaves: Vec<usize>,
}

impl<W: PrimInt + Unsigned> HuffmanTreeState<W> {
    /// `T_0`: Huffman's construction over frequency 1 for every symbol.
    ///
    /// Subtrees wait in a first-in first-out queue seeded in alphabet order;
    /// the two front items are merged, the earlier one becoming the left child.
    /// With equal initial weights the queue stays sorted by weight.
    pub fn initial(alphabet: &Alphabet) -> Result<Self> {
        if alphabet.len() < 2 {
            return Err(CodeError::UnsupportedAlphabet(
                "adaptive Huffman coding needs at least two symbols".into(),
            ));
        }
        let mut nodes = Vec::with_capacity(2 * alphabet.len() - 1);
        let mut queue = VecDeque::new();
        for &s in alphabet.symbols() {
            queue.push_back(nodes.len());
            nodes.push(Node {
                weight: W::one(),
                parent: None,
                children: None,
                symbol: Some(s),
            });
        }
        let leaves = (0..alphabet.len()).collect();
        while queue.len() > 1 {
            let left = queue.pop_front().unwrap();
            let right = queue.pop_front().unwrap();
            let id = nodes.len();
            let weight = nodes[left]
                .weight
                .checked_add(&nodes[right].weight)
                .ok_or(CodeError::CounterOverflow)?;
            nodes.push(Node {
                weight,
                parent: None,
                children: Some((left, right)),
                symbol: None,
            });
            nodes[left].parent = Some(id);
            nodes[right].parent = Some(id);
            queue.push_back(id);
        }
        let root = queue.pop_front().unwrap();
        Ok(Self {
            alphabet: alphabet.clone(),
            nodes,
            root,
            leaves,
        })
    }

    /// Replays `prefix` from `T_0`, giving `T_{|prefix|}(prefix)`.
    pub fn after(alphabet: &Alphabet, prefix: &[Symbol]) -> Result<Self> {
        let mut tree = Self::initial(alphabet)?;
        for &s in prefix {
            tree.update(s)?;
        }
        Ok(tree)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn leaf(&self, symbol: Symbol) -> Result<usize> {
        self.alphabet
            .index_of(symbol)
            .map(|i| self.leaves[i])
            .ok_or(CodeError::UnmappedSymbol { symbol })
    }

    pub fn root_weight(&self) -> W {
        self.nodes[self.root].weight
    }

    pub fn weight_of(&self, symbol: Symbol) -> Result<W> {
        Ok(self.nodes[self.leaf(symbol)?].weight)
    }

    /// Root-to-leaf path; left edges are 0, right edges 1.
    pub fn code_of(&self, symbol: Symbol) -> Result<Bitstring> {
        let mut node = self.leaf(symbol)?;
        let mut path = Vec::new();
        while let Some(parent) = self.nodes[node].parent {
            let (left, _) = self.nodes[parent].children.expect("parent has children");
            path.push(node != left);
            node = parent;
        }
        path.reverse();
        Ok(Bitstring::from_bits(path))
    }

    /// Arena indices level by level, deepest level first, left to right; root last.
    fn node_order(&self) -> Vec<usize> {
        let mut levels = vec![vec![self.root]];
        loop {
            let next: Vec<usize> = levels
                .last()
                .unwrap()
                .iter()
                .filter_map(|&n| self.nodes[n].children)
                .flat_map(|(l, r)| [l, r])
                .collect();
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        levels.into_iter().rev().flatten().collect()
    }

    /// Frequencies in successor order.
    pub fn ordered_weights(&self) -> Vec<W> {
        self.node_order().iter().map(|&n| self.nodes[n].weight).collect()
    }

    /// Leaf symbols from left to right.
    pub fn leaves_left_to_right(&self) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.leaves.len());
        let mut stack = vec![self.root];
        while let Some(n) = stack.pop() {
            match self.nodes[n].children {
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
                None => out.push(self.nodes[n].symbol.expect("leaf has a symbol")),
            }
        }
        out
    }

    /// Exchanges the subtrees rooted at `a` and `b`; neither is an ancestor of the other.
    fn swap_subtrees(&mut self, a: usize, b: usize) {
        let pa = self.nodes[a].parent.expect("swapped node is not the root");
        let pb = self.nodes[b].parent.expect("swapped node is not the root");
        let replace = |children: &mut Option<(usize, usize)>, old: usize, new: usize| {
            let (l, r) = children.as_mut().expect("parent has children");
            if *l == old {
                *l = new;
            } else {
                *r = new;
            }
        };
        if pa == pb {
            let (l, r) = self.nodes[pa].children.as_mut().unwrap();
            std::mem::swap(l, r);
            return;
        }
        replace(&mut self.nodes[pa].children, a, b);
        replace(&mut self.nodes[pb].children, b, a);
        self.nodes[a].parent = Some(pb);
        self.nodes[b].parent = Some(pa);
    }

    /// Applies the sibling transformation for one occurrence of `symbol`.
    pub fn update(&mut self, symbol: Symbol) -> Result<()> {
        let mut node = self.leaf(symbol)?;
        loop {
            let order = self.node_order();
            let pos = order.iter().position(|&n| n == node).expect("node is in the tree");
            let k = self.nodes[node].weight;
            let next = k.checked_add(&W::one()).ok_or(CodeError::CounterOverflow)?;
            if let Some(&succ) = order.get(pos + 1) {
                if self.nodes[succ].weight < next {
                    let target = order[pos + 1..]
                        .iter()
                        .rev()
                        .copied()
                        .find(|&n| self.nodes[n].weight <= k)
                        .expect("immediate successor qualifies");
                    if Some(target) != self.nodes[node].parent {
                        self.swap_subtrees(node, target);
                    }
                }
            }
            self.nodes[node].weight = next;
            match self.nodes[node].parent {
                Some(parent) => node = parent,
                None => return Ok(()),
            }
        }
    }

    /// Consumed-updated variant of [`update`](Self::update).
    pub fn updated(mut self, symbol: Symbol) -> Result<Self> {
        self.update(symbol)?;
        Ok(self)
    }

    /// Follows bits from the root to a leaf. Returns the symbol and the bits consumed.
    pub fn walk(&self, bits: &[bool]) -> Option<(Symbol, usize)> {
        let mut node = self.root;
        let mut used = 0;
        while let Some((l, r)) = self.nodes[node].children {
            let bit = *bits.get(used)?;
            node = if bit { r } else { l };
            used += 1;
        }
        Some((self.nodes[node].symbol.expect("leaf has a symbol"), used))
    }

    /// Checks the structural invariants; returns a description of the first violation.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let order = self.node_order();
        if order.len() != self.nodes.len() {
            return Err(format!("{} of {} nodes reachable", order.len(), self.nodes.len()));
        }
        for w in order.windows(2) {
            if self.nodes[w[0]].weight > self.nodes[w[1]].weight {
                return Err(format!("sibling order violated at nodes {} and {}", w[0], w[1]));
            }
        }
        for (id, node) in self.nodes.iter().enumerate() {
            match node.children {
                Some((l, r)) => {
                    if self.nodes[l].parent != Some(id) || self.nodes[r].parent != Some(id) {
                        return Err(format!("broken parent link below node {id}"));
                    }
                    if self.nodes[l].weight.checked_add(&self.nodes[r].weight) != Some(node.weight) {
                        return Err(format!("node {id} weight is not the sum of its children"));
                    }
                }
                None if node.symbol.is_none() => return Err(format!("leaf {id} has no symbol")),
                None => {}
            }
        }
        for (i, &s) in self.alphabet.symbols().iter().enumerate() {
            if self.nodes[self.leaves[i]].symbol != Some(s) || self.nodes[self.leaves[i]].children.is_some() {
                return Err(format!("symbol {s:?} is not at its leaf"));
            }
        }
        Ok(())
    }
}

pub type HuffmanTree = HuffmanTreeState<u64>;

/// Emits `code(w_i, T_{i-1})` then updates, for every symbol of `w`.
pub fn encode_ah(alphabet: &Alphabet, w: &[Symbol]) -> Result<Bitstring> {
    let mut tree = HuffmanTree::initial(alphabet)?;
    let mut out = Bitstring::new();
    for &s in w {
        out.append(&tree.code_of(s)?);
        tree.update(s)?;
    }
    Ok(out)
}

/// Replays the encoder's tree sequence, walking each codeword from the root.
pub fn decode_ah(alphabet: &Alphabet, y: &[bool]) -> Result<SymString> {
    let mut tree = HuffmanTree::initial(alphabet)?;
    let mut out = SymString::new();
    let mut offset = 0;
    while offset < y.len() {
        let (s, used) = tree
            .walk(&y[offset..])
            .ok_or(CodeError::TruncatedStream { offset: y.len() })?;
        out.push(s);
        offset += used;
        tree.update(s)?;
    }
    Ok(out)
}

/// The GA code whose context is the whole prefix and whose codeword is
/// `code(σ, T_{|u|}(u))`.
pub fn as_ga(alphabet: &Alphabet) -> Result<GaCode> {
    HuffmanTree::initial(alphabet)?;
    let sigma = alphabet.clone();
    Ok(GaCode::new(
        alphabet.clone(),
        AdaptiveFunction::full_prefix(),
        move |s, u| HuffmanTree::after(&sigma, u)?.code_of(s),
    ))
}
