//! Texts over dense integer ranks.
//!
//! Raw input symbols are integers in `1..=c·n`. They are renamed to dense
//! ranks `1..=sigma` through a lookup table, so a pattern symbol is renamed in
//! constant time. Rank `0` is the sentinel, which terminates every text and
//! sorts before every other symbol.
//!
//! Internally a suffix is named by its *anchor*: its distance from the
//! sentinel. The sentinel suffix has anchor 0 and the whole text has anchor
//! `n`. Prepending a symbol creates anchor `n + 1` and leaves every existing
//! anchor untouched. User-facing positions are 1-based from the front:
//! `position = n - anchor + 1`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Symbol = u32;

pub const SENTINEL: Symbol = 0;

/// Default multiplier `c` for the raw symbol bound `c·n`.
pub const DEFAULT_SYMBOL_FACTOR: u64 = 64;

/// Raw values up to this bound are always accepted, regardless of `n`, so
/// that byte input works on short texts.
pub const MIN_SYMBOL_BOUND: u64 = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    /// raw value -> rank, 0 = absent
    rename: Vec<Symbol>,
    /// rank -> raw value; slot 0 belongs to the sentinel
    inverse: Vec<u64>,
}

impl Alphabet {
    pub fn empty() -> Alphabet {
        Alphabet {
            rename: Vec::new(),
            inverse: vec![0],
        }
    }

    /// Rebuilds an alphabet from its rank -> raw table (rank 1 first).
    pub fn from_raw_symbols(raw_by_rank: &[u64]) -> Result<Alphabet> {
        let mut a = Alphabet::empty();
        for &raw in raw_by_rank {
            if raw == 0 || a.rank(raw).is_some() {
                return Err(Error::InvalidSymbol {
                    symbol: raw,
                    bound: u64::MAX,
                });
            }
            a.push(raw);
        }
        Ok(a)
    }

    /// Number of distinct symbols, not counting the sentinel.
    pub fn sigma(&self) -> usize {
        self.inverse.len() - 1
    }

    pub fn rank(&self, raw: u64) -> Option<Symbol> {
        match self.rename.get(raw as usize) {
            Some(&r) if r != 0 => Some(r),
            _ => None,
        }
    }

    pub fn raw(&self, rank: Symbol) -> Option<u64> {
        if rank == SENTINEL {
            return None;
        }
        self.inverse.get(rank as usize).copied()
    }

    /// Raw values in rank order.
    pub fn raw_symbols(&self) -> &[u64] {
        &self.inverse[1..]
    }

    /// Renames a pattern. Returns `None` if it uses a symbol the text never
    /// contained, in which case it cannot occur.
    pub fn encode_pattern(&self, raw: &[u64]) -> Option<Vec<Symbol>> {
        raw.iter().map(|&r| self.rank(r)).collect()
    }

    pub fn decode(&self, ranks: &[Symbol]) -> Vec<u64> {
        ranks.iter().filter_map(|&r| self.raw(r)).collect()
    }

    fn push(&mut self, raw: u64) -> Symbol {
        let rank = self.inverse.len() as Symbol;
        let idx = raw as usize;
        if idx >= self.rename.len() {
            let want = (idx + 1).max(self.rename.len() * 2);
            self.rename.resize(want, 0);
        }
        self.rename[idx] = rank;
        self.inverse.push(raw);
        rank
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    /// `rev[k]` is the first symbol of the suffix with anchor `k`;
    /// `rev[0]` is the sentinel.
    rev: Vec<Symbol>,
    epoch: u64,
}

impl Default for Text {
    fn default() -> Self {
        Text::new()
    }
}

impl Text {
    /// The empty text (sentinel only).
    pub fn new() -> Text {
        Text {
            rev: vec![SENTINEL],
            epoch: 0,
        }
    }

    /// Builds a text directly from ranks (no sentinel). Ranks must be
    /// non-zero.
    pub fn from_ranks(ranks: &[Symbol]) -> Text {
        debug_assert!(ranks.iter().all(|&r| r != SENTINEL));
        let mut rev = Vec::with_capacity(ranks.len() + 1);
        rev.push(SENTINEL);
        rev.extend(ranks.iter().rev());
        Text { rev, epoch: 0 }
    }

    /// Number of symbols, excluding the sentinel.
    pub fn len(&self) -> usize {
        self.rev.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of prepends applied since construction.
    pub fn epoch(&self) -> u64 {
        self.epoch
    }

    /// Symbol at `offset` within the suffix `anchor`. Offset `anchor` is the
    /// sentinel.
    #[inline]
    pub fn at(&self, anchor: usize, offset: usize) -> Symbol {
        debug_assert!(offset <= anchor);
        self.rev[anchor - offset]
    }

    /// Symbols front to back, sentinel last.
    pub fn forward(&self) -> Vec<Symbol> {
        self.rev.iter().rev().copied().collect()
    }

    /// Ranks front to back, without the sentinel.
    pub fn ranks(&self) -> Vec<Symbol> {
        self.rev[1..].iter().rev().copied().collect()
    }

    #[inline]
    pub fn position_of(&self, anchor: usize) -> usize {
        self.len() - anchor + 1
    }

    #[inline]
    pub fn anchor_of(&self, position: usize) -> usize {
        self.len() + 1 - position
    }

    pub fn push_front(&mut self, rank: Symbol) {
        debug_assert_ne!(rank, SENTINEL);
        self.rev.push(rank);
        self.epoch += 1;
    }
}

/// Renames `raw` into dense ranks ordered by raw value. Raw symbols must lie
/// in `1..=max(c·n, 256)`.
pub fn encode(raw: &[u64]) -> Result<(Alphabet, Text)> {
    encode_with_factor(raw, DEFAULT_SYMBOL_FACTOR)
}

pub fn encode_with_factor(raw: &[u64], c: u64) -> Result<(Alphabet, Text)> {
    let bound = (c.saturating_mul(raw.len() as u64)).max(MIN_SYMBOL_BOUND);
    // counting pass over the bounded range gives the sorted distinct values
    let mut present = vec![false; bound as usize + 1];
    for &s in raw {
        if s == 0 || s > bound {
            return Err(Error::InvalidSymbol { symbol: s, bound });
        }
        present[s as usize] = true;
    }
    let mut alphabet = Alphabet::empty();
    for (value, _) in present.iter().enumerate().filter(|(_, &p)| p) {
        alphabet.push(value as u64);
    }
    let ranks: Vec<Symbol> = raw.iter().map(|&s| alphabet.rename[s as usize]).collect();
    Ok((alphabet, Text::from_ranks(&ranks)))
}

/// Prepends a raw symbol. Unseen symbols get the next free rank, so after an
/// online extension rank order is arrival order, not raw order.
pub fn prepend(text: &mut Text, alphabet: &mut Alphabet, raw: u64) -> Result<Symbol> {
    if raw == 0 {
        return Err(Error::InvalidSymbol {
            symbol: raw,
            bound: u64::MAX,
        });
    }
    let rank = match alphabet.rank(raw) {
        Some(r) => r,
        None => alphabet.push(raw),
    };
    text.push_front(rank);
    Ok(rank)
}

/// Reference comparison of two suffixes by anchor, one symbol at a time.
pub fn suffix_compare_naive(text: &Text, i: usize, j: usize) -> Ordering {
    let mut d = 0;
    loop {
        let a = text.at(i, d);
        let b = text.at(j, d);
        match a.cmp(&b) {
            Ordering::Equal if a == SENTINEL => return Ordering::Equal,
            Ordering::Equal => d += 1,
            other => return other,
        }
    }
}
