//! On-disk index: the text, its alphabet and its suffix array. Everything
//! else is rebuilt on load.

use std::io::{Read, Write};

use stray::sa::{RmqKind, SuffixArrayIndex};
use stray::text::{Alphabet, Symbol, Text, SENTINEL};
use stray::tray::SuffixTray;

use crate::input::Mode;

pub const MAGIC: &[u8; 6] = b"STRAY1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("not an index file (bad magic)")]
    BadMagic,
    #[error("unknown input mode byte {0}")]
    BadMode(u8),
    #[error("index file truncated")]
    Truncated,
    #[error("corrupt index: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A loaded or freshly built static index.
#[derive(Debug, Clone)]
pub struct IndexFile {
    pub mode: Mode,
    pub alphabet: Alphabet,
    pub text: Text,
    pub tray: SuffixTray,
}

impl IndexFile {
    pub fn build(mode: Mode, alphabet: Alphabet, text: Text) -> IndexFile {
        let tray = SuffixTray::build(&text, &alphabet);
        IndexFile {
            mode,
            alphabet,
            text,
            tray,
        }
    }

    pub fn save<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let n = self.text.len() as u64;
        let raw = self.alphabet.raw_symbols();
        let mut buf = Vec::with_capacity(6 + 17 + 8 * raw.len() + 8 * (n as usize + 1));
        buf.extend_from_slice(MAGIC);
        buf.push(self.mode.to_byte());
        buf.extend_from_slice(&n.to_le_bytes());
        buf.extend_from_slice(&(raw.len() as u64).to_le_bytes());
        for &r in raw {
            buf.extend_from_slice(&r.to_le_bytes());
        }
        for r in self.text.ranks() {
            buf.extend_from_slice(&r.to_le_bytes());
        }
        for &s in self.tray.index().sa() {
            buf.extend_from_slice(&s.to_le_bytes());
        }
        w.write_all(&buf)?;
        w.flush()
    }

    pub fn load<R: Read>(mut r: R) -> Result<IndexFile, FormatError> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        let mut cur = Cursor {
            bytes: &bytes,
            pos: 0,
        };
        if cur.take(MAGIC.len()).ok() != Some(&MAGIC[..]) {
            return Err(FormatError::BadMagic);
        }
        let mode_byte = cur.take(1)?[0];
        let mode = Mode::from_byte(mode_byte).ok_or(FormatError::BadMode(mode_byte))?;
        let n = cur.len_field()?;
        let sigma = cur.len_field()?;
        // refuse lengths the remaining bytes cannot possibly hold
        if sigma.saturating_mul(8) + n.saturating_mul(8) + 4 > cur.remaining() {
            return Err(FormatError::Truncated);
        }
        let raw: Vec<u64> = (0..sigma).map(|_| cur.u64()).collect::<Result<_, _>>()?;
        let alphabet =
            Alphabet::from_raw_symbols(&raw).map_err(|e| FormatError::Corrupt(e.to_string()))?;
        let ranks: Vec<Symbol> = (0..n).map(|_| cur.u32()).collect::<Result<_, _>>()?;
        if let Some(&bad) = ranks.iter().find(|&&c| c == SENTINEL || c as usize > sigma) {
            return Err(FormatError::Corrupt(format!(
                "symbol rank {bad} outside 1..={sigma}"
            )));
        }
        let sa: Vec<u32> = (0..=n).map(|_| cur.u32()).collect::<Result<_, _>>()?;
        if cur.remaining() != 0 {
            return Err(FormatError::Corrupt("trailing bytes".into()));
        }
        let text = Text::from_ranks(&ranks);
        let fwd = text.forward();
        check_permutation(&sa)?;
        let idx = SuffixArrayIndex::from_sa(&fwd, sa, RmqKind::default());
        check_sorted(&fwd, &idx)?;
        let tray = SuffixTray::from_index(fwd, idx, sigma, sigma.max(1));
        Ok(IndexFile {
            mode,
            alphabet,
            text,
            tray,
        })
    }
}

fn check_permutation(sa: &[u32]) -> Result<(), FormatError> {
    let mut seen = vec![false; sa.len()];
    for &s in sa {
        match seen.get_mut(s as usize) {
            Some(slot) if !*slot => *slot = true,
            _ => {
                return Err(FormatError::Corrupt(
                    "suffix array is not a permutation".into(),
                ))
            }
        }
    }
    Ok(())
}

/// Adjacent suffixes must differ right after their common prefix, in the
/// right direction.
fn check_sorted(fwd: &[Symbol], idx: &SuffixArrayIndex) -> Result<(), FormatError> {
    let (sa, lcp) = (idx.sa(), idx.lcp());
    for k in 1..sa.len() {
        let l = lcp[k] as usize;
        let (a, b) = (sa[k - 1] as usize + l, sa[k] as usize + l);
        if a >= fwd.len() || b >= fwd.len() || fwd[a] >= fwd[b] {
            return Err(FormatError::Corrupt("suffix array is not sorted".into()));
        }
    }
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    fn take(&mut self, k: usize) -> Result<&'a [u8], FormatError> {
        if self.remaining() < k {
            return Err(FormatError::Truncated);
        }
        let out = &self.bytes[self.pos..self.pos + k];
        self.pos += k;
        Ok(out)
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn len_field(&mut self) -> Result<usize, FormatError> {
        let v = self.u64()?;
        usize::try_from(v)
            .ok()
            .filter(|&v| v < u32::MAX as usize)
            .ok_or_else(|| FormatError::Corrupt(format!("length {v} too large")))
    }
}
