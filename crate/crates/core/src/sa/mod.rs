//! Static suffix array with LCP array and range-minimum support.
//!
//! Entries of `sa` are forward text offsets (0-based; offset `n` is the
//! sentinel suffix). Search works inside any suffix-array range, which is how
//! the tray searches its small intervals.

mod rmq;
mod sais;

pub use rmq::{Rmq, RmqKind};

use crate::text::{Symbol, Text};

/// Inclusive range of suffix-array positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SaRange {
    pub lo: usize,
    pub hi: usize,
}

impl SaRange {
    pub fn new(lo: usize, hi: usize) -> SaRange {
        debug_assert!(lo <= hi);
        SaRange { lo, hi }
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, k: usize) -> bool {
        self.lo <= k && k <= self.hi
    }
}

/// Outcome of a range search plus the number of pattern-vs-text symbol
/// comparisons it spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeMatch {
    pub range: Option<SaRange>,
    pub comparisons: u64,
}

#[derive(Debug, Clone)]
pub struct SuffixArrayIndex {
    sa: Vec<u32>,
    rank: Vec<u32>,
    lcp: Vec<u32>,
    lcp_rmq: Rmq,
    /// minimum over `sa` values, for the leftmost occurrence in a range
    start_rmq: Rmq,
}

impl SuffixArrayIndex {
    pub fn build(text: &Text, sigma: usize) -> SuffixArrayIndex {
        SuffixArrayIndex::build_with(text, sigma, RmqKind::default())
    }

    /// `sigma` bounds the ranks in `text` (the largest rank may exceed it
    /// after online growth; the construction uses the true maximum).
    pub fn build_with(text: &Text, sigma: usize, kind: RmqKind) -> SuffixArrayIndex {
        let fwd = text.forward();
        let k = fwd.iter().copied().max().unwrap_or(0).max(sigma as u32) as usize + 1;
        let sa = sais::sais(&fwd, k);
        SuffixArrayIndex::from_sa(&fwd, sa, kind)
    }

    /// Wraps a precomputed suffix array (e.g. loaded from disk). The caller
    /// vouches that `sa` is the suffix array of `fwd`.
    pub fn from_sa(fwd: &[Symbol], sa: Vec<u32>, kind: RmqKind) -> SuffixArrayIndex {
        let n = sa.len();
        let mut rank = vec![0u32; n];
        for (k, &s) in sa.iter().enumerate() {
            rank[s as usize] = k as u32;
        }
        let lcp = kasai(fwd, &sa, &rank);
        let lcp_rmq = Rmq::new(&lcp, kind);
        let start_rmq = Rmq::new(&sa, kind);
        SuffixArrayIndex {
            sa,
            rank,
            lcp,
            lcp_rmq,
            start_rmq,
        }
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn sa(&self) -> &[u32] {
        &self.sa
    }

    pub fn rank(&self) -> &[u32] {
        &self.rank
    }

    /// `lcp[k]` between `sa[k - 1]` and `sa[k]`; `lcp[0]` is 0.
    pub fn lcp(&self) -> &[u32] {
        &self.lcp
    }

    pub fn full(&self) -> SaRange {
        SaRange::new(0, self.sa.len() - 1)
    }

    /// Longest common prefix of the suffixes at sa positions `a < b`.
    #[inline]
    pub fn lcp_between(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        self.lcp_rmq.min(a + 1, b) as usize
    }

    /// Smallest forward offset among the suffixes in `range`.
    pub fn leftmost_start(&self, range: SaRange) -> usize {
        self.start_rmq.min(range.lo, range.hi) as usize
    }

    /// 1-based front positions of the suffixes in `range`, in suffix order.
    pub fn report_occurrences(&self, range: Option<SaRange>) -> Vec<usize> {
        match range {
            None => Vec::new(),
            Some(r) => self.sa[r.lo..=r.hi]
                .iter()
                .map(|&s| s as usize + 1)
                .collect(),
        }
    }

    pub fn rmq_words(&self) -> usize {
        self.lcp_rmq.words() + self.start_rmq.words()
    }

    /// Finds the positions in `bounds` whose suffix starts with `pattern`.
    ///
    /// Every suffix in `bounds` must already agree with `pattern` on its
    /// first `matched` symbols. The lower boundary is found by a binary
    /// search that remembers how much of the pattern each side matches and
    /// uses LCP minima to skip symbols; the upper boundary then comes from
    /// LCP minima alone. Equal symbol comparisons never repeat, so the cost
    /// is at most `m + log2(|bounds| + 1) + 1`.
    pub fn interval_search(
        &self,
        fwd: &[Symbol],
        pattern: &[Symbol],
        bounds: SaRange,
        matched: usize,
    ) -> RangeMatch {
        let m = pattern.len();
        if matched >= m {
            return RangeMatch {
                range: Some(bounds),
                comparisons: 0,
            };
        }
        let mut comparisons = 0u64;
        // (pos, lcp with pattern); positions outside bounds are virtual
        let mut left: (isize, usize) = (bounds.lo as isize - 1, matched);
        let mut right: (isize, usize) = (bounds.hi as isize + 1, matched);
        while right.0 - left.0 > 1 {
            let mid = ((left.0 + right.0) / 2) as usize;
            let left_real = left.0 >= bounds.lo as isize;
            let right_real = right.0 <= bounds.hi as isize;
            // known common prefix of suffix(mid) and the better boundary
            let start = if left.1 >= right.1 {
                if left.1 > matched && left_real {
                    let x = self.lcp_between(left.0 as usize, mid);
                    if x > left.1 {
                        left = (mid as isize, left.1);
                        continue;
                    }
                    if x < left.1 {
                        right = (mid as isize, x);
                        continue;
                    }
                }
                left.1
            } else {
                if right_real {
                    let x = self.lcp_between(mid, right.0 as usize);
                    if x > right.1 {
                        right = (mid as isize, right.1);
                        continue;
                    }
                    if x < right.1 {
                        left = (mid as isize, x);
                        continue;
                    }
                }
                right.1
            };
            let (l, ord) =
                compare_from(fwd, self.sa[mid] as usize, pattern, start, &mut comparisons);
            if ord == std::cmp::Ordering::Less {
                left = (mid as isize, l);
            } else {
                right = (mid as isize, l);
            }
        }
        if right.0 > bounds.hi as isize || right.1 < m {
            return RangeMatch {
                range: None,
                comparisons,
            };
        }
        let lo = right.0 as usize;
        // extend to the last position whose LCP run stays >= m
        let (mut a, mut b) = (lo, bounds.hi);
        while a < b {
            let mid = a + (b - a).div_ceil(2);
            if self.lcp_between(lo, mid) >= m {
                a = mid;
            } else {
                b = mid - 1;
            }
        }
        RangeMatch {
            range: Some(SaRange::new(lo, a)),
            comparisons,
        }
    }
}

/// Compares suffix `start` with `pattern` from offset `from`. Returns the
/// common prefix length and `Less` if the suffix sorts before the pattern,
/// `Equal` if the pattern is a prefix of it, `Greater` otherwise.
fn compare_from(
    fwd: &[Symbol],
    start: usize,
    pattern: &[Symbol],
    from: usize,
    comparisons: &mut u64,
) -> (usize, std::cmp::Ordering) {
    let mut d = from;
    while d < pattern.len() {
        *comparisons += 1;
        let c = fwd[start + d];
        if c != pattern[d] {
            return (d, c.cmp(&pattern[d]));
        }
        d += 1;
    }
    (d, std::cmp::Ordering::Equal)
}

fn kasai(fwd: &[Symbol], sa: &[u32], rank: &[u32]) -> Vec<u32> {
    let n = sa.len();
    let mut lcp = vec![0u32; n];
    let mut h = 0usize;
    for i in 0..n {
        let r = rank[i] as usize;
        if r == 0 {
            h = 0;
            continue;
        }
        let j = sa[r - 1] as usize;
        while i + h < n && j + h < n && fwd[i + h] == fwd[j + h] && fwd[i + h] != 0 {
            h += 1;
        }
        lcp[r] = h as u32;
        h = h.saturating_sub(1);
    }
    lcp
}
