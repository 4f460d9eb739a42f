//! Balanced indexing structures: a forest of AVL trees over suffix anchors,
//! each tree holding one contiguous run of suffixes in suffix order.
//!
//! Trees support insertion by comparator, splitting into three runs and
//! pattern search. Every tree has a header that survives splits, so a
//! holder of a header id can always find the current root.

pub mod order;

use std::cmp::Ordering;

use crate::text::{Symbol, Text};

pub type HeaderId = u32;

const NIL: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Slot {
    left: u32,
    right: u32,
    parent: u32,
    height: u8,
    size: u32,
    /// header id, meaningful only at a root
    header: u32,
    present: bool,
}

const EMPTY_SLOT: Slot = Slot {
    left: NIL,
    right: NIL,
    parent: NIL,
    height: 0,
    size: 0,
    header: NIL,
    present: false,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    root: u32,
    /// Tree node (in whatever tree uses the forest) this run hangs off.
    pub owner: Option<u32>,
}

/// Result of a pattern search: ranks `[lo, hi]` inside one tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BisMatch {
    pub ranks: Option<(usize, usize)>,
    pub comparisons: u64,
}

impl BisMatch {
    pub fn count(&self) -> usize {
        self.ranks.map_or(0, |(lo, hi)| hi - lo + 1)
    }
}

#[derive(Debug, Clone, Default)]
pub struct BisForest {
    slots: Vec<Slot>,
    headers: Vec<Header>,
}

impl BisForest {
    pub fn new() -> BisForest {
        BisForest::default()
    }

    fn ensure(&mut self, x: usize) {
        if x >= self.slots.len() {
            self.slots
                .resize((x + 1).max(self.slots.len() * 2), EMPTY_SLOT);
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.slots.get(x).is_some_and(|s| s.present)
    }

    pub fn header(&self, h: HeaderId) -> &Header {
        &self.headers[h as usize]
    }

    pub fn set_owner(&mut self, h: HeaderId, owner: Option<u32>) {
        self.headers[h as usize].owner = owner;
    }

    pub fn headers(&self) -> usize {
        self.headers.len()
    }

    pub fn len(&self, h: HeaderId) -> usize {
        self.size(self.headers[h as usize].root) as usize
    }

    pub fn is_empty(&self, h: HeaderId) -> bool {
        self.headers[h as usize].root == NIL
    }

    fn new_header(&mut self, root: u32, owner: Option<u32>) -> HeaderId {
        let h = self.headers.len() as HeaderId;
        self.headers.push(Header { root, owner });
        if root != NIL {
            self.slots[root as usize].header = h;
        }
        h
    }

    fn set_root(&mut self, h: HeaderId, root: u32) {
        self.headers[h as usize].root = root;
        if root != NIL {
            self.slots[root as usize].parent = NIL;
            self.slots[root as usize].header = h;
        }
    }

    /// One-element tree holding `x`.
    pub fn new_singleton(&mut self, x: usize, owner: Option<u32>) -> HeaderId {
        self.ensure(x);
        assert!(!self.slots[x].present, "{x} already in a tree");
        self.slots[x] = Slot {
            height: 1,
            size: 1,
            present: true,
            ..EMPTY_SLOT
        };
        self.new_header(x as u32, owner)
    }

    /// Empty tree, ready for `insert_by`.
    pub fn new_empty(&mut self, owner: Option<u32>) -> HeaderId {
        self.new_header(NIL, owner)
    }

    /// Header of the tree holding `x`, in `O(log n)`.
    pub fn header_of(&self, x: usize) -> HeaderId {
        assert!(self.contains(x), "{x} is not in any tree");
        let mut r = x as u32;
        while self.slots[r as usize].parent != NIL {
            r = self.slots[r as usize].parent;
        }
        self.slots[r as usize].header
    }

    #[inline]
    fn height(&self, t: u32) -> u8 {
        if t == NIL {
            0
        } else {
            self.slots[t as usize].height
        }
    }

    #[inline]
    fn size(&self, t: u32) -> u32 {
        if t == NIL {
            0
        } else {
            self.slots[t as usize].size
        }
    }

    fn update(&mut self, t: u32) {
        let (l, r) = (self.slots[t as usize].left, self.slots[t as usize].right);
        let h = self.height(l).max(self.height(r)) + 1;
        let s = self.size(l) + self.size(r) + 1;
        let slot = &mut self.slots[t as usize];
        slot.height = h;
        slot.size = s;
    }

    fn set_left(&mut self, t: u32, c: u32) {
        self.slots[t as usize].left = c;
        if c != NIL {
            self.slots[c as usize].parent = t;
        }
    }

    fn set_right(&mut self, t: u32, c: u32) {
        self.slots[t as usize].right = c;
        if c != NIL {
            self.slots[c as usize].parent = t;
        }
    }

    fn rotate_left(&mut self, t: u32) -> u32 {
        let r = self.slots[t as usize].right;
        let rl = self.slots[r as usize].left;
        self.set_right(t, rl);
        self.update(t);
        self.set_left(r, t);
        self.update(r);
        self.slots[r as usize].parent = NIL;
        r
    }

    fn rotate_right(&mut self, t: u32) -> u32 {
        let l = self.slots[t as usize].left;
        let lr = self.slots[l as usize].right;
        self.set_left(t, lr);
        self.update(t);
        self.set_right(l, t);
        self.update(l);
        self.slots[l as usize].parent = NIL;
        l
    }

    fn rebalance(&mut self, t: u32) -> u32 {
        self.update(t);
        let (l, r) = (self.slots[t as usize].left, self.slots[t as usize].right);
        let bal = self.height(l) as i32 - self.height(r) as i32;
        if bal > 1 {
            let (ll, lr) = (self.slots[l as usize].left, self.slots[l as usize].right);
            if self.height(ll) < self.height(lr) {
                let nl = self.rotate_left(l);
                self.set_left(t, nl);
            }
            return self.rotate_right(t);
        }
        if bal < -1 {
            let (rl, rr) = (self.slots[r as usize].left, self.slots[r as usize].right);
            if self.height(rr) < self.height(rl) {
                let nr = self.rotate_right(r);
                self.set_right(t, nr);
            }
            return self.rotate_left(t);
        }
        t
    }

    /// Joins trees `l < k < r` around the detached node `k`.
    fn join(&mut self, l: u32, k: u32, r: u32) -> u32 {
        let (hl, hr) = (self.height(l), self.height(r));
        if hl > hr + 1 {
            let lr = self.slots[l as usize].right;
            let sub = self.join(lr, k, r);
            self.set_right(l, sub);
            let t = self.rebalance(l);
            self.slots[t as usize].parent = NIL;
            return t;
        }
        if hr > hl + 1 {
            let rl = self.slots[r as usize].left;
            let sub = self.join(l, k, rl);
            self.set_left(r, sub);
            let t = self.rebalance(r);
            self.slots[t as usize].parent = NIL;
            return t;
        }
        self.set_left(k, l);
        self.set_right(k, r);
        self.slots[k as usize].parent = NIL;
        self.update(k);
        k
    }

    fn detach_children(&mut self, t: u32) -> (u32, u32) {
        let (l, r) = (self.slots[t as usize].left, self.slots[t as usize].right);
        if l != NIL {
            self.slots[l as usize].parent = NIL;
        }
        if r != NIL {
            self.slots[r as usize].parent = NIL;
        }
        let slot = &mut self.slots[t as usize];
        slot.left = NIL;
        slot.right = NIL;
        slot.height = 1;
        slot.size = 1;
        (l, r)
    }

    /// Splits `t` into its first `k` elements and the rest.
    fn split(&mut self, t: u32, k: usize) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let ls = self.size(self.slots[t as usize].left) as usize;
        let (l, r) = self.detach_children(t);
        if k <= ls {
            let (a, b) = self.split(l, k);
            (a, self.join(b, t, r))
        } else {
            let (a, b) = self.split(r, k - ls - 1);
            (self.join(l, t, a), b)
        }
    }

    /// Elements in order.
    pub fn iter(&self, h: HeaderId) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len(h));
        let mut stack = Vec::new();
        let mut t = self.headers[h as usize].root;
        while t != NIL || !stack.is_empty() {
            while t != NIL {
                stack.push(t);
                t = self.slots[t as usize].left;
            }
            let x = stack.pop().unwrap();
            out.push(x as usize);
            t = self.slots[x as usize].right;
        }
        out
    }

    /// 0-based position of `x` inside its tree.
    pub fn rank(&self, x: usize) -> usize {
        let mut r = self.size(self.slots[x].left) as usize;
        let mut t = x as u32;
        loop {
            let p = self.slots[t as usize].parent;
            if p == NIL {
                return r;
            }
            if self.slots[p as usize].right == t {
                r += self.size(self.slots[p as usize].left) as usize + 1;
            }
            t = p;
        }
    }

    pub fn select(&self, h: HeaderId, mut k: usize) -> Option<usize> {
        let mut t = self.headers[h as usize].root;
        while t != NIL {
            let ls = self.size(self.slots[t as usize].left) as usize;
            match k.cmp(&ls) {
                Ordering::Less => t = self.slots[t as usize].left,
                Ordering::Equal => return Some(t as usize),
                Ordering::Greater => {
                    k -= ls + 1;
                    t = self.slots[t as usize].right;
                }
            }
        }
        None
    }

    pub fn first(&self, h: HeaderId) -> Option<usize> {
        self.select(h, 0)
    }

    pub fn last(&self, h: HeaderId) -> Option<usize> {
        let n = self.len(h);
        if n == 0 {
            None
        } else {
            self.select(h, n - 1)
        }
    }

    /// Number of leading elements for which `pred` is false. `pred` must be
    /// monotone (false then true) over the tree order.
    pub fn partition_point(&self, h: HeaderId, mut pred: impl FnMut(usize) -> bool) -> usize {
        let mut t = self.headers[h as usize].root;
        let mut before = 0usize;
        while t != NIL {
            if pred(t as usize) {
                t = self.slots[t as usize].left;
            } else {
                before += self.size(self.slots[t as usize].left) as usize + 1;
                t = self.slots[t as usize].right;
            }
        }
        before
    }

    /// Inserts `x` before the first element `y` with `goes_before(y)`.
    pub fn insert_by(&mut self, h: HeaderId, x: usize, goes_before: impl FnMut(usize) -> bool) {
        self.ensure(x);
        assert!(!self.slots[x].present, "{x} already in a tree");
        let k = self.partition_point(h, goes_before);
        self.slots[x] = Slot {
            height: 1,
            size: 1,
            present: true,
            ..EMPTY_SLOT
        };
        let root = self.headers[h as usize].root;
        let (a, b) = self.split(root, k);
        let t = self.join(a, x as u32, b);
        self.set_root(h, t);
    }

    /// Cuts ranks `[lo, hi]` out of `h` into a new tree. `h` keeps the
    /// elements before `lo`; the elements after `hi` go to a third tree.
    /// Returns `(middle, right)`.
    pub fn split3(
        &mut self,
        h: HeaderId,
        lo: usize,
        hi: usize,
        owner: Option<u32>,
    ) -> (HeaderId, HeaderId) {
        assert!(lo <= hi && hi < self.len(h));
        let root = self.headers[h as usize].root;
        let (a, rest) = self.split(root, lo);
        let (mid, c) = self.split(rest, hi - lo + 1);
        self.set_root(h, a);
        let old_owner = self.headers[h as usize].owner;
        let m = self.new_header(mid, owner);
        self.set_root(m, mid);
        let r = self.new_header(c, old_owner);
        self.set_root(r, c);
        (m, r)
    }

    pub fn tree_height(&self, h: HeaderId) -> usize {
        self.height(self.headers[h as usize].root) as usize
    }

    /// Ranks of the suffixes in `h` that start with `pattern`, given that
    /// all of them agree with it on the first `matched` symbols.
    ///
    /// Each descent remembers how much of the pattern its current left and
    /// right fences match and starts every comparison at the smaller of the
    /// two, which is safe without stored LCP values.
    pub fn search(&self, h: HeaderId, text: &Text, pattern: &[Symbol], matched: usize) -> BisMatch {
        let n = self.len(h);
        let m = pattern.len();
        if matched >= m || n == 0 {
            return BisMatch {
                ranks: (n > 0).then(|| (0, n - 1)),
                comparisons: 0,
            };
        }
        let mut comparisons = 0u64;
        let lo = self.descend(h, text, pattern, matched, false, &mut comparisons);
        if lo == n {
            return BisMatch {
                ranks: None,
                comparisons,
            };
        }
        let hi = self.descend(h, text, pattern, matched, true, &mut comparisons);
        BisMatch {
            ranks: (hi > lo).then(|| (lo, hi - 1)),
            comparisons,
        }
    }

    /// Lower bound (first suffix >= pattern) or, with `upper`, the first
    /// suffix that is past every suffix prefixed by the pattern.
    fn descend(
        &self,
        h: HeaderId,
        text: &Text,
        pattern: &[Symbol],
        matched: usize,
        upper: bool,
        comparisons: &mut u64,
    ) -> usize {
        let (mut l_left, mut l_right) = (matched, matched);
        let mut t = self.headers[h as usize].root;
        let mut before = 0usize;
        while t != NIL {
            let x = t as usize;
            let mut d = l_left.min(l_right);
            let ord = loop {
                if d == pattern.len() {
                    break Ordering::Equal;
                }
                *comparisons += 1;
                let c = text.at(x, d);
                if c != pattern[d] {
                    break c.cmp(&pattern[d]);
                }
                d += 1;
            };
            let go_right = match ord {
                Ordering::Less => true,
                Ordering::Equal => upper,
                Ordering::Greater => false,
            };
            if go_right {
                l_left = d;
                before += self.size(self.slots[x].left) as usize + 1;
                t = self.slots[x].right;
            } else {
                l_right = d;
                t = self.slots[x].left;
            }
        }
        before
    }

    /// Structural self-check used by tests.
    pub fn check(&self, h: HeaderId) {
        fn walk(f: &BisForest, t: u32, parent: u32) -> (u8, u32) {
            if t == NIL {
                return (0, 0);
            }
            let s = &f.slots[t as usize];
            assert!(s.present);
            assert_eq!(s.parent, parent);
            let (hl, sl) = walk(f, s.left, t);
            let (hr, sr) = walk(f, s.right, t);
            assert!((hl as i32 - hr as i32).abs() <= 1, "unbalanced at {t}");
            assert_eq!(s.height, hl.max(hr) + 1);
            assert_eq!(s.size, sl + sr + 1);
            (s.height, s.size)
        }
        let root = self.headers[h as usize].root;
        walk(self, root, NIL);
        if root != NIL {
            assert_eq!(self.slots[root as usize].header, h);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forest_of(values: &[usize]) -> (BisForest, HeaderId) {
        let mut f = BisForest::new();
        let h = f.new_singleton(values[0], None);
        for &v in &values[1..] {
            f.insert_by(h, v, |y| v < y);
            f.check(h);
        }
        (f, h)
    }

    #[test]
    fn insert_keeps_order() {
        let vals: Vec<usize> = (0..500).map(|i| (i * 7919) % 500).collect();
        let (f, h) = forest_of(&vals);
        assert_eq!(f.iter(h), (0..500).collect::<Vec<_>>());
        assert!(f.tree_height(h) <= 13);
        for x in [0usize, 17, 499] {
            assert_eq!(f.rank(x), x);
            assert_eq!(f.header_of(x), h);
            assert_eq!(f.select(h, x), Some(x));
        }
        assert_eq!(f.partition_point(h, |y| y >= 123), 123);
    }

    #[test]
    fn split3_partitions() {
        let vals: Vec<usize> = (0..300).collect();
        let (mut f, h) = forest_of(&vals);
        let (m, r) = f.split3(h, 100, 199, Some(7));
        for x in [h, m, r] {
            f.check(x);
        }
        assert_eq!(f.iter(h), (0..100).collect::<Vec<_>>());
        assert_eq!(f.iter(m), (100..200).collect::<Vec<_>>());
        assert_eq!(f.iter(r), (200..300).collect::<Vec<_>>());
        assert_eq!(f.header_of(150), m);
        assert_eq!(f.header_of(250), r);
        assert_eq!(f.header(m).owner, Some(7));
        assert_eq!(f.rank(150), 50);
        // edge splits leave empty trees
        let (m2, r2) = f.split3(m, 0, 99, None);
        assert!(f.is_empty(m));
        assert!(f.is_empty(r2));
        assert_eq!(f.len(m2), 100);
        f.insert_by(m, 1000, |_| true);
        assert_eq!(f.iter(m), vec![1000]);
    }

    #[test]
    fn pattern_search_over_banana() {
        use crate::text::encode;
        let (_, t) = encode(&[2, 1, 3, 1, 3, 1]).unwrap();
        // anchors in suffix order: $, a$, ana$, anana$, banana$, na$, nana$
        let order = [0usize, 1, 3, 5, 6, 2, 4];
        let mut f = BisForest::new();
        let h = f.new_singleton(order[0], None);
        for (i, &x) in order.iter().enumerate().skip(1) {
            f.insert_by(h, x, |y| i < order.iter().position(|&z| z == y).unwrap());
        }
        assert_eq!(f.iter(h), order.to_vec());
        assert_eq!(f.search(h, &t, &[1, 3, 1], 0).ranks, Some((2, 3)));
        assert_eq!(f.search(h, &t, &[1], 0).count(), 3);
        assert_eq!(f.search(h, &t, &[3, 1, 3, 1], 0).ranks, Some((6, 6)));
        assert_eq!(f.search(h, &t, &[2, 2], 0).ranks, None);
        assert_eq!(f.search(h, &t, &[], 0).count(), 7);
    }
}
