//! Suffix trist: the online counterpart of the suffix tray.
//!
//! The heavy part of the suffix tree is classified exactly as in the tray,
//! but light runs are balanced search trees (a [`BisForest`]) so they can
//! absorb new suffixes, and dispatch arrays are filled lazily, one cell per
//! insertion. Leaf counts of light children of heavy nodes are tracked by
//! counters so promotions are detected the moment they happen.

use std::cmp::Ordering;
use std::ops::Bound;

use crate::bis::order::{ElemId, OrderList};
use crate::bis::{BisForest, HeaderId};
use crate::error::Result;
use crate::online::{NodeId, OnlineSuffixTree, ROOT};
use crate::sa::SaRange;
use crate::text::{prepend, Alphabet, Symbol, Text, SENTINEL};
use crate::tray::{NodeClass, SuffixTray};

/// Symbol-indexed array that is valid without initialization: a cell
/// counts only if its back-pointer is confirmed by the fill stack.
#[derive(Debug, Clone)]
struct LazyArray {
    values: Vec<NodeId>,
    back: Vec<u32>,
    stack: Vec<u32>,
}

impl LazyArray {
    fn new(len: usize) -> LazyArray {
        // zeroed allocations; the stamp check alone decides validity
        LazyArray {
            values: vec![0; len],
            back: vec![0; len],
            stack: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.values.len()
    }

    fn get(&self, i: usize) -> Option<NodeId> {
        let b = *self.back.get(i)? as usize;
        (b < self.stack.len() && self.stack[b] as usize == i).then(|| self.values[i])
    }

    fn set(&mut self, i: usize, v: NodeId) {
        if self.get(i).is_none() {
            self.back[i] = self.stack.len() as u32;
            self.stack.push(i as u32);
        }
        self.values[i] = v;
    }
}

#[derive(Debug, Clone)]
enum Class {
    NotSigma,
    SigmaLeaf,
    NonBranching {
        child: NodeId,
        sep: Symbol,
    },
    Branching {
        /// the two children whose promotion made the node branching
        first_two: [NodeId; 2],
        cells: LazyArray,
        /// last key handed to the fill, `None` before the first
        fill_cursor: Option<Symbol>,
        complete: bool,
    },
}

impl Class {
    fn is_sigma(&self) -> bool {
        !matches!(self, Class::NotSigma)
    }
}

#[derive(Debug, Clone)]
struct Staging {
    cursor: Option<Symbol>,
    insertions: usize,
    children_at_start: usize,
}

#[derive(Debug, Clone)]
struct Info {
    class: Class,
    /// leaf count, kept for light children of heavy nodes once known
    counter: Option<u32>,
    staging: Option<Staging>,
    /// incomplete branching ancestor whose lazy fill this region feeds
    region_owner: Option<NodeId>,
    open: ElemId,
    close: ElemId,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TristStats {
    pub n: usize,
    pub threshold: usize,
    pub nodes: usize,
    pub not_sigma: usize,
    pub sigma_leaf: usize,
    pub sigma_nonbranching: usize,
    pub sigma_branching: usize,
    pub incomplete_arrays: usize,
    pub pending_staging: usize,
    pub bis_trees: usize,
    pub dispatch_cells: usize,
    pub counters: usize,
    pub promotions: u64,
    pub checks_run: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TristMatch {
    /// 1-based positions, ascending
    pub positions: Vec<usize>,
    pub comparisons: u64,
    /// BST_v lookups at branching nodes whose array is still filling
    pub bst_fallbacks: u32,
    /// BST_v lookups for symbols ranked above the threshold
    pub overflow_lookups: u32,
}

impl TristMatch {
    pub fn count(&self) -> usize {
        self.positions.len()
    }
}

#[derive(Debug, Clone)]
pub struct SuffixTrist {
    text: Text,
    alphabet: Alphabet,
    tree: OnlineSuffixTree,
    forest: BisForest,
    order: OrderList,
    info: Vec<Info>,
    threshold: usize,
    checks: bool,
    promotions: u64,
    checks_run: u64,
}

impl SuffixTrist {
    /// `sigma_hint` fixes the heavy threshold for the life of the
    /// structure (at least 2). With `checks`, the lemma-level invariants are
    /// asserted after every step.
    pub fn new(sigma_hint: usize, checks: bool) -> SuffixTrist {
        let mut order = OrderList::new();
        let open = order.push_first(ROOT as u64);
        let close = order.insert_after(open, ROOT as u64);
        let leaf_tok = order.insert_after(open, 1);
        let mut forest = BisForest::new();
        forest.new_singleton(0, None);
        let blank = |open, close| Info {
            class: Class::NotSigma,
            counter: None,
            staging: None,
            region_owner: None,
            open,
            close,
        };
        SuffixTrist {
            text: Text::new(),
            alphabet: Alphabet::empty(),
            tree: OnlineSuffixTree::new(),
            forest,
            order,
            info: vec![blank(open, close), blank(leaf_tok, leaf_tok)],
            threshold: sigma_hint.max(2),
            checks,
            promotions: 0,
            checks_run: 0,
        }
    }

    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn tree(&self) -> &OnlineSuffixTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    fn is_sigma(&self, v: NodeId) -> bool {
        self.info[v as usize].class.is_sigma()
    }

    fn leaf_token(&self, anchor: usize) -> ElemId {
        self.info[self.tree.leaf(anchor) as usize].open
    }

    /// Lexicographic order of the suffixes at 1-based positions `a` and `b`
    /// (position `len() + 1` is the empty suffix), read off the order labels.
    pub fn compare_suffixes(&self, a: usize, b: usize) -> Ordering {
        let n = self.text.len();
        assert!((1..=n + 1).contains(&a) && (1..=n + 1).contains(&b));
        let (x, y) = (self.text.anchor_of(a), self.text.anchor_of(b));
        self.order.cmp(self.leaf_token(x), self.leaf_token(y))
    }

    /// Elements the order list has relabelled so far.
    pub fn order_relabels(&self) -> u64 {
        self.order.relabels()
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if self.checks {
            self.checks_run += 1;
            assert!(ok, "invariant violated: {}", what());
        }
    }

    /// Prepends one raw symbol.
    pub fn extend(&mut self, raw: u64) -> Result<()> {
        prepend(&mut self.text, &mut self.alphabet, raw)?;
        let ev = self.tree.extend(&self.text);
        let n = self.text.len();

        while self.info.len() < self.tree.len() {
            self.info.push(Info {
                class: Class::NotSigma,
                counter: None,
                staging: None,
                region_owner: None,
                open: 0,
                close: 0,
            });
        }

        if let (Some(w), Some(c)) = (ev.new_internal, ev.split_child) {
            self.adopt_split(w, c);
        }
        let x = ev.new_leaf;
        let p = ev.attach_parent;
        let key = self.text.at(n, self.tree.node(p).depth);
        self.place_leaf_token(p, key, x);
        if let Class::Branching { cells, .. } = &mut self.info[p as usize].class {
            if key != SENTINEL && (key as usize) <= cells.len() {
                cells.set(key as usize - 1, x);
            }
        }

        let h = self.target_bis(p, key);
        let text = &self.text;
        let order = &self.order;
        let tree = &self.tree;
        let a = text.at(n, 0);
        let tail = order.key(self.info[tree.leaf(n - 1) as usize].open);
        let info = &self.info;
        self.forest.insert_by(h, n, |y| {
            let b = text.at(y, 0);
            match a.cmp(&b) {
                Ordering::Equal => tail < order.key(info[tree.leaf(y - 1) as usize].open),
                o => o == Ordering::Less,
            }
        });
        if self.checks {
            self.check_bis_neighbours(h, n);
        }
        self.after_insert(h, x);
        Ok(())
    }

    /// A new internal node `w` took the place of `c` under `c`'s old parent.
    fn adopt_split(&mut self, w: NodeId, c: NodeId) {
        let first = self.info[c as usize].open;
        let last = self.info[c as usize].close;
        let open = self.order.insert_before(first, w as u64);
        let close = self.order.insert_after(last, w as u64);
        let parent = self.tree.node(w).parent.unwrap();
        let c_class = &self.info[c as usize].class;
        let class = if c_class.is_sigma() {
            Class::NonBranching {
                child: c,
                sep: self.tree.edge_symbol(&self.text, c),
            }
        } else {
            Class::NotSigma
        };
        let counter = self.info[c as usize].counter.take();
        let region_owner = self.info[c as usize].region_owner;
        self.info[w as usize] = Info {
            class,
            counter,
            staging: None,
            region_owner,
            open,
            close,
        };
        let key = self.tree.edge_symbol(&self.text, w);
        match &mut self.info[parent as usize].class {
            Class::NonBranching { child, .. } if *child == c => *child = w,
            Class::Branching {
                first_two, cells, ..
            } => {
                for f in first_two.iter_mut() {
                    if *f == c {
                        *f = w;
                    }
                }
                if key != SENTINEL
                    && (key as usize) <= cells.len()
                    && cells.get(key as usize - 1).is_some()
                {
                    cells.set(key as usize - 1, w);
                }
            }
            _ => {}
        }
    }

    fn place_leaf_token(&mut self, p: NodeId, key: Symbol, x: NodeId) {
        let prev = self
            .tree
            .node(p)
            .children
            .range(..key)
            .next_back()
            .map(|(_, &s)| s);
        let after = match prev {
            Some(s) => self.info[s as usize].close,
            None => self.info[p as usize].open,
        };
        let tok = self.order.insert_after(after, x as u64);
        self.info[x as usize].open = tok;
        self.info[x as usize].close = tok;
    }

    /// The run the new leaf (child `key` of `p`) belongs to: a light
    /// neighbouring sibling's tree, or a fresh one between heavy siblings.
    fn target_bis(&mut self, p: NodeId, key: Symbol) -> HeaderId {
        let children = &self.tree.node(p).children;
        let prev = children.range(..key).next_back().map(|(_, &s)| s);
        let next = children
            .range((Bound::Excluded(key), Bound::Unbounded))
            .next()
            .map(|(_, &s)| s);
        for s in [prev, next].into_iter().flatten() {
            if !self.is_sigma(s) {
                return self.forest.header_of(self.tree.node(s).leaf_hint);
            }
        }
        debug_assert!(self.is_sigma(p));
        self.forest.new_empty(Some(p))
    }

    fn check_bis_neighbours(&mut self, h: HeaderId, n: usize) {
        let r = self.forest.rank(n);
        let me = self.leaf_token(n);
        if r > 0 {
            let y = self.forest.select(h, r - 1).unwrap();
            let ok = self.order.cmp(self.leaf_token(y), me) == Ordering::Less;
            self.check(ok, || format!("suffix {y} should precede {n}"));
        }
        if let Some(y) = self.forest.select(h, r + 1) {
            let ok = self.order.cmp(me, self.leaf_token(y)) == Ordering::Less;
            self.check(ok, || format!("suffix {n} should precede {y}"));
        }
    }

    /// Counters, staging and lazy fill after suffix `x` went into `h`.
    fn after_insert(&mut self, h: HeaderId, x: NodeId) {
        let n = self.text.len();
        let Some(g) = self.forest.header(h).owner else {
            if n + 1 >= self.threshold {
                self.promote(ROOT);
            }
            return;
        };
        let key = self.text.at(n, self.tree.node(g).depth);
        let vk = self.tree.node(g).children[&key];
        debug_assert!(!self.is_sigma(vk));
        if vk == x {
            self.info[x as usize].counter = Some(1);
        }
        let before = self.info[vk as usize].counter;
        // staged counts are read from the trees, so they already include x
        self.advance_staging(g);
        let staged = self.info[vk as usize].counter.is_some();
        match before {
            _ if vk == x => {}
            Some(c) => self.info[vk as usize].counter = Some(c + 1),
            None if !staged && self.checks => {
                let real = self.tree.leaves_below(vk).len();
                let t = self.threshold;
                self.check(real < t, || {
                    format!("uncounted child {vk} reached {real} leaves")
                });
            }
            None => {}
        }
        if self.checks {
            if let Some(c) = self.info[vk as usize].counter {
                let real = self.tree.leaves_below(vk).len();
                self.check(c as usize == real, || {
                    format!("counter of {vk} is {c}, real {real}")
                });
            }
        }
        let fill_target = match &self.info[g as usize].class {
            Class::Branching {
                complete: false, ..
            } => Some(g),
            _ => self.info[g as usize].region_owner,
        };
        if let Some(v) = fill_target {
            self.fill_one(v);
        }
        if self.info[vk as usize]
            .counter
            .is_some_and(|c| c as usize >= self.threshold)
        {
            self.promote(vk);
        }
    }

    /// Leaf count of light child `c`, read off its run's tree.
    fn count_in_bis(&self, c: NodeId) -> usize {
        let h = self.forest.header_of(self.tree.node(c).leaf_hint);
        let (open, close) = (self.info[c as usize].open, self.info[c as usize].close);
        let lo = self.forest.partition_point(h, |y| {
            self.order.cmp(self.leaf_token(y), open) != Ordering::Less
        });
        let hi = self.forest.partition_point(h, |y| {
            self.order.cmp(self.leaf_token(y), close) == Ordering::Greater
        });
        hi - lo
    }

    fn advance_staging(&mut self, g: NodeId) {
        let Some(mut st) = self.info[g as usize].staging.take() else {
            return;
        };
        st.insertions += 1;
        let mut budget = 2;
        let mut done = true;
        loop {
            let next = match st.cursor {
                None => self.tree.node(g).children.iter().next(),
                Some(k) => self
                    .tree
                    .node(g)
                    .children
                    .range((Bound::Excluded(k), Bound::Unbounded))
                    .next(),
            }
            .map(|(&k, &c)| (k, c));
            let Some((k, c)) = next else { break };
            if !self.is_sigma(c) && self.info[c as usize].counter.is_none() {
                if budget == 0 {
                    done = false;
                    break;
                }
                budget -= 1;
                let count = self.count_in_bis(c) as u32;
                self.info[c as usize].counter = Some(count);
            }
            st.cursor = Some(k);
        }
        let limit = st.children_at_start.div_ceil(2);
        let (ins, kids) = (st.insertions, st.children_at_start);
        self.check(done || ins < limit, || {
            format!("staging at {g} unfinished after {ins} insertions with {kids} children")
        });
        if !done {
            self.info[g as usize].staging = Some(st);
        }
    }

    fn fill_one(&mut self, v: NodeId) {
        let children = &self.tree.node(v).children;
        let Class::Branching {
            cells,
            fill_cursor,
            complete,
            ..
        } = &mut self.info[v as usize].class
        else {
            return;
        };
        if *complete {
            return;
        }
        let len = cells.len() as Symbol;
        loop {
            let next = match *fill_cursor {
                None => children.iter().next(),
                Some(k) => children
                    .range((Bound::Excluded(k), Bound::Unbounded))
                    .next(),
            }
            .map(|(&k, &c)| (k, c));
            match next {
                Some((k, c)) if k <= len => {
                    *fill_cursor = Some(k);
                    if k == SENTINEL || cells.get(k as usize - 1).is_some() {
                        continue;
                    }
                    cells.set(k as usize - 1, c);
                    return;
                }
                _ => {
                    *complete = true;
                    return;
                }
            }
        }
    }

    /// `u` just reached the threshold.
    fn promote(&mut self, u: NodeId) {
        self.promotions += 1;
        let children: Vec<NodeId> = self.tree.node(u).children.values().copied().collect();
        if self.checks {
            let k = children.len();
            for &c in &children {
                let leaves = self.tree.leaves_below(c).len();
                let bound = (self.threshold + 1).saturating_sub(k);
                self.check(leaves <= bound, || {
                    format!("child {c} of new heavy node {u} has {leaves} leaves, bound {bound}")
                });
            }
        }
        let h = self.forest.header_of(self.tree.node(u).leaf_hint);
        let parent = self.tree.node(u).parent;
        match parent {
            None => self.forest.set_owner(h, Some(u)),
            Some(_) => {
                let (open, close) = (self.info[u as usize].open, self.info[u as usize].close);
                let lo = self.forest.partition_point(h, |y| {
                    self.order.cmp(self.leaf_token(y), open) != Ordering::Less
                });
                let hi = self.forest.partition_point(h, |y| {
                    self.order.cmp(self.leaf_token(y), close) == Ordering::Greater
                });
                self.forest.split3(h, lo, hi - 1, Some(u));
            }
        }
        let info = &mut self.info[u as usize];
        info.class = Class::SigmaLeaf;
        info.counter = None;
        info.staging = (!children.is_empty()).then_some(Staging {
            cursor: None,
            insertions: 0,
            children_at_start: children.len(),
        });
        let Some(g) = parent else { return };

        let g_region = self.info[g as usize].region_owner;
        let region = match &self.info[g as usize].class {
            Class::Branching {
                complete: false, ..
            } => Some(g),
            _ => g_region,
        };
        self.info[u as usize].region_owner = region;

        let sep = self.tree.edge_symbol(&self.text, u);
        let staging_done = self.info[g as usize].staging.is_none();
        match self.info[g as usize].class.clone() {
            Class::SigmaLeaf => {
                self.check(staging_done, || {
                    format!("{g} gained a heavy child before staging finished")
                });
                self.info[g as usize].class = Class::NonBranching { child: u, sep };
            }
            Class::NonBranching { child, sep: old } => {
                let mut cells = LazyArray::new(self.threshold);
                for (s, c) in [(sep, u), (old, child)] {
                    if s != SENTINEL && (s as usize) <= cells.len() {
                        cells.set(s as usize - 1, c);
                    }
                }
                self.info[g as usize].class = Class::Branching {
                    first_two: [u, child],
                    cells,
                    fill_cursor: None,
                    complete: false,
                };
                // u now belongs to g's first two, not to g's lazy region
                self.info[u as usize].region_owner = g_region;
                if self.checks {
                    self.check_corollary(g);
                }
            }
            Class::Branching { .. } => {}
            Class::NotSigma => unreachable!("light parent of a heavy node"),
        }
    }

    /// A node that just became branching must not sit in the lazy region
    /// of an ancestor whose array is still being filled.
    fn check_corollary(&mut self, x: NodeId) {
        let mut a = self.tree.node(x).parent;
        while let Some(v) = a {
            if let Class::Branching {
                first_two,
                complete: false,
                ..
            } = self.info[v as usize].class.clone()
            {
                let inside = first_two.iter().any(|&f| {
                    let (o, c) = (self.info[f as usize].open, self.info[f as usize].close);
                    let me = self.info[x as usize].open;
                    self.order.cmp(o, me) != Ordering::Greater
                        && self.order.cmp(me, c) != Ordering::Greater
                });
                self.check(inside, || {
                    format!("{x} became branching while {v} is still filling")
                });
            }
            a = self.tree.node(v).parent;
        }
    }

    /// Runs `pattern` (ranks) down the structure.
    pub fn query(&self, pattern: &[Symbol]) -> TristMatch {
        let mut out = TristMatch {
            positions: Vec::new(),
            comparisons: 0,
            bst_fallbacks: 0,
            overflow_lookups: 0,
        };
        let m = pattern.len();
        if !self.is_sigma(ROOT) {
            let h = self.forest.header_of(0);
            self.finish_in_bis(h, pattern, 0, &mut out);
            return out;
        }
        let mut v = ROOT;
        loop {
            let d = self.tree.node(v).depth;
            if d >= m {
                self.finish_subtree(v, &mut out);
                return out;
            }
            let rho = pattern[d];
            let next = match &self.info[v as usize].class {
                Class::NotSigma => unreachable!("walked into a light node"),
                Class::SigmaLeaf => {
                    let h = self.forest.header_of(self.tree.node(v).leaf_hint);
                    self.finish_in_bis(h, pattern, d, &mut out);
                    return out;
                }
                Class::NonBranching { child, sep } => {
                    out.comparisons += 1;
                    match rho.cmp(sep) {
                        Ordering::Equal => Some(*child),
                        Ordering::Less => self
                            .tree
                            .node(v)
                            .children
                            .range(..*sep)
                            .next_back()
                            .map(|(_, &c)| c),
                        Ordering::Greater => self
                            .tree
                            .node(v)
                            .children
                            .range((Bound::Excluded(*sep), Bound::Unbounded))
                            .next()
                            .map(|(_, &c)| c),
                    }
                }
                Class::Branching {
                    first_two,
                    cells,
                    complete,
                    ..
                } => {
                    if *complete {
                        if rho as usize <= cells.len() {
                            cells.get(rho as usize - 1)
                        } else {
                            out.overflow_lookups += 1;
                            self.tree.node(v).children.get(&rho).copied()
                        }
                    } else {
                        let probe = first_two.iter().copied().find(|&f| {
                            out.comparisons += 1;
                            self.tree.edge_symbol(&self.text, f) == rho
                        });
                        probe.or_else(|| {
                            out.bst_fallbacks += 1;
                            self.tree.node(v).children.get(&rho).copied()
                        })
                    }
                }
            };
            let Some(u) = next else { return out };
            if !self.is_sigma(u) {
                let h = self.forest.header_of(self.tree.node(u).leaf_hint);
                self.finish_in_bis(h, pattern, d, &mut out);
                return out;
            }
            let end = self.tree.node(u).depth.min(m);
            for k in d + 1..end {
                out.comparisons += 1;
                if self.tree.symbol_at(&self.text, u, k) != pattern[k] {
                    return out;
                }
            }
            if self.tree.symbol_at(&self.text, u, d) != rho {
                return out;
            }
            v = u;
        }
    }

    fn finish_in_bis(&self, h: HeaderId, pattern: &[Symbol], matched: usize, out: &mut TristMatch) {
        let r = self.forest.search(h, &self.text, pattern, matched);
        out.comparisons += r.comparisons;
        if let Some((lo, hi)) = r.ranks {
            out.positions = (lo..=hi)
                .map(|k| self.text.position_of(self.forest.select(h, k).unwrap()))
                .collect();
            out.positions.sort_unstable();
        }
    }

    fn finish_subtree(&self, v: NodeId, out: &mut TristMatch) {
        out.positions = self
            .tree
            .leaves_below(v)
            .into_iter()
            .map(|k| self.text.position_of(k))
            .collect();
        out.positions.sort_unstable();
    }

    /// Query by raw symbols; unknown symbols cannot match.
    pub fn query_raw(&self, raw: &[u64]) -> TristMatch {
        match self.alphabet.encode_pattern(raw) {
            Some(p) => self.query(&p),
            None => TristMatch {
                positions: Vec::new(),
                comparisons: 0,
                bst_fallbacks: 0,
                overflow_lookups: 0,
            },
        }
    }

    pub fn stats(&self) -> TristStats {
        let mut s = TristStats {
            n: self.text.len(),
            threshold: self.threshold,
            nodes: self.tree.len(),
            promotions: self.promotions,
            checks_run: self.checks_run,
            ..TristStats::default()
        };
        for info in &self.info {
            match &info.class {
                Class::NotSigma => s.not_sigma += 1,
                Class::SigmaLeaf => s.sigma_leaf += 1,
                Class::NonBranching { .. } => s.sigma_nonbranching += 1,
                Class::Branching {
                    cells, complete, ..
                } => {
                    s.sigma_branching += 1;
                    s.dispatch_cells += cells.len();
                    if !complete {
                        s.incomplete_arrays += 1;
                    }
                }
            }
            if info.staging.is_some() {
                s.pending_staging += 1;
            }
            if info.counter.is_some() {
                s.counters += 1;
            }
        }
        s.bis_trees = (0..self.forest.headers() as HeaderId)
            .filter(|&h| !self.forest.is_empty(h))
            .count();
        s
    }

    /// Compares against a tray built from scratch on the current text with
    /// the same threshold: classes, separators, runs and suffix order.
    pub fn check_equivalence(&self) -> std::result::Result<(), String> {
        let sigma = self.alphabet.sigma();
        let tray = SuffixTray::build_with_threshold(&self.text, sigma, self.threshold);
        let stree = tray.tree();
        let ours = self.tree.preorder();
        let theirs = stree.preorder();
        if ours.len() != theirs.len() {
            return Err(format!(
                "{} nodes online, {} static",
                ours.len(),
                theirs.len()
            ));
        }
        for (&v, &w) in ours.iter().zip(&theirs) {
            let ok = match (&self.info[v as usize].class, tray.class(w)) {
                (Class::NotSigma, NodeClass::NotSigma) => true,
                (Class::SigmaLeaf, NodeClass::SigmaLeaf) => true,
                (Class::Branching { .. }, NodeClass::SigmaBranching { .. }) => true,
                (Class::NonBranching { sep, .. }, NodeClass::SigmaNonBranching { sep: s, .. }) => {
                    sep == s
                }
                _ => false,
            };
            if !ok {
                return Err(format!(
                    "node {v} (static {w}, depth {}): online {:?} vs static {}",
                    self.tree.node(v).depth,
                    self.info[v as usize].class,
                    tray.class(w).name()
                ));
            }
        }

        let rank = tray.index().rank();
        let sa_of = |anchor: usize| rank[self.text.position_of(anchor) - 1] as usize;
        let order: Vec<usize> = self
            .order
            .iter()
            .filter_map(|tok| {
                let v = self.order.payload(tok) as NodeId;
                let node = self.tree.node(v);
                (node.is_leaf() && self.info[v as usize].open == tok).then(|| node.anchor.unwrap())
            })
            .collect();
        if order.len() != self.text.len() + 1
            || order.iter().enumerate().any(|(i, &a)| sa_of(a) != i)
        {
            return Err("global leaf order differs from the suffix array".into());
        }

        let mut runs = Vec::new();
        for h in 0..self.forest.headers() as HeaderId {
            if self.forest.is_empty(h) {
                continue;
            }
            let ranks: Vec<usize> = self.forest.iter(h).into_iter().map(sa_of).collect();
            if ranks.windows(2).any(|w| w[1] != w[0] + 1) {
                return Err(format!("tree {h} is not a contiguous run: {ranks:?}"));
            }
            runs.push(SaRange::new(ranks[0], *ranks.last().unwrap()));
        }
        runs.sort();
        let want = tray.intervals();
        if runs != want {
            return Err(format!("runs {runs:?} vs static intervals {want:?}"));
        }
        Ok(())
    }
}
