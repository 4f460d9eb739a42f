//! Static suffix tray: a suffix tree whose heavy nodes carry dispatch
//! structures and whose light subtrees collapse into suffix-array intervals.
//!
//! A node is a sigma-node when at least `threshold` leaves hang below it.
//! Sigma-nodes with two or more sigma-children get a symbol-indexed array,
//! those with exactly one keep just the separating symbol, and everything
//! between sigma-children is searched as a suffix-array interval.

use crate::sa::{SaRange, SuffixArrayIndex};
use crate::text::{Alphabet, Symbol, Text, SENTINEL};
use crate::tree::{NodeId, SuffixTree, ROOT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Nil,
    Child(NodeId),
    Interval(SaRange),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeClass {
    NotSigma,
    SigmaLeaf,
    SigmaNonBranching {
        /// first edge symbol of the sigma-child (`SENTINEL` if it is the
        /// sentinel leaf)
        sep: Symbol,
        child: NodeId,
        left: Option<SaRange>,
        right: Option<SaRange>,
    },
    SigmaBranching {
        /// `dispatch[c - 1]` for symbol rank `c`
        dispatch: Vec<Cell>,
    },
}

impl NodeClass {
    pub fn is_sigma(&self) -> bool {
        !matches!(self, NodeClass::NotSigma)
    }

    pub fn name(&self) -> &'static str {
        match self {
            NodeClass::NotSigma => "not-sigma",
            NodeClass::SigmaLeaf => "sigma-leaf",
            NodeClass::SigmaNonBranching { .. } => "sigma-nonbranching",
            NodeClass::SigmaBranching { .. } => "sigma-branching",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrayMatch {
    pub range: Option<SaRange>,
    pub comparisons: u64,
}

impl TrayMatch {
    pub fn count(&self) -> usize {
        self.range.map_or(0, |r| r.len())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TrayStats {
    pub nodes: usize,
    pub not_sigma: usize,
    pub sigma_leaf: usize,
    pub sigma_nonbranching: usize,
    pub sigma_branching: usize,
    pub intervals: usize,
    pub max_interval: usize,
    pub dispatch_cells: usize,
}

#[derive(Debug, Clone)]
pub struct SuffixTray {
    fwd: Vec<Symbol>,
    sa: SuffixArrayIndex,
    tree: SuffixTree,
    classes: Vec<NodeClass>,
    sigma: usize,
    threshold: usize,
}

impl SuffixTray {
    pub fn build(text: &Text, alphabet: &Alphabet) -> SuffixTray {
        let sigma = alphabet.sigma();
        SuffixTray::build_with_threshold(text, sigma, sigma.max(1))
    }

    pub fn build_with_threshold(text: &Text, sigma: usize, threshold: usize) -> SuffixTray {
        let sa = SuffixArrayIndex::build(text, sigma);
        SuffixTray::from_index(text.forward(), sa, sigma, threshold)
    }

    pub fn from_index(
        fwd: Vec<Symbol>,
        sa: SuffixArrayIndex,
        sigma: usize,
        threshold: usize,
    ) -> SuffixTray {
        let threshold = threshold.max(1);
        let tree = SuffixTree::build_from_sa(&sa);
        let classes = classify(&tree, &fwd, sigma, threshold);
        SuffixTray {
            fwd,
            sa,
            tree,
            classes,
            sigma,
            threshold,
        }
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    /// Text length without the sentinel.
    pub fn text_len(&self) -> usize {
        self.fwd.len() - 1
    }

    pub fn forward(&self) -> &[Symbol] {
        &self.fwd
    }

    pub fn index(&self) -> &SuffixArrayIndex {
        &self.sa
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn class(&self, v: NodeId) -> &NodeClass {
        &self.classes[v as usize]
    }

    /// Intervals a query may end up searching, in suffix order.
    pub fn intervals(&self) -> Vec<SaRange> {
        let mut out = Vec::new();
        if !self.classes[ROOT as usize].is_sigma() {
            out.push(self.sa.full());
            return out;
        }
        for v in self.tree.preorder() {
            let node = self.tree.node(v);
            match &self.classes[v as usize] {
                NodeClass::SigmaLeaf => out.push(node.interval),
                NodeClass::SigmaNonBranching { .. } | NodeClass::SigmaBranching { .. } => {
                    out.extend(self.light_runs(v));
                }
                NodeClass::NotSigma => {}
            }
        }
        out.sort();
        out
    }

    /// Maximal runs of consecutive non-sigma children of `v`.
    fn light_runs(&self, v: NodeId) -> Vec<SaRange> {
        light_runs(&self.tree, &self.classes, v)
    }

    pub fn stats(&self) -> TrayStats {
        let mut s = TrayStats {
            nodes: self.classes.len(),
            ..TrayStats::default()
        };
        for c in &self.classes {
            match c {
                NodeClass::NotSigma => s.not_sigma += 1,
                NodeClass::SigmaLeaf => s.sigma_leaf += 1,
                NodeClass::SigmaNonBranching { .. } => s.sigma_nonbranching += 1,
                NodeClass::SigmaBranching { dispatch } => {
                    s.sigma_branching += 1;
                    s.dispatch_cells += dispatch.len();
                }
            }
        }
        let intervals = self.intervals();
        s.intervals = intervals.len();
        s.max_interval = intervals.iter().map(SaRange::len).max().unwrap_or(0);
        s
    }

    /// Locates `pattern` (ranks) and counts symbol comparisons.
    pub fn query(&self, pattern: &[Symbol]) -> TrayMatch {
        let mut comparisons = 0u64;
        let m = pattern.len();
        if pattern
            .iter()
            .any(|&c| c == SENTINEL || c as usize > self.sigma)
        {
            return TrayMatch {
                range: None,
                comparisons,
            };
        }
        let miss = |comparisons| TrayMatch {
            range: None,
            comparisons,
        };
        if !self.classes[ROOT as usize].is_sigma() {
            let r = self
                .sa
                .interval_search(&self.fwd, pattern, self.sa.full(), 0);
            return TrayMatch {
                range: r.range,
                comparisons: r.comparisons,
            };
        }
        let mut v = ROOT;
        loop {
            let node = self.tree.node(v);
            let d = node.depth;
            if d >= m {
                return TrayMatch {
                    range: Some(node.interval),
                    comparisons,
                };
            }
            let c = pattern[d];
            let next = match &self.classes[v as usize] {
                NodeClass::NotSigma => unreachable!("descended into a light node"),
                NodeClass::SigmaLeaf => Cell::Interval(node.interval),
                NodeClass::SigmaNonBranching {
                    sep,
                    child,
                    left,
                    right,
                } => {
                    comparisons += 1;
                    match c.cmp(sep) {
                        std::cmp::Ordering::Equal => Cell::Child(*child),
                        std::cmp::Ordering::Less => left.map_or(Cell::Nil, Cell::Interval),
                        std::cmp::Ordering::Greater => right.map_or(Cell::Nil, Cell::Interval),
                    }
                }
                NodeClass::SigmaBranching { dispatch } => dispatch[c as usize - 1],
            };
            match next {
                Cell::Nil => return miss(comparisons),
                Cell::Interval(range) => {
                    let r = self.sa.interval_search(&self.fwd, pattern, range, d);
                    return TrayMatch {
                        range: r.range,
                        comparisons: comparisons + r.comparisons,
                    };
                }
                Cell::Child(u) => {
                    let child = self.tree.node(u);
                    let end = child.depth.min(m);
                    for k in d + 1..end {
                        comparisons += 1;
                        if self.fwd[child.start + k] != pattern[k] {
                            return miss(comparisons);
                        }
                    }
                    v = u;
                }
            }
        }
    }

    /// Number of occurrences; the empty pattern matches every suffix
    /// including the empty one.
    pub fn count(&self, pattern: &[Symbol]) -> usize {
        self.query(pattern).count()
    }

    /// Smallest 1-based position where `pattern` occurs.
    pub fn first_occurrence(&self, pattern: &[Symbol]) -> Option<usize> {
        self.query(pattern)
            .range
            .map(|r| self.sa.leftmost_start(r) + 1)
    }

    /// All 1-based positions, ascending.
    pub fn occurrences(&self, pattern: &[Symbol]) -> Vec<usize> {
        let mut out = self.sa.report_occurrences(self.query(pattern).range);
        out.sort_unstable();
        out
    }
}

fn light_runs(tree: &SuffixTree, classes: &[NodeClass], v: NodeId) -> Vec<SaRange> {
    let mut out = Vec::new();
    let mut run: Option<SaRange> = None;
    for &c in &tree.node(v).children {
        if classes[c as usize].is_sigma() {
            out.extend(run.take());
        } else {
            let iv = tree.node(c).interval;
            run = Some(match run {
                Some(r) => SaRange::new(r.lo, iv.hi),
                None => iv,
            });
        }
    }
    out.extend(run);
    out
}

fn classify(tree: &SuffixTree, fwd: &[Symbol], sigma: usize, threshold: usize) -> Vec<NodeClass> {
    let heavy: Vec<bool> = tree
        .nodes()
        .iter()
        .map(|n| n.leaf_count() >= threshold)
        .collect();
    let mut classes = vec![NodeClass::NotSigma; tree.len()];
    for (v, node) in tree.nodes().iter().enumerate() {
        if !heavy[v] {
            continue;
        }
        let heavy_children: Vec<NodeId> = node
            .children
            .iter()
            .copied()
            .filter(|&c| heavy[c as usize])
            .collect();
        classes[v] = match heavy_children.len() {
            0 => NodeClass::SigmaLeaf,
            1 => NodeClass::SigmaNonBranching {
                sep: fwd[tree.node(heavy_children[0]).start + node.depth],
                child: heavy_children[0],
                left: None,
                right: None,
            },
            _ => NodeClass::SigmaBranching {
                dispatch: vec![Cell::Nil; sigma],
            },
        };
    }
    // fill intervals now that every child knows whether it is heavy
    for (v, node) in tree.nodes().iter().enumerate() {
        match &classes[v] {
            NodeClass::SigmaNonBranching { child, .. } => {
                let child = *child;
                let pos = node.children.iter().position(|&c| c == child).unwrap();
                let span = |a: usize, b: usize| {
                    (a < b).then(|| {
                        SaRange::new(
                            tree.node(node.children[a]).interval.lo,
                            tree.node(node.children[b - 1]).interval.hi,
                        )
                    })
                };
                let (l, r) = (span(0, pos), span(pos + 1, node.children.len()));
                if let NodeClass::SigmaNonBranching { left, right, .. } = &mut classes[v] {
                    *left = l;
                    *right = r;
                }
            }
            NodeClass::SigmaBranching { .. } => {
                let mut cells = vec![Cell::Nil; sigma];
                let runs = light_runs(tree, &classes, v as NodeId);
                for &c in &node.children {
                    let sym = fwd[tree.node(c).start + node.depth];
                    if sym == SENTINEL {
                        continue;
                    }
                    cells[sym as usize - 1] = if heavy[c as usize] {
                        Cell::Child(c)
                    } else {
                        let k = tree.node(c).interval.lo;
                        Cell::Interval(*runs.iter().find(|r| r.contains(k)).unwrap())
                    };
                }
                classes[v] = NodeClass::SigmaBranching { dispatch: cells };
            }
            _ => {}
        }
    }
    classes
}
