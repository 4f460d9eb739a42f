//! Static suffix tree laid over a suffix array.
//!
//! Every node knows its suffix-array interval `[L(v), R(v)]`; children are
//! kept in symbol order, so the child intervals tile the parent interval.

use crate::error::{Error, Result};
use crate::sa::{SaRange, SuffixArrayIndex};
use crate::text::Symbol;

pub type NodeId = u32;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Length of the path label, sentinel included for leaves.
    pub depth: usize,
    pub interval: SaRange,
    /// Forward text offset of the suffix, for leaves.
    pub leaf: Option<usize>,
    /// Forward offset of the leftmost leaf below.
    pub start: usize,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.leaf.is_some()
    }

    pub fn leaf_count(&self) -> usize {
        self.interval.len()
    }
}

/// Where a pattern ends up: on the edge into `node`, after `offset` symbols
/// of that edge (`offset == edge length` means exactly at `node`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Locus {
    pub node: NodeId,
    pub offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Navigation {
    pub locus: Option<Locus>,
    pub comparisons: u64,
}

#[derive(Debug, Clone)]
pub struct SuffixTree {
    nodes: Vec<TreeNode>,
}

impl SuffixTree {
    /// Stack construction over the LCP array, `O(n)`.
    pub fn build_from_sa(idx: &SuffixArrayIndex) -> SuffixTree {
        let sa = idx.sa();
        let lcp = idx.lcp();
        let n = sa.len();
        let mut nodes = vec![TreeNode {
            parent: None,
            children: Vec::new(),
            depth: 0,
            interval: SaRange::new(0, n - 1),
            leaf: None,
            start: 0,
        }];
        let mut stack: Vec<NodeId> = vec![ROOT];

        fn attach(nodes: &mut [TreeNode], parent: NodeId, child: NodeId) {
            nodes[child as usize].parent = Some(parent);
            nodes[parent as usize].children.push(child);
        }

        for k in 0..n {
            if k > 0 {
                let l = lcp[k] as usize;
                loop {
                    let top = *stack.last().unwrap();
                    if nodes[top as usize].depth <= l {
                        break;
                    }
                    stack.pop();
                    nodes[top as usize].interval.hi = k - 1;
                    let below = *stack.last().unwrap();
                    if nodes[below as usize].depth >= l {
                        attach(&mut nodes, below, top);
                    } else {
                        let id = nodes.len() as NodeId;
                        nodes.push(TreeNode {
                            parent: None,
                            children: Vec::new(),
                            depth: l,
                            interval: SaRange::new(nodes[top as usize].interval.lo, k - 1),
                            leaf: None,
                            start: 0,
                        });
                        attach(&mut nodes, id, top);
                        stack.push(id);
                        break;
                    }
                }
            }
            let start = sa[k] as usize;
            let id = nodes.len() as NodeId;
            nodes.push(TreeNode {
                parent: None,
                children: Vec::new(),
                depth: n - start,
                interval: SaRange::new(k, k),
                leaf: Some(start),
                start,
            });
            stack.push(id);
        }
        while stack.len() > 1 {
            let top = stack.pop().unwrap();
            nodes[top as usize].interval.hi = n - 1;
            attach(&mut nodes, *stack.last().unwrap(), top);
        }
        for node in nodes.iter_mut() {
            node.start = sa[node.interval.lo] as usize;
        }
        SuffixTree { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, id: NodeId) -> &TreeNode {
        &self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    /// Pre-order node ids, children in symbol order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![ROOT];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v as usize].children.iter().rev());
        }
        out
    }

    /// Symbol at `offset` along the path to `v`.
    #[inline]
    pub fn symbol_at(&self, fwd: &[Symbol], v: NodeId, offset: usize) -> Symbol {
        let node = &self.nodes[v as usize];
        fwd[self.sa_start(node) + offset]
    }

    #[inline]
    fn sa_start(&self, node: &TreeNode) -> usize {
        node.start
    }

    /// First symbol of the edge into `child`.
    pub fn edge_symbol(&self, fwd: &[Symbol], child: NodeId) -> Symbol {
        let parent = self.nodes[child as usize].parent.expect("root has no edge");
        let d = self.nodes[parent as usize].depth;
        self.symbol_at(fwd, child, d)
    }

    /// Half-open forward-text range labelling the edge into `v`.
    pub fn edge_label(&self, v: NodeId) -> std::ops::Range<usize> {
        let node = &self.nodes[v as usize];
        let parent_depth = node.parent.map_or(0, |p| self.nodes[p as usize].depth);
        let s = self.sa_start(node);
        s + parent_depth..s + node.depth
    }

    /// `[L(v_first), R(v_last)]` for a 0-based child range.
    pub fn child_interval(&self, v: NodeId, first: usize, last: usize) -> Result<SaRange> {
        let children = &self.nodes[v as usize].children;
        if first > last || last >= children.len() {
            return Err(Error::ChildIndexOutOfRange {
                first,
                last,
                children: children.len(),
            });
        }
        Ok(SaRange::new(
            self.nodes[children[first] as usize].interval.lo,
            self.nodes[children[last] as usize].interval.hi,
        ))
    }

    /// Classic root-down search, binary searching the children at every
    /// node. Comparisons include one per binary-search probe.
    pub fn navigate(&self, fwd: &[Symbol], pattern: &[Symbol]) -> Navigation {
        let mut comparisons = 0u64;
        let mut v = ROOT;
        let mut i = 0;
        while i < pattern.len() {
            let node = &self.nodes[v as usize];
            let depth = node.depth;
            let children = &node.children;
            let (mut a, mut b) = (0usize, children.len());
            let mut found = None;
            while a < b {
                let mid = (a + b) / 2;
                let c = self.symbol_at(fwd, children[mid], depth);
                comparisons += 1;
                match c.cmp(&pattern[i]) {
                    std::cmp::Ordering::Less => a = mid + 1,
                    std::cmp::Ordering::Greater => b = mid,
                    std::cmp::Ordering::Equal => {
                        found = Some(children[mid]);
                        break;
                    }
                }
            }
            let Some(child) = found else {
                return Navigation {
                    locus: None,
                    comparisons,
                };
            };
            i += 1;
            let child_depth = self.nodes[child as usize].depth;
            let start = self.sa_start(&self.nodes[child as usize]);
            let mut d = depth + 1;
            while d < child_depth && i < pattern.len() {
                comparisons += 1;
                if fwd[start + d] != pattern[i] {
                    return Navigation {
                        locus: None,
                        comparisons,
                    };
                }
                d += 1;
                i += 1;
            }
            if i == pattern.len() {
                return Navigation {
                    locus: Some(Locus {
                        node: child,
                        offset: d - depth,
                    }),
                    comparisons,
                };
            }
            v = child;
        }
        Navigation {
            locus: Some(Locus { node: v, offset: 0 }),
            comparisons,
        }
    }

    /// Interval of a navigation result.
    pub fn locus_interval(&self, locus: Locus) -> SaRange {
        self.nodes[locus.node as usize].interval
    }
}
