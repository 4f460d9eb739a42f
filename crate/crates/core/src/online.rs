//! Suffix tree grown by prepending symbols (Weiner's construction).
//!
//! Every internal node keeps an indicator set (symbols `a` such that `a`
//! followed by the node label occurs in the text) and hard links (`a` maps
//! to the node labelled `a` + label, when that node exists). Prepending `a`
//! walks up from the leaf of the previous whole text to find where the new
//! leaf hangs; amortized over all prepends the walks are linear.

use std::collections::BTreeMap;

use crate::text::{Symbol, Text, SENTINEL};

pub type NodeId = u32;

pub const ROOT: NodeId = 0;

#[derive(Debug, Clone)]
pub struct OnlineNode {
    pub parent: Option<NodeId>,
    /// Path label length; a leaf's label ends with the sentinel.
    pub depth: usize,
    pub children: BTreeMap<Symbol, NodeId>,
    /// Anchor of some leaf below, used to read edge labels.
    pub leaf_hint: usize,
    pub anchor: Option<usize>,
    links: Vec<(Symbol, NodeId)>,
    indicator: Vec<Symbol>,
}

impl OnlineNode {
    pub fn is_leaf(&self) -> bool {
        self.anchor.is_some()
    }

    fn link(&self, a: Symbol) -> Option<NodeId> {
        self.links
            .binary_search_by_key(&a, |&(s, _)| s)
            .ok()
            .map(|i| self.links[i].1)
    }

    fn set_link(&mut self, a: Symbol, w: NodeId) {
        match self.links.binary_search_by_key(&a, |&(s, _)| s) {
            Ok(i) => self.links[i].1 = w,
            Err(i) => self.links.insert(i, (a, w)),
        }
    }

    fn has_indicator(&self, a: Symbol) -> bool {
        self.indicator.binary_search(&a).is_ok()
    }

    fn set_indicator(&mut self, a: Symbol) {
        if let Err(i) = self.indicator.binary_search(&a) {
            self.indicator.insert(i, a);
        }
    }
}

/// What one prepend changed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionEvent {
    pub new_leaf: NodeId,
    /// Node created by splitting the edge into `split_child`.
    pub new_internal: Option<NodeId>,
    pub split_child: Option<NodeId>,
    /// Parent of the new leaf.
    pub attach_parent: NodeId,
}

#[derive(Debug, Clone)]
pub struct OnlineSuffixTree {
    nodes: Vec<OnlineNode>,
    leaf_of: Vec<NodeId>,
    walk_steps: u64,
}

impl Default for OnlineSuffixTree {
    fn default() -> Self {
        OnlineSuffixTree::new()
    }
}

impl OnlineSuffixTree {
    /// Tree of the empty text: root plus the sentinel leaf.
    pub fn new() -> OnlineSuffixTree {
        let mut t = OnlineSuffixTree {
            nodes: vec![OnlineNode {
                parent: None,
                depth: 0,
                children: BTreeMap::new(),
                leaf_hint: 0,
                anchor: None,
                links: Vec::new(),
                indicator: Vec::new(),
            }],
            leaf_of: Vec::new(),
            walk_steps: 0,
        };
        let leaf = t.new_leaf(0);
        t.attach(ROOT, SENTINEL, leaf);
        t
    }

    /// Builds by prepending the whole text back to front.
    pub fn from_text(text: &Text) -> OnlineSuffixTree {
        let mut tree = OnlineSuffixTree::new();
        let mut partial = Text::new();
        for &r in text.ranks().iter().rev() {
            partial.push_front(r);
            tree.extend(&partial);
        }
        tree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, v: NodeId) -> &OnlineNode {
        &self.nodes[v as usize]
    }

    pub fn leaf(&self, anchor: usize) -> NodeId {
        self.leaf_of[anchor]
    }

    /// Number of suffixes indexed, sentinel suffix included.
    pub fn suffixes(&self) -> usize {
        self.leaf_of.len()
    }

    /// Total nodes visited by upward walks so far.
    pub fn walk_steps(&self) -> u64 {
        self.walk_steps
    }

    /// Symbol `offset` along the path to `v`.
    #[inline]
    pub fn symbol_at(&self, text: &Text, v: NodeId, offset: usize) -> Symbol {
        text.at(self.nodes[v as usize].leaf_hint, offset)
    }

    /// First symbol of the edge into `v`.
    pub fn edge_symbol(&self, text: &Text, v: NodeId) -> Symbol {
        let p = self.nodes[v as usize].parent.expect("root has no edge");
        self.symbol_at(text, v, self.nodes[p as usize].depth)
    }

    /// Is `a` + label(v) a substring of the text?
    pub fn indicator(&self, text: &Text, v: NodeId, a: Symbol) -> bool {
        let node = &self.nodes[v as usize];
        match node.anchor {
            Some(k) => k < text.len() && text.at(k + 1, 0) == a,
            None => node.has_indicator(a),
        }
    }

    pub fn link(&self, v: NodeId, a: Symbol) -> Option<NodeId> {
        self.nodes[v as usize].link(a)
    }

    fn new_leaf(&mut self, anchor: usize) -> NodeId {
        let id = self.nodes.len() as NodeId;
        self.nodes.push(OnlineNode {
            parent: None,
            depth: anchor + 1,
            children: BTreeMap::new(),
            leaf_hint: anchor,
            anchor: Some(anchor),
            links: Vec::new(),
            indicator: Vec::new(),
        });
        debug_assert_eq!(self.leaf_of.len(), anchor);
        self.leaf_of.push(id);
        id
    }

    fn attach(&mut self, parent: NodeId, key: Symbol, child: NodeId) {
        self.nodes[child as usize].parent = Some(parent);
        self.nodes[parent as usize].children.insert(key, child);
    }

    /// Inserts the suffix that `text` just gained at its front. `text` must
    /// already contain the new symbol.
    pub fn extend(&mut self, text: &Text) -> ExtensionEvent {
        let n = text.len();
        assert_eq!(self.leaf_of.len(), n, "tree and text out of step");
        let a = text.at(n, 0);
        let prev_leaf = self.leaf_of[n - 1];

        // walk up to v' (first node with indicator a), marking as we go
        let mut path = Vec::new();
        let mut v_prime = None;
        let mut u = self.nodes[prev_leaf as usize].parent;
        while let Some(x) = u {
            self.walk_steps += 1;
            if self.nodes[x as usize].has_indicator(a) {
                v_prime = Some(x);
                break;
            }
            path.push(x);
            u = self.nodes[x as usize].parent;
        }
        for &x in &path {
            self.nodes[x as usize].set_indicator(a);
        }

        let leaf = self.new_leaf(n);
        let Some(v1) = v_prime else {
            self.attach(ROOT, a, leaf);
            self.nodes[ROOT as usize].leaf_hint = n;
            return ExtensionEvent {
                new_leaf: leaf,
                new_internal: None,
                split_child: None,
                attach_parent: ROOT,
            };
        };

        // v'' = first node at or above v' with a link for a
        let mut v2 = Some(v1);
        while let Some(x) = v2 {
            if self.nodes[x as usize].link(a).is_some() {
                break;
            }
            self.walk_steps += 1;
            v2 = self.nodes[x as usize].parent;
        }

        if v2 == Some(v1) {
            let w = self.nodes[v1 as usize].link(a).unwrap();
            let key = text.at(n, self.nodes[w as usize].depth);
            debug_assert!(!self.nodes[w as usize].children.contains_key(&key));
            self.attach(w, key, leaf);
            return ExtensionEvent {
                new_leaf: leaf,
                new_internal: None,
                split_child: None,
                attach_parent: w,
            };
        }

        let w2 = match v2 {
            Some(x) => self.nodes[x as usize].link(a).unwrap(),
            None => ROOT,
        };
        let d2 = self.nodes[w2 as usize].depth;
        let child_key = text.at(n, d2);
        let c = self.nodes[w2 as usize].children[&child_key];
        let new_depth = self.nodes[v1 as usize].depth + 1;
        debug_assert!(self.nodes[c as usize].depth > new_depth);

        let w = self.nodes.len() as NodeId;
        let indicator = match self.nodes[c as usize].anchor {
            Some(k) => vec![text.at(k + 1, 0)],
            None => self.nodes[c as usize].indicator.clone(),
        };
        let c_hint = self.nodes[c as usize].leaf_hint;
        self.nodes.push(OnlineNode {
            parent: None,
            depth: new_depth,
            children: BTreeMap::new(),
            leaf_hint: n,
            anchor: None,
            links: Vec::new(),
            indicator,
        });
        self.attach(w2, child_key, w);
        let c_key = text.at(c_hint, new_depth);
        self.attach(w, c_key, c);
        let leaf_key = text.at(n, new_depth);
        debug_assert_ne!(c_key, leaf_key);
        self.attach(w, leaf_key, leaf);
        self.nodes[v1 as usize].set_link(a, w);
        ExtensionEvent {
            new_leaf: leaf,
            new_internal: Some(w),
            split_child: Some(c),
            attach_parent: w,
        }
    }

    /// Pre-order node ids, children in symbol order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![ROOT];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.nodes[v as usize].children.values().rev());
        }
        out
    }

    /// Leaf anchors in suffix order.
    pub fn suffix_order(&self) -> Vec<usize> {
        self.preorder()
            .into_iter()
            .filter_map(|v| self.nodes[v as usize].anchor)
            .collect()
    }

    /// Number of leaves below every node, indexed by node id.
    pub fn leaf_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.nodes.len()];
        for v in self.preorder().into_iter().rev() {
            let node = &self.nodes[v as usize];
            counts[v as usize] = if node.is_leaf() {
                1
            } else {
                node.children.values().map(|&c| counts[c as usize]).sum()
            };
        }
        counts
    }

    /// Node at or below which `pattern` ends, via the child maps.
    pub fn locate(&self, text: &Text, pattern: &[Symbol]) -> Option<NodeId> {
        let mut v = ROOT;
        let mut i = 0;
        while i < pattern.len() {
            let d = self.nodes[v as usize].depth;
            let &c = self.nodes[v as usize].children.get(&pattern[i])?;
            let end = self.nodes[c as usize].depth.min(pattern.len());
            for k in d + 1..end {
                if self.symbol_at(text, c, k) != pattern[k] {
                    return None;
                }
            }
            i = end;
            v = c;
        }
        Some(v)
    }

    /// Anchors of the leaves below `v`, in suffix order.
    pub fn leaves_below(&self, v: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            let node = &self.nodes[x as usize];
            if let Some(k) = node.anchor {
                out.push(k);
            }
            stack.extend(node.children.values().rev());
        }
        out
    }
}
