//! Naive reference implementations.
//!
//! Everything here works on a plain forward symbol slice *without* a
//! terminator. Suffixes are compared with Rust's slice ordering, so a suffix
//! that is a proper prefix of another sorts first; that is the same as an
//! implicit terminator smaller than every symbol. Positions are 1-based and
//! the empty suffix lives at position `n + 1`.
//!
//! None of this shares code with the `stray` crate. Keep it that way.

use std::cmp::Ordering;
use std::collections::BTreeMap;

/// Suffix start positions (1-based, including the empty suffix `n + 1`) in
/// lexicographic order.
pub fn naive_sort_suffixes(text: &[u32]) -> Vec<usize> {
    let n = text.len();
    let mut order: Vec<usize> = (0..=n).collect();
    order.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    order.into_iter().map(|i| i + 1).collect()
}

/// Compare the suffixes starting at 1-based positions `i` and `j`.
pub fn naive_compare(text: &[u32], i: usize, j: usize) -> Ordering {
    text[i - 1..].cmp(&text[j - 1..])
}

pub fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// `lcp[k]` = common prefix of the suffixes at `order[k - 1]` and `order[k]`;
/// `lcp[0]` is 0.
pub fn naive_lcp(text: &[u32], order: &[usize]) -> Vec<usize> {
    let mut lcp = vec![0; order.len()];
    for k in 1..order.len() {
        lcp[k] = common_prefix(&text[order[k - 1] - 1..], &text[order[k] - 1..]);
    }
    lcp
}

/// Every 1-based position where `pattern` starts. The empty pattern matches
/// all `n + 1` positions.
pub fn naive_find_all(text: &[u32], pattern: &[u32]) -> Vec<usize> {
    let n = text.len();
    let m = pattern.len();
    if m == 0 {
        return (1..=n + 1).collect();
    }
    if m > n {
        return Vec::new();
    }
    (0..=n - m)
        .filter(|&i| &text[i..i + m] == pattern)
        .map(|i| i + 1)
        .collect()
}

/// A node of the naive compacted suffix trie. The terminator is modelled as
/// `None`, which sorts before every real symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaiveNode {
    /// Length of the path label, counting the terminator for leaves.
    pub depth: usize,
    /// 1-based start position for leaves.
    pub leaf: Option<usize>,
    /// Children ordered by the first symbol of their edge.
    pub children: Vec<NaiveNode>,
}

impl NaiveNode {
    pub fn leaf_count(&self) -> usize {
        if self.leaf.is_some() {
            1
        } else {
            self.children.iter().map(NaiveNode::leaf_count).sum()
        }
    }

    /// Leaf positions in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        if let Some(p) = self.leaf {
            out.push(p);
        }
        for c in &self.children {
            c.collect_leaves(out);
        }
    }

    /// Pre-order walk.
    pub fn preorder(&self) -> Vec<&NaiveNode> {
        let mut out = vec![self];
        let mut stack: Vec<&NaiveNode> = self.children.iter().rev().collect();
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }
}

#[derive(Default)]
struct Trie {
    children: BTreeMap<Option<u32>, Trie>,
    leaf: Option<usize>,
}

/// Builds the suffix tree by inserting every suffix (plus terminator) into an
/// uncompacted trie and then compacting unary paths. Quadratic; small inputs
/// only.
pub fn naive_suffix_tree(text: &[u32]) -> NaiveNode {
    let n = text.len();
    let mut root = Trie::default();
    for start in 0..=n {
        let mut cur = &mut root;
        for &s in &text[start..] {
            cur = cur.children.entry(Some(s)).or_default();
        }
        cur = cur.children.entry(None).or_default();
        cur.leaf = Some(start + 1);
    }
    compact(&root, 0, true)
}

fn compact(t: &Trie, depth: usize, is_root: bool) -> NaiveNode {
    let mut node = t;
    let mut depth = depth;
    if !is_root {
        while node.leaf.is_none() && node.children.len() == 1 {
            node = node.children.values().next().unwrap();
            depth += 1;
        }
    }
    NaiveNode {
        depth,
        leaf: node.leaf,
        children: node
            .children
            .values()
            .map(|c| compact(c, depth + 1, false))
            .collect(),
    }
}

/// Classification computed from scratch by recounting leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NaiveClass {
    NotSigma,
    SigmaLeaf,
    /// Separator symbol; `None` is the terminator.
    SigmaNonBranching(Option<u32>),
    SigmaBranching,
}

/// Classes for every node of `naive_suffix_tree(text)`, in pre-order.
pub fn naive_classify(text: &[u32], sigma: usize) -> Vec<NaiveClass> {
    let tree = naive_suffix_tree(text);
    let mut out = Vec::new();
    classify_rec(text, &tree, sigma, &mut out);
    out
}

fn classify_rec(text: &[u32], node: &NaiveNode, sigma: usize, out: &mut Vec<NaiveClass>) {
    let is_sigma = |n: &NaiveNode| n.leaf_count() >= sigma;
    let class = if !is_sigma(node) {
        NaiveClass::NotSigma
    } else {
        let sigma_children: Vec<&NaiveNode> =
            node.children.iter().filter(|c| is_sigma(c)).collect();
        match sigma_children.len() {
            0 => NaiveClass::SigmaLeaf,
            1 => {
                let c = sigma_children[0];
                let start = c.leaves()[0] - 1;
                NaiveClass::SigmaNonBranching(text.get(start + node.depth).copied())
            }
            _ => NaiveClass::SigmaBranching,
        }
    };
    out.push(class);
    for c in &node.children {
        classify_rec(text, c, sigma, out);
    }
}

/// Leaf ranges (0-based, inclusive, over lexicographic order) that a tray
/// would store as suffix intervals for threshold `sigma`.
pub fn naive_tray_intervals(text: &[u32], sigma: usize) -> Vec<(usize, usize)> {
    let tree = naive_suffix_tree(text);
    let mut out = Vec::new();
    let mut next = 0;
    if tree.leaf_count() < sigma {
        return vec![(0, tree.leaf_count() - 1)];
    }
    intervals_rec(&tree, sigma, &mut next, &mut out);
    out
}

fn intervals_rec(node: &NaiveNode, sigma: usize, next: &mut usize, out: &mut Vec<(usize, usize)>) {
    let is_sigma = |n: &NaiveNode| n.leaf_count() >= sigma;
    if !node.children.iter().any(&is_sigma) {
        let k = node.leaf_count();
        out.push((*next, *next + k - 1));
        *next += k;
        return;
    }
    let mut run = 0;
    for c in &node.children {
        if is_sigma(c) {
            if run > 0 {
                out.push((*next, *next + run - 1));
                *next += run;
                run = 0;
            }
            intervals_rec(c, sigma, next, out);
        } else {
            run += c.leaf_count();
        }
    }
    if run > 0 {
        out.push((*next, *next + run - 1));
        *next += run;
    }
}
