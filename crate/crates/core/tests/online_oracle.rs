use proptest::prelude::*;
use stray::online::{OnlineSuffixTree, ROOT};
use stray::text::Text;
use stray_oracle as oracle;

fn same_shape(text: &Text, tree: &OnlineSuffixTree) -> Result<(), TestCaseError> {
    let ranks = text.ranks();
    let naive = oracle::naive_suffix_tree(&ranks);
    let ours = tree.preorder();
    let theirs = naive.preorder();
    prop_assert_eq!(ours.len(), theirs.len());
    let counts = tree.leaf_counts();
    for (&v, w) in ours.iter().zip(theirs) {
        let node = tree.node(v);
        prop_assert_eq!(counts[v as usize], w.leaf_count());
        prop_assert_eq!(node.anchor.map(|k| text.position_of(k)), w.leaf);
        if node.anchor.is_none() {
            prop_assert_eq!(node.depth, w.depth);
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn every_prefix_state_matches_naive(ranks in prop::collection::vec(1u32..=4, 0..50)) {
        let mut text = Text::new();
        let mut tree = OnlineSuffixTree::new();
        for &r in ranks.iter().rev() {
            text.push_front(r);
            let ev = tree.extend(&text);
            prop_assert_eq!(tree.node(ev.new_leaf).anchor, Some(text.len()));
            same_shape(&text, &tree)?;
        }
    }

    #[test]
    fn suffix_order_matches_sort(ranks in prop::collection::vec(1u32..=3, 0..200)) {
        let text = Text::from_ranks(&ranks);
        let tree = OnlineSuffixTree::from_text(&text);
        let order: Vec<usize> = tree.suffix_order().iter().map(|&k| text.position_of(k)).collect();
        prop_assert_eq!(order, oracle::naive_sort_suffixes(&ranks));
    }

    #[test]
    fn locate_matches_find_all(
        ranks in prop::collection::vec(1u32..=3, 0..120),
        pattern in prop::collection::vec(1u32..=3, 0..5),
    ) {
        let text = Text::from_ranks(&ranks);
        let tree = OnlineSuffixTree::from_text(&text);
        let mut want = oracle::naive_find_all(&ranks, &pattern);
        want.sort();
        let mut got: Vec<usize> = tree
            .locate(&text, &pattern)
            .map(|v| tree.leaves_below(v))
            .unwrap_or_default()
            .iter()
            .map(|&k| text.position_of(k))
            .collect();
        got.sort();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn walks_are_amortized_linear() {
    for ranks in [
        vec![1u32; 5000],
        (0..5000).map(|i| i % 2 + 1).collect(),
        (0..5000u32)
            .map(|i| (i.wrapping_mul(2654435761u32) >> 28) % 5 + 1)
            .collect::<Vec<_>>(),
    ] {
        let text = Text::from_ranks(&ranks);
        let tree = OnlineSuffixTree::from_text(&text);
        assert!(
            tree.walk_steps() <= 4 * ranks.len() as u64 + 4,
            "{}",
            tree.walk_steps()
        );
        assert_eq!(tree.leaf_counts()[ROOT as usize], ranks.len() + 1);
    }
}
