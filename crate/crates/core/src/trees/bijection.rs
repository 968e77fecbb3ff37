//! Leaf removal / leaf padding between full binary trees with `n` leaves and
//! binary trees with `n - 1` vertices.

use super::{BinaryNode, BinaryTree, FullBinaryTree, FullNode};

/// Removes every leaf. Each internal vertex becomes a binary-tree vertex
/// keyed by its break position, so scenarios on `[0, n]` map to search trees
/// on `{1, .., n-1}`. A single leaf maps to the empty tree.
pub fn full_to_binary(tree: &FullBinaryTree) -> BinaryTree {
    let nodes = tree.nodes();
    // Preorder restricted to the internal vertices is still a preorder.
    let mut index = vec![usize::MAX; nodes.len()];
    let mut next = 0;
    for (i, node) in nodes.iter().enumerate() {
        if !node.is_leaf() {
            index[i] = next;
            next += 1;
        }
    }
    let child = |c: usize| (!nodes[c].is_leaf()).then(|| index[c]);
    let arena: Vec<BinaryNode> = nodes
        .iter()
        .filter_map(|node| {
            node.children.map(|(l, r)| BinaryNode {
                key: Some(i64::from(nodes[l].end)),
                left: child(l),
                right: child(r),
            })
        })
        .collect();
    let root = (!arena.is_empty()).then_some(0);
    BinaryTree::from_arena(arena, root).expect("leaf removal preserves tree structure")
}

/// Pads every missing child with a leaf. The resulting scenario covers the
/// ruler `[0, len + 1]`; keys are not carried over.
pub fn binary_to_full(tree: &BinaryTree) -> FullBinaryTree {
    let src = tree.nodes();
    let sizes = tree.subtree_sizes();
    let leaves_under = |v: Option<usize>| v.map_or(1, |v| sizes[v] + 1) as u32;

    let mut nodes: Vec<FullNode> = Vec::with_capacity(2 * src.len() + 1);
    // (source vertex or padding leaf, interval start, parent slot)
    type Pending = (Option<usize>, u32, Option<(usize, bool)>);
    let mut stack: Vec<Pending> = vec![(tree.root(), 0, None)];
    while let Some((v, start, parent)) = stack.pop() {
        let idx = nodes.len();
        nodes.push(FullNode {
            start,
            end: start + leaves_under(v),
            children: None,
        });
        if let Some((p, is_left)) = parent {
            let (l, r) = nodes[p].children.get_or_insert((usize::MAX, usize::MAX));
            if is_left {
                *l = idx;
            } else {
                *r = idx;
            }
        }
        if let Some(v) = v {
            let (left, right) = (src[v].left, src[v].right);
            let mid = start + leaves_under(left);
            stack.push((right, mid, Some((idx, false))));
            stack.push((left, start, Some((idx, true))));
        }
    }
    FullBinaryTree::from_arena(&nodes, 0).expect("padding yields a full tree")
}
