use crate::error::{Error, Result};

/// One vertex of a [`FullBinaryTree`].
///
/// Every vertex owns the ruler interval `[start, end]` it covers. For a leaf
/// this is a unit stick; for an internal vertex the two children split it at
/// an interior inchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FullNode {
    pub start: u32,
    pub end: u32,
    pub children: Option<(usize, usize)>,
}

impl FullNode {
    pub fn leaf(start: u32) -> Self {
        FullNode {
            start,
            end: start + 1,
            children: None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// Number of leaves beneath this vertex.
    pub fn label(&self) -> u32 {
        self.end - self.start
    }
}

/// A breaking scenario: full binary tree whose leaves are the unit sticks of
/// a ruler, stored in preorder with vertex 0 as root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullBinaryTree {
    nodes: Vec<FullNode>,
}

impl FullBinaryTree {
    /// The single-leaf tree of a one-inch ruler `[start, start + 1]`.
    pub fn single_leaf(start: u32) -> Self {
        FullBinaryTree {
            nodes: vec![FullNode::leaf(start)],
        }
    }

    /// Joins two scenarios whose rulers are adjacent (`left` ends where
    /// `right` starts).
    pub fn join(left: &FullBinaryTree, right: &FullBinaryTree) -> Result<Self> {
        let (l, r) = (left.root_node(), right.root_node());
        if l.end != r.start {
            return Err(Error::invalid(format!(
                "intervals [{},{}] and [{},{}] are not adjacent",
                l.start, l.end, r.start, r.end
            )));
        }
        let mut nodes = Vec::with_capacity(1 + left.len() + right.len());
        let left_off = 1;
        let right_off = 1 + left.len();
        nodes.push(FullNode {
            start: l.start,
            end: r.end,
            children: Some((left_off, right_off)),
        });
        let shift = |node: &FullNode, off: usize| FullNode {
            children: node.children.map(|(a, b)| (a + off, b + off)),
            ..*node
        };
        nodes.extend(left.nodes.iter().map(|n| shift(n, left_off)));
        nodes.extend(right.nodes.iter().map(|n| shift(n, right_off)));
        Ok(FullBinaryTree { nodes })
    }

    /// Validates an arena of vertices rooted at `root` and relays it in
    /// preorder. Children must partition their parent's interval at an
    /// interior inchmark.
    pub fn from_arena(arena: &[FullNode], root: usize) -> Result<Self> {
        let mut seen = vec![false; arena.len()];
        let mut nodes = Vec::with_capacity(arena.len());
        let mut stack: Vec<(usize, Option<(usize, bool)>)> = vec![(root, None)];
        while let Some((old, parent)) = stack.pop() {
            let node = *arena
                .get(old)
                .ok_or_else(|| Error::invalid(format!("child reference {old} out of range")))?;
            if std::mem::replace(&mut seen[old], true) {
                return Err(Error::invalid(format!(
                    "vertex {old} has more than one parent"
                )));
            }
            if node.end <= node.start {
                return Err(Error::invalid(format!(
                    "empty interval [{},{}]",
                    node.start, node.end
                )));
            }
            match node.children {
                None if node.label() != 1 => {
                    return Err(Error::invalid(format!(
                        "leaf covers [{},{}] instead of a unit stick",
                        node.start, node.end
                    )))
                }
                Some((a, b)) => {
                    let (ca, cb) = match (arena.get(a), arena.get(b)) {
                        (Some(ca), Some(cb)) => (ca, cb),
                        _ => return Err(Error::invalid("child reference out of range")),
                    };
                    if ca.start != node.start || cb.end != node.end || ca.end != cb.start {
                        return Err(Error::invalid(format!(
                            "children do not split [{},{}] at an inchmark",
                            node.start, node.end
                        )));
                    }
                }
                None => {}
            }
            let idx = nodes.len();
            nodes.push(FullNode {
                children: None,
                ..node
            });
            if let Some((p, is_left)) = parent {
                let slot: &mut FullNode = &mut nodes[p];
                let (l, r) = slot.children.get_or_insert((usize::MAX, usize::MAX));
                if is_left {
                    *l = idx;
                } else {
                    *r = idx;
                }
            }
            if let Some((a, b)) = node.children {
                stack.push((b, Some((idx, false))));
                stack.push((a, Some((idx, true))));
            }
        }
        if nodes.len() != arena.len() {
            return Err(Error::invalid("tree has unreachable vertices"));
        }
        Ok(FullBinaryTree { nodes })
    }

    pub fn nodes(&self) -> &[FullNode] {
        &self.nodes
    }

    pub fn root_node(&self) -> &FullNode {
        &self.nodes[0]
    }

    /// Total vertex count.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leaf_count(&self) -> usize {
        self.root_node().label() as usize
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.iter().filter(|n| !n.is_leaf()).count()
    }

    /// Labels of the internal vertices in preorder.
    pub fn internal_labels(&self) -> Vec<u32> {
        self.nodes
            .iter()
            .filter(|n| !n.is_leaf())
            .map(FullNode::label)
            .collect()
    }

    /// Break positions of the internal vertices in preorder.
    pub fn split_points(&self) -> Vec<u32> {
        self.nodes
            .iter()
            .filter_map(|n| n.children.map(|(l, _)| self.nodes[l].end))
            .collect()
    }

    /// Edge count of the longest root-to-leaf path, i.e. the number of throws.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        let mut height = 0;
        for (i, node) in self.nodes.iter().enumerate() {
            height = height.max(depth[i]);
            if let Some((a, b)) = node.children {
                depth[a] = depth[i] + 1;
                depth[b] = depth[i] + 1;
            }
        }
        height
    }

    /// Depth of each leaf, ordered left to right along the ruler. Entry `j-1`
    /// is the throw on which stick `j` is isolated.
    pub fn leaf_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.nodes.len()];
        let mut out = Vec::with_capacity(self.leaf_count());
        for (i, node) in self.nodes.iter().enumerate() {
            match node.children {
                Some((a, b)) => {
                    depth[a] = depth[i] + 1;
                    depth[b] = depth[i] + 1;
                }
                // preorder visits leaves left to right
                None => out.push(depth[i]),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caterpillar4() -> FullBinaryTree {
        // [0,4] -> [0,1] + [1,4] -> [1,2] + [2,4] -> ...
        let l = FullBinaryTree::single_leaf;
        let t23 = FullBinaryTree::join(&l(2), &l(3)).unwrap();
        let t13 = FullBinaryTree::join(&l(1), &t23).unwrap();
        FullBinaryTree::join(&l(0), &t13).unwrap()
    }

    #[test]
    fn caterpillar_shape() {
        let t = caterpillar4();
        assert_eq!(t.height(), 3);
        assert_eq!(t.internal_labels(), vec![4, 3, 2]);
        assert_eq!(t.split_points(), vec![1, 2, 3]);
        assert_eq!(t.leaf_count(), 4);
        assert_eq!(t.internal_count(), 3);
        assert_eq!(t.leaf_depths(), vec![1, 2, 3, 3]);
    }

    #[test]
    fn single_leaf_height_zero() {
        let t = FullBinaryTree::single_leaf(0);
        assert_eq!(t.height(), 0);
        assert!(t.internal_labels().is_empty());
    }

    #[test]
    fn join_requires_adjacent_rulers() {
        let a = FullBinaryTree::single_leaf(0);
        let b = FullBinaryTree::single_leaf(2);
        assert!(FullBinaryTree::join(&a, &b).is_err());
    }

    #[test]
    fn arena_roundtrip_and_rejections() {
        let t = caterpillar4();
        assert_eq!(FullBinaryTree::from_arena(t.nodes(), 0).unwrap(), t);

        let bad_split = [
            FullNode {
                start: 0,
                end: 3,
                children: Some((1, 2)),
            },
            FullNode::leaf(0),
            FullNode::leaf(2),
        ];
        assert!(FullBinaryTree::from_arena(&bad_split, 0).is_err());

        let fat_leaf = [FullNode {
            start: 0,
            end: 2,
            children: None,
        }];
        assert!(FullBinaryTree::from_arena(&fat_leaf, 0).is_err());
    }
}
