use std::collections::HashSet;

use crate::error::{Error, Result};

/// One vertex of a [`BinaryTree`]. Child references index into the owning
/// tree's vertex array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryNode {
    pub key: Option<i64>,
    pub left: Option<usize>,
    pub right: Option<usize>,
}

/// A rooted binary tree stored as a vertex array in preorder.
///
/// Vertex 0 is the root whenever the tree is non-empty, and every child index
/// is larger than its parent's. Because the layout is canonical, derived
/// equality is structural equality (shape plus keys).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BinaryTree {
    nodes: Vec<BinaryNode>,
}

impl BinaryTree {
    pub fn empty() -> Self {
        BinaryTree { nodes: Vec::new() }
    }

    /// Builds a tree from an arbitrary vertex arena rooted at `root`.
    ///
    /// Every vertex must be reachable from the root exactly once; the result
    /// is relaid in canonical preorder.
    pub fn from_arena(nodes: Vec<BinaryNode>, root: Option<usize>) -> Result<Self> {
        let Some(root) = root else {
            if nodes.is_empty() {
                return Ok(Self::empty());
            }
            return Err(Error::invalid("vertices present but no root given"));
        };
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![root];
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            let node = nodes
                .get(v)
                .ok_or_else(|| Error::invalid(format!("child reference {v} out of range")))?;
            if seen[v] {
                return Err(Error::invalid(format!(
                    "vertex {v} has more than one parent"
                )));
            }
            seen[v] = true;
            reached += 1;
            if node.left.is_some() && node.left == node.right {
                return Err(Error::invalid(format!(
                    "vertex {v} uses the same child twice"
                )));
            }
            stack.extend(node.right);
            stack.extend(node.left);
        }
        if reached != nodes.len() {
            return Err(Error::invalid("tree has unreachable vertices"));
        }
        Ok(Self::canonical(&nodes, root))
    }

    /// Preorder relayout of a validated arena.
    fn canonical(arena: &[BinaryNode], root: usize) -> Self {
        let mut nodes: Vec<BinaryNode> = Vec::with_capacity(arena.len());
        // (old index, parent in new layout, is left child)
        let mut stack: Vec<(usize, Option<(usize, bool)>)> = vec![(root, None)];
        while let Some((old, parent)) = stack.pop() {
            let idx = nodes.len();
            nodes.push(BinaryNode {
                key: arena[old].key,
                left: None,
                right: None,
            });
            if let Some((p, is_left)) = parent {
                if is_left {
                    nodes[p].left = Some(idx);
                } else {
                    nodes[p].right = Some(idx);
                }
            }
            if let Some(r) = arena[old].right {
                stack.push((r, Some((idx, false))));
            }
            if let Some(l) = arena[old].left {
                stack.push((l, Some((idx, true))));
            }
        }
        BinaryTree { nodes }
    }

    pub fn nodes(&self) -> &[BinaryNode] {
        &self.nodes
    }

    pub fn root(&self) -> Option<usize> {
        (!self.nodes.is_empty()).then_some(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Edge count of the longest root-to-leaf path; `-1` for the empty tree.
    pub fn height(&self) -> isize {
        let mut depth = vec![0usize; self.nodes.len()];
        let mut height = -1isize;
        for (i, node) in self.nodes.iter().enumerate() {
            height = height.max(depth[i] as isize);
            for c in [node.left, node.right].into_iter().flatten() {
                depth[c] = depth[i] + 1;
            }
        }
        height
    }

    /// `i(v)` for every vertex, indexed like [`Self::nodes`] (so preorder).
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.nodes.len()];
        for i in (0..self.nodes.len()).rev() {
            let node = &self.nodes[i];
            for c in [node.left, node.right].into_iter().flatten() {
                size[i] += size[c];
            }
        }
        size
    }

    pub fn preorder_keys(&self) -> Vec<Option<i64>> {
        self.nodes.iter().map(|n| n.key).collect()
    }

    /// Keys in symmetric order.
    pub fn inorder_keys(&self) -> Vec<Option<i64>> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = Vec::new();
        let mut cur = self.root();
        while cur.is_some() || !stack.is_empty() {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.nodes[v].left;
            }
            let v = stack.pop().expect("non-empty stack");
            out.push(self.nodes[v].key);
            cur = self.nodes[v].right;
        }
        out
    }

    /// `true` when every vertex carries a key and keys increase in symmetric
    /// order, which is the search-tree ordering property.
    pub fn is_search_tree(&self) -> bool {
        let keys = self.inorder_keys();
        keys.iter().all(Option::is_some) && keys.windows(2).all(|w| w[0] < w[1])
    }
}

/// Binary search tree of a sequence of distinct keys: the first entry is the
/// root, smaller entries form the left subtree and larger ones the right,
/// each recursively in their original order.
pub fn permutation_to_bst(perm: &[i64]) -> Result<BinaryTree> {
    let mut seen = HashSet::with_capacity(perm.len());
    if let Some(dup) = perm.iter().find(|&&k| !seen.insert(k)) {
        return Err(Error::invalid(format!(
            "duplicate entry {dup} in permutation"
        )));
    }
    // Sequential insertion yields the same tree as the recursive split.
    let mut arena: Vec<BinaryNode> = Vec::with_capacity(perm.len());
    for &key in perm {
        let idx = arena.len();
        arena.push(BinaryNode {
            key: Some(key),
            left: None,
            right: None,
        });
        if idx == 0 {
            continue;
        }
        let mut v = 0;
        loop {
            let here = arena[v].key.expect("keys present");
            let slot = if key < here {
                &mut arena[v].left
            } else {
                &mut arena[v].right
            };
            match *slot {
                Some(next) => v = next,
                None => {
                    *slot = Some(idx);
                    break;
                }
            }
        }
    }
    if arena.is_empty() {
        return Ok(BinaryTree::empty());
    }
    Ok(BinaryTree::canonical(&arena, 0))
}
