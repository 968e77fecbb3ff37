use num_bigint::BigUint;
use num_traits::One;

use super::FullBinaryTree;
use crate::error::{Error, Result};

/// Default cap on the ruler length accepted by [`enumerate_full_trees`];
/// Catalan(13) = 742 900 scenarios.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 14;

/// Catalan number `C(k) = binom(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> BigUint {
    // C(i+1) = C(i) * 2(2i+1) / (i+2), exact at every step
    (0..k).fold(BigUint::one(), |c, i| c * (2 * (2 * i + 1)) / (i + 2))
}

/// Every breaking scenario of the ruler `[0, n]`, `Catalan(n - 1)` trees.
///
/// The order is deterministic: first break at inchmark 1, 2, .., n-1, then
/// all left sub-scenarios, then all right sub-scenarios, recursively.
pub fn enumerate_full_trees(n: usize) -> Result<Vec<FullBinaryTree>> {
    enumerate_full_trees_capped(n, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_full_trees_capped(n: usize, limit: usize) -> Result<Vec<FullBinaryTree>> {
    if n == 0 {
        return Err(Error::invalid("ruler length must be positive"));
    }
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "scenario enumeration",
            n,
            limit,
        });
    }
    // by_len[k] holds all scenarios of [0, k]; shifted copies fill other offsets.
    let mut by_len: Vec<Vec<FullBinaryTree>> =
        vec![Vec::new(), vec![FullBinaryTree::single_leaf(0)]];
    for len in 2..=n as u32 {
        let mut out = Vec::new();
        for k in 1..len {
            let right: Vec<FullBinaryTree> = by_len[(len - k) as usize]
                .iter()
                .map(|t| shifted(t, k))
                .collect();
            for l in &by_len[k as usize] {
                for r in &right {
                    out.push(FullBinaryTree::join(l, r).expect("adjacent by construction"));
                }
            }
        }
        by_len.push(out);
    }
    Ok(by_len.swap_remove(n))
}

fn shifted(tree: &FullBinaryTree, offset: u32) -> FullBinaryTree {
    let nodes: Vec<_> = tree
        .nodes()
        .iter()
        .map(|n| super::FullNode {
            start: n.start + offset,
            end: n.end + offset,
            ..*n
        })
        .collect();
    FullBinaryTree::from_arena(&nodes, 0).expect("shift keeps structure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn catalan_values() {
        let got: Vec<u64> = (0..10).map(|k| catalan(k).try_into().unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_full_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_full_trees(2).unwrap().len(), 1);
        assert_eq!(enumerate_full_trees(5).unwrap().len(), 14);
        assert_eq!(enumerate_full_trees(6).unwrap().len(), 42);
    }

    #[test]
    fn no_duplicates_and_full_ruler() {
        let trees = enumerate_full_trees(7).unwrap();
        let distinct: HashSet<_> = trees.iter().collect();
        assert_eq!(distinct.len(), trees.len());
        for t in &trees {
            assert_eq!((t.root_node().start, t.root_node().end), (0, 7));
        }
    }

    #[test]
    fn order_starts_with_leftmost_split() {
        let trees = enumerate_full_trees(4).unwrap();
        let splits: Vec<Vec<u32>> = trees.iter().map(FullBinaryTree::split_points).collect();
        assert_eq!(
            splits,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![3, 1, 2],
                vec![3, 2, 1],
            ]
        );
    }

    #[test]
    fn limits() {
        assert!(matches!(
            enumerate_full_trees(0),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            enumerate_full_trees(15),
            Err(Error::ResourceLimit { limit: 14, .. })
        ));
        assert!(enumerate_full_trees_capped(6, 5).is_err());
    }
}
