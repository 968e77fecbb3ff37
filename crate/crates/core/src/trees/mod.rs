//! Breaking scenarios as full binary trees, binary search trees, and the
//! leaf-removal correspondence between them.

mod bijection;
mod binary;
mod enumerate;
mod full;
pub mod json;
mod probability;

pub use bijection::{binary_to_full, full_to_binary};
pub use binary::{permutation_to_bst, BinaryNode, BinaryTree};
pub use enumerate::{
    catalan, enumerate_full_trees, enumerate_full_trees_capped, DEFAULT_ENUMERATION_LIMIT,
};
pub use full::{FullBinaryTree, FullNode};
pub use probability::{bst_probability, scenario_probability, Probability};
