//! Compact JSON forms of the tree types.
//!
//! Full trees: `{"leaf":[a,b]}` or `{"label":k,"left":..,"right":..}`.
//! Binary trees: `{"key":k,"left":..,"right":..}` with `null` for a missing
//! child; the empty tree is `null`.

use serde_json::{json, Map, Value};

use super::{BinaryNode, BinaryTree, FullBinaryTree, FullNode};
use crate::error::{Error, Result};

pub fn full_tree_to_json(tree: &FullBinaryTree) -> Value {
    fn go(nodes: &[FullNode], v: usize) -> Value {
        let node = &nodes[v];
        match node.children {
            None => json!({ "leaf": [node.start, node.end] }),
            Some((l, r)) => json!({
                "label": node.label(),
                "left": go(nodes, l),
                "right": go(nodes, r),
            }),
        }
    }
    go(tree.nodes(), 0)
}

pub fn full_tree_from_json(value: &Value) -> Result<FullBinaryTree> {
    fn go(value: &Value, arena: &mut Vec<FullNode>) -> Result<usize> {
        let obj = as_object(value)?;
        if let Some(leaf) = obj.get("leaf") {
            let ends = leaf
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_u64()?, a[1].as_u64()?)))
                .ok_or_else(|| Error::invalid("\"leaf\" must be a pair of inchmarks"))?;
            let (start, end) = (to_u32(ends.0)?, to_u32(ends.1)?);
            arena.push(FullNode {
                start,
                end,
                children: None,
            });
            return Ok(arena.len() - 1);
        }
        let (Some(left), Some(right)) = (obj.get("left"), obj.get("right")) else {
            return Err(Error::invalid(
                "internal vertex needs both \"left\" and \"right\"",
            ));
        };
        let idx = arena.len();
        arena.push(FullNode::leaf(0));
        let l = go(left, arena)?;
        let r = go(right, arena)?;
        let (start, end) = (arena[l].start, arena[r].end);
        if let Some(label) = obj.get("label") {
            if label.as_u64() != Some(u64::from(end.saturating_sub(start))) {
                return Err(Error::invalid(format!(
                    "label {label} does not match the {} leaves beneath",
                    end.saturating_sub(start)
                )));
            }
        }
        arena[idx] = FullNode {
            start,
            end,
            children: Some((l, r)),
        };
        Ok(idx)
    }
    let mut arena = Vec::new();
    let root = go(value, &mut arena)?;
    FullBinaryTree::from_arena(&arena, root)
}

pub fn binary_tree_to_json(tree: &BinaryTree) -> Value {
    fn go(nodes: &[BinaryNode], v: Option<usize>) -> Value {
        match v {
            None => Value::Null,
            Some(v) => json!({
                "key": nodes[v].key,
                "left": go(nodes, nodes[v].left),
                "right": go(nodes, nodes[v].right),
            }),
        }
    }
    go(tree.nodes(), tree.root())
}

pub fn binary_tree_from_json(value: &Value) -> Result<BinaryTree> {
    fn go(value: &Value, arena: &mut Vec<BinaryNode>) -> Result<Option<usize>> {
        if value.is_null() {
            return Ok(None);
        }
        let obj = as_object(value)?;
        let key = match obj.get("key") {
            None | Some(Value::Null) => None,
            Some(k) => Some(
                k.as_i64()
                    .ok_or_else(|| Error::invalid("\"key\" must be an integer"))?,
            ),
        };
        let idx = arena.len();
        arena.push(BinaryNode {
            key,
            left: None,
            right: None,
        });
        let left = go(obj.get("left").unwrap_or(&Value::Null), arena)?;
        let right = go(obj.get("right").unwrap_or(&Value::Null), arena)?;
        arena[idx].left = left;
        arena[idx].right = right;
        Ok(Some(idx))
    }
    let mut arena = Vec::new();
    let root = go(value, &mut arena)?;
    BinaryTree::from_arena(arena, root)
}

fn as_object(value: &Value) -> Result<&Map<String, Value>> {
    value
        .as_object()
        .ok_or_else(|| Error::invalid(format!("expected a JSON object, found {value}")))
}

fn to_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::invalid(format!("inchmark {x} out of range")))
}
