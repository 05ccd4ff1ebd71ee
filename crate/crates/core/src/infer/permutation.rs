use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MultiGraph, NodeId};

/// Arrival order of observed nodes: `order[pos]` is the label of the node that
/// arrived at position `pos` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<NodeId>", into = "Vec<NodeId>")]
pub struct Permutation {
    order: Vec<NodeId>,
    position: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn from_order(order: Vec<NodeId>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (pos, &label) in order.iter().enumerate() {
            if label >= n {
                return Err(Error::NotBijective(format!(
                    "label {label} out of range for {n} nodes"
                )));
            }
            if position[label] != usize::MAX {
                return Err(Error::NotBijective(format!("label {label} appears twice")));
            }
            position[label] = pos;
        }
        Ok(Permutation { order, position })
    }

    /// Hubs first: labels sorted by descending degree, ties by label.
    pub fn by_descending_degree(g: &MultiGraph) -> Self {
        let mut order: Vec<NodeId> = (0..g.node_count()).collect();
        order.sort_by(|&u, &w| g.degree(w).cmp(&g.degree(u)).then(u.cmp(&w)));
        Self::from_order(order).expect("sorted labels form a bijection")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn label_at(&self, pos: usize) -> NodeId {
        self.order[pos]
    }

    pub fn position_of(&self, label: NodeId) -> usize {
        self.position[label]
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    /// Exchanges the labels that arrive at positions `i` and `j`.
    pub fn swap_positions(&mut self, i: usize, j: usize) {
        self.order.swap(i, j);
        self.position[self.order[i]] = i;
        self.position[self.order[j]] = j;
    }

    pub fn inverse(&self) -> Self {
        Permutation {
            order: self.position.clone(),
            position: self.order.clone(),
        }
    }

    /// `self` after `other`: position `p` maps to `other.label_at(self.label_at(p))`.
    pub fn then(&self, other: &Permutation) -> Self {
        let order = self.order.iter().map(|&l| other.label_at(l)).collect();
        Self::from_order(order).expect("composition of bijections")
    }
}

impl TryFrom<Vec<NodeId>> for Permutation {
    type Error = Error;

    fn try_from(order: Vec<NodeId>) -> Result<Self> {
        Self::from_order(order)
    }
}

impl From<Permutation> for Vec<NodeId> {
    fn from(p: Permutation) -> Self {
        p.order
    }
}
