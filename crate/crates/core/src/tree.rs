//! Pairwise path lengths inside one negative tree.

use crate::graph::NegativeTree;

/// `d^T` over the local indices of one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDistanceTable {
    tree: usize,
    size: usize,
    dist: Vec<i64>,
}

impl TreeDistanceTable {
    pub fn tree_index(&self) -> usize {
        self.tree
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Length of the tree path between two local indices.
    #[inline]
    pub fn local(&self, from: usize, to: usize) -> i64 {
        self.dist[from * self.size + to]
    }

    /// Length of the tree path `from -> to`, by vertex id.
    pub fn between(&self, tree: &NegativeTree, from: usize, to: usize) -> Option<i64> {
        Some(self.local(tree.local_index(from)?, tree.local_index(to)?))
    }
}

/// Fills `d^T` top-down in BFS order: when `v` with parent `u` is processed,
/// `d(v, x) = c(vu) + d(u, x)` and `d(x, v) = d(x, u) + c(uv)` for every
/// processed `x`. Quadratic in the tree size.
pub fn tree_distances(tree_index: usize, tree: &NegativeTree) -> TreeDistanceTable {
    let k = tree.len();
    let mut dist = vec![0i64; k * k];
    for v in 1..k {
        let link = tree.link(v).expect("non-root vertex without parent");
        let u = link.parent;
        for x in 0..v {
            dist[v * k + x] = link.up + dist[u * k + x];
            dist[x * k + v] = dist[x * k + u] + link.down;
        }
    }
    TreeDistanceTable { tree: tree_index, size: k, dist }
}
