//! Predecessor tables and explicit path reconstruction.

use crate::apsp::{UnitSolution, NO_ARG};
use crate::graph::{ArcKind, NegativeTree};
use crate::matrix::PredecessorMatrix;
use crate::tree::TreeDistanceTable;
use crate::witness::Walk;

const NONE: u32 = u32::MAX;

/// `pi_T(s, t)` over the local indices of one negative tree: the neighbour of
/// `t` on the tree path from `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePredecessors {
    size: usize,
    pred: Vec<u32>,
}

impl TreePredecessors {
    pub fn local(&self, from: usize, to: usize) -> Option<usize> {
        match self.pred[from * self.size + to] {
            NONE => None,
            p => Some(p as usize),
        }
    }

    /// Predecessor by vertex id.
    pub fn between(&self, tree: &NegativeTree, from: usize, to: usize) -> Option<usize> {
        let p = self.local(tree.local_index(from)?, tree.local_index(to)?)?;
        Some(tree.vertex(p))
    }
}

/// Same top-down sweep as the distance fill: a new vertex `v` with parent `u`
/// gets `pi(x, v) = u` and `pi(v, x) = pi(u, x)` (or `v` when `x = u`).
pub fn predecessors_tree(tree: &NegativeTree) -> TreePredecessors {
    let k = tree.len();
    let mut pred = vec![NONE; k * k];
    for v in 1..k {
        let u = tree.link(v).expect("non-root vertex without parent").parent;
        for x in 0..v {
            pred[x * k + v] = u as u32;
            pred[v * k + x] = if x == u { v as u32 } else { pred[u * k + x] };
        }
    }
    TreePredecessors { size: k, pred }
}

/// Walk along the unique tree path `from -> to` (vertex ids).
pub(crate) fn tree_walk(
    tree: &NegativeTree,
    table: &TreeDistanceTable,
    preds: &TreePredecessors,
    from: usize,
    to: usize,
) -> Walk {
    let lf = tree.local_index(from).expect("walk start outside tree");
    let mut cur = tree.local_index(to).expect("walk end outside tree");
    let mut rev = vec![cur];
    while cur != lf {
        cur = preds.local(lf, cur).expect("tree predecessor chain broken");
        rev.push(cur);
    }
    rev.reverse();
    let mut walk = Walk::start(from);
    for pair in rev.windows(2) {
        walk.push(tree.vertex(pair[1]), ArcKind::Special, table.local(pair[0], pair[1]));
    }
    walk
}

/// One arc of a reported path. Loose arcs carry the special arc they mirror
/// (`mirrors = (head, tail)` of the loose arc).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathArc {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
    pub kind: ArcKind,
    pub mirrors: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub arcs: Vec<PathArc>,
    pub length: i64,
}

impl Path {
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertices.iter().all(|v| seen.insert(*v))
    }
}

impl From<Walk> for Path {
    fn from(walk: Walk) -> Self {
        let arcs = walk
            .vertices
            .windows(2)
            .zip(&walk.steps)
            .map(|(pair, &(kind, weight))| PathArc {
                tail: pair[0],
                head: pair[1],
                weight,
                kind,
                mirrors: (kind == ArcKind::Loose).then_some((pair[1], pair[0])),
            })
            .collect();
        let length = walk.length();
        Path { vertices: walk.vertices, arcs, length }
    }
}

/// Predecessors of subset layer `mask` of a unit by the composition rule:
/// argmin `d_0` gives `pi_0(s, t)`; otherwise with argmin `(i, u, v)`,
/// `v != t` gives `pi_{J-i}(v, t)`, `v = t != u` gives `pi_{T_i}(u, t)`, and
/// `u = v = t` gives `pi_0(s, t)`.
///
/// This is the last-but-one vertex of the raw argmin walk. The reported
/// predecessor ([`UnitSolution::predecessor`]) is taken from the loop-free
/// path instead; the two differ only if the raw walk meets `t` early.
pub fn predecessors_dp(unit: &UnitSolution, mask: usize) -> Option<PredecessorMatrix> {
    let n = unit.n();
    let layers = unit.layers()?;
    let mut out = PredecessorMatrix::new(n);
    for s in 0..n {
        for t in 0..n {
            out.set(s, t, rule(unit, layers, mask, s, t));
        }
    }
    Some(out)
}

fn rule(
    unit: &UnitSolution,
    layers: &crate::apsp::SubsetTables,
    mask: usize,
    s: usize,
    t: usize,
) -> Option<usize> {
    if s == t || layers.distances(mask).get(s, t).is_none() {
        return None;
    }
    let fw = unit.floyd_warshall().expect("subset layers without Floyd-Warshall");
    let arg = layers.argmin(mask, s, t);
    if arg == NO_ARG {
        return fw.predecessors().get(s, t);
    }
    let (u, v) = crate::apsp::unpack(arg);
    let i = unit.forest().tree_of(u).expect("argmin vertex outside trees");
    if v != t {
        rule(unit, layers, mask & !(1 << i), v, t)
    } else if u != v {
        unit.tree_predecessors()[i].between(&unit.forest().trees()[i], u, t)
    } else {
        fw.predecessors().get(s, t)
    }
}
