//! Certificates of non-near-conservativeness and the walk type they are
//! extracted from.

use crate::graph::{ArcKind, WeightedDigraph};

/// Walk as a vertex sequence plus the arc used for each step.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub steps: Vec<(ArcKind, i64)>,
}

impl Walk {
    pub fn start(v: usize) -> Self {
        Walk { vertices: vec![v], steps: Vec::new() }
    }

    pub fn last(&self) -> usize {
        *self.vertices.last().expect("empty walk")
    }

    pub fn push(&mut self, head: usize, kind: ArcKind, weight: i64) {
        self.vertices.push(head);
        self.steps.push((kind, weight));
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: &Walk) {
        debug_assert_eq!(self.last(), other.vertices[0]);
        self.vertices.extend_from_slice(&other.vertices[1..]);
        self.steps.extend_from_slice(&other.steps);
    }

    pub fn length(&self) -> i64 {
        self.steps.iter().map(|s| s.1).sum()
    }

    pub fn arc_count(&self) -> usize {
        self.steps.len()
    }

    pub fn map_vertices(&mut self, f: impl Fn(usize) -> usize) {
        for v in &mut self.vertices {
            *v = f(*v);
        }
    }

    /// Cuts every closed sub-walk. In a nearly conservative digraph the cut
    /// pieces of a special-simple walk are nonnegative, so the result is a
    /// path no longer than the walk.
    pub fn into_path(self) -> Walk {
        let mut vertices: Vec<usize> = Vec::with_capacity(self.vertices.len());
        let mut steps: Vec<(ArcKind, i64)> = Vec::with_capacity(self.steps.len());
        let mut position = std::collections::HashMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            if let Some(&p) = position.get(&v) {
                for dropped in vertices.drain(p + 1..) {
                    position.remove(&dropped);
                }
                steps.truncate(p);
            } else {
                if i > 0 {
                    steps.push(self.steps[i - 1]);
                }
                position.insert(v, vertices.len());
                vertices.push(v);
            }
        }
        Walk { vertices, steps }
    }
}

/// Which test rejected the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessKind {
    /// The special pairs contain an undirected cycle (listed, smallest first).
    ForestCycle { cycle: Vec<usize> },
    /// Floyd-Warshall found a negative cycle in the ordinary subgraph.
    OrdinaryCycle,
    /// `d'(u, v) < -d^T(v, u)` for a tree with `u, v` in it.
    TreeConflict { u: usize, v: usize, outer: i64, tree_back: i64 },
    /// Ordinary arc `u -> v` with `c(uv) < -d^T(v, u)` (single spanning tree).
    ArcConflict { u: usize, v: usize, weight: i64, tree_back: i64 },
    /// Mixed input only: a negative cycle on two vertices made of two
    /// different arcs or edges.
    TwoElementCycle,
}

/// Strongly connected component and weak block in which a failure occurred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRef {
    pub component: usize,
    pub block: usize,
    pub vertices: Vec<usize>,
}

/// Certificate that the instance is not nearly conservative.
///
/// `cycle` is a closed walk `v0 v1 .. v(l-1) (v0)` of total weight `length < 0`.
/// When produced from a normalized instance it is a simple cycle of the
/// original digraph with at least three arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub cycle: Vec<usize>,
    pub length: i64,
    pub unit: Option<UnitRef>,
}

impl Witness {
    pub(crate) fn map_vertices(&mut self, f: impl Fn(usize) -> usize) {
        match &mut self.kind {
            WitnessKind::ForestCycle { cycle } => cycle.iter_mut().for_each(|v| *v = f(*v)),
            WitnessKind::OrdinaryCycle | WitnessKind::TwoElementCycle => {}
            WitnessKind::TreeConflict { u, v, .. } | WitnessKind::ArcConflict { u, v, .. } => {
                *u = f(*u);
                *v = f(*v);
            }
        }
        self.cycle.iter_mut().for_each(|v| *v = f(*v));
    }
}

/// Splits a closed walk into simple cycles and returns the most negative one
/// with at least three arcs (falling back to any most negative cycle), with
/// loose arcs replaced by the cheaper original arc between the same vertices.
pub(crate) fn negative_cycle(walk: &Walk, g: &WeightedDigraph) -> (Vec<usize>, i64) {
    debug_assert_eq!(walk.vertices.first(), walk.vertices.last());
    let mut stack: Vec<usize> = Vec::new();
    let mut stack_steps: Vec<i64> = Vec::new();
    let mut on_stack = std::collections::HashMap::new();
    let mut best: Option<(i64, Vec<usize>)> = None;
    let rank = |weight: i64, cycle: &[usize]| (weight < 0 && cycle.len() >= 3, -weight);
    let mut consider = |cycle: Vec<usize>, weight: i64| {
        if best.as_ref().is_none_or(|(w, c)| rank(weight, &cycle) > rank(*w, c)) {
            best = Some((weight, cycle));
        }
    };
    for (i, &v) in walk.vertices.iter().enumerate() {
        if let Some(&p) = on_stack.get(&v) {
            let cycle: Vec<usize> = stack[p..].to_vec();
            let weight: i64 = stack_steps[p..].iter().sum();
            for u in &stack[p + 1..] {
                on_stack.remove(u);
            }
            stack.truncate(p + 1);
            stack_steps.truncate(p);
            consider(cycle, weight);
        } else {
            on_stack.insert(v, stack.len());
            stack.push(v);
        }
        if i < walk.steps.len() {
            stack_steps.push(walk.steps[i].1);
        }
    }
    let (walk_weight, cycle) = best.unwrap_or((0, Vec::new()));
    let original: Option<i64> = (0..cycle.len())
        .map(|i| g.original_weight(cycle[i], cycle[(i + 1) % cycle.len()]))
        .sum();
    let length = original.unwrap_or(walk_weight).min(walk_weight);
    (cycle, length)
}
