//! Exhaustive reference answers for small instances.
//!
//! Everything here enumerates simple cycles or simple paths directly, so it
//! shares no code with the solver beyond the input types.

use crate::error::{Error, Result};
use crate::graph::{ArcKind, WeightedDigraph};
use crate::matrix::{DistanceMatrix, INF};
use crate::mixed::MixedInstance;
use crate::witness::Walk;

pub const MAX_VERDICT_N: usize = 12;
pub const MAX_DISTANCE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub nearly_conservative: bool,
    /// Most negative offending cycle, if any.
    pub worst_cycle: Option<(Vec<usize>, i64)>,
    pub distances: Option<DistanceMatrix>,
}

#[derive(Clone, Copy)]
struct Step {
    to: usize,
    weight: i64,
    /// Arcs and undirected edges each get one id; both traversals of an
    /// edge share it.
    element: usize,
}

struct Traversals {
    out: Vec<Vec<Step>>,
}

impl Traversals {
    fn new(n: usize, arcs: &[(usize, usize, i64)], edges: &[(usize, usize, i64)]) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut element = 0;
        for &(u, v, w) in arcs {
            if u != v {
                out[u].push(Step { to: v, weight: w, element });
            }
            element += 1;
        }
        for &(u, v, w) in edges {
            if u != v {
                out[u].push(Step { to: v, weight: w, element });
                out[v].push(Step { to: u, weight: w, element });
            }
            element += 1;
        }
        Traversals { out }
    }

    fn of_digraph(g: &WeightedDigraph) -> Self {
        let arcs: Vec<_> = g.original_arcs().map(|a| (a.tail, a.head, a.weight)).collect();
        Traversals::new(g.n(), &arcs, &[])
    }

    fn n(&self) -> usize {
        self.out.len()
    }

    /// Calls `f(cycle, weight)` for every simple cycle, each listed once from
    /// its smallest vertex. A two-vertex cycle needs two distinct elements.
    fn for_each_cycle(&self, mut f: impl FnMut(&[usize], i64)) {
        let mut path = Vec::new();
        let mut on_path = vec![false; self.n()];
        for root in 0..self.n() {
            path.push(root);
            on_path[root] = true;
            self.cycles_from(root, root, 0, usize::MAX, &mut path, &mut on_path, &mut f);
            on_path[root] = false;
            path.pop();
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn cycles_from(
        &self,
        root: usize,
        v: usize,
        weight: i64,
        first_element: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        f: &mut impl FnMut(&[usize], i64),
    ) {
        for step in &self.out[v] {
            let first = if path.len() == 1 { step.element } else { first_element };
            if step.to == root {
                if path.len() >= 2 && !(path.len() == 2 && step.element == first) {
                    f(path, weight + step.weight);
                }
                continue;
            }
            if step.to < root || on_path[step.to] {
                continue;
            }
            path.push(step.to);
            on_path[step.to] = true;
            self.cycles_from(root, step.to, weight + step.weight, first, path, on_path, f);
            on_path[step.to] = false;
            path.pop();
        }
    }

    fn path_distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut dist = DistanceMatrix::new(n);
        let mut on_path = vec![false; n];
        for s in 0..n {
            on_path[s] = true;
            self.paths_from(s, s, 0, &mut on_path, &mut dist);
            on_path[s] = false;
        }
        dist
    }

    fn paths_from(&self, s: usize, v: usize, weight: i64, on_path: &mut [bool], dist: &mut DistanceMatrix) {
        for step in &self.out[v] {
            if on_path[step.to] {
                continue;
            }
            let w = weight + step.weight;
            if w < dist.raw(s, step.to) {
                dist.set(s, step.to, w);
            }
            on_path[step.to] = true;
            self.paths_from(s, step.to, w, on_path, dist);
            on_path[step.to] = false;
        }
    }
}

fn guard(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::SizeGuard { n, max });
    }
    Ok(())
}

fn keep_worst(worst: &mut Option<(Vec<usize>, i64)>, cycle: &[usize], weight: i64) {
    if worst.as_ref().is_none_or(|(_, w)| weight < *w) {
        *worst = Some((cycle.to_vec(), weight));
    }
}

/// Nearly conservative iff no simple cycle with three or more arcs is
/// negative.
pub fn enumerate_cycles_verdict(g: &WeightedDigraph) -> Result<OracleVerdict> {
    guard(g.n(), MAX_VERDICT_N)?;
    let mut worst = None;
    Traversals::of_digraph(g).for_each_cycle(|cycle, weight| {
        if cycle.len() >= 3 && weight < 0 {
            keep_worst(&mut worst, cycle, weight);
        }
    });
    Ok(OracleVerdict { nearly_conservative: worst.is_none(), worst_cycle: worst, distances: None })
}

/// Minimum over all simple paths; `+inf` where there is none.
pub fn enumerate_paths_distances(g: &WeightedDigraph) -> Result<DistanceMatrix> {
    guard(g.n(), MAX_DISTANCE_N)?;
    Ok(Traversals::of_digraph(g).path_distances())
}

/// Verdict plus distances when nearly conservative and small enough.
pub fn oracle(g: &WeightedDigraph) -> Result<OracleVerdict> {
    let mut verdict = enumerate_cycles_verdict(g)?;
    if verdict.nearly_conservative && g.n() <= MAX_DISTANCE_N {
        verdict.distances = Some(enumerate_paths_distances(g)?);
    }
    Ok(verdict)
}

/// Conservative iff no simple cycle of the mixed graph is negative; an edge
/// may not be used twice, so going back and forth on it is no cycle.
pub fn mixed_cycles_verdict(m: &MixedInstance) -> Result<OracleVerdict> {
    guard(m.n, MAX_VERDICT_N)?;
    let mut worst = None;
    Traversals::new(m.n, &m.arcs, &m.edges).for_each_cycle(|cycle, weight| {
        if weight < 0 {
            keep_worst(&mut worst, cycle, weight);
        }
    });
    Ok(OracleVerdict { nearly_conservative: worst.is_none(), worst_cycle: worst, distances: None })
}

/// Simple-path distances with edges usable in either direction.
pub fn mixed_paths_distances(m: &MixedInstance) -> Result<DistanceMatrix> {
    guard(m.n, MAX_DISTANCE_N)?;
    Ok(Traversals::new(m.n, &m.arcs, &m.edges).path_distances())
}

/// No special arc used twice and no special arc used together with its
/// opposite.
pub fn validate_special_simple(walk: &Walk, g: &WeightedDigraph) -> bool {
    let mut used = std::collections::HashSet::new();
    for (pair, &(kind, _)) in walk.vertices.windows(2).zip(&walk.steps) {
        if kind != ArcKind::Special {
            continue;
        }
        let (u, v) = (pair[0], pair[1]);
        debug_assert!(g.arc(u, v, ArcKind::Special).is_some());
        if used.contains(&(v, u)) || !used.insert((u, v)) {
            return false;
        }
    }
    true
}

/// Negative special-simple closed walk of the augmented digraph with the
/// fewest arcs, searched up to `2n` arcs: `(arcs, lightest weight among walks
/// with that many arcs)`. Searches over (vertex, set of used special pairs);
/// exponential in the number of special pairs.
pub fn negative_special_simple_closed_walk(g: &WeightedDigraph) -> Result<Option<(usize, i64)>> {
    guard(g.n(), MAX_VERDICT_N)?;
    let g = crate::graph::classify_and_augment(g);
    let n = g.n();
    let pairs: Vec<(usize, usize)> = g.special_arcs().filter(|a| a.tail < a.head).map(|a| (a.tail, a.head)).collect();
    if pairs.len() > 16 {
        return Err(Error::SizeGuard { n: pairs.len(), max: 16 });
    }
    let pair_bit = |u: usize, v: usize| {
        let key = (u.min(v), u.max(v));
        1usize << pairs.iter().position(|&p| p == key).expect("special arc without pair")
    };
    let arcs: Vec<(usize, usize, i64, usize)> = g
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head, a.weight, if a.kind == ArcKind::Special { pair_bit(a.tail, a.head) } else { 0 }))
        .collect();
    let masks = 1usize << pairs.len();
    let mut layers: Vec<Vec<i64>> = (0..n)
        .map(|root| {
            let mut l = vec![INF; n * masks];
            l[root * masks] = 0;
            l
        })
        .collect();
    for steps in 1..=2 * n {
        let mut best: Option<i64> = None;
        for (root, cur) in layers.iter_mut().enumerate() {
            let mut next = vec![INF; n * masks];
            for &(u, v, w, bit) in &arcs {
                for mask in 0..masks {
                    let d = cur[u * masks + mask];
                    if d == INF || mask & bit != 0 {
                        continue;
                    }
                    let slot = &mut next[v * masks + (mask | bit)];
                    *slot = (*slot).min(d + w);
                }
            }
            for mask in 0..masks {
                let d = next[root * masks + mask];
                if d < 0 && best.is_none_or(|b| d < b) {
                    best = Some(d);
                }
            }
            *cur = next;
        }
        if let Some(b) = best {
            return Ok(Some((steps, b)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize, i64)]) -> WeightedDigraph {
        WeightedDigraph::from_arcs(n, arcs).unwrap()
    }

    fn g1() -> WeightedDigraph {
        g(4, &[(0, 1, 2), (1, 0, -5), (1, 2, 1), (2, 3, 1), (3, 0, 4), (0, 2, 10)])
    }

    #[test]
    fn triangle_is_not_nearly_conservative() {
        let v = enumerate_cycles_verdict(&g(3, &[(0, 1, 1), (1, 2, 1), (2, 0, -3)])).unwrap();
        assert!(!v.nearly_conservative);
        assert_eq!(v.worst_cycle, Some((vec![0, 1, 2], -1)));
    }

    #[test]
    fn special_pair_is_nearly_conservative() {
        assert!(enumerate_cycles_verdict(&g(2, &[(0, 1, 2), (1, 0, -5)])).unwrap().nearly_conservative);
        assert!(enumerate_cycles_verdict(&g1()).unwrap().nearly_conservative);
    }

    #[test]
    fn g1_distances() {
        let d = enumerate_paths_distances(&g1()).unwrap();
        assert_eq!(d.get(0, 2), Some(3));
        assert_eq!(d.get(1, 0), Some(-5));
        assert_eq!(d.get(3, 2), Some(7));
    }

    #[test]
    fn trivial_distances() {
        let d = enumerate_paths_distances(&g(2, &[])).unwrap();
        assert_eq!(d.get(0, 1), None);
        assert_eq!(d.get(1, 0), None);
        let d = enumerate_paths_distances(&g(2, &[(0, 1, -4)])).unwrap();
        assert_eq!(d.get(0, 1), Some(-4));
    }

    #[test]
    fn guards() {
        assert_eq!(
            enumerate_cycles_verdict(&g(13, &[])).unwrap_err(),
            Error::SizeGuard { n: 13, max: MAX_VERDICT_N }
        );
        assert!(enumerate_paths_distances(&g(11, &[])).is_err());
        assert!(oracle(&g(11, &[])).unwrap().distances.is_none());
    }

    #[test]
    fn special_simple_walks() {
        let gr = g(3, &[(0, 1, 2), (1, 0, -5), (1, 2, 1)]);
        let mut w = Walk::start(0);
        w.push(1, ArcKind::Special, 2);
        w.push(0, ArcKind::Special, -5);
        assert!(!validate_special_simple(&w, &gr));

        let mut w = Walk::start(0);
        w.push(1, ArcKind::Special, 2);
        w.push(0, ArcKind::Loose, -2);
        w.push(1, ArcKind::Special, 2);
        assert!(!validate_special_simple(&w, &gr));

        let mut w = Walk::start(1);
        w.push(2, ArcKind::Ordinary, 1);
        assert!(validate_special_simple(&w, &gr));
    }

    #[test]
    fn walk_search_agrees_on_examples() {
        assert_eq!(negative_special_simple_closed_walk(&g1()).unwrap(), None);
        assert_eq!(negative_special_simple_closed_walk(&g(3, &[(0, 1, 1), (1, 2, 1), (2, 0, -3)])).unwrap(), Some((3, -1)));
        // 0 -> 2 -> 1 -> 0 with tree {0,1}: 1 + 1 - 5
        let bad = g(3, &[(0, 1, 2), (1, 0, -5), (0, 2, 1), (2, 1, 1)]);
        assert_eq!(negative_special_simple_closed_walk(&bad).unwrap(), Some((3, -3)));
    }

    #[test]
    fn mixed_semantics() {
        // a negative edge alone is not a cycle
        let m = MixedInstance { n: 2, arcs: vec![], edges: vec![(0, 1, -3)] };
        assert!(mixed_cycles_verdict(&m).unwrap().nearly_conservative);
        let d = mixed_paths_distances(&m).unwrap();
        assert_eq!((d.get(0, 1), d.get(1, 0)), (Some(-3), Some(-3)));

        // an arc plus a parallel edge is
        let m = MixedInstance { n: 2, arcs: vec![(0, 1, 1)], edges: vec![(0, 1, -3)] };
        assert_eq!(mixed_cycles_verdict(&m).unwrap().worst_cycle, Some((vec![0, 1], -2)));
    }
}
