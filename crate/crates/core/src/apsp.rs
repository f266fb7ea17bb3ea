//! Shortest-path engines for one decomposition unit: Floyd-Warshall on the
//! ordinary subgraph, the single spanning tree check, the feasibility test
//! against a tree, the single-tree formula and the subset DP over trees.
//!
//! A unit is a classified [`WeightedDigraph`] with local vertex ids. Layer `J`
//! of the DP holds `d_J`, the distances in the digraph that keeps the special
//! arcs of the trees in `J` only.

use crate::error::{Error, Result};
use crate::graph::{build_negative_forest, ArcKind, NegativeForest, NegativeTree, WeightedDigraph};
use crate::matrix::{add, DistanceMatrix, PredecessorMatrix, INF};
use crate::paths::{predecessors_tree, tree_walk, TreePredecessors};
use crate::tree::{tree_distances, TreeDistanceTable};
use crate::witness::{negative_cycle, Walk, Witness, WitnessKind};

pub const DEFAULT_MAX_K: usize = 24;
/// Subsets are indexed by machine words; beyond this the tables would not
/// fit in memory anyway.
pub const HARD_MAX_K: usize = 30;

/// Argmin entry meaning "the `d_0` term won".
pub(crate) const NO_ARG: u32 = u32::MAX;

#[inline]
fn pack(u: usize, v: usize) -> u32 {
    ((u as u32) << 16) | v as u32
}

#[inline]
pub(crate) fn unpack(arg: u32) -> (usize, usize) {
    ((arg >> 16) as usize, (arg & 0xffff) as usize)
}

/// Tree used for the feasibility test of a subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pivot {
    #[default]
    Smallest,
    Largest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetDpOptions {
    pub max_k: usize,
    pub pivot: Pivot,
}

impl Default for SubsetDpOptions {
    fn default() -> Self {
        SubsetDpOptions { max_k: DEFAULT_MAX_K, pivot: Pivot::Smallest }
    }
}

/// Distances and predecessors in `D_o`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloydWarshall {
    dist: DistanceMatrix,
    pred: PredecessorMatrix,
}

impl FloydWarshall {
    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn predecessors(&self) -> &PredecessorMatrix {
        &self.pred
    }

    /// Shortest `s -> t` path in `D_o`; `g` must be the graph it was run on.
    pub(crate) fn walk(&self, g: &WeightedDigraph, s: usize, t: usize) -> Walk {
        let mut rev = vec![t];
        let mut cur = t;
        while cur != s {
            cur = self.pred.get(s, cur).expect("predecessor chain leaves the source");
            rev.push(cur);
            assert!(rev.len() <= g.n(), "predecessor chain does not reach the source");
        }
        rev.reverse();
        let mut walk = Walk::start(s);
        for pair in rev.windows(2) {
            let arc = g.ordinary_arc(pair[0], pair[1]).expect("predecessor without arc");
            walk.push(pair[1], arc.kind, arc.weight);
        }
        walk
    }
}

/// All-pairs distances over ordinary and loose arcs; special arcs are
/// ignored. Fails with a negative cycle of `D_o` if there is one.
pub fn floyd_warshall(g: &WeightedDigraph) -> std::result::Result<FloydWarshall, Witness> {
    let n = g.n();
    let mut d = vec![INF; n * n];
    let mut p = PredecessorMatrix::new(n);
    for v in 0..n {
        d[v * n + v] = 0;
    }
    for a in g.ordinary_subgraph_arcs() {
        let e = &mut d[a.tail * n + a.head];
        if a.weight < *e {
            *e = a.weight;
            p.set(a.tail, a.head, Some(a.tail));
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            if dik == INF {
                continue;
            }
            for j in 0..n {
                let dkj = d[k * n + j];
                if dkj == INF {
                    continue;
                }
                if dik + dkj < d[i * n + j] {
                    d[i * n + j] = dik + dkj;
                    let pk = p.get(k, j);
                    p.set(i, j, pk);
                }
            }
        }
        // stop before values can run away around a negative cycle
        if (0..n).any(|v| d[v * n + v] < 0) {
            let walk = ordinary_negative_cycle(g).expect("Floyd-Warshall saw a negative cycle");
            let (cycle, length) = negative_cycle(&walk, g);
            return Err(Witness { kind: WitnessKind::OrdinaryCycle, cycle, length, unit: None });
        }
    }
    Ok(FloydWarshall { dist: DistanceMatrix::from_raw(n, d), pred: p })
}

/// Bellman-Ford from a virtual source over `D_o`, returning a closed walk
/// around a negative cycle.
fn ordinary_negative_cycle(g: &WeightedDigraph) -> Option<Walk> {
    let n = g.n();
    let arcs: Vec<_> = g.ordinary_subgraph_arcs().collect();
    let mut dist = vec![0i128; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..=n {
        last = None;
        for (idx, a) in arcs.iter().enumerate() {
            let cand = dist[a.tail] + a.weight as i128;
            if cand < dist[a.head] {
                dist[a.head] = cand;
                parent[a.head] = Some(idx);
                last = Some(a.head);
            }
        }
        last?;
    }
    let mut y = last?;
    for _ in 0..n {
        y = arcs[parent[y]?].tail;
    }
    let mut rev = Vec::new();
    let mut cur = y;
    loop {
        let a = arcs[parent[cur]?];
        rev.push(a);
        cur = a.tail;
        if cur == y {
            break;
        }
    }
    let mut walk = Walk::start(y);
    for a in rev.iter().rev() {
        walk.push(a.head, a.kind, a.weight);
    }
    Some(walk)
}

/// One tree spanning the whole unit: nearly conservative iff every arc `uv`
/// of `D_o` satisfies `c(uv) >= -d^T(v, u)`, and then `d = d^T`.
pub fn check_spanning_tree_case(
    g: &WeightedDigraph,
    tree: &NegativeTree,
    table: &TreeDistanceTable,
) -> std::result::Result<DistanceMatrix, Witness> {
    let n = g.n();
    assert_eq!(tree.len(), n, "tree does not span the unit");
    for a in g.ordinary_subgraph_arcs() {
        let back = table.between(tree, a.head, a.tail).expect("vertex outside spanning tree");
        if a.weight < -back {
            let preds = predecessors_tree(tree);
            let mut walk = Walk::start(a.tail);
            walk.push(a.head, a.kind, a.weight);
            walk.extend(&tree_walk(tree, table, &preds, a.head, a.tail));
            let (cycle, length) = negative_cycle(&walk, g);
            return Err(Witness {
                kind: WitnessKind::ArcConflict { u: a.tail, v: a.head, weight: a.weight, tree_back: back },
                cycle,
                length,
                unit: None,
            });
        }
    }
    let mut dist = DistanceMatrix::new(n);
    for s in 0..n {
        for t in 0..n {
            dist.set(s, t, table.between(tree, s, t).unwrap());
        }
    }
    Ok(dist)
}

/// Checks `outer(u, v) >= -d^T(v, u)` for all `u, v` in the tree, where
/// `outer` is the distance matrix of a digraph without `A(T)`. Returns the
/// first violating pair in `(u, v)` order.
pub fn feasibility_test(
    outer: &DistanceMatrix,
    tree: &NegativeTree,
    table: &TreeDistanceTable,
) -> std::result::Result<(), (usize, usize)> {
    for &(u, lu) in tree.sorted_vertices() {
        for &(v, lv) in tree.sorted_vertices() {
            let d = outer.raw(u, v);
            if d != INF && d < -table.local(lv, lu) {
                return Err((u, v));
            }
        }
    }
    Ok(())
}

/// `d(s, t) = min(d'(s, t), min_{u,v in T} d'(s, u) + d^T(u, v) + d'(v, t))`.
pub fn single_tree_apsp(d_prime: &DistanceMatrix, tree: &NegativeTree, table: &TreeDistanceTable) -> DistanceMatrix {
    let n = d_prime.dim();
    let mut dist = d_prime.as_slice().to_vec();
    let mut arg = vec![NO_ARG; n * n];
    relax_through_tree(n, &mut dist, &mut arg, d_prime.as_slice(), d_prime.as_slice(), tree, table);
    DistanceMatrix::from_raw(n, dist)
}

/// `target(s, t) <- min(target(s, t), min_{u,v} first(s, u) + d^T(u, v) + rest(v, t))`.
/// Only strict improvements replace the current entry; within the tree,
/// ties go to the lexicographically smallest `(u, v)`.
fn relax_through_tree(
    n: usize,
    target: &mut [i64],
    arg: &mut [u32],
    first: &[i64],
    rest: &[i64],
    tree: &NegativeTree,
    table: &TreeDistanceTable,
) {
    let tv = tree.sorted_vertices();
    let m = tv.len();
    let mut reach = vec![INF; m];
    let mut reach_from = vec![0usize; m];
    for s in 0..n {
        let mut any = false;
        for (j, &(_, lv)) in tv.iter().enumerate() {
            let mut best = INF;
            let mut best_u = 0;
            for &(u, lu) in tv {
                let c = add(first[s * n + u], table.local(lu, lv));
                if c < best {
                    best = c;
                    best_u = u;
                }
            }
            reach[j] = best;
            reach_from[j] = best_u;
            any |= best != INF;
        }
        if !any {
            continue;
        }
        for t in 0..n {
            if t == s {
                continue;
            }
            let mut best = INF;
            let mut best_uv = (usize::MAX, usize::MAX);
            for (j, &(v, _)) in tv.iter().enumerate() {
                let c = add(reach[j], rest[v * n + t]);
                if c == INF {
                    continue;
                }
                let uv = (reach_from[j], v);
                if c < best || (c == best && uv < best_uv) {
                    best = c;
                    best_uv = uv;
                }
            }
            if best < target[s * n + t] {
                target[s * n + t] = best;
                arg[s * n + t] = pack(best_uv.0, best_uv.1);
            }
        }
    }
}

/// Distance matrices `d_J` and argmins for every subset `J` of a unit's trees.
#[derive(Debug, Clone)]
pub struct SubsetTables {
    n: usize,
    k: usize,
    dist: Vec<DistanceMatrix>,
    arg: Vec<Vec<u32>>,
}

impl SubsetTables {
    pub fn tree_count(&self) -> usize {
        self.k
    }

    /// `d_J` for the subset with bitmask `mask`.
    pub fn distances(&self, mask: usize) -> &DistanceMatrix {
        &self.dist[mask]
    }

    pub(crate) fn argmin(&self, mask: usize, s: usize, t: usize) -> u32 {
        self.arg[mask][s * self.n + t]
    }

    /// `(i, u, v)` minimizing the recurrence for `d_J(s, t)`, or `None` when
    /// the `d_0` term is the minimum.
    pub fn argmin_triple(&self, forest: &NegativeForest, mask: usize, s: usize, t: usize) -> Option<(usize, usize, usize)> {
        match self.argmin(mask, s, t) {
            NO_ARG => None,
            a => {
                let (u, v) = unpack(a);
                Some((forest.tree_of(u)?, u, v))
            }
        }
    }
}

/// Masks ordered by popcount, then numerically.
pub fn subset_order(k: usize) -> Vec<usize> {
    let mut masks: Vec<usize> = (0..1usize << k).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

#[derive(Debug, Clone)]
enum Engine {
    SpanningTree,
    Dp { fw: FloydWarshall, layers: SubsetTables },
}

/// A solved unit: distances plus what is needed to rebuild paths.
#[derive(Debug, Clone)]
pub struct UnitSolution {
    graph: WeightedDigraph,
    forest: NegativeForest,
    tables: Vec<TreeDistanceTable>,
    tree_preds: Vec<TreePredecessors>,
    dist: DistanceMatrix,
    engine: Engine,
}

#[derive(Debug, Clone)]
pub enum UnitOutcome {
    Solved(UnitSolution),
    NotNearlyConservative(Witness),
}

impl UnitOutcome {
    pub fn solved(self) -> Option<UnitSolution> {
        match self {
            UnitOutcome::Solved(s) => Some(s),
            UnitOutcome::NotNearlyConservative(_) => None,
        }
    }
}

struct Prepared {
    forest: NegativeForest,
    tables: Vec<TreeDistanceTable>,
    tree_preds: Vec<TreePredecessors>,
}

fn prepare(g: &WeightedDigraph, max_k: usize) -> Result<std::result::Result<Prepared, Witness>> {
    let forest = match build_negative_forest(g) {
        Ok(f) => f,
        Err(fc) => return Ok(Err(forest_witness(g, fc.cycle))),
    };
    let k = forest.len();
    if k > max_k.min(HARD_MAX_K) {
        return Err(Error::LimitExceeded { k, max_k: max_k.min(HARD_MAX_K) });
    }
    if g.n() > u16::MAX as usize {
        return Err(Error::Internal(format!("unit of {} vertices exceeds the argmin encoding", g.n())));
    }
    let tables = forest.trees().iter().enumerate().map(|(i, t)| tree_distances(i, t)).collect();
    let tree_preds = forest.trees().iter().map(predecessors_tree).collect();
    Ok(Ok(Prepared { forest, tables, tree_preds }))
}

/// The two oppositely directed cycles along a cycle of `F` sum to a negative
/// number; reports the negative one.
pub(crate) fn forest_witness(g: &WeightedDigraph, cycle: Vec<usize>) -> Witness {
    let len = cycle.len();
    let around = |order: &[usize]| -> i64 {
        (0..len)
            .map(|i| g.arc(order[i], order[(i + 1) % len], ArcKind::Special).map_or(0, |a| a.weight))
            .sum()
    };
    let forward = around(&cycle);
    let mut reversed = cycle.clone();
    reversed[1..].reverse();
    let backward = around(&reversed);
    let (directed, length) = if forward <= backward { (cycle.clone(), forward) } else { (reversed, backward) };
    Witness { kind: WitnessKind::ForestCycle { cycle }, cycle: directed, length, unit: None }
}

/// Runs the subset DP on `g` taken as a single unit.
pub fn subset_dp(g: &WeightedDigraph, options: &SubsetDpOptions) -> Result<UnitOutcome> {
    let g = crate::graph::classify_and_augment(g);
    let prepared = match prepare(&g, options.max_k)? {
        Ok(p) => p,
        Err(w) => return Ok(UnitOutcome::NotNearlyConservative(w)),
    };
    Ok(run_dp(g, prepared, options.pivot))
}

/// Uses the spanning-tree shortcut when one tree covers the unit and the DP
/// otherwise.
pub fn solve_unit(g: &WeightedDigraph, options: &SubsetDpOptions) -> Result<UnitOutcome> {
    let g = crate::graph::classify_and_augment(g);
    let prepared = match prepare(&g, options.max_k)? {
        Ok(p) => p,
        Err(w) => return Ok(UnitOutcome::NotNearlyConservative(w)),
    };
    if prepared.forest.len() == 1 && prepared.forest.trees()[0].len() == g.n() {
        let tree = &prepared.forest.trees()[0];
        return Ok(match check_spanning_tree_case(&g, tree, &prepared.tables[0]) {
            Ok(dist) => UnitOutcome::Solved(UnitSolution {
                graph: g,
                forest: prepared.forest,
                tables: prepared.tables,
                tree_preds: prepared.tree_preds,
                dist,
                engine: Engine::SpanningTree,
            }),
            Err(w) => UnitOutcome::NotNearlyConservative(w),
        });
    }
    Ok(run_dp(g, prepared, options.pivot))
}

fn run_dp(g: WeightedDigraph, prepared: Prepared, pivot: Pivot) -> UnitOutcome {
    let Prepared { forest, tables, tree_preds } = prepared;
    let n = g.n();
    let k = forest.len();
    let fw = match floyd_warshall(&g) {
        Ok(fw) => fw,
        Err(w) => return UnitOutcome::NotNearlyConservative(w),
    };
    let size = 1usize << k;
    let mut dist: Vec<DistanceMatrix> = Vec::with_capacity(size);
    let mut arg: Vec<Vec<u32>> = Vec::with_capacity(size);
    dist.resize_with(size, || DistanceMatrix::from_raw(0, Vec::new()));
    arg.resize_with(size, Vec::new);
    dist[0] = fw.dist.clone();
    arg[0] = vec![NO_ARG; n * n];
    let d0 = fw.dist.as_slice().to_vec();

    for mask in subset_order(k).into_iter().skip(1) {
        let pivot_tree = match pivot {
            Pivot::Smallest => mask.trailing_zeros() as usize,
            Pivot::Largest => usize::BITS as usize - 1 - mask.leading_zeros() as usize,
        };
        let without = mask & !(1 << pivot_tree);
        let tree = &forest.trees()[pivot_tree];
        if let Err((u, v)) = feasibility_test(&dist[without], tree, &tables[pivot_tree]) {
            let partial = SubsetTables { n, k, dist, arg };
            let ctx = WalkContext { g: &g, forest: &forest, tables: &tables, tree_preds: &tree_preds, fw: &fw, layers: &partial };
            let mut walk = ctx.raw_walk(without, u, v);
            walk.extend(&tree_walk(tree, &tables[pivot_tree], &tree_preds[pivot_tree], v, u));
            let (cycle, length) = negative_cycle(&walk, &g);
            let outer = partial.dist[without].raw(u, v);
            let tree_back = tables[pivot_tree].between(tree, v, u).unwrap();
            return UnitOutcome::NotNearlyConservative(Witness {
                kind: WitnessKind::TreeConflict { u, v, outer, tree_back },
                cycle,
                length,
                unit: None,
            });
        }
        let mut layer = d0.clone();
        let mut layer_arg = vec![NO_ARG; n * n];
        for i in 0..k {
            if mask & (1 << i) == 0 {
                continue;
            }
            let prev = dist[mask & !(1 << i)].as_slice();
            relax_through_tree(n, &mut layer, &mut layer_arg, &d0, prev, &forest.trees()[i], &tables[i]);
        }
        for v in 0..n {
            layer[v * n + v] = 0;
            layer_arg[v * n + v] = NO_ARG;
        }
        dist[mask] = DistanceMatrix::from_raw(n, layer);
        arg[mask] = layer_arg;
    }
    let layers = SubsetTables { n, k, dist, arg };
    let full = layers.dist[size - 1].clone();
    UnitOutcome::Solved(UnitSolution {
        graph: g,
        forest,
        tables,
        tree_preds,
        dist: full,
        engine: Engine::Dp { fw, layers },
    })
}

struct WalkContext<'a> {
    g: &'a WeightedDigraph,
    forest: &'a NegativeForest,
    tables: &'a [TreeDistanceTable],
    tree_preds: &'a [TreePredecessors],
    fw: &'a FloydWarshall,
    layers: &'a SubsetTables,
}

impl WalkContext<'_> {
    /// `d_0` leg to `u`, tree path `u -> v`, then the `J - i` walk to `t`.
    fn raw_walk(&self, mask: usize, s: usize, t: usize) -> Walk {
        let mut walk = Walk::start(s);
        let (mut mask, mut s) = (mask, s);
        while s != t {
            let arg = self.layers.argmin(mask, s, t);
            if arg == NO_ARG {
                walk.extend(&self.fw.walk(self.g, s, t));
                break;
            }
            let (u, v) = unpack(arg);
            let i = self.forest.tree_of(u).expect("argmin vertex outside trees");
            walk.extend(&self.fw.walk(self.g, s, u));
            let tree = &self.forest.trees()[i];
            walk.extend(&tree_walk(tree, &self.tables[i], &self.tree_preds[i], u, v));
            mask &= !(1 << i);
            s = v;
        }
        walk
    }
}

impl UnitSolution {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn forest(&self) -> &NegativeForest {
        &self.forest
    }

    pub fn tree_tables(&self) -> &[TreeDistanceTable] {
        &self.tables
    }

    pub fn tree_predecessors(&self) -> &[TreePredecessors] {
        &self.tree_preds
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn floyd_warshall(&self) -> Option<&FloydWarshall> {
        match &self.engine {
            Engine::Dp { fw, .. } => Some(fw),
            Engine::SpanningTree => None,
        }
    }

    /// Per-subset tables; `None` when the spanning-tree shortcut was taken.
    pub fn layers(&self) -> Option<&SubsetTables> {
        match &self.engine {
            Engine::Dp { layers, .. } => Some(layers),
            Engine::SpanningTree => None,
        }
    }

    pub fn used_spanning_shortcut(&self) -> bool {
        matches!(self.engine, Engine::SpanningTree)
    }

    /// Walk realizing `d(s, t)` before loop elimination.
    pub fn raw_walk(&self, s: usize, t: usize) -> Option<Walk> {
        self.dist.get(s, t)?;
        Some(match &self.engine {
            Engine::SpanningTree => {
                tree_walk(&self.forest.trees()[0], &self.tables[0], &self.tree_preds[0], s, t)
            }
            Engine::Dp { fw, layers } => {
                let ctx = WalkContext {
                    g: &self.graph,
                    forest: &self.forest,
                    tables: &self.tables,
                    tree_preds: &self.tree_preds,
                    fw,
                    layers,
                };
                ctx.raw_walk((1 << layers.k) - 1, s, t)
            }
        })
    }

    /// Shortest `s -> t` path in unit ids; `None` if unreachable.
    pub fn path(&self, s: usize, t: usize) -> Option<Walk> {
        self.raw_walk(s, t).map(Walk::into_path)
    }

    pub fn predecessor(&self, s: usize, t: usize) -> Option<usize> {
        if s == t {
            return None;
        }
        let p = self.path(s, t)?;
        p.vertices.get(p.vertices.len().wrapping_sub(2)).copied()
    }

    pub fn predecessor_matrix(&self) -> PredecessorMatrix {
        let n = self.n();
        let mut out = PredecessorMatrix::new(n);
        for s in 0..n {
            for t in 0..n {
                out.set(s, t, self.predecessor(s, t));
            }
        }
        out
    }
}
