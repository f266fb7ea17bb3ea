//! Whole-graph pipeline: strongly connected components, weak blocks inside
//! each component, one unit solve per block, composition along the block-cut
//! tree, and the acyclic condensation `D*` for pairs in different components.

use crate::apsp::{forest_witness, solve_unit, subset_dp, Pivot, SubsetDpOptions, UnitOutcome, UnitSolution, DEFAULT_MAX_K};
use crate::error::{Error, Result};
use crate::graph::{build_negative_forest, classify_and_augment, WeightedDigraph};
use crate::matrix::{add, DistanceMatrix, PredecessorMatrix, INF};
use crate::paths::Path;
use crate::witness::{UnitRef, Walk, Witness};

const NONE: u32 = u32::MAX;

/// Strongly connected components, listed in reverse topological order (sinks
/// first). Vertices of each component are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl SccDecomposition {
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Iterative Tarjan over all arcs of `g`.
pub fn strongly_connected_components(g: &WeightedDigraph) -> SccDecomposition {
    let n = g.n();
    let adj = g.adjacency();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    let mut counter = 0;
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));
        while let Some(&mut (v, ref mut next)) = frames.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component_of[w] = components.len();
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    SccDecomposition { component_of, components }
}

/// Blocks of the underlying undirected graph. Every isolated vertex forms a
/// block of its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    blocks: Vec<Vec<usize>>,
    /// `(block, index within block)` for every block containing the vertex.
    blocks_of: Vec<Vec<(usize, usize)>>,
}

impl BlockCutTree {
    /// Vertex sets, each sorted.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Vertices lying in more than one block.
    pub fn cut_vertices(&self) -> Vec<usize> {
        (0..self.blocks_of.len()).filter(|&v| self.blocks_of[v].len() > 1).collect()
    }

    /// Blocks containing `v`, with `v`'s position in each.
    pub fn blocks_of(&self, v: usize) -> &[(usize, usize)] {
        &self.blocks_of[v]
    }

    fn local(&self, block: usize, v: usize) -> usize {
        self.blocks_of[v]
            .iter()
            .find(|&&(b, _)| b == block)
            .map(|&(_, i)| i)
            .expect("vertex not in block")
    }
}

/// Iterative Hopcroft-Tarjan biconnected components.
pub fn weak_blocks(g: &WeightedDigraph) -> BlockCutTree {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for a in g.arcs() {
        adj[a.tail].push(a.head);
        adj[a.head].push(a.tail);
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut counter = 0;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut vstack: Vec<usize> = Vec::new();
    // (vertex, parent, next neighbour)
    let mut frames: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = counter;
        low[root] = counter;
        counter += 1;
        if adj[root].is_empty() {
            blocks.push(vec![root]);
            continue;
        }
        vstack.push(root);
        frames.push((root, usize::MAX, 0));
        while let Some(&mut (v, parent, ref mut next)) = frames.last_mut() {
            if let Some(&w) = adj[v].get(*next) {
                *next += 1;
                if disc[w] == usize::MAX {
                    disc[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    vstack.push(w);
                    frames.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(p, _, _)) = frames.last() {
                low[p] = low[p].min(low[v]);
                if low[v] >= disc[p] {
                    let mut block = vec![p];
                    loop {
                        let w = vstack.pop().expect("block stack underflow");
                        block.push(w);
                        if w == v {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            }
        }
        vstack.clear();
    }
    let mut blocks_of = vec![Vec::new(); n];
    for (b, block) in blocks.iter().enumerate() {
        for (i, &v) in block.iter().enumerate() {
            blocks_of[v].push((b, i));
        }
    }
    BlockCutTree { blocks, blocks_of }
}

#[derive(Debug, Clone)]
struct BlockSolution {
    unit: UnitSolution,
    pred: PredecessorMatrix,
}

/// One strongly connected component after block composition. Vertex ids are
/// local to the component unless stated otherwise.
#[derive(Debug, Clone)]
pub struct ComponentSolution {
    vertices: Vec<usize>,
    tree: BlockCutTree,
    blocks: Vec<BlockSolution>,
    dist: DistanceMatrix,
    via_block: Vec<u32>,
    via_entry: Vec<u32>,
    pred: PredecessorMatrix,
}

impl ComponentSolution {
    /// Global vertex ids, sorted.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn block_cut_tree(&self) -> &BlockCutTree {
        &self.tree
    }

    pub fn block_units(&self) -> impl Iterator<Item = &UnitSolution> + '_ {
        self.blocks.iter().map(|b| &b.unit)
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    pub fn predecessors(&self) -> &PredecessorMatrix {
        &self.pred
    }

    /// Shortest path in component ids.
    fn walk(&self, s: usize, t: usize) -> Walk {
        let r = self.vertices.len();
        let mut segments = Vec::new();
        let mut cur = t;
        while cur != s {
            let b = self.via_block[s * r + cur] as usize;
            let e = self.via_entry[s * r + cur] as usize;
            let block = &self.tree.blocks[b];
            let mut seg = self.blocks[b]
                .unit
                .path(self.tree.local(b, e), self.tree.local(b, cur))
                .expect("block pair without path");
            seg.map_vertices(|v| block[v]);
            segments.push(seg);
            cur = e;
        }
        let mut walk = Walk::start(s);
        for seg in segments.iter().rev() {
            walk.extend(seg);
        }
        walk
    }
}

/// Per-source traversal of the block-cut tree: a pair in different blocks
/// adds up block distances between consecutive cut vertices.
pub fn compose_blocks(tree: &BlockCutTree, block_dist: &[&DistanceMatrix]) -> DistanceMatrix {
    let n = tree.blocks_of.len();
    let (dist, _, _) = compose(tree, block_dist);
    DistanceMatrix::from_raw(n, dist)
}

fn compose(tree: &BlockCutTree, block_dist: &[&DistanceMatrix]) -> (Vec<i64>, Vec<u32>, Vec<u32>) {
    let r = tree.blocks_of.len();
    let mut dist = vec![INF; r * r];
    let mut via_block = vec![NONE; r * r];
    let mut via_entry = vec![NONE; r * r];
    let mut seen = vec![usize::MAX; tree.blocks.len()];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..r {
        dist[s * r + s] = 0;
        for &(b, _) in &tree.blocks_of[s] {
            seen[b] = s;
            queue.push_back((b, s));
        }
        while let Some((b, e)) = queue.pop_front() {
            let block = &tree.blocks[b];
            let le = tree.local(b, e);
            let base = dist[s * r + e];
            for (lt, &t) in block.iter().enumerate() {
                if t == e {
                    continue;
                }
                dist[s * r + t] = add(base, block_dist[b].raw(le, lt));
                via_block[s * r + t] = b as u32;
                via_entry[s * r + t] = e as u32;
                for &(next, _) in &tree.blocks_of[t] {
                    if seen[next] != s {
                        seen[next] = s;
                        queue.push_back((next, t));
                    }
                }
            }
        }
    }
    (dist, via_block, via_entry)
}

/// The condensation `D*`: vertex `v` of the input gives `a(v) = v` and
/// `b(v) = n + v`. Intra arcs `a(x) -> b(y)` carry component distances and are
/// not materialized; cross arcs `b(x) -> a(y)` copy the arcs between
/// components.
#[derive(Debug, Clone)]
pub struct CondensedDag<'a> {
    n: usize,
    scc: &'a SccDecomposition,
    local: Vec<usize>,
    intra: Vec<&'a DistanceMatrix>,
    cross: Vec<Vec<(usize, i64)>>,
}

impl CondensedDag<'_> {
    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn a(&self, v: usize) -> usize {
        v
    }

    pub fn b(&self, v: usize) -> usize {
        self.n + v
    }

    pub fn for_each_out(&self, x: usize, mut f: impl FnMut(usize, i64)) {
        if x < self.n {
            let comp = self.scc.component_of(x);
            let lx = self.local[x];
            for (ly, &y) in self.scc.components[comp].iter().enumerate() {
                let w = self.intra[comp].raw(lx, ly);
                if w != INF {
                    f(self.n + y, w);
                }
            }
        } else {
            for &(y, w) in &self.cross[x - self.n] {
                f(y, w);
            }
        }
    }

    pub fn arc_count(&self) -> usize {
        let mut m = 0;
        for x in 0..self.vertex_count() {
            self.for_each_out(x, |_, _| m += 1);
        }
        m
    }

    /// Components in topological order, all `a` vertices of a component
    /// before its `b` vertices.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(2 * self.n);
        for comp in self.scc.components.iter().rev() {
            order.extend(comp.iter().copied());
            order.extend(comp.iter().map(|&v| self.n + v));
        }
        order
    }

    /// Kahn's algorithm, independent of [`Self::topological_order`].
    pub fn is_acyclic(&self) -> bool {
        let size = self.vertex_count();
        let mut indeg = vec![0usize; size];
        for x in 0..size {
            self.for_each_out(x, |y, _| indeg[y] += 1);
        }
        let mut ready: Vec<usize> = (0..size).filter(|&x| indeg[x] == 0).collect();
        let mut done = 0;
        while let Some(x) = ready.pop() {
            done += 1;
            self.for_each_out(x, |y, _| {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(y);
                }
            });
        }
        done == size
    }

    /// Distances and predecessors from one vertex, relaxing in topological
    /// order. Only strict improvements replace a predecessor.
    fn single_source(&self, order: &[usize], position: &[usize], source: usize) -> (Vec<i64>, Vec<u32>) {
        let size = self.vertex_count();
        let mut dist = vec![INF; size];
        let mut pred = vec![NONE; size];
        dist[source] = 0;
        for &x in &order[position[source]..] {
            let dx = dist[x];
            if dx == INF {
                continue;
            }
            self.for_each_out(x, |y, w| {
                if dx + w < dist[y] {
                    dist[y] = dx + w;
                    pred[y] = x as u32;
                }
            });
        }
        (dist, pred)
    }
}

pub fn build_condensed_dag<'a>(
    scc: &'a SccDecomposition,
    intra: Vec<&'a DistanceMatrix>,
    g: &WeightedDigraph,
) -> Result<CondensedDag<'a>> {
    let n = g.n();
    let mut local = vec![0usize; n];
    for comp in &scc.components {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut cross = vec![Vec::new(); n];
    for a in g.original_arcs() {
        let (ct, ch) = (scc.component_of(a.tail), scc.component_of(a.head));
        if ct == ch {
            continue;
        }
        // sinks come first, so an arc must go to a smaller component index
        if ch > ct {
            return Err(Error::Internal(format!("arc {} -> {} runs against the component order", a.tail, a.head)));
        }
        cross[a.tail].push((a.head, a.weight));
    }
    let dag = CondensedDag { n, scc, local, intra, cross };
    debug_assert!(dag.is_acyclic());
    Ok(dag)
}

/// Distances between all vertices of `D*`.
pub fn dag_apsp(dag: &CondensedDag<'_>) -> DistanceMatrix {
    let size = dag.vertex_count();
    let order = dag.topological_order();
    let mut position = vec![0; size];
    for (i, &x) in order.iter().enumerate() {
        position[x] = i;
    }
    let mut data = Vec::with_capacity(size * size);
    for s in 0..size {
        data.extend(dag.single_source(&order, &position, s).0);
    }
    DistanceMatrix::from_raw(size, data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    pub max_k: usize,
    pub pivot: Pivot,
    /// Skip the subset DP for a block spanned by a single tree.
    pub spanning_shortcut: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_k: DEFAULT_MAX_K, pivot: Pivot::Smallest, spanning_shortcut: true }
    }
}

impl SolveOptions {
    fn unit_options(&self) -> SubsetDpOptions {
        SubsetDpOptions { max_k: self.max_k, pivot: self.pivot }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub components: usize,
    pub blocks: usize,
    pub trees: usize,
    pub max_trees_per_block: usize,
    pub spanning_shortcuts: usize,
}

#[derive(Debug, Clone)]
pub struct Solution {
    graph: WeightedDigraph,
    scc: SccDecomposition,
    local: Vec<usize>,
    components: Vec<ComponentSolution>,
    dist: DistanceMatrix,
    pred: PredecessorMatrix,
    /// Per source `s`, the `D*` predecessor of every `D*` vertex.
    star_pred: Vec<u32>,
    stats: SolveStats,
}

#[derive(Debug, Clone)]
pub enum ApspOutcome {
    Solved(Solution),
    NotNearlyConservative(Witness),
}

impl ApspOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, ApspOutcome::Solved(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            ApspOutcome::Solved(s) => Some(s),
            ApspOutcome::NotNearlyConservative(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ApspOutcome::Solved(_) => None,
            ApspOutcome::NotNearlyConservative(w) => Some(w),
        }
    }
}

/// Solves one block given in component ids.
fn solve_block(
    component_graph: &WeightedDigraph,
    block: &[usize],
    options: &SolveOptions,
) -> Result<UnitOutcome> {
    let sub = component_graph.induced(block);
    if options.spanning_shortcut {
        solve_unit(&sub, &options.unit_options())
    } else {
        subset_dp(&sub, &options.unit_options())
    }
}

/// Full pipeline. `g` may be normalized or already classified.
pub fn solve(g: &WeightedDigraph, options: &SolveOptions) -> Result<ApspOutcome> {
    let g = classify_and_augment(g);
    let n = g.n();
    if let Err(fc) = build_negative_forest(&g) {
        return Ok(ApspOutcome::NotNearlyConservative(forest_witness(&g, fc.cycle)));
    }
    let scc = strongly_connected_components(&g);
    let mut local = vec![0usize; n];
    for comp in scc.components() {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut stats = SolveStats { components: scc.len(), ..Default::default() };
    let mut components = Vec::with_capacity(scc.len());
    for (ci, comp) in scc.components().iter().enumerate() {
        let cg = g.induced(comp);
        let tree = weak_blocks(&cg);
        let mut blocks = Vec::with_capacity(tree.blocks.len());
        for (bi, block) in tree.blocks.iter().enumerate() {
            match solve_block(&cg, block, options)? {
                UnitOutcome::Solved(unit) => {
                    let k = unit.forest().len();
                    stats.trees += k;
                    stats.max_trees_per_block = stats.max_trees_per_block.max(k);
                    stats.spanning_shortcuts += unit.used_spanning_shortcut() as usize;
                    let pred = unit.predecessor_matrix();
                    blocks.push(BlockSolution { unit, pred });
                }
                UnitOutcome::NotNearlyConservative(mut w) => {
                    w.map_vertices(|v| comp[block[v]]);
                    let vertices = block.iter().map(|&v| comp[v]).collect();
                    w.unit = Some(UnitRef { component: ci, block: bi, vertices });
                    return Ok(ApspOutcome::NotNearlyConservative(w));
                }
            }
        }
        stats.blocks += blocks.len();
        components.push(finish_component(comp.clone(), tree, blocks));
    }

    let intra: Vec<&DistanceMatrix> = components.iter().map(|c| &c.dist).collect();
    let dag = build_condensed_dag(&scc, intra, &g)?;
    let order = dag.topological_order();
    let mut position = vec![0; 2 * n];
    for (i, &x) in order.iter().enumerate() {
        position[x] = i;
    }
    let mut dist = vec![INF; n * n];
    let mut star_pred = vec![NONE; n * 2 * n];
    for s in 0..n {
        let (d, p) = dag.single_source(&order, &position, s);
        for t in 0..n {
            dist[s * n + t] = if s == t { 0 } else { d[n + t] };
        }
        star_pred[s * 2 * n..(s + 1) * 2 * n].copy_from_slice(&p);
    }
    let dist = DistanceMatrix::from_raw(n, dist);
    let mut solution = Solution {
        graph: g,
        scc,
        local,
        components,
        dist,
        pred: PredecessorMatrix::new(n),
        star_pred,
        stats,
    };
    solution.pred = predecessors_condensed(&solution);
    Ok(ApspOutcome::Solved(solution))
}

fn finish_component(vertices: Vec<usize>, tree: BlockCutTree, blocks: Vec<BlockSolution>) -> ComponentSolution {
    let r = vertices.len();
    let block_dist: Vec<&DistanceMatrix> = blocks.iter().map(|b| b.unit.distances()).collect();
    let (dist, via_block, via_entry) = compose(&tree, &block_dist);
    // pi_K(s, t) = pi_B(entry, t) for the last block B on the way
    let mut pred = PredecessorMatrix::new(r);
    for s in 0..r {
        for t in 0..r {
            if s == t || dist[s * r + t] == INF {
                continue;
            }
            let b = via_block[s * r + t] as usize;
            let e = via_entry[s * r + t] as usize;
            let p = blocks[b].pred.get(tree.local(b, e), tree.local(b, t));
            pred.set(s, t, p.map(|p| tree.blocks[b][p]));
        }
    }
    ComponentSolution { vertices, tree, blocks, dist: DistanceMatrix::from_raw(r, dist), via_block, via_entry, pred }
}

/// `pi(s, t)` from the `D*` predecessor of `b(t)`: for `a(x)` with `x != t`
/// it is the component predecessor `pi_K(x, t)`, and for `x = t` it is the
/// tail `y` of the cross arc entering `a(t)` from `b(y)`.
fn predecessors_condensed(sol: &Solution) -> PredecessorMatrix {
    let n = sol.n();
    let mut pred = PredecessorMatrix::new(n);
    for s in 0..n {
        for t in 0..n {
            if s == t || sol.dist.raw(s, t) == INF {
                continue;
            }
            let x = sol.star(s, n + t);
            let p = if x != t {
                let comp = &sol.components[sol.scc.component_of(t)];
                comp.pred.get(sol.local[x], sol.local[t]).map(|p| comp.vertices[p])
            } else {
                Some(sol.star(s, t) - n)
            };
            pred.set(s, t, p);
        }
    }
    pred
}

impl Solution {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// The classified and augmented input.
    pub fn graph(&self) -> &WeightedDigraph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    /// Last-but-one vertex of the path returned by [`Self::path`].
    pub fn predecessors(&self) -> &PredecessorMatrix {
        &self.pred
    }

    pub fn distance(&self, s: usize, t: usize) -> Option<i64> {
        self.dist.get(s, t)
    }

    pub fn scc(&self) -> &SccDecomposition {
        &self.scc
    }

    pub fn components(&self) -> &[ComponentSolution] {
        &self.components
    }

    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    fn star(&self, s: usize, x: usize) -> usize {
        self.star_pred[s * 2 * self.n() + x] as usize
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(())
    }

    /// Shortest simple `s -> t` path.
    pub fn path(&self, s: usize, t: usize) -> Result<Path> {
        self.check_vertex(s)?;
        self.check_vertex(t)?;
        if self.dist.raw(s, t) == INF {
            return Err(Error::NoPath { from: s, to: t });
        }
        let n = self.n();
        // alternate intra (a -> b) and cross (b -> a) hops back from b(t)
        let mut pieces: Vec<Walk> = Vec::new();
        let mut cur = t;
        loop {
            let x = if self.scc.component_of(cur) == self.scc.component_of(s) { s } else { self.star(s, n + cur) };
            let comp = &self.components[self.scc.component_of(cur)];
            let mut w = comp.walk(self.local[x], self.local[cur]);
            w.map_vertices(|v| comp.vertices[v]);
            pieces.push(w);
            if x == s {
                break;
            }
            let y = self.star(s, x) - n;
            let weight = self.graph.original_weight(y, x).expect("cross arc missing");
            let mut hop = Walk::start(y);
            hop.push(x, crate::graph::ArcKind::Ordinary, weight);
            pieces.push(hop);
            cur = y;
        }
        let mut walk = Walk::start(s);
        for piece in pieces.iter().rev() {
            walk.extend(piece);
        }
        Ok(Path::from(walk))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, arcs: &[(usize, usize, i64)]) -> WeightedDigraph {
        WeightedDigraph::from_arcs(n, arcs).unwrap()
    }

    fn solved(gr: &WeightedDigraph) -> Solution {
        match solve(gr, &SolveOptions::default()).unwrap() {
            ApspOutcome::Solved(s) => s,
            ApspOutcome::NotNearlyConservative(w) => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn scc_examples() {
        let s = strongly_connected_components(&g(3, &[(0, 1, 2), (1, 0, -5), (1, 2, 1)]));
        assert_eq!(s.components(), &[vec![2], vec![0, 1]]);
        let s = strongly_connected_components(&g(1, &[]));
        assert_eq!(s.components(), &[vec![0]]);
        let s = strongly_connected_components(&g(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn block_examples() {
        // triangles 0-1-2 and 2-3-4 share 2
        let t = weak_blocks(&g(5, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 1), (3, 4, 1), (4, 2, 1)]));
        assert_eq!(t.blocks().len(), 2);
        assert_eq!(t.cut_vertices(), vec![2]);

        let t = weak_blocks(&g(2, &[(0, 1, 1), (1, 0, 1)]));
        assert_eq!(t.blocks(), &[vec![0, 1]]);

        let t = weak_blocks(&g(3, &[(0, 1, 1), (1, 0, 1), (1, 2, 1), (2, 1, 1)]));
        let mut blocks = t.blocks().to_vec();
        blocks.sort();
        assert_eq!(blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(t.cut_vertices(), vec![1]);
    }

    #[test]
    fn compose_single_cut_vertex() {
        // s=0, c=1, t=2
        let t = weak_blocks(&g(3, &[(0, 1, 4), (1, 0, 0), (1, 2, -1), (2, 1, 5)]));
        let mut mats = Vec::new();
        for block in t.blocks() {
            let mut m = DistanceMatrix::new(2);
            let sub = g(3, &[(0, 1, 4), (1, 0, 0), (1, 2, -1), (2, 1, 5)]).induced(block);
            for a in sub.original_arcs() {
                m.set(a.tail, a.head, a.weight);
            }
            mats.push(m);
        }
        let refs: Vec<&DistanceMatrix> = mats.iter().collect();
        let d = compose_blocks(&t, &refs);
        assert_eq!(d.get(0, 2), Some(3));
        assert_eq!(d.get(0, 1), Some(4));
        assert_eq!(d.get(2, 0), Some(5));
    }

    #[test]
    fn three_blocks_in_a_path() {
        // 2-cycles 0-1, 1-2, 2-3, 3-4 with forward weight 1, back 2; one SCC
        let mut arcs = Vec::new();
        for i in 0..4 {
            arcs.push((i, i + 1, 1));
            arcs.push((i + 1, i, 2));
        }
        let s = solved(&g(5, &arcs));
        assert_eq!(s.stats().blocks, 4);
        assert_eq!(s.distance(0, 3), Some(3));
        assert_eq!(s.distance(4, 0), Some(8));
        assert_eq!(s.path(0, 4).unwrap().vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn g1_pipeline_matches_unit() {
        let gr = g(4, &[(0, 1, 2), (1, 0, -5), (1, 2, 1), (2, 3, 1), (3, 0, 4), (0, 2, 10)]);
        let s = solved(&gr);
        let unit = subset_dp(&gr, &SubsetDpOptions::default()).unwrap().solved().unwrap();
        assert_eq!(s.distances(), unit.distances());
        assert_eq!(s.predecessors().get(0, 2), Some(1));
        let p = s.path(0, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert_eq!(p.length, 3);
    }

    #[test]
    fn special_pair_block() {
        let s = solved(&g(2, &[(0, 1, 2), (1, 0, -5)]));
        assert_eq!(s.distance(0, 1), Some(2));
        assert_eq!(s.distance(1, 0), Some(-5));
    }

    #[test]
    fn two_components_through_dstar() {
        // K1 = {0,1} special pair, K2 = {2}, cross arc 1 -> 2 (1)
        let gr = g(3, &[(0, 1, 2), (1, 0, -5), (1, 2, 1)]);
        let s = solved(&gr);
        assert_eq!(s.distance(0, 2), Some(3));
        assert_eq!(s.distance(2, 0), None);
        assert_eq!(s.predecessors().get(0, 2), Some(1));
        assert_eq!(s.path(0, 2).unwrap().vertices, vec![0, 1, 2]);
        assert_eq!(s.path(2, 0), Err(Error::NoPath { from: 2, to: 0 }));
        assert_eq!(s.path(1, 1).unwrap().vertices, vec![1]);
        assert_eq!(s.path(1, 1).unwrap().length, 0);
    }

    #[test]
    fn condensed_dag_construction() {
        let gr = g(3, &[(0, 1, 2), (1, 0, -5), (1, 2, 1)]);
        let s = solved(&gr);
        let intra = s.components().iter().map(|c| c.distances()).collect();
        let dag = build_condensed_dag(s.scc(), intra, &gr).unwrap();
        assert!(dag.is_acyclic());
        let mut out = Vec::new();
        dag.for_each_out(dag.a(0), |y, w| out.push((y, w)));
        assert_eq!(out, vec![(dag.b(0), 0), (dag.b(1), 2)]);
        out.clear();
        dag.for_each_out(dag.b(1), |y, w| out.push((y, w)));
        assert_eq!(out, vec![(dag.a(2), 1)]);
        let d = dag_apsp(&dag);
        assert_eq!(d.get(dag.a(0), dag.b(2)), Some(3));
        assert_eq!(d.get(dag.a(2), dag.b(0)), None);
    }

    #[test]
    fn chain_of_singletons() {
        let gr = g(3, &[(0, 1, 1), (1, 2, 1)]);
        let s = solved(&gr);
        let intra = s.components().iter().map(|c| c.distances()).collect();
        let dag = build_condensed_dag(s.scc(), intra, &gr).unwrap();
        assert_eq!(dag.arc_count(), 5);
        let d = dag_apsp(&dag);
        assert_eq!(d.get(dag.a(0), dag.b(2)), Some(2));
        assert_eq!(d.get(dag.a(0), dag.a(1)), Some(1));
    }

    #[test]
    fn failing_block_is_named() {
        // clean pair {0,1}; bad triangle {2,3,4}; joined by 1 -> 2
        let gr = g(5, &[(0, 1, 2), (1, 0, -5), (1, 2, 0), (2, 3, 1), (3, 4, 1), (4, 2, -3)]);
        match solve(&gr, &SolveOptions::default()).unwrap() {
            ApspOutcome::NotNearlyConservative(w) => {
                assert_eq!(w.cycle, vec![2, 3, 4]);
                assert_eq!(w.length, -1);
                assert_eq!(w.unit.unwrap().vertices, vec![2, 3, 4]);
            }
            ApspOutcome::Solved(_) => panic!("expected failure"),
        }
    }

    #[test]
    fn forest_cycle_short_circuits() {
        let gr = g(3, &[(0, 1, 0), (1, 0, -1), (1, 2, 0), (2, 1, -1), (2, 0, 0), (0, 2, -1)]);
        let w = solve(&gr, &SolveOptions::default()).unwrap().witness().cloned().unwrap();
        assert_eq!(w.kind, crate::witness::WitnessKind::ForestCycle { cycle: vec![0, 1, 2] });
        assert!(w.length < 0);
    }
}
