//! Instance representation: normalization, special/ordinary classification,
//! loose-arc augmentation and the negative forest.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest accepted `|weight|`. With `n <= MAX_VERTICES` every simple path
/// sum, and every sum of three path sums, fits in an `i64`.
pub const MAX_ABS_WEIGHT: i64 = 1 << 40;
pub const MAX_VERTICES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcKind {
    /// `uv` whose opposite `vu` exists with `c(uv) + c(vu) < 0`.
    Special,
    /// Any other original arc.
    Ordinary,
    /// Added arc `vu` of weight `-c(uv)` mirroring the special arc `uv`.
    Loose,
}

impl ArcKind {
    pub fn is_in_ordinary_subgraph(self) -> bool {
        matches!(self, ArcKind::Ordinary | ArcKind::Loose)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ArcKind::Special => "special",
            ArcKind::Ordinary => "ordinary",
            ArcKind::Loose => "loose",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: i64,
    pub kind: ArcKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Origin {
    #[default]
    Directed,
    Mixed,
}

/// Simple arc-weighted digraph on vertices `0..n`.
///
/// After [`normalize`] there is at most one original arc per ordered pair and
/// no loops. After [`classify_and_augment`] arcs carry their kind and each
/// special arc `uv` has a loose twin `vu`. Arcs are kept sorted by
/// `(tail, head)`, originals before loose arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Arc>,
    origin: Origin,
    augmented: bool,
}

fn sort_key(a: &Arc) -> (usize, usize, bool) {
    (a.tail, a.head, a.kind == ArcKind::Loose)
}

/// Drops loops, keeps the cheapest of parallel arcs and sorts by `(tail, head)`.
pub fn normalize(n: usize, raw: &[(usize, usize, i64)]) -> Result<WeightedDigraph> {
    if n > MAX_VERTICES {
        return Err(Error::malformed(
            None,
            format!("{n} vertices exceeds the supported maximum of {MAX_VERTICES}"),
        ));
    }
    let mut arcs = Vec::with_capacity(raw.len());
    for &(tail, head, weight) in raw {
        if tail >= n || head >= n {
            return Err(Error::malformed(
                None,
                format!("arc ({tail}, {head}) has an endpoint outside 0..{n}"),
            ));
        }
        if weight.unsigned_abs() > MAX_ABS_WEIGHT as u64 {
            return Err(Error::malformed(
                None,
                format!("weight {weight} exceeds the bound 2^40 in absolute value"),
            ));
        }
        if tail != head {
            arcs.push(Arc { tail, head, weight, kind: ArcKind::Ordinary });
        }
    }
    arcs.sort_by_key(|a| (a.tail, a.head, a.weight));
    arcs.dedup_by_key(|a| (a.tail, a.head));
    Ok(WeightedDigraph { n, arcs, origin: Origin::Directed, augmented: false })
}

/// Tags every arc special or ordinary and adds the loose twin of each special
/// arc. Idempotent.
pub fn classify_and_augment(g: &WeightedDigraph) -> WeightedDigraph {
    if g.augmented {
        return g.clone();
    }
    let mut arcs: Vec<Arc> = Vec::with_capacity(g.arcs.len() * 2);
    for a in &g.arcs {
        let special = g
            .original_weight(a.head, a.tail)
            .is_some_and(|back| a.weight + back < 0);
        let kind = if special { ArcKind::Special } else { ArcKind::Ordinary };
        arcs.push(Arc { kind, ..*a });
        if special {
            arcs.push(Arc { tail: a.head, head: a.tail, weight: -a.weight, kind: ArcKind::Loose });
        }
    }
    arcs.sort_by_key(sort_key);
    WeightedDigraph { n: g.n, arcs, origin: g.origin, augmented: true }
}

impl WeightedDigraph {
    /// Normalizes and classifies in one step.
    pub fn from_arcs(n: usize, raw: &[(usize, usize, i64)]) -> Result<Self> {
        Ok(classify_and_augment(&normalize(n, raw)?))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub fn is_augmented(&self) -> bool {
        self.augmented
    }

    /// Arcs of the input instance, i.e. everything except loose arcs.
    pub fn original_arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter().filter(|a| a.kind != ArcKind::Loose)
    }

    pub fn special_arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter().filter(|a| a.kind == ArcKind::Special)
    }

    /// Arcs of `D_o`: ordinary and loose.
    pub fn ordinary_subgraph_arcs(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter().filter(|a| a.kind.is_in_ordinary_subgraph())
    }

    fn arcs_between(&self, tail: usize, head: usize) -> &[Arc] {
        let lo = self.arcs.partition_point(|a| (a.tail, a.head) < (tail, head));
        let hi = self.arcs.partition_point(|a| (a.tail, a.head) <= (tail, head));
        &self.arcs[lo..hi]
    }

    /// Weight of the original arc `tail -> head`.
    pub fn original_weight(&self, tail: usize, head: usize) -> Option<i64> {
        self.arcs_between(tail, head)
            .iter()
            .find(|a| a.kind != ArcKind::Loose)
            .map(|a| a.weight)
    }

    /// The arc `tail -> head` of the given kind.
    pub fn arc(&self, tail: usize, head: usize, kind: ArcKind) -> Option<&Arc> {
        self.arcs_between(tail, head).iter().find(|a| a.kind == kind)
    }

    /// Cheapest arc `tail -> head` of the ordinary subgraph `D_o`. There is at
    /// most one: a loose `uv` exists only when the original `uv` is special.
    pub fn ordinary_arc(&self, tail: usize, head: usize) -> Option<&Arc> {
        self.arcs_between(tail, head)
            .iter()
            .find(|a| a.kind.is_in_ordinary_subgraph())
    }

    /// Subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
    /// given order. Arc kinds are kept as classified in `self`.
    pub fn induced(&self, vertices: &[usize]) -> WeightedDigraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut arcs: Vec<Arc> = self
            .arcs
            .iter()
            .filter(|a| local[a.tail] != usize::MAX && local[a.head] != usize::MAX)
            .map(|a| Arc { tail: local[a.tail], head: local[a.head], ..*a })
            .collect();
        arcs.sort_by_key(sort_key);
        WeightedDigraph { n: vertices.len(), arcs, origin: self.origin, augmented: self.augmented }
    }

    /// Out-neighbour lists over all arcs (including loose ones).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for a in &self.arcs {
            if adj[a.tail].last() != Some(&a.head) {
                adj[a.tail].push(a.head);
            }
        }
        adj
    }
}

/// Edge of a negative tree seen from the child.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeLink {
    /// Local index of the parent.
    pub parent: usize,
    /// `c(child -> parent)`.
    pub up: i64,
    /// `c(parent -> child)`.
    pub down: i64,
}

/// Nontrivial component of the forest of special pairs, rooted at its
/// smallest vertex and stored in BFS order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeTree {
    vertices: Vec<usize>,
    links: Vec<Option<TreeLink>>,
    lookup: Vec<(usize, usize)>,
}

impl NegativeTree {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertices in BFS order; the root comes first.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn root(&self) -> usize {
        self.vertices[0]
    }

    pub fn vertex(&self, local: usize) -> usize {
        self.vertices[local]
    }

    /// Parent link of the vertex with local index `local`; `None` at the root.
    pub fn link(&self, local: usize) -> Option<TreeLink> {
        self.links[local]
    }

    pub fn local_index(&self, v: usize) -> Option<usize> {
        self.lookup
            .binary_search_by_key(&v, |&(vertex, _)| vertex)
            .ok()
            .map(|i| self.lookup[i].1)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.local_index(v).is_some()
    }

    /// `(vertex, local index)` sorted by vertex.
    pub fn sorted_vertices(&self) -> &[(usize, usize)] {
        &self.lookup
    }

    /// The special arcs `A(T)`, both directions of every edge.
    pub fn special_arcs(&self) -> Vec<Arc> {
        let mut out = Vec::with_capacity(2 * self.len());
        for (i, link) in self.links.iter().enumerate() {
            if let Some(l) = link {
                let child = self.vertices[i];
                let parent = self.vertices[l.parent];
                out.push(Arc { tail: child, head: parent, weight: l.up, kind: ArcKind::Special });
                out.push(Arc { tail: parent, head: child, weight: l.down, kind: ArcKind::Special });
            }
        }
        out
    }

    /// Number of undirected edges, `len() - 1`.
    pub fn edge_count(&self) -> usize {
        self.links.iter().filter(|l| l.is_some()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeForest {
    trees: Vec<NegativeTree>,
    tree_of: Vec<Option<usize>>,
}

impl NegativeForest {
    pub fn trees(&self) -> &[NegativeTree] {
        &self.trees
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn tree_of(&self, v: usize) -> Option<usize> {
        self.tree_of[v]
    }
}

/// The special pairs do not form a forest. `cycle` lists the vertices of an
/// undirected cycle of `F`, smallest vertex first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCycle {
    pub cycle: Vec<usize>,
}

/// Builds `F` from the special arcs of a classified graph and returns its
/// nontrivial components, or one cycle of `F`.
pub fn build_negative_forest(g: &WeightedDigraph) -> std::result::Result<NegativeForest, ForestCycle> {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dsu = Dsu::new(n);
    for a in g.special_arcs().filter(|a| a.tail < a.head) {
        if !dsu.union(a.tail, a.head) {
            let path = forest_path(&adj, a.head, a.tail);
            return Err(ForestCycle { cycle: canonical_cycle(path) });
        }
        adj[a.tail].push(a.head);
        adj[a.head].push(a.tail);
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut trees = Vec::new();
    let mut tree_of = vec![None; n];
    for root in 0..n {
        if adj[root].is_empty() || tree_of[root].is_some() {
            continue;
        }
        let index = trees.len();
        let mut vertices = vec![root];
        let mut links = vec![None];
        let mut local = std::collections::HashMap::new();
        local.insert(root, 0usize);
        tree_of[root] = Some(index);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if tree_of[v].is_some() {
                    continue;
                }
                tree_of[v] = Some(index);
                let weight = |x, y| {
                    g.arc(x, y, ArcKind::Special)
                        .map(|a| a.weight)
                        .expect("forest edge without special arc")
                };
                links.push(Some(TreeLink { parent: local[&u], up: weight(v, u), down: weight(u, v) }));
                local.insert(v, vertices.len());
                vertices.push(v);
                queue.push_back(v);
            }
        }
        let mut lookup: Vec<(usize, usize)> = local.into_iter().collect();
        lookup.sort_unstable();
        trees.push(NegativeTree { vertices, links, lookup });
    }
    Ok(NegativeForest { trees, tree_of })
}

fn forest_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Rotates to the smallest vertex and orients toward its smaller neighbour.
pub(crate) fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    if cycle.is_empty() {
        return cycle;
    }
    let start = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap();
    cycle.rotate_left(start);
    if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}
