//! Seeded instance generators.
//!
//! [`generate`] builds structure top-down: a chain of strongly connected
//! components, weak blocks glued at cut vertices inside each, negative trees
//! inside blocks, then filler arcs. In safe mode every ordinary weight is at
//! least `n * M` (with `M` the largest special weight in absolute value), so
//! every cycle through an ordinary arc is nonnegative; a random potential
//! shift then hides that margin without changing any cycle length.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::{solve, SolveOptions};
use crate::error::{Error, Result};
use crate::format::{Instance, InstanceKind};
use crate::mixed::solve_mixed;

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Target number of arcs; structural arcs come first, fillers top up.
    pub arcs: usize,
    pub trees: usize,
    /// Largest tree size; sizes are drawn from `2..=tree_size`.
    pub tree_size: usize,
    /// Largest absolute special weight and width of the ordinary range.
    pub weight: i64,
    pub seed: u64,
    pub sccs: usize,
    /// Weak blocks per component, where the component is large enough.
    pub blocks: usize,
    pub mixed: bool,
    /// Weight ordinary arcs so the result is nearly conservative.
    pub safe: bool,
    /// Unsafe mode: redraw up to this many times until the solver accepts.
    pub reject_attempts: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            n: 20,
            arcs: 60,
            trees: 3,
            tree_size: 3,
            weight: 10,
            seed: 1,
            sccs: 1,
            blocks: 1,
            mixed: false,
            safe: true,
            reject_attempts: 0,
        }
    }
}

impl GeneratorConfig {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.n > crate::graph::MAX_VERTICES {
            return bad(format!("n = {} exceeds the supported maximum", self.n));
        }
        if self.trees > 0 && self.tree_size < 2 {
            return bad("tree size must be at least 2".into());
        }
        if self.trees * 2 > self.n {
            return bad(format!("{} trees need at least {} vertices", self.trees, 2 * self.trees));
        }
        if self.sccs == 0 || self.sccs > self.n {
            return bad(format!("scc count must be in 1..={}", self.n));
        }
        if self.blocks == 0 {
            return bad("block count must be positive".into());
        }
        if self.weight <= 0 || self.weight > 1 << 20 {
            return bad("weight must be in 1..=2^20".into());
        }
        Ok(())
    }
}

/// Uniform random digraph: each ordered pair `u != v` is an arc with
/// probability `density`, weight uniform in `lo..=hi`.
pub fn random_digraph(n: usize, density: f64, lo: i64, hi: i64, rng: &mut GenRng) -> Vec<(usize, usize, i64)> {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(density) {
                arcs.push((u, v, rng.gen_range(lo..=hi)));
            }
        }
    }
    arcs
}

/// Uniform random mixed graph: each unordered pair gets an edge with
/// probability `edge_density`, each ordered pair an arc with `arc_density`.
pub fn random_mixed(
    n: usize,
    arc_density: f64,
    edge_density: f64,
    lo: i64,
    hi: i64,
    rng: &mut GenRng,
) -> crate::mixed::MixedInstance {
    let mut m = crate::mixed::MixedInstance { n, ..Default::default() };
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            if u < v && rng.gen_bool(edge_density) {
                m.edges.push((u, v, rng.gen_range(lo..=hi)));
            }
            if rng.gen_bool(arc_density) {
                m.arcs.push((u, v, rng.gen_range(lo..=hi)));
            }
        }
    }
    m
}

/// Splits `total` into `parts` positive sizes.
fn split(total: usize, parts: usize, rng: &mut GenRng) -> Vec<usize> {
    let mut sizes = vec![1; parts];
    for _ in parts..total {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    sizes
}

struct Draft {
    /// Ordinary and special arcs by ordered pair.
    arcs: BTreeMap<(usize, usize), i64>,
    /// Unordered tree pairs, stored `(min, max)`.
    tree_pairs: BTreeMap<(usize, usize), i64>,
    blocks: Vec<Vec<usize>>,
}

fn draft(cfg: &GeneratorConfig, rng: &mut GenRng) -> Draft {
    let n = cfg.n;
    let w = cfg.weight;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut at = 0;
    for size in split(n, cfg.sccs, rng) {
        components.push(order[at..at + size].to_vec());
        at += size;
    }

    // blocks: the first takes a fresh run of vertices, each later one shares
    // one earlier vertex of the component
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for comp in &components {
        let r = comp.len();
        if r == 1 {
            blocks.push(comp.clone());
            continue;
        }
        let b = cfg.blocks.min(r - 1);
        let mut fresh = vec![1; b];
        fresh[0] = 2;
        for _ in b + 1..r {
            fresh[rng.gen_range(0..b)] += 1;
        }
        let mut next = 0;
        let mut placed: Vec<usize> = Vec::new();
        for (i, &take) in fresh.iter().enumerate() {
            let mut block = Vec::new();
            if i > 0 {
                block.push(*placed.choose(rng).unwrap());
            }
            block.extend_from_slice(&comp[next..next + take]);
            next += take;
            placed.extend_from_slice(&block[usize::from(i > 0)..]);
            blocks.push(block);
        }
    }

    // negative trees on unused vertices, spread over blocks round robin
    let mut in_tree = vec![false; n];
    let mut tree_pairs = BTreeMap::new();
    let mut candidates: Vec<usize> = (0..blocks.len()).filter(|&b| blocks[b].len() >= 2).collect();
    candidates.shuffle(rng);
    let mut made = 0;
    let mut stalled = 0;
    let mut cursor = 0;
    while made < cfg.trees && !candidates.is_empty() && stalled < candidates.len() {
        let block = &blocks[candidates[cursor % candidates.len()]];
        cursor += 1;
        let mut free: Vec<usize> = block.iter().copied().filter(|&v| !in_tree[v]).collect();
        if free.len() < 2 {
            stalled += 1;
            continue;
        }
        stalled = 0;
        free.shuffle(rng);
        let size = rng.gen_range(2..=cfg.tree_size.max(2)).min(free.len());
        let members = &free[..size];
        for (i, &v) in members.iter().enumerate() {
            in_tree[v] = true;
            if i == 0 {
                continue;
            }
            let parent = members[rng.gen_range(0..i)];
            let key = (parent.min(v), parent.max(v));
            tree_pairs.insert(key, rng.gen_range(-w..=w));
        }
        made += 1;
    }
    if cfg.mixed {
        for weight in tree_pairs.values_mut() {
            *weight = -rng.gen_range(1..=w);
        }
    }
    Draft { arcs: BTreeMap::new(), tree_pairs, blocks }.with_structure(&components, cfg, rng)
}

impl Draft {
    fn with_structure(mut self, components: &[Vec<usize>], cfg: &GeneratorConfig, rng: &mut GenRng) -> Draft {
        let (lo, hi) = ordinary_range(cfg);
        let is_tree_pair = |tp: &BTreeMap<(usize, usize), i64>, u: usize, v: usize| tp.contains_key(&(u.min(v), u.max(v)));
        // a directed cycle through each block keeps it strongly connected
        for block in &self.blocks {
            if block.len() < 2 {
                continue;
            }
            let mut cyc = block.clone();
            cyc.shuffle(rng);
            for i in 0..cyc.len() {
                let (u, v) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                if !is_tree_pair(&self.tree_pairs, u, v) {
                    self.arcs.insert((u, v), rng.gen_range(lo..=hi));
                }
            }
        }
        // chain the components; the component list order is the DAG order
        for pair in components.windows(2) {
            let u = *pair[0].choose(rng).unwrap();
            let v = *pair[1].choose(rng).unwrap();
            self.arcs.insert((u, v), rng.gen_range(-cfg.weight..=cfg.weight));
        }
        let structural = self.arcs.len() + 2 * self.tree_pairs.len();
        let mut budget = cfg.arcs.saturating_sub(structural);
        let mut tries = 0;
        let block_count = self.blocks.len();
        while budget > 0 && tries < 20 * cfg.arcs + 100 {
            tries += 1;
            // mostly inside blocks; sometimes forward between components
            if components.len() > 1 && rng.gen_bool(0.2) {
                let a = rng.gen_range(0..components.len());
                let b = rng.gen_range(0..components.len());
                if a >= b {
                    continue;
                }
                let u = *components[a].choose(rng).unwrap();
                let v = *components[b].choose(rng).unwrap();
                if self.arcs.contains_key(&(u, v)) {
                    continue;
                }
                self.arcs.insert((u, v), rng.gen_range(-cfg.weight..=cfg.weight));
                budget -= 1;
                continue;
            }
            let block = &self.blocks[rng.gen_range(0..block_count)];
            if block.len() < 2 {
                continue;
            }
            let u = *block.choose(rng).unwrap();
            let v = *block.choose(rng).unwrap();
            if u == v || self.arcs.contains_key(&(u, v)) || is_tree_pair(&self.tree_pairs, u, v) {
                continue;
            }
            let weight = rng.gen_range(lo..=hi);
            // keep the opposite pair nonnegative so no new special pair appears
            let weight = match self.arcs.get(&(v, u)) {
                Some(&back) => weight.max(-back),
                None => weight,
            };
            self.arcs.insert((u, v), weight);
            budget -= 1;
        }
        self
    }
}

fn ordinary_range(cfg: &GeneratorConfig) -> (i64, i64) {
    if cfg.safe {
        let base = cfg.n as i64 * 2 * cfg.weight;
        (base, base + cfg.weight)
    } else {
        (-cfg.weight, cfg.weight)
    }
}

fn to_instance(d: &Draft, cfg: &GeneratorConfig, rng: &mut GenRng) -> Instance {
    let n = cfg.n;
    let w = cfg.weight;
    let mut arcs: BTreeMap<(usize, usize), i64> = d.arcs.clone();
    let mut edges = Vec::new();
    for (&(x, y), &wxy) in &d.tree_pairs {
        if cfg.mixed {
            edges.push((x, y, wxy));
        } else {
            arcs.insert((x, y), wxy);
            arcs.insert((y, x), -wxy - 1 - rng.gen_range(0..w));
        }
    }
    // potentials keep every cycle length and every opposite-pair sum
    if cfg.safe && !cfg.mixed {
        let spread = n as i64 * w;
        let p: Vec<i64> = (0..n).map(|_| rng.gen_range(-spread..=spread)).collect();
        for (&(u, v), weight) in arcs.iter_mut() {
            *weight += p[u] - p[v];
        }
    }
    let mut comments = vec![format!(
        "generated: n={} arcs={} trees={} tree-size={} weight={} seed={} sccs={} blocks={}{}{}",
        cfg.n,
        cfg.arcs,
        cfg.trees,
        cfg.tree_size,
        cfg.weight,
        cfg.seed,
        cfg.sccs,
        cfg.blocks,
        if cfg.mixed { " mixed" } else { "" },
        if cfg.safe { "" } else { " unsafe" },
    )];
    comments.push(format!("blocks: {}", d.blocks.len()));
    Instance {
        kind: if cfg.mixed { InstanceKind::Mixed } else { InstanceKind::Directed },
        n,
        arcs: arcs.into_iter().map(|((u, v), w)| (u, v, w)).collect(),
        edges,
        comments,
    }
}

/// Structured instance; output depends only on the configuration.
pub fn generate(cfg: &GeneratorConfig) -> Result<Instance> {
    cfg.validate()?;
    let mut rng = rng(cfg.seed);
    let mut attempt = 0;
    loop {
        let d = draft(cfg, &mut rng);
        let inst = to_instance(&d, cfg, &mut rng);
        if cfg.safe || attempt >= cfg.reject_attempts {
            return Ok(inst);
        }
        attempt += 1;
        let options = SolveOptions::default();
        let accepted = if cfg.mixed {
            solve_mixed(&inst.to_mixed(), &options)?.is_solved()
        } else {
            solve(&inst.digraph()?, &options)?.is_solved()
        };
        if accepted {
            return Ok(inst);
        }
    }
}
