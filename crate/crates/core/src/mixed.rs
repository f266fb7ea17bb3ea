//! Mixed graphs: arcs plus undirected edges.
//!
//! An edge `{u, v}` becomes the arcs `uv` and `vu` of the same weight, so a
//! negative edge turns into a special pair. The conversion alone misses the
//! negative cycles on two vertices that use two different elements (two
//! opposite arcs, an arc and an edge, two parallel edges), so
//! [`solve_mixed`] checks those separately.

use crate::decomposition::{solve, ApspOutcome, SolveOptions};
use crate::error::Result;
use crate::graph::{normalize, Origin, WeightedDigraph};
use crate::witness::{Witness, WitnessKind};

/// Instance with 0-based vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MixedInstance {
    pub n: usize,
    pub arcs: Vec<(usize, usize, i64)>,
    pub edges: Vec<(usize, usize, i64)>,
}

pub fn mixed_to_digraph(m: &MixedInstance) -> Result<WeightedDigraph> {
    let mut raw = m.arcs.clone();
    for &(u, v, w) in &m.edges {
        raw.push((u, v, w));
        raw.push((v, u, w));
    }
    Ok(normalize(m.n, &raw)?.with_origin(Origin::Mixed))
}

/// Most negative cycle `u -> v -> u` built from two distinct elements.
pub fn negative_two_cycle(m: &MixedInstance) -> Option<(usize, usize, i64)> {
    // (tail, head, weight, element)
    let mut steps: Vec<(usize, usize, i64, usize)> = Vec::new();
    for (i, &(u, v, w)) in m.arcs.iter().enumerate() {
        steps.push((u, v, w, i));
    }
    for (j, &(u, v, w)) in m.edges.iter().enumerate() {
        let e = m.arcs.len() + j;
        steps.push((u, v, w, e));
        steps.push((v, u, w, e));
    }
    steps.retain(|s| s.0 != s.1);
    steps.sort_unstable();
    let mut best: Option<(usize, usize, i64)> = None;
    for a in steps.iter().filter(|a| a.0 < a.1) {
        let lo = steps.partition_point(|b| (b.0, b.1) < (a.1, a.0));
        for b in steps[lo..].iter().take_while(|b| (b.0, b.1) == (a.1, a.0)) {
            let w = a.2 + b.2;
            if b.3 != a.3 && w < 0 && best.is_none_or(|(_, _, bw)| w < bw) {
                best = Some((a.0, a.1, w));
            }
        }
    }
    best
}

/// Conservativeness check and APSP for a mixed graph.
pub fn solve_mixed(m: &MixedInstance, options: &SolveOptions) -> Result<ApspOutcome> {
    let g = mixed_to_digraph(m)?;
    if let Some((u, v, length)) = negative_two_cycle(m) {
        return Ok(ApspOutcome::NotNearlyConservative(Witness {
            kind: WitnessKind::TwoElementCycle,
            cycle: vec![u, v],
            length,
            unit: None,
        }));
    }
    solve(&g, options)
}
