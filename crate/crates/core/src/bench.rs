//! Wall-clock scaling of the subset DP against the number of trees.

use std::time::Instant;

use crate::apsp::{subset_dp, SubsetDpOptions};
use crate::error::{Error, Result};
use crate::generator::{generate, GeneratorConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub n: usize,
    /// Median over the repetitions.
    pub seconds: f64,
}

/// Single-block instance on `n` vertices with `k` two-vertex trees.
pub fn bench_instance(n: usize, k: usize, seed: u64) -> Result<crate::graph::WeightedDigraph> {
    let cfg = GeneratorConfig { n, arcs: 3 * n, trees: k, tree_size: 2, seed, ..Default::default() };
    generate(&cfg)?.digraph()
}

pub fn run_bench(n: usize, ks: &[usize], seed: u64, reps: usize) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let g = bench_instance(n, k, seed.wrapping_add(k as u64))?;
        let options = SubsetDpOptions { max_k: k.max(1), ..Default::default() };
        let mut times = Vec::with_capacity(reps.max(1));
        for _ in 0..reps.max(1) {
            let start = Instant::now();
            let out = subset_dp(&g, &options)?;
            times.push(start.elapsed().as_secs_f64());
            let trees = out.solved().map(|s| s.forest().len());
            if trees != Some(k) {
                return Err(Error::Internal(format!("bench instance for k = {k} came out with {trees:?} trees")));
            }
        }
        times.sort_by(f64::total_cmp);
        rows.push(BenchRow { k, n, seconds: times[times.len() / 2] });
    }
    Ok(rows)
}

/// Least-squares slope of `ln(seconds)` against `k` over rows with
/// `k >= min_k`, reported as the time factor per two extra trees.
pub fn growth_per_two_trees(rows: &[BenchRow], min_k: usize) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.k >= min_k && r.seconds > 0.0)
        .map(|r| (r.k as f64, r.seconds.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let len = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / len;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some((2.0 * sxy / sxx).exp())
}
