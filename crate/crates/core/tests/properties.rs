use std::collections::{HashSet, VecDeque};

use ncd::apsp::{subset_dp, Pivot, SubsetDpOptions, UnitOutcome};
use ncd::decomposition::{solve, ApspOutcome, SolveOptions};
use ncd::generator::{generate, random_mixed, rng, GeneratorConfig};
use ncd::graph::{build_negative_forest, classify_and_augment, normalize, ArcKind, WeightedDigraph};
use ncd::mixed::solve_mixed;
use ncd::oracle;
use ncd::paths::predecessors_dp;
use ncd::tree::tree_distances;
use ncd::witness::WitnessKind;
use proptest::prelude::*;

fn arb_digraph(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = WeightedDigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, lo..=hi), 0..=n * (n - 1)).prop_map(move |arcs| normalize(n, &arcs).unwrap())
    })
}

fn arb_structured() -> impl Strategy<Value = WeightedDigraph> {
    (3usize..=9, 0usize..=4, 1usize..=3, 1usize..=3, any::<u64>(), any::<bool>(), 1i64..=6).prop_filter_map(
        "bad config",
        |(n, trees, sccs, blocks, seed, safe, weight)| {
            let cfg = GeneratorConfig {
                n,
                arcs: 2 * n,
                trees: trees.min(n / 2),
                tree_size: 3,
                weight,
                seed,
                sccs: sccs.min(n),
                blocks,
                safe,
                ..Default::default()
            };
            generate(&cfg).ok().map(|inst| inst.digraph().unwrap())
        },
    )
}

fn solved(g: &WeightedDigraph) -> Option<ncd::Solution> {
    match solve(g, &SolveOptions::default()).unwrap() {
        ApspOutcome::Solved(s) => Some(s),
        ApspOutcome::NotNearlyConservative(_) => None,
    }
}

fn check_against_oracle(g: &WeightedDigraph) -> Result<(), TestCaseError> {
    let truth = oracle::oracle(g).unwrap();
    let out = solve(g, &SolveOptions::default()).unwrap();
    prop_assert_eq!(out.is_solved(), truth.nearly_conservative, "verdict on {:?}", g.arcs());
    if let (Some(s), Some(d)) = (out.solution(), truth.distances.as_ref()) {
        prop_assert_eq!(s.distances(), d);
    }
    Ok(())
}

fn check_witness(g: &WeightedDigraph) -> Result<(), TestCaseError> {
    let Some(w) = solve(g, &SolveOptions::default()).unwrap().witness().cloned() else {
        return Ok(());
    };
    let k = w.cycle.len();
    prop_assert!(k >= 3, "witness {:?}", w);
    prop_assert_eq!(w.cycle.iter().collect::<HashSet<_>>().len(), k);
    let mut sum = 0;
    for i in 0..k {
        let weight = g.original_weight(w.cycle[i], w.cycle[(i + 1) % k]);
        prop_assert!(weight.is_some(), "witness arc missing in {:?}", w);
        sum += weight.unwrap();
    }
    prop_assert!(sum < 0);
    prop_assert_eq!(sum, w.length);
    if let WitnessKind::ForestCycle { cycle } = &w.kind {
        prop_assert!(cycle.len() >= 3);
    }
    Ok(())
}

fn check_paths(g: &WeightedDigraph) -> Result<(), TestCaseError> {
    let Some(s) = solved(g) else { return Ok(()) };
    let cg = classify_and_augment(g);
    let forest = build_negative_forest(&cg).unwrap();
    let n = g.n();
    for a in 0..n {
        for b in 0..n {
            let Some(d) = s.distance(a, b) else {
                prop_assert!(s.path(a, b).is_err());
                prop_assert_eq!(s.predecessors().get(a, b), None);
                continue;
            };
            let p = s.path(a, b).unwrap();
            prop_assert!(p.is_simple());
            prop_assert_eq!(p.length, d);
            prop_assert_eq!(p.vertices[0], a);
            prop_assert_eq!(*p.vertices.last().unwrap(), b);
            prop_assert!(p.arcs.len() < n);
            let mut sum = 0;
            for arc in &p.arcs {
                prop_assert_ne!(arc.kind, ArcKind::Loose);
                prop_assert_eq!(cg.arc(arc.tail, arc.head, arc.kind).map(|x| x.weight), Some(arc.weight));
                sum += arc.weight;
            }
            prop_assert_eq!(sum, d);
            let last_but_one = (p.vertices.len() >= 2).then(|| p.vertices[p.vertices.len() - 2]);
            prop_assert_eq!(s.predecessors().get(a, b), last_but_one);
            // between the first and last visit of a tree only its arcs are used
            for tree in forest.trees() {
                let hits: Vec<usize> = (0..p.vertices.len()).filter(|&i| tree.contains(p.vertices[i])).collect();
                if let (Some(&i), Some(&j)) = (hits.first(), hits.last()) {
                    for arc in &p.arcs[i..j] {
                        prop_assert_eq!(arc.kind, ArcKind::Special);
                        prop_assert!(tree.contains(arc.tail) && tree.contains(arc.head));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_units(g: &WeightedDigraph) -> Result<(), TestCaseError> {
    let smallest = subset_dp(g, &SubsetDpOptions::default()).unwrap();
    let largest = subset_dp(g, &SubsetDpOptions { pivot: Pivot::Largest, ..Default::default() }).unwrap();
    let pipeline = solve(g, &SolveOptions::default()).unwrap();
    let no_shortcut = solve(g, &SolveOptions { spanning_shortcut: false, ..Default::default() }).unwrap();
    match (&smallest, &largest) {
        (UnitOutcome::Solved(a), UnitOutcome::Solved(b)) => {
            let (la, lb) = (a.layers().unwrap(), b.layers().unwrap());
            for mask in 0..1usize << la.tree_count() {
                prop_assert_eq!(la.distances(mask), lb.distances(mask));
            }
            prop_assert!(pipeline.is_solved());
            prop_assert_eq!(pipeline.solution().unwrap().distances(), a.distances());
            prop_assert_eq!(no_shortcut.solution().unwrap().distances(), a.distances());
        }
        (UnitOutcome::NotNearlyConservative(_), UnitOutcome::NotNearlyConservative(_)) => {
            prop_assert!(!pipeline.is_solved());
            prop_assert!(!no_shortcut.is_solved());
        }
        _ => prop_assert!(false, "pivot choice changed the verdict"),
    }
    Ok(())
}

fn check_layers(g: &WeightedDigraph) -> Result<(), TestCaseError> {
    let Some(unit) = subset_dp(g, &SubsetDpOptions::default()).unwrap().solved() else { return Ok(()) };
    let layers = unit.layers().unwrap();
    let k = layers.tree_count();
    let n = g.n();
    for j in 0..1usize << k {
        let dj = layers.distances(j);
        for v in 0..n {
            prop_assert_eq!(dj.get(v, v), Some(0));
        }
        prop_assert!(layers.distances(0).dominates(dj));
        for sub in 0..1usize << k {
            if sub & j == sub {
                prop_assert!(layers.distances(sub).dominates(dj), "d_{} vs d_{}", sub, j);
            }
        }
    }
    // the composition rule for predecessors names the last-but-one vertex of
    // the walk stored in the argmins
    let full = (1usize << k) - 1;
    let rule = predecessors_dp(&unit, full).unwrap();
    for s in 0..n {
        for t in 0..n {
            let walk = unit.raw_walk(s, t);
            let expected = walk.and_then(|w| (w.vertices.len() >= 2).then(|| w.vertices[w.vertices.len() - 2]));
            prop_assert_eq!(rule.get(s, t), expected);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn random_digraphs_match_oracle(g in arb_digraph(7, -5, 5)) {
        check_against_oracle(&g)?;
        check_witness(&g)?;
    }

    #[test]
    fn structured_digraphs_match_oracle(g in arb_structured()) {
        check_against_oracle(&g)?;
        check_witness(&g)?;
    }

    #[test]
    fn paths_are_simple_and_tight(g in prop_oneof![arb_digraph(7, -5, 5), arb_structured()]) {
        check_paths(&g)?;
    }

    #[test]
    fn pivot_and_pipeline_agree(g in prop_oneof![arb_digraph(7, -5, 5), arb_structured()]) {
        check_units(&g)?;
    }

    #[test]
    fn layers_are_monotone(g in prop_oneof![arb_digraph(7, -5, 5), arb_structured()]) {
        check_layers(&g)?;
    }

    #[test]
    fn walk_search_agrees_with_cycles(g in arb_digraph(6, -5, 5)) {
        let cycles = oracle::enumerate_cycles_verdict(&g).unwrap();
        let walk = oracle::negative_special_simple_closed_walk(&g).unwrap();
        prop_assert_eq!(walk.is_none(), cycles.nearly_conservative);
        if let Some((arcs, _)) = walk {
            prop_assert!(arcs >= 3 && arcs <= g.n());
        }
    }

    #[test]
    fn ordinary_subgraph_keeps_reachability(g in arb_digraph(8, -5, 5)) {
        let cg = classify_and_augment(&g);
        let n = g.n();
        let reach = |arcs: Vec<(usize, usize)>| {
            let mut out = vec![vec![false; n]; n];
            for (s, row) in out.iter_mut().enumerate() {
                let mut queue = VecDeque::from([s]);
                row[s] = true;
                while let Some(u) = queue.pop_front() {
                    for &(a, b) in &arcs {
                        if a == u && !row[b] {
                            row[b] = true;
                            queue.push_back(b);
                        }
                    }
                }
            }
            out
        };
        let all = reach(cg.original_arcs().map(|a| (a.tail, a.head)).collect());
        let ordinary = reach(cg.ordinary_subgraph_arcs().map(|a| (a.tail, a.head)).collect());
        prop_assert_eq!(all, ordinary);
    }

    #[test]
    fn classification_invariants(g in arb_digraph(8, -5, 5)) {
        let cg = classify_and_augment(&g);
        for a in cg.arcs() {
            match a.kind {
                ArcKind::Special => {
                    let back = cg.arc(a.head, a.tail, ArcKind::Special).expect("special arc without opposite");
                    prop_assert!(a.weight + back.weight < 0);
                    prop_assert_eq!(cg.arc(a.head, a.tail, ArcKind::Loose).map(|l| l.weight), Some(-a.weight));
                }
                ArcKind::Loose => {
                    prop_assert_eq!(cg.arc(a.head, a.tail, ArcKind::Special).map(|s| -s.weight), Some(a.weight));
                }
                ArcKind::Ordinary => {
                    if let Some(back) = cg.original_weight(a.head, a.tail) {
                        prop_assert!(a.weight + back >= 0);
                    }
                }
            }
        }
        if let Ok(forest) = build_negative_forest(&cg) {
            let mut seen = HashSet::new();
            let mut edges = 0;
            for (i, tree) in forest.trees().iter().enumerate() {
                prop_assert!(tree.len() >= 2);
                prop_assert_eq!(tree.edge_count(), tree.len() - 1);
                edges += tree.edge_count();
                for &v in tree.vertices() {
                    prop_assert!(seen.insert(v));
                    prop_assert_eq!(forest.tree_of(v), Some(i));
                }
            }
            prop_assert_eq!(edges, cg.special_arcs().count() / 2);
        }
    }

    #[test]
    fn mixed_graphs_match_mixed_oracle(seed in any::<u64>(), n in 2usize..=7) {
        let m = random_mixed(n, 0.25, 0.2, -5, 5, &mut rng(seed));
        let truth = oracle::mixed_cycles_verdict(&m).unwrap();
        let out = solve_mixed(&m, &SolveOptions::default()).unwrap();
        prop_assert_eq!(out.is_solved(), truth.nearly_conservative);
        if let Some(s) = out.solution() {
            prop_assert_eq!(s.distances(), &oracle::mixed_paths_distances(&m).unwrap());
        }
    }
}

/// Random tree given as parent indices plus one weight pair per edge.
fn arb_tree() -> impl Strategy<Value = (usize, Vec<(usize, i64, i64)>)> {
    (2usize..=50).prop_flat_map(|size| {
        let edges = (1..size)
            .map(|v| (0..v, -20i64..=20, 1i64..=20).prop_map(|(p, down, gap)| (p, down, -down - gap)))
            .collect::<Vec<_>>();
        (Just(size), edges)
    })
}

proptest! {
    #[test]
    fn tree_table_matches_naive_walk((size, edges) in arb_tree()) {
        let mut raw = Vec::new();
        let mut parent = vec![usize::MAX; size];
        for (i, &(p, down, up)) in edges.iter().enumerate() {
            let v = i + 1;
            parent[v] = p;
            raw.push((p, v, down));
            raw.push((v, p, up));
        }
        let g = WeightedDigraph::from_arcs(size, &raw).unwrap();
        let forest = build_negative_forest(&g).unwrap();
        prop_assert_eq!(forest.len(), 1);
        let tree = &forest.trees()[0];
        let table = tree_distances(0, tree);
        let ancestors = |mut v: usize| {
            let mut up = vec![v];
            while parent[v] != usize::MAX {
                v = parent[v];
                up.push(v);
            }
            up
        };
        for s in 0..size {
            for t in 0..size {
                // naive: climb from s to the common ancestor, then down to t
                let from_s = ancestors(s);
                let from_t = ancestors(t);
                let meet = *from_s.iter().find(|v| from_t.contains(v)).unwrap();
                let mut sum = 0;
                for w in from_s.windows(2).take_while(|w| w[0] != meet) {
                    sum += g.original_weight(w[0], w[1]).unwrap();
                }
                for w in from_t.windows(2).take_while(|w| w[0] != meet) {
                    sum += g.original_weight(w[1], w[0]).unwrap();
                }
                prop_assert_eq!(table.between(tree, s, t), Some(sum));
                if s != t {
                    prop_assert!(sum + table.between(tree, t, s).unwrap() < 0);
                }
            }
        }
    }

    #[test]
    fn conservative_ordinary_graphs_match_floyd_warshall(g in arb_digraph(8, 0, 9)) {
        let fw = ncd::apsp::floyd_warshall(&classify_and_augment(&g)).unwrap();
        let paths = oracle::enumerate_paths_distances(&g).unwrap();
        prop_assert_eq!(fw.distances(), &paths);
        let s = solved(&g).unwrap();
        prop_assert_eq!(s.distances(), fw.distances());
    }
}

/// 0 -> 1 (0), 0 -> 2 (0), 1 <-> 2 (-5 each): walking predecessors from 1
/// toward 0 loops between 1 and 2, yet each extracted path is simple.
#[test]
fn predecessor_walk_can_cycle() {
    let g = normalize(3, &[(0, 1, 0), (0, 2, 0), (1, 2, -5), (2, 1, -5)]).unwrap();
    let s = solved(&g).unwrap();
    let pi = s.predecessors();
    assert_eq!(pi.get(0, 1), Some(2));
    assert_eq!(pi.get(0, 2), Some(1));
    assert_eq!(s.path(0, 1).unwrap().vertices, vec![0, 2, 1]);
    assert_eq!(s.path(0, 2).unwrap().vertices, vec![0, 1, 2]);
    assert_eq!(oracle::enumerate_paths_distances(&g).unwrap(), *s.distances());
}

#[test]
fn solving_is_deterministic() {
    let cfg = GeneratorConfig { n: 30, arcs: 90, trees: 5, sccs: 2, blocks: 3, seed: 11, ..Default::default() };
    let g = generate(&cfg).unwrap().digraph().unwrap();
    let a = solved(&g).unwrap();
    let b = solved(&g).unwrap();
    assert_eq!(a.distances(), b.distances());
    assert_eq!(a.predecessors(), b.predecessors());
    for s in 0..g.n() {
        for t in 0..g.n() {
            assert_eq!(a.path(s, t).ok(), b.path(s, t).ok());
        }
    }
}
