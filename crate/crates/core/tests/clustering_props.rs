//! Cross-checks of the metric clustering pipeline and the bisectable-tree
//! routines against exhaustive oracles.

mod common;

use clusterpants::bisectable::{
    bisection_hierarchy, brute_force_bisectable, is_bisectable, FreeTree,
};
use clusterpants::hierarchy::ClusterHierarchy;
use clusterpants::oracle::{
    all_hierarchies, evaluate_cost, metric_from_graph, optimal_clustering, Objective,
    OracleInstance,
};
use clusterpants::treecluster::{
    best_split_edge, cluster_by_tree_splitting, clustering_cost_mst, entropy_lower_bound,
    entropy_upper_bound, mst_metric, ternarize, WeightedTree,
};
use rand::Rng;

#[test]
fn mst_matches_exhaustive_tree_enumeration() {
    // All 8^6 labeled trees, decoded from Prüfer sequences.
    let mut rng = common::rng(41);
    for _ in 0..4 {
        let m = common::random_dyadic_metric(&mut rng, 8);
        let tree = mst_metric(&m);
        let brute = common::exhaustive_mst_length(&m);
        assert_eq!(tree.total_length(), brute);
    }
}

#[test]
fn ternarize_preserves_length_and_caps_degree() {
    let mut rng = common::rng(42);
    for _ in 0..50 {
        let n = rng.gen_range(2..=20);
        let edges: Vec<(usize, usize, f64)> = common::random_tree_edges(&mut rng, n)
            .into_iter()
            .map(|(u, v)| (u, v, rng.gen_range(0.0..1.0)))
            .collect();
        let t = WeightedTree::new((0..n).map(Some).collect(), edges).unwrap();
        let t_star = ternarize(&t);
        assert!(t_star.max_degree() <= 3);
        assert_eq!(t_star.total_length(), t.total_length());
        assert_eq!(t_star.edges().len(), t_star.n_vertices() - 1);
        // Exactly the original vertices carry site tags.
        let tags = (0..t_star.n_vertices())
            .filter(|&v| t_star.site_of(v).is_some())
            .count();
        assert_eq!(tags, n);
    }
}

#[test]
fn contracting_expansion_edges_recovers_the_tree() {
    // With strictly positive input weights, the zero-length edges of the
    // expanded tree are exactly the chain edges; contracting them and
    // relabeling by site tags must reproduce the original edge multiset.
    let mut rng = common::rng(51);
    for _ in 0..40 {
        let n = rng.gen_range(2..=16);
        let edges: Vec<(usize, usize, f64)> = common::random_tree_edges(&mut rng, n)
            .into_iter()
            .map(|(u, v)| (u, v, rng.gen_range(0.01..1.0)))
            .collect();
        let t = WeightedTree::new((0..n).map(Some).collect(), edges.clone()).unwrap();
        let t_star = ternarize(&t);

        let mut group: Vec<usize> = (0..t_star.n_vertices()).collect();
        fn find(group: &mut Vec<usize>, mut x: usize) -> usize {
            while group[x] != x {
                group[x] = group[group[x]];
                x = group[x];
            }
            x
        }
        for &(u, v, len) in t_star.edges() {
            if len == 0.0 {
                let (ru, rv) = (find(&mut group, u), find(&mut group, v));
                group[ru] = rv;
            }
        }
        // Each contracted component holds exactly one tagged vertex.
        let mut tag_of = vec![usize::MAX; t_star.n_vertices()];
        for v in 0..t_star.n_vertices() {
            if let Some(site) = t_star.site_of(v) {
                let root = find(&mut group, v);
                assert_eq!(tag_of[root], usize::MAX);
                tag_of[root] = site;
            }
        }
        let mut contracted: Vec<(usize, usize, u64)> = t_star
            .edges()
            .iter()
            .filter(|&&(_, _, len)| len > 0.0)
            .map(|&(u, v, len)| {
                let a = tag_of[find(&mut group, u)];
                let b = tag_of[find(&mut group, v)];
                (a.min(b), a.max(b), len.to_bits())
            })
            .collect();
        contracted.sort_unstable();
        let mut original: Vec<(usize, usize, u64)> = edges
            .iter()
            .map(|&(u, v, len)| (u.min(v), u.max(v), len.to_bits()))
            .collect();
        original.sort_unstable();
        assert_eq!(contracted, original);
    }
}

#[test]
fn best_split_matches_exhaustive_scan() {
    let mut rng = common::rng(43);
    for _ in 0..50 {
        let t = common::random_degree3_tree(&mut rng, 20);
        let total = t.total_length();
        let chosen = best_split_edge(&t).unwrap();

        // Exhaustive scan: heavier side per edge by flood fill.
        let heavier_of = |skip: usize| -> f64 {
            let mut side = vec![false; t.n_vertices()];
            let (su, _, _) = t.edges()[skip];
            side[su] = true;
            let mut grew = true;
            while grew {
                grew = false;
                for (e, &(u, v, _)) in t.edges().iter().enumerate() {
                    if e == skip {
                        continue;
                    }
                    if side[u] != side[v] {
                        side[u] = true;
                        side[v] = true;
                        grew = true;
                    }
                }
            }
            let w_side: f64 = t
                .edges()
                .iter()
                .enumerate()
                .filter(|&(e, &(u, _, _))| e != skip && side[u])
                .map(|(_, &(_, _, w))| w)
                .sum();
            let (_, _, skip_w) = t.edges()[skip];
            w_side.max(total - w_side - skip_w)
        };
        let best_by_scan = (0..t.edges().len())
            .map(heavier_of)
            .fold(f64::INFINITY, f64::min);
        let chosen_heavier = heavier_of(chosen);
        assert!(chosen_heavier <= best_by_scan + 1e-12);
        assert!(chosen_heavier <= 2.0 / 3.0 * total + 1e-12);
    }
}

#[test]
fn star_metric_meets_oracle_and_upper_bound() {
    let m = common::star_metric(8);
    let h = cluster_by_tree_splitting(&m);
    let report = clustering_cost_mst(&h, &m).unwrap();
    assert!(report.total_cost <= report.upper_bound + 1e-9);

    let oracle = optimal_clustering(&OracleInstance::Metric(&m), Objective::MstSum).unwrap();
    assert!(oracle.optimal_cost <= report.total_cost + 1e-12);
    assert!(oracle.optimal_cost >= report.lower_bound - 1e-9);
}

#[test]
fn star_cost_grows_like_n_log_n() {
    for n in [8usize, 16, 32, 64, 128] {
        let m = common::star_metric(n);
        let h = cluster_by_tree_splitting(&m);
        let cost = clustering_cost_mst(&h, &m).unwrap().total_cost;
        let normalized = cost / (n as f64 * (n as f64).log2());
        assert!(
            normalized <= 3.5,
            "star cost at n={n} is {cost} ({normalized} per n log n)"
        );
    }
}

#[test]
fn cost_accounting_agrees_with_oracle_evaluator() {
    // Dyadic metrics keep all sums exact, so the two independently written
    // cost paths must agree bit for bit.
    let mut rng = common::rng(44);
    for _ in 0..100 {
        let m = common::random_dyadic_metric(&mut rng, 9);
        let h = cluster_by_tree_splitting(&m);
        let report = clustering_cost_mst(&h, &m).unwrap();
        let via_oracle =
            evaluate_cost(&h, &OracleInstance::Metric(&m), Objective::MstSum).unwrap();
        assert_eq!(report.total_cost, via_oracle);
    }
}

#[test]
fn every_hierarchy_respects_the_entropy_lower_bound() {
    let mut rng = common::rng(45);
    for &n in &[5usize, 6, 7] {
        let m = common::random_dyadic_metric(&mut rng, n);
        let lower = entropy_lower_bound(&m);
        for h in all_hierarchies(n) {
            let cost = evaluate_cost(&h, &OracleInstance::Metric(&m), Objective::MstSum).unwrap();
            assert!(
                cost >= lower - 1e-9,
                "hierarchy of cost {cost} beats the bound {lower}"
            );
        }
    }
}

#[test]
fn splitting_cost_stays_below_upper_bound() {
    let mut rng = common::rng(46);
    for _ in 0..60 {
        let n = rng.gen_range(4..=12);
        let m = if rng.gen() {
            common::random_dyadic_metric(&mut rng, n)
        } else {
            common::random_euclidean_metric(&mut rng, n)
        };
        let h = cluster_by_tree_splitting(&m);
        let cost = clustering_cost_mst(&h, &m).unwrap().total_cost;
        assert!(cost <= entropy_upper_bound(&m) + 1e-9);
        assert!(cost >= entropy_lower_bound(&m) - 1e-9);
    }
}

#[test]
fn tiny_instances_match_the_oracle_exactly() {
    // With at most three points every binary hierarchy pays the same MST
    // cost when the tree is unique, so the splitting algorithm is optimal.
    let mut rng = common::rng(47);
    for _ in 0..50 {
        let n = rng.gen_range(2..=3);
        let m = common::random_dyadic_metric(&mut rng, n);
        let h = cluster_by_tree_splitting(&m);
        let cost = clustering_cost_mst(&h, &m).unwrap().total_cost;
        let oracle = optimal_clustering(&OracleInstance::Metric(&m), Objective::MstSum).unwrap();
        assert_eq!(cost, oracle.optimal_cost);
    }
}

// ---------------------------------------------------------------------------
// bisectable trees
// ---------------------------------------------------------------------------

#[test]
fn exhaustive_free_tree_agreement_up_to_ten_vertices() {
    // Free tree counts: 1, 1, 1, 2, 3, 6, 11, 23, 47, 106 for n = 1..10.
    let expected_counts = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    for n in 1..=10usize {
        let trees = common::all_free_trees(n);
        assert_eq!(trees.len(), expected_counts[n - 1], "free tree count at n={n}");
        for edges in trees {
            let t = FreeTree::new(n, edges).unwrap();
            assert_eq!(
                is_bisectable(&t),
                brute_force_bisectable(&t).unwrap(),
                "disagreement on {:?}",
                t
            );
        }
    }
}

#[test]
fn exactly_three_bisectable_trees_on_eight_vertices() {
    let bisectable = common::all_free_trees(8)
        .into_iter()
        .filter(|edges| is_bisectable(&FreeTree::new(8, edges.clone()).unwrap()))
        .count();
    assert_eq!(bisectable, 3);
}

#[test]
fn bisection_hierarchy_levels_are_connected_halves() {
    let mut rng = common::rng(48);
    let mut found = 0;
    'outer: for _ in 0..4000 {
        let edges = common::random_tree_edges(&mut rng, 16);
        let t = FreeTree::new(16, edges.clone()).unwrap();
        let Some(h) = bisection_hierarchy(&t) else {
            continue;
        };
        found += 1;
        h.validate_partition(16).unwrap();
        let sites = h.node_sites();
        let depths = h.depths();
        for id in 0..h.node_count() {
            // Node at depth j spans exactly 2^(4-j) vertices...
            assert_eq!(sites[id].len(), 16 >> depths[id]);
            // ...and induces a connected subtree.
            let members: Vec<usize> = sites[id].clone();
            let inside =
                |v: usize| members.binary_search(&v).is_ok();
            let mut reach = vec![false; 16];
            reach[members[0]] = true;
            let mut grew = true;
            while grew {
                grew = false;
                for &(u, v) in &edges {
                    if inside(u) && inside(v) && (reach[u] != reach[v]) {
                        reach[u] = true;
                        reach[v] = true;
                        grew = true;
                    }
                }
            }
            assert!(members.iter().all(|&v| reach[v]));
        }
        if found >= 5 {
            break 'outer;
        }
    }
    assert!(found > 0, "no bisectable 16-vertex tree sampled");
}

// ---------------------------------------------------------------------------
// reduction metrics
// ---------------------------------------------------------------------------

/// Whether the graph has a spanning tree that is bisectable, by checking
/// every labeled tree on its vertices.
fn has_bisectable_spanning_tree(n: usize, graph_edges: &[(usize, usize)]) -> bool {
    let is_graph_edge = |u: usize, v: usize| {
        graph_edges.contains(&(u, v)) || graph_edges.contains(&(v, u))
    };
    let mut seqs = vec![vec![]];
    for _ in 0..n.saturating_sub(2) {
        seqs = seqs
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                (0..n).map(move |v| {
                    let mut s2 = s.clone();
                    s2.push(v);
                    s2
                })
            })
            .collect();
    }
    for seq in seqs {
        let edges = if n == 2 {
            vec![(0, 1)]
        } else {
            common::tree_from_prufer(&seq, n)
        };
        if edges.iter().all(|&(u, v)| is_graph_edge(u, v))
            && is_bisectable(&FreeTree::new(n, edges).unwrap())
        {
            return true;
        }
    }
    false
}

#[test]
fn reduction_cost_characterizes_bisectable_subtrees() {
    // On 4 vertices: K = 2·2² − 2² + 1 = 5 is achieved exactly when the
    // graph has a bisectable spanning tree, and exceeded otherwise.
    let mut rng = common::rng(49);
    for trial in 0..40 {
        let edges = common::gnp_edges(&mut rng, 4, 0.2 + 0.02 * trial as f64);
        let m = metric_from_graph(4, &edges).unwrap();
        let opt = optimal_clustering(&OracleInstance::Metric(&m), Objective::MstSum)
            .unwrap()
            .optimal_cost;
        if has_bisectable_spanning_tree(4, &edges) {
            assert_eq!(opt, 5.0);
        } else {
            assert!(opt > 5.0);
        }
    }
}

#[test]
fn oracle_reports_consistent_hierarchy_cost() {
    let mut rng = common::rng(50);
    for _ in 0..20 {
        let n = rng.gen_range(2..=8);
        let m = common::random_dyadic_metric(&mut rng, n);
        let res = optimal_clustering(&OracleInstance::Metric(&m), Objective::MstSum).unwrap();
        let recheck =
            evaluate_cost(&res.hierarchy, &OracleInstance::Metric(&m), Objective::MstSum).unwrap();
        assert_eq!(res.optimal_cost, recheck);
        assert!(res.subsets_evaluated > 0);
    }
}

#[test]
fn zero_length_duplicate_points_are_handled() {
    // Duplicate points give zero-weight MST edges; the limit conventions
    // keep the bounds and the algorithm total consistent.
    let m = clusterpants::DistanceMatrix::from_rows(&[
        vec![0.0, 0.0, 1.0],
        vec![0.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0],
    ])
    .unwrap();
    let h = cluster_by_tree_splitting(&m);
    let report = clustering_cost_mst(&h, &m).unwrap();
    assert_eq!(report.total_cost, 1.0);
    assert_eq!(entropy_lower_bound(&m), 0.5);
    assert_eq!(entropy_upper_bound(&m), 1.0);
    assert!(report.total_cost <= report.upper_bound);

    let all_same = clusterpants::DistanceMatrix::from_fn(4, |_, _| 0.0).unwrap();
    let h = cluster_by_tree_splitting(&all_same);
    let report = clustering_cost_mst(&h, &all_same).unwrap();
    assert_eq!(report.total_cost, 0.0);
    assert_eq!(report.ratio, 1.0);
}

#[test]
fn hierarchy_helpers_round_out() {
    // A join of leaves in scrambled order still partitions the sites.
    let h = ClusterHierarchy::join(
        ClusterHierarchy::leaf(3),
        ClusterHierarchy::join(
            ClusterHierarchy::leaf(0),
            ClusterHierarchy::join(ClusterHierarchy::leaf(2), ClusterHierarchy::leaf(1)),
        ),
    );
    h.validate_partition(4).unwrap();
    assert_eq!(h.cluster_family().len(), 3);
}
