//! Shared generators and independent oracles for the integration suites.
//! Everything here is brute force on purpose: these routines are the ground
//! truth the library is checked against, so they avoid the library's own
//! algorithmic paths.

#![allow(dead_code)]

use clusterpants::geometry::{hyperbolic_distance, PointE2, PointH2};
use clusterpants::treecluster::DistanceMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// instance generators
// ---------------------------------------------------------------------------

pub fn random_unit_square(rng: &mut ChaCha8Rng, n: usize) -> Vec<PointE2> {
    (0..n)
        .map(|_| PointE2::new(rng.gen::<f64>(), rng.gen::<f64>()))
        .collect()
}

/// Random metric with entries in [1, 2] on a 1/64 grid. Values in [1, 2]
/// always satisfy the triangle inequality, and the dyadic grid keeps every
/// cost sum exactly representable, so cross-implementation comparisons can
/// demand bit equality.
pub fn random_dyadic_metric(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
    DistanceMatrix::from_fn(n, |_, _| 1.0 + rng.gen_range(0..=64) as f64 / 64.0).unwrap()
}

/// Euclidean-induced random metric.
pub fn random_euclidean_metric(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
    DistanceMatrix::from_euclidean_points(&random_unit_square(rng, n)).unwrap()
}

/// Unit star metric K_{1,n-1}: distance 1 to the hub, 2 between leaves.
pub fn star_metric(n: usize) -> DistanceMatrix {
    DistanceMatrix::from_fn(n, |i, j| if i == 0 || j == 0 { 1.0 } else { 2.0 }).unwrap()
}

pub fn gnp_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Area-uniform random points in the hyperbolic disk of radius `r`.
pub fn random_hyperbolic_disk(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vec<PointH2> {
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let t = (1.0 + u * (r.cosh() - 1.0)).acosh();
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            let rho = (t / 2.0).tanh();
            PointH2::new(rho * theta.cos(), rho * theta.sin()).unwrap()
        })
        .collect()
}

/// Greedily filtered point set with pairwise hyperbolic distances >= delta.
pub fn separated_hyperbolic_set(
    rng: &mut ChaCha8Rng,
    candidates: usize,
    radius: f64,
    delta: f64,
) -> Vec<PointH2> {
    let mut kept: Vec<PointH2> = Vec::new();
    for p in random_hyperbolic_disk(rng, candidates, radius) {
        if kept.iter().all(|q| hyperbolic_distance(*q, p) >= delta) {
            kept.push(p);
        }
    }
    kept
}

/// Random labeled tree on n vertices from a uniform random Prüfer sequence.
pub fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    tree_from_prufer(&seq, n)
}

/// Decode a Prüfer sequence into its labeled tree.
pub fn tree_from_prufer(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    assert_eq!(seq.len() + 2, n);
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut it = leaves.into_iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    edges.push((a.min(b), a.max(b)));
    edges
}

/// Random weighted tree with maximum degree three, grown by attaching each
/// vertex to a uniformly chosen vertex of residual degree.
pub fn random_degree3_tree(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> clusterpants::treecluster::WeightedTree {
    let mut degree = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < 3).collect();
        let u = open[rng.gen_range(0..open.len())];
        let w = rng.gen_range(0.01..1.0);
        edges.push((u, v, w));
        degree[u] += 1;
        degree[v] += 1;
    }
    clusterpants::treecluster::WeightedTree::new((0..n).map(Some).collect(), edges).unwrap()
}

// ---------------------------------------------------------------------------
// exhaustive oracles
// ---------------------------------------------------------------------------

/// Minimum spanning tree length by enumerating all n^(n-2) labeled trees
/// through their Prüfer sequences.
pub fn exhaustive_mst_length(m: &DistanceMatrix) -> f64 {
    let n = m.n();
    assert!(n >= 2);
    if n == 2 {
        return m.get(0, 1);
    }
    let mut best = f64::INFINITY;
    let mut seq = vec![0usize; n - 2];
    loop {
        let weight: f64 = tree_from_prufer(&seq, n)
            .iter()
            .map(|&(u, v)| m.get(u, v))
            .sum();
        if weight < best {
            best = weight;
        }
        // Odometer over the sequence.
        let mut pos = 0;
        loop {
            if pos == seq.len() {
                return best;
            }
            seq[pos] += 1;
            if seq[pos] < n {
                break;
            }
            seq[pos] = 0;
            pos += 1;
        }
    }
}

/// All free trees on n vertices up to isomorphism, grown leaf by leaf and
/// deduplicated by a canonical form rooted at the centroid.
pub fn all_free_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 1);
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()]; // single vertex
    for size in 1..n {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut next: Vec<Vec<(usize, usize)>> = Vec::new();
        for tree in &level {
            for attach in 0..size {
                let mut edges = tree.clone();
                edges.push((attach, size));
                let canon = free_tree_canonical(size + 1, &edges);
                if seen.insert(canon) {
                    next.push(edges);
                }
            }
        }
        level = next;
    }
    level
}

/// Canonical string of a free tree: the lexicographically smallest canonical
/// rooted form over its one or two centroids.
pub fn free_tree_canonical(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    centroids(n, &adj)
        .into_iter()
        .map(|c| rooted_canonical(&adj, c, usize::MAX))
        .min()
        .unwrap()
}

fn rooted_canonical(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_canonical(adj, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

fn centroids(n: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut size = vec![0usize; n];
    let mut max_comp = vec![0usize; n];
    fn dfs(adj: &[Vec<usize>], v: usize, parent: usize, size: &mut [usize], max_comp: &mut [usize], n: usize) {
        size[v] = 1;
        max_comp[v] = 0;
        for &w in &adj[v] {
            if w != parent {
                dfs(adj, w, v, size, max_comp, n);
                size[v] += size[w];
                max_comp[v] = max_comp[v].max(size[w]);
            }
        }
        max_comp[v] = max_comp[v].max(n - size[v]);
    }
    dfs(adj, 0, usize::MAX, &mut size, &mut max_comp, n);
    let best = (0..n).map(|v| max_comp[v]).min().unwrap();
    (0..n).filter(|&v| max_comp[v] == best).collect()
}

// ---------------------------------------------------------------------------
// misc checks
// ---------------------------------------------------------------------------

/// Distance from a point to a convex hull boundary given as a vertex cycle,
/// written out inline so the check shares nothing with the library.
pub fn point_to_hull_boundary(p: PointE2, hull: &[PointE2]) -> f64 {
    let seg_dist = |p: PointE2, a: PointE2, b: PointE2| -> f64 {
        let (abx, aby) = (b.x - a.x, b.y - a.y);
        let len2 = abx * abx + aby * aby;
        if len2 == 0.0 {
            return (p.x - a.x).hypot(p.y - a.y);
        }
        let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
        (p.x - (a.x + t * abx)).hypot(p.y - (a.y + t * aby))
    };
    match hull.len() {
        0 => f64::INFINITY,
        1 => (p.x - hull[0].x).hypot(p.y - hull[0].y),
        2 => seg_dist(p, hull[0], hull[1]),
        m => (0..m)
            .map(|i| seg_dist(p, hull[i], hull[(i + 1) % m]))
            .fold(f64::INFINITY, f64::min),
    }
}

/// Dense-boundary-sampling lower-bound oracle for the gap between two hulls:
/// walk one boundary at the given step, measure each sample against the other
/// boundary exactly, and take the minimum over both directions.
pub fn sampled_hull_gap(a: &[PointE2], b: &[PointE2], step: f64) -> f64 {
    let mut best = f64::INFINITY;
    for (from, to) in [(a, b), (b, a)] {
        for p in boundary_samples(from, step) {
            best = best.min(point_to_hull_boundary(p, to));
        }
    }
    best
}

fn boundary_samples(hull: &[PointE2], step: f64) -> Vec<PointE2> {
    if hull.len() == 1 {
        return vec![hull[0]];
    }
    let closed: Vec<(PointE2, PointE2)> = if hull.len() == 2 {
        vec![(hull[0], hull[1])]
    } else {
        (0..hull.len())
            .map(|i| (hull[i], hull[(i + 1) % hull.len()]))
            .collect()
    };
    let mut out = Vec::new();
    for (a, b) in closed {
        let len = (a.x - b.x).hypot(a.y - b.y);
        let pieces = (len / step).ceil().max(1.0) as usize;
        for t in 0..=pieces {
            let f = t as f64 / pieces as f64;
            out.push(PointE2::new(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)));
        }
    }
    out
}
