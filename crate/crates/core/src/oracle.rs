//! Exact optimal hierarchical clustering by dynamic programming over
//! subsets, the graph-to-metric reduction generator, and an independent cost
//! evaluator. These are the ground truth the approximation ratios are
//! measured against, so the subset sizes here are computed by their own
//! routines (Prim for subset spanning trees, gift wrapping for hull
//! perimeters) rather than by the modules under test.

use crate::error::{Error, Result};
use crate::geometry::PointE2;
use crate::hierarchy::{ClusterHierarchy, HierarchyNode};
use crate::treecluster::DistanceMatrix;

/// Hard cap for the subset DP: past this point the 2^n tables dominate.
pub const MAX_ORACLE_SITES: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Sum over clusters of the spanning tree length of the cluster.
    MstSum,
    /// Sum over clusters of the convex hull perimeter of the cluster.
    PerimeterSum,
}

/// The instance an oracle run works on.
#[derive(Debug, Clone, Copy)]
pub enum OracleInstance<'a> {
    Metric(&'a DistanceMatrix),
    Euclidean(&'a [PointE2]),
}

impl OracleInstance<'_> {
    pub fn n(&self) -> usize {
        match self {
            OracleInstance::Metric(m) => m.n(),
            OracleInstance::Euclidean(p) => p.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimal_cost: f64,
    pub hierarchy: ClusterHierarchy,
    /// Number of (subset, bipartition) combinations the DP examined.
    pub subsets_evaluated: u64,
}

/// Spanning tree length of the masked subset, by Prim.
fn subset_mst_length(m: &DistanceMatrix, mask: u32) -> f64 {
    let sites: Vec<usize> = (0..m.n()).filter(|&i| mask >> i & 1 == 1).collect();
    let k = sites.len();
    if k < 2 {
        return 0.0;
    }
    let mut in_tree = vec![false; k];
    let mut best = vec![f64::INFINITY; k];
    in_tree[0] = true;
    for a in 1..k {
        best[a] = m.get(sites[0], sites[a]);
    }
    let mut total = 0.0;
    for _ in 1..k {
        let mut pick = usize::MAX;
        for a in 0..k {
            if !in_tree[a] && (pick == usize::MAX || best[a] < best[pick]) {
                pick = a;
            }
        }
        total += best[pick];
        in_tree[pick] = true;
        for a in 0..k {
            if !in_tree[a] {
                let d = m.get(sites[pick], sites[a]);
                if d < best[a] {
                    best[a] = d;
                }
            }
        }
    }
    total
}

/// Convex hull perimeter of the masked subset by gift wrapping, with the
/// degenerate conventions: singletons cost 0, collinear sets twice their
/// extent.
fn subset_hull_perimeter(points: &[PointE2], mask: u32) -> f64 {
    let mut pts: Vec<PointE2> = (0..points.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| points[i])
        .collect();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 2 {
        return 0.0;
    }
    let dist = |a: PointE2, b: PointE2| (a.x - b.x).hypot(a.y - b.y);
    let cross = |o: PointE2, a: PointE2, b: PointE2| {
        (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
    };
    let collinear = pts
        .iter()
        .all(|&p| cross(pts[0], pts[pts.len() - 1], p) == 0.0);
    if collinear {
        let mut extent: f64 = 0.0;
        for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                extent = extent.max(dist(pts[i], pts[j]));
            }
        }
        return 2.0 * extent;
    }
    // Gift wrapping from the lexicographically smallest point.
    let start = 0;
    let mut perimeter = 0.0;
    let mut cur = start;
    loop {
        let mut next = if cur == 0 { 1 } else { 0 };
        for cand in 0..pts.len() {
            if cand == cur {
                continue;
            }
            let turn = cross(pts[cur], pts[next], pts[cand]);
            if turn < 0.0 || (turn == 0.0 && dist(pts[cur], pts[cand]) > dist(pts[cur], pts[next]))
            {
                next = cand;
            }
        }
        perimeter += dist(pts[cur], pts[next]);
        cur = next;
        if cur == start {
            break;
        }
    }
    perimeter
}

fn subset_size(inst: &OracleInstance, objective: Objective, mask: u32) -> f64 {
    match (inst, objective) {
        (OracleInstance::Metric(m), Objective::MstSum) => subset_mst_length(m, mask),
        (OracleInstance::Euclidean(p), Objective::MstSum) => {
            let m = DistanceMatrix::from_euclidean_points(p).expect("euclidean metric");
            subset_mst_length(&m, mask)
        }
        (OracleInstance::Euclidean(p), Objective::PerimeterSum) => {
            subset_hull_perimeter(p, mask)
        }
        (OracleInstance::Metric(_), Objective::PerimeterSum) => {
            unreachable!("checked before the DP starts")
        }
    }
}

/// Exact minimum-cost hierarchy over all binary hierarchies by subset DP:
/// `cost(S) = size(S) + min over proper bipartitions (A, S∖A) of
/// cost(A) + cost(S∖A)` with singletons free. Runs in `O(3^n)` partition
/// evaluations and is capped at [`MAX_ORACLE_SITES`] sites.
pub fn optimal_clustering(inst: &OracleInstance, objective: Objective) -> Result<OracleResult> {
    let n = inst.n();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if n > MAX_ORACLE_SITES {
        return Err(Error::TooManyPoints {
            limit: MAX_ORACLE_SITES,
            got: n,
        });
    }
    if matches!(
        (inst, objective),
        (OracleInstance::Metric(_), Objective::PerimeterSum)
    ) {
        return Err(Error::ObjectiveMismatch);
    }

    // For Euclidean MST costs, evaluate through one shared metric.
    let euclid_metric = match (inst, objective) {
        (OracleInstance::Euclidean(p), Objective::MstSum) => {
            Some(DistanceMatrix::from_euclidean_points(p)?)
        }
        _ => None,
    };
    let size_of_mask = |mask: u32| -> f64 {
        if let Some(m) = &euclid_metric {
            subset_mst_length(m, mask)
        } else {
            subset_size(inst, objective, mask)
        }
    };

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut cost = vec![0.0f64; 1 << n];
    let mut split = vec![0u32; 1 << n];
    let mut pairs: u64 = 0;
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut best = f64::INFINITY;
        let mut best_a = 0u32;
        // Every bipartition once: the side containing the lowest site ranges
        // over the submasks of the rest.
        let mut s = rest;
        loop {
            if s != rest {
                let a = low | s;
                let b = mask ^ a;
                pairs += 1;
                let c = cost[a as usize] + cost[b as usize];
                if c < best {
                    best = c;
                    best_a = a;
                }
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & rest;
        }
        cost[mask as usize] = size_of_mask(mask) + best;
        split[mask as usize] = best_a;
    }

    fn rebuild(mask: u32, split: &[u32]) -> ClusterHierarchy {
        if mask.count_ones() == 1 {
            return ClusterHierarchy::leaf(mask.trailing_zeros() as usize);
        }
        let a = split[mask as usize];
        ClusterHierarchy::join(rebuild(a, split), rebuild(mask ^ a, split))
    }

    let hierarchy = if n == 1 {
        ClusterHierarchy::leaf(0)
    } else {
        rebuild(full, &split)
    };
    Ok(OracleResult {
        optimal_cost: cost[full as usize],
        hierarchy,
        subsets_evaluated: pairs,
    })
}

/// The metric of the hardness reduction: distance one across graph edges,
/// two otherwise. Such 1/2-valued matrices always satisfy the triangle
/// inequality.
pub fn metric_from_graph(n: usize, edges: &[(usize, usize)]) -> Result<DistanceMatrix> {
    if n == 0 {
        return Err(Error::InvalidGraph("graph has no vertices".into()));
    }
    let mut adjacent = vec![false; n * n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self loop at {u}")));
        }
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }
    DistanceMatrix::from_fn(n, |i, j| if adjacent[i * n + j] { 1.0 } else { 2.0 })
}

/// Cost of an arbitrary hierarchy under either objective, recomputed with the
/// oracle's own size routines. Serves as a cross-check for the accounting in
/// the clustering modules.
pub fn evaluate_cost(
    h: &ClusterHierarchy,
    inst: &OracleInstance,
    objective: Objective,
) -> Result<f64> {
    let n = inst.n();
    if n > 32 {
        return Err(Error::TooManyPoints { limit: 32, got: n });
    }
    h.validate_partition(n)
        .map_err(|e| Error::HierarchyMismatch(e.to_string()))?;
    if matches!(
        (inst, objective),
        (OracleInstance::Metric(_), Objective::PerimeterSum)
    ) {
        return Err(Error::ObjectiveMismatch);
    }
    let euclid_metric = match (inst, objective) {
        (OracleInstance::Euclidean(p), Objective::MstSum) => {
            Some(DistanceMatrix::from_euclidean_points(p)?)
        }
        _ => None,
    };

    fn eval(
        h: &ClusterHierarchy,
        id: usize,
        inst: &OracleInstance,
        objective: Objective,
        euclid_metric: &Option<DistanceMatrix>,
    ) -> (f64, u32) {
        match h.node(id) {
            HierarchyNode::Leaf { site } => (0.0, 1 << site),
            HierarchyNode::Internal { left, right } => {
                let (cl, ml) = eval(h, left, inst, objective, euclid_metric);
                let (cr, mr) = eval(h, right, inst, objective, euclid_metric);
                let mask = ml | mr;
                let size = if let Some(m) = euclid_metric {
                    subset_mst_length(m, mask)
                } else {
                    subset_size(inst, objective, mask)
                };
                (size + (cl + cr), mask)
            }
        }
    }
    Ok(eval(h, h.root(), inst, objective, &euclid_metric).0)
}

/// Every binary hierarchy over `n` labeled sites, built by inserting each
/// new leaf at every possible position. There are (2n−3)!! of them, so keep
/// n small.
pub fn all_hierarchies(n: usize) -> Vec<ClusterHierarchy> {
    #[derive(Clone)]
    enum Tree {
        Leaf(usize),
        Node(Box<Tree>, Box<Tree>),
    }
    fn inserted(t: &Tree, leaf: usize) -> Vec<Tree> {
        let mut out = vec![Tree::Node(Box::new(t.clone()), Box::new(Tree::Leaf(leaf)))];
        if let Tree::Node(l, r) = t {
            for l2 in inserted(l, leaf) {
                out.push(Tree::Node(Box::new(l2), r.clone()));
            }
            for r2 in inserted(r, leaf) {
                out.push(Tree::Node(l.clone(), Box::new(r2)));
            }
        }
        out
    }
    fn convert(t: &Tree) -> ClusterHierarchy {
        match t {
            Tree::Leaf(site) => ClusterHierarchy::leaf(*site),
            Tree::Node(l, r) => ClusterHierarchy::join(convert(l), convert(r)),
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut trees = vec![Tree::Leaf(0)];
    for leaf in 1..n {
        trees = trees.iter().flat_map(|t| inserted(t, leaf)).collect();
    }
    trees.iter().map(convert).collect()
}
