//! Hierarchical clustering of a finite metric by recursive balanced splitting
//! of its minimum spanning tree, with the entropy-style lower and upper
//! bounds that certify the constant approximation ratio.
//!
//! Pipeline: build the MST, expand every vertex to degree at most three with
//! zero-length edges, then repeatedly remove the edge that minimizes the
//! heavier of the two remaining subtree weights. Each split leaves at most
//! 2/3 of the weight on either side, which is what drives the bounds.

use crate::error::{Error, Result};
use crate::geometry::{euclidean_distance, hyperbolic_distance, PointE2, PointH2};
use crate::hierarchy::{ClusterHierarchy, CostReport};

/// A finite metric space given by its symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix is empty".into()));
        }
        let mut d = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {v} is not a finite nonnegative value"
                    )));
                }
                d[i * n + j] = v;
            }
        }
        for i in 0..n {
            if d[i * n + i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if d[i * n + j] != d[j * n + i] {
                    return Err(Error::InvalidMatrix(format!(
                        "asymmetric entries at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { n, d })
    }

    /// Build from a symmetric function of index pairs.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("matrix is empty".into()));
        }
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = f(i, j);
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {v} is not a finite nonnegative value"
                    )));
                }
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Ok(Self { n, d })
    }

    pub fn from_euclidean_points(points: &[PointE2]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| euclidean_distance(points[i], points[j]))
    }

    pub fn from_hyperbolic_points(points: &[PointH2]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| {
            hyperbolic_distance(points[i], points[j])
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }

    /// Restriction of the metric to a subset of its points.
    pub fn restrict(&self, sites: &[usize]) -> DistanceMatrix {
        let k = sites.len();
        let mut d = vec![0.0; k * k];
        for a in 0..k {
            for b in 0..k {
                d[a * k + b] = self.get(sites[a], sites[b]);
            }
        }
        DistanceMatrix { n: k, d }
    }
}

/// A tree with nonnegative edge lengths. Vertices optionally carry the index
/// of the original site they stand for; expansion vertices added by
/// [`ternarize`] carry none.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTree {
    site_tags: Vec<Option<usize>>,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedTree {
    pub fn new(site_tags: Vec<Option<usize>>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let n = site_tags.len();
        if n == 0 {
            return Err(Error::InvalidTree("tree has no vertices".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for &(u, v, len) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) out of range")));
            }
            if !len.is_finite() || len < 0.0 {
                return Err(Error::InvalidTree(format!(
                    "edge ({u}, {v}) has invalid length {len}"
                )));
            }
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            if ru == rv {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) closes a cycle")));
            }
            uf[ru] = rv;
        }
        Ok(Self { site_tags, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.site_tags.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn site_of(&self, v: usize) -> Option<usize> {
        self.site_tags[v]
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b, _)| a == v || b == v)
            .count()
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n_vertices()];
        for &(u, v, _) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Neighbors of each vertex as `(edge index, neighbor)`, in the order the
    /// edges appear in the edge list.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n_vertices()];
        for (e, &(u, v, _)) in self.edges.iter().enumerate() {
            adj[u].push((e, v));
            adj[v].push((e, u));
        }
        adj
    }
}

/// Minimum spanning tree of the metric, with deterministic lexicographic
/// tie-breaking on `(length, min index, max index)` so repeated runs agree.
pub fn mst_metric(m: &DistanceMatrix) -> WeightedTree {
    let n = m.n();
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    pairs.sort_by(|&(a, b), &(c, d)| {
        m.get(a, b)
            .total_cmp(&m.get(c, d))
            .then(a.cmp(&c))
            .then(b.cmp(&d))
    });
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (i, j) in pairs {
        let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
        if ri != rj {
            uf[ri] = rj;
            edges.push((i, j, m.get(i, j)));
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    WeightedTree {
        site_tags: (0..n).map(Some).collect(),
        edges,
    }
}

/// Expand every vertex of degree above three into a chain of vertices joined
/// by zero-length edges. Neighbors are grouped consecutively in the given
/// per-vertex order (the first chain vertex keeps the original identity and
/// its first two neighbors).
pub fn ternarize_with_orders(t: &WeightedTree, orders: &[Vec<usize>]) -> WeightedTree {
    let n = t.n_vertices();
    let mut site_tags = t.site_tags.clone();

    // chain[v] = vertex ids of the expansion chain of v (first is v itself).
    let mut chain: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut zero_edges: Vec<(usize, usize, f64)> = Vec::new();
    for v in 0..n {
        let deg = orders[v].len();
        if deg > 3 {
            for _ in 0..deg - 3 {
                let fresh = site_tags.len();
                site_tags.push(None);
                zero_edges.push((*chain[v].last().unwrap(), fresh, 0.0));
                chain[v].push(fresh);
            }
        }
    }

    // Which chain vertex of v hosts its k-th neighbor.
    let slot = |v: usize, k: usize| -> usize {
        let deg = orders[v].len();
        if deg <= 3 {
            return chain[v][0];
        }
        let c = if k <= 1 {
            0
        } else if k >= deg - 2 {
            deg - 3
        } else {
            k - 1
        };
        chain[v][c]
    };

    let mut position = vec![std::collections::HashMap::new(); n];
    for v in 0..n {
        for (k, &w) in orders[v].iter().enumerate() {
            position[v].insert(w, k);
        }
    }

    let mut edges = Vec::with_capacity(t.edges.len() + zero_edges.len());
    for &(u, v, len) in &t.edges {
        edges.push((slot(u, position[u][&v]), slot(v, position[v][&u]), len));
    }
    edges.extend(zero_edges);

    WeightedTree { site_tags, edges }
}

/// [`ternarize_with_orders`] with neighbors taken in edge-list order.
pub fn ternarize(t: &WeightedTree) -> WeightedTree {
    let orders: Vec<Vec<usize>> = t
        .adjacency()
        .into_iter()
        .map(|nbrs| nbrs.into_iter().map(|(_, w)| w).collect())
        .collect();
    ternarize_with_orders(t, &orders)
}

/// The live edge whose removal minimizes the heavier side weight, returned
/// as `(edge index, heavier side weight)`. Ties go to the smallest edge
/// index; `edge_ids` must be ascending and nonempty.
fn best_split_in(t: &WeightedTree, edge_ids: &[usize], subtree_weight: f64) -> (usize, f64) {
    // Root the subtree anywhere and accumulate the weight hanging below each
    // live edge with one traversal.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.n_vertices()];
    for &e in edge_ids {
        let (u, v, _) = t.edges[e];
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    let root = t.edges[edge_ids[0]].0;

    // weight_below[e] = total edge length strictly on the far side of e as
    // seen from the root, e itself excluded.
    let mut weight_below = vec![0.0f64; t.edges.len()];
    let mut visited = vec![false; t.n_vertices()];
    let mut stack = vec![(root, usize::MAX)];
    let mut order: Vec<(usize, usize)> = Vec::new(); // (vertex, incoming edge)
    visited[root] = true;
    while let Some((v, in_edge)) = stack.pop() {
        order.push((v, in_edge));
        for &(e, w) in &adj[v] {
            if !visited[w] {
                visited[w] = true;
                stack.push((w, e));
            }
        }
    }
    let mut acc = vec![0.0f64; t.n_vertices()];
    for &(v, in_edge) in order.iter().rev() {
        if in_edge != usize::MAX {
            let (_, _, len) = t.edges[in_edge];
            weight_below[in_edge] = acc[v];
            let parent_side = {
                let (a, b, _) = t.edges[in_edge];
                if a == v {
                    b
                } else {
                    a
                }
            };
            acc[parent_side] += acc[v] + len;
        }
    }

    let mut best: Option<(usize, f64)> = None;
    for &e in edge_ids {
        let (_, _, len) = t.edges[e];
        let side = weight_below[e];
        let other = subtree_weight - side - len;
        let heavier = side.max(other);
        match best {
            Some((be, bh)) if bh < heavier || (bh == heavier && be < e) => {}
            _ => best = Some((e, heavier)),
        }
    }
    best.expect("subtree has at least one edge")
}

/// The edge whose removal minimizes the heavier of the two resulting subtree
/// weights. For trees of maximum degree three this heavier side carries at
/// most 2/3 of the total weight.
pub fn best_split_edge(t: &WeightedTree) -> Result<usize> {
    if t.edges.is_empty() {
        return Err(Error::EdgelessTree);
    }
    let edge_ids: Vec<usize> = (0..t.edges.len()).collect();
    let (e, _) = best_split_in(t, &edge_ids, t.total_length());
    Ok(e)
}

/// Recursive balanced splitting of an already degree-≤3 tree. Input points
/// are assigned to clusters through the vertex site tags; the anonymous
/// expansion vertices simply follow their side of each split.
pub fn split_tree_hierarchy(t_star: &WeightedTree) -> ClusterHierarchy {
    let members = vec![true; t_star.n_vertices()];
    let edge_ids: Vec<usize> = (0..t_star.edges.len()).collect();
    split_recurse(t_star, members, edge_ids)
}

fn split_recurse(t: &WeightedTree, members: Vec<bool>, edge_ids: Vec<usize>) -> ClusterHierarchy {
    let tags: Vec<usize> = members
        .iter()
        .enumerate()
        .filter_map(|(v, &m)| if m { t.site_tags[v] } else { None })
        .collect();
    assert!(!tags.is_empty(), "recursed into a subtree without sites");
    if tags.len() == 1 {
        return ClusterHierarchy::leaf(tags[0]);
    }

    let weight: f64 = edge_ids.iter().map(|&e| t.edges[e].2).sum();
    let (split, heavier) = best_split_in(t, &edge_ids, weight);
    // Balanced-separator guarantee for degree-≤3 trees.
    assert!(
        heavier <= (2.0 / 3.0) * weight + 1e-9 * weight.max(1.0),
        "split leaves {heavier} of {weight} on one side"
    );

    // Partition vertices by a traversal that avoids the split edge.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); t.n_vertices()];
    for &e in &edge_ids {
        if e == split {
            continue;
        }
        let (u, v, _) = t.edges[e];
        adj[u].push((e, v));
        adj[v].push((e, u));
    }
    let (su, sv, _) = t.edges[split];
    let seed = su.min(sv);
    let mut side_a = vec![false; t.n_vertices()];
    let mut stack = vec![seed];
    side_a[seed] = true;
    while let Some(v) = stack.pop() {
        for &(_, w) in &adj[v] {
            if !side_a[w] {
                side_a[w] = true;
                stack.push(w);
            }
        }
    }

    let mut members_a = vec![false; t.n_vertices()];
    let mut members_b = vec![false; t.n_vertices()];
    for v in 0..t.n_vertices() {
        if members[v] {
            if side_a[v] {
                members_a[v] = true;
            } else {
                members_b[v] = true;
            }
        }
    }
    let mut edges_a = Vec::new();
    let mut edges_b = Vec::new();
    for &e in &edge_ids {
        if e == split {
            continue;
        }
        if side_a[t.edges[e].0] {
            edges_a.push(e);
        } else {
            edges_b.push(e);
        }
    }

    // Deep in the recursion a side may consist only of anonymous expansion
    // vertices separated from their tagged copies. Such a side holds no
    // input points and forms no cluster: the split discards it and the
    // remaining side carries on.
    let tags_in = |members: &[bool]| {
        members
            .iter()
            .enumerate()
            .any(|(v, &m)| m && t.site_tags[v].is_some())
    };
    match (tags_in(&members_a), tags_in(&members_b)) {
        (true, true) => ClusterHierarchy::join(
            split_recurse(t, members_a, edges_a),
            split_recurse(t, members_b, edges_b),
        ),
        (true, false) => split_recurse(t, members_a, edges_a),
        (false, true) => split_recurse(t, members_b, edges_b),
        (false, false) => unreachable!("parent subtree held at least two sites"),
    }
}

/// Cluster a metric by recursive balanced splitting of its MST.
pub fn cluster_by_tree_splitting(m: &DistanceMatrix) -> ClusterHierarchy {
    let t = mst_metric(m);
    let t_star = ternarize(&t);
    split_tree_hierarchy(&t_star)
}

pub(crate) fn mst_length_of_subset(m: &DistanceMatrix, sites: &[usize]) -> f64 {
    if sites.len() < 2 {
        return 0.0;
    }
    // Prim over the restricted metric.
    let k = sites.len();
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

/// Sum over all clusters (root included) of the MST length of the cluster's
/// sites, plus the entropy bounds of the instance.
pub fn clustering_cost_mst(h: &ClusterHierarchy, m: &DistanceMatrix) -> Result<CostReport> {
    h.validate_partition(m.n())
        .map_err(|e| Error::HierarchyMismatch(e.to_string()))?;
    let sites = h.node_sites();
    let depths = h.depths();
    let mut level_costs: Vec<f64> = Vec::new();
    let mut total = 0.0;
    for id in h.internal_ids() {
        let cost = mst_length_of_subset(m, &sites[id]);
        total += cost;
        let d = depths[id];
        if level_costs.len() <= d {
            level_costs.resize(d + 1, 0.0);
        }
        level_costs[d] += cost;
    }
    let lower = entropy_lower_bound(m);
    let upper = entropy_upper_bound(m);
    Ok(CostReport {
        total_cost: total,
        level_costs,
        lower_bound: lower,
        upper_bound: upper,
        ratio: CostReport::ratio_of(total, lower),
    })
}

fn mst_weights_descending(m: &DistanceMatrix) -> Vec<f64> {
    let mut w: Vec<f64> = mst_metric(m).edges.iter().map(|e| e.2).collect();
    w.sort_by(|a, b| b.total_cmp(a));
    w
}

/// `Σ ½ wᵢ (1 + log₂(W/wᵢ))` over the descending MST edge weights: a floor
/// under the cost of every hierarchical clustering of the metric. Zero
/// weights contribute zero (limit convention).
pub fn entropy_lower_bound(m: &DistanceMatrix) -> f64 {
    let w = mst_weights_descending(m);
    let total: f64 = w.iter().sum();
    w.iter()
        .filter(|&&wi| wi > 0.0)
        .map(|&wi| 0.5 * wi * (1.0 + (total / wi).log2()))
        .sum()
}

/// `Σ wᵢ (1 + log_{3/2}(W/wᵢ))`: a ceiling over the cost of the splitting
/// algorithm's output.
pub fn entropy_upper_bound(m: &DistanceMatrix) -> f64 {
    let w = mst_weights_descending(m);
    let total: f64 = w.iter().sum();
    let log32 = 1.5f64.ln();
    w.iter()
        .filter(|&&wi| wi > 0.0)
        .map(|&wi| wi * (1.0 + (total / wi).ln() / log32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn path_metric(positions: &[f64]) -> DistanceMatrix {
        DistanceMatrix::from_fn(positions.len(), |i, j| (positions[i] - positions[j]).abs())
            .unwrap()
    }

    /// 1/2-metric of an unweighted graph: adjacent pairs at distance one.
    fn graph_metric(n: usize, edges: &[(usize, usize)]) -> DistanceMatrix {
        DistanceMatrix::from_fn(n, |i, j| {
            if edges.contains(&(i, j)) || edges.contains(&(j, i)) {
                1.0
            } else {
                2.0
            }
        })
        .unwrap()
    }

    #[test]
    fn matrix_validation() {
        assert!(DistanceMatrix::from_rows(&[]).is_err());
        assert!(DistanceMatrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
        assert!(DistanceMatrix::from_rows(&[vec![1.0]]).is_err());
        let m = DistanceMatrix::from_rows(&[vec![0.0, 3.0], vec![3.0, 0.0]]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
    }

    #[test]
    fn mst_trivial_cases() {
        let m = DistanceMatrix::from_rows(&[vec![0.0]]).unwrap();
        let t = mst_metric(&m);
        assert_eq!(t.n_vertices(), 1);
        assert_eq!(t.edges().len(), 0);
        assert_eq!(t.total_length(), 0.0);

        // Three collinear points at 0, 1, 2: two unit edges.
        let m = path_metric(&[0.0, 1.0, 2.0]);
        let t = mst_metric(&m);
        assert_eq!(t.edges().len(), 2);
        assert_relative_eq!(t.total_length(), 2.0);
        assert!(t.edges().iter().all(|e| e.2 == 1.0));
    }

    #[test]
    fn mst_tie_breaking_is_lexicographic() {
        // All distances equal: the lexicographically first edges win, which
        // makes the MST the star centered at vertex 0.
        let m = DistanceMatrix::from_fn(5, |_, _| 1.0).unwrap();
        let t = mst_metric(&m);
        let expected: Vec<(usize, usize, f64)> =
            (1..5).map(|v| (0, v, 1.0)).collect();
        assert_eq!(t.edges(), expected.as_slice());
    }

    #[test]
    fn ternarize_path_unchanged() {
        let m = path_metric(&[0.0, 1.0, 2.0, 3.5]);
        let t = mst_metric(&m);
        let t_star = ternarize(&t);
        assert_eq!(t_star.n_vertices(), t.n_vertices());
        assert_eq!(t_star.edges().len(), t.edges().len());
        assert_relative_eq!(t_star.total_length(), t.total_length());
    }

    #[test]
    fn ternarize_star_k14() {
        // Center 0 with four unit spokes.
        let t = WeightedTree::new(
            vec![Some(0), Some(1), Some(2), Some(3), Some(4)],
            vec![(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0), (0, 4, 1.0)],
        )
        .unwrap();
        let t_star = ternarize(&t);
        assert_eq!(t_star.n_vertices(), 6);
        assert_eq!(t_star.max_degree(), 3);
        assert_relative_eq!(t_star.total_length(), 4.0);
        // The split pair is joined by a zero-length edge and both halves have
        // degree three.
        let zero_edges: Vec<_> = t_star.edges().iter().filter(|e| e.2 == 0.0).collect();
        assert_eq!(zero_edges.len(), 1);
        let (a, b, _) = *zero_edges[0];
        assert_eq!(t_star.degree(a), 3);
        assert_eq!(t_star.degree(b), 3);
        // Exactly one of the two carries the original identity.
        assert_eq!(t_star.site_of(a), Some(0));
        assert_eq!(t_star.site_of(b), None);
    }

    #[test]
    fn best_split_examples() {
        // Path of three unit edges: the middle edge wins with max side 1.
        let t = WeightedTree::new(
            vec![Some(0), Some(1), Some(2), Some(3)],
            vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)],
        )
        .unwrap();
        assert_eq!(best_split_edge(&t).unwrap(), 1);

        // Two-edge path with weights (1, 2): cutting the heavy edge leaves
        // max side 1 and beats cutting the light edge (max side 2).
        let t = WeightedTree::new(
            vec![Some(0), Some(1), Some(2)],
            vec![(0, 1, 1.0), (1, 2, 2.0)],
        )
        .unwrap();
        assert_eq!(best_split_edge(&t).unwrap(), 1);

        let single = WeightedTree::new(vec![Some(0)], vec![]).unwrap();
        assert_eq!(best_split_edge(&single), Err(Error::EdgelessTree));
    }

    #[test]
    fn cluster_tiny_inputs() {
        let m = DistanceMatrix::from_rows(&[vec![0.0]]).unwrap();
        let h = cluster_by_tree_splitting(&m);
        assert_eq!(h.n_sites(), 1);
        assert!(h.is_leaf(h.root()));

        let m = DistanceMatrix::from_rows(&[vec![0.0, 2.0], vec![2.0, 0.0]]).unwrap();
        let h = cluster_by_tree_splitting(&m);
        assert_eq!(h.internal_ids().count(), 1);
        let report = clustering_cost_mst(&h, &m).unwrap();
        assert_relative_eq!(report.total_cost, 2.0);
    }

    #[test]
    fn path_graph_reduction_cost() {
        // 4-vertex path graph under the 1/2-metric, bisected along the path:
        // K = 2·2² − 2² + 1 = 5.
        let m = graph_metric(4, &[(0, 1), (1, 2), (2, 3)]);
        let h = ClusterHierarchy::join(
            ClusterHierarchy::join(ClusterHierarchy::leaf(0), ClusterHierarchy::leaf(1)),
            ClusterHierarchy::join(ClusterHierarchy::leaf(2), ClusterHierarchy::leaf(3)),
        );
        let report = clustering_cost_mst(&h, &m).unwrap();
        assert_eq!(report.total_cost, 5.0);
        assert_eq!(report.level_costs, vec![3.0, 2.0]);
    }

    #[test]
    fn cost_rejects_mismatched_hierarchy() {
        let m = graph_metric(3, &[(0, 1)]);
        let h = ClusterHierarchy::join(ClusterHierarchy::leaf(0), ClusterHierarchy::leaf(1));
        assert!(clustering_cost_mst(&h, &m).is_err());
    }

    #[test]
    fn entropy_bound_formulas() {
        // Metric whose MST has four unit edges: a path of five points.
        let m = path_metric(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        assert_relative_eq!(entropy_lower_bound(&m), 6.0, epsilon = 1e-12);
        assert_relative_eq!(
            entropy_upper_bound(&m),
            4.0 * (1.0 + 4.0f64.ln() / 1.5f64.ln()),
            epsilon = 1e-12
        );
        assert!((entropy_upper_bound(&m) - 17.675).abs() < 1e-2);

        // Single edge of weight w.
        let m = path_metric(&[0.0, 3.0]);
        assert_relative_eq!(entropy_lower_bound(&m), 1.5);
        assert_relative_eq!(entropy_upper_bound(&m), 3.0);
    }

    #[test]
    fn star_metric_within_bounds() {
        // Unit star K_{1,7}: distance 1 to the hub, 2 otherwise.
        let m = DistanceMatrix::from_fn(8, |i, j| if i == 0 || j == 0 { 1.0 } else { 2.0 }).unwrap();
        let h = cluster_by_tree_splitting(&m);
        let report = clustering_cost_mst(&h, &m).unwrap();
        assert!(report.total_cost <= report.upper_bound + 1e-9);
        assert!(report.total_cost >= report.lower_bound - 1e-9);
    }
}
