//! Pants decompositions from hierarchies with disjoint sibling hulls.
//!
//! Every non-root cluster is surrounded by a simple closed curve: its convex
//! hull pushed outward by a distance proportional to the cluster size times a
//! safety unit ε derived from the smallest gap between sibling hulls. Larger
//! clusters get larger offsets, so nested curves stay strictly nested and
//! disjoint clusters keep disjoint curves; the added length is a vanishing
//! fraction of the gap. Corners are rounded by short polyline arcs.

use crate::error::{Error, Result};
use crate::geometry::{
    hull_indices, point_in_convex_polygon, point_in_polygon, point_segment_distance,
    segments_intersect, PointE2,
};
use crate::hierarchy::{ClusterHierarchy, NodeId};

/// Offset unit per gap and squared site count. The curve around a cluster of
/// k sites sits at distance `k · ε` from its hull with
/// `ε = OFFSET_SCALE · gap / n²`, keeping the total curve overhead far below
/// the hull gap.
const OFFSET_SCALE: f64 = 1e-3;

/// Segments used to approximate each corner arc.
const ARC_SEGMENTS: usize = 16;

/// A simple closed polyline, positively oriented, surrounding one cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    pub vertices: Vec<PointE2>,
    /// Hierarchy node this curve encloses.
    pub cluster: NodeId,
}

impl ClosedCurve {
    pub fn length(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = self.vertices[i];
                let b = self.vertices[(i + 1) % n];
                (a.x - b.x).hypot(a.y - b.y)
            })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PantsDecomposition {
    pub curves: Vec<ClosedCurve>,
    pub hierarchy: ClusterHierarchy,
    pub total_length: f64,
}

/// Distance between two convex hulls given as vertex cycles; errors when the
/// hulls cross, touch, or one contains the other.
fn hull_distance(a: &[PointE2], b: &[PointE2]) -> Result<f64> {
    let edges = |h: &[PointE2]| -> Vec<(PointE2, PointE2)> {
        match h.len() {
            0 | 1 => Vec::new(),
            2 => vec![(h[0], h[1])],
            m => (0..m).map(|i| (h[i], h[(i + 1) % m])).collect(),
        }
    };
    let ea = edges(a);
    let eb = edges(b);
    for &(p1, p2) in &ea {
        for &(q1, q2) in &eb {
            if segments_intersect(p1, p2, q1, q2) {
                return Err(Error::SiblingHullsIntersect);
            }
        }
    }
    if (b.len() >= 3 && point_in_convex_polygon(a[0], b, 0.0))
        || (a.len() >= 3 && point_in_convex_polygon(b[0], a, 0.0))
    {
        return Err(Error::SiblingHullsIntersect);
    }
    let mut d = f64::INFINITY;
    for &p in a {
        if eb.is_empty() {
            for &q in b {
                d = d.min((p.x - q.x).hypot(p.y - q.y));
            }
        }
        for &(q1, q2) in &eb {
            d = d.min(point_segment_distance(p, q1, q2));
        }
    }
    for &p in b {
        for &(q1, q2) in &ea {
            d = d.min(point_segment_distance(p, q1, q2));
        }
    }
    if d <= 0.0 {
        return Err(Error::SiblingHullsIntersect);
    }
    Ok(d)
}

fn node_hulls(h: &ClusterHierarchy, points: &[PointE2]) -> Result<Vec<Vec<PointE2>>> {
    let mut hulls = Vec::with_capacity(h.node_count());
    for node_sites in h.node_sites() {
        let pts: Vec<PointE2> = node_sites.iter().map(|&i| points[i]).collect();
        let idx = hull_indices(&pts)?;
        hulls.push(idx.into_iter().map(|i| pts[i]).collect());
    }
    Ok(hulls)
}

/// Minimum hull-to-hull distance over all sibling cluster pairs, by brute
/// force over hull vertices and edges.
pub fn min_hull_gap(h: &ClusterHierarchy, points: &[PointE2]) -> Result<f64> {
    h.validate_partition(points.len())
        .map_err(|e| Error::HierarchyMismatch(e.to_string()))?;
    let hulls = node_hulls(h, points)?;
    let mut gap = f64::INFINITY;
    for id in h.internal_ids() {
        let (l, r) = h.children(id).expect("internal node");
        gap = gap.min(hull_distance(&hulls[l], &hulls[r])?);
    }
    if !gap.is_finite() {
        return Err(Error::TooFewSites { needed: 2, got: points.len() });
    }
    Ok(gap)
}

/// Offset the hull cycle outward by `r`, rounding each corner with
/// [`ARC_SEGMENTS`] chords. The result is convex, hence simple.
fn offset_curve(hull: &[PointE2], r: f64) -> Vec<PointE2> {
    let m = hull.len();
    if m == 1 {
        let c = hull[0];
        let steps = 4 * ARC_SEGMENTS;
        return (0..steps)
            .map(|t| {
                let ang = 2.0 * std::f64::consts::PI * t as f64 / steps as f64;
                PointE2::new(c.x + r * ang.cos(), c.y + r * ang.sin())
            })
            .collect();
    }
    // Traverse each boundary edge; a two-vertex hull is walked both ways.
    let cycle: Vec<PointE2> = if m == 2 {
        vec![hull[0], hull[1]]
    } else {
        hull.to_vec()
    };
    let n = cycle.len();
    let normal = |i: usize| -> (f64, f64) {
        let a = cycle[i];
        let b = cycle[(i + 1) % n];
        let len = (b.x - a.x).hypot(b.y - a.y);
        ((b.y - a.y) / len, -(b.x - a.x) / len)
    };
    let mut out = Vec::with_capacity(n * (ARC_SEGMENTS + 1));
    for i in 0..n {
        let prev = normal((i + n - 1) % n);
        let cur = normal(i);
        let start = prev.1.atan2(prev.0);
        let mut sweep = cur.1.atan2(cur.0) - start;
        while sweep < 0.0 {
            sweep += 2.0 * std::f64::consts::PI;
        }
        let v = cycle[i];
        for t in 0..=ARC_SEGMENTS {
            let ang = start + sweep * t as f64 / ARC_SEGMENTS as f64;
            out.push(PointE2::new(v.x + r * ang.cos(), v.y + r * ang.sin()));
        }
    }
    out
}

fn curve_bbox(c: &[PointE2]) -> (f64, f64, f64, f64) {
    let mut bb = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in c {
        bb.0 = bb.0.min(p.x);
        bb.1 = bb.1.min(p.y);
        bb.2 = bb.2.max(p.x);
        bb.3 = bb.3.max(p.y);
    }
    bb
}

fn curves_cross(a: &[PointE2], b: &[PointE2]) -> bool {
    let (ax0, ay0, ax1, ay1) = curve_bbox(a);
    let (bx0, by0, bx1, by1) = curve_bbox(b);
    if ax1 < bx0 || bx1 < ax0 || ay1 < by0 || by1 < ay0 {
        return false;
    }
    let na = a.len();
    let nb = b.len();
    for i in 0..na {
        let (p1, p2) = (a[i], a[(i + 1) % na]);
        for j in 0..nb {
            let (q1, q2) = (b[j], b[(j + 1) % nb]);
            if segments_intersect(p1, p2, q1, q2) {
                return true;
            }
        }
    }
    false
}

/// Build the pants decomposition of a hierarchy over at least three sites
/// whose sibling clusters have disjoint convex hulls: one curve per non-root
/// cluster. Disjointness of the emitted curves is re-verified exactly and
/// any failure is an error.
pub fn hierarchy_to_pants(h: &ClusterHierarchy, points: &[PointE2]) -> Result<PantsDecomposition> {
    if points.len() < 3 {
        return Err(Error::TooFewSites {
            needed: 3,
            got: points.len(),
        });
    }
    h.validate_partition(points.len())
        .map_err(|e| Error::HierarchyMismatch(e.to_string()))?;
    let gap = min_hull_gap(h, points)?;
    let n = points.len();
    let eps = OFFSET_SCALE * gap / (n * n) as f64;

    let hulls = node_hulls(h, points)?;
    let sites = h.node_sites();
    let root = h.root();
    let mut curves = Vec::new();
    for id in h.internal_ids() {
        if id == root {
            continue;
        }
        let r = sites[id].len() as f64 * eps;
        curves.push(ClosedCurve {
            vertices: offset_curve(&hulls[id], r),
            cluster: id,
        });
    }

    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            if curves_cross(&curves[i].vertices, &curves[j].vertices) {
                return Err(Error::PantsDisjointness);
            }
        }
    }

    let total_length = curves.iter().map(ClosedCurve::length).sum();
    Ok(PantsDecomposition {
        curves,
        hierarchy: h.clone(),
        total_length,
    })
}

/// Outcome of the structural checks on a pants decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsValidation {
    pub curves_simple: bool,
    pub curves_disjoint: bool,
    pub containment_ok: bool,
    pub pants_condition_ok: bool,
    pub issues: Vec<String>,
}

impl PantsValidation {
    pub fn is_valid(&self) -> bool {
        self.curves_simple && self.curves_disjoint && self.containment_ok && self.pants_condition_ok
    }
}

/// Check a pants decomposition geometrically: every curve is simple, curves
/// are pairwise disjoint, curve/site containment reproduces the hierarchy
/// ancestry, and each region of the plane minus curves and sites has exactly
/// three boundary components (two inner plus the enclosing curve, or two
/// top-level components plus infinity for the outer region).
pub fn validate_pants(p: &PantsDecomposition, points: &[PointE2]) -> PantsValidation {
    let mut v = PantsValidation {
        curves_simple: true,
        curves_disjoint: true,
        containment_ok: true,
        pants_condition_ok: true,
        issues: Vec::new(),
    };

    // (a) simplicity: no two non-adjacent segments of a curve intersect.
    for c in &p.curves {
        let n = c.vertices.len();
        'outer: for i in 0..n {
            for j in (i + 1)..n {
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                if segments_intersect(
                    c.vertices[i],
                    c.vertices[(i + 1) % n],
                    c.vertices[j],
                    c.vertices[(j + 1) % n],
                ) {
                    v.curves_simple = false;
                    v.issues
                        .push(format!("curve for node {} self-intersects", c.cluster));
                    break 'outer;
                }
            }
        }
    }

    // (b) pairwise disjointness.
    for i in 0..p.curves.len() {
        for j in (i + 1)..p.curves.len() {
            if curves_cross(&p.curves[i].vertices, &p.curves[j].vertices) {
                v.curves_disjoint = false;
                v.issues.push(format!(
                    "curves for nodes {} and {} intersect",
                    p.curves[i].cluster, p.curves[j].cluster
                ));
            }
        }
    }

    // Geometric containment relations.
    let site_in = |curve: &ClosedCurve, s: usize| point_in_polygon(points[s], &curve.vertices);
    let curve_in = |inner: &ClosedCurve, outer: &ClosedCurve| {
        point_in_polygon(inner.vertices[0], &outer.vertices)
    };

    // (c) containment must match ancestry.
    let node_sites = p.hierarchy.node_sites();
    let ancestors = ancestor_table(&p.hierarchy);
    for c in &p.curves {
        for s in 0..points.len() {
            let expected = node_sites[c.cluster].binary_search(&s).is_ok();
            if site_in(c, s) != expected {
                v.containment_ok = false;
                v.issues.push(format!(
                    "site {s} containment in curve of node {} contradicts the hierarchy",
                    c.cluster
                ));
            }
        }
    }
    for a in &p.curves {
        for b in &p.curves {
            if a.cluster == b.cluster {
                continue;
            }
            let expected = ancestors[b.cluster].contains(&a.cluster);
            if curve_in(b, a) != expected {
                v.containment_ok = false;
                v.issues.push(format!(
                    "curve nesting of nodes {} and {} contradicts the hierarchy",
                    a.cluster, b.cluster
                ));
            }
        }
    }

    // (d) pants condition, from the geometry alone. Containment of disjoint
    // simple curves is laminar, so the innermost container is well defined.
    let nc = p.curves.len();
    let curve_containers: Vec<Vec<usize>> = (0..nc)
        .map(|i| {
            (0..nc)
                .filter(|&j| i != j && curve_in(&p.curves[i], &p.curves[j]))
                .collect()
        })
        .collect();
    let innermost = |containers: &[usize]| -> Option<usize> {
        containers
            .iter()
            .copied()
            .max_by_key(|&j| curve_containers[j].len())
    };
    let curve_parent: Vec<Option<usize>> = curve_containers
        .iter()
        .map(|cs| innermost(cs))
        .collect();
    let site_parent: Vec<Option<usize>> = (0..points.len())
        .map(|s| {
            let containers: Vec<usize> = (0..nc).filter(|&i| site_in(&p.curves[i], s)).collect();
            innermost(&containers)
        })
        .collect();

    let mut inner_count = vec![0usize; nc];
    let mut outer_count = 0usize;
    for parent in curve_parent.iter().chain(site_parent.iter()) {
        match parent {
            Some(par) => inner_count[*par] += 1,
            None => outer_count += 1,
        }
    }
    for (i, &count) in inner_count.iter().enumerate() {
        if count != 2 {
            v.pants_condition_ok = false;
            v.issues.push(format!(
                "region of curve for node {} has {count} inner boundaries, expected 2",
                p.curves[i].cluster
            ));
        }
    }
    if outer_count != 2 {
        v.pants_condition_ok = false;
        v.issues.push(format!(
            "outer region has {outer_count} boundaries besides infinity, expected 2"
        ));
    }
    v
}

fn ancestor_table(h: &ClusterHierarchy) -> Vec<Vec<NodeId>> {
    let mut anc: Vec<Vec<NodeId>> = vec![Vec::new(); h.node_count()];
    let mut stack = vec![h.root()];
    while let Some(id) = stack.pop() {
        if let Some((l, r)) = h.children(id) {
            for child in [l, r] {
                anc[child] = anc[id].clone();
                anc[child].push(id);
                stack.push(child);
            }
        }
    }
    anc
}
