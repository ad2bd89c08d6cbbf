//! Compressed quadtrees over planar sites and their conversion to a
//! hierarchical clustering whose sibling clusters have disjoint hulls.
//!
//! Boundary convention: a point on the lower or right side of a square is
//! outside it, so the four quadrants of a square tile it exactly. Only
//! squares whose sites occupy at least two quadrants are kept ("compressed"),
//! which bounds the internal squares by n − 1.

use crate::error::{Error, Result};
use crate::geometry::{hull_perimeter, PointE2};
use crate::hierarchy::{ClusterHierarchy, CostReport};

const MAX_DEPTH: u32 = 64;

/// An axis-aligned square of the quadtree grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Square {
    pub min_x: f64,
    pub min_y: f64,
    pub side: f64,
    pub depth: u32,
}

/// Quadrant indices: 0 = SW, 1 = SE, 2 = NW, 3 = NE.
pub const QUADRANTS: usize = 4;

impl Square {
    /// Quadrant containing `p` under the lower/right-outside convention:
    /// east when `x ≥ mid`, north when `y > mid`.
    pub fn quadrant_of(&self, p: PointE2) -> usize {
        let mid_x = self.min_x + self.side * 0.5;
        let mid_y = self.min_y + self.side * 0.5;
        (usize::from(p.y > mid_y) << 1) | usize::from(p.x >= mid_x)
    }

    pub fn quadrant_square(&self, q: usize) -> Square {
        let half = self.side * 0.5;
        Square {
            min_x: self.min_x + if q & 1 == 1 { half } else { 0.0 },
            min_y: self.min_y + if q & 2 == 2 { half } else { 0.0 },
            side: half,
            depth: self.depth + 1,
        }
    }

    pub fn perimeter(&self) -> f64 {
        4.0 * self.side
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadChild {
    /// Index into the node list.
    Node(usize),
    /// Index into the site list.
    Site(usize),
}

/// An internal square: one that holds sites in two or more of its quadrants.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadNode {
    pub square: Square,
    pub children: [Option<QuadChild>; QUADRANTS],
    pub parent: Option<usize>,
}

impl QuadNode {
    pub fn child_count(&self) -> usize {
        self.children.iter().flatten().count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompressedQuadtree {
    nodes: Vec<QuadNode>,
    root: QuadChild,
    bounding: Square,
    sites: Vec<PointE2>,
}

impl CompressedQuadtree {
    pub fn nodes(&self) -> &[QuadNode] {
        &self.nodes
    }

    pub fn root(&self) -> QuadChild {
        self.root
    }

    pub fn bounding_square(&self) -> Square {
        self.bounding
    }

    pub fn sites(&self) -> &[PointE2] {
        &self.sites
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.len()
    }

    /// Total perimeter of the squares kept by the compression; an upper
    /// bound for the perimeter cost of the derived clustering.
    pub fn square_perimeter_sum(&self) -> f64 {
        self.nodes.iter().map(|n| n.square.perimeter()).sum()
    }
}

/// Smallest axis-aligned square containing the points, anchored at their
/// minimum corner. A single point (or coincident set) gets side 1.
pub fn bounding_square(points: &[PointE2]) -> Result<Square> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for p in points {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let mut side = (max_x - min_x).max(max_y - min_y);
    if side == 0.0 {
        side = 1.0;
    }
    Ok(Square {
        min_x,
        min_y,
        side,
        depth: 0,
    })
}

/// Build the compressed quadtree of a duplicate-free point set.
pub fn build_compressed_quadtree(points: &[PointE2]) -> Result<CompressedQuadtree> {
    let bounding = bounding_square(points)?;
    let mut by_coord: Vec<usize> = (0..points.len()).collect();
    by_coord.sort_by(|&i, &j| {
        points[i]
            .x
            .total_cmp(&points[j].x)
            .then(points[i].y.total_cmp(&points[j].y))
    });
    for w in by_coord.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(Error::DuplicatePoints {
                a: w[0].min(w[1]),
                b: w[0].max(w[1]),
            });
        }
    }

    let mut nodes: Vec<QuadNode> = Vec::new();
    let all: Vec<usize> = (0..points.len()).collect();
    let root = build_rec(&mut nodes, points, bounding, all, None)?;
    Ok(CompressedQuadtree {
        nodes,
        root,
        bounding,
        sites: points.to_vec(),
    })
}

fn build_rec(
    nodes: &mut Vec<QuadNode>,
    points: &[PointE2],
    mut square: Square,
    site_ids: Vec<usize>,
    parent: Option<usize>,
) -> Result<QuadChild> {
    if site_ids.len() == 1 {
        return Ok(QuadChild::Site(site_ids[0]));
    }
    // Shrink past squares with a single occupied quadrant.
    let mut groups: [Vec<usize>; QUADRANTS];
    loop {
        if square.depth > MAX_DEPTH {
            return Err(Error::DepthLimitExceeded);
        }
        groups = Default::default();
        for &i in &site_ids {
            groups[square.quadrant_of(points[i])].push(i);
        }
        let occupied = groups.iter().filter(|g| !g.is_empty()).count();
        if occupied >= 2 {
            break;
        }
        let q = groups.iter().position(|g| !g.is_empty()).expect("nonempty");
        square = square.quadrant_square(q);
    }

    let id = nodes.len();
    nodes.push(QuadNode {
        square,
        children: [None; QUADRANTS],
        parent,
    });
    for (q, group) in groups.into_iter().enumerate() {
        if group.is_empty() {
            continue;
        }
        let child = build_rec(nodes, points, square.quadrant_square(q), group, Some(id))?;
        nodes[id].children[q] = Some(child);
    }
    Ok(QuadChild::Node(id))
}

/// Two quadrants share a side exactly when their indices differ in one bit.
fn side_adjacent(a: usize, b: usize) -> bool {
    (a ^ b).count_ones() == 1
}

/// Convert the quadtree into a binary hierarchy.
///
/// Squares with three children first pair two side-adjacent quadrants (ties
/// resolved by smaller combined hull perimeter, then by quadrant index);
/// squares with four children pair {NW, NE} and {SW, SE}, except the root,
/// where the row/column pairing of smaller total hull perimeter wins.
pub fn quadtree_to_hierarchy(q: &CompressedQuadtree) -> ClusterHierarchy {
    build_hierarchy(q, q.root, true).0
}

fn pair_perimeter(q: &CompressedQuadtree, a: &[usize], b: &[usize]) -> f64 {
    let pts: Vec<PointE2> = a.iter().chain(b).map(|&i| q.sites[i]).collect();
    hull_perimeter(&pts).expect("pair of clusters is nonempty")
}

fn build_hierarchy(
    q: &CompressedQuadtree,
    child: QuadChild,
    is_root: bool,
) -> (ClusterHierarchy, Vec<usize>) {
    let id = match child {
        QuadChild::Site(site) => return (ClusterHierarchy::leaf(site), vec![site]),
        QuadChild::Node(id) => id,
    };
    let node = &q.nodes[id];
    let mut parts: Vec<(usize, ClusterHierarchy, Vec<usize>)> = Vec::new();
    for (quad, c) in node.children.iter().enumerate() {
        if let Some(c) = *c {
            let (h, sites) = build_hierarchy(q, c, false);
            parts.push((quad, h, sites));
        }
    }
    debug_assert!(parts.len() >= 2);

    match parts.len() {
        2 => {
            let (_, hb, sb) = parts.pop().unwrap();
            let (_, ha, sa) = parts.pop().unwrap();
            let mut sites = sa;
            sites.extend(sb);
            (ClusterHierarchy::join(ha, hb), sites)
        }
        3 => {
            // Choose the side-adjacent pair of children to merge first.
            let mut best: Option<((usize, usize), f64)> = None;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if !side_adjacent(parts[i].0, parts[j].0) {
                        continue;
                    }
                    let per = pair_perimeter(q, &parts[i].2, &parts[j].2);
                    if best.is_none_or(|(_, bp)| per < bp) {
                        best = Some(((i, j), per));
                    }
                }
            }
            let ((i, j), _) = best.expect("three quadrants contain a side-adjacent pair");
            let k = (0..3).find(|&k| k != i && k != j).unwrap();
            let pair = ClusterHierarchy::join(parts[i].1.clone(), parts[j].1.clone());
            let h = ClusterHierarchy::join(pair, parts[k].1.clone());
            let mut sites = parts[i].2.clone();
            sites.extend(parts[j].2.iter());
            sites.extend(parts[k].2.iter());
            (h, sites)
        }
        _ => {
            // All four quadrants occupied: pair by rows, i.e. {SW,SE} and
            // {NW,NE}. The root may pair by columns instead when that is
            // shorter overall.
            let by_quad: Vec<&(usize, ClusterHierarchy, Vec<usize>)> = parts.iter().collect();
            let find = |quad: usize| by_quad.iter().find(|p| p.0 == quad).unwrap();
            let (sw, se, nw, ne) = (find(0), find(1), find(2), find(3));
            let rows = pair_perimeter(q, &sw.2, &se.2) + pair_perimeter(q, &nw.2, &ne.2);
            let use_columns = if is_root {
                let cols = pair_perimeter(q, &sw.2, &nw.2) + pair_perimeter(q, &se.2, &ne.2);
                cols < rows
            } else {
                false
            };
            let (p1, p2) = if use_columns {
                (
                    ClusterHierarchy::join(sw.1.clone(), nw.1.clone()),
                    ClusterHierarchy::join(se.1.clone(), ne.1.clone()),
                )
            } else {
                (
                    ClusterHierarchy::join(sw.1.clone(), se.1.clone()),
                    ClusterHierarchy::join(nw.1.clone(), ne.1.clone()),
                )
            };
            let h = ClusterHierarchy::join(p1, p2);
            let mut sites = sw.2.clone();
            sites.extend(se.2.iter());
            sites.extend(nw.2.iter());
            sites.extend(ne.2.iter());
            (h, sites)
        }
    }
}

/// Sum over all clusters (root included) of the convex hull perimeter of the
/// cluster's sites. The lower bound is the hull perimeter of the whole set,
/// which every hierarchy pays at its root.
pub fn clustering_cost_perimeter(h: &ClusterHierarchy, points: &[PointE2]) -> Result<CostReport> {
    h.validate_partition(points.len())
        .map_err(|e| Error::HierarchyMismatch(e.to_string()))?;
    let sites = h.node_sites();
    let depths = h.depths();
    let mut level_costs: Vec<f64> = Vec::new();
    let mut total = 0.0;
    for id in h.internal_ids() {
        let pts: Vec<PointE2> = sites[id].iter().map(|&i| points[i]).collect();
        let cost = hull_perimeter(&pts)?;
        total += cost;
        let d = depths[id];
        if level_costs.len() <= d {
            level_costs.resize(d + 1, 0.0);
        }
        level_costs[d] += cost;
    }
    let lower = if points.is_empty() {
        0.0
    } else {
        hull_perimeter(points)?
    };
    Ok(CostReport {
        total_cost: total,
        level_costs,
        lower_bound: lower,
        upper_bound: total,
        ratio: CostReport::ratio_of(total, lower),
    })
}
