//! Hyperbolic clustering pipeline: sparsify the sites into a well-separated
//! subset, cluster each low-diameter neighborhood through the Klein model and
//! the quadtree method, and connect the neighborhoods with the balanced
//! tree-splitting method applied to the spanning tree of the chosen centers.

use crate::error::{Error, Result};
use crate::geometry::{
    hyperbolic_distance, hyperbolic_hull_perimeter, klein_from_poincare, PointH2,
};
use crate::hierarchy::ClusterHierarchy;
use crate::quadtree::{build_compressed_quadtree, quadtree_to_hierarchy};
use crate::treecluster::{
    clustering_cost_mst, mst_metric, split_tree_hierarchy, ternarize_with_orders, DistanceMatrix,
};

/// A maximal subset of sites with pairwise distances at least δ, together
/// with the nearest chosen site for every input site and the chosen pairs at
/// distance below 2δ.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedSubset {
    /// Chosen site indices, in scan order.
    pub chosen: Vec<usize>,
    /// For every site, the site index of its nearest chosen site.
    pub assignment: Vec<usize>,
    /// Chosen site pairs (a < b) at distance < 2δ.
    pub close_pairs: Vec<(usize, usize)>,
}

/// The sites assigned to one chosen center, i.e. the center's Voronoi cell
/// restricted to the radius-δ disk around it. Cells are kept implicit:
/// membership and neighbors are all the algorithms need.
#[derive(Debug, Clone, PartialEq)]
pub struct RestrictedCell {
    pub center_site: usize,
    pub center: PointH2,
    pub member_sites: Vec<usize>,
    pub neighbor_centers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicClustering {
    pub hierarchy: ClusterHierarchy,
    /// Sum of hyperbolic hull perimeters over all clusters, root included.
    pub total_perimeter: f64,
    /// Per-cell perimeter sums of the within-cell hierarchies.
    pub per_cell_costs: Vec<f64>,
    /// Spanning-tree cost of the hierarchy over the chosen centers.
    pub backbone_cost: f64,
}

const DELTA_MIN: f64 = 0.1;
const DELTA_MAX: f64 = 10.0;

fn check_delta(delta: f64) -> Result<()> {
    if !(DELTA_MIN..=DELTA_MAX).contains(&delta) {
        return Err(Error::DeltaOutOfRange { delta });
    }
    Ok(())
}

/// Scan order of the annulus sweep: by annulus index, clockwise by angle
/// within an annulus, then by site index.
fn scan_order(points: &[PointH2], delta: f64) -> (Vec<usize>, Vec<i64>) {
    let annulus: Vec<i64> = points
        .iter()
        .map(|p| (hyperbolic_distance(PointH2::ORIGIN, *p) / delta).floor() as i64)
        .collect();
    let angle: Vec<f64> = points.iter().map(|p| p.v().atan2(p.u())).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        annulus[i]
            .cmp(&annulus[j])
            .then(angle[j].total_cmp(&angle[i]))
            .then(i.cmp(&j))
    });
    (order, annulus)
}

/// Greedy maximal δ-separated subset via an annulus sweep around the origin.
/// A candidate only needs to be compared against chosen sites in its own and
/// the next inner annulus, so the output equals the naive greedy scan over
/// the same order.
pub fn well_separated_subset(points: &[PointH2], delta: f64) -> Result<SeparatedSubset> {
    check_delta(delta)?;
    let (order, annulus) = scan_order(points, delta);

    let mut per_annulus: std::collections::BTreeMap<i64, Vec<usize>> = Default::default();
    let mut chosen: Vec<usize> = Vec::new();
    for &i in &order {
        let a = annulus[i];
        let conflict = (a - 1..=a).any(|ring| {
            per_annulus.get(&ring).is_some_and(|ring_chosen| {
                ring_chosen
                    .iter()
                    .any(|&c| hyperbolic_distance(points[c], points[i]) < delta)
            })
        });
        if !conflict {
            chosen.push(i);
            per_annulus.entry(a).or_default().push(i);
        }
    }

    // Nearest chosen site per input site; all candidates within δ live in the
    // three surrounding annuli. Ties go to the lower site index.
    let mut assignment = vec![usize::MAX; points.len()];
    for i in 0..points.len() {
        let a = annulus[i];
        let mut best: Option<(f64, usize)> = None;
        for ring in a - 1..=a + 1 {
            if let Some(ring_chosen) = per_annulus.get(&ring) {
                for &c in ring_chosen {
                    let d = hyperbolic_distance(points[c], points[i]);
                    let better = match best {
                        None => true,
                        Some((bd, bc)) => d < bd || (d == bd && c < bc),
                    };
                    if better {
                        best = Some((d, c));
                    }
                }
            }
        }
        let (d, c) = best.expect("coverage: some chosen site within delta");
        debug_assert!(d <= delta + 1e-12);
        assignment[i] = c;
    }

    // Chosen pairs below 2δ: candidates are within two annuli.
    let mut close_pairs: Vec<(usize, usize)> = Vec::new();
    for &c in &chosen {
        let a = annulus[c];
        for ring in a - 2..=a + 2 {
            if let Some(ring_chosen) = per_annulus.get(&ring) {
                for &c2 in ring_chosen {
                    if c2 > c && hyperbolic_distance(points[c], points[c2]) < 2.0 * delta {
                        close_pairs.push((c, c2));
                    }
                }
            }
        }
    }
    close_pairs.sort_unstable();

    Ok(SeparatedSubset {
        chosen,
        assignment,
        close_pairs,
    })
}

/// Group the sites into the restricted Voronoi cells of the chosen centers,
/// one cell per chosen site in scan order.
pub fn restricted_voronoi_cells(
    points: &[PointH2],
    sep: &SeparatedSubset,
    _delta: f64,
) -> Vec<RestrictedCell> {
    sep.chosen
        .iter()
        .map(|&c| {
            let member_sites: Vec<usize> = (0..points.len())
                .filter(|&s| sep.assignment[s] == c)
                .collect();
            let mut neighbor_centers: Vec<usize> = sep
                .close_pairs
                .iter()
                .filter_map(|&(a, b)| {
                    if a == c {
                        Some(b)
                    } else if b == c {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            neighbor_centers.sort_unstable();
            RestrictedCell {
                center_site: c,
                center: points[c],
                member_sites,
                neighbor_centers,
            }
        })
        .collect()
}

/// Cluster one cell by mapping its sites into the Klein model centered at
/// the cell center and running the quadtree method on the image.
pub fn cluster_cell(cell: &RestrictedCell, points: &[PointH2]) -> Result<ClusterHierarchy> {
    let images: Vec<_> = cell
        .member_sites
        .iter()
        .map(|&s| klein_from_poincare(points[s], cell.center))
        .collect();
    let q = build_compressed_quadtree(&images)?;
    let local = quadtree_to_hierarchy(&q);
    Ok(local.substitute_leaves(|i| ClusterHierarchy::leaf(cell.member_sites[i])))
}

/// Angular order of the backbone neighbors of each chosen center, taken in
/// the Klein model centered at that center.
fn radial_orders(
    mst: &crate::treecluster::WeightedTree,
    chosen: &[usize],
    points: &[PointH2],
) -> Vec<Vec<usize>> {
    let adjacency = mst.adjacency();
    adjacency
        .into_iter()
        .enumerate()
        .map(|(v, nbrs)| {
            let center = points[chosen[v]];
            let mut nbrs: Vec<usize> = nbrs.into_iter().map(|(_, w)| w).collect();
            nbrs.sort_by(|&a, &b| {
                let pa = klein_from_poincare(points[chosen[a]], center);
                let pb = klein_from_poincare(points[chosen[b]], center);
                pa.y.atan2(pa.x).total_cmp(&pb.y.atan2(pb.x)).then(a.cmp(&b))
            });
            nbrs
        })
        .collect()
}

fn perimeter_cost(h: &ClusterHierarchy, points: &[PointH2]) -> Result<f64> {
    let sites = h.node_sites();
    let mut total = 0.0;
    for id in h.internal_ids() {
        let pts: Vec<PointH2> = sites[id].iter().map(|&s| points[s]).collect();
        total += hyperbolic_hull_perimeter(&pts)?;
    }
    Ok(total)
}

/// Full hyperbolic clustering: per-cell quadtree hierarchies hanging off a
/// backbone obtained by balanced tree splitting of the centers' spanning
/// tree, expanded to degree three consistently with the radial order of the
/// neighbors around each center.
pub fn cluster_hyperbolic(points: &[PointH2], delta: f64) -> Result<HyperbolicClustering> {
    check_delta(delta)?;
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let sep = well_separated_subset(points, delta)?;
    let cells = restricted_voronoi_cells(points, &sep, delta);

    let mut cell_hierarchies = Vec::with_capacity(cells.len());
    let mut per_cell_costs = Vec::with_capacity(cells.len());
    for cell in &cells {
        let h = cluster_cell(cell, points)?;
        per_cell_costs.push(perimeter_cost(&h, points)?);
        cell_hierarchies.push(h);
    }

    let (hierarchy, backbone_cost) = if cells.len() == 1 {
        (cell_hierarchies.pop().expect("one cell"), 0.0)
    } else {
        let sub = DistanceMatrix::from_fn(sep.chosen.len(), |i, j| {
            hyperbolic_distance(points[sep.chosen[i]], points[sep.chosen[j]])
        })?;
        let mst = mst_metric(&sub);
        let orders = radial_orders(&mst, &sep.chosen, points);
        let t_star = ternarize_with_orders(&mst, &orders);
        let backbone = split_tree_hierarchy(&t_star);
        let backbone_cost = clustering_cost_mst(&backbone, &sub)?.total_cost;
        let full = backbone.substitute_leaves(|cell| cell_hierarchies[cell].clone());
        (full, backbone_cost)
    };

    let total_perimeter = perimeter_cost(&hierarchy, points)?;
    Ok(HyperbolicClustering {
        hierarchy,
        total_perimeter,
        per_cell_costs,
        backbone_cost,
    })
}

/// Hull perimeter over spanning tree length for a δ-separated set: a
/// diagnostic for the two-sided relation between the quantities. The upper
/// direction (hull at most twice the tree) holds for any point set.
pub fn mst_hull_ratio(points: &[PointH2], delta: f64) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::TooFewSites {
            needed: 2,
            got: points.len(),
        });
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = hyperbolic_distance(points[i], points[j]);
            if d < delta {
                return Err(Error::SeparationViolated {
                    a: i,
                    b: j,
                    distance: d,
                });
            }
        }
    }
    let hull = hyperbolic_hull_perimeter(points)?;
    let m = DistanceMatrix::from_hyperbolic_points(points)?;
    let tree = mst_metric(&m).total_length();
    Ok(hull / tree)
}
