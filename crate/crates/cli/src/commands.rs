//! The cluster, pants, bisect and count subcommands.

use crate::error::CliError;
use crate::formats::{
    read_instance, write_json, BisectOutput, CostsJson, CurveJson, HierarchyJson, InstanceKind,
    ResultFile, Timings, ValidationJson, SCHEMA_VERSION,
};
use clusterpants::bisectable::{bisection_hierarchy, count_bisectable};
use clusterpants::geometry::{hyperbolic_hull_perimeter, PointE2};
use clusterpants::hierarchy::CostReport;
use clusterpants::hyperbolic::cluster_hyperbolic;
use clusterpants::oracle::{optimal_clustering, Objective, OracleInstance};
use clusterpants::pants::{hierarchy_to_pants, validate_pants, PantsDecomposition};
use clusterpants::quadtree::{build_compressed_quadtree, clustering_cost_perimeter, quadtree_to_hierarchy};
use clusterpants::treecluster::{cluster_by_tree_splitting, clustering_cost_mst};
use std::path::Path;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algorithm {
    /// Balanced splitting of the minimum spanning tree (any metric input).
    MetricTree,
    /// Compressed quadtree clustering (Euclidean input).
    EuclidQuadtree,
    /// Sparsify + per-cell quadtree + backbone (hyperbolic input).
    Hyperbolic,
    /// Exact optimum by subset dynamic programming (n <= 15).
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ObjectiveArg {
    MstSum,
    PerimeterSum,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::MstSum => Objective::MstSum,
            ObjectiveArg::PerimeterSum => Objective::PerimeterSum,
        }
    }
}

fn ms(from: Instant) -> f64 {
    from.elapsed().as_secs_f64() * 1e3
}

fn hyperbolic_root_bound(points: &[clusterpants::PointH2]) -> f64 {
    if points.is_empty() {
        0.0
    } else {
        hyperbolic_hull_perimeter(points).unwrap_or(0.0)
    }
}

pub fn cmd_cluster(
    input: &Path,
    algorithm: Algorithm,
    objective: ObjectiveArg,
    delta: f64,
    output: Option<&Path>,
    format: crate::OutputFormat,
) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = read_instance(input)?;
    let parse_ms = ms(started);

    let solving = Instant::now();
    let (hierarchy, costs) = match algorithm {
        Algorithm::MetricTree => {
            let m = inst.distance_matrix()?;
            let h = cluster_by_tree_splitting(&m);
            let report = clustering_cost_mst(&h, &m)?;
            (h, CostsJson::from(&report))
        }
        Algorithm::EuclidQuadtree => {
            if inst.kind != InstanceKind::Euclidean {
                return Err(CliError::precondition(format!(
                    "euclid-quadtree needs a euclidean instance, got '{}'",
                    inst.kind
                )));
            }
            let pts = inst.euclidean_points()?;
            let q = build_compressed_quadtree(&pts)?;
            let h = quadtree_to_hierarchy(&q);
            let report = clustering_cost_perimeter(&h, &pts)?;
            (h, CostsJson::from(&report))
        }
        Algorithm::Hyperbolic => {
            if inst.kind != InstanceKind::Hyperbolic {
                return Err(CliError::precondition(format!(
                    "hyperbolic clustering needs a hyperbolic instance, got '{}'",
                    inst.kind
                )));
            }
            let pts = inst.hyperbolic_points()?;
            let clustering = cluster_hyperbolic(&pts, delta)?;
            let lower = hyperbolic_root_bound(&pts);
            let total = clustering.total_perimeter;
            (
                clustering.hierarchy,
                CostsJson {
                    total,
                    lower_bound: lower,
                    upper_bound: total,
                    ratio: CostReport::ratio_of(total, lower),
                },
            )
        }
        Algorithm::Oracle => {
            let objective = Objective::from(objective);
            match inst.kind {
                InstanceKind::Euclidean => {
                    let pts = inst.euclidean_points()?;
                    let res = optimal_clustering(&OracleInstance::Euclidean(&pts), objective)?;
                    let costs = match objective {
                        Objective::MstSum => {
                            let m = inst.distance_matrix()?;
                            entropy_costs(res.optimal_cost, &m)
                        }
                        Objective::PerimeterSum => {
                            let report = clustering_cost_perimeter(&res.hierarchy, &pts)?;
                            CostsJson {
                                total: res.optimal_cost,
                                lower_bound: report.lower_bound,
                                upper_bound: res.optimal_cost,
                                ratio: CostReport::ratio_of(res.optimal_cost, report.lower_bound),
                            }
                        }
                    };
                    (res.hierarchy, costs)
                }
                InstanceKind::Tree => {
                    return Err(CliError::precondition(
                        "oracle does not run on tree instances".to_string(),
                    ))
                }
                _ => {
                    if objective == Objective::PerimeterSum {
                        return Err(CliError::precondition(
                            "the perimeter objective requires planar points".to_string(),
                        ));
                    }
                    let m = inst.distance_matrix()?;
                    let res = optimal_clustering(&OracleInstance::Metric(&m), objective)?;
                    let costs = entropy_costs(res.optimal_cost, &m);
                    (res.hierarchy, costs)
                }
            }
        }
    };
    let solve_ms = ms(solving);

    let result = ResultFile {
        version: SCHEMA_VERSION,
        hierarchy: Some(HierarchyJson::from_hierarchy(&hierarchy)),
        costs,
        curves: None,
        validation: None,
        timings: Timings {
            parse_ms,
            solve_ms,
            total_ms: ms(started),
        },
    };
    if format == crate::OutputFormat::Table {
        print_cost_table(&result.costs);
    }
    write_json(&result, output)
}

fn entropy_costs(total: f64, m: &clusterpants::DistanceMatrix) -> CostsJson {
    let lower = clusterpants::treecluster::entropy_lower_bound(m);
    let upper = clusterpants::treecluster::entropy_upper_bound(m);
    CostsJson {
        total,
        lower_bound: lower,
        upper_bound: upper,
        ratio: CostReport::ratio_of(total, lower),
    }
}

fn print_cost_table(costs: &CostsJson) {
    eprintln!("{:>14} {:>14} {:>14} {:>8}", "total", "lower", "upper", "ratio");
    eprintln!(
        "{:>14.6} {:>14.6} {:>14.6} {:>8.4}",
        costs.total, costs.lower_bound, costs.upper_bound, costs.ratio
    );
}

fn curves_json(p: &PantsDecomposition) -> Vec<CurveJson> {
    p.curves
        .iter()
        .map(|c| CurveJson {
            cluster: c.cluster,
            vertices: c.vertices.iter().map(|v| [v.x, v.y]).collect(),
        })
        .collect()
}

pub fn cmd_pants(input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = read_instance(input)?;
    if inst.kind != InstanceKind::Euclidean {
        return Err(CliError::precondition(format!(
            "pants needs a euclidean instance, got '{}'",
            inst.kind
        )));
    }
    let pts: Vec<PointE2> = inst.euclidean_points()?;
    let parse_ms = ms(started);

    let solving = Instant::now();
    let q = build_compressed_quadtree(&pts)?;
    let h = quadtree_to_hierarchy(&q);
    let pants = hierarchy_to_pants(&h, &pts)?;
    let report = validate_pants(&pants, &pts);
    let cost = clustering_cost_perimeter(&h, &pts)?;
    let solve_ms = ms(solving);

    let validation = ValidationJson {
        curves_simple: report.curves_simple,
        curves_disjoint: report.curves_disjoint,
        containment_ok: report.containment_ok,
        pants_condition_ok: report.pants_condition_ok,
        issues: report.issues.clone(),
    };
    let result = ResultFile {
        version: SCHEMA_VERSION,
        hierarchy: Some(HierarchyJson::from_hierarchy(&h)),
        costs: CostsJson {
            total: pants.total_length,
            lower_bound: cost.lower_bound,
            upper_bound: cost.total_cost,
            ratio: CostReport::ratio_of(pants.total_length, cost.lower_bound),
        },
        curves: Some(curves_json(&pants)),
        validation: Some(validation),
        timings: Timings {
            parse_ms,
            solve_ms,
            total_ms: ms(started),
        },
    };
    write_json(&result, output)?;
    if !report.is_valid() {
        return Err(CliError::validation(format!(
            "pants validation failed: {}",
            report.issues.join("; ")
        )));
    }
    Ok(())
}

pub fn cmd_bisect(input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = read_instance(input)?;
    let tree = inst.free_tree()?;
    let parse_ms = ms(started);

    let solving = Instant::now();
    let hierarchy = bisection_hierarchy(&tree);
    let solve_ms = ms(solving);

    let out = BisectOutput {
        version: SCHEMA_VERSION,
        bisectable: hierarchy.is_some(),
        hierarchy: hierarchy.as_ref().map(HierarchyJson::from_hierarchy),
        timings: Timings {
            parse_ms,
            solve_ms,
            total_ms: ms(started),
        },
    };
    write_json(&out, output)
}

pub fn cmd_count(i: u32, output: Option<&Path>) -> Result<(), CliError> {
    let started = Instant::now();
    let counts = count_bisectable(i)?;
    let out = crate::formats::CountOutput {
        version: SCHEMA_VERSION,
        i,
        total: counts.d.to_string(),
        symmetric: counts.s.to_string(),
        asymmetric: counts.a.to_string(),
        timings: Timings {
            parse_ms: 0.0,
            solve_ms: ms(started),
            total_ms: ms(started),
        },
    };
    write_json(&out, output)
}
