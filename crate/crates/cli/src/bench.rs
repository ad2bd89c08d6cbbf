//! Benchmark suites: seeded instance families, per-instance ratio rows and
//! aggregate tables, machine-readable with `--format json`.

use crate::error::CliError;
use crate::formats::write_json;
use clusterpants::geometry::{hyperbolic_distance, PointE2, PointH2};
use clusterpants::hyperbolic::mst_hull_ratio;
use clusterpants::oracle::{optimal_clustering, Objective, OracleInstance};
use clusterpants::quadtree::{
    build_compressed_quadtree, clustering_cost_perimeter, quadtree_to_hierarchy,
};
use clusterpants::treecluster::{
    cluster_by_tree_splitting, clustering_cost_mst, entropy_lower_bound, DistanceMatrix,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Tree-splitting vs oracle and entropy bound on random metrics.
    Metric,
    /// Cost growth of the splitting algorithm on unit star metrics.
    Star,
    /// Hull perimeter over MST length on separated hyperbolic sets.
    Msthull,
    /// Quadtree clustering vs the exact perimeter optimum.
    Euclid,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Metric => "metric",
            Suite::Star => "star",
            Suite::Msthull => "msthull",
            Suite::Euclid => "euclid",
        }
    }

    fn default_sizes(self) -> Vec<usize> {
        match self {
            Suite::Metric => (6..=10).collect(),
            Suite::Star => vec![8, 16, 32, 64, 128],
            Suite::Msthull => vec![30, 60, 90],
            Suite::Euclid => (5..=9).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    #[serde(flatten)]
    pub metrics: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
pub struct BenchReport {
    pub suite: String,
    pub delta: f64,
    pub rows: Vec<BenchRow>,
    pub aggregate: BTreeMap<String, f64>,
}

fn instance_rng(size: usize, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(size as u64))
}

fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> DistanceMatrix {
    DistanceMatrix::from_fn(n, |_, _| 1.0 + rng.gen_range(0..=64) as f64 / 64.0)
        .expect("values in [1, 2] form a metric")
}

fn metric_suite(sizes: &[usize], seeds: u64) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for &n in sizes {
        if n > clusterpants::oracle::MAX_ORACLE_SITES {
            return Err(CliError::precondition(format!(
                "metric suite compares against the oracle; sizes must stay <= {}",
                clusterpants::oracle::MAX_ORACLE_SITES
            )));
        }
        for seed in 0..seeds {
            let mut rng = instance_rng(n, seed);
            let m = random_metric(&mut rng, n);
            let h = cluster_by_tree_splitting(&m);
            let cost = clustering_cost_mst(&h, &m)
                .map_err(CliError::from)?
                .total_cost;
            let lower = entropy_lower_bound(&m);
            let oracle = optimal_clustering(&OracleInstance::Metric(&m), Objective::MstSum)
                .map_err(CliError::from)?
                .optimal_cost;
            let mut metrics = BTreeMap::new();
            metrics.insert("cost".into(), cost);
            metrics.insert("lower_bound".into(), lower);
            metrics.insert("oracle".into(), oracle);
            metrics.insert("ratio_lower".into(), cost / lower);
            metrics.insert("ratio_oracle".into(), cost / oracle);
            rows.push(BenchRow { n, seed, metrics });
        }
    }
    Ok(rows)
}

fn star_suite(sizes: &[usize]) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for &n in sizes {
        if n < 2 {
            return Err(CliError::precondition(
                "star suite needs sizes of at least 2".to_string(),
            ));
        }
        let m = DistanceMatrix::from_fn(n, |i, j| if i == 0 || j == 0 { 1.0 } else { 2.0 })
            .expect("star metric");
        let h = cluster_by_tree_splitting(&m);
        let cost = clustering_cost_mst(&h, &m)
            .map_err(CliError::from)?
            .total_cost;
        let normalized = cost / (n as f64 * (n as f64).log2());
        let mut metrics = BTreeMap::new();
        metrics.insert("cost".into(), cost);
        metrics.insert("normalized".into(), normalized);
        rows.push(BenchRow { n, seed: 0, metrics });
    }
    Ok(rows)
}

fn msthull_suite(sizes: &[usize], seeds: u64, delta: f64) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for &candidates in sizes {
        for seed in 0..seeds {
            let mut rng = instance_rng(candidates, seed);
            // Greedy-filtered delta-separated subset of a random disk sample.
            let mut kept: Vec<PointH2> = Vec::new();
            for _ in 0..candidates {
                let u: f64 = rng.gen();
                let t = (1.0 + u * (6.0f64.cosh() - 1.0)).acosh();
                let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                let rho = (t / 2.0).tanh();
                let p = PointH2::new(rho * theta.cos(), rho * theta.sin())
                    .expect("inside the disk");
                if kept.iter().all(|q| hyperbolic_distance(*q, p) >= delta) {
                    kept.push(p);
                }
            }
            if kept.len() < 2 {
                continue;
            }
            let ratio = mst_hull_ratio(&kept, delta).map_err(CliError::from)?;
            let mut metrics = BTreeMap::new();
            metrics.insert("points".into(), kept.len() as f64);
            metrics.insert("ratio".into(), ratio);
            rows.push(BenchRow {
                n: candidates,
                seed,
                metrics,
            });
        }
    }
    Ok(rows)
}

fn euclid_suite(sizes: &[usize], seeds: u64) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for &n in sizes {
        if n > clusterpants::oracle::MAX_ORACLE_SITES {
            return Err(CliError::precondition(format!(
                "euclid suite compares against the oracle; sizes must stay <= {}",
                clusterpants::oracle::MAX_ORACLE_SITES
            )));
        }
        for seed in 0..seeds {
            let mut rng = instance_rng(n, seed);
            let pts: Vec<PointE2> = (0..n)
                .map(|_| PointE2::new(rng.gen(), rng.gen()))
                .collect();
            let q = build_compressed_quadtree(&pts).map_err(CliError::from)?;
            let h = quadtree_to_hierarchy(&q);
            let cost = clustering_cost_perimeter(&h, &pts)
                .map_err(CliError::from)?
                .total_cost;
            let oracle =
                optimal_clustering(&OracleInstance::Euclidean(&pts), Objective::PerimeterSum)
                    .map_err(CliError::from)?
                    .optimal_cost;
            let mut metrics = BTreeMap::new();
            metrics.insert("cost".into(), cost);
            metrics.insert("oracle".into(), oracle);
            metrics.insert("ratio".into(), cost / oracle);
            rows.push(BenchRow { n, seed, metrics });
        }
    }
    Ok(rows)
}

fn aggregate(rows: &[BenchRow]) -> BTreeMap<String, f64> {
    let mut agg = BTreeMap::new();
    if rows.is_empty() {
        return agg;
    }
    let keys: Vec<String> = rows[0].metrics.keys().cloned().collect();
    for key in keys {
        let values: Vec<f64> = rows
            .iter()
            .filter_map(|r| r.metrics.get(&key).copied())
            .collect();
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        agg.insert(format!("max_{key}"), max);
        agg.insert(format!("min_{key}"), min);
        agg.insert(format!("mean_{key}"), mean);
    }
    agg
}

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none()
}

fn paint(text: &str, ok: bool) -> String {
    if color_enabled() {
        let code = if ok { "32" } else { "31" };
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn print_table(report: &BenchReport) {
    let columns: Vec<&String> = report
        .rows
        .first()
        .map(|r| r.metrics.keys().collect())
        .unwrap_or_default();
    print!("{:>6} {:>6}", "n", "seed");
    for c in &columns {
        print!(" {:>14}", c);
    }
    println!();
    for row in &report.rows {
        print!("{:>6} {:>6}", row.n, row.seed);
        for c in &columns {
            match row.metrics.get(*c) {
                Some(v) => print!(" {:>14.6}", v),
                None => print!(" {:>14}", "-"),
            }
        }
        println!();
    }
    println!();
    // The aggregate line carries the suite's headline bound.
    let verdict = match report.suite.as_str() {
        "metric" => report
            .aggregate
            .get("max_ratio_lower")
            .map(|&v| (v, 3.4190, "max cost/lower")),
        "star" => report
            .aggregate
            .get("max_normalized")
            .map(|&v| (v, 3.5, "max cost/(n log2 n)")),
        "msthull" => report
            .aggregate
            .get("max_ratio")
            .map(|&v| (v, 2.0 + 1e-9, "max hull/mst")),
        "euclid" => report
            .aggregate
            .get("max_ratio")
            .map(|&v| (v, 32.0, "max cost/oracle")),
        _ => None,
    };
    for (key, value) in &report.aggregate {
        println!("{key:>22}: {value:.6}");
    }
    if let Some((value, bound, label)) = verdict {
        let ok = value <= bound;
        println!(
            "{}",
            paint(
                &format!("{label} = {value:.4} (bound {bound})"),
                ok
            )
        );
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_bench(
    suite: Suite,
    sizes: Option<Vec<usize>>,
    seeds: u64,
    delta: f64,
    format: crate::OutputFormat,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let sizes = sizes.unwrap_or_else(|| suite.default_sizes());
    let rows = match suite {
        Suite::Metric => metric_suite(&sizes, seeds)?,
        Suite::Star => star_suite(&sizes)?,
        Suite::Msthull => msthull_suite(&sizes, seeds, delta)?,
        Suite::Euclid => euclid_suite(&sizes, seeds)?,
    };
    let report = BenchReport {
        suite: suite.name().to_string(),
        delta,
        aggregate: aggregate(&rows),
        rows,
    };
    match format {
        crate::OutputFormat::Json => write_json(&report, output),
        crate::OutputFormat::Table => {
            print_table(&report);
            if let Some(path) = output {
                write_json(&report, Some(path))?;
            }
            Ok(())
        }
    }
}
