//! Reproducible instance generators. Every generator draws from one seeded
//! stream and records the seed in the output metadata.

use crate::error::CliError;
use crate::formats::{write_json, InstanceFile, InstanceKind, Metadata, SCHEMA_VERSION};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GenerateKind {
    /// Uniform points in the unit square.
    UniformSquare,
    /// Area-uniform points in a hyperbolic disk of the given radius.
    HyperbolicDisk,
    /// The unit star metric: distance 1 to the hub, 2 between leaves.
    StarMetric,
    /// Reduction metric of a random graph: 1 across edges, 2 otherwise.
    GraphMetric,
    /// Uniform random labeled tree.
    RandomTree,
}

impl GenerateKind {
    fn name(self) -> &'static str {
        match self {
            GenerateKind::UniformSquare => "uniform-square",
            GenerateKind::HyperbolicDisk => "hyperbolic-disk",
            GenerateKind::StarMetric => "star-metric",
            GenerateKind::GraphMetric => "graph-metric",
            GenerateKind::RandomTree => "random-tree",
        }
    }
}

pub fn cmd_generate(
    kind: GenerateKind,
    n: usize,
    seed: u64,
    radius: f64,
    edge_prob: f64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::precondition("n must be at least 1".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let metadata = Metadata {
        name: kind.name().to_string(),
        seed: Some(seed),
    };
    let inst = match kind {
        GenerateKind::UniformSquare => InstanceFile {
            version: SCHEMA_VERSION,
            kind: InstanceKind::Euclidean,
            n,
            points: Some((0..n).map(|_| [rng.gen::<f64>(), rng.gen::<f64>()]).collect()),
            matrix: None,
            edges: None,
            metadata,
        },
        GenerateKind::HyperbolicDisk => {
            // Beyond radius ~38 the Poincaré coordinate tanh(r/2) rounds onto
            // the unit circle; cap well before that.
            if !(radius > 0.0 && radius <= 30.0) {
                return Err(CliError::precondition(format!(
                    "hyperbolic-disk radius must be in (0, 30], got {radius}"
                )));
            }
            let points = (0..n)
                .map(|_| {
                    let u: f64 = rng.gen();
                    let t = (1.0 + u * (radius.cosh() - 1.0)).acosh();
                    let theta = rng.gen::<f64>() * std::f64::consts::TAU;
                    let rho = (t / 2.0).tanh();
                    [rho * theta.cos(), rho * theta.sin()]
                })
                .collect();
            InstanceFile {
                version: SCHEMA_VERSION,
                kind: InstanceKind::Hyperbolic,
                n,
                points: Some(points),
                matrix: None,
                edges: None,
                metadata,
            }
        }
        GenerateKind::StarMetric => {
            let matrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                0.0
                            } else if i == 0 || j == 0 {
                                1.0
                            } else {
                                2.0
                            }
                        })
                        .collect()
                })
                .collect();
            InstanceFile {
                version: SCHEMA_VERSION,
                kind: InstanceKind::Metric,
                n,
                points: None,
                matrix: Some(matrix),
                edges: None,
                metadata,
            }
        }
        GenerateKind::GraphMetric => {
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(CliError::precondition(format!(
                    "edge probability must be in [0, 1], got {edge_prob}"
                )));
            }
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen::<f64>() < edge_prob {
                        edges.push([i, j]);
                    }
                }
            }
            InstanceFile {
                version: SCHEMA_VERSION,
                kind: InstanceKind::Graph,
                n,
                points: None,
                matrix: None,
                edges: Some(edges),
                metadata,
            }
        }
        GenerateKind::RandomTree => {
            let edges = random_tree_edges(&mut rng, n);
            InstanceFile {
                version: SCHEMA_VERSION,
                kind: InstanceKind::Tree,
                n,
                points: None,
                matrix: None,
                edges: Some(edges),
                metadata,
            }
        }
    };
    write_json(&inst, output)
}

fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<[usize; 2]> {
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![[0, 1]];
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push([leaf.min(v), leaf.max(v)]);
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let mut it = leaves.into_iter();
    let (a, b) = (it.next().unwrap(), it.next().unwrap());
    edges.push([a.min(b), a.max(b)]);
    edges
}
