//! Versioned JSON schemas for instance and result files, plus conversions
//! into the library's domain types. Files are pretty-printed so fixtures
//! stay reviewable in diffs.

use crate::error::CliError;
use clusterpants::bisectable::FreeTree;
use clusterpants::geometry::{PointE2, PointH2};
use clusterpants::hierarchy::{ClusterHierarchy, HierarchyNode};
use clusterpants::treecluster::DistanceMatrix;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Euclidean,
    Hyperbolic,
    Metric,
    Tree,
    Graph,
}

impl std::fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InstanceKind::Euclidean => "euclidean",
            InstanceKind::Hyperbolic => "hyperbolic",
            InstanceKind::Metric => "metric",
            InstanceKind::Tree => "tree",
            InstanceKind::Graph => "graph",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Metadata {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub kind: InstanceKind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    pub metadata: Metadata,
}

impl InstanceFile {
    /// Check schema version and that the payload matches the declared kind.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.version != SCHEMA_VERSION {
            return Err(CliError::input(format!(
                "unsupported instance schema version {} (expected {SCHEMA_VERSION})",
                self.version
            )));
        }
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::input(format!(
                    "kind '{}' requires field '{what}' sized to n = {}",
                    self.kind, self.n
                )))
            }
        };
        match self.kind {
            InstanceKind::Euclidean | InstanceKind::Hyperbolic => need(
                self.points.as_ref().is_some_and(|p| p.len() == self.n),
                "points",
            ),
            InstanceKind::Metric => need(
                self.matrix.as_ref().is_some_and(|m| m.len() == self.n),
                "matrix",
            ),
            InstanceKind::Tree => need(
                self.edges.as_ref().is_some_and(|e| e.len() + 1 == self.n),
                "edges",
            ),
            InstanceKind::Graph => need(self.edges.is_some(), "edges"),
        }
    }

    pub fn euclidean_points(&self) -> Result<Vec<PointE2>, CliError> {
        let pts = self.points.as_ref().ok_or_else(|| {
            CliError::precondition(format!("instance of kind '{}' has no points", self.kind))
        })?;
        for (i, [x, y]) in pts.iter().enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(CliError::input(format!("point {i} is not finite")));
            }
        }
        Ok(pts.iter().map(|&[x, y]| PointE2::new(x, y)).collect())
    }

    pub fn hyperbolic_points(&self) -> Result<Vec<PointH2>, CliError> {
        let pts = self.points.as_ref().ok_or_else(|| {
            CliError::precondition(format!("instance of kind '{}' has no points", self.kind))
        })?;
        pts.iter()
            .enumerate()
            .map(|(i, &[u, v])| {
                PointH2::new(u, v)
                    .map_err(|e| CliError::input(format!("point {i}: {e}")))
            })
            .collect()
    }

    /// The finite metric an algorithm should run on, derived from whatever
    /// payload the instance carries.
    pub fn distance_matrix(&self) -> Result<DistanceMatrix, CliError> {
        match self.kind {
            InstanceKind::Metric => {
                let rows = self.matrix.as_ref().expect("validated");
                DistanceMatrix::from_rows(rows).map_err(|e| CliError::input(e.to_string()))
            }
            InstanceKind::Graph => {
                let edges: Vec<(usize, usize)> = self
                    .edges
                    .as_ref()
                    .expect("validated")
                    .iter()
                    .map(|&[u, v]| (u, v))
                    .collect();
                clusterpants::oracle::metric_from_graph(self.n, &edges)
                    .map_err(|e| CliError::input(e.to_string()))
            }
            InstanceKind::Euclidean => {
                DistanceMatrix::from_euclidean_points(&self.euclidean_points()?)
                    .map_err(|e| CliError::input(e.to_string()))
            }
            InstanceKind::Hyperbolic => {
                DistanceMatrix::from_hyperbolic_points(&self.hyperbolic_points()?)
                    .map_err(|e| CliError::input(e.to_string()))
            }
            InstanceKind::Tree => Err(CliError::precondition(
                "tree instances only work with the bisect command".to_string(),
            )),
        }
    }

    pub fn free_tree(&self) -> Result<FreeTree, CliError> {
        if self.kind != InstanceKind::Tree {
            return Err(CliError::precondition(format!(
                "bisect needs a tree instance, got kind '{}'",
                self.kind
            )));
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .as_ref()
            .expect("validated")
            .iter()
            .map(|&[u, v]| (u, v))
            .collect();
        FreeTree::new(self.n, edges).map_err(|e| CliError::input(e.to_string()))
    }
}

/// Nested hierarchy encoding: a leaf is the site index, an internal node is
/// the two-element array of its children.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HierarchyJson {
    Leaf(usize),
    Node(Box<HierarchyJson>, Box<HierarchyJson>),
}

impl HierarchyJson {
    pub fn from_hierarchy(h: &ClusterHierarchy) -> Self {
        fn build(h: &ClusterHierarchy, id: usize) -> HierarchyJson {
            match h.node(id) {
                HierarchyNode::Leaf { site } => HierarchyJson::Leaf(site),
                HierarchyNode::Internal { left, right } => HierarchyJson::Node(
                    Box::new(build(h, left)),
                    Box::new(build(h, right)),
                ),
            }
        }
        build(h, h.root())
    }

    pub fn to_hierarchy(&self) -> ClusterHierarchy {
        match self {
            HierarchyJson::Leaf(site) => ClusterHierarchy::leaf(*site),
            HierarchyJson::Node(l, r) => {
                ClusterHierarchy::join(l.to_hierarchy(), r.to_hierarchy())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostsJson {
    pub total: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub ratio: f64,
}

impl From<&clusterpants::CostReport> for CostsJson {
    fn from(r: &clusterpants::CostReport) -> Self {
        CostsJson {
            total: r.total_cost,
            lower_bound: r.lower_bound,
            upper_bound: r.upper_bound,
            ratio: r.ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveJson {
    pub cluster: usize,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub curves_simple: bool,
    pub curves_disjoint: bool,
    pub containment_ok: bool,
    pub pants_condition_ok: bool,
    pub issues: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Timings {
    pub parse_ms: f64,
    pub solve_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<HierarchyJson>,
    pub costs: CostsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curves: Option<Vec<CurveJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub validation: Option<ValidationJson>,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BisectOutput {
    pub version: u32,
    pub bisectable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hierarchy: Option<HierarchyJson>,
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountOutput {
    pub version: u32,
    pub i: u32,
    /// Decimal strings: the counts outgrow u64 from i = 6 on.
    pub total: String,
    pub symmetric: String,
    pub asymmetric: String,
    pub timings: Timings,
}

pub fn read_instance(path: &std::path::Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let inst: InstanceFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    inst.validate()?;
    Ok(inst)
}

pub fn read_result(path: &std::path::Path) -> Result<ResultFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(value: &T, output: Option<&std::path::Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
