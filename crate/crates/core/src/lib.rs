//! Hierarchical clustering that minimizes the total size of all clusters,
//! with provable constant-factor guarantees, plus the machinery to verify
//! those guarantees at desk scale.
//!
//! Cluster size is the spanning tree length of the cluster in a general
//! metric space, or the convex hull perimeter in the Euclidean and
//! hyperbolic planes. The crate provides:
//!
//! * [`treecluster`] — balanced recursive splitting of the minimum spanning
//!   tree for arbitrary metrics, with entropy-style bounds certifying a
//!   ratio below 3.42.
//! * [`quadtree`] — compressed-quadtree clustering for planar sites, whose
//!   sibling clusters always have disjoint hulls.
//! * [`pants`] — conversion of such hierarchies into a shortest-style pants
//!   decomposition: disjoint simple closed curves cutting the plane minus
//!   the sites into three-boundary regions.
//! * [`hyperbolic`] — the combined pipeline for the hyperbolic plane:
//!   well-separated sparsification, per-cell Klein-model quadtrees, and a
//!   spanning-tree backbone.
//! * [`bisectable`] — recognition and exact counting of bisectable trees,
//!   the combinatorial core of the hardness side of the problem.
//! * [`oracle`] — exact optimal clusterings by subset dynamic programming,
//!   used as ground truth in tests and benchmark ratio reports.
//!
//! All algorithms are deterministic: ties are broken by fixed lexicographic
//! rules so identical inputs produce identical hierarchies on any platform.

pub mod bisectable;
pub mod error;
pub mod geometry;
pub mod hierarchy;
pub mod hyperbolic;
pub mod oracle;
pub mod pants;
pub mod quadtree;
pub mod treecluster;

pub use error::{Error, Result};
pub use geometry::{PointE2, PointH2, Polygon};
pub use hierarchy::{ClusterHierarchy, CostReport, HierarchyNode, NodeId};
pub use treecluster::{DistanceMatrix, WeightedTree};
