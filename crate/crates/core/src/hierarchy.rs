//! The rooted binary cluster tree that every clustering algorithm emits,
//! plus the cost report structure attached to it.

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HierarchyNode {
    Leaf { site: usize },
    Internal { left: NodeId, right: NodeId },
}

/// A hierarchical clustering: a binary tree with one site index per leaf.
/// Each internal node implicitly denotes the cluster of its descendant sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterHierarchy {
    nodes: Vec<HierarchyNode>,
    root: NodeId,
}

impl ClusterHierarchy {
    pub fn leaf(site: usize) -> Self {
        Self {
            nodes: vec![HierarchyNode::Leaf { site }],
            root: 0,
        }
    }

    /// Combine two hierarchies under a new root.
    pub fn join(left: Self, right: Self) -> Self {
        let mut nodes = left.nodes;
        let offset = nodes.len();
        nodes.extend(right.nodes.into_iter().map(|n| match n {
            HierarchyNode::Leaf { site } => HierarchyNode::Leaf { site },
            HierarchyNode::Internal { left, right } => HierarchyNode::Internal {
                left: left + offset,
                right: right + offset,
            },
        }));
        let root = nodes.len();
        nodes.push(HierarchyNode::Internal {
            left: left.root,
            right: right.root + offset,
        });
        Self { nodes, root }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> HierarchyNode {
        self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn children(&self, id: NodeId) -> Option<(NodeId, NodeId)> {
        match self.nodes[id] {
            HierarchyNode::Leaf { .. } => None,
            HierarchyNode::Internal { left, right } => Some((left, right)),
        }
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        matches!(self.nodes[id], HierarchyNode::Leaf { .. })
    }

    pub fn internal_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(move |&id| !self.is_leaf(id))
    }

    pub fn n_sites(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, HierarchyNode::Leaf { .. }))
            .count()
    }

    /// Site indices under each node, indexed by node id. Sites are listed in
    /// ascending order.
    pub fn node_sites(&self) -> Vec<Vec<usize>> {
        let mut sites: Vec<Vec<usize>> = vec![Vec::new(); self.nodes.len()];
        // Nodes are created children-first, so a forward pass sees children
        // before their parent.
        for id in 0..self.nodes.len() {
            match self.nodes[id] {
                HierarchyNode::Leaf { site } => sites[id].push(site),
                HierarchyNode::Internal { left, right } => {
                    let mut merged =
                        Vec::with_capacity(sites[left].len() + sites[right].len());
                    merged.extend_from_slice(&sites[left]);
                    merged.extend_from_slice(&sites[right]);
                    merged.sort_unstable();
                    sites[id] = merged;
                }
            }
        }
        sites
    }

    /// Depth of each node below the root (root has depth 0).
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            if let HierarchyNode::Internal { left, right } = self.nodes[id] {
                depth[left] = depth[id] + 1;
                depth[right] = depth[id] + 1;
                stack.push(left);
                stack.push(right);
            }
        }
        depth
    }

    /// Check that the leaves carry exactly the site indices `0..n`.
    pub fn validate_partition(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for node in &self.nodes {
            if let HierarchyNode::Leaf { site } = *node {
                if site >= n {
                    return Err(Error::HierarchyMismatch(format!(
                        "leaf site {site} out of range for {n} sites"
                    )));
                }
                if seen[site] {
                    return Err(Error::HierarchyMismatch(format!(
                        "site {site} appears on two leaves"
                    )));
                }
                seen[site] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::HierarchyMismatch(format!(
                "site {missing} missing from the hierarchy"
            )));
        }
        Ok(())
    }

    /// Replace every leaf by the hierarchy `expand(site)` returns for it.
    pub fn substitute_leaves(&self, mut expand: impl FnMut(usize) -> ClusterHierarchy) -> Self {
        fn rebuild(
            h: &ClusterHierarchy,
            id: NodeId,
            expand: &mut impl FnMut(usize) -> ClusterHierarchy,
        ) -> ClusterHierarchy {
            match h.node(id) {
                HierarchyNode::Leaf { site } => expand(site),
                HierarchyNode::Internal { left, right } => ClusterHierarchy::join(
                    rebuild(h, left, expand),
                    rebuild(h, right, expand),
                ),
            }
        }
        rebuild(self, self.root, &mut expand)
    }

    /// The family of clusters as sorted site lists, sorted for comparison in
    /// tests of permutation invariance.
    pub fn cluster_family(&self) -> Vec<Vec<usize>> {
        let sites = self.node_sites();
        let mut family: Vec<Vec<usize>> = self
            .internal_ids()
            .map(|id| sites[id].clone())
            .collect();
        family.sort();
        family
    }
}

/// Cost accounting for one clustering run.
///
/// `level_costs[k]` is the summed cluster size over internal nodes at depth
/// `k`; the bounds come from the instance (entropy bounds for the spanning
/// tree objective, the root hull for the perimeter objective) and always
/// bracket the cost of this library's own algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub total_cost: f64,
    pub level_costs: Vec<f64>,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub ratio: f64,
}

impl CostReport {
    /// `total / lower` with the degenerate zero-cost instance mapped to 1.
    pub fn ratio_of(total: f64, lower: f64) -> f64 {
        if lower > 0.0 {
            total / lower
        } else {
            1.0
        }
    }
}
