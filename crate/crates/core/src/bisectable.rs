//! Recognition and counting of bisectable trees.
//!
//! A tree on a single vertex is 0-bisectable; an i-bisectable tree is two
//! (i−1)-bisectable trees joined by one edge, so it has exactly 2^i vertices.
//! Recognition runs in linear time by contracting "odd" edges level by
//! level; counting follows an exact recurrence over symmetric and asymmetric
//! trees and needs big integers from i = 6 on.

use crate::error::{Error, Result};
use crate::hierarchy::ClusterHierarchy;
use num_bigint::BigUint;

/// An unrooted tree on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl FreeTree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
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
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) out of range")));
            }
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            if ru == rv {
                return Err(Error::InvalidTree(format!("edge ({u}, {v}) closes a cycle")));
            }
            uf[ru] = rv;
        }
        Ok(Self { n, edges })
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v)).collect()).expect("path is a tree")
    }

    pub fn star(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (0, v)).collect()).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Whether the tree is i-bisectable for some i.
pub fn is_bisectable(t: &FreeTree) -> bool {
    bisection_hierarchy(t).is_some()
}

/// The bisection hierarchy over the tree's vertices, or `None` if the tree
/// is not bisectable.
pub fn bisection_hierarchy(t: &FreeTree) -> Option<ClusterHierarchy> {
    recognize(t).0
}

/// Recognition plus a unit-work counter (vertices and edges touched across
/// all contraction levels), used to check the linear running time.
pub(crate) fn recognize(t: &FreeTree) -> (Option<ClusterHierarchy>, usize) {
    if !t.n.is_power_of_two() {
        return (None, 1);
    }
    // Current level: a tree over "groups"; each group owns the hierarchy of
    // the original vertices merged into it so far.
    let mut hierarchies: Vec<ClusterHierarchy> =
        (0..t.n).map(ClusterHierarchy::leaf).collect();
    let mut edges: Vec<(usize, usize)> = t.edges.clone();
    let mut n = t.n;
    let mut work = 0usize;

    while n > 1 {
        work += n + edges.len();

        // Root at group 0, count descendants with an iterative walk.
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut visited = vec![false; n];
        visited[0] = true;
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adj[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut descendants = vec![1usize; n];
        for &v in order.iter().rev() {
            if parent[v] != usize::MAX {
                descendants[parent[v]] += descendants[v];
            }
        }

        // An edge is odd when its lower endpoint has an odd descendant count.
        // A bisectable tree has exactly n/2 odd edges and they pair the
        // vertices perfectly; contracting them yields the next level.
        let odd: Vec<usize> = (1..n).filter(|&v| descendants[v] % 2 == 1).collect();
        if odd.len() != n / 2 {
            return (None, work);
        }
        let mut mate = vec![usize::MAX; n];
        for &v in &odd {
            let p = parent[v];
            if mate[v] != usize::MAX || mate[p] != usize::MAX {
                return (None, work); // odd edges share a vertex: no pairing
            }
            mate[v] = p;
            mate[p] = v;
        }

        // Contract each odd edge; the lower endpoint merges into its parent.
        let mut group = vec![usize::MAX; n];
        let mut next_h: Vec<ClusterHierarchy> = Vec::with_capacity(n / 2);
        let mut next_id = 0usize;
        for v in 0..n {
            if group[v] != usize::MAX {
                continue;
            }
            let m = mate[v];
            group[v] = next_id;
            group[m] = next_id;
            let (a, b) = (v.min(m), v.max(m));
            next_h.push(ClusterHierarchy::join(
                hierarchies[a].clone(),
                hierarchies[b].clone(),
            ));
            next_id += 1;
        }
        let mut next_edges = Vec::with_capacity(n / 2 - 1);
        for &(u, v) in &edges {
            let (gu, gv) = (group[u], group[v]);
            if gu != gv {
                next_edges.push((gu, gv));
            }
        }
        // Contracting a perfect matching of tree edges leaves a tree.
        debug_assert_eq!(next_edges.len(), next_id - 1);

        hierarchies = next_h;
        edges = next_edges;
        n = next_id;
    }
    (Some(hierarchies.pop().expect("one group remains")), work)
}

/// Ground-truth recognizer: try every edge that splits the vertex count in
/// half and recurse on both sides. Exponential; capped at 32 vertices.
pub fn brute_force_bisectable(t: &FreeTree) -> Result<bool> {
    if t.n > 32 {
        return Err(Error::TooManyPoints { limit: 32, got: t.n });
    }
    let adj = t.adjacency();
    let all: Vec<usize> = (0..t.n).collect();
    Ok(brute_force_subset(&adj, &all))
}

fn brute_force_subset(adj: &[Vec<usize>], vertices: &[usize]) -> bool {
    let n = vertices.len();
    if n == 1 {
        return true;
    }
    if !n.is_power_of_two() {
        return false;
    }
    let mut member = vec![false; adj.len()];
    for &v in vertices {
        member[v] = true;
    }
    // Subtree sizes below each vertex of the induced tree.
    let root = vertices[0];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; adj.len()];
    visited[root] = true;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in &adj[v] {
            if member[w] && !visited[w] {
                visited[w] = true;
                parent[w] = v;
                stack.push(w);
            }
        }
    }
    let mut size = vec![1usize; adj.len()];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    // Removing the edge (v, parent[v]) leaves size[v] vertices below.
    for &v in &order {
        if parent[v] != usize::MAX && size[v] == n / 2 {
            let below: Vec<usize> = collect_side(adj, &member, v, parent[v]);
            let above: Vec<usize> = vertices
                .iter()
                .copied()
                .filter(|u| !below.contains(u))
                .collect();
            if brute_force_subset(adj, &below) && brute_force_subset(adj, &above) {
                return true;
            }
        }
    }
    false
}

fn collect_side(adj: &[Vec<usize>], member: &[bool], start: usize, banned: usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut visited = vec![false; adj.len()];
    visited[start] = true;
    visited[banned] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if member[w] && !visited[w] {
                visited[w] = true;
                out.push(w);
                stack.push(w);
            }
        }
    }
    out
}

/// Exact counts of i-bisectable trees up to isomorphism: `d` in total, `s`
/// symmetric (the two halves are exchanged by an automorphism) and `a = d − s`
/// asymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisectCounts {
    pub d: BigUint,
    pub s: BigUint,
    pub a: BigUint,
}

/// Count i-bisectable trees by the recurrence
/// `sᵢ = 2^{i-1}·aᵢ₋₁ + 2^{i-2}·sᵢ₋₁`, `aᵢ = C(sᵢ, 2)`, `dᵢ = aᵢ + sᵢ`
/// with base `d₁ = s₁ = 1`, `a₁ = 0`.
pub fn count_bisectable(i: u32) -> Result<BisectCounts> {
    if i < 1 {
        return Err(Error::InvalidParameter(
            "bisectable counts are defined for i >= 1".into(),
        ));
    }
    let mut s = BigUint::from(1u32);
    let mut a = BigUint::from(0u32);
    for level in 2..=i {
        let pow_a = BigUint::from(1u32) << (level - 1);
        let pow_s = BigUint::from(1u32) << (level - 2);
        let s_next = pow_a * &a + pow_s * &s;
        // C(s, 2)
        a = &s_next * (&s_next - BigUint::from(1u32)) / BigUint::from(2u32);
        s = s_next;
    }
    Ok(BisectCounts {
        d: &a + &s,
        s,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_and_p4() {
        assert!(is_bisectable(&FreeTree::path(2)));
        assert!(is_bisectable(&FreeTree::path(4)));
        assert!(!is_bisectable(&FreeTree::star(4)));
        // Single vertex is 0-bisectable.
        assert!(is_bisectable(&FreeTree::new(1, vec![]).unwrap()));
        // 6 is not a power of two.
        assert!(!is_bisectable(&FreeTree::path(6)));
    }

    #[test]
    fn hierarchy_structure() {
        let h = bisection_hierarchy(&FreeTree::path(4)).unwrap();
        h.validate_partition(4).unwrap();
        let family = h.cluster_family();
        assert_eq!(family, vec![vec![0, 1], vec![0, 1, 2, 3], vec![2, 3]]);
    }

    #[test]
    fn brute_force_basics() {
        assert!(brute_force_bisectable(&FreeTree::new(1, vec![]).unwrap()).unwrap());
        assert!(!brute_force_bisectable(&FreeTree::path(6)).unwrap());
        assert!(brute_force_bisectable(&FreeTree::path(8)).unwrap());
        assert!(brute_force_bisectable(&FreeTree::path(64)).is_err());
    }

    #[test]
    fn published_counts() {
        // Base case: the single edge.
        assert_eq!(count_bisectable(1).unwrap().d, BigUint::from(1u32));
        let c3 = count_bisectable(3).unwrap();
        assert_eq!(c3.d, BigUint::from(3u32));
        assert_eq!(c3.s, BigUint::from(2u32));
        assert_eq!(c3.a, BigUint::from(1u32));
        assert_eq!(count_bisectable(4).unwrap().d, BigUint::from(136u32));
        assert_eq!(count_bisectable(5).unwrap().d, BigUint::from(2098176u32));
        // Intermediate consistency: the only 2-bisectable tree is the path.
        let c2 = count_bisectable(2).unwrap();
        assert_eq!(
            (c2.d, c2.s, c2.a),
            (
                BigUint::from(1u32),
                BigUint::from(1u32),
                BigUint::from(0u32)
            )
        );
        assert!(count_bisectable(0).is_err());
        // d = a + s holds along the way.
        let c6 = count_bisectable(6).unwrap();
        assert_eq!(c6.d, &c6.a + &c6.s);
    }

    #[test]
    fn recognition_is_linear() {
        // Work grows geometrically per contraction level, so the counter
        // stays within a constant multiple of n.
        for exp in [6u32, 9, 12] {
            let n = 1usize << exp;
            let (result, work) = recognize(&FreeTree::path(n));
            assert!(result.is_some());
            assert!(work <= 8 * n, "work {work} for n {n}");
        }
    }

    #[test]
    fn invalid_trees_rejected() {
        assert!(FreeTree::new(0, vec![]).is_err());
        assert!(FreeTree::new(3, vec![(0, 1)]).is_err());
        assert!(FreeTree::new(3, vec![(0, 1), (0, 1)]).is_err());
        assert!(FreeTree::new(2, vec![(0, 5)]).is_err());
    }
}
