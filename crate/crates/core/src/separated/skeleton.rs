use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decompose::NetworkDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skeleton {
    /// Spanner edges `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub tree_edges: usize,
    pub bridge_edges: usize,
    /// Deepest BFS tree over all clusters.
    pub max_tree_depth: usize,
}

/// One BFS tree per cluster, rooted at a minimum-eccentricity vertex (smallest ID on ties),
/// plus the lexicographically smallest edge between every pair of adjacent clusters.
/// Every graph edge is then stretched by at most `4 * max_tree_depth + 1`.
pub fn skeleton_spanner(g: &Graph, q: &NetworkDecomposition) -> Result<Skeleton> {
    let owner = q.owner(g.n());
    if let Some(v) = g.vertices().find(|&v| owner[v] == 0) {
        return Err(Error::Precondition(format!("vertex {v} is in no cluster")));
    }
    let mut edges = Vec::new();
    let mut max_tree_depth = 0;
    for (i, set) in q.cluster_sets().iter().enumerate() {
        let sub = g.induced(set)?;
        if !sub.graph.is_connected() {
            return Err(Error::Precondition(format!("cluster {} is not connected", i + 1)));
        }
        let root = sub
            .graph
            .vertices()
            .min_by_key(|&v| (sub.graph.eccentricity(v), v))
            .expect("clusters are nonempty");
        let dist = sub.graph.distances_from(&VertexSet::from([root]), None);
        for v in sub.graph.vertices().filter(|&v| v != root) {
            let d = dist[v].expect("connected cluster");
            max_tree_depth = max_tree_depth.max(d);
            let parent = sub
                .graph
                .neighbors(v)
                .iter()
                .copied()
                .find(|&u| dist[u] == Some(d - 1))
                .expect("a BFS parent exists");
            let (a, b) = (sub.host(v), sub.host(parent));
            edges.push((a.min(b), a.max(b)));
        }
    }
    let tree_edges = edges.len();
    let mut bridges: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != b {
            bridges.entry((a.min(b), a.max(b))).or_insert((u, v));
        }
    }
    let bridge_edges = bridges.len();
    edges.extend(bridges.into_values());
    edges.sort_unstable();
    Ok(Skeleton { edges, tree_edges, bridge_edges, max_tree_depth })
}
