//! Approximation algorithms that solve each cluster exactly (or greedily) and stitch the
//! answers together label by label.

mod color;
mod mds;
mod spanner;

pub use color::{approx_min_coloring, color_high_girth, color_triangle_free};
pub use mds::{approx_mds, exact_cluster_mds, greedy_cluster_mds, MdsPipeline, MdsSolver, EXACT_MDS_CAP};
pub use spanner::{approx_t_spanner, min_client_server_spanner, SpannerOutput, SPANNER_CAP};

use serde::Serialize;

use crate::decompose::{Certificate, Cluster, DiameterMode, NetworkDecomposition};
use crate::graph::{Graph, VertexSet};
use crate::sim::RoundLedger;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ApproxResult<T> {
    pub value: T,
    /// Objective value of `value`: colors used, dominating-set size or spanner edges.
    pub size: usize,
    /// Guarantee `size` is held to: a ratio against the optimum, or a palette size for colorings.
    pub bound: f64,
    pub label_count: usize,
    pub oracle_optimum: Option<usize>,
    pub ledger: RoundLedger,
    pub decomposition: NetworkDecomposition,
}

/// One cluster per connected component, all with label 1. Components are infinitely far apart,
/// so the decomposition is `sigma`-separated for every `sigma`.
pub fn component_decomposition(g: &Graph, sigma: usize) -> NetworkDecomposition {
    let comps = g.components();
    let d = comps.iter().map(|c| g.strong_diameter(c).ok().flatten().unwrap_or(0)).max().unwrap_or(0);
    let clusters = comps
        .into_iter()
        .map(|c| Cluster {
            label: 1,
            leader: *c.first().expect("components are nonempty"),
            members: c.into_iter().collect(),
            level: 1,
        })
        .collect();
    NetworkDecomposition { cert: Certificate { d, l: 1, sigma }, clusters, mode: DiameterMode::Strong, realized_dom: None }
}

/// Whether clusters sharing a label have pairwise disjoint closed neighborhoods.
pub fn same_label_neighborhoods_disjoint(g: &Graph, nd: &NetworkDecomposition) -> bool {
    let mut claimed: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for (i, c) in nd.clusters.iter().enumerate() {
        let set: VertexSet = c.members.iter().copied().collect();
        for v in g.closed_neighborhood_of(&set) {
            if let Some(&other) = claimed.get(&(c.label, v)) {
                if other != i {
                    return false;
                }
            }
            claimed.insert((c.label, v), i);
        }
    }
    true
}
