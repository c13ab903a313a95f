use std::collections::BTreeSet;

use serde::Serialize;

use super::{component_decomposition, ApproxResult};
use crate::coloring::LinialRounds;
use crate::decompose::RelabelScheme;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separated::sep_decompose;
use crate::sim::{RoundLedger, SimConfig};

/// Largest server edge set the exact per-cluster search accepts.
pub const SPANNER_CAP: usize = 25;

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpannerOutput {
    pub edges: Vec<(usize, usize)>,
    pub intra_edges: usize,
    pub crossing_edges: usize,
}

/// Every simple `a`-`b` path of at most `t` server edges, as a bitmask over `servers`.
fn short_paths(adj: &[Vec<(usize, usize)>], a: usize, b: usize, t: usize) -> Vec<u32> {
    fn walk(adj: &[Vec<(usize, usize)>], at: usize, b: usize, left: usize, mask: u32, on: &mut Vec<usize>, out: &mut Vec<u32>) {
        if at == b {
            out.push(mask);
            return;
        }
        if left == 0 {
            return;
        }
        for &(next, e) in &adj[at] {
            if !on.contains(&next) {
                on.push(next);
                walk(adj, next, b, left - 1, mask | 1 << e, on, out);
                on.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(adj, a, b, t, 0, &mut vec![a], &mut out);
    out.sort_unstable_by_key(|m| (m.count_ones(), *m));
    out.dedup();
    out
}

/// Fewest `servers` edges such that every client edge has a path of length `<= t` through them.
/// Branches over the short paths of the first unsatisfied client, which any solution must contain.
pub fn min_client_server_spanner(
    clients: &[(usize, usize)],
    servers: &[(usize, usize)],
    t: usize,
) -> Result<Vec<(usize, usize)>> {
    if servers.len() > SPANNER_CAP {
        return Err(Error::Oversize { what: "server edge set for exact spanner", size: servers.len(), cap: SPANNER_CAP });
    }
    let n = servers.iter().chain(clients).map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let mut adj = vec![Vec::new(); n + 1];
    for (e, &(u, v)) in servers.iter().enumerate() {
        adj[u].push((v, e));
        adj[v].push((u, e));
    }
    let paths: Vec<Vec<u32>> = clients.iter().map(|&(u, v)| short_paths(&adj, u, v, t)).collect();
    if let Some(i) = paths.iter().position(Vec::is_empty) {
        return Err(Error::Precondition(format!("client {:?} has no short server path", clients[i])));
    }

    fn search(paths: &[Vec<u32>], chosen: u32, best: &mut u32) {
        let open = paths
            .iter()
            .filter(|ps| !ps.iter().any(|&p| p & !chosen == 0))
            .min_by_key(|ps| ps.len());
        let Some(options) = open else {
            if chosen.count_ones() < best.count_ones() {
                *best = chosen;
            }
            return;
        };
        for &p in options {
            let next = chosen | p;
            if next.count_ones() < best.count_ones() {
                search(paths, next, best);
            }
        }
    }

    let mut best: u32 = paths.iter().map(|ps| ps[0]).fold(0, |m, p| m | p);
    search(&paths, 0, &mut best);
    Ok((0..servers.len()).filter(|e| best >> e & 1 == 1).map(|e| servers[e]).collect())
}

/// `t`-spanner from a `(2t - 1)`-separated decomposition: each cluster's internal edges get a
/// minimum spanner drawn from the edges within `t - 1` hops of the cluster, and every edge
/// between clusters is kept. `k = 1` uses the connected components as clusters.
pub fn approx_t_spanner(g: &Graph, t: usize, k: usize, cfg: &SimConfig) -> Result<ApproxResult<SpannerOutput>> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("stretch must be at least 2, got {t}")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("graph is not connected".into()));
    }
    let sigma = 2 * t - 1;
    let (nd, mut ledger) = if k == 1 {
        (component_decomposition(g, sigma), RoundLedger::new())
    } else {
        let (nd, _, l) = sep_decompose(g, k, sigma, RelabelScheme::ArbLinial(LinialRounds::UntilFixpoint), cfg)?;
        (nd, l)
    };
    let owner = nd.owner(g.n());
    let mut intra: BTreeSet<(usize, usize)> = BTreeSet::new();
    for set in nd.cluster_sets() {
        let clients: Vec<(usize, usize)> =
            g.edges().filter(|(u, v)| set.contains(u) && set.contains(v)).collect();
        if clients.is_empty() {
            continue;
        }
        let reach = g.ball_of(&set, t - 1);
        let servers: Vec<(usize, usize)> =
            g.edges().filter(|(u, v)| reach.contains(u) && reach.contains(v)).collect();
        intra.extend(min_client_server_spanner(&clients, &servers, t)?);
    }
    let crossing: BTreeSet<(usize, usize)> = g.edges().filter(|&(u, v)| owner[u] != owner[v]).collect();
    let intra_edges = intra.len();
    let crossing_edges = crossing.len();
    let edges: Vec<(usize, usize)> = intra.union(&crossing).copied().collect();
    ledger.charge("cluster-solve", (nd.cert.d + t) as u64, 1);
    let label_count = nd.label_count();
    Ok(ApproxResult {
        size: edges.len(),
        bound: label_count as f64,
        label_count,
        value: SpannerOutput { edges, intra_edges, crossing_edges },
        oracle_optimum: None,
        ledger,
        decomposition: nd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cluster_examples() {
        let c5 = Graph::new(5, (1..=5).map(|i| (i, i % 5 + 1))).unwrap();
        let r = approx_t_spanner(&c5, 4, 1, &SimConfig::default()).unwrap();
        assert_eq!(r.size, 4);
        let k4 = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let r = approx_t_spanner(&k4, 2, 1, &SimConfig::default()).unwrap();
        assert_eq!(r.size, 3);
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert!(matches!(approx_t_spanner(&g, 2, 1, &SimConfig::default()), Err(Error::Precondition(_))));
        assert!(approx_t_spanner(&g, 1, 1, &SimConfig::default()).is_err());
    }
}
