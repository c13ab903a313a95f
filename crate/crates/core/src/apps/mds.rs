use serde::{Deserialize, Serialize};

use super::{component_decomposition, ApproxResult};
use crate::coloring::LinialRounds;
use crate::decompose::{extract_h_partition, relabel, NetworkDecomposition, RelabelScheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::harmonic;
use crate::separated::{rs_decompose, sep_decompose, RulingMethod};
use crate::sim::{RoundLedger, SimConfig};

/// Largest candidate set the exact per-cluster search accepts.
pub const EXACT_MDS_CAP: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MdsSolver {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MdsPipeline {
    /// Randomized 3-separated decomposition.
    Randomized,
    /// Ruling-set decomposition relabeled on the squared cluster supergraph; uses no randomness.
    Deterministic,
}

/// Smallest `D` within the closed neighborhood of `cluster` that dominates `cluster`, by
/// branch and bound on the lowest undominated vertex.
pub fn exact_cluster_mds(g: &Graph, cluster: &VertexSet) -> Result<VertexSet> {
    let candidates: Vec<usize> = g.closed_neighborhood_of(cluster).into_iter().collect();
    if candidates.len() > EXACT_MDS_CAP {
        return Err(Error::Oversize { what: "cluster neighborhood for exact domination", size: candidates.len(), cap: EXACT_MDS_CAP });
    }
    let targets: Vec<usize> = cluster.iter().copied().collect();
    let full: u32 = if targets.len() == 32 { u32::MAX } else { (1u32 << targets.len()) - 1 };
    let cover: Vec<u32> = candidates
        .iter()
        .map(|&c| {
            targets
                .iter()
                .enumerate()
                .filter(|&(_, &t)| t == c || g.has_edge(t, c))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();

    fn search(cover: &[u32], full: u32, covered: u32, chosen: &mut Vec<usize>, best: &mut Option<Vec<usize>>) {
        if covered == full {
            if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
                *best = Some(chosen.clone());
            }
            return;
        }
        if best.as_ref().is_some_and(|b| chosen.len() + 1 >= b.len()) {
            return;
        }
        let target = (!covered & full).trailing_zeros();
        for (i, &c) in cover.iter().enumerate() {
            if c >> target & 1 == 1 {
                chosen.push(i);
                search(cover, full, covered | c, chosen, best);
                chosen.pop();
            }
        }
    }

    let mut best = None;
    search(&cover, full, 0, &mut Vec::new(), &mut best);
    Ok(best.expect("the cluster dominates itself").into_iter().map(|i| candidates[i]).collect())
}

/// Greedy domination of `cluster` from its closed neighborhood: take the candidate covering the
/// most undominated cluster vertices; ties prefer candidates next to the current choice, then
/// the smaller ID.
pub fn greedy_cluster_mds(g: &Graph, cluster: &VertexSet) -> VertexSet {
    let candidates: Vec<usize> = g.closed_neighborhood_of(cluster).into_iter().collect();
    let mut chosen = VertexSet::new();
    let mut undominated = cluster.clone();
    while !undominated.is_empty() {
        let near = g.closed_neighborhood_of(&chosen);
        let pick = candidates
            .iter()
            .copied()
            .filter(|v| !chosen.contains(v))
            .max_by_key(|&v| {
                let gain = g.closed_neighborhood(v).intersection(&undominated).count();
                (gain, near.contains(&v), std::cmp::Reverse(v))
            })
            .expect("an undominated vertex dominates itself");
        for u in g.closed_neighborhood(pick) {
            undominated.remove(&u);
        }
        chosen.insert(pick);
    }
    chosen
}

fn deterministic_decomposition(g: &Graph, k: usize, cfg: &SimConfig) -> Result<(NetworkDecomposition, RoundLedger)> {
    let (mut nd, trace, mut ledger) = rs_decompose(g, k, RulingMethod::AglpDeterministic, cfg)?;
    nd.cert.sigma = 3;
    let h = extract_h_partition(&trace)?;
    let (labels, inner) = relabel(g, &nd, &h, RelabelScheme::ArbLinial(LinialRounds::UntilFixpoint), cfg)?;
    nd.apply_labels(&labels);
    ledger.absorb("square", inner, 1);
    Ok((nd, ledger))
}

/// Dominating set from a 3-separated decomposition: every cluster is dominated from its closed
/// neighborhood, and same-label neighborhoods are disjoint, so each label costs at most one
/// optimum. `k = 1` uses the connected components as clusters.
pub fn approx_mds(
    g: &Graph,
    k: usize,
    solver: MdsSolver,
    pipeline: MdsPipeline,
    cfg: &SimConfig,
) -> Result<ApproxResult<VertexSet>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let (nd, mut ledger) = if k == 1 {
        (component_decomposition(g, 3), RoundLedger::new())
    } else {
        match pipeline {
            MdsPipeline::Randomized => {
                let (nd, _, l) =
                    sep_decompose(g, k, 3, RelabelScheme::ArbLinial(LinialRounds::UntilFixpoint), cfg)?;
                (nd, l)
            }
            MdsPipeline::Deterministic => deterministic_decomposition(g, k, cfg)?,
        }
    };
    let mut dominating = VertexSet::new();
    for set in nd.cluster_sets() {
        let local = match solver {
            MdsSolver::Exact => exact_cluster_mds(g, &set)?,
            MdsSolver::Greedy => greedy_cluster_mds(g, &set),
        };
        dominating.extend(local);
    }
    if g.closed_neighborhood_of(&dominating).len() != g.n() {
        return Err(Error::Invariant("union of cluster solutions does not dominate".into()));
    }
    ledger.charge("cluster-solve", nd.cert.d as u64 + 1, 1);
    let label_count = nd.label_count();
    let bound = match solver {
        MdsSolver::Exact => label_count as f64,
        MdsSolver::Greedy => label_count as f64 * harmonic(g.max_degree() + 1),
    };
    Ok(ApproxResult {
        size: dominating.len(),
        bound,
        label_count,
        value: dominating,
        oracle_optimum: None,
        ledger,
        decomposition: nd,
    })
}
