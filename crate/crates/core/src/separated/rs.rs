use std::collections::BTreeMap;

use super::ruling::{ruling_set_scoped, RulingMethod};
use crate::coloring::{linial_color, LinialRounds};
use crate::decompose::{run_levels, DecomposeTrace, NetworkDecomposition, Split, StopRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, SuperGraph, VertexSet};
use crate::sim::{RoundLedger, SimConfig};

pub(crate) struct RsSplit {
    pub a_side: VertexSet,
    pub clusters: SuperGraph,
    pub radius: usize,
    pub ledger: RoundLedger,
}

/// Rules the vertices of degree at least `q`, then grows a cluster around every ruler out to the
/// realized domination distance (at least one hop). Vertices join their closest ruler, ties to
/// the smaller ruler ID, so each cluster contains shortest paths to its ruler.
pub(crate) fn rs_split(
    g: &Graph,
    q: f64,
    sep: usize,
    method: RulingMethod,
    seed: u64,
    level: usize,
) -> Result<RsSplit> {
    if sep < 3 {
        return Err(Error::InvalidParameter(format!("separation must be at least 3, got {sep}")));
    }
    let heavy: VertexSet = g.vertices().filter(|&v| g.degree(v) as f64 >= q).collect();
    if heavy.is_empty() {
        return Ok(RsSplit {
            a_side: g.vertices().collect(),
            clusters: g.contract(&[], &[])?,
            radius: 0,
            ledger: RoundLedger::new(),
        });
    }
    let scope = format!("luby/{level}");
    let (rs, mut ledger) = ruling_set_scoped(g, &heavy, sep, method, seed, &scope)?;
    let radius = rs.realized_dom.max(1);
    let nearest = g.closest_source(&rs.rulers, Some(radius));
    let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut a_side = VertexSet::new();
    for v in g.vertices() {
        match nearest[v] {
            Some((_, w)) => {
                groups.entry(w).or_default().insert(v);
            }
            None => {
                a_side.insert(v);
            }
        }
    }
    ledger.charge("rs-partition/explore", radius as u64 + 1, 1);
    let leaders: Vec<usize> = groups.keys().copied().collect();
    let clusters: Vec<VertexSet> = groups.into_values().collect();
    Ok(RsSplit { a_side, clusters: g.contract(&clusters, &leaders)?, radius, ledger })
}

/// Deterministic-degree partition: every unclustered vertex has degree `< q` and at most
/// `|V| / q` clusters are formed. Returns the realized cluster radius.
pub fn rs_partition(
    g: &Graph,
    q: f64,
    sep: usize,
    method: RulingMethod,
    cfg: &SimConfig,
) -> Result<(VertexSet, SuperGraph, RoundLedger, usize)> {
    if !(q >= 1.0) {
        return Err(Error::InvalidParameter(format!("q must be at least 1, got {q}")));
    }
    let sp = rs_split(g, q, sep, method, cfg.seed, 1)?;
    Ok((sp.a_side, sp.clusters, sp.ledger, sp.radius))
}

/// Decomposition built from ruling-set partitions with separation 3. Recursion continues until no
/// vertex of the current graph has degree `>= n^(1/k)`, so every band of the resulting
/// H-partition has forward degree below `ceil(n^(1/k))`. Levels are labeled by Linial to a
/// fixpoint, so the aglp method makes the whole output seed-independent.
pub fn rs_decompose(
    g: &Graph,
    k: usize,
    method: RulingMethod,
    cfg: &SimConfig,
) -> Result<(NetworkDecomposition, DecomposeTrace, RoundLedger)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let q = (g.n().max(1) as f64).powf(1.0 / k as f64);
    let h_bound = q.ceil() as usize;
    let seed = cfg.seed;
    let split = |cur: &Graph, level: usize, _s: f64| -> Result<Split> {
        let sp = rs_split(cur, q, 3, method, seed, level)?;
        let a_measure = sp.a_side.iter().map(|&v| cur.degree(v)).max().unwrap_or(0);
        Ok(Split {
            a_side: sp.a_side,
            clusters: sp.clusters,
            hop_diameter: 2 * sp.radius,
            a_measure,
            a_claim: q,
            phase: "rs-partition",
            rounds: sp.ledger.total(),
            realized_dom: Some(sp.radius),
        })
    };
    let label = |sub: &Graph, _level: usize| linial_color(sub, LinialRounds::UntilFixpoint).map(Some);
    let r = run_levels(g, k, cfg, StopRule::EmptySplit, h_bound, split, label)?;
    Ok((r.decomposition, r.trace, r.ledger))
}
