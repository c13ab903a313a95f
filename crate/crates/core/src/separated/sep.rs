use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::decompose::{
    decompose, extract_h_partition, relabel, run_levels, DecomposeParams, DecomposeTrace, DiameterMode,
    NetworkDecomposition, RelabelScheme, Split, StopRule,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, SuperGraph, VertexSet};
use crate::sim::{rng_for, RoundLedger, SimConfig};

/// Samples centers with probability `1/q` (same streams as the plain partition) and lets them
/// explore `sigma - 1` hops. Reached non-centers join the closest center, ties to the smaller ID.
pub(crate) fn sep_split(g: &Graph, q: f64, sigma: usize, seed: u64, level: usize) -> Result<(VertexSet, SuperGraph)> {
    if sigma < 2 {
        return Err(Error::InvalidParameter(format!("sigma must be at least 2, got {sigma}")));
    }
    if !(q >= 1.0) {
        return Err(Error::InvalidParameter(format!("q must be at least 1, got {q}")));
    }
    let scope = format!("partition/{level}");
    let centers: VertexSet =
        g.vertices().filter(|&v| rng_for(seed, &scope, v as u64, 0).gen::<f64>() < 1.0 / q).collect();
    let nearest = g.closest_source(&centers, Some(sigma - 1));
    let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut a_side = VertexSet::new();
    for v in g.vertices() {
        match nearest[v] {
            Some((_, c)) => {
                groups.entry(c).or_default().insert(v);
            }
            None => {
                a_side.insert(v);
            }
        }
    }
    let leaders: Vec<usize> = groups.keys().copied().collect();
    let clusters: Vec<VertexSet> = groups.into_values().collect();
    Ok((a_side, g.contract(&clusters, &leaders)?))
}

fn max_ball(g: &Graph, set: &VertexSet, r: usize) -> usize {
    set.iter().map(|&v| g.ball_of(&VertexSet::from([v]), r).len()).max().unwrap_or(0)
}

/// One separated partition step; clusters have strong diameter at most `2 * sigma - 2`.
pub fn sep_partition(
    g: &Graph,
    q: f64,
    sigma: usize,
    cfg: &SimConfig,
) -> Result<(VertexSet, SuperGraph, RoundLedger)> {
    let (a, b) = sep_split(g, q, sigma, cfg.seed, 1)?;
    let mut ledger = RoundLedger::new();
    ledger.charge("sep-partition", sigma as u64, 1);
    Ok((a, b, ledger))
}

/// Strong-diameter decomposition in which equal labels are at distance at least `sigma`.
/// Labels come from relabeling the `(sigma - 1)`-th power of the cluster supergraph.
pub fn sep_decompose(
    g: &Graph,
    k: usize,
    sigma: usize,
    scheme: RelabelScheme,
    cfg: &SimConfig,
) -> Result<(NetworkDecomposition, DecomposeTrace, RoundLedger)> {
    if sigma < 2 {
        return Err(Error::InvalidParameter(format!("sigma must be at least 2, got {sigma}")));
    }
    let n = g.n();
    let q = (n.max(1) as f64).powf(1.0 / k.max(1) as f64);
    let ln_n = (n.max(1) as f64).ln();
    let h_bound = (cfg.c_degree * q * ln_n).floor() as usize;
    let seed = cfg.seed;
    let split = |cur: &Graph, level: usize, _s: f64| -> Result<Split> {
        let (a_side, clusters) = sep_split(cur, q, sigma, seed, level)?;
        Ok(Split {
            a_measure: max_ball(cur, &a_side, sigma - 1),
            a_claim: cfg.c_degree * q * ln_n,
            a_side,
            clusters,
            hop_diameter: 2 * sigma - 2,
            phase: "sep-partition",
            rounds: sigma as u64,
            realized_dom: None,
        })
    };
    let mut r = run_levels(g, k, cfg, StopRule::Budget, h_bound, split, |_, _| Ok(None))?;
    r.decomposition.cert.sigma = sigma;
    let h = extract_h_partition(&r.trace)?;
    let (labels, relabel_ledger) = relabel(g, &r.decomposition, &h, scheme, cfg)?;
    r.decomposition.apply_labels(&labels);
    r.ledger.absorb("sep", relabel_ledger, 1);
    Ok((r.decomposition, r.trace, r.ledger))
}

/// Runs the plain decomposition on the `(sigma - 1)`-th power. Equal labels end up `sigma` apart
/// and clusters have weak diameter at most `(sigma - 1)` times the power graph's bound.
pub fn weak_sep_decompose(
    g: &Graph,
    sigma: usize,
    params: &DecomposeParams,
    cfg: &SimConfig,
) -> Result<(NetworkDecomposition, RoundLedger)> {
    if sigma < 2 {
        return Err(Error::InvalidParameter(format!("sigma must be at least 2, got {sigma}")));
    }
    let power = g.power(sigma - 1)?;
    let (mut nd, _, inner) = decompose(&power, params, cfg)?;
    nd.cert.d *= sigma - 1;
    nd.cert.sigma = sigma;
    nd.mode = DiameterMode::Weak;
    let mut ledger = RoundLedger::new();
    ledger.absorb("power", inner, sigma as u64 - 1);
    Ok((nd, ledger))
}

/// Partition where every `gamma`-ball meets at most `beta` clusters and every cluster has
/// strong diameter at most `alpha * gamma`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowIntersecting {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub decomposition: NetworkDecomposition,
}

impl LowIntersecting {
    /// Largest number of clusters met by a single `gamma`-ball.
    pub fn max_ball_intersections(&self, g: &Graph) -> usize {
        let owner = self.decomposition.owner(g.n());
        g.vertices()
            .map(|v| {
                let mut hit: Vec<usize> =
                    g.ball_of(&VertexSet::from([v]), self.gamma).iter().map(|&u| owner[u]).collect();
                hit.sort_unstable();
                hit.dedup();
                hit.len()
            })
            .max()
            .unwrap_or(0)
    }
}

/// `(2 gamma + 1)`-separated decomposition read as a low-intersecting partition: two clusters
/// meeting one `gamma`-ball are within `2 gamma` of each other, so they carry distinct labels.
pub fn low_intersecting(
    g: &Graph,
    k: usize,
    gamma: usize,
    scheme: RelabelScheme,
    cfg: &SimConfig,
) -> Result<(LowIntersecting, RoundLedger)> {
    if gamma == 0 {
        return Err(Error::InvalidParameter("gamma must be at least 1".into()));
    }
    let (nd, _, ledger) = sep_decompose(g, k, 2 * gamma + 1, scheme, cfg)?;
    let out = LowIntersecting {
        alpha: nd.cert.d.div_ceil(gamma),
        beta: nd.label_count(),
        gamma,
        decomposition: nd,
    };
    let worst = out.max_ball_intersections(g);
    if worst > out.beta {
        return Err(Error::Invariant(format!("a ball meets {worst} clusters, more than {}", out.beta)));
    }
    Ok((out, ledger))
}
