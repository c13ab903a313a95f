//! Randomized network decomposition by recursive partition-and-contract, with
//! per-level small-degree labeling, plus H-partition extraction and relabeling.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    arb_linial_color, h_partition_random_color, linial_color, random_palette, Coloring, HPartition,
    LinialRounds,
};
use crate::coloring::random_color_with;
use crate::error::{Error, Result};
use crate::graph::{Graph, SuperGraph, VertexSet};
use crate::sim::{rng_for, GammaMode, RoundLedger, SimConfig};

/// Which coloring routine colors a low-degree level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecSmallVariant {
    /// Linial when the degree bound is at most `n^eps`, randomized trials otherwise.
    Threshold,
    AlwaysRandom,
    AlwaysLinial,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecomposeParams {
    pub k: usize,
    pub epsilon: f64,
    pub linial_rounds: LinialRounds,
    pub variant: DecSmallVariant,
}

impl DecomposeParams {
    /// `epsilon = 1/k`, Linial to a fixpoint, threshold variant.
    pub fn new(k: usize) -> Self {
        Self {
            k,
            epsilon: 1.0 / k.max(1) as f64,
            linial_rounds: LinialRounds::UntilFixpoint,
            variant: DecSmallVariant::Threshold,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiameterMode {
    /// Diameter measured inside the cluster's induced subgraph.
    #[default]
    Strong,
    /// Diameter measured in the whole graph.
    Weak,
}

/// Every cluster has diameter at most `d`, labels lie in `1..=l`, and distinct clusters with
/// equal labels are at distance at least `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub d: usize,
    pub l: usize,
    pub sigma: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub label: usize,
    pub leader: usize,
    pub members: Vec<usize>,
    /// Recursion level that emitted the cluster.
    #[serde(default)]
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDecomposition {
    pub cert: Certificate,
    pub clusters: Vec<Cluster>,
    #[serde(default)]
    pub mode: DiameterMode,
    #[serde(rename = "realizedDom", default, skip_serializing_if = "Option::is_none")]
    pub realized_dom: Option<usize>,
}

impl NetworkDecomposition {
    /// Singleton clusters labeled by a coloring.
    pub fn from_coloring(c: &Coloring) -> Self {
        let clusters = c
            .iter()
            .map(|(v, label)| Cluster { label, leader: v, members: vec![v], level: 1 })
            .collect();
        Self {
            cert: Certificate { d: 0, l: c.palette(), sigma: 2 },
            clusters,
            mode: DiameterMode::Strong,
            realized_dom: None,
        }
    }

    /// Number of distinct labels in use.
    pub fn label_count(&self) -> usize {
        let mut labels: Vec<usize> = self.clusters.iter().map(|c| c.label).collect();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    }

    pub fn cluster_sets(&self) -> Vec<VertexSet> {
        self.clusters.iter().map(|c| c.members.iter().copied().collect()).collect()
    }

    /// 1-based cluster index of every vertex, 0 if uncovered. Index by vertex.
    pub fn owner(&self, n: usize) -> Vec<usize> {
        let mut owner = vec![0; n + 1];
        for (i, c) in self.clusters.iter().enumerate() {
            for &v in &c.members {
                if v <= n {
                    owner[v] = i + 1;
                }
            }
        }
        owner
    }

    /// Cluster supergraph; supernode `i` is `clusters[i - 1]`.
    pub fn cluster_graph(&self, g: &Graph) -> Result<SuperGraph> {
        let leaders: Vec<usize> = self.clusters.iter().map(|c| c.leader).collect();
        g.contract(&self.cluster_sets(), &leaders)
    }

    /// Largest strong cluster diameter; `None` if some cluster is disconnected.
    pub fn max_strong_diameter(&self, g: &Graph) -> Result<Option<usize>> {
        let mut worst = 0;
        for c in self.cluster_sets() {
            match g.strong_diameter(&c)? {
                Some(d) => worst = worst.max(d),
                None => return Ok(None),
            }
        }
        Ok(Some(worst))
    }

    /// Replaces cluster labels by `labels` (indexed by cluster) and resets `cert.l`.
    pub fn apply_labels(&mut self, labels: &Coloring) {
        for (i, c) in self.clusters.iter_mut().enumerate() {
            c.label = labels.color(i + 1);
        }
        self.cert.l = labels.palette();
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelTrace {
    pub level: usize,
    /// Graph the level worked on; vertex `i` stands for a cluster of base vertices.
    #[serde(skip)]
    pub supergraph: Graph,
    pub supernodes: usize,
    /// Vertex budget carried into the level.
    pub s: f64,
    pub q: f64,
    /// Supernodes that were labeled at this level.
    pub a_side: VertexSet,
    /// Clusters passed to the next level.
    pub b_clusters: usize,
    /// Largest degree-type quantity among `a_side` vertices (degree, or ball size for separated splits).
    pub a_side_measure: usize,
    /// Claimed whp bound on `a_side_measure`.
    pub a_side_claim: f64,
    pub palette: usize,
    pub stride: usize,
    pub terminal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeTrace {
    pub k: usize,
    pub n: usize,
    pub levels: Vec<LevelTrace>,
    /// Emitting level of each output cluster, aligned with the decomposition's cluster order.
    pub cluster_levels: Vec<usize>,
    pub h_degree_bound: usize,
    pub complete: bool,
}

/// Split of one level's graph into a labeled side and clusters to contract.
pub(crate) struct Split {
    pub a_side: VertexSet,
    pub clusters: SuperGraph,
    /// Strong diameter bound of each cluster, in hops of the level's graph.
    pub hop_diameter: usize,
    pub a_measure: usize,
    pub a_claim: f64,
    pub phase: &'static str,
    pub rounds: u64,
    pub realized_dom: Option<usize>,
}

pub(crate) struct Recursion {
    pub decomposition: NetworkDecomposition,
    pub trace: DecomposeTrace,
    pub ledger: RoundLedger,
}

/// When a level stops splitting and labels everything that is left.
#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum StopRule {
    /// Budget `s` at most `c_threshold * n^(1/k) * ln n`, or level `k` reached.
    Budget,
    /// Only when the split itself produces no clusters.
    EmptySplit,
}

/// Shared driver: split, label the small side, contract the rest, repeat.
pub(crate) fn run_levels(
    g: &Graph,
    k: usize,
    cfg: &SimConfig,
    stop: StopRule,
    h_degree_bound: usize,
    mut split: impl FnMut(&Graph, usize, f64) -> Result<Split>,
    mut label: impl FnMut(&Graph, usize) -> Result<Option<(Coloring, RoundLedger)>>,
) -> Result<Recursion> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = g.n();
    let q = (n.max(1) as f64).powf(1.0 / k as f64);
    let threshold = cfg.c_threshold * q * (n.max(1) as f64).ln();
    let asymptotic_stride = ((n.max(1) as f64).powf(2.0 / k as f64) * (n.max(1) as f64).log2().powi(2)) as usize;

    let mut current = g.clone();
    let mut members: Vec<VertexSet> = g.vertices().map(|v| VertexSet::from([v])).collect();
    let mut s = n as f64;
    let mut diam = 0usize;
    let mut offset = 0usize;
    let mut realized_dom: Option<usize> = None;
    let mut ledger = RoundLedger::new();
    let mut out: Vec<(Cluster, usize)> = Vec::new();
    let mut levels = Vec::new();

    for level in 1.. {
        if level > k.max(1) + 64 {
            return Err(Error::Invariant("recursion failed to terminate".into()));
        }
        let mult = diam as u64 + 1;
        let by_budget =
            stop == StopRule::Budget && (s <= threshold || level >= k || current.n() == 0);
        let split_result = if by_budget {
            None
        } else {
            let sp = split(&current, level, s)?;
            ledger.charge(format!("level-{level}/{}", sp.phase), sp.rounds, mult);
            if let Some(d) = sp.realized_dom {
                realized_dom = Some(realized_dom.map_or(d, |x| x.max(d)));
            }
            Some(sp)
        };
        let (a_side, a_measure, a_claim) = match &split_result {
            None => (current.vertices().collect::<VertexSet>(), current.max_degree(), f64::INFINITY),
            Some(sp) => (sp.a_side.clone(), sp.a_measure, sp.a_claim),
        };
        let terminal = split_result.as_ref().is_none_or(|sp| sp.clusters.is_empty());
        if stop == StopRule::EmptySplit && level > k && !terminal {
            return Err(Error::Invariant(format!("split still produced clusters at level {level} > k")));
        }

        let (mut palette, mut stride) = (0, 0);
        if !a_side.is_empty() {
            let sub = current.induced(&a_side)?;
            let colors = label(&sub.graph, level)?;
            if let Some((c, sub_ledger)) = &colors {
                ledger.absorb(&format!("level-{level}"), sub_ledger.clone(), mult);
                palette = c.palette();
                stride = match cfg.gamma_mode {
                    GammaMode::Exact => palette,
                    GammaMode::Asymptotic => palette.max(asymptotic_stride),
                };
            }
            for local in sub.graph.vertices() {
                let set = &members[sub.host(local) - 1];
                let leader = *set.first().expect("supernodes are nonempty");
                let label = colors.as_ref().map_or(0, |(c, _)| offset + c.color(local));
                out.push((Cluster { label, leader, members: set.iter().copied().collect(), level }, level));
            }
        }
        offset += stride;
        levels.push(LevelTrace {
            level,
            supergraph: current.clone(),
            supernodes: current.n(),
            s,
            q,
            b_clusters: split_result.as_ref().map_or(0, |sp| sp.clusters.len()),
            a_side,
            a_side_measure: a_measure,
            a_side_claim: a_claim,
            palette,
            stride,
            terminal,
        });
        if terminal {
            break;
        }
        let sp = split_result.expect("non-terminal levels split");
        members = sp
            .clusters
            .clusters
            .iter()
            .map(|c| c.iter().flat_map(|&x| members[x - 1].iter().copied()).collect())
            .collect();
        diam = (sp.hop_diameter + 1) * diam + sp.hop_diameter;
        s = (s / q).min(sp.clusters.len() as f64);
        current = sp.clusters.graph;
    }

    out.sort_by_key(|(c, _)| c.leader);
    let cluster_levels = out.iter().map(|(_, l)| *l).collect();
    let clusters = out.into_iter().map(|(c, _)| c).collect();
    let decomposition = NetworkDecomposition {
        cert: Certificate { d: diam, l: offset, sigma: 2 },
        clusters,
        mode: DiameterMode::Strong,
        realized_dom,
    };
    let trace = DecomposeTrace { k, n, levels, cluster_levels, h_degree_bound, complete: true };
    Ok(Recursion { decomposition, trace, ledger })
}

pub(crate) fn dec_small_coloring(
    g: &Graph,
    n_orig: usize,
    d: usize,
    eps: f64,
    rounds: LinialRounds,
    variant: DecSmallVariant,
    seed: u64,
    scope: &str,
) -> Result<(Coloring, RoundLedger)> {
    if g.max_degree() > d {
        return Err(Error::Precondition(format!(
            "maximum degree {} exceeds the declared bound {d}",
            g.max_degree()
        )));
    }
    let use_linial = match variant {
        DecSmallVariant::AlwaysLinial => true,
        DecSmallVariant::AlwaysRandom => false,
        DecSmallVariant::Threshold => d as f64 <= (n_orig.max(1) as f64).powf(eps),
    };
    if use_linial {
        let (c, l) = linial_color(g, rounds)?;
        let mut ledger = RoundLedger::new();
        ledger.absorb("dec-small", l, 1);
        Ok((c, ledger))
    } else {
        let (c, r) = random_color_with(g, random_palette(d, n_orig, eps), seed, scope)?;
        let mut ledger = RoundLedger::new();
        ledger.charge("dec-small/random-color", r, 1);
        Ok((c, ledger))
    }
}

/// Singleton decomposition of a graph of maximum degree at most `d`, labeled by Linial
/// (`d <= n_orig^eps`, or always under that variant) or by randomized trials with
/// `ceil(d * n_orig^eps)` colors.
pub fn dec_small(
    g: &Graph,
    n_orig: usize,
    d: usize,
    eps: f64,
    rounds: LinialRounds,
    variant: DecSmallVariant,
    cfg: &SimConfig,
) -> Result<(NetworkDecomposition, RoundLedger)> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let (c, ledger) = dec_small_coloring(g, n_orig, d, eps, rounds, variant, cfg.seed, "dec-small")?;
    Ok((NetworkDecomposition::from_coloring(&c), ledger))
}

/// Each vertex of `g` joins the center set with probability `1/q`. Centers and their neighbors
/// form the clustered side; a non-center joins its smallest-ID center neighbor. Clusters are
/// returned ordered by center ID.
pub(crate) fn partition_scoped(g: &Graph, q: f64, seed: u64, level: usize) -> Result<(VertexSet, SuperGraph)> {
    if !(q >= 1.0) {
        return Err(Error::InvalidParameter(format!("q must be at least 1, got {q}")));
    }
    let scope = format!("partition/{level}");
    let centers: Vec<bool> = (0..=g.n())
        .map(|v| v > 0 && rng_for(seed, &scope, v as u64, 0).gen::<f64>() < 1.0 / q)
        .collect();
    let mut groups: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut a_side = VertexSet::new();
    for v in g.vertices() {
        let leader = if centers[v] {
            Some(v)
        } else {
            g.neighbors(v).iter().copied().find(|&u| centers[u])
        };
        match leader {
            Some(l) => {
                groups.entry(l).or_default().insert(v);
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

/// One randomized partition step with center probability `1/q`.
pub fn partition(g: &Graph, q: f64, cfg: &SimConfig) -> Result<(VertexSet, SuperGraph, RoundLedger)> {
    let (a, b) = partition_scoped(g, q, cfg.seed, 1)?;
    let mut ledger = RoundLedger::new();
    ledger.charge("partition", 2, 1);
    Ok((a, b, ledger))
}

fn max_degree_in(g: &Graph, set: &VertexSet) -> usize {
    set.iter().map(|&v| g.degree(v)).max().unwrap_or(0)
}

/// Randomized `(3^(k-1) - 1, O(k n^(2/k) log^2 n))` strong-diameter decomposition.
pub fn decompose(
    g: &Graph,
    params: &DecomposeParams,
    cfg: &SimConfig,
) -> Result<(NetworkDecomposition, DecomposeTrace, RoundLedger)> {
    params.validate()?;
    let n = g.n();
    let k = params.k;
    let q = (n.max(1) as f64).powf(1.0 / k as f64);
    let h_bound = (cfg.c_degree * q * (n.max(1) as f64).ln()).floor() as usize;
    let seed = cfg.seed;
    let split = |cur: &Graph, level: usize, s: f64| -> Result<Split> {
        let (a_side, clusters) = partition_scoped(cur, q, seed, level)?;
        Ok(Split {
            a_measure: max_degree_in(cur, &a_side),
            a_claim: cfg.c_degree * q * s.max(1.0).ln(),
            a_side,
            clusters,
            hop_diameter: 2,
            phase: "partition",
            rounds: 2,
            realized_dom: None,
        })
    };
    let label = |sub: &Graph, level: usize| -> Result<Option<(Coloring, RoundLedger)>> {
        let scope = format!("dec-small/{level}");
        dec_small_coloring(sub, n, sub.max_degree(), params.epsilon, params.linial_rounds, params.variant, seed, &scope)
            .map(Some)
    };
    let r = run_levels(g, k, cfg, StopRule::Budget, h_bound, split, label)?;
    Ok((r.decomposition, r.trace, r.ledger))
}

/// Bands `S_1..S_k` of the cluster supergraph, from the level that emitted each cluster.
pub fn extract_h_partition(trace: &DecomposeTrace) -> Result<HPartition> {
    if !trace.complete || (trace.n > 0 && trace.cluster_levels.is_empty()) {
        return Err(Error::Precondition("decomposition trace is incomplete".into()));
    }
    let depth = trace.cluster_levels.iter().copied().max().unwrap_or(0).max(trace.k);
    let mut bands = vec![VertexSet::new(); depth];
    for (i, &level) in trace.cluster_levels.iter().enumerate() {
        if level == 0 {
            return Err(Error::Precondition(format!("cluster {} has no level", i + 1)));
        }
        bands[level - 1].insert(i + 1);
    }
    Ok(HPartition { bands, degree_bound: trace.h_degree_bound })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelabelScheme {
    ArbLinial(LinialRounds),
    HRandom(f64),
}

/// New cluster labels, proper on the `(sigma - 1)`-th power of the cluster supergraph.
/// The H-partition bound is raised to the realized forward degree if the claim failed.
pub fn relabel(
    g: &Graph,
    q: &NetworkDecomposition,
    h: &HPartition,
    scheme: RelabelScheme,
    cfg: &SimConfig,
) -> Result<(Coloring, RoundLedger)> {
    let cluster_graph = q.cluster_graph(g)?.graph;
    let radius = q.cert.sigma.saturating_sub(1).max(1);
    let target = cluster_graph.power(radius)?;
    let mut h_eff = h.clone();
    h_eff.degree_bound = h.degree_bound.max(h.max_forward_degree(&target));
    h_eff.check(&target)?;
    let (c, inner) = match scheme {
        RelabelScheme::ArbLinial(t) => arb_linial_color(&target, &h_eff, t)?,
        RelabelScheme::HRandom(eps) => h_partition_random_color(&target, &h_eff, eps, cfg)?,
    };
    let mut ledger = RoundLedger::new();
    ledger.absorb("relabel", inner, (radius * (q.cert.d + 1)) as u64);
    Ok((c, ledger))
}
