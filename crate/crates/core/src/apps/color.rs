use super::{component_decomposition, ApproxResult};
use crate::coloring::{h_partition_random_color, peel_h_partition, Coloring, HPartition};
use crate::decompose::{decompose, extract_h_partition, partition_scoped, run_levels, DecomposeParams, Split, StopRule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::oracle::{brute_chromatic, CHROMATIC_CAP};
use crate::sim::{RoundLedger, SimConfig};

/// Colors every cluster optimally and gives each label its own block of colors:
/// `color = (label - 1) * max_local + local`. Uses at most `label_count * chi` colors.
/// With `k = 1` the clusters are the connected components.
pub fn approx_min_coloring(g: &Graph, k: usize, cfg: &SimConfig) -> Result<ApproxResult<Coloring>> {
    let (nd, ledger) = if k == 1 {
        (component_decomposition(g, 2), RoundLedger::new())
    } else {
        let (nd, _, ledger) = decompose(g, &DecomposeParams::new(k), cfg)?;
        (nd, ledger)
    };
    let mut local = vec![0usize; g.n() + 1];
    let mut max_local = 1;
    for set in nd.cluster_sets() {
        if set.len() > CHROMATIC_CAP {
            return Err(Error::Oversize { what: "cluster for exact coloring", size: set.len(), cap: CHROMATIC_CAP });
        }
        let sub = g.induced(&set)?;
        let (chi, c) = brute_chromatic(&sub.graph)?;
        max_local = max_local.max(chi);
        for (v, color) in c.iter() {
            local[sub.host(v)] = color;
        }
    }
    let owner = nd.owner(g.n());
    let colors: Vec<usize> =
        g.vertices().map(|v| (nd.clusters[owner[v] - 1].label - 1) * max_local + local[v]).collect();
    let coloring = Coloring::new(colors, nd.cert.l.max(1) * max_local)?;
    if !coloring.is_proper(g) {
        return Err(Error::Invariant("flattened coloring is improper".into()));
    }
    Ok(ApproxResult {
        size: coloring.distinct_colors(),
        bound: nd.label_count() as f64,
        label_count: nd.label_count(),
        value: coloring,
        oracle_optimum: None,
        ledger,
        decomposition: nd,
    })
}

/// Splits each cluster's induced subgraph into two sides by BFS parity. Errors if some cluster
/// is not bipartite.
fn two_color_clusters(g: &Graph, clusters: &[VertexSet]) -> Result<Vec<usize>> {
    let mut side = vec![0usize; g.n() + 1];
    for set in clusters {
        let sub = g.induced(set)?;
        for comp in sub.graph.components() {
            let root = *comp.first().expect("components are nonempty");
            let dist = sub.graph.distances_from(&VertexSet::from([root]), None);
            for (u, v) in sub.graph.edges() {
                if dist[u].map(|d| d % 2) == dist[v].map(|d| d % 2) && dist[u].is_some() {
                    return Err(Error::Precondition("a cluster is not bipartite".into()));
                }
            }
            for &v in &comp {
                side[sub.host(v)] = 1 + dist[v].expect("same component") % 2;
            }
        }
    }
    Ok(side)
}

/// Two-level partition (singletons, then stars around sampled centers), randomized coloring of
/// the cluster supergraph along its H-partition, and a center/leaf split inside every star.
/// Uses at most `2 * A * ceil(n^eps)` colors where `A` is the H-partition degree.
pub fn color_triangle_free(g: &Graph, eps: f64, cfg: &SimConfig) -> Result<ApproxResult<Coloring>> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    if g.girth().is_some_and(|girth| girth < 4) {
        return Err(Error::Precondition("graph contains a triangle".into()));
    }
    let n = g.n();
    let q = (n.max(1) as f64).sqrt();
    let seed = cfg.seed;
    let split = |cur: &Graph, level: usize, _s: f64| -> Result<Split> {
        let (a_side, clusters) = partition_scoped(cur, q, seed, level)?;
        Ok(Split {
            a_measure: a_side.iter().map(|&v| cur.degree(v)).max().unwrap_or(0),
            a_claim: cfg.c_degree * q * (n.max(1) as f64).ln(),
            a_side,
            clusters,
            hop_diameter: 2,
            phase: "partition",
            rounds: 2,
            realized_dom: None,
        })
    };
    let mut r = run_levels(g, 2, cfg, StopRule::Budget, 0, split, |_, _| Ok(None))?;
    let cluster_graph = r.decomposition.cluster_graph(g)?.graph;
    let mut h: HPartition = extract_h_partition(&r.trace)?;
    h.degree_bound = h.max_forward_degree(&cluster_graph).max(1);
    let (cluster_colors, inner) = h_partition_random_color(&cluster_graph, &h, eps, cfg)?;
    r.ledger.absorb("cluster-coloring", inner, r.decomposition.cert.d as u64 + 1);
    r.decomposition.apply_labels(&cluster_colors);

    let side = two_color_clusters(g, &r.decomposition.cluster_sets())?;
    let owner = r.decomposition.owner(n);
    let colors: Vec<usize> =
        g.vertices().map(|v| 2 * (cluster_colors.color(owner[v]) - 1) + side[v]).collect();
    let coloring = Coloring::new(colors, 2 * cluster_colors.palette())?;
    if !coloring.is_proper(g) {
        return Err(Error::Invariant("triangle-free coloring is improper".into()));
    }
    let palette_bound = 2 * h.degree_bound * (n.max(1) as f64).powf(eps).ceil() as usize;
    Ok(ApproxResult {
        size: coloring.distinct_colors(),
        bound: palette_bound as f64,
        label_count: r.decomposition.label_count(),
        value: coloring,
        oracle_optimum: None,
        ledger: r.ledger,
        decomposition: r.decomposition,
    })
}

/// Graphs of girth above `2k` have arboricity at most `a = ceil(n^(1/k))`; peel an H-partition of
/// degree `(2 + eps) a` and color it band by band with `ceil((2 + eps) a n^eps)` colors.
pub fn color_high_girth(g: &Graph, k: usize, eps: f64, cfg: &SimConfig) -> Result<ApproxResult<Coloring>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if let Some(girth) = g.girth().filter(|&girth| girth <= 2 * k) {
        return Err(Error::Precondition(format!("girth {girth} is not above {}", 2 * k)));
    }
    let n = g.n();
    let a = (n.max(1) as f64).powf(1.0 / k as f64).ceil() as usize;
    let h = peel_h_partition(g, a, eps)?;
    let (coloring, inner) = h_partition_random_color(g, &h, eps, cfg)?;
    let mut ledger = RoundLedger::new();
    ledger.charge("peel", h.bands.len() as u64, 1);
    ledger.absorb("h-random", inner, 1);
    let palette_bound = ((2.0 + eps) * a as f64 * (n.max(1) as f64).powf(eps)).ceil();
    let nd = crate::decompose::NetworkDecomposition::from_coloring(&coloring);
    Ok(ApproxResult {
        size: coloring.distinct_colors(),
        bound: palette_bound,
        label_count: nd.label_count(),
        value: coloring,
        oracle_optimum: None,
        ledger,
        decomposition: nd,
    })
}
