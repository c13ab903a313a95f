//! Exhaustive solvers for small instances and structural validators. The solvers use plain
//! enumeration so they stay independent of the approximation code they check.

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, HPartition};
use crate::decompose::{DiameterMode, NetworkDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const CHROMATIC_CAP: usize = 20;
pub const MDS_CAP: usize = 20;
pub const SPANNER_EDGE_CAP: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub witness: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn new() -> Self {
        Self { passed: true, violations: Vec::new() }
    }

    fn fail(&mut self, rule: &str, witness: impl Into<String>) {
        self.passed = false;
        self.violations.push(Violation { rule: rule.into(), witness: witness.into() });
    }

    pub fn has(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Chromatic number and an optimal coloring, by backtracking over `k = 1, 2, ...`.
pub fn brute_chromatic(g: &Graph) -> Result<(usize, Coloring)> {
    if g.n() > CHROMATIC_CAP {
        return Err(Error::Oversize { what: "graph for exact coloring", size: g.n(), cap: CHROMATIC_CAP });
    }
    if g.n() == 0 {
        return Ok((0, Coloring::new(Vec::new(), 1)?));
    }
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    fn extend(g: &Graph, order: &[usize], i: usize, k: usize, used: usize, colors: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for c in 1..=(used + 1).min(k) {
            if g.neighbors(v).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if extend(g, order, i + 1, k, used.max(c), colors) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }

    for k in 1..=g.n() {
        let mut colors = vec![0; g.n() + 1];
        if extend(g, &order, 0, k, 0, &mut colors) {
            return Ok((k, Coloring::new(colors[1..].to_vec(), k)?));
        }
    }
    unreachable!("n colors always suffice")
}

/// Next bitmask with the same popcount.
fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Minimum dominating set size and a witness, trying all subsets in increasing size.
pub fn brute_mds(g: &Graph) -> Result<(usize, VertexSet)> {
    let n = g.n();
    if n > MDS_CAP {
        return Err(Error::Oversize { what: "graph for exact domination", size: n, cap: MDS_CAP });
    }
    let full: u64 = (1u64 << n) - 1;
    let closed: Vec<u64> = (1..=n)
        .map(|v| g.neighbors(v).iter().fold(1u64 << (v - 1), |m, &u| m | 1 << (u - 1)))
        .collect();
    for size in 0..=n {
        if size == 0 {
            if n == 0 {
                return Ok((0, VertexSet::new()));
            }
            continue;
        }
        let mut x: u64 = (1u64 << size) - 1;
        while x <= full {
            let covered = (0..n).filter(|i| x >> i & 1 == 1).fold(0u64, |m, i| m | closed[i]);
            if covered == full {
                return Ok((size, (0..n).filter(|i| x >> i & 1 == 1).map(|i| i + 1).collect()));
            }
            x = next_combination(x);
        }
    }
    unreachable!("the whole vertex set dominates")
}

/// Compact edge list over the vertices that touch an edge.
struct SmallGraph {
    n: usize,
    ends: Vec<(usize, usize)>,
    host_edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    fn new(g: &Graph) -> Self {
        let mut local = vec![usize::MAX; g.n() + 1];
        let mut n = 0;
        let mut ends = Vec::new();
        let mut host_edges = Vec::new();
        for (u, v) in g.edges() {
            for x in [u, v] {
                if local[x] == usize::MAX {
                    local[x] = n;
                    n += 1;
                }
            }
            ends.push((local[u], local[v]));
            host_edges.push((u, v));
        }
        Self { n, ends, host_edges }
    }

    /// Whether `a` reaches `b` within `t` hops using the edges in `mask`.
    fn within(&self, mask: u32, a: usize, b: usize, t: usize) -> bool {
        let mut adj = [0u64; 64];
        for (i, &(x, y)) in self.ends.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[x] |= 1 << y;
                adj[y] |= 1 << x;
            }
        }
        let mut seen = 1u64 << a;
        let mut frontier = seen;
        for _ in 0..t {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let i = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[i];
            }
            next &= !seen;
            if next >> b & 1 == 1 {
                return true;
            }
            seen |= next;
            frontier = next;
            if next == 0 {
                break;
            }
        }
        false
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut c = self.n;
        for &(a, b) in &self.ends {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                c -= 1;
            }
        }
        c
    }
}

/// Minimum `t`-spanner size and a witness. Searches over include/exclude decisions per edge;
/// a branch is cut as soon as an excluded edge loses every path of length `<= t`, or when the
/// spanning-forest lower bound meets the best size found.
pub fn brute_min_t_spanner(g: &Graph, t: usize) -> Result<(usize, Vec<(usize, usize)>)> {
    if t == 0 {
        return Err(Error::InvalidParameter("stretch must be at least 1".into()));
    }
    if g.m() > SPANNER_EDGE_CAP {
        return Err(Error::Oversize { what: "edge set for exact spanner", size: g.m(), cap: SPANNER_EDGE_CAP });
    }
    let sg = SmallGraph::new(g);
    let m = sg.ends.len();
    let forest = sg.n - sg.components();
    let all: u32 = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };

    struct Search<'a> {
        sg: &'a SmallGraph,
        t: usize,
        forest: usize,
        best: u32,
        excluded: Vec<usize>,
    }
    impl Search<'_> {
        fn run(&mut self, i: usize, allowed: u32, included: usize) {
            if included.max(self.forest) >= self.best.count_ones() as usize {
                return;
            }
            if i == self.sg.ends.len() {
                // Every decided edge is included here, so `allowed` beats the incumbent.
                self.best = allowed;
                return;
            }
            let without = allowed & !(1 << i);
            self.excluded.push(i);
            let ok = self.excluded.iter().all(|&e| {
                let (a, b) = self.sg.ends[e];
                self.sg.within(without, a, b, self.t)
            });
            if ok {
                self.run(i + 1, without, included);
            }
            self.excluded.pop();
            self.run(i + 1, allowed, included + 1);
        }
    }

    let mut search = Search { sg: &sg, t, forest, best: all, excluded: Vec::new() };
    search.run(0, all, 0);
    let best = search.best & all;
    let edges: Vec<(usize, usize)> = (0..m).filter(|i| best >> i & 1 == 1).map(|i| sg.host_edges[i]).collect();
    Ok((edges.len(), edges))
}

/// Checks partition, leaders, diameter bound, label range and label separation.
pub fn validate_decomposition(g: &Graph, nd: &NetworkDecomposition, mode: DiameterMode) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut owner = vec![0usize; g.n() + 1];
    for (i, c) in nd.clusters.iter().enumerate() {
        if c.members.is_empty() {
            report.fail("partition", format!("cluster {} is empty", i + 1));
        }
        if !c.members.contains(&c.leader) {
            report.fail("leader", format!("cluster {} leader {} is not a member", i + 1, c.leader));
        }
        for &v in &c.members {
            if v == 0 || v > g.n() {
                report.fail("partition", format!("vertex {v} out of range"));
            } else if owner[v] != 0 {
                report.fail("partition", format!("vertex {v} in clusters {} and {}", owner[v], i + 1));
            } else {
                owner[v] = i + 1;
            }
        }
        if c.label == 0 || c.label > nd.cert.l {
            report.fail("label-range", format!("cluster {} label {} outside 1..={}", i + 1, c.label, nd.cert.l));
        }
    }
    if let Some(v) = g.vertices().find(|&v| owner[v] == 0) {
        report.fail("partition", format!("vertex {v} is uncovered"));
    }
    if !report.passed {
        return report;
    }
    for (i, set) in nd.cluster_sets().iter().enumerate() {
        let diam = match mode {
            DiameterMode::Strong => g.strong_diameter(set),
            DiameterMode::Weak => g.weak_diameter(set),
        }
        .expect("clusters were checked above");
        match diam {
            Some(d) if d <= nd.cert.d => {}
            Some(d) => report.fail("diameter", format!("cluster {} has diameter {d} > {}", i + 1, nd.cert.d)),
            None => report.fail("diameter", format!("cluster {} is disconnected", i + 1)),
        }
    }
    let sigma = nd.cert.sigma.max(2);
    for (i, set) in nd.cluster_sets().iter().enumerate() {
        let label = nd.clusters[i].label;
        let dist = g.distances_from(set, Some(sigma - 1));
        if let Some(u) = g.vertices().find(|&u| {
            dist[u].is_some() && owner[u] != i + 1 && nd.clusters[owner[u] - 1].label == label
        }) {
            report.fail(
                "separation",
                format!("clusters {} and {} share label {label} within distance {}", i + 1, owner[u], sigma - 1),
            );
        }
    }
    report
}

/// Bands partition the vertices and every forward degree respects the bound.
pub fn validate_h_partition(g: &Graph, h: &HPartition) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut seen = vec![0usize; g.n() + 1];
    for (i, band) in h.bands.iter().enumerate() {
        for &v in band {
            if v == 0 || v > g.n() {
                report.fail("partition", format!("vertex {v} out of range"));
            } else if seen[v] != 0 {
                report.fail("partition", format!("vertex {v} in bands {} and {}", seen[v], i + 1));
            } else {
                seen[v] = i + 1;
            }
        }
    }
    if let Some(v) = g.vertices().find(|&v| seen[v] == 0) {
        report.fail("partition", format!("vertex {v} is in no band"));
    }
    if report.passed {
        let fwd = h.forward_degrees(g);
        for v in g.vertices().filter(|&v| fwd[v] > h.degree_bound) {
            report.fail("degree", format!("vertex {v} has forward degree {} > {}", fwd[v], h.degree_bound));
        }
    }
    report
}

/// Checks that `edges` is a subgraph of `g` in which every edge of `g` is stretched by at most `t`.
/// Also returns the largest stretch, or `None` if some edge is not spanned at all.
pub fn validate_stretch(g: &Graph, edges: &[(usize, usize)], t: usize) -> (ValidationReport, Option<usize>) {
    let mut report = ValidationReport::new();
    let mut valid = Vec::new();
    for &(u, v) in edges {
        if g.has_edge(u, v) {
            valid.push((u.min(v), u.max(v)));
        } else {
            report.fail("subgraph", format!("{u}-{v} is not an edge"));
        }
    }
    valid.sort_unstable();
    valid.dedup();
    let h = Graph::new(g.n(), valid).expect("deduplicated subgraph edges");
    let mut worst = Some(0);
    for (u, v) in g.edges() {
        let d = h.distances_from(&VertexSet::from([u]), Some(t.max(1) * g.n().max(1)))[v];
        match d {
            Some(d) => {
                worst = worst.map(|w: usize| w.max(d));
                if d > t {
                    report.fail("stretch", format!("{u}-{v} stretched to {d}"));
                }
            }
            None => {
                worst = None;
                report.fail("stretch", format!("{u}-{v} is disconnected"));
            }
        }
    }
    (report, worst)
}

/// `1 + 1/2 + ... + 1/x`.
pub fn harmonic(x: usize) -> f64 {
    (1..=x).map(|i| 1.0 / i as f64).sum()
}
