//! Acceptance suite: twelve criteria, one PASS/FAIL line each. Runs without the libtest harness
//! so the lines always print; exits nonzero if any criterion fails.

mod common;

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use common::{bipartite_graph, connected_graph, is_union_free, random_graph, Stream};
use netdecomp::apps::{approx_mds, approx_min_coloring, approx_t_spanner, color_high_girth, color_triangle_free, MdsPipeline, MdsSolver};
use netdecomp::coloring::{linial_color, Coloring, LinialRounds, UnionFreeFamily, C_LIN};
use netdecomp::decompose::{decompose, extract_h_partition, DecomposeParams, DecomposeTrace, DiameterMode, NetworkDecomposition, RelabelScheme};
use netdecomp::harness::{cycle, girth6, gnp, grid};
use netdecomp::oracle::{brute_chromatic, brute_mds, brute_min_t_spanner, harmonic, validate_decomposition, validate_h_partition, validate_stretch};
use netdecomp::separated::{low_intersecting, rs_decompose, sep_decompose, RulingMethod};
use netdecomp::{Graph, SimConfig};

/// Properness tally over every coloring the suite produces.
#[derive(Default)]
struct ColoringAudit {
    checked: usize,
    improper: usize,
}

impl ColoringAudit {
    fn check(&mut self, g: &Graph, c: &Coloring) -> bool {
        self.checked += 1;
        let ok = c.is_proper(g);
        if !ok {
            self.improper += 1;
        }
        ok
    }

    /// Labels of a decomposition must color its cluster graph properly.
    fn check_labels(&mut self, g: &Graph, nd: &NetworkDecomposition) -> bool {
        let sg = nd.cluster_graph(g).expect("clusters partition the graph");
        let labels = Coloring::new(nd.clusters.iter().map(|c| c.label).collect(), nd.cert.l.max(1)).expect("labels in range");
        self.check(&sg.graph, &labels)
    }
}

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: String) -> Verdict {
    Verdict { passed, detail }
}

fn fixpoint() -> RelabelScheme {
    RelabelScheme::ArbLinial(LinialRounds::UntilFixpoint)
}

/// The four test families; `gnp` is drawn from `seed`.
fn family(index: usize, seed: u64) -> (&'static str, Graph) {
    match index % 4 {
        0 => ("gnp(300,0.03)", gnp(300, 0.03, seed).unwrap()),
        1 => ("cycle(200)", cycle(200).unwrap()),
        2 => ("grid(15,15)", grid(15, 15)),
        _ => ("girth6(3)", girth6(3).unwrap()),
    }
}

/// BFS distances from `sources`, stopping after `limit` hops.
fn bfs(g: &Graph, sources: &[usize], limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n() + 1];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if dist[u] == limit {
            continue;
        }
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Number of equal-label cluster pairs closer than `sigma`.
fn separation_violations(g: &Graph, nd: &NetworkDecomposition, sigma: usize) -> usize {
    let owner = nd.owner(g.n());
    let mut bad = 0;
    for (i, c) in nd.clusters.iter().enumerate() {
        let dist = bfs(g, &c.members, sigma - 1);
        let mut near: Vec<usize> = g
            .vertices()
            .filter(|&v| dist[v] < sigma && owner[v] != i + 1 && nd.clusters[owner[v] - 1].label == c.label)
            .map(|v| owner[v])
            .collect();
        near.sort_unstable();
        near.dedup();
        bad += near.len();
    }
    bad / 2
}

/// Diameter of a cluster inside its induced subgraph, by BFS from every member.
fn cluster_diameter(g: &Graph, members: &[usize]) -> usize {
    let inside = g.induced(&members.iter().copied().collect()).unwrap().graph;
    inside
        .vertices()
        .map(|v| bfs(&inside, &[v], usize::MAX).into_iter().skip(1).max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

fn max_stride(trace: &DecomposeTrace) -> usize {
    trace.levels.iter().map(|l| l.stride).max().unwrap_or(1)
}

fn criterion_1(audit: &mut ColoringAudit) -> Verdict {
    let start = Instant::now();
    let mut failures = Vec::new();
    for run in 0..200usize {
        let k = 1 + (run / 4) % 3;
        let seed = run as u64 + 1;
        let (name, g) = family(run, seed);
        let (nd, trace, _) = decompose(&g, &DecomposeParams::new(k), &SimConfig::with_seed(seed)).unwrap();
        let report = validate_decomposition(&g, &nd, DiameterMode::Strong);
        let limit = 3usize.pow(k as u32 - 1) - 1;
        let diam = nd.clusters.iter().map(|c| cluster_diameter(&g, &c.members)).max().unwrap_or(0);
        let labels_ok = nd.label_count() <= k * max_stride(&trace);
        let proper = audit.check_labels(&g, &nd);
        if !(report.passed && diam <= limit && labels_ok && proper) {
            failures.push(format!("{name} k={k} seed={seed}: valid={} diam={diam}/{limit} labels={}", report.passed, nd.label_count()));
        }
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(60);
    verdict(
        failures.is_empty() && fast,
        format!("200 runs, {} failures, {:.1}s (limit 60s){}", failures.len(), elapsed.as_secs_f64(), first(&failures)),
    )
}

fn criterion_2(audit: &mut ColoringAudit) -> Verdict {
    let mut failures = Vec::new();
    for run in 0..100usize {
        let seed = run as u64 + 1;
        let (name, g) = family(run, seed);
        let (nd, _, _) = sep_decompose(&g, 2, 3, fixpoint(), &SimConfig::with_seed(seed)).unwrap();
        let report = validate_decomposition(&g, &nd, DiameterMode::Strong);
        let close = separation_violations(&g, &nd, 3);
        audit.check_labels(&g, &nd);
        if !report.passed || close > 0 {
            failures.push(format!("{name} seed={seed}: valid={} close pairs={close}", report.passed));
        }
    }
    verdict(failures.is_empty(), format!("100 runs, {} with violations{}", failures.len(), first(&failures)))
}

fn criterion_3() -> Verdict {
    let mut passes = 0;
    let mut worst = (0usize, 0usize);
    for seed in 1..=100u64 {
        let g = gnp(500, 0.05, seed).unwrap();
        let cfg = SimConfig { seed, c_degree: 4.0, ..SimConfig::default() };
        let (nd, trace, _) = decompose(&g, &DecomposeParams::new(2), &cfg).unwrap();
        let h = extract_h_partition(&trace).unwrap();
        let clusters = nd.cluster_graph(&g).unwrap().graph;
        if validate_h_partition(&clusters, &h).passed {
            passes += 1;
        }
        let fwd = h.max_forward_degree(&clusters);
        if fwd > worst.0 {
            worst = (fwd, h.degree_bound);
        }
    }
    verdict(passes >= 95, format!("{passes}/100 audits pass (need 95); worst forward degree {} vs bound {}", worst.0, worst.1))
}

fn criterion_4(audit: &mut ColoringAudit) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for index in 0..4 {
        let (name, g) = family(index, 1);
        for k in [2, 3] {
            let runs: Vec<_> = [1u64, 2, 3]
                .iter()
                .map(|&s| rs_decompose(&g, k, RulingMethod::AglpDeterministic, &SimConfig::with_seed(s)).unwrap())
                .collect();
            let (nd, trace, _) = &runs[0];
            let identical = runs.iter().all(|(other, _, _)| other == nd);
            let h = extract_h_partition(trace).unwrap();
            let clusters = nd.cluster_graph(&g).unwrap().graph;
            let degree = h.max_forward_degree(&clusters);
            let bound = (g.n() as f64).powf(1.0 / k as f64).ceil() as usize;
            let valid = validate_decomposition(&g, nd, DiameterMode::Strong).passed;
            audit.check_labels(&g, nd);
            checked += 1;
            if !(identical && degree <= bound && valid) {
                failures.push(format!("{name} k={k}: identical={identical} degree={degree}/{bound} valid={valid}"));
            }
        }
    }
    verdict(failures.is_empty(), format!("{checked} family/k pairs x 3 runs, {} failures{}", failures.len(), first(&failures)))
}

/// Random graphs with at most `max_n` vertices, built by the library generator.
fn small_graphs(count: usize, max_n: usize) -> Vec<(u64, Graph)> {
    let densities = [0.1, 0.15, 0.2, 0.25, 0.3, 0.4];
    (0..count)
        .map(|i| {
            let n = 6 + i % (max_n - 5);
            let seed = 1000 + i as u64;
            (seed, gnp(n, densities[i % densities.len()], seed).unwrap())
        })
        .collect()
}

/// Default constants, plus `c_threshold = 1`, under which graphs this small do recurse.
const THRESHOLDS: [f64; 2] = [2.0, 1.0];

fn config(seed: u64, c_threshold: f64) -> SimConfig {
    SimConfig { seed, c_threshold, ..SimConfig::default() }
}

fn mds_failures(pipeline: MdsPipeline, seeds: &[u64]) -> (Vec<String>, usize) {
    let mut failures = Vec::new();
    let mut nondeterministic = 0;
    for (seed, g) in small_graphs(100, 18) {
        let (opt, _) = brute_mds(&g).unwrap();
        for (solver, c) in [MdsSolver::Exact, MdsSolver::Greedy].into_iter().flat_map(|s| THRESHOLDS.map(|c| (s, c))) {
            let results: Vec<_> = seeds
                .iter()
                .map(|&s| approx_mds(&g, 2, solver, pipeline, &config(seed * 7 + s, c)).unwrap())
                .collect();
            let r = &results[0];
            if results.iter().any(|o| o.value != r.value || o.decomposition != r.decomposition) {
                nondeterministic += 1;
            }
            let factor = match solver {
                MdsSolver::Exact => 1.0,
                MdsSolver::Greedy => harmonic(g.max_degree() + 1),
            };
            let dominating = g.closed_neighborhood_of(&r.value).len() == g.n();
            if !dominating || r.size as f64 > r.label_count as f64 * factor * opt as f64 + 1e-9 {
                failures.push(format!("n={} seed={seed} c={c} {solver:?}: size={} labels={} opt={opt}", g.n(), r.size, r.label_count));
            }
        }
    }
    (failures, nondeterministic)
}

fn criterion_5() -> Verdict {
    let start = Instant::now();
    let (failures, _) = mds_failures(MdsPipeline::Randomized, &[0]);
    let elapsed = start.elapsed();
    verdict(
        failures.is_empty() && elapsed < Duration::from_secs(120),
        format!("100 graphs x {{exact, greedy}} x 2 thresholds, {} violations, {:.1}s (limit 120s){}", failures.len(), elapsed.as_secs_f64(), first(&failures)),
    )
}

fn criterion_6() -> Verdict {
    let (failures, nondeterministic) = mds_failures(MdsPipeline::Deterministic, &[0, 1, 2]);
    verdict(
        failures.is_empty() && nondeterministic == 0,
        format!("100 graphs x {{exact, greedy}} x 2 thresholds x 3 seeds, {} violations, {nondeterministic} seed-dependent outputs{}", failures.len(), first(&failures)),
    )
}

fn criterion_7(audit: &mut ColoringAudit) -> Verdict {
    let mut failures = Vec::new();
    for (seed, g) in small_graphs(100, 16) {
        let (chi, _) = brute_chromatic(&g).unwrap();
        for c in THRESHOLDS {
            let r = approx_min_coloring(&g, 2, &config(seed, c)).unwrap();
            let proper = audit.check(&g, &r.value);
            if !proper || r.size > r.label_count * chi {
                failures.push(format!("n={} seed={seed} c={c}: colors={} labels={} chi={chi}", g.n(), r.size, r.label_count));
            }
        }
    }
    verdict(failures.is_empty(), format!("100 graphs x 2 thresholds, {} violations{}", failures.len(), first(&failures)))
}

fn criterion_8() -> Verdict {
    let mut failures = Vec::new();
    let mut s = Stream(8);
    let mut largest = 0;
    for i in 0..50 {
        let t = 2 + i % 2;
        let n = 5 + s.below(8);
        let g = connected_graph(&mut s, n, 25);
        largest = largest.max(g.m());
        let (opt, _) = brute_min_t_spanner(&g, t).unwrap();
        let r = approx_t_spanner(&g, t, 1, &SimConfig::with_seed(i as u64 + 1)).unwrap();
        let (report, _) = validate_stretch(&g, &r.value.edges, t);
        if !report.passed || r.value.intra_edges > r.label_count * opt {
            failures.push(format!("graph {i} t={t}: intra={} labels={} opt={opt} stretch ok={}", r.value.intra_edges, r.label_count, report.passed));
        }
    }
    verdict(failures.is_empty(), format!("50 graphs (up to {largest} edges), {} violations{}", failures.len(), first(&failures)))
}

fn criterion_9(audit: &mut ColoringAudit) -> Verdict {
    let eps: f64 = 0.5;
    let round_cap = (6.0 / eps).ceil() as u64;
    let mut trials: Vec<(String, Graph, u64)> = Vec::new();
    for q in [2, 3] {
        for seed in 1..=20 {
            trials.push((format!("girth6({q})"), girth6(q).unwrap(), seed));
        }
    }
    let mut s = Stream(9);
    for i in 0..50u64 {
        let (left, right) = (8 + s.below(20), 8 + s.below(20));
        let p = 0.1 + 0.05 * s.below(5) as f64;
        trials.push((format!("bipartite {i}"), bipartite_graph(&mut s, left, right, p), i + 1));
    }
    let (mut runs, mut fast, mut failures) = (0, 0, Vec::new());
    let mut worst = 0;
    for (name, g, seed) in &trials {
        let cfg = SimConfig::with_seed(*seed);
        let mut results = vec![("triangle-free", color_triangle_free(g, eps, &cfg).unwrap())];
        if g.girth().is_none_or(|girth| girth > 4) {
            results.push(("high-girth", color_high_girth(g, 2, eps, &cfg).unwrap()));
        }
        for (which, r) in results {
            runs += 1;
            let proper = audit.check(g, &r.value);
            let rounds = r.ledger.total();
            worst = worst.max(rounds);
            if rounds <= round_cap {
                fast += 1;
            }
            if !proper || r.value.palette() as f64 > r.bound {
                failures.push(format!("{name} {which} seed={seed}: proper={proper} palette={} bound={}", r.value.palette(), r.bound));
            }
        }
    }
    let rate = fast as f64 / runs as f64;
    verdict(
        failures.is_empty() && rate >= 0.9,
        format!(
            "{runs} runs, {} palette/properness violations, {:.0}% within {round_cap} rounds (need 90%, worst {worst}){}",
            failures.len(),
            100.0 * rate,
            first(&failures)
        ),
    )
}

fn criterion_10() -> Verdict {
    let mut failures = Vec::new();
    for run in 0..50usize {
        let gamma = 1 + run % 2;
        let seed = run as u64 + 1;
        let (name, g) = family(run / 2, seed);
        let (li, _) = low_intersecting(&g, 2, gamma, fixpoint(), &SimConfig::with_seed(seed)).unwrap();
        let nd = &li.decomposition;
        let owner = nd.owner(g.n());
        let label_count = nd.label_count();
        let mut worst_ball = 0;
        for v in g.vertices() {
            let dist = bfs(&g, &[v], gamma);
            let mut met: Vec<usize> = g.vertices().filter(|&u| dist[u] <= gamma).map(|u| owner[u]).collect();
            met.sort_unstable();
            met.dedup();
            worst_ball = worst_ball.max(met.len());
        }
        let diam = nd.clusters.iter().map(|c| cluster_diameter(&g, &c.members)).max().unwrap_or(0);
        if worst_ball > label_count || diam > nd.cert.d {
            failures.push(format!("{name} gamma={gamma} seed={seed}: ball meets {worst_ball}/{label_count}, diameter {diam}/{}", nd.cert.d));
        }
    }
    verdict(failures.is_empty(), format!("50 runs, {} violations{}", failures.len(), first(&failures)))
}

fn criterion_11() -> Verdict {
    let mean = |n: usize| {
        let p = 10.0 / (n as f64 - 1.0);
        let params = DecomposeParams { epsilon: 0.5, ..DecomposeParams::new(2) };
        let total: u64 = (1..=20u64)
            .map(|seed| {
                let g = gnp(n, p, seed).unwrap();
                decompose(&g, &params, &SimConfig::with_seed(seed)).unwrap().2.total()
            })
            .sum();
        total as f64 / 20.0
    };
    let (small, large) = (mean(256), mean(4096));
    let ratio = small.max(large) / small.min(large).max(f64::MIN_POSITIVE);
    verdict(ratio <= 2.0, format!("mean rounds {small:.2} at n=256, {large:.2} at n=4096, ratio {ratio:.2} (limit 2)"))
}

fn criterion_12(audit: &mut ColoringAudit) -> Verdict {
    let mut families = 0;
    let mut bad_families = Vec::new();
    for delta in 0..=4 {
        for p in 1..=32 {
            let Ok(f) = UnionFreeFamily::new(p, delta) else { continue };
            families += 1;
            let sets: Vec<Vec<usize>> = (1..=p).map(|c| f.set(c)).collect();
            let in_ground = sets.iter().flatten().all(|&x| (1..=f.ground_size).contains(&x));
            if !in_ground || !is_union_free(&sets, delta) {
                bad_families.push(format!("(p={p}, delta={delta})"));
            }
        }
    }
    let mut s = Stream(12);
    let mut over = Vec::new();
    for i in 0..500 {
        let n = 2 + s.below(99);
        let p = [0.02, 0.05, 0.1, 0.2, 0.4][i % 5];
        // Redraw edgeless samples: the bound is stated for graphs with at least one edge.
        let g = loop {
            let g = random_graph(&mut s, n, p);
            if g.m() > 0 {
                break g;
            }
        };
        let (c, _) = linial_color(&g, LinialRounds::UntilFixpoint).unwrap();
        let delta = g.max_degree();
        let proper = audit.check(&g, &c);
        if !proper || c.palette() > C_LIN * delta * delta {
            over.push(format!("graph {i}: n={n} delta={delta} palette={}", c.palette()));
        }
    }
    let passed = bad_families.is_empty() && over.is_empty() && audit.improper == 0;
    verdict(
        passed,
        format!(
            "{families} families, {} not union-free; 500 Linial runs, {} over {C_LIN}*delta^2; {} colorings audited, {} improper{}{}",
            bad_families.len(),
            over.len(),
            audit.checked,
            audit.improper,
            first(&bad_families),
            first(&over)
        ),
    )
}

fn first(failures: &[String]) -> String {
    failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
}

fn main() {
    let mut audit = ColoringAudit::default();
    type Criterion<'a> = (&'a str, Box<dyn FnOnce(&mut ColoringAudit) -> Verdict>);
    let criteria: Vec<Criterion> = vec![
        ("decomposition validity", Box::new(criterion_1)),
        ("separation", Box::new(criterion_2)),
        ("H-partition degree", Box::new(|_| criterion_3())),
        ("ruling-set determinism and degree", Box::new(criterion_4)),
        ("dominating set ratio", Box::new(|_| criterion_5())),
        ("deterministic dominating set", Box::new(|_| criterion_6())),
        ("coloring ratio", Box::new(criterion_7)),
        ("t-spanner ratio", Box::new(|_| criterion_8())),
        ("triangle-free and high-girth coloring", Box::new(criterion_9)),
        ("low-intersecting partitions", Box::new(|_| criterion_10())),
        ("round count independent of n", Box::new(|_| criterion_11())),
        ("kernel micro-oracles", Box::new(criterion_12)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let v = run(&mut audit);
        if !v.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} [{}] {name}: {} ({:.1}s)",
            i + 1,
            if v.passed { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
