//! Deliberately naive reference computations, written without the library's traversal code,
//! used to cross-check its oracles and outputs on small graphs.
#![allow(dead_code)]

use netdecomp::decompose::NetworkDecomposition;
use netdecomp::Graph;

pub const INF: usize = usize::MAX / 4;

/// All-pairs distances by Floyd-Warshall over the edge list. Index 0 is unused.
pub fn floyd(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut d = vec![vec![INF; n + 1]; n + 1];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for w in 1..=n {
        for u in 1..=n {
            for v in 1..=n {
                let via = d[u][w] + d[w][v];
                if via < d[u][v] {
                    d[u][v] = via;
                }
            }
        }
    }
    d
}

pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

/// Chromatic number by trying every assignment with `1, 2, ...` colors.
pub fn naive_chromatic(g: &Graph) -> usize {
    let n = g.n();
    let edges = edge_list(g);
    if n == 0 {
        return 0;
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n + 1];
        loop {
            if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
                return k;
            }
            // Odometer increment over vertices 1..=n.
            let mut i = 1;
            while i <= n && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i > n {
                break;
            }
            colors[i] += 1;
        }
    }
    n
}

/// Minimum dominating set size over all subsets.
pub fn naive_mds(g: &Graph) -> usize {
    let n = g.n();
    let mut closed = vec![0u64; n + 1];
    for v in 1..=n {
        closed[v] |= 1 << (v - 1);
    }
    for (u, v) in g.edges() {
        closed[u] |= 1 << (v - 1);
        closed[v] |= 1 << (u - 1);
    }
    let all: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut best = n;
    for mask in 0u64..=all {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let covered = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).fold(0, |c, v| c | closed[v]);
        if covered == all {
            best = size;
        }
    }
    best
}

/// Fewest edges of a subgraph in which every edge of `g` has endpoints within `t` hops.
pub fn naive_min_spanner(g: &Graph, t: usize) -> usize {
    let edges = edge_list(g);
    let m = edges.len();
    let mut best = m;
    for mask in 0u64..(1 << m) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let kept: Vec<(usize, usize)> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        let d = floyd(g.n(), &kept);
        if edges.iter().all(|&(u, v)| d[u][v] <= t) {
            best = size;
        }
    }
    best
}

/// Shortest cycle length: for each edge, the distance between its endpoints without it, plus one.
pub fn naive_girth(g: &Graph) -> Option<usize> {
    let edges = edge_list(g);
    let mut best = INF;
    for (i, &(u, v)) in edges.iter().enumerate() {
        let rest: Vec<(usize, usize)> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
        let d = floyd(g.n(), &rest);
        best = best.min(d[u][v].saturating_add(1));
    }
    (best < INF).then_some(best)
}

/// Diameter of `members` measured inside the subgraph they induce; `INF` when disconnected.
pub fn induced_diameter(g: &Graph, members: &[usize]) -> usize {
    let local = |v: usize| members.iter().position(|&m| m == v);
    let inside: Vec<(usize, usize)> = g
        .edges()
        .filter_map(|(u, v)| Some((local(u)? + 1, local(v)? + 1)))
        .collect();
    let d = floyd(members.len(), &inside);
    d.iter().skip(1).flat_map(|row| row.iter().skip(1)).copied().max().unwrap_or(0)
}

/// Smallest distance in `g` between two distinct clusters that share a label, if any.
pub fn min_equal_label_distance(g: &Graph, nd: &NetworkDecomposition) -> Option<usize> {
    let d = floyd(g.n(), &edge_list(g));
    let mut best = None;
    for (i, a) in nd.clusters.iter().enumerate() {
        for b in &nd.clusters[i + 1..] {
            if a.label != b.label {
                continue;
            }
            let gap = a.members.iter().flat_map(|&u| b.members.iter().map(move |&v| (u, v))).map(|(u, v)| d[u][v]).min();
            best = match (best, gap) {
                (Some(x), Some(y)) => Some(usize::min(x, y)),
                (None, y) => y,
                (x, None) => x,
            };
        }
    }
    best
}

/// True if no member of `sets` is covered by the union of `delta` others. Decided per member by
/// exhaustive branching: pick its first uncovered element and try every other set containing it.
pub fn is_union_free(sets: &[Vec<usize>], delta: usize) -> bool {
    fn coverable(target: &[usize], others: &[&Vec<usize>], covered: &mut Vec<usize>, budget: usize) -> bool {
        let Some(&open) = target.iter().find(|x| !covered.contains(x)) else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for s in others.iter().filter(|s| s.contains(&open)) {
            let before = covered.len();
            covered.extend(s.iter().copied());
            let done = coverable(target, others, covered, budget - 1);
            covered.truncate(before);
            if done {
                return true;
            }
        }
        false
    }
    (0..sets.len()).all(|i| {
        let others: Vec<&Vec<usize>> = sets.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s).collect();
        !coverable(&sets[i], &others, &mut Vec::new(), delta)
    })
}

/// Tiny splitmix64 stream for picking test instances without touching the library's RNG.
pub struct Stream(pub u64);

impl Stream {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next() >> 11) as f64 / (1u64 << 53) as f64) < p
    }
}

/// Connected graph: a random tree plus random extra edges, at most `max_edges` edges in total.
pub fn connected_graph(s: &mut Stream, n: usize, max_edges: usize) -> Graph {
    let mut edges: Vec<(usize, usize)> = (2..=n).map(|v| (1 + s.below(v - 1), v)).collect();
    let extra = s.below(max_edges.saturating_sub(n - 1) + 1);
    for _ in 0..extra * 3 {
        if edges.len() >= max_edges {
            break;
        }
        let (u, v) = (1 + s.below(n), 1 + s.below(n));
        let e = (u.min(v), u.max(v));
        if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
            edges.push(e);
        }
    }
    Graph::new(n, edges).expect("edges are valid")
}

/// Random bipartite graph between `1..=left` and the rest.
pub fn bipartite_graph(s: &mut Stream, left: usize, right: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=left {
        for v in left + 1..=left + right {
            if s.chance(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(left + right, edges).expect("edges are valid")
}

/// Random graph with each pair present with probability `p`.
pub fn random_graph(s: &mut Stream, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if s.chance(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (2..=leaves + 1).map(|v| (1, v))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v)))).unwrap()
}

/// Outer 5-cycle 1..5, inner pentagram 6..10, spokes `i - (i + 5)`.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 1..=5 {
        edges.push((i, i % 5 + 1));
        edges.push((i + 5, (i + 1) % 5 + 6));
        edges.push((i, i + 5));
    }
    Graph::new(10, edges).unwrap()
}
