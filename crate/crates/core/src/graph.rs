//! Simple undirected graphs on vertices `1..=n`, plus the structural queries the
//! decomposition algorithms are built from: balls, powers, induced subgraphs,
//! cluster contraction, diameters and girth.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// A set of vertex IDs, always iterated in ascending order.
pub type VertexSet = BTreeSet<usize>;

/// Undirected simple graph. `adj[v]` is the sorted neighbor list of `v`; slot 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints, self-loops and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n + 1];
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { adj, m: seen.len() })
    }

    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n + 1], m: 0 }
    }

    /// Builds from possibly repeated, possibly one-sided adjacency; the result is symmetrized.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len().saturating_sub(1);
        let mut extra = Vec::new();
        for v in 1..=n {
            for &u in &adj[v] {
                debug_assert!(u >= 1 && u <= n && u != v);
                extra.push((u, v));
            }
        }
        for (u, v) in extra {
            adj[u].push(v);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Self { adj, m: m / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len() - 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u >= 1 && u <= self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n() {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|&v| self.check_vertex(v))
    }

    /// Closed neighborhood of `v`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s: VertexSet = self.adj[v].iter().copied().collect();
        s.insert(v);
        s
    }

    /// Closed neighborhood of a set.
    pub fn closed_neighborhood_of(&self, set: &VertexSet) -> VertexSet {
        let mut s = set.clone();
        for &v in set {
            s.extend(self.adj[v].iter().copied());
        }
        s
    }

    /// Hop distances from all `sources`, explored up to `limit` hops. Index by vertex.
    pub fn distances_from(&self, sources: &VertexSet, limit: Option<usize>) -> Vec<Option<usize>> {
        self.closest_source(sources, limit).into_iter().map(|x| x.map(|(d, _)| d)).collect()
    }

    /// For each vertex, `(distance, source)` to the nearest source, ties to the smaller source ID.
    /// Sources are their own nearest source.
    pub fn closest_source(
        &self,
        sources: &VertexSet,
        limit: Option<usize>,
    ) -> Vec<Option<(usize, usize)>> {
        let mut best: Vec<Option<(usize, usize)>> = vec![None; self.n() + 1];
        let mut frontier: Vec<usize> = Vec::new();
        for &s in sources {
            best[s] = Some((0, s));
            frontier.push(s);
        }
        let mut depth = 0;
        while !frontier.is_empty() && limit.is_none_or(|l| depth < l) {
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                let src = best[u].expect("frontier vertex has a source").1;
                for &w in &self.adj[u] {
                    match best[w] {
                        None => {
                            best[w] = Some((depth, src));
                            next.push(w);
                        }
                        Some((d, s)) if d == depth && src < s => best[w] = Some((depth, src)),
                        _ => {}
                    }
                }
            }
            frontier = next;
        }
        best
    }

    /// Hop distance, `None` if the endpoints are in different components.
    pub fn dist(&self, u: usize, v: usize) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(&VertexSet::from([u]), None)[v])
    }

    /// All vertices within `r` hops of `v`.
    pub fn ball(&self, v: usize, r: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.ball_of(&VertexSet::from([v]), r))
    }

    /// All vertices within `r` hops of some member of `set`.
    pub fn ball_of(&self, set: &VertexSet, r: usize) -> VertexSet {
        self.distances_from(set, Some(r))
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect()
    }

    /// `r`-th power: `u ~ v` iff `1 <= dist(u, v) <= r`.
    pub fn power(&self, r: usize) -> Result<Graph> {
        if r == 0 {
            return Err(Error::InvalidParameter("power radius must be at least 1".into()));
        }
        if r == 1 {
            return Ok(self.clone());
        }
        let mut adj = vec![Vec::new(); self.n() + 1];
        for v in self.vertices() {
            let d = self.distances_from(&VertexSet::from([v]), Some(r));
            adj[v] = d
                .iter()
                .enumerate()
                .filter_map(|(u, du)| match du {
                    Some(x) if *x >= 1 => Some(u),
                    _ => None,
                })
                .collect();
        }
        Ok(Graph::from_adjacency(adj))
    }

    /// Subgraph induced by `set`, relabeled to `1..=|set|` in ascending order of host ID.
    pub fn induced(&self, set: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(set)?;
        let to_host: Vec<usize> = set.iter().copied().collect();
        let mut local = vec![0usize; self.n() + 1];
        for (i, &v) in to_host.iter().enumerate() {
            local[v] = i + 1;
        }
        let mut adj = vec![Vec::new(); to_host.len() + 1];
        for (i, &v) in to_host.iter().enumerate() {
            adj[i + 1] = self.adj[v].iter().filter(|&&u| local[u] != 0).map(|&u| local[u]).collect();
        }
        let graph = Graph::from_adjacency(adj);
        Ok(InducedSubgraph { graph, to_host })
    }

    /// Contracts disjoint clusters into supernodes. Supernode `i` is `clusters[i - 1]`;
    /// vertices outside every cluster are dropped.
    pub fn contract(&self, clusters: &[VertexSet], leaders: &[usize]) -> Result<SuperGraph> {
        if clusters.len() != leaders.len() {
            return Err(Error::InvalidParameter("one leader per cluster required".into()));
        }
        let mut owner = vec![None; self.n() + 1];
        for (i, (c, &leader)) in clusters.iter().zip(leaders).enumerate() {
            if c.is_empty() {
                return Err(Error::EmptyCluster);
            }
            self.check_set(c)?;
            if !c.contains(&leader) {
                return Err(Error::LeaderOutsideCluster { cluster: i + 1, leader });
            }
            for &v in c {
                if owner[v].is_some() {
                    return Err(Error::OverlappingClusters(v));
                }
                owner[v] = Some(i + 1);
            }
        }
        let mut adj = vec![Vec::new(); clusters.len() + 1];
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (owner[u], owner[v]) {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
        Ok(SuperGraph {
            graph: Graph::from_adjacency(adj),
            clusters: clusters.to_vec(),
            leaders: leaders.to_vec(),
            owner,
        })
    }

    /// Maximum hop distance inside `G[set]`; `None` when `G[set]` is disconnected.
    pub fn strong_diameter(&self, set: &VertexSet) -> Result<Option<usize>> {
        if set.is_empty() {
            return Err(Error::EmptyCluster);
        }
        let sub = self.induced(set)?;
        Ok(sub.graph.diameter())
    }

    /// Maximum hop distance in `G` between members of `set`; `None` when some pair is unreachable.
    pub fn weak_diameter(&self, set: &VertexSet) -> Result<Option<usize>> {
        if set.is_empty() {
            return Err(Error::EmptyCluster);
        }
        self.check_set(set)?;
        let mut worst = 0;
        for &v in set {
            let d = self.distances_from(&VertexSet::from([v]), None);
            for &u in set {
                match d[u] {
                    Some(x) => worst = worst.max(x),
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(worst))
    }

    /// Diameter of the whole graph; `None` if disconnected. The empty graph has diameter 0.
    pub fn diameter(&self) -> Option<usize> {
        let mut worst = 0;
        for v in self.vertices() {
            let d = self.distances_from(&VertexSet::from([v]), None);
            for x in &d[1..] {
                worst = worst.max((*x)?);
            }
        }
        Some(worst)
    }

    /// Eccentricity of `v` within its component.
    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(&VertexSet::from([v]), None).iter().flatten().copied().max().unwrap_or(0)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n + 1];
        let mut parent = vec![0usize; n + 1];
        for root in self.vertices() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n() + 1];
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen[v] {
                continue;
            }
            let comp: VertexSet = self
                .distances_from(&VertexSet::from([v]), None)
                .iter()
                .enumerate()
                .filter_map(|(u, d)| d.map(|_| u))
                .collect();
            for &u in &comp {
                seen[u] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Canonical text form: `n m`, then one `u v` line per edge with `u < v`, sorted.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(s, "{u} {v}").expect("writing to a String");
        }
        s
    }

    /// Parses the text form. `#` starts a comment; blank lines are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_pair = |line: usize, l: &str| -> Result<(usize, usize)> {
            let mut it = l.split_whitespace().map(|t| {
                t.parse::<usize>().map_err(|e| Error::Parse { line, message: format!("{t:?}: {e}") })
            });
            let a = it.next().ok_or(Error::Parse { line, message: "missing field".into() })??;
            let b = it.next().ok_or(Error::Parse { line, message: "missing field".into() })??;
            if it.next().is_some() {
                return Err(Error::Parse { line, message: "expected two fields".into() });
            }
            Ok((a, b))
        };
        let (line, header) = lines.next().ok_or(Error::Parse { line: 0, message: "empty input".into() })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 1,
                message: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges)
    }
}

/// An induced subgraph together with its local-to-host vertex map.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_host[i - 1]` is the host ID of local vertex `i`.
    pub to_host: Vec<usize>,
}

impl InducedSubgraph {
    pub fn host(&self, local: usize) -> usize {
        self.to_host[local - 1]
    }

    pub fn local(&self, host: usize) -> Option<usize> {
        self.to_host.binary_search(&host).ok().map(|i| i + 1)
    }
}

/// Result of contracting clusters; supernode `i` stands for `clusters[i - 1]`.
#[derive(Clone, Debug)]
pub struct SuperGraph {
    pub graph: Graph,
    pub clusters: Vec<VertexSet>,
    pub leaders: Vec<usize>,
    /// Host vertex to supernode, `None` for dropped vertices. Index by host vertex.
    pub owner: Vec<Option<usize>>,
}

impl SuperGraph {
    pub fn cluster(&self, supernode: usize) -> &VertexSet {
        &self.clusters[supernode - 1]
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(3, [(1, 4)]), Err(Error::VertexOutOfRange { vertex: 4, n: 3 }));
        assert_eq!(Graph::new(3, [(2, 2)]), Err(Error::SelfLoop(2)));
        assert_eq!(Graph::new(3, [(1, 2), (2, 1)]), Err(Error::DuplicateEdge(1, 2)));
    }

    #[test]
    fn distances_on_path_and_disconnected() {
        let g = path(4);
        assert_eq!(g.dist(1, 4), Ok(Some(3)));
        let h = Graph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(h.dist(1, 3), Ok(None));
        assert!(g.dist(0, 1).is_err());
    }

    #[test]
    fn square_of_path() {
        let p2 = path(4).power(2).unwrap();
        let edges: Vec<_> = p2.edges().collect();
        assert_eq!(edges, vec![(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
        assert!(path(4).power(0).is_err());
    }

    #[test]
    fn contract_cycle_into_triangle() {
        let g = cycle(6);
        let clusters = [VertexSet::from([1, 2]), VertexSet::from([3, 4]), VertexSet::from([5, 6])];
        let sg = g.contract(&clusters, &[1, 3, 5]).unwrap();
        assert_eq!(sg.graph.edges().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        let overlap = [VertexSet::from([1, 2]), VertexSet::from([2, 3])];
        assert_eq!(g.contract(&overlap, &[1, 2]).unwrap_err(), Error::OverlappingClusters(2));
        assert!(matches!(
            g.contract(&[VertexSet::from([1, 2])], &[3]),
            Err(Error::LeaderOutsideCluster { .. })
        ));
    }

    #[test]
    fn diameters() {
        let g = cycle(6);
        assert_eq!(g.strong_diameter(&VertexSet::from([1, 2, 3])), Ok(Some(2)));
        assert_eq!(g.strong_diameter(&VertexSet::from([1, 4])), Ok(None));
        assert_eq!(g.weak_diameter(&VertexSet::from([1, 4])), Ok(Some(3)));
        assert_eq!(g.strong_diameter(&VertexSet::new()), Err(Error::EmptyCluster));
    }

    #[test]
    fn girth_of_small_graphs() {
        assert_eq!(cycle(5).girth(), Some(5));
        assert_eq!(path(4).girth(), None);
        let k4 = Graph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(k4.girth(), Some(3));
    }

    #[test]
    fn closest_source_breaks_ties_by_id() {
        let g = path(5);
        let best = g.closest_source(&VertexSet::from([1, 5]), None);
        assert_eq!(best[3], Some((2, 1)));
        assert_eq!(best[4], Some((1, 5)));
    }

    #[test]
    fn text_round_trip_with_comments() {
        let text = "# header\n4 3\n1 2\n2 3 # middle\n\n3 4\n";
        let g = Graph::from_text(text).unwrap();
        assert_eq!(g, path(4));
        assert_eq!(g.to_text(), "4 3\n1 2\n2 3\n3 4\n");
        assert!(Graph::from_text("3 2\n1 2\n").is_err());
    }
}
