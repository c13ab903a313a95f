use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Ordered vertex bands `S_1, ..., S_l` where every `v` in `S_i` has at most `degree_bound`
/// neighbors in `S_i, ..., S_l`. Bands may be empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPartition {
    pub bands: Vec<VertexSet>,
    #[serde(rename = "degreeBound")]
    pub degree_bound: usize,
}

impl HPartition {
    /// 1-based band of each vertex, 0 where unassigned. Index by vertex.
    pub fn band_index(&self, n: usize) -> Vec<usize> {
        let mut band = vec![0; n + 1];
        for (i, s) in self.bands.iter().enumerate() {
            for &v in s {
                if v <= n {
                    band[v] = i + 1;
                }
            }
        }
        band
    }

    /// Neighbors of each vertex in its own or a later band.
    pub fn forward_degrees(&self, g: &Graph) -> Vec<usize> {
        let band = self.band_index(g.n());
        let mut out = vec![0; g.n() + 1];
        for v in g.vertices() {
            out[v] = g.neighbors(v).iter().filter(|&&u| band[u] >= band[v]).count();
        }
        out
    }

    pub fn max_forward_degree(&self, g: &Graph) -> usize {
        self.forward_degrees(g).into_iter().max().unwrap_or(0)
    }

    /// Bands partition `V(g)` and respect the degree bound.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let mut seen = vec![false; g.n() + 1];
        for &v in self.bands.iter().flatten() {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::Precondition(format!("vertex {v} appears in two bands")));
            }
        }
        if let Some(v) = g.vertices().find(|&v| !seen[v]) {
            return Err(Error::Precondition(format!("vertex {v} is in no band")));
        }
        let fwd = self.forward_degrees(g);
        if let Some(v) = g.vertices().find(|&v| fwd[v] > self.degree_bound) {
            return Err(Error::Precondition(format!(
                "vertex {v} has forward degree {} above bound {}",
                fwd[v], self.degree_bound
            )));
        }
        Ok(())
    }
}

/// Repeatedly removes every vertex whose remaining degree is at most `(2 + eps) * a`.
/// Each removal round becomes one band.
pub fn peel_h_partition(g: &Graph, a: usize, eps: f64) -> Result<HPartition> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let threshold = (2.0 + eps) * a as f64;
    let mut degree: Vec<usize> = (0..=g.n()).map(|v| if v == 0 { 0 } else { g.degree(v) }).collect();
    let mut alive = vec![true; g.n() + 1];
    alive[0] = false;
    let mut remaining = g.n();
    let mut bands = Vec::new();
    while remaining > 0 {
        let band: VertexSet =
            g.vertices().filter(|&v| alive[v] && degree[v] as f64 <= threshold).collect();
        if band.is_empty() {
            return Err(Error::PeelingStalled { remaining, threshold });
        }
        for &v in &band {
            alive[v] = false;
        }
        for &v in &band {
            for &u in g.neighbors(v) {
                if alive[u] {
                    degree[u] -= 1;
                }
            }
        }
        remaining -= band.len();
        bands.push(band);
    }
    Ok(HPartition { bands, degree_bound: threshold.floor() as usize })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_stalls_with_small_bound() {
        let k5 = Graph::new(5, (1..=5).flat_map(|u| (u + 1..=5).map(move |v| (u, v)))).unwrap();
        assert!(matches!(peel_h_partition(&k5, 1, 1.0), Err(Error::PeelingStalled { .. })));
    }

    #[test]
    fn sparse_graphs_peel_in_one_band() {
        let p4 = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let h = peel_h_partition(&p4, 1, 1.0).unwrap();
        assert_eq!(h.bands.len(), 1);
        assert_eq!(h.degree_bound, 3);
        h.check(&p4).unwrap();
        let c6 = Graph::new(6, (1..=6).map(|i| (i, i % 6 + 1))).unwrap();
        assert_eq!(peel_h_partition(&c6, 1, 1.0).unwrap().bands.len(), 1);
    }

    #[test]
    fn check_reports_missing_vertices() {
        let g = Graph::new(2, [(1, 2)]).unwrap();
        let h = HPartition { bands: vec![VertexSet::from([1])], degree_bound: 1 };
        assert!(h.check(&g).is_err());
    }
}
