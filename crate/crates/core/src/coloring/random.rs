use rand::Rng;

use super::{Coloring, HPartition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::{rng_for, RoundLedger, SimConfig};

/// `ceil(delta * n^eps)`, raised to `delta + 1` so that a free color always exists.
pub fn random_palette(delta: usize, n: usize, eps: f64) -> usize {
    let p = (delta as f64 * (n.max(1) as f64).powf(eps)).ceil() as usize;
    p.max(delta + 1)
}

/// Runs trial rounds until every `eligible` vertex is colored. Each round, every pending vertex
/// draws a color and keeps it unless a pending neighbor drew the same color or a colored neighbor
/// already owns it. Uncolored ineligible neighbors are ignored. Returns the number of rounds.
fn randomized_rounds(
    g: &Graph,
    palette: usize,
    eligible: &[bool],
    colors: &mut [usize],
    seed: u64,
    scope: &str,
) -> Result<u64> {
    let mut pending: Vec<usize> = g.vertices().filter(|&v| eligible[v] && colors[v] == 0).collect();
    for &v in &pending {
        let constraints =
            g.neighbors(v).iter().filter(|&&u| eligible[u] || colors[u] != 0).count();
        if constraints >= palette {
            return Err(Error::Precondition(format!(
                "vertex {v} has {constraints} constraining neighbors but only {palette} colors"
            )));
        }
    }
    let mut draw = vec![0usize; g.n() + 1];
    let mut round = 0u64;
    while !pending.is_empty() {
        for &v in &pending {
            draw[v] = rng_for(seed, scope, v as u64, round).gen_range(1..=palette);
        }
        let winners: Vec<usize> = pending
            .iter()
            .copied()
            .filter(|&v| {
                g.neighbors(v).iter().all(|&u| {
                    let taken = if draw[u] != 0 { draw[u] } else { colors[u] };
                    taken != draw[v]
                })
            })
            .collect();
        for &v in &winners {
            colors[v] = draw[v];
        }
        for &v in &pending {
            draw[v] = 0;
        }
        pending.retain(|&v| colors[v] == 0);
        round += 1;
    }
    Ok(round)
}

pub(crate) fn random_color_with(
    g: &Graph,
    palette: usize,
    seed: u64,
    scope: &str,
) -> Result<(Coloring, u64)> {
    let eligible = vec![true; g.n() + 1];
    let mut colors = vec![0; g.n() + 1];
    let rounds = randomized_rounds(g, palette, &eligible, &mut colors, seed, scope)?;
    Ok((Coloring::new(colors[1..].to_vec(), palette)?, rounds))
}

/// Randomized `ceil(delta * n^eps)`-coloring, run until every vertex is colored.
pub fn random_color(g: &Graph, eps: f64, cfg: &SimConfig) -> Result<(Coloring, RoundLedger)> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let palette = random_palette(g.max_degree(), g.n(), eps);
    let (c, rounds) = random_color_with(g, palette, cfg.seed, "random-color")?;
    let mut ledger = RoundLedger::new();
    ledger.charge("random-color", rounds, 1);
    Ok((c, ledger))
}

/// Colors bands from last to first; a vertex only competes with neighbors in its own or
/// later bands, of which it has at most `h.degree_bound`.
pub fn h_partition_random_color(
    g: &Graph,
    h: &HPartition,
    eps: f64,
    cfg: &SimConfig,
) -> Result<(Coloring, RoundLedger)> {
    if !(eps > 0.0) {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    h.check(g)?;
    let palette = random_palette(h.degree_bound, g.n(), eps);
    let mut colors = vec![0; g.n() + 1];
    let mut ledger = RoundLedger::new();
    for (i, band) in h.bands.iter().enumerate().rev() {
        let mut eligible = vec![false; g.n() + 1];
        for &v in band {
            eligible[v] = true;
        }
        let scope = format!("h-random/band-{}", i + 1);
        let rounds = randomized_rounds(g, palette, &eligible, &mut colors, cfg.seed, &scope)?;
        ledger.charge(scope, rounds, 1);
    }
    Ok((Coloring::new(colors[1..].to_vec(), palette)?, ledger))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::peel_h_partition;

    #[test]
    fn edgeless_finishes_in_one_round() {
        let (c, l) = random_color(&Graph::empty(4), 0.5, &SimConfig::default()).unwrap();
        assert_eq!(c.palette(), 1);
        assert_eq!(l.total(), 1);
    }

    #[test]
    fn proper_and_reproducible() {
        let g = Graph::new(6, (1..=6).map(|i| (i, i % 6 + 1))).unwrap();
        let cfg = SimConfig::with_seed(3);
        let (a, _) = random_color(&g, 0.5, &cfg).unwrap();
        let (b, _) = random_color(&g, 0.5, &cfg).unwrap();
        assert!(a.is_proper(&g));
        assert_eq!(a, b);
        assert_eq!(a.palette(), random_palette(2, 6, 0.5));
    }

    #[test]
    fn band_coloring_is_proper() {
        let g = Graph::new(6, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1), (1, 4)]).unwrap();
        let h = peel_h_partition(&g, 1, 0.5).unwrap();
        let (c, _) = h_partition_random_color(&g, &h, 0.5, &SimConfig::default()).unwrap();
        assert!(c.is_proper(&g));
        assert!(c.palette() <= random_palette(h.degree_bound, 6, 0.5));
    }

    #[test]
    fn palette_formula() {
        assert_eq!(random_palette(9, 10, 0.1), (9.0 * 10f64.powf(0.1)).ceil() as usize);
        assert_eq!(random_palette(0, 10, 0.5), 1);
    }
}
