use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::sim::{rng_for, RoundLedger, SimConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RulingMethod {
    /// Randomized maximal independent set on the `(sep - 1)`-th power, restricted to the universe.
    LubyPower,
    /// Deterministic merge over ID bits.
    AglpDeterministic,
}

/// Rulers pairwise at distance `>= sep`; every universe vertex within `dom` of a ruler.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulingSet {
    pub rulers: VertexSet,
    pub sep: usize,
    /// Domination guaranteed by the method.
    pub dom: usize,
    /// Largest distance from a universe vertex to its nearest ruler.
    #[serde(rename = "realizedDom")]
    pub realized_dom: usize,
}

/// Number of bits needed for IDs `0..n`.
pub(crate) fn id_bits(n: usize) -> usize {
    (usize::BITS - n.saturating_sub(1).leading_zeros()) as usize
}

fn luby(g: &Graph, universe: &VertexSet, sep: usize, seed: u64, scope: &str) -> (VertexSet, u64) {
    let reach = sep - 1;
    let near: Vec<Vec<usize>> = (0..=g.n())
        .map(|v| {
            if !universe.contains(&v) {
                return Vec::new();
            }
            let d = g.distances_from(&VertexSet::from([v]), Some(reach));
            universe.iter().copied().filter(|&u| u != v && d[u].is_some()).collect()
        })
        .collect();
    let mut active: Vec<bool> = (0..=g.n()).map(|v| universe.contains(&v)).collect();
    let mut rulers = VertexSet::new();
    let mut round = 0u64;
    let mut value = vec![0u64; g.n() + 1];
    while active.iter().any(|&a| a) {
        for v in universe {
            if active[*v] {
                value[*v] = rng_for(seed, scope, *v as u64, round).next_u64();
            }
        }
        let joined: Vec<usize> = universe
            .iter()
            .copied()
            .filter(|&v| active[v] && near[v].iter().all(|&u| !active[u] || (value[v], v) < (value[u], u)))
            .collect();
        for &v in &joined {
            rulers.insert(v);
            active[v] = false;
            for &u in &near[v] {
                active[u] = false;
            }
        }
        round += 1;
    }
    (rulers, round)
}

fn aglp(g: &Graph, universe: &VertexSet, sep: usize) -> (VertexSet, u64) {
    let bits = id_bits(g.n());
    let mut candidates = universe.clone();
    let mut stamp = vec![usize::MAX; g.n() + 1];
    for b in 0..bits {
        let mut groups: std::collections::BTreeMap<usize, (VertexSet, VertexSet)> = Default::default();
        for &v in &candidates {
            let id = v - 1;
            let e = groups.entry(id >> (b + 1)).or_default();
            if id >> b & 1 == 0 { e.0.insert(v) } else { e.1.insert(v) };
        }
        for (key, (low, high)) in groups {
            if low.is_empty() || high.is_empty() {
                continue;
            }
            for (v, d) in g.distances_from(&low, Some(sep - 1)).iter().enumerate() {
                if d.is_some() {
                    stamp[v] = key;
                }
            }
            for w in high {
                if stamp[w] == key {
                    candidates.remove(&w);
                }
            }
        }
        stamp.iter_mut().for_each(|s| *s = usize::MAX);
    }
    (candidates, bits as u64)
}

pub(crate) fn ruling_set_scoped(
    g: &Graph,
    universe: &VertexSet,
    sep: usize,
    method: RulingMethod,
    seed: u64,
    scope: &str,
) -> Result<(RulingSet, RoundLedger)> {
    if universe.is_empty() {
        return Err(Error::Precondition("ruling set of an empty universe".into()));
    }
    if sep < 2 {
        return Err(Error::InvalidParameter(format!("separation must be at least 2, got {sep}")));
    }
    g.check_set(universe)?;
    let mut ledger = RoundLedger::new();
    let (rulers, dom) = match method {
        RulingMethod::LubyPower => {
            let (w, rounds) = luby(g, universe, sep, seed, scope);
            ledger.charge("ruling-set/luby", rounds, 2 * (sep as u64 - 1));
            (w, sep - 1)
        }
        RulingMethod::AglpDeterministic => {
            let (w, phases) = aglp(g, universe, sep);
            ledger.charge("ruling-set/aglp", phases, sep as u64 - 1);
            (w, (sep - 1) * id_bits(g.n()).max(1))
        }
    };
    let dist = g.distances_from(&rulers, None);
    let realized_dom = universe.iter().map(|&u| dist[u].unwrap_or(usize::MAX)).max().unwrap_or(0);
    let rs = RulingSet { rulers, sep, dom, realized_dom };
    audit(g, universe, &rs)?;
    Ok((rs, ledger))
}

/// `(sep, dom)`-ruling set for `universe`.
pub fn ruling_set(
    g: &Graph,
    universe: &VertexSet,
    sep: usize,
    method: RulingMethod,
    cfg: &SimConfig,
) -> Result<(RulingSet, RoundLedger)> {
    ruling_set_scoped(g, universe, sep, method, cfg.seed, "ruling-set")
}

fn audit(g: &Graph, universe: &VertexSet, rs: &RulingSet) -> Result<()> {
    if !rs.rulers.is_subset(universe) {
        return Err(Error::Invariant("a ruler lies outside the universe".into()));
    }
    if rs.realized_dom > rs.dom {
        return Err(Error::Invariant(format!(
            "realized domination {} exceeds bound {}",
            rs.realized_dom, rs.dom
        )));
    }
    for &w in &rs.rulers {
        let d = g.distances_from(&VertexSet::from([w]), Some(rs.sep - 1));
        if let Some(&x) = rs.rulers.iter().find(|&&x| x != w && d[x].is_some()) {
            return Err(Error::Invariant(format!("rulers {w} and {x} are closer than {}", rs.sep)));
        }
    }
    Ok(())
}
