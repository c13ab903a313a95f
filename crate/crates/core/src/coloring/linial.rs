use serde::{Deserialize, Serialize};

use super::{Coloring, HPartition, UnionFreeFamily};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::RoundLedger;

/// Fixpoint palette bound: Linial iteration to a fixpoint ends with at most `C_LIN * delta^2` colors.
/// The worst case over `delta >= 1` is `delta = 1`, which stops at `3^2 = 9`.
pub const C_LIN: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinialRounds {
    /// Exactly this many reductions.
    Fixed(usize),
    /// Reduce while the palette strictly shrinks.
    UntilFixpoint,
}

fn reduce_with<'a>(
    n: usize,
    phi: &Coloring,
    family: &UnionFreeFamily,
    relevant: impl Fn(usize) -> &'a [usize],
) -> Result<Coloring> {
    if phi.len() != n {
        return Err(Error::Precondition(format!("coloring covers {} of {n} vertices", phi.len())));
    }
    if family.p < phi.palette() {
        return Err(Error::Precondition(format!(
            "family has {} sets but the palette has {} colors",
            family.p,
            phi.palette()
        )));
    }
    let mut colors = Vec::with_capacity(n);
    for v in 1..=n {
        let others = relevant(v);
        if others.len() > family.delta {
            return Err(Error::Precondition(format!(
                "vertex {v} has {} relevant neighbors, family tolerates {}",
                others.len(),
                family.delta
            )));
        }
        if let Some(&u) = others.iter().find(|&&u| phi.color(u) == phi.color(v)) {
            return Err(Error::Precondition(format!("input coloring is improper on {u}-{v}")));
        }
        let own = family.coefficients(phi.color(v));
        let theirs: Vec<Vec<usize>> = others.iter().map(|&u| family.coefficients(phi.color(u))).collect();
        let x = (0..family.q)
            .find(|&x| {
                let fx = family.eval(&own, x);
                theirs.iter().all(|c| family.eval(c, x) != fx)
            })
            .ok_or_else(|| Error::Invariant(format!("vertex {v} found no free point")))?;
        colors.push(family.element(x, family.eval(&own, x)));
    }
    Coloring::new(colors, family.ground_size)
}

/// One reduction step: `v` takes the smallest element of its set not covered by its neighbors' sets.
pub fn linial_reduce(g: &Graph, phi: &Coloring, family: &UnionFreeFamily) -> Result<Coloring> {
    reduce_with(g.n(), phi, family, |v| g.neighbors(v))
}

/// Reduction step that only avoids the sets of each vertex's parents.
pub fn linial_reduce_oriented(
    g: &Graph,
    phi: &Coloring,
    parents: &[Vec<usize>],
    family: &UnionFreeFamily,
) -> Result<Coloring> {
    if parents.len() != g.n() + 1 {
        return Err(Error::Precondition("parent lists must be indexed by vertex".into()));
    }
    reduce_with(g.n(), phi, family, |v| &parents[v])
}

fn iterate<'a>(
    n: usize,
    delta: usize,
    rounds: LinialRounds,
    relevant: impl Fn(usize) -> &'a [usize] + Copy,
) -> Result<(Coloring, RoundLedger)> {
    let mut ledger = RoundLedger::new();
    if delta == 0 {
        return Ok((Coloring::new(vec![1; n], 1)?, ledger));
    }
    let mut phi = Coloring::identity(n);
    let mut done = 0;
    loop {
        let family = UnionFreeFamily::new(phi.palette().max(delta + 1), delta)?;
        let stop = match rounds {
            LinialRounds::Fixed(t) => done >= t,
            LinialRounds::UntilFixpoint => family.ground_size >= phi.palette(),
        };
        if stop {
            break;
        }
        phi = reduce_with(n, &phi, &family, relevant)?;
        ledger.charge("linial", 1, 1);
        done += 1;
    }
    Ok((phi, ledger))
}

/// Linial coloring from the identity coloring, with the union-free family sized for the
/// maximum degree at every step.
pub fn linial_color(g: &Graph, rounds: LinialRounds) -> Result<(Coloring, RoundLedger)> {
    iterate(g.n(), g.max_degree(), rounds, |v| g.neighbors(v))
}

/// Parents of each vertex: neighbors in a later band, or in the same band with a larger ID.
/// Indexed by vertex; slot 0 is empty.
pub fn orientation(g: &Graph, h: &HPartition) -> Vec<Vec<usize>> {
    let band = h.band_index(g.n());
    let mut parents = vec![Vec::new(); g.n() + 1];
    for v in g.vertices() {
        parents[v] = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| band[u] > band[v] || (band[u] == band[v] && u > v))
            .collect();
    }
    parents
}

/// Linial coloring where each vertex only avoids its parents. Since every edge has exactly one
/// parent endpoint, the result is proper; the family tolerates the largest parent count.
pub fn arb_linial_color(
    g: &Graph,
    h: &HPartition,
    rounds: LinialRounds,
) -> Result<(Coloring, RoundLedger)> {
    h.check(g)?;
    let parents = orientation(g, h);
    let delta = parents.iter().map(Vec::len).max().unwrap_or(0);
    iterate(g.n(), delta, rounds, |v| &parents[v])
}
