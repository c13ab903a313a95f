//! Vertex colorings and the coloring kernels used inside the decompositions.

mod hpartition;
mod linial;
mod random;
mod union_free;

pub use hpartition::{peel_h_partition, HPartition};
pub use linial::{
    arb_linial_color, linial_color, linial_reduce, linial_reduce_oriented, orientation, LinialRounds,
    C_LIN,
};
pub use random::{h_partition_random_color, random_color, random_palette};
pub(crate) use random::random_color_with;
pub use union_free::{UnionFreeFamily, C_UF};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Assignment of a color in `1..=palette` to every vertex `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ColoringRepr", try_from = "ColoringRepr")]
pub struct Coloring {
    colors: Vec<usize>,
    palette: usize,
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    palette: usize,
    colors: Vec<(usize, usize)>,
}

impl From<Coloring> for ColoringRepr {
    fn from(c: Coloring) -> Self {
        Self { palette: c.palette, colors: c.iter().collect() }
    }
}

impl TryFrom<ColoringRepr> for Coloring {
    type Error = Error;

    fn try_from(r: ColoringRepr) -> Result<Self> {
        let mut colors = vec![0; r.colors.len()];
        for (v, c) in r.colors {
            if v == 0 || v > colors.len() || colors[v - 1] != 0 {
                return Err(Error::InvalidParameter(format!("bad or repeated vertex {v} in coloring")));
            }
            colors[v - 1] = c;
        }
        Coloring::new(colors, r.palette)
    }
}

impl Coloring {
    /// `colors[v - 1]` is the color of vertex `v`.
    pub fn new(colors: Vec<usize>, palette: usize) -> Result<Self> {
        if let Some((i, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > palette) {
            return Err(Error::InvalidParameter(format!(
                "vertex {} has color {c} outside 1..={palette}",
                i + 1
            )));
        }
        Ok(Self { colors, palette })
    }

    /// Each vertex colored by its own ID.
    pub fn identity(n: usize) -> Self {
        Self { colors: (1..=n).collect(), palette: n.max(1) }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v - 1]
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.colors.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }

    /// Edges whose endpoints share a color.
    pub fn conflicts(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges().filter(|&(u, v)| self.color(u) == self.color(v)).collect()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && self.conflicts(g).is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_and_round_trip() {
        let c = Coloring::new(vec![2, 1, 2], 3).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(json, r#"{"palette":3,"colors":[[1,2],[2,1],[3,2]]}"#);
        assert_eq!(serde_json::from_str::<Coloring>(&json).unwrap(), c);
        assert!(Coloring::new(vec![4], 3).is_err());
    }

    #[test]
    fn properness() {
        let g = Graph::new(3, [(1, 2), (2, 3)]).unwrap();
        assert!(Coloring::new(vec![1, 2, 1], 2).unwrap().is_proper(&g));
        assert_eq!(Coloring::new(vec![1, 1, 2], 2).unwrap().conflicts(&g), vec![(1, 2)]);
    }
}
