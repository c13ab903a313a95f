use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::rng_for;

/// Graph family with its size parameters. Text form: `gnp:N:P`, `cycle:N`, `path:N`, `star:N`,
/// `grid:W:H`, `girth6:Q`, `random-tree:N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Generator {
    Gnp { n: usize, p: f64 },
    Cycle { n: usize },
    Path { n: usize },
    Star { n: usize },
    Grid { w: usize, h: usize },
    Girth6 { q: usize },
    RandomTree { n: usize },
}

impl Generator {
    /// Checks the parameters without building the graph.
    pub fn validate(&self) -> Result<()> {
        match *self {
            Generator::Gnp { p, .. } if !(0.0..=1.0).contains(&p) => {
                Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")))
            }
            Generator::Cycle { n } if n < 3 => {
                Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")))
            }
            Generator::Girth6 { q } if !is_prime(q) => {
                Err(Error::InvalidParameter(format!("girth6 needs a prime field size, got {q}")))
            }
            _ => Ok(()),
        }
    }

    /// Deterministic in `seed`; families without randomness ignore it.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        match *self {
            Generator::Gnp { n, p } => gnp(n, p, seed),
            Generator::Cycle { n } => cycle(n),
            Generator::Path { n } => Ok(path(n)),
            Generator::Star { n } => Ok(star(n)),
            Generator::Grid { w, h } => Ok(grid(w, h)),
            Generator::Girth6 { q } => girth6(q),
            Generator::RandomTree { n } => Ok(random_tree(n, seed)),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Gnp { n, p } => write!(f, "gnp:{n}:{p}"),
            Generator::Cycle { n } => write!(f, "cycle:{n}"),
            Generator::Path { n } => write!(f, "path:{n}"),
            Generator::Star { n } => write!(f, "star:{n}"),
            Generator::Grid { w, h } => write!(f, "grid:{w}:{h}"),
            Generator::Girth6 { q } => write!(f, "girth6:{q}"),
            Generator::RandomTree { n } => write!(f, "random-tree:{n}"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unrecognized generator {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let int = |i: usize| parts.get(i).and_then(|x| x.parse::<usize>().ok()).ok_or_else(bad);
        let g = match (parts[0], parts.len()) {
            ("gnp", 3) => Generator::Gnp { n: int(1)?, p: parts[2].parse().map_err(|_| bad())? },
            ("cycle", 2) => Generator::Cycle { n: int(1)? },
            ("path", 2) => Generator::Path { n: int(1)? },
            ("star", 2) => Generator::Star { n: int(1)? },
            ("grid", 3) => Generator::Grid { w: int(1)?, h: int(2)? },
            ("girth6", 2) => Generator::Girth6 { q: int(1)? },
            ("random-tree", 2) => Generator::RandomTree { n: int(1)? },
            _ => return Err(bad()),
        };
        Ok(g)
    }
}

impl TryFrom<String> for Generator {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Generator> for String {
    fn from(g: Generator) -> Self {
        g.to_string()
    }
}

/// Erdős–Rényi graph. Row `u` draws its edges to `u+1..=n` from its own stream, jumping
/// over non-edges with geometric gaps so the cost is `O(n + m)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    if p == 0.0 {
        return Graph::new(n, edges);
    }
    let log_miss = (1.0 - p).ln();
    for u in 1..=n {
        let mut rng = rng_for(seed, "gnp", u as u64, 0);
        let mut v = u;
        loop {
            // Number of non-edges before the next edge; zero when p = 1.
            let gap = if p == 1.0 { 0.0 } else { ((1.0 - rng.gen::<f64>()).ln() / log_miss).floor() };
            if gap >= (n - v) as f64 {
                break;
            }
            v += gap as usize + 1;
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    Graph::new(n, (1..=n).map(|i| (i, i % n + 1)))
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i, i + 1))).expect("path edges are valid")
}

/// Vertex 1 joined to `2..=n`.
pub fn star(n: usize) -> Graph {
    Graph::new(n, (2..=n).map(|v| (1, v))).expect("star edges are valid")
}

/// `w x h` grid; vertex `(x, y)` has ID `y * w + x + 1`.
pub fn grid(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x + 1;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::new(w * h, edges).expect("grid edges are valid")
}

/// Point-line incidence graph of the projective plane over `F_q`, `q` prime: `(q + 1)`-regular,
/// girth 6, with `2 (q^2 + q + 1)` vertices. Points come first, then lines.
pub fn girth6(q: usize) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!("girth6 needs a prime field size, got {q}")));
    }
    let mut reps: Vec<[usize; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            reps.push([1, a, b]);
        }
    }
    for b in 0..q {
        reps.push([0, 1, b]);
    }
    reps.push([0, 0, 1]);
    let count = reps.len();
    let mut edges = Vec::new();
    for (i, p) in reps.iter().enumerate() {
        for (j, l) in reps.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                edges.push((i + 1, count + j + 1));
            }
        }
    }
    Graph::new(2 * count, edges)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Random recursive tree: vertex `v >= 2` hangs off a uniform earlier vertex.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let edges = (2..=n).map(|v| (rng_for(seed, "random-tree", v as u64, 0).gen_range(1..v), v));
    Graph::new(n, edges).expect("tree edges are valid")
}
