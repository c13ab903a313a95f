use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::Generator;
use crate::apps::{approx_mds, approx_min_coloring, approx_t_spanner, color_high_girth, color_triangle_free, MdsPipeline, MdsSolver};
use crate::coloring::LinialRounds;
use crate::decompose::{decompose, DecomposeParams, NetworkDecomposition, RelabelScheme};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{brute_chromatic, brute_mds, brute_min_t_spanner, validate_decomposition, validate_stretch, CHROMATIC_CAP, MDS_CAP, SPANNER_EDGE_CAP};
use crate::separated::{low_intersecting, rs_decompose, sep_decompose, RulingMethod};
use crate::sim::{RoundLedger, SimConfig};

fn default_ruling() -> RulingMethod {
    RulingMethod::AglpDeterministic
}

fn default_solver() -> MdsSolver {
    MdsSolver::Exact
}

fn default_pipeline() -> MdsPipeline {
    MdsPipeline::Randomized
}

/// Algorithm and its parameters, tagged by `name` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Algorithm {
    Decompose {
        k: usize,
        /// Defaults to `1/k`.
        #[serde(default)]
        epsilon: Option<f64>,
    },
    RsDecompose {
        k: usize,
        #[serde(default = "default_ruling")]
        method: RulingMethod,
    },
    SepDecompose { k: usize, sigma: usize },
    LowIntersect { k: usize, gamma: usize },
    Color { k: usize },
    ColorTf { epsilon: f64 },
    ColorGirth { k: usize, epsilon: f64 },
    Mds {
        k: usize,
        #[serde(default = "default_solver")]
        solver: MdsSolver,
        #[serde(default = "default_pipeline")]
        pipeline: MdsPipeline,
    },
    Spanner { t: usize, k: usize },
}

impl Algorithm {
    pub fn label(&self) -> &'static str {
        match self {
            Algorithm::Decompose { .. } => "decompose",
            Algorithm::RsDecompose { .. } => "rs-decompose",
            Algorithm::SepDecompose { .. } => "sep-decompose",
            Algorithm::LowIntersect { .. } => "low-intersect",
            Algorithm::Color { .. } => "color",
            Algorithm::ColorTf { .. } => "color-tf",
            Algorithm::ColorGirth { .. } => "color-girth",
            Algorithm::Mds { .. } => "mds",
            Algorithm::Spanner { .. } => "spanner",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let k = match *self {
            Algorithm::Decompose { k, .. }
            | Algorithm::RsDecompose { k, .. }
            | Algorithm::SepDecompose { k, .. }
            | Algorithm::LowIntersect { k, .. }
            | Algorithm::Color { k }
            | Algorithm::ColorGirth { k, .. }
            | Algorithm::Mds { k, .. }
            | Algorithm::Spanner { k, .. } => Some(k),
            Algorithm::ColorTf { .. } => None,
        };
        if k == Some(0) {
            return bad("k must be at least 1".into());
        }
        if let Some(eps) = self.epsilon() {
            if !(eps > 0.0 && eps <= 1.0) {
                return bad(format!("epsilon must lie in (0, 1], got {eps}"));
            }
        }
        match *self {
            Algorithm::SepDecompose { sigma, .. } if sigma < 2 => bad(format!("sigma must be at least 2, got {sigma}")),
            Algorithm::LowIntersect { gamma: 0, .. } => bad("gamma must be at least 1".into()),
            Algorithm::Spanner { t, .. } if t < 2 => bad(format!("stretch must be at least 2, got {t}")),
            _ => Ok(()),
        }
    }

    fn k(&self) -> Option<usize> {
        match *self {
            Algorithm::ColorTf { .. } => None,
            Algorithm::Decompose { k, .. }
            | Algorithm::RsDecompose { k, .. }
            | Algorithm::SepDecompose { k, .. }
            | Algorithm::LowIntersect { k, .. }
            | Algorithm::Color { k }
            | Algorithm::ColorGirth { k, .. }
            | Algorithm::Mds { k, .. }
            | Algorithm::Spanner { k, .. } => Some(k),
        }
    }

    fn epsilon(&self) -> Option<f64> {
        match *self {
            Algorithm::Decompose { k, epsilon } => Some(epsilon.unwrap_or(1.0 / k.max(1) as f64)),
            Algorithm::ColorTf { epsilon } | Algorithm::ColorGirth { epsilon, .. } => Some(epsilon),
            _ => None,
        }
    }
}

/// Result of one validated run. `payload` carries the full output as JSON.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Outcome {
    pub sigma: Option<usize>,
    pub label_count: usize,
    pub max_cluster_diam: Option<usize>,
    pub rounds: u64,
    pub valid: bool,
    /// Checks that failed, by rule name.
    pub failures: Vec<String>,
    pub oracle_optimum: Option<usize>,
    pub ratio_vs_oracle: Option<f64>,
    pub payload: Value,
}

fn decomposition_outcome(g: &Graph, nd: &NetworkDecomposition, ledger: &RoundLedger, extra: Value) -> Result<Outcome> {
    let report = validate_decomposition(g, nd, nd.mode);
    Ok(Outcome {
        sigma: Some(nd.cert.sigma),
        label_count: nd.label_count(),
        max_cluster_diam: nd.max_strong_diameter(g)?,
        rounds: ledger.total(),
        valid: report.passed,
        failures: report.violations.iter().map(|v| format!("{}: {}", v.rule, v.witness)).collect(),
        oracle_optimum: None,
        ratio_vs_oracle: None,
        payload: json!({ "decomposition": nd, "ledger": ledger, "extra": extra }),
    })
}

/// Runs `algorithm` on `g` and checks its output: decompositions against the validator,
/// colorings for properness and palette, dominating sets for domination, spanners for stretch.
/// Small inputs are also compared against the exhaustive oracles.
pub fn run_algorithm(g: &Graph, algorithm: &Algorithm, cfg: &SimConfig) -> Result<Outcome> {
    algorithm.validate()?;
    let fixpoint = RelabelScheme::ArbLinial(LinialRounds::UntilFixpoint);
    match *algorithm {
        Algorithm::Decompose { k, .. } => {
            let mut params = DecomposeParams::new(k);
            params.epsilon = algorithm.epsilon().expect("decompose has epsilon");
            let (nd, trace, ledger) = decompose(g, &params, cfg)?;
            decomposition_outcome(g, &nd, &ledger, json!({ "trace": trace }))
        }
        Algorithm::RsDecompose { k, method } => {
            let (nd, trace, ledger) = rs_decompose(g, k, method, cfg)?;
            decomposition_outcome(g, &nd, &ledger, json!({ "trace": trace }))
        }
        Algorithm::SepDecompose { k, sigma } => {
            let (nd, trace, ledger) = sep_decompose(g, k, sigma, fixpoint, cfg)?;
            decomposition_outcome(g, &nd, &ledger, json!({ "trace": trace }))
        }
        Algorithm::LowIntersect { k, gamma } => {
            let (li, ledger) = low_intersecting(g, k, gamma, fixpoint, cfg)?;
            let worst = li.max_ball_intersections(g);
            let mut out = decomposition_outcome(
                g,
                &li.decomposition,
                &ledger,
                json!({ "alpha": li.alpha, "beta": li.beta, "gamma": li.gamma, "maxBallIntersections": worst }),
            )?;
            if worst > li.beta {
                out.valid = false;
                out.failures.push(format!("ball: a {gamma}-ball meets {worst} clusters, above {}", li.beta));
            }
            Ok(out)
        }
        Algorithm::Color { k } => {
            let mut r = approx_min_coloring(g, k, cfg)?;
            let mut failures = Vec::new();
            if !r.value.is_proper(g) {
                failures.push("proper: coloring has a monochromatic edge".to_string());
            }
            let mut ratio = None;
            if g.n() <= CHROMATIC_CAP {
                let (chi, _) = brute_chromatic(g)?;
                r.oracle_optimum = Some(chi);
                ratio = Some(r.size as f64 / chi.max(1) as f64);
                if r.size > r.label_count * chi {
                    failures.push(format!("ratio: {} colors exceed {} labels times optimum {chi}", r.size, r.label_count));
                }
            }
            app_outcome(g, r.label_count, &r.decomposition, &r.ledger, failures, r.oracle_optimum, ratio, json!(r))
        }
        Algorithm::ColorTf { epsilon } | Algorithm::ColorGirth { epsilon, .. } => {
            let r = match *algorithm {
                Algorithm::ColorTf { .. } => color_triangle_free(g, epsilon, cfg)?,
                Algorithm::ColorGirth { k, .. } => color_high_girth(g, k, epsilon, cfg)?,
                _ => unreachable!("matched above"),
            };
            let mut failures = Vec::new();
            if !r.value.is_proper(g) {
                failures.push("proper: coloring has a monochromatic edge".to_string());
            }
            if r.value.palette() as f64 > r.bound {
                failures.push(format!("palette: {} exceeds {}", r.value.palette(), r.bound));
            }
            app_outcome(g, r.label_count, &r.decomposition, &r.ledger, failures, None, None, json!(r))
        }
        Algorithm::Mds { k, solver, pipeline } => {
            let mut r = approx_mds(g, k, solver, pipeline, cfg)?;
            let mut failures = Vec::new();
            if g.closed_neighborhood_of(&r.value).len() != g.n() {
                failures.push("dominating: some vertex is undominated".to_string());
            }
            let mut ratio = None;
            if g.n() <= MDS_CAP {
                let (opt, _) = brute_mds(g)?;
                r.oracle_optimum = Some(opt);
                ratio = Some(r.size as f64 / opt.max(1) as f64);
                if r.size as f64 > r.bound * opt as f64 + 1e-9 {
                    failures.push(format!("ratio: size {} exceeds {} times optimum {opt}", r.size, r.bound));
                }
            }
            app_outcome(g, r.label_count, &r.decomposition, &r.ledger, failures, r.oracle_optimum, ratio, json!(r))
        }
        Algorithm::Spanner { t, k } => {
            let mut r = approx_t_spanner(g, t, k, cfg)?;
            let (report, _) = validate_stretch(g, &r.value.edges, t);
            let mut failures: Vec<String> =
                report.violations.iter().map(|v| format!("{}: {}", v.rule, v.witness)).collect();
            let mut ratio = None;
            if g.m() <= SPANNER_EDGE_CAP {
                let (opt, _) = brute_min_t_spanner(g, t)?;
                r.oracle_optimum = Some(opt);
                ratio = Some(r.size as f64 / opt.max(1) as f64);
                if r.value.intra_edges > r.label_count * opt {
                    failures.push(format!(
                        "ratio: {} cluster edges exceed {} labels times optimum {opt}",
                        r.value.intra_edges, r.label_count
                    ));
                }
            }
            app_outcome(g, r.label_count, &r.decomposition, &r.ledger, failures, r.oracle_optimum, ratio, json!(r))
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn app_outcome(
    g: &Graph,
    label_count: usize,
    nd: &NetworkDecomposition,
    ledger: &RoundLedger,
    failures: Vec<String>,
    oracle_optimum: Option<usize>,
    ratio_vs_oracle: Option<f64>,
    payload: Value,
) -> Result<Outcome> {
    Ok(Outcome {
        sigma: Some(nd.cert.sigma),
        label_count,
        max_cluster_diam: nd.max_strong_diameter(g)?,
        rounds: ledger.total(),
        valid: failures.is_empty(),
        failures,
        oracle_optimum,
        ratio_vs_oracle,
        payload,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Outputs {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub generator: Generator,
    pub algorithm: Algorithm,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub outputs: Outputs,
    /// Include full outputs in the JSON file.
    #[serde(default)]
    pub full: bool,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty() {
            return Err(Error::InvalidParameter("an experiment needs at least one seed".into()));
        }
        self.generator.validate()?;
        self.algorithm.validate()
    }
}

/// One CSV row. Column order is the field order; `wallTime` is kept out so reruns are
/// byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MetricsRow {
    pub generator: String,
    pub seed: u64,
    pub algorithm: String,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub epsilon: Option<f64>,
    pub sigma: Option<usize>,
    pub label_count: usize,
    pub max_cluster_diam: Option<usize>,
    pub rounds: u64,
    pub ratio_vs_oracle: Option<f64>,
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunRecord {
    #[serde(flatten)]
    pub row: MetricsRow,
    pub failures: Vec<String>,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
}

/// Runs every seed, sorted by seed, after validating the whole spec. Output files named in
/// `spec.outputs` are written.
pub fn run_experiment(spec: &ExperimentSpec, base: &SimConfig) -> Result<Vec<RunRecord>> {
    spec.validate()?;
    let mut seeds = spec.seeds.clone();
    seeds.sort_unstable();
    let mut records = Vec::with_capacity(seeds.len());
    for seed in seeds {
        let cfg = SimConfig { seed, ..*base };
        let g = spec.generator.generate(seed)?;
        let start = Instant::now();
        let out = run_algorithm(&g, &spec.algorithm, &cfg)?;
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        records.push(RunRecord {
            row: MetricsRow {
                generator: spec.generator.to_string(),
                seed,
                algorithm: spec.algorithm.label().to_string(),
                n: g.n(),
                m: g.m(),
                k: spec.algorithm.k(),
                epsilon: spec.algorithm.epsilon(),
                sigma: out.sigma,
                label_count: out.label_count,
                max_cluster_diam: out.max_cluster_diam,
                rounds: out.rounds,
                ratio_vs_oracle: out.ratio_vs_oracle,
                valid: out.valid,
            },
            failures: out.failures,
            wall_time_ms,
            payload: spec.full.then_some(out.payload),
        });
    }
    if let Some(path) = &spec.outputs.csv {
        write_csv(&records, std::fs::File::create(path).map_err(io_error)?)?;
    }
    if let Some(path) = &spec.outputs.json {
        let doc = json!({ "spec": spec, "runs": records });
        let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Invariant(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(io_error)?;
    }
    Ok(records)
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("cannot write output: {e}"))
}

pub fn write_csv<W: Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(&r.row).map_err(|e| Error::Invariant(e.to_string()))?;
    }
    w.flush().map_err(io_error)
}
