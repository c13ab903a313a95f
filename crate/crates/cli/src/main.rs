//! `netdecomp` command line: generate graphs, run one algorithm with validation, verify saved
//! decompositions, or run a whole experiment spec.
//!
//! Exit codes: 0 when everything validates, 1 when a validation or algorithm check fails,
//! 2 for usage and input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use netdecomp::coloring::HPartition;
use netdecomp::decompose::{DiameterMode, NetworkDecomposition};
use netdecomp::harness::{run_algorithm, run_experiment, write_csv, Algorithm, ExperimentSpec, Generator};
use netdecomp::oracle::{validate_decomposition, validate_h_partition, validate_stretch};
use netdecomp::sim::GammaMode;
use netdecomp::{Graph, SimConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "netdecomp", version, about = "Network decompositions in a simulated LOCAL model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Names as they appear in JSON, e.g. `aglp-deterministic`.
fn kebab<T: serde::de::DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|e| e.to_string())
}

#[derive(Args, Clone)]
struct SimArgs {
    #[arg(long, env = "NETDECOMP_SEED", default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 2.0)]
    c_threshold: f64,
    #[arg(long, default_value_t = 4.0)]
    c_degree: f64,
    /// `exact` or `asymptotic` stride accounting.
    #[arg(long, default_value = "exact", value_parser = kebab::<GammaMode>)]
    gamma_mode: GammaMode,
}

impl SimArgs {
    fn config(&self) -> Result<SimConfig> {
        let cfg = SimConfig {
            seed: self.seed,
            c_threshold: self.c_threshold,
            c_degree: self.c_degree,
            gamma_mode: self.gamma_mode,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args)]
struct Input {
    /// Graph in text form: `n m`, then one edge per line.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,
    /// Generator such as `gnp:300:0.03`, `grid:15:15` or `girth6:3`, seeded by `--seed`.
    #[arg(long)]
    gen: Option<String>,
    /// Write the JSON result here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph in text form.
    Generate {
        spec: String,
        #[arg(long, env = "NETDECOMP_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Randomized strong-diameter decomposition into `k` levels.
    Decompose {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: Option<f64>,
        #[command(flatten)]
        input: Input,
    },
    /// Seed-free decomposition built from ruling sets.
    RsDecompose {
        #[arg(long)]
        k: usize,
        /// `aglp-deterministic` or `luby-power`.
        #[arg(long, default_value = "aglp-deterministic", value_parser = kebab::<netdecomp::separated::RulingMethod>)]
        method: netdecomp::separated::RulingMethod,
        #[command(flatten)]
        input: Input,
    },
    /// Decomposition whose equally labeled clusters are at least `sigma` apart.
    SepDecompose {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sigma: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Partition whose `gamma`-balls meet few clusters.
    LowIntersect {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        gamma: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Cluster-wise optimal coloring.
    Color {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Coloring of a triangle-free graph.
    ColorTf {
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        input: Input,
    },
    /// Coloring of a graph with girth above `2k`.
    ColorGirth {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        epsilon: f64,
        #[command(flatten)]
        input: Input,
    },
    /// Dominating set from cluster-wise solutions.
    Mds {
        #[arg(long)]
        k: usize,
        /// `exact` or `greedy`.
        #[arg(long, default_value = "exact", value_parser = kebab::<netdecomp::apps::MdsSolver>)]
        solver: netdecomp::apps::MdsSolver,
        /// `randomized` or `deterministic`.
        #[arg(long, default_value = "randomized", value_parser = kebab::<netdecomp::apps::MdsPipeline>)]
        pipeline: netdecomp::apps::MdsPipeline,
        #[command(flatten)]
        input: Input,
    },
    /// Sparse `t`-spanner from cluster-wise solutions.
    Spanner {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Check a saved decomposition, H-partition or spanner against a graph.
    Verify {
        /// Graph in text form.
        #[arg(long)]
        input: PathBuf,
        /// Decomposition JSON; a full result JSON with a `decomposition` field also works.
        #[arg(long, group = "artifact")]
        decomposition: Option<PathBuf>,
        #[arg(long, group = "artifact")]
        h_partition: Option<PathBuf>,
        /// JSON list of `[u, v]` edges, checked against `--stretch`.
        #[arg(long, group = "artifact", requires = "stretch")]
        spanner: Option<PathBuf>,
        #[arg(long)]
        stretch: Option<usize>,
        /// Override the diameter mode recorded in the decomposition: `strong` or `weak`.
        #[arg(long, value_parser = kebab::<DiameterMode>)]
        mode: Option<DiameterMode>,
    },
    /// Run an experiment description (JSON) and emit CSV and JSON metrics.
    Experiment {
        spec: PathBuf,
        /// Override the CSV path given in the experiment file; without any CSV path the CSV goes to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include full outputs in the JSON file.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn emit(value: &Value, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(input: &Input, seed: u64) -> Result<Graph> {
    match (&input.input, &input.gen) {
        (Some(path), _) => Ok(Graph::from_text(&read(path)?)?),
        (None, Some(spec)) => Ok(spec.parse::<Generator>()?.generate(seed)?),
        (None, None) => unreachable!("clap requires one of --input and --gen"),
    }
}

fn run_one(algorithm: Algorithm, input: &Input) -> Result<bool> {
    let cfg = input.sim.config()?;
    let g = load_graph(input, cfg.seed)?;
    let out = run_algorithm(&g, &algorithm, &cfg)?;
    for f in &out.failures {
        eprintln!("violation: {f}");
    }
    let doc = json!({ "algorithm": algorithm, "seed": cfg.seed, "n": g.n(), "m": g.m(), "outcome": out });
    emit(&doc, input.output.as_deref())?;
    Ok(out.valid)
}

fn verify(
    input: &Path,
    decomposition: Option<&Path>,
    h_partition: Option<&Path>,
    spanner: Option<&Path>,
    stretch: Option<usize>,
    mode: Option<DiameterMode>,
) -> Result<bool> {
    let g = Graph::from_text(&read(input)?)?;
    let report = if let Some(path) = decomposition {
        let mut doc: Value = serde_json::from_str(&read(path)?)?;
        for key in ["outcome", "payload", "decomposition"] {
            if let Some(inner) = doc.get(key) {
                doc = inner.clone();
            }
        }
        let nd: NetworkDecomposition = serde_json::from_value(doc).context("not a decomposition")?;
        serde_json::to_value(validate_decomposition(&g, &nd, mode.unwrap_or(nd.mode)))?
    } else if let Some(path) = h_partition {
        let h: HPartition = serde_json::from_str(&read(path)?).context("not an H-partition")?;
        serde_json::to_value(validate_h_partition(&g, &h))?
    } else if let Some(path) = spanner {
        let edges: Vec<(usize, usize)> = serde_json::from_str(&read(path)?).context("not an edge list")?;
        let (report, worst) = validate_stretch(&g, &edges, stretch.expect("clap requires --stretch"));
        json!({ "passed": report.passed, "violations": report.violations, "maxStretch": worst })
    } else {
        anyhow::bail!(netdecomp::Error::InvalidParameter(
            "pass one of --decomposition, --h-partition or --spanner".into()
        ));
    };
    let passed = report["passed"].as_bool().unwrap_or(false);
    emit(&report, None)?;
    Ok(passed)
}

fn run(cli: Cli) -> Result<bool> {
    let one = |algorithm, input: &Input| run_one(algorithm, input);
    match cli.command {
        Command::Generate { spec, seed, output } => {
            let g = spec.parse::<Generator>()?.generate(seed)?;
            match output {
                Some(path) => std::fs::write(&path, g.to_text()).with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{}", g.to_text()),
            }
            Ok(true)
        }
        Command::Decompose { k, epsilon, input } => one(Algorithm::Decompose { k, epsilon }, &input),
        Command::RsDecompose { k, method, input } => one(Algorithm::RsDecompose { k, method }, &input),
        Command::SepDecompose { k, sigma, input } => one(Algorithm::SepDecompose { k, sigma }, &input),
        Command::LowIntersect { k, gamma, input } => one(Algorithm::LowIntersect { k, gamma }, &input),
        Command::Color { k, input } => one(Algorithm::Color { k }, &input),
        Command::ColorTf { epsilon, input } => one(Algorithm::ColorTf { epsilon }, &input),
        Command::ColorGirth { k, epsilon, input } => one(Algorithm::ColorGirth { k, epsilon }, &input),
        Command::Mds { k, solver, pipeline, input } => one(Algorithm::Mds { k, solver, pipeline }, &input),
        Command::Spanner { t, k, input } => one(Algorithm::Spanner { t, k }, &input),
        Command::Verify { input, decomposition, h_partition, spanner, stretch, mode } => verify(
            &input,
            decomposition.as_deref(),
            h_partition.as_deref(),
            spanner.as_deref(),
            stretch,
            mode,
        ),
        Command::Experiment { spec, csv, json, full, sim } => {
            let mut spec: ExperimentSpec = serde_json::from_str(&read(&spec)?)
                .map_err(|e| netdecomp::Error::InvalidParameter(format!("bad experiment spec: {e}")))?;
            spec.outputs.csv = csv.or(spec.outputs.csv);
            spec.outputs.json = json.or(spec.outputs.json);
            spec.full |= full;
            let records = run_experiment(&spec, &sim.config()?)?;
            if spec.outputs.csv.is_none() {
                write_csv(&records, std::io::stdout())?;
            }
            for r in records.iter().filter(|r| !r.row.valid) {
                eprintln!("seed {} failed: {}", r.row.seed, r.failures.join("; "));
            }
            Ok(records.iter().all(|r| r.row.valid))
        }
    }
}

/// Input and parameter problems are usage errors; anything else means a check failed.
fn exit_code(err: &anyhow::Error) -> u8 {
    use netdecomp::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::Invariant(_) | E::PeelingStalled { .. }) => 1,
        Some(_) => 2,
        None if err.downcast_ref::<std::io::Error>().is_some() || err.downcast_ref::<serde_json::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
