//! Command-line front end.
//!
//! One subcommand per operation; every report is JSON (or summary CSV) with
//! `schema`, `command`, `config`, and `results` fields. All randomness flows
//! from `--seed`; re-running a command with the same arguments reproduces the
//! report body byte for byte (wall time excluded).
//!
//! Exit codes: 0 success, 1 runtime error (structured error in the report),
//! 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ohmnet::electrical::{check_maximum_principle, solve_voltages, DEFAULT_TOLERANCE};
use ohmnet::experiments::{
    self, corpus_pairs, PercConfig,
};
use ohmnet::graph::{read_graph, write_graph, FamilySpec};
use ohmnet::iso::{self, Mode};
use ohmnet::report::{rows_to_csv, ExperimentReport};
use ohmnet::walks;
use ohmnet::Graph;

#[derive(Parser)]
#[command(name = "ohmnet", version, about = "Effective resistance, isoperimetric bounds, and percolation experiments on weighted multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Heuristic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Heuristic => Mode::Heuristic,
        }
    }
}

#[derive(Args)]
struct Source {
    /// Graph family spec, e.g. path:5, circulant:16,1,3,
    /// disjoint_union:complete:4+complete:4
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    family: Option<String>,
    /// Graph file in the "V E / u v m" text format
    #[arg(long)]
    input: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<(Graph, Value), CliError> {
        if let Some(spec_text) = &self.family {
            let spec = FamilySpec::parse(spec_text).map_err(|e| CliError::Usage(e.to_string()))?;
            let g = spec.generate().map_err(|e| CliError::Usage(e.to_string()))?;
            return Ok((g, json!({ "family": spec.to_string() })));
        }
        let path = self.input.as_ref().expect("clap enforces one source");
        let text = std::fs::read_to_string(path).map_err(ohmnet::Error::from)?;
        let g = read_graph(&text)?;
        Ok((g, json!({ "input": path.display().to_string() })))
    }
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (a, b) = text.split_once(',').ok_or("expected two comma-separated vertex ids")?;
    let a = a.trim().parse().map_err(|_| format!("bad vertex id {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad vertex id {b:?}"))?;
    Ok((a, b))
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it in the text format
    Generate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Effective resistance between a pair of vertices
    Resistance {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Full voltage profile of the unit battery problem
    Voltages {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// The isoperimetric bound total L_v with per-band terms
    Lbound {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        vertex: usize,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Minimum boundary size over connected sets in a dyadic band
    Rn {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        vertex: usize,
        /// Band index; all bands when omitted
        #[arg(long)]
        band: Option<u32>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Vertex Cheeger constant
    Cheeger {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[command(flatten)]
        output: Output,
    },
    /// Breadth-first ball profile around a vertex
    Balls {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        vertex: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Continuous-time commute time of a pair, with the resistance identity
    Commute {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Maximal mean commute time over pairs
    TauStar {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = 32)]
        pair_budget: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Monte Carlo hitting time with exponential edge clocks
    Simulate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Check R <= C (L_w + L_u) ratios over vertex pairs
    VerifyTheorem {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Sweep the exact corpus for the empirical bound constant
    ConstantSweep {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Show that lowering the band endpoints by one breaks the bound
    FalsifyBand {
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Fit the pole-to-pole resistance exponent of the layered example
    LayeredScaling {
        #[arg(long, value_delimiter = ',', default_value = "4,8,16,32")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Fit the tau* exponent of the multi-edge cycle counterexample
    MultiedgeScaling {
        #[arg(long, value_delimiter = ',', default_value = "16,32,64,128,256")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = 32)]
        pair_budget: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Sampled maximal resistance on supercritical percolation clusters
    Percolation {
        /// Box sides, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0.7)]
        p: f64,
        #[arg(long, default_value_t = 20)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        pair_budget: u32,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Boundary-to-sqrt-size probe on giant percolation clusters
    PercBoundary {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.7)]
        p: f64,
        #[arg(long, default_value_t = 5)]
        trials: u32,
        #[arg(long)]
        seed: u64,
        /// Minimum set size; defaults to ceil(7 log2 n)
        #[arg(long)]
        size_floor: Option<usize>,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Report-only probe of the transitive isoperimetry conjecture
    Conj1 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Report-only probe of the transitive resistance conjecture
    Conj2 {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = 32)]
        pair_budget: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

enum CliError {
    Usage(String),
    Runtime(ohmnet::Error),
}

impl From<ohmnet::Error> for CliError {
    fn from(e: ohmnet::Error) -> CliError {
        CliError::Runtime(e)
    }
}

fn error_kind(e: &ohmnet::Error) -> &'static str {
    match e {
        ohmnet::Error::Parameter(_) => "parameter",
        ohmnet::Error::Parse { .. } => "parse",
        ohmnet::Error::Disconnected(_, _) => "disconnected",
        ohmnet::Error::NonConvergence { .. } => "non_convergence",
        ohmnet::Error::ExactGate { .. } => "exact_gate",
        ohmnet::Error::Io(_) => "io",
    }
}

/// A finished command: config echo, results, and rows for the CSV summary.
struct Outcome {
    command: &'static str,
    config: Value,
    results: Value,
    rows: Vec<Value>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(cli.command) {
        Ok(RunOutput::Report { outcome, output }) => {
            let wall = started.elapsed().as_secs_f64();
            let report =
                ExperimentReport::new(outcome.command, outcome.config, outcome.results, wall);
            let text = match output.format {
                Format::Json => report.to_json_string(),
                Format::Csv => rows_to_csv(&outcome.rows),
            };
            emit(&output.out, &text)
        }
        Ok(RunOutput::Plain { text, out }) => emit(&out, &text),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            let report = json!({
                "schema": ohmnet::report::SCHEMA_VERSION,
                "error": { "kind": error_kind(&e), "message": e.to_string() },
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("error serializes"));
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
    ExitCode::SUCCESS
}

enum RunOutput {
    Report { outcome: Outcome, output: Output },
    Plain { text: String, out: Option<PathBuf> },
}

fn run(command: Command) -> Result<RunOutput, CliError> {
    match command {
        Command::Generate { source, out } => {
            let (g, _) = source.load()?;
            Ok(RunOutput::Plain { text: write_graph(&g), out })
        }
        Command::Resistance { source, pair, tolerance, output } => {
            let (g, src) = source.load()?;
            let r = ohmnet::electrical::effective_resistance(&g, pair.0, pair.1, tolerance)?;
            let results = json!({ "pair": [pair.0, pair.1], "resistance": r });
            Ok(report(
                "resistance",
                json!({ "source": src, "pair": [pair.0, pair.1], "tolerance": tolerance }),
                results.clone(),
                vec![results],
                output,
            ))
        }
        Command::Voltages { source, pair, tolerance, output } => {
            let (g, src) = source.load()?;
            let profile = solve_voltages(&g, pair.0, pair.1, tolerance)?;
            let principle_ok = check_maximum_principle(&profile, &g, 1e-9).is_none();
            let mut results = serde_json::to_value(&profile).expect("profile serializes");
            results["maximum_principle_ok"] = json!(principle_ok);
            Ok(report(
                "voltages",
                json!({ "source": src, "pair": [pair.0, pair.1], "tolerance": tolerance }),
                results.clone(),
                vec![results],
                output,
            ))
        }
        Command::Lbound { source, vertex, mode, output } => {
            let (g, src) = source.load()?;
            let bound = iso::l_v(&g, vertex, mode.into())?;
            let results = serde_json::to_value(&bound).expect("bound serializes");
            let rows = results["terms"].as_array().cloned().unwrap_or_default();
            Ok(report(
                "lbound",
                json!({ "source": src, "vertex": vertex, "mode": mode_name(mode) }),
                results,
                rows,
                output,
            ))
        }
        Command::Rn { source, vertex, band, mode, output } => {
            let (g, src) = source.load()?;
            let bands: Vec<u32> = match band {
                Some(b) => vec![b],
                None => (1..=iso::band_count(g.vertex_count())).collect(),
            };
            let mut rows = Vec::new();
            for b in bands {
                let r = iso::r_n(&g, vertex, b, mode.into())?;
                rows.push(serde_json::to_value(&r).expect("r_n serializes"));
            }
            Ok(report(
                "rn",
                json!({ "source": src, "vertex": vertex, "band": band, "mode": mode_name(mode) }),
                json!({ "bands": rows }),
                rows,
                output,
            ))
        }
        Command::Cheeger { source, mode, output } => {
            let (g, src) = source.load()?;
            let c = iso::cheeger(&g, mode.into())?;
            let results = serde_json::to_value(&c).expect("cheeger serializes");
            Ok(report(
                "cheeger",
                json!({ "source": src, "mode": mode_name(mode) }),
                results.clone(),
                vec![results],
                output,
            ))
        }
        Command::Balls { source, vertex, output } => {
            let (g, src) = source.load()?;
            let layers = iso::ball_profile(&g, vertex)?;
            let rows: Vec<Value> =
                layers.iter().map(|l| serde_json::to_value(l).expect("layer serializes")).collect();
            Ok(report(
                "balls",
                json!({ "source": src, "vertex": vertex }),
                json!({ "layers": rows }),
                rows,
                output,
            ))
        }
        Command::Commute { source, pair, tolerance, output } => {
            let (g, src) = source.load()?;
            let commute = walks::commute_time(&g, pair.0, pair.1, tolerance)?;
            let resistance = ohmnet::electrical::effective_resistance(&g, pair.0, pair.1, tolerance)?;
            let identity_gap = match (commute.finite(), resistance.finite()) {
                (Some(c), Some(r)) => json!((c - g.vertex_count() as f64 * r).abs()),
                _ => Value::Null,
            };
            let results = json!({
                "pair": [pair.0, pair.1],
                "commute": commute,
                "resistance": resistance,
                "identity_gap": identity_gap,
            });
            Ok(report(
                "commute",
                json!({ "source": src, "pair": [pair.0, pair.1], "tolerance": tolerance }),
                results.clone(),
                vec![results],
                output,
            ))
        }
        Command::TauStar { source, tolerance, pair_budget, seed, output } => {
            let (g, src) = source.load()?;
            let t = walks::tau_star(&g, tolerance, pair_budget, seed)?;
            let results = serde_json::to_value(&t).expect("tau serializes");
            Ok(report(
                "tau-star",
                json!({ "source": src, "tolerance": tolerance, "pair_budget": pair_budget, "seed": seed }),
                results.clone(),
                vec![results],
                output,
            ))
        }
        Command::Simulate { source, pair, seed, trials, tolerance, output } => {
            let (g, src) = source.load()?;
            let sim = walks::simulate_hitting(&g, pair.0, pair.1, seed, trials)?;
            let exact = walks::exact_hitting(&g, pair.1, tolerance)?.values[pair.0];
            let results = json!({
                "pair": [pair.0, pair.1],
                "mean": sim.mean,
                "stderr": sim.std_err,
                "exact": exact,
                "trials": sim.trials,
                "seed": sim.seed,
            });
            Ok(report(
                "simulate",
                json!({ "source": src, "pair": [pair.0, pair.1], "seed": seed, "trials": trials }),
                results.clone(),
                vec![results],
                output,
            ))
        }
        Command::VerifyTheorem { source, mode, seed, tolerance, output } => {
            let (g, src) = source.load()?;
            let pairs = corpus_pairs(&g, seed);
            let r = experiments::verify_theorem(&g, &pairs, mode.into(), tolerance)?;
            let results = serde_json::to_value(&r).expect("report serializes");
            let rows = results["pairs"].as_array().cloned().unwrap_or_default();
            Ok(report(
                "verify-theorem",
                json!({ "source": src, "mode": mode_name(mode), "seed": seed, "tolerance": tolerance }),
                results,
                rows,
                output,
            ))
        }
        Command::ConstantSweep { seed, tolerance, output } => {
            let r = experiments::constant_sweep(seed, tolerance)?;
            let results = serde_json::to_value(&r).expect("sweep serializes");
            let rows = results["families"].as_array().cloned().unwrap_or_default();
            Ok(report(
                "constant-sweep",
                json!({ "seed": seed, "tolerance": tolerance }),
                results,
                rows,
                output,
            ))
        }
        Command::FalsifyBand { tolerance, output } => {
            let r = experiments::falsify_modified_band(tolerance)?;
            let results = serde_json::to_value(&r).expect("falsify serializes");
            let rows = results["cases"].as_array().cloned().unwrap_or_default();
            Ok(report("falsify-band", json!({ "tolerance": tolerance }), results, rows, output))
        }
        Command::LayeredScaling { n_list, tolerance, output } => {
            let r = experiments::layered_scaling(&n_list, tolerance)?;
            let results = serde_json::to_value(&r).expect("layered serializes");
            let rows = results["points"].as_array().cloned().unwrap_or_default();
            Ok(report(
                "layered-scaling",
                json!({ "n_list": n_list, "tolerance": tolerance }),
                results,
                rows,
                output,
            ))
        }
        Command::MultiedgeScaling { n_list, tolerance, pair_budget, seed, output } => {
            let r = experiments::multi_edge_tau_scaling(&n_list, tolerance, pair_budget, seed)?;
            let results = serde_json::to_value(&r).expect("scaling serializes");
            let rows = results["points"].as_array().cloned().unwrap_or_default();
            Ok(report(
                "multiedge-scaling",
                json!({ "n_list": n_list, "tolerance": tolerance, "pair_budget": pair_budget, "seed": seed }),
                results,
                rows,
                output,
            ))
        }
        Command::Percolation { n, p, trials, seed, pair_budget, tolerance, output } => {
            if n.is_empty() {
                return Err(CliError::Usage("--n needs at least one box side".into()));
            }
            let configs: Vec<PercConfig> =
                n.iter().map(|&n| PercConfig { n, p, seed, trials, pair_budget }).collect();
            let r = experiments::percolation_resistance(&configs, tolerance)?;
            let results = serde_json::to_value(&r).expect("percolation serializes");
            let mut rows = Vec::new();
            for size in &r.sizes {
                for t in &size.trials {
                    let mut row = serde_json::to_value(t).expect("trial serializes");
                    row["n"] = json!(size.config.n);
                    rows.push(row);
                }
            }
            Ok(report(
                "percolation",
                json!({ "n": n, "p": p, "trials": trials, "seed": seed, "pair_budget": pair_budget, "tolerance": tolerance }),
                results,
                rows,
                output,
            ))
        }
        Command::PercBoundary { n, p, trials, seed, size_floor, tolerance, output } => {
            let floor = size_floor.unwrap_or_else(|| (7.0 * (n.max(2) as f64).log2()).ceil() as usize);
            let cfg = PercConfig { n, p, seed, trials, pair_budget: 0 };
            let r = experiments::percolation_boundary_probe(&cfg, floor, tolerance)?;
            let results = serde_json::to_value(&r).expect("probe serializes");
            let rows = results["trials"].as_array().cloned().unwrap_or_default();
            Ok(report(
                "perc-boundary",
                json!({ "n": n, "p": p, "trials": trials, "seed": seed, "size_floor": floor }),
                results,
                rows,
                output,
            ))
        }
        Command::Conj1 { source, output } => {
            let (g, src) = source.load()?;
            let r = experiments::conjecture1_probe(&g)?;
            let results = serde_json::to_value(&r).expect("probe serializes");
            Ok(report("conj1", json!({ "source": src }), results.clone(), vec![results], output))
        }
        Command::Conj2 { source, tolerance, pair_budget, seed, output } => {
            let (g, src) = source.load()?;
            let r = experiments::conjecture2_probe(&g, tolerance, pair_budget, seed)?;
            let results = serde_json::to_value(&r).expect("probe serializes");
            Ok(report(
                "conj2",
                json!({ "source": src, "tolerance": tolerance, "pair_budget": pair_budget, "seed": seed }),
                results.clone(),
                vec![results],
                output,
            ))
        }
    }
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Exact => "exact",
        ModeArg::Heuristic => "heuristic",
    }
}

fn report(
    command: &'static str,
    config: Value,
    results: Value,
    rows: Vec<Value>,
    output: Output,
) -> RunOutput {
    RunOutput::Report { outcome: Outcome { command, config, results, rows }, output }
}
