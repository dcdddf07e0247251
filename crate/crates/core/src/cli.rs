//! Command-line front end. [`run`] renders a complete report as a string so
//! that nothing is printed unless every step succeeded.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::aggregation::{
    exact_max_aggregation_capped, exact_min_aggregation, huffman_max_aggregation,
    AggregationResult, Guarantee, Partition, DEFAULT_EXACT_CAP,
};
use crate::coupling::{
    approx_best_approximation, divergence_for_partition, min_entropy_coupling_exact_capped,
    Coupling, DivergenceReport, DEFAULT_COUPLING_CAP,
};
use crate::dist::{alpha, Dist};
use crate::error::Error;
use crate::ratio::{prior_bound_epsilon, ratio_bound, z_rho};
use crate::reduction::{bound_report, r_operator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Shannon entropy of the input distribution.
    Entropy,
    /// Entropy bracket H(Q_m) <= H(f(X)) <= H(R_m) over all m-aggregations.
    Bounds,
    /// Huffman aggregation within alpha of the maximum entropy.
    ReduceMax,
    /// Minimum-entropy aggregation.
    ReduceMin,
    /// Exhaustive maximum-entropy aggregation (refuses n > exact cap).
    ReduceExact,
    /// Entropy lower bound for n points with p_1/p_n <= rho.
    RatioBound,
    /// The extremal majorant z_rho(p).
    Zrho,
    /// Coupling divergence D(p, q).
    Distance,
    /// Approximate best m-point approximation under D.
    Approx,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "entagg",
    version,
    about = "Entropy-controlled aggregation of discrete distributions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunOptions,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RunOptions {
    /// Distribution file: JSON {"p": [...]} or one-column CSV.
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,
    /// Target alphabet size.
    #[arg(short, long, global = true)]
    pub m: Option<usize>,
    /// Ratio bound p_1/p_n.
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    /// Support size (ratio-bound without input; size of random instances).
    #[arg(short, long, global = true)]
    pub n: Option<usize>,
    /// Largest n the exhaustive solvers accept.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    #[arg(short, long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Seed for a random input instance when no --input is given.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Second distribution for `distance`.
    #[arg(long, global = true)]
    pub q: Option<PathBuf>,
    /// Partition file {"blocks": [[...], ...]} for `distance`.
    #[arg(long, global = true)]
    pub partition: Option<PathBuf>,
}

/// One fully resolved invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: Option<PathBuf>,
    pub m: Option<usize>,
    pub rho: Option<f64>,
    pub n: Option<usize>,
    pub exact_cap: usize,
    pub output: OutputFormat,
    pub seed: Option<u64>,
    pub q_path: Option<PathBuf>,
    pub partition_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input_path: None,
            m: None,
            rho: None,
            n: None,
            exact_cap: DEFAULT_EXACT_CAP,
            output: OutputFormat::Json,
            seed: None,
            q_path: None,
            partition_path: None,
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        let o = cli.config;
        RunConfig {
            command: cli.command,
            input_path: o.input,
            m: o.m,
            rho: o.rho,
            n: o.n,
            exact_cap: o.exact_cap,
            output: o.output,
            seed: o.seed,
            q_path: o.q,
            partition_path: o.partition,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(#[from] Error),
    #[error("BadInput: {0}")]
    Input(String),
    #[error("Internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Deserialize)]
struct DistFile {
    p: Vec<f64>,
}

/// Parses a distribution from JSON `{"p": [...]}` or a one-column CSV (an
/// optional non-numeric header line is skipped).
pub fn parse_distribution(text: &str) -> CliResult<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let f: DistFile =
            serde_json::from_str(trimmed).map_err(|e| CliError::Input(format!("JSON: {e}")))?;
        return Ok(f.p);
    }
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let cell = line.split(',').next().unwrap_or("").trim();
        if cell.is_empty() {
            continue;
        }
        match cell.parse::<f64>() {
            Ok(x) => out.push(x),
            Err(_) if lineno == 0 => continue,
            Err(_) => {
                return Err(CliError::Input(format!(
                    "CSV line {}: not a number: {cell:?}",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_dist(path: &Path) -> CliResult<Dist> {
    Ok(Dist::new(&parse_distribution(&read(path)?)?)?)
}

fn random_dist(seed: u64, n: usize) -> CliResult<Dist> {
    if n == 0 {
        return Err(Error::Empty.into());
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
    let s: f64 = w.iter().sum();
    Ok(Dist::new(&w.iter().map(|x| x / s).collect::<Vec<_>>())?)
}

fn input_dist(cfg: &RunConfig) -> CliResult<Dist> {
    match (&cfg.input_path, cfg.seed) {
        (Some(path), _) => load_dist(path),
        (None, Some(seed)) => random_dist(seed, cfg.n.unwrap_or(8)),
        (None, None) => Err(CliError::Input("--input (or --seed) is required".into())),
    }
}

fn need_m(cfg: &RunConfig) -> CliResult<usize> {
    cfg.m
        .ok_or_else(|| CliError::Input("--m is required for this command".into()))
}

fn need_rho(cfg: &RunConfig) -> CliResult<f64> {
    cfg.rho
        .ok_or_else(|| CliError::Input("--rho is required for this command".into()))
}

/// Rounds to 9 significant digits.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    json!(sig9(x))
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

fn partition_json(p: &Partition) -> Value {
    json!({ "blocks": p.blocks() })
}

fn guarantee_str(g: Guarantee) -> &'static str {
    match g {
        Guarantee::Exact => "exact",
        Guarantee::AdditiveAlpha => "additive_alpha",
    }
}

fn aggregation_json(r: &AggregationResult) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("dist".into(), nums(r.dist.probs()));
    m.insert("partition".into(), partition_json(&r.partition));
    m.insert("h".into(), num(r.h.bits()));
    m.insert("guarantee".into(), json!(guarantee_str(r.guarantee)));
    m
}

fn coupling_json(c: &Coupling) -> Value {
    json!({
        "matrix": c.matrix.iter().map(|row| nums(row)).collect::<Vec<_>>(),
        "p": nums(&c.p),
        "q": nums(&c.q),
    })
}

fn divergence_json(c: &Coupling, r: &DivergenceReport) -> Value {
    json!({
        "w": num(r.w.bits()),
        "d": num(r.d),
        "exact": r.exact,
        "label": if r.exact { "exact" } else { "mq_upper_bound" },
        "coupling": coupling_json(c),
    })
}

/// Builds the report for one command as a JSON value.
pub fn report(cfg: &RunConfig) -> CliResult<Value> {
    let value = match cfg.command {
        Command::Entropy => {
            let p = input_dist(cfg)?;
            json!({ "n": p.len(), "entropy_bits": num(p.entropy().bits()) })
        }
        Command::Bounds => {
            let p = input_dist(cfg)?;
            let b = bound_report(&p, need_m(cfg)?)?;
            json!({
                "m": b.m,
                "h_upper": num(b.h_upper.bits()),
                "h_lower_achievable": num(b.h_lower_achievable.bits()),
                "alpha": num(b.alpha),
            })
        }
        Command::ReduceMax => {
            let p = input_dist(cfg)?;
            let m = need_m(cfg)?;
            let (r, trace) = huffman_max_aggregation(&p, m)?;
            let h_upper = r_operator(&p, m)?.entropy().bits();
            let mut out = aggregation_json(&r);
            out.insert("i_q".into(), json!(trace.i_q));
            out.insert("merges".into(), json!(trace.merge_steps.len()));
            out.insert("h_upper".into(), num(h_upper));
            out.insert("certified_interval".into(), nums(&[r.h.bits(), h_upper]));
            let exact_ran = p.len() <= cfg.exact_cap;
            out.insert("exact_ran".into(), json!(exact_ran));
            if exact_ran {
                let e = exact_max_aggregation_capped(&p, m, cfg.exact_cap)?;
                out.insert("exact_h".into(), num(e.h.bits()));
            }
            Value::Object(out)
        }
        Command::ReduceMin => {
            let p = input_dist(cfg)?;
            Value::Object(aggregation_json(&exact_min_aggregation(&p, need_m(cfg)?)?))
        }
        Command::ReduceExact => {
            let p = input_dist(cfg)?;
            let r = exact_max_aggregation_capped(&p, need_m(cfg)?, cfg.exact_cap)?;
            Value::Object(aggregation_json(&r))
        }
        Command::RatioBound => {
            let rho = need_rho(cfg)?;
            let n = match (cfg.n, &cfg.input_path) {
                (Some(n), _) => n,
                (None, Some(path)) => load_dist(path)?.len(),
                (None, None) => return Err(CliError::Input("--n or --input is required".into())),
            };
            let b = ratio_bound(n, rho)?;
            json!({
                "n": b.n,
                "rho": num(b.rho),
                "gap_bits": num(b.gap_bits),
                "lower_bound_bits": num(b.lower_bound_bits),
                "prior_epsilon": num(prior_bound_epsilon(rho)?),
            })
        }
        Command::Zrho => {
            let p = input_dist(cfg)?;
            let z = z_rho(&p, need_rho(cfg)?)?;
            let log_n = (p.len() as f64).log2();
            json!({
                "leading": z.leading,
                "middle": num(z.middle),
                "z": nums(z.dist.probs()),
                "entropy_bits": num(z.dist.entropy().bits()),
                "log_n_minus_h": num(log_n - z.dist.entropy().bits()),
            })
        }
        Command::Distance => {
            let p = input_dist(cfg)?;
            match (&cfg.q_path, &cfg.partition_path) {
                (Some(qp), None) => {
                    let q = load_dist(qp)?;
                    let (c, r) = min_entropy_coupling_exact_capped(&p, &q, DEFAULT_COUPLING_CAP)?;
                    divergence_json(&c, &r)
                }
                (None, Some(pp)) => {
                    let part: Partition = serde_json::from_str(&read(pp)?)
                        .map_err(|e| CliError::Input(format!("partition: {e}")))?;
                    let (c, r) = divergence_for_partition(&p, &part, DEFAULT_COUPLING_CAP)?;
                    divergence_json(&c, &r)
                }
                _ => {
                    return Err(CliError::Input(
                        "distance needs exactly one of --q or --partition".into(),
                    ))
                }
            }
        }
        Command::Approx => {
            let p = input_dist(cfg)?;
            let m = need_m(cfg)?;
            let (q, bound) = approx_best_approximation(&p, m)?;
            json!({
                "m": m,
                "q": nums(q.probs()),
                "d_upper": num(bound),
                "alpha": num(alpha()),
            })
        }
    };
    Ok(value)
}

fn table(value: &Value) -> String {
    fn cell(v: &Value) -> String {
        match v {
            Value::Array(xs) => xs.iter().map(cell).collect::<Vec<_>>().join(", "),
            Value::Object(o) => o
                .iter()
                .map(|(k, v)| format!("{k}=[{}]", cell(v)))
                .collect::<Vec<_>>()
                .join(" "),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let Value::Object(map) = value else {
        return cell(value);
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    map.iter()
        .map(|(k, v)| format!("{k:<width$}  {}\n", cell(v)))
        .collect()
}

/// Runs one invocation and returns the full text to print.
pub fn run(cfg: &RunConfig) -> CliResult<String> {
    let value = report(cfg)?;
    match cfg.output {
        OutputFormat::Json => serde_json::to_string_pretty(&value)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Internal(e.to_string())),
        OutputFormat::Table => Ok(table(&value)),
    }
}
