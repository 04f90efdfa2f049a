//! `pairstab`: stability of graphs and graph pairs under the direct product.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairstab::config::{DEFAULT_COPRIME_BOUND, DEFAULT_NODE_BUDGET, DEFAULT_VERTEX_CAP};
use pairstab::{Error, Limits};
use serde::Serialize;

use input::InputFormat;
use output::{emit, emit_error, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Settings shared by every command. Each flag falls back to its
/// `PAIRSTAB_*` environment variable, then to the built-in default.
#[derive(Debug, Clone, Args, Serialize)]
pub struct RunConfig {
    /// Search-tree node budget per group or factor search.
    #[arg(long, global = true, env = "PAIRSTAB_BUDGET", default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Largest product (in vertices) that may be built.
    #[arg(long, global = true, env = "PAIRSTAB_VERTEX_CAP", default_value_t = DEFAULT_VERTEX_CAP,
          value_parser = positive)]
    pub vertex_cap: usize,
    /// Largest common-factor order searched when deciding coprimality.
    #[arg(long, global = true, env = "PAIRSTAB_COPRIME_BOUND", default_value_t = DEFAULT_COPRIME_BOUND,
          value_parser = positive)]
    pub coprime_bound: usize,
    #[arg(long, global = true, env = "PAIRSTAB_FORMAT", value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads for sweeps and scans.
    #[arg(long, global = true, env = "PAIRSTAB_JOBS", default_value_t = 1, value_parser = positive)]
    pub jobs: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, env = "PAIRSTAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Input format of graph files.
    #[arg(long, global = true, env = "PAIRSTAB_FORMAT_IN", value_enum, default_value_t = InputFormat::Auto)]
    pub format_in: InputFormat,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            node_budget: self.budget,
            vertex_cap: self.vertex_cap,
            coprime_bound: self.coprime_bound,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pairstab", version, about = "Stability of graphs and graph pairs under the direct product")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a graph (against K_2) or a pair.
    Stability(StabilityArgs),
    /// Build a direct product and write it as graph6 with a JSON sidecar.
    Product {
        gamma: String,
        sigma: String,
        /// Output file; the sidecar goes to `<file>.json`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Automorphism group of a graph.
    Aut { graph: String },
    /// A nontrivial two-fold automorphism, or with --sigma a non-diagonal Σ-automorphism.
    Witness {
        graph: String,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Check a theorem or proposition on one instance or a whole sweep.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Scan a graph6 corpus for pairs (Γ, K_m) that break the stability conjecture.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct StabilityArgs {
    /// Classify (Γ, K_2).
    #[arg(long)]
    graph: Option<String>,
    /// Classify (Γ, Σ).
    #[arg(long, num_args = 2, value_names = ["GAMMA", "SIGMA"])]
    pair: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Σ connected, R-thin, bipartite: (Γ,Σ) nontrivially unstable iff Γ is.
    #[command(name = "theorem-1a")]
    TheoremA {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        sigma: String,
    },
    /// Σ disconnected, R-thick or non-bipartite: (Γ,Σ) is not nontrivially unstable.
    #[command(name = "theorem-1b")]
    TheoremB {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        sigma: String,
    },
    /// (Γ, K_m); without --gamma, every regular graph up to --max-order.
    PropKm {
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long = "m", required = true, num_args = 1..)]
        m: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        max_order: usize,
    },
    /// (Γ, C_m); without --gamma, every regular graph up to --max-order.
    PropCm {
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long = "m", required = true, num_args = 1..)]
        m: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        max_order: usize,
    },
    /// Non-diagonal Σ-automorphism exists iff the pair is nontrivially unstable.
    SigmaCriterion {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        sigma: String,
    },
    /// Both theorem checks and the Σ-automorphism criterion over all regular Γ
    /// and vertex-transitive Σ up to the given orders.
    Theorems {
        #[arg(long, default_value_t = 8)]
        gamma_max: usize,
        #[arg(long, default_value_t = 6)]
        sigma_max: usize,
    },
    /// Product laws and stability invariants over all graphs up to --order-cap,
    /// plus a relabeling fuzz seeded by --seed.
    Sweeps {
        #[arg(long, default_value_t = 5)]
        order_cap: usize,
        #[arg(long, default_value_t = 1000)]
        fuzz_trials: usize,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// graph6 corpus, one graph per line.
    #[arg(required_unless_present = "bipartite", conflicts_with = "bipartite")]
    corpus: Option<PathBuf>,
    /// Scan the generated connected bipartite graphs up to this order instead.
    #[arg(long)]
    bipartite: Option<usize>,
    #[arg(long, default_value_t = 3)]
    m_min: usize,
    #[arg(long, default_value_t = 10)]
    m_max: usize,
    /// Stop checking after this many seconds; unchecked records are undecided.
    #[arg(long)]
    deadline_secs: Option<u64>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Stability(_) => "stability",
        Command::Product { .. } => "product",
        Command::Aut { .. } => "aut",
        Command::Witness { .. } => "witness",
        Command::Verify { .. } => "verify",
        Command::Scan(_) => "scan",
    }
}

/// 0 decided or passed, 1 bad input, 2 resource limit, 3 assertion failure.
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::VertexCap { .. } | Error::BudgetExceeded { .. } => 2,
        Error::Invariant(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.config.jobs).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let name = command_name(&cli.command);
    let start = Instant::now();
    let outcome = commands::run(&cli.command, &cli.config);
    let elapsed = start.elapsed();
    match outcome {
        Ok(out) => {
            if let Err(e) = emit(name, &cli.config, &out, elapsed) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(match out.status {
                Status::Decided => 0,
                Status::AssertionFailed => 3,
            })
        }
        Err(e) => {
            emit_error(name, &cli.config, &e, elapsed);
            ExitCode::from(exit_code_for(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code_for(&Error::InvalidArgument("x".into())), 1);
        assert_eq!(exit_code_for(&Error::Invariant("x".into())), 3);
        let failed = output::Output::new(0).failed_if(true);
        assert_eq!(failed.status, Status::AssertionFailed);
    }
}
