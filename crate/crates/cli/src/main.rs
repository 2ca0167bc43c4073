//! `fcgp`: parameters, kernelization, solving, verification and batch
//! oracle checks for Max/Min α-FCGP.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fcgp", version, about = "Kernelize and solve fixed cardinality graph partitioning instances")]
struct Cli {
    /// Print a single JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock timings in the JSON report (not reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum GraphFormat {
    Edgelist,
    Dimacs,
}

#[derive(Args, Clone)]
pub struct GraphArg {
    /// Graph file.
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: GraphFormat,
}

#[derive(Args, Clone)]
pub struct ValueArgs {
    /// α as P/Q or an integer.
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub k: usize,
    /// Threshold t as P/Q or an integer.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    /// max or min.
    #[arg(long)]
    pub variant: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structural parameters of a graph.
    Params {
        #[command(flatten)]
        graph: GraphArg,
        /// Largest vertex cover to search for.
        #[arg(long, default_value_t = fcgp::graph::DEFAULT_VC_BUDGET)]
        vc_budget: usize,
    },
    /// Run a kernelization pipeline.
    Kernelize {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        values: ValueArgs,
        /// auto, delta, closure, degeneracy, hindex or vc.
        #[arg(long, default_value = "auto")]
        pipeline: String,
        /// Kernel output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trace output file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = fcgp::graph::DEFAULT_VC_BUDGET)]
        vc_budget: usize,
    },
    /// Solve an instance exactly.
    Solve {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        values: ValueArgs,
        /// auto, brute, branch, third, hindex or densest-vc.
        #[arg(long, default_value = "auto")]
        solver: String,
        #[arg(long, default_value_t = fcgp::solve::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check a kernel and trace against the original instance.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        values: ValueArgs,
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Decide the original by brute force instead of the solver dispatch.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = fcgp::solve::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run the oracle equivalence check over a manifest.
    Battery {
        manifest: PathBuf,
        /// Directory for failing cases.
        #[arg(long, default_value = "battery-failures")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = fcgp::solve::DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = fcgp::graph::DEFAULT_VC_BUDGET)]
        vc_budget: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = commands::Output { json: cli.json, timings: cli.timings };
    let res = match cli.cmd {
        Cmd::Params { graph, vc_budget } => commands::params(&out, &graph, vc_budget),
        Cmd::Kernelize { graph, values, pipeline, out: kout, trace, vc_budget } => {
            commands::kernelize(&out, &graph, &values, &pipeline, kout.as_deref(), trace.as_deref(), vc_budget)
        }
        Cmd::Solve { graph, values, solver, budget } => commands::solve(&out, &graph, &values, &solver, budget),
        Cmd::Verify { graph, values, kernel, trace, oracle, budget } => {
            commands::verify(&out, &graph, &values, &kernel, &trace, oracle, budget)
        }
        Cmd::Battery { manifest, out_dir, budget, vc_budget } => {
            commands::battery(&out, &manifest, &out_dir, budget, vc_budget)
        }
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
