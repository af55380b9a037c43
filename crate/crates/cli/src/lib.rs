//! The `robinson` command-line tool.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid input or I/O failure,
//! 4 internal invariant violation.

mod error;
pub mod io;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::builder::RangedU64ValueParser;
use clap::{Parser, Subcommand, ValueEnum};
use robinson_core::pipeline::{approximate_general_with, PipelineOptions};
use robinson_core::{
    apply_permutation, gamma1_direct, gamma1_fast, planted_instance, seriate, unit_interval_approx, ApproxReport,
    Method, SeriationConfig,
};

pub use error::CliError;
use report::{GraphApproxResult, PlantedMeta, RunReport};

#[derive(Debug, Parser)]
#[command(name = "robinson", version, about = "Distance to Robinson form, Robinson approximation and seriation")]
struct Cli {
    /// Worker threads; outputs are identical for every value.
    #[arg(long, global = true, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GammaMethod {
    Direct,
    Fast,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeriationMethod {
    Exhaustive,
    Local,
    Spectral,
}

impl From<SeriationMethod> for Method {
    fn from(m: SeriationMethod) -> Self {
        match m {
            SeriationMethod::Exhaustive => Method::Exhaustive,
            SeriationMethod::Local => Method::Local,
            SeriationMethod::Spectral => Method::Spectral,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Robinson deviation of a CSV matrix.
    Gamma1 {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = GammaMethod::Fast)]
        method: GammaMethod,
    },
    /// Write a Robinson approximation of a CSV matrix.
    Approx {
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Round with the direct threshold instead of preprocessing first.
        #[arg(long)]
        no_preprocess: bool,
        /// Keep the unit diagonal used internally instead of restoring the input diagonal.
        #[arg(long)]
        paper_literal: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Find an ordering that makes the matrix as close to Robinson as possible.
    Seriate {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SeriationMethod::Local)]
        method: SeriationMethod,
        #[arg(long, default_value_t = 8, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the permutation (space-separated images) here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Generate a shuffled, noisy Robinson matrix.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        noise: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Also write the clean matrix, the hidden ordering and metadata here.
        #[arg(long)]
        planted: Option<PathBuf>,
    },
    /// Fit a unit interval graph to an edge list.
    #[command(name = "graph-approx")]
    GraphApprox {
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let outcome = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| execute(cli.command, echo)),
            Err(e) => Err(CliError::Input(format!("cannot start {k} threads: {e}"))),
        },
        None => execute(cli.command, echo),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, args: Vec<String>) -> Result<(), CliError> {
    let start = Instant::now();
    match command {
        Command::Gamma1 { input, method } => {
            let a = io::read_matrix(&input)?;
            let g = match method {
                GammaMethod::Direct => gamma1_direct(&a),
                GammaMethod::Fast => gamma1_fast(&a),
            };
            println!("gamma1 = {:.12}", g.value());
        }
        Command::Approx { input, output, no_preprocess, paper_literal, report } => {
            let a = io::read_matrix(&input)?;
            let opts = PipelineOptions { preprocess: !no_preprocess, restore_diagonal: !paper_literal, unit_diagonal: true };
            let (r, rep) = approximate_general_with(&a, opts);
            io::write(&output, &io::format_matrix(&r))?;
            println!("gamma1 = {:.12}", rep.gamma1);
            println!("l1_dist = {:.12}", rep.l1_dist);
            println!("guarantee = {:.12}", rep.guarantee);
            write_report(report.as_deref(), "approx", args, Some(&input), a.n(), &rep, start)?;
            check_guarantee(&rep)?;
        }
        Command::Seriate { input, method, restarts, seed, output, report } => {
            let a = io::read_matrix(&input)?;
            let cfg = SeriationConfig::new(method.into(), restarts, SeriationConfig::default().max_moves, seed)?;
            let s = seriate(&a, &cfg)?;
            println!("best_gamma1 = {:.12}", s.best_gamma1.value());
            println!("permutation = {}", s.permutation);
            if let Some(path) = &output {
                io::write(path, &io::format_permutation(&s.permutation))?;
            }
            write_report(report.as_deref(), "seriate", args, Some(&input), a.n(), &s, start)?;
        }
        Command::Generate { n, levels, noise, seed, output, planted } => {
            let inst = planted_instance(n, levels, noise, seed)?;
            io::write(&output, &io::format_matrix(&inst.noisy_shuffled))?;
            if let Some(dir) = planted {
                std::fs::create_dir_all(&dir).map_err(|source| CliError::Io { path: dir.clone(), source })?;
                let noisy = apply_permutation(&inst.noisy_shuffled, &inst.truth_perm.inverse())?;
                io::write(&dir.join("clean.csv"), &io::format_matrix(&inst.clean))?;
                io::write(&dir.join("noisy.csv"), &io::format_matrix(&noisy))?;
                io::write(&dir.join("truth.perm"), &io::format_permutation(&inst.truth_perm))?;
                let meta = PlantedMeta { n, levels, noise_level: noise, seed, truth_perm: inst.truth_perm.clone() };
                io::write(&dir.join("instance.json"), &report::to_json(&meta))?;
            }
        }
        Command::GraphApprox { input, output, report } => {
            let g = io::read_graph(&input)?;
            let (h, ed, rep) = unit_interval_approx(&g);
            io::write(&output, &io::format_graph(&h))?;
            println!("edit_distance = {ed}");
            let result =
                GraphApproxResult { edit_distance: ed, edges_in: g.edge_count(), edges_out: h.edge_count(), approx: rep };
            write_report(report.as_deref(), "graph-approx", args, Some(&input), g.n(), &result, start)?;
            check_guarantee(&result.approx)?;
        }
    }
    Ok(())
}

fn write_report<R: serde::Serialize>(
    path: Option<&Path>,
    command: &'static str,
    args: Vec<String>,
    input: Option<&Path>,
    n: usize,
    result: &R,
    start: Instant,
) -> Result<(), CliError> {
    let Some(path) = path else { return Ok(()) };
    let rep = RunReport {
        command,
        args,
        input: input.map(|p| p.display().to_string()),
        n,
        result,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    io::write(path, &report::to_json(&rep))
}

fn check_guarantee(rep: &ApproxReport) -> Result<(), CliError> {
    if rep.within_guarantee {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("l1 distance {} exceeds guaranteed {}", rep.l1_dist, rep.guarantee)))
    }
}
