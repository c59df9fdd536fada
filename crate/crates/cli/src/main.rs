use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dsw_edge::config::Format;
use dsw_edge::{commands, CliError, Result, RunConfig};

/// Leading-edge asymptotics of the focusing NLS step problem.
#[derive(Debug, Parser)]
#[command(name = "dsw-edge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory; overrides the config and OUTPUT_DIR.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Output encoding.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for independent cells.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Reserved; runs are deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate q_sol, q_par and q_total on the (rho, t) grid.
    Asympt,
    /// Run the residual suites; exit 0 iff every row passes.
    ParametrixCheck,
    /// Run the split-step solver and write snapshots and a drift log.
    Simulate,
    /// Compare numerical and asymptotic envelopes near the leading edge.
    Compare,
}

fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let path = cli.config.as_deref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(out) = &cli.out {
        cfg.output_dir.clone_from(out);
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    match cli.command {
        Command::Asympt => commands::asympt(&cfg, cli.jobs),
        Command::ParametrixCheck => commands::parametrix_check(&cfg),
        Command::Simulate => commands::simulate(&cfg),
        Command::Compare => {
            let out = commands::compare(&cfg, cli.jobs)?;
            for c in &out.comparisons {
                let lead = c.peaks.first().map_or(f64::NAN, |p| p.offset());
                println!("t = {}: linf_env = {:.6e}, l2_env = {:.6e}, lead offset = {lead:.4}", c.t, c.linf_env, c.l2_env);
            }
            println!("linf_env decreasing: {}", out.linf_decreasing());
            Ok(out.files)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(files) => {
            for f in files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("dsw-edge: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
