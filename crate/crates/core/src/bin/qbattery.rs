use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qbattery::harness::{
    emit_csv, emit_plot_script, figure_config, run_sweep_with, ConfigPatch, Figure, SweepConfig,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Command {
    Fig2a,
    Fig2b,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5,
    Fig6,
    /// Generic sweep described by --config
    Sweep,
}

/// Steady-state ergotropy sweeps for thermally driven qubit batteries.
#[derive(Debug, Parser)]
#[command(version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// JSON sweep config (required for `sweep`; for figures, a patch with
    /// `overrides` and/or `solver`)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Ohmic constant
    #[arg(long)]
    kappa: Option<f64>,
    /// Points per continuous axis
    #[arg(long)]
    points: Option<usize>,
    /// Worker threads
    #[arg(long)]
    workers: Option<usize>,
}

fn load(cli: &Cli) -> Result<SweepConfig, String> {
    let text = match &cli.config {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?),
        None => None,
    };
    let figure = match cli.command {
        Command::Fig2a => Figure::Fig2a,
        Command::Fig2b => Figure::Fig2b,
        Command::Fig3 => Figure::Fig3,
        Command::Fig4a => Figure::Fig4a,
        Command::Fig4b => Figure::Fig4b,
        Command::Fig5 => Figure::Fig5,
        Command::Fig6 => Figure::Fig6,
        Command::Sweep => {
            let text = text.ok_or("`sweep` needs --config FILE")?;
            return serde_json::from_str(&text).map_err(|e| e.to_string());
        }
    };
    let mut cfg = figure_config(figure);
    if let Some(text) = text {
        let patch: ConfigPatch = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        cfg.apply_patch(patch);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(k) = cli.kappa {
        cfg.solver.kappa = k;
    }
    if let Some(n) = cli.points {
        cfg.set_points(n);
    }
    let csv = match (&cli.out, &cfg.output) {
        (None, Some(p)) => p.clone(),
        (dir, _) => dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("out"))
            .join(format!("{}.csv", cfg.name)),
    };

    let result = match run_sweep_with(&cfg, cli.workers) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(1);
        }
    };
    let script = csv.with_extension("gp");
    if let Err(e) = emit_csv(&result, &csv) {
        eprintln!("cannot write {}: {e}", csv.display());
        return ExitCode::from(1);
    }
    match emit_plot_script(&result, &script) {
        Ok(()) => eprintln!("wrote {} and {}", csv.display(), script.display()),
        Err(e) => eprintln!("wrote {} (no plot script: {e})", csv.display()),
    }

    let errors = result.error_count();
    if errors > 0 {
        eprintln!(
            "{errors} of {} grid points failed to solve",
            result.rows.len()
        );
        return ExitCode::from(2);
    }
    ExitCode::SUCCESS
}
