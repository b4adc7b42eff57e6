//! Tied-coupling sweep on the three-cell chain, written as CSV plus a
//! gnuplot script. Usage: `coupling_sweep [OUT_DIR]`.

use std::path::PathBuf;

use qbattery::harness::{emit_csv, emit_plot_script, figure_config, run_sweep, Figure};

fn main() -> qbattery::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "out".into()));
    let mut cfg = figure_config(Figure::Fig6);
    cfg.set_points(41);
    let result = run_sweep(&cfg)?;

    for tm in [0.0, 0.5, 1.0] {
        let best = result
            .select(0, tm)
            .filter_map(|r| r.ergotropy().map(|w| (r.params[1], w)))
            .fold(
                (f64::NAN, f64::NEG_INFINITY),
                |a, b| if b.1 > a.1 { b } else { a },
            );
        println!("T_M = {tm}: max W = {:.4e} at λ = {:.2}", best.1, best.0);
    }
    println!(
        "{} of {} points failed",
        result.error_count(),
        result.rows.len()
    );

    emit_csv(&result, &out.join("coupling.csv"))?;
    emit_plot_script(&result, &out.join("coupling.gp"))?;
    println!("wrote {}/coupling.csv and coupling.gp", out.display());
    Ok(())
}
