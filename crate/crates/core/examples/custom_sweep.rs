//! A sweep described in JSON: two-cell battery, coupling as a family,
//! temperature difference on the x axis.

use qbattery::harness::{render_csv, run_sweep, SweepConfig};

const CONFIG: &str = r#"{
    "name": "custom",
    "preset": "two_cell_fig2",
    "axes": [
        {"targets": ["lambda_LR"], "values": [0.1, 0.3]},
        {"targets": ["T_L"], "min": 0.0, "max": 2.0, "points": 5}
    ],
    "overrides": {"T_R": 0.5},
    "solver": {"kappa": 0.02}
}"#;

fn main() -> qbattery::Result<()> {
    let cfg = SweepConfig::from_json(CONFIG)?;
    print!("{}", render_csv(&run_sweep(&cfg)?));
    Ok(())
}
