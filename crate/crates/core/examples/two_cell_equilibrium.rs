//! Two-cell battery: ergotropy of the steady state for a few bath
//! temperature pairs, including equal temperatures.

use qbattery::harness::{evaluate_point, SolverSettings};
use qbattery::{preset, Param, Preset};

fn main() -> qbattery::Result<()> {
    println!("{:>6} {:>6} {:>14} {:>14}", "T_L", "T_R", "W", "E");
    for (tl, tr) in [(0.5, 0.5), (1.0, 1.0), (0.25, 1.0), (1.0, 0.25), (2.0, 0.0)] {
        let spec = preset(
            Preset::TwoCellFig2,
            &[(Param::Temp(0), tl), (Param::Temp(2), tr)],
        )?;
        let p = evaluate_point(&spec, &SolverSettings::default())?;
        println!(
            "{tl:>6} {tr:>6} {:>14.6e} {:>14.6e}",
            p.ergotropy, p.internal_energy
        );
    }
    Ok(())
}
