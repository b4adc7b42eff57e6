//! Three-cell chain with the right bath at zero temperature: heating the
//! middle bath raises the steady-state ergotropy.

use qbattery::harness::{evaluate_point, SolverSettings};
use qbattery::{preset, Param, Preset};

fn main() -> qbattery::Result<()> {
    let t_m = [0.0, 0.5, 1.0];
    print!("{:>6}", "T_L");
    for t in t_m {
        print!(" {:>14}", format!("W(T_M={t})"));
    }
    println!();
    for t_l in [0.25, 0.5, 1.0, 1.5, 2.0] {
        print!("{t_l:>6}");
        for t in t_m {
            let spec = preset(
                Preset::ThreeCellFig4,
                &[
                    (Param::Temp(0), t_l),
                    (Param::Temp(1), t),
                    (Param::Temp(2), 0.0),
                ],
            )?;
            print!(
                " {:>14.6e}",
                evaluate_point(&spec, &SolverSettings::default())?.ergotropy
            );
        }
        println!();
    }
    Ok(())
}
