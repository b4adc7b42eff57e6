//! Solves one steady state three ways: SVD null space, trace-augmented QR
//! and long RK4 integration from the maximally mixed state.

use qbattery::lindblad::liouvillian;
use qbattery::model::FREQ_TOL;
use qbattery::steady_state::{
    default_schedule, steady_state_residual, steady_state_with, Backend, SolverOptions,
};
use qbattery::{build_hamiltonian, evolve, preset, spectrum, DensityMatrix, Param, Preset};

fn main() -> qbattery::Result<()> {
    let spec = preset(
        Preset::ThreeCellFig4,
        &[
            (Param::Temp(0), 1.2),
            (Param::Temp(1), 0.6),
            (Param::Temp(2), 0.1),
        ],
    )?;
    let l = liouvillian(&spec)?;
    let null = steady_state_with(&l, &SolverOptions::default())?;
    let qr = steady_state_with(
        &l,
        &SolverOptions {
            backend: Backend::TraceAugmented,
            ..SolverOptions::default()
        },
    )?;
    let s = spectrum(&build_hamiltonian(&spec)?, FREQ_TOL)?;
    let (t, dt) = default_schedule(&l, spec.kappa, &s);
    let rk4 = evolve(&DensityMatrix::maximally_mixed(spec.dim()), &l, t, dt)?;

    println!("superoperator      {0}x{0}", l.matrix().nrows());
    println!(
        "residual (SVD)     {:.3e}",
        steady_state_residual(&l, &null)
    );
    println!("residual (QR)      {:.3e}", steady_state_residual(&l, &qr));
    println!("D(SVD, QR)         {:.3e}", null.trace_distance(&qr));
    println!(
        "D(SVD, RK4)        {:.3e}  (t = {t:.1}, dt = {dt:.4})",
        null.trace_distance(&rk4)
    );
    println!("min eigenvalue     {:.3e}", null.min_eigenvalue());
    Ok(())
}
