//! Ergotropy of a hand-made population-inverted state and of its passive
//! counterpart.

use qbattery::{
    build_hamiltonian, ergotropy, passive_state, preset, DensityMatrix, Operator, Preset,
};

fn main() -> qbattery::Result<()> {
    let h = build_hamiltonian(&preset(Preset::TwoCellFig2, &[])?)?;
    // |↑↑⟩ carries the most weight: a charged battery
    let rho = DensityMatrix::new(Operator::diagonal(&[0.6, 0.15, 0.15, 0.1]))?;
    let report = ergotropy(&rho, &h)?;
    println!(
        "energies (diag H)  {:?}",
        (0..4).map(|k| h.get(k, k).re).collect::<Vec<_>>()
    );
    println!("E = tr(ρH)         {:.6}", report.internal_energy);
    println!("E_passive          {:.6}", report.passive_energy);
    println!("W                  {:.6}", report.ergotropy);
    println!("sorted populations {:?}", report.populations);

    let pi = passive_state(&rho, &h)?;
    println!("W(passive state)   {:.3e}", ergotropy(&pi, &h)?.ergotropy);
    Ok(())
}
