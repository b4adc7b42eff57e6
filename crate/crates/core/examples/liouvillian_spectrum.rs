//! Bohr frequencies of a three-cell Hamiltonian and the slowest relaxation
//! rates of its Liouvillian.

use qbattery::lindblad::liouvillian;
use qbattery::model::FREQ_TOL;
use qbattery::steady_state::{liouvillian_gap, null_space_dim};
use qbattery::{build_hamiltonian, preset, spectrum, Param, Preset};

fn main() -> qbattery::Result<()> {
    let spec = preset(Preset::ThreeCellFig6, &[(Param::Temp(1), 0.5)])?;
    let h = build_hamiltonian(&spec)?;
    let s = spectrum(&h, FREQ_TOL)?;
    println!("energies: {:?}", s.energies);
    for class in &s.bohr_table {
        println!(
            "  ω = {:.4}  ({} transitions)",
            class.freq,
            class.pairs.len()
        );
    }

    let l = liouvillian(&spec)?;
    let mut eig = l.eigenvalues();
    eig.sort_by(|a, b| b.re.total_cmp(&a.re));
    println!("null space dim: {}", null_space_dim(&l));
    println!("gap: {:.4e}", liouvillian_gap(&l));
    for z in eig.iter().take(6) {
        println!("  {:+.4e} {:+.4e}i", z.re, z.im);
    }
    Ok(())
}
