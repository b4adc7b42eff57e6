mod common;

use qbattery::lindblad::{dissipator_terms, liouvillian, unitary_part};
use qbattery::model::{build_hamiltonian, spectrum, Preset, SystemSpec, FREQ_TOL};
use qbattery::steady_state::{gibbs_state, steady_state, DensityMatrix};

fn sample_specs() -> Vec<SystemSpec> {
    let mut two = Preset::TwoCellFig2.base();
    two.bath_temps = vec![1.3, 0.2];
    let mut three = Preset::ThreeCellFig4.base();
    three.bath_temps = vec![0.9, 0.4, 0.0];
    let mut strong = Preset::ThreeCellFig6.base();
    for l in strong.lambda.values_mut() {
        *l = 0.83;
    }
    strong.bath_temps = vec![1.0, 0.6, 0.0];
    vec![two, three, strong]
}

#[test]
fn generator_preserves_trace_and_hermiticity() {
    let mut rng = common::rng(7);
    for spec in sample_specs() {
        let l = liouvillian(&spec).unwrap();
        for _ in 0..200 {
            let rho = common::random_hermitian(&mut rng, spec.dim());
            let out = l.apply(&rho);
            assert!(out.trace().norm() < 1e-10);
            assert!(out.hermitian_deviation() < 1e-10);
        }
    }
}

#[test]
fn spectrum_has_a_zero_mode_and_otherwise_decays() {
    for spec in sample_specs() {
        let eig = liouvillian(&spec).unwrap().eigenvalues();
        let zeros = eig.iter().filter(|z| z.norm() < 1e-10).count();
        assert!(zeros >= 1, "{spec:?}");
        assert!(eig.iter().all(|z| z.re <= 1e-10));
    }
}

#[test]
fn every_channel_satisfies_detailed_balance() {
    for spec in sample_specs() {
        let h = build_hamiltonian(&spec).unwrap();
        let s = spectrum(&h, FREQ_TOL).unwrap();
        for site in 0..spec.n_cells {
            let t = spec.bath_temps[site];
            for term in dissipator_terms(&spec, &s, site).unwrap() {
                if t == 0.0 {
                    assert_eq!(term.up_rate, 0.0);
                } else {
                    let ratio = term.down_rate / term.up_rate;
                    let want = (term.freq / t).exp();
                    assert!((ratio - want).abs() < 1e-12 * want);
                }
            }
        }
    }
}

#[test]
fn gibbs_state_is_annihilated_when_all_baths_agree() {
    for (spec, t) in [
        (Preset::TwoCellFig2.base(), 0.35),
        (Preset::ThreeCellFig4.base(), 0.8),
        (Preset::ThreeCellFig4.base(), 2.0),
    ] {
        let mut spec = spec;
        spec.bath_temps = vec![t; spec.n_cells];
        let h = build_hamiltonian(&spec).unwrap();
        let g = gibbs_state(&h, t).unwrap();
        let out = liouvillian(&spec).unwrap().apply(g.operator());
        assert!(out.frobenius_norm() < 1e-10);
    }
}

#[test]
fn zero_temperature_fixes_lowering_convention() {
    let mut spec = Preset::ThreeCellFig6.base();
    spec.bath_temps = vec![0.0; 3];
    for l in spec.lambda.values_mut() {
        *l = 0.3;
    }
    let h = build_hamiltonian(&spec).unwrap();
    let rho = steady_state(&liouvillian(&spec).unwrap()).unwrap();
    let ground = DensityMatrix::ground_state(&h).unwrap();
    assert!(rho.trace_distance(&ground) < 1e-8);
}

#[test]
fn unitary_part_vanishes_on_diagonal_states() {
    let mut rng = common::rng(3);
    for spec in sample_specs() {
        let h = build_hamiltonian(&spec).unwrap();
        let rho = common::random_diagonal_density(&mut rng, spec.dim());
        assert!(unitary_part(&h).apply(rho.operator()).frobenius_norm() < 1e-15);
    }
}
