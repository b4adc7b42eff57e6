#![allow(dead_code)]

use nalgebra::DMatrix;
use qbattery::{DensityMatrix, Operator, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut StdRng, dim: usize) -> DMatrix<C64> {
    DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

pub fn random_hermitian(rng: &mut StdRng, dim: usize) -> Operator {
    Operator::from_matrix(random_complex(rng, dim)).hermitian_part()
}

/// `G G† / tr(G G†)` for a random complex `G`: full rank, generic spectrum.
pub fn random_density(rng: &mut StdRng, dim: usize) -> DensityMatrix {
    let g = random_complex(rng, dim);
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(Operator::from_matrix(m / tr).hermitian_part()).unwrap()
}

pub fn random_unitary(rng: &mut StdRng, dim: usize) -> Operator {
    Operator::from_matrix(random_complex(rng, dim).qr().q())
}

/// Diagonal density matrix with random populations.
pub fn random_diagonal_density(rng: &mut StdRng, dim: usize) -> DensityMatrix {
    let w: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..1.0)).collect();
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    DensityMatrix::new(Operator::diagonal(&p)).unwrap()
}

/// Visits every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Minimum of `Σ_k p_k e_{σ(k)}` over all permutations `σ`.
pub fn brute_force_passive_energy(pops: &[f64], energies: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for_each_permutation(pops.len(), |perm| {
        let e: f64 = pops.iter().zip(perm).map(|(p, &k)| p * energies[k]).sum();
        best = best.min(e);
    });
    best
}
