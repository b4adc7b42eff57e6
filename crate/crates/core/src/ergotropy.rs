//! Internal energy, passive states and ergotropy.
//!
//! The passive state pairs the eigenvalues of `ρ`, sorted in non-increasing
//! order, with the eigenvectors of `H` sorted by non-decreasing energy. No
//! unitary can lower `tr(ρH)` below `tr(πH)`, so the ergotropy is their
//! difference.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::eigh;
use crate::spin_ops::{Operator, C64};
use crate::steady_state::{DensityMatrix, POSITIVITY_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct ErgotropyReport {
    /// `tr(ρH)`
    pub internal_energy: f64,
    /// `tr(πH)`
    pub passive_energy: f64,
    pub ergotropy: f64,
    /// Eigenvalues of `ρ` in non-increasing order, after clamping.
    pub populations: Vec<f64>,
    /// Total weight of round-off negative eigenvalues that were set to zero.
    pub clamped_mass: f64,
}

fn check_dims(rho: &DensityMatrix, h: &Operator) -> Result<()> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho.dim(),
        });
    }
    Ok(())
}

pub fn internal_energy(rho: &DensityMatrix, h: &Operator) -> Result<f64> {
    check_dims(rho, h)?;
    Ok((rho.operator() * h).trace().re)
}

/// Eigenvalues of `ρ`, non-increasing, with round-off negatives clamped to
/// zero and the rest renormalized. Also returns the clamped mass.
fn sorted_populations(rho: &DensityMatrix) -> Result<(Vec<f64>, f64)> {
    let mut pops = rho.eigenvalues();
    pops.reverse();
    let mut clamped = 0.0;
    for p in pops.iter_mut() {
        if *p < -POSITIVITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "eigenvalue {p:e} below positivity tolerance"
            )));
        }
        if *p < 0.0 {
            clamped -= *p;
            *p = 0.0;
        }
    }
    if clamped > 0.0 {
        let total: f64 = pops.iter().sum();
        pops.iter_mut().for_each(|p| *p /= total);
    }
    Ok((pops, clamped))
}

pub fn passive_state(rho: &DensityMatrix, h: &Operator) -> Result<DensityMatrix> {
    check_dims(rho, h)?;
    let (pops, _) = sorted_populations(rho)?;
    let (_, vecs) = eigh(h)?;
    let d = h.dim();
    let diag = DMatrix::from_fn(d, d, |r, c| {
        if r == c {
            C64::new(pops[r], 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(Operator::from_matrix(&vecs * diag * vecs.adjoint()))
}

pub fn ergotropy(rho: &DensityMatrix, h: &Operator) -> Result<ErgotropyReport> {
    let internal = internal_energy(rho, h)?;
    let (pops, clamped_mass) = sorted_populations(rho)?;
    let (energies, _) = eigh(h)?;
    let passive: f64 = pops.iter().zip(&energies).map(|(p, e)| p * e).sum();
    Ok(ErgotropyReport {
        internal_energy: internal,
        passive_energy: passive,
        ergotropy: internal - passive,
        populations: pops,
        clamped_mass,
    })
}
