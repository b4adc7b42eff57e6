//! Global Lindblad generator for cells that each couple to their own Ohmic
//! bosonic bath through `σ_x`.
//!
//! Density matrices are vectorized by stacking columns: `vec(ρ)[c·d + r] =
//! ρ[r, c]`. With this convention `vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ)`, so the
//! unitary part of the generator is `−i (I ⊗ H − Hᵀ ⊗ I)`.

use nalgebra::{DMatrix, DVector, Schur};

use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, spectrum, Spectrum, SystemSpec, FREQ_TOL};
use crate::spin_ops::{embed, kron, pauli, Axis, Operator, C64};

/// A linear map on `d × d` matrices, stored as a `d² × d²` matrix acting on
/// column-stacked vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Superoperator {
    dim: usize,
    matrix: DMatrix<C64>,
}

pub fn vec_op(op: &Operator) -> DVector<C64> {
    // nalgebra storage is column-major, i.e. already column-stacked
    DVector::from_column_slice(op.matrix().as_slice())
}

pub fn unvec(v: &DVector<C64>, dim: usize) -> Operator {
    assert_eq!(v.len(), dim * dim, "vector length is not dim²");
    Operator::from_matrix(DMatrix::from_column_slice(dim, dim, v.as_slice()))
}

impl Superoperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            matrix: DMatrix::zeros(dim * dim, dim * dim),
        }
    }

    pub fn from_matrix(dim: usize, matrix: DMatrix<C64>) -> Self {
        assert_eq!(matrix.shape(), (dim * dim, dim * dim));
        Self { dim, matrix }
    }

    /// Hilbert-space dimension `d` (the matrix is `d² × d²`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn apply(&self, rho: &Operator) -> Operator {
        unvec(&(&self.matrix * vec_op(rho)), self.dim)
    }

    pub fn apply_vec(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            matrix: self.matrix.map(|z| z * s),
        }
    }

    /// Induced 1-norm (max column sum), an upper bound on the spectral norm
    /// up to a factor `d`.
    pub fn norm_one(&self) -> f64 {
        self.matrix
            .column_iter()
            .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// All eigenvalues, via a complex Schur decomposition.
    pub fn eigenvalues(&self) -> Vec<C64> {
        Schur::new(self.matrix.clone())
            .eigenvalues()
            .expect("complex Schur form is triangular")
            .iter()
            .copied()
            .collect()
    }
}

impl std::ops::Add for &Superoperator {
    type Output = Superoperator;
    fn add(self, rhs: &Superoperator) -> Superoperator {
        assert_eq!(self.dim, rhs.dim);
        Superoperator {
            dim: self.dim,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

/// Bose-Einstein occupation `1 / (e^{ω/T} − 1)`; exactly zero at `T = 0`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "occupation needs a positive frequency, got {omega}"
        )));
    }
    if !(temperature >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "temperature must be non-negative, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// Ohmic spectral density `κω`.
pub fn spectral_density(omega: f64, kappa: f64) -> f64 {
    kappa * omega
}

/// `−i [H, ·]`
pub fn unitary_part(h: &Operator) -> Superoperator {
    let d = h.dim();
    let id = Operator::identity(d);
    let gen = &kron(&id, h) - &kron(&h.transpose(), &id);
    Superoperator::from_matrix(d, gen.into_matrix() * C64::new(0.0, -1.0))
}

/// `ρ ↦ A ρ A† − ½{ρ, A†A}`
pub fn lindblad_term(a: &Operator) -> Superoperator {
    let d = a.dim();
    let id = Operator::identity(d);
    let ada = &a.dagger() * a;
    let jump = kron(&a.conj(), a);
    let anti = &kron(&id, &ada) + &kron(&ada.transpose(), &id);
    Superoperator::from_matrix(d, (&jump - &anti.scale(0.5)).into_matrix())
}

fn register_size(dim: usize) -> Result<usize> {
    match dim {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        _ => Err(Error::InvalidArgument(format!(
            "Hilbert dimension {dim} is not a 1-3 qubit register"
        ))),
    }
}

/// Frequency-resolved jump operator `A_site(ω)` in the computational basis.
///
/// It collects the matrix elements of `σ_x^site` that take an eigenstate
/// `|k⟩` down to an eigenstate `|m⟩` with `ε_k − ε_m = ω`, i.e. it lowers
/// the energy by `ω`; its adjoint raises it.
pub fn jump_operator(spec: &Spectrum, site: usize, omega: f64) -> Result<Operator> {
    let class = spec.class(omega).ok_or_else(|| {
        Error::InvalidArgument(format!("{omega} is not a Bohr frequency of this spectrum"))
    })?;
    let d = spec.dim();
    let x = embed(&pauli(Axis::X), site, register_size(d)?)?;
    let x_eig = spec.to_eigenbasis(&x);
    let mut a = DMatrix::<C64>::zeros(d, d);
    for &(k, m) in &class.pairs {
        a[(m, k)] = x_eig.get(m, k);
    }
    Ok(spec.from_eigenbasis(&Operator::from_matrix(a)))
}

/// One frequency channel of one bath: the lowering operator and the
/// emission/absorption rates multiplying its two Lindblad terms.
#[derive(Clone, Debug)]
pub struct DissipatorTerm {
    pub site: usize,
    pub freq: f64,
    /// `J(ω)(1 + n(ω))`
    pub down_rate: f64,
    /// `J(ω) n(ω)`
    pub up_rate: f64,
    pub jump: Operator,
}

pub fn dissipator_terms(
    system: &SystemSpec,
    spec: &Spectrum,
    site: usize,
) -> Result<Vec<DissipatorTerm>> {
    let temperature = *system
        .bath_temps
        .get(site)
        .ok_or_else(|| Error::InvalidArgument(format!("no bath attached to site {site}")))?;
    let mut terms = Vec::new();
    for class in &spec.bohr_table {
        let jump = jump_operator(spec, site, class.freq)?;
        if jump.frobenius_norm() == 0.0 {
            continue;
        }
        let n = thermal_occupation(class.freq, temperature)?;
        let j = spectral_density(class.freq, system.kappa);
        terms.push(DissipatorTerm {
            site,
            freq: class.freq,
            down_rate: j * (1.0 + n),
            up_rate: j * n,
            jump,
        });
    }
    Ok(terms)
}

/// `Σ_{ω>0} J(ω) [ (1 + n(ω)) 𝔅[A(ω)] + n(ω) 𝔅[A†(ω)] ]` for the bath on `site`.
pub fn dissipator(system: &SystemSpec, spec: &Spectrum, site: usize) -> Result<Superoperator> {
    let mut out = Superoperator::zeros(spec.dim());
    for term in dissipator_terms(system, spec, site)? {
        out = &out + &lindblad_term(&term.jump).scale(term.down_rate);
        if term.up_rate > 0.0 {
            out = &out + &lindblad_term(&term.jump.dagger()).scale(term.up_rate);
        }
    }
    Ok(out)
}

/// The full generator `−i[H, ·] + Σ_i 𝓛_i` with one bath per cell.
pub fn liouvillian(system: &SystemSpec) -> Result<Superoperator> {
    liouvillian_with_tol(system, FREQ_TOL)
}

pub fn liouvillian_with_tol(system: &SystemSpec, freq_tol: f64) -> Result<Superoperator> {
    let h = build_hamiltonian(system)?;
    let spec = spectrum(&h, freq_tol)?;
    let mut gen = unitary_part(&h);
    for site in 0..system.n_cells {
        gen = &gen + &dissipator(system, &spec, site)?;
    }
    Ok(gen)
}
