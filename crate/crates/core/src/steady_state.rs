//! Fixed points of the Lindblad generator and a Runge-Kutta integrator used
//! to cross-check them.

use nalgebra::{DMatrix, DVector, SVD};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lindblad::{unvec, vec_op, Superoperator};
use crate::model::{eigh, Spectrum};
use crate::spin_ops::{Operator, C64};

/// Hermiticity and trace tolerance for density matrices.
pub const DENSITY_TOL: f64 = 1e-10;
/// Most negative eigenvalue accepted as round-off.
pub const POSITIVITY_TOL: f64 = 1e-8;
/// Default bound on `‖𝒟 vec(ρ)‖₂` for an accepted steady state.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Singular values below `NULL_TOL · σ_max` count as zero.
pub const NULL_TOL: f64 = 1e-9;
/// Trace drift that aborts an integration.
pub const TRACE_DRIFT_TOL: f64 = 1e-6;

/// A Hermitian, unit-trace, positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Operator);

impl DensityMatrix {
    /// Validates `op` against [`DENSITY_TOL`] and [`POSITIVITY_TOL`].
    pub fn new(op: Operator) -> Result<Self> {
        let dev = op.hermitian_deviation();
        if dev > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {dev:e})"
            )));
        }
        let tr = op.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {tr}")));
        }
        let op = op.hermitian_part();
        let (vals, _) = eigh(&op)?;
        if vals[0] < -POSITIVITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {:e}",
                vals[0]
            )));
        }
        Ok(Self(op))
    }

    /// `|k⟩⟨k|` in the computational basis.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        Self(Operator::basis_projector(dim, k, k))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(Operator::identity(dim).scale(1.0 / dim as f64))
    }

    /// Projector onto the lowest eigenvector of `h`.
    pub fn ground_state(h: &Operator) -> Result<Self> {
        let (_, vecs) = eigh(h)?;
        let g = vecs.column(0);
        Ok(Self(Operator::from_matrix(g * g.adjoint())))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn operator(&self) -> &Operator {
        &self.0
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigh(&self.0).map(|(v, _)| v).unwrap_or_default()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(f64::NAN)
    }

    /// `½ ‖ρ − σ‖₁`
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        let diff = (&self.0 - &other.0).hermitian_part();
        let (vals, _) = eigh(&diff).expect("difference of Hermitian matrices");
        0.5 * vals.iter().map(|v| v.abs()).sum::<f64>()
    }
}

/// Normalizes a raw null vector into a density matrix.
fn normalize(v: &DVector<C64>, dim: usize) -> Result<DensityMatrix> {
    let op = unvec(v, dim);
    let tr = op.trace();
    if tr.norm() < 1e-300 {
        return Err(Error::InvalidDensityMatrix(
            "null vector has zero trace".into(),
        ));
    }
    let op = Operator::from_matrix(op.into_matrix() / tr);
    DensityMatrix::new(op.hermitian_part())
}

fn residual(l: &Superoperator, rho: &DensityMatrix) -> f64 {
    l.apply_vec(&vec_op(rho.operator())).norm()
}

fn check_residual(l: &Superoperator, rho: DensityMatrix, tol: f64) -> Result<DensityMatrix> {
    let r = residual(l, &rho);
    if r < tol {
        Ok(rho)
    } else {
        Err(Error::Convergence {
            residual: r,
            tolerance: tol,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Right singular vector of the smallest singular value.
    #[default]
    NullSpace,
    /// The generator stacked with a trace row, solved by QR least squares.
    TraceAugmented,
}

#[derive(Clone, Copy, Debug)]
pub struct SolverOptions {
    pub backend: Backend,
    pub residual_tol: f64,
    pub null_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            backend: Backend::NullSpace,
            residual_tol: RESIDUAL_TOL,
            null_tol: NULL_TOL,
        }
    }
}

/// Steady state with default options.
pub fn steady_state(l: &Superoperator) -> Result<DensityMatrix> {
    steady_state_with(l, &SolverOptions::default())
}

pub fn steady_state_with(l: &Superoperator, opts: &SolverOptions) -> Result<DensityMatrix> {
    let rho = match opts.backend {
        Backend::NullSpace => null_space_solve(l, opts.null_tol)?,
        Backend::TraceAugmented => trace_augmented_solve(l, opts.null_tol)?,
    };
    check_residual(l, rho, opts.residual_tol)
}

struct NullSpace {
    /// Right null vectors (columns): `𝒟 r = 0`.
    right: DMatrix<C64>,
    /// Left null vectors (columns): `l† 𝒟 = 0`.
    left: DMatrix<C64>,
}

fn null_space(l: &Superoperator, null_tol: f64) -> NullSpace {
    let n = l.matrix().nrows();
    let svd = SVD::new(l.matrix().clone(), true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cut = null_tol * sigma_max.max(1e-300);
    let zero: Vec<usize> = (0..n).filter(|&k| svd.singular_values[k] <= cut).collect();
    let right = DMatrix::from_fn(n, zero.len(), |r, c| v_t[(zero[c], r)].conj());
    let left = DMatrix::from_fn(n, zero.len(), |r, c| u[(r, zero[c])]);
    NullSpace { right, left }
}

/// Smallest-singular-value solve; errors unless the null space is one-dimensional.
fn null_space_solve(l: &Superoperator, null_tol: f64) -> Result<DensityMatrix> {
    let ns = null_space(l, null_tol);
    if ns.right.ncols() != 1 {
        return Err(Error::NonUniqueSteadyState {
            null_dim: ns.right.ncols(),
        });
    }
    normalize(&ns.right.column(0).into_owned(), l.dim())
}

fn trace_row(dim: usize) -> DVector<C64> {
    DVector::from_fn(dim * dim, |k, _| {
        if k % (dim + 1) == 0 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Least-squares solve of `[𝒟; tr] x = [0; 1]` via Householder QR.
fn trace_augmented_solve(l: &Superoperator, null_tol: f64) -> Result<DensityMatrix> {
    let d = l.dim();
    let n = d * d;
    let mut a = DMatrix::<C64>::zeros(n + 1, n);
    a.view_mut((0, 0), (n, n)).copy_from(l.matrix());
    a.row_mut(n).copy_from(&trace_row(d).transpose());
    let mut b = DVector::<C64>::zeros(n + 1);
    b[n] = C64::new(1.0, 0.0);

    let qr = a.qr();
    let r = qr.r();
    let diag_max = (0..n).map(|k| r[(k, k)].norm()).fold(0.0, f64::max);
    let deficient = (0..n)
        .filter(|&k| r[(k, k)].norm() <= null_tol * diag_max)
        .count();
    if deficient > 0 {
        return Err(Error::NonUniqueSteadyState {
            null_dim: deficient + 1,
        });
    }
    let qtb = qr.q().adjoint() * b;
    let x = r.solve_upper_triangular(&qtb).ok_or(Error::Convergence {
        residual: f64::INFINITY,
        tolerance: 0.0,
    })?;
    normalize(&x, d)
}

/// Long-time limit of `e^{t𝒟} ρ₀`, defined even when the null space is
/// degenerate: the zero eigenvalue of a Lindblad generator is semisimple,
/// so the limit is the spectral projection `R (Lᴴ R)⁻¹ Lᴴ vec(ρ₀)` built
/// from right and left null vectors.
pub fn asymptotic_state(l: &Superoperator, rho0: &DensityMatrix) -> Result<DensityMatrix> {
    let ns = null_space(l, NULL_TOL);
    if ns.right.ncols() == 0 {
        return Err(Error::NonUniqueSteadyState { null_dim: 0 });
    }
    let overlap = ns.left.adjoint() * &ns.right;
    let inv = overlap
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("zero eigenvalue is not semisimple".into()))?;
    let v = &ns.right * (inv * (ns.left.adjoint() * vec_op(rho0.operator())));
    check_residual(l, normalize(&v, l.dim())?, RESIDUAL_TOL)
}

/// Dimension of the numerical null space.
pub fn null_space_dim(l: &Superoperator) -> usize {
    null_space(l, NULL_TOL).right.ncols()
}

/// `‖𝒟 vec(ρ)‖₂`
pub fn steady_state_residual(l: &Superoperator, rho: &DensityMatrix) -> f64 {
    residual(l, rho)
}

/// Fixed-step classical RK4 for `d vec(ρ)/dt = 𝒟 vec(ρ)`.
pub fn evolve(
    rho0: &DensityMatrix,
    l: &Superoperator,
    t_final: f64,
    dt: f64,
) -> Result<DensityMatrix> {
    if !(dt > 0.0 && t_final > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need positive dt and t_final, got dt={dt}, t_final={t_final}"
        )));
    }
    if rho0.dim() != l.dim() {
        return Err(Error::DimensionMismatch {
            expected: l.dim(),
            found: rho0.dim(),
        });
    }
    let d = l.dim();
    let m = l.matrix();
    let steps = (t_final / dt).ceil() as usize;
    let h = t_final / steps as f64;
    let tr_idx: Vec<usize> = (0..d).map(|k| k * (d + 1)).collect();
    let trace = |v: &DVector<C64>| tr_idx.iter().map(|&i| v[i]).sum::<C64>();
    let half = C64::new(h / 2.0, 0.0);
    let full = C64::new(h, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let two = C64::new(2.0, 0.0);

    let mut v = vec_op(rho0.operator());
    for step in 0..steps {
        let k1 = m * &v;
        let k2 = m * (&v + &k1 * half);
        let k3 = m * (&v + &k2 * half);
        let k4 = m * (&v + &k3 * full);
        v += (k1 + k2 * two + k3 * two + k4) * sixth;
        if step % 64 == 0 || step + 1 == steps {
            let drift = (trace(&v) - C64::new(1.0, 0.0)).norm();
            if drift > TRACE_DRIFT_TOL || !drift.is_finite() {
                return Err(Error::Integration { drift });
            }
        }
    }
    DensityMatrix::new(unvec(&v, d).hermitian_part())
}

/// Integration horizon and step for [`evolve`]: the horizon covers 40
/// e-foldings of the slowest decaying mode (and at least `50/(κ ω_min)`),
/// the step keeps `‖𝒟‖₁ · dt ≤ 0.1`.
pub fn default_schedule(l: &Superoperator, kappa: f64, spec: &Spectrum) -> (f64, f64) {
    let w_min = spec.bohr_table.first().map(|c| c.freq).unwrap_or(1.0);
    let gap = liouvillian_gap(l);
    let mut t_final = 50.0 / (kappa * w_min);
    if gap > 0.0 {
        t_final = t_final.max(40.0 / gap);
    }
    let dt = 0.1 / l.norm_one().max(1e-12);
    (t_final, dt)
}

/// Smallest `|Re λ|` among the non-zero eigenvalues of `𝒟`.
pub fn liouvillian_gap(l: &Superoperator) -> f64 {
    let scale = l.norm_one().max(1e-300);
    l.eigenvalues()
        .iter()
        .filter(|z| z.norm() > 1e-9 * scale)
        .map(|z| z.re.abs())
        .fold(f64::INFINITY, f64::min)
}

/// `e^{−H/T} / Z`, evaluated in the eigenbasis with energies shifted by the
/// ground energy.
pub fn gibbs_state(h: &Operator, temperature: f64) -> Result<DensityMatrix> {
    if !(temperature > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "Gibbs state needs T > 0, got {temperature}"
        )));
    }
    let (energies, vecs) = eigh(h)?;
    let e0 = energies[0];
    let weights: Vec<f64> = energies
        .iter()
        .map(|e| (-(e - e0) / temperature).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let d = h.dim();
    let diag = DMatrix::from_fn(d, d, |r, c| {
        if r == c {
            C64::new(weights[r] / z, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    DensityMatrix::new(Operator::from_matrix(&vecs * diag * vecs.adjoint()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindblad::liouvillian;
    use crate::model::{build_hamiltonian, spectrum, Preset, SystemSpec, FREQ_TOL};

    fn two_cell(tl: f64, tr: f64) -> SystemSpec {
        let mut s = Preset::TwoCellFig2.base();
        s.bath_temps = vec![tl, tr];
        s
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(Operator::diagonal(&[0.5, 0.5])).is_ok());
        assert!(DensityMatrix::new(Operator::diagonal(&[0.6, 0.5])).is_err());
        assert!(DensityMatrix::new(Operator::diagonal(&[1.1, -0.1])).is_err());
        assert!(DensityMatrix::new(Operator::diagonal(&[1.0 + 5e-9, -5e-9])).is_ok());
        assert!(DensityMatrix::new(Operator::diagonal(&[1.0 + 5e-8, -5e-8])).is_err());
        let lopsided = Operator::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]);
        assert!(DensityMatrix::new(lopsided).is_err());
    }

    #[test]
    fn zero_temperature_relaxes_to_ground_state() {
        for sys in [two_cell(0.0, 0.0), Preset::ThreeCellFig4.base()] {
            let h = build_hamiltonian(&sys).unwrap();
            let rho = steady_state(&liouvillian(&sys).unwrap()).unwrap();
            let g = DensityMatrix::ground_state(&h).unwrap();
            assert!(rho.trace_distance(&g) < 1e-8);
        }
    }

    #[test]
    fn equal_temperatures_give_gibbs() {
        let mut sys = Preset::ThreeCellFig4.base();
        sys.bath_temps = vec![0.5; 3];
        let h = build_hamiltonian(&sys).unwrap();
        let rho = steady_state(&liouvillian(&sys).unwrap()).unwrap();
        assert!(rho.trace_distance(&gibbs_state(&h, 0.5).unwrap()) < 1e-6);
    }

    #[test]
    fn nonequilibrium_two_cell_state_is_diagonal() {
        let rho = steady_state(&liouvillian(&two_cell(1.0, 0.0)).unwrap()).unwrap();
        assert!(rho.operator().off_diagonal_norm() < 1e-10);
    }

    #[test]
    fn backends_agree() {
        for sys in [
            two_cell(1.0, 0.0),
            two_cell(0.3, 1.7),
            Preset::ThreeCellFig6.base(),
        ] {
            let l = liouvillian(&sys).unwrap();
            let a = steady_state(&l).unwrap();
            let b = steady_state_with(
                &l,
                &SolverOptions {
                    backend: Backend::TraceAugmented,
                    ..Default::default()
                },
            )
            .unwrap();
            assert!((a.operator() - b.operator()).frobenius_norm() < 1e-9);
        }
    }

    #[test]
    fn degenerate_null_space_is_an_error() {
        let big = two_cell(0.5, 0.2).as_three_qubit().unwrap();
        let l = liouvillian(&big).unwrap();
        assert_eq!(null_space_dim(&l), 4);
        match steady_state(&l) {
            Err(Error::NonUniqueSteadyState { null_dim }) => assert_eq!(null_dim, 4),
            other => panic!("expected non-unique error, got {other:?}"),
        }
        let opts = SolverOptions {
            backend: Backend::TraceAugmented,
            ..Default::default()
        };
        assert!(matches!(
            steady_state_with(&l, &opts),
            Err(Error::NonUniqueSteadyState { .. })
        ));
    }

    #[test]
    fn asymptotic_state_matches_integration_on_degenerate_generator() {
        let big = two_cell(0.5, 0.2).as_three_qubit().unwrap();
        let l = liouvillian(&big).unwrap();
        let rho0 = DensityMatrix::basis_state(8, 0);
        let proj = asymptotic_state(&l, &rho0).unwrap();
        let h = build_hamiltonian(&big).unwrap();
        let spec = spectrum(&h, FREQ_TOL).unwrap();
        let (t, dt) = default_schedule(&l, big.kappa, &spec);
        let evolved = evolve(&rho0, &l, t, dt).unwrap();
        assert!((proj.operator() - evolved.operator()).frobenius_norm() < 1e-6);
    }

    #[test]
    fn evolve_keeps_fixed_point() {
        let l = liouvillian(&two_cell(0.8, 0.1)).unwrap();
        let rho = steady_state(&l).unwrap();
        let out = evolve(&rho, &l, 37.0, 0.05).unwrap();
        assert!((out.operator() - rho.operator()).frobenius_norm() < 1e-9);
    }

    #[test]
    fn evolve_from_different_starts_converges() {
        let sys = two_cell(1.0, 0.0);
        let l = liouvillian(&sys).unwrap();
        // 500/(κω)
        let t = 500.0 / sys.kappa;
        let dt = 0.1 / l.norm_one();
        let a = evolve(&DensityMatrix::basis_state(4, 0), &l, t, dt).unwrap();
        let b = evolve(&DensityMatrix::maximally_mixed(4), &l, t, dt).unwrap();
        assert!((a.operator() - b.operator()).frobenius_norm() < 1e-6);
    }

    #[test]
    fn evolve_detects_runaway_step() {
        let l = liouvillian(&two_cell(3.0, 0.0)).unwrap().scale(100.0);
        let r = evolve(&DensityMatrix::basis_state(4, 0), &l, 100.0, 10.0);
        assert!(matches!(r, Err(Error::Integration { .. })));
        assert!(evolve(&DensityMatrix::basis_state(4, 0), &l, 1.0, 0.0).is_err());
    }

    #[test]
    fn gibbs_limits() {
        let h = build_hamiltonian(&Preset::ThreeCellFig4.base()).unwrap();
        let hot = gibbs_state(&h, 1e6).unwrap();
        let flat = DensityMatrix::maximally_mixed(8);
        assert!((hot.operator() - flat.operator()).frobenius_norm() < 1e-5);

        let q = Operator::diagonal(&[0.5, -0.5]);
        let g = gibbs_state(&q, 1.0).unwrap();
        let ratio = g.operator().get(0, 0).re / g.operator().get(1, 1).re;
        assert!((ratio - (-1.0_f64).exp()).abs() < 1e-14);
        assert!((ratio - 0.3679).abs() < 1e-4);

        assert!(gibbs_state(&q, 0.0).is_err());
        assert!(gibbs_state(&q, -1.0).is_err());
    }

    #[test]
    fn trace_distance_of_orthogonal_states_is_one() {
        let a = DensityMatrix::basis_state(4, 0);
        let b = DensityMatrix::basis_state(4, 3);
        assert!((a.trace_distance(&b) - 1.0).abs() < 1e-14);
        assert!(a.trace_distance(&a) < 1e-15);
    }
}
