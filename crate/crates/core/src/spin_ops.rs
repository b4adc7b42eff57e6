//! Dense complex operators on small multi-qubit Hilbert spaces.
//!
//! Basis ordering: the leftmost tensor factor is cell L, and for each qubit
//! index 0 is spin up (`σ_z |↑⟩ = +|↑⟩`). With three cells this makes
//! `|↑↑↑⟩` index 0 and `|↓↓↓⟩` index 7.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Tolerance used when an operator is required to be Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense complex square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator(DMatrix<C64>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Operator {
    /// Wraps a square matrix. Panics if `m` is not square.
    pub fn from_matrix(m: DMatrix<C64>) -> Self {
        assert!(m.is_square(), "operator must be square");
        Self(m)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let d = rows.len();
        Self::from_matrix(DMatrix::from_fn(d, d, |r, c| C64::new(rows[r][c], 0.0)))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let d = entries.len();
        Self(DMatrix::from_fn(d, d, |r, c| {
            if r == c {
                C64::new(entries[r], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }

    /// `|a⟩⟨b|` on a `dim`-dimensional space.
    pub fn basis_projector(dim: usize, a: usize, b: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(a, b)] = C64::new(1.0, 0.0);
        Self(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|z| z.conj()))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    /// Largest `|A_jk - conj(A_kj)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0_f64;
        for r in 0..d {
            for c in r..d {
                worst = worst.max((self.0[(r, c)] - self.0[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `(A + A†) / 2`
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        Self(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    /// Spectral (largest singular value) norm.
    pub fn op_norm(&self) -> f64 {
        self.0
            .clone()
            .singular_values()
            .iter()
            .cloned()
            .fold(0.0, f64::max)
    }

    /// Norm of the strictly off-diagonal part.
    pub fn off_diagonal_norm(&self) -> f64 {
        let d = self.dim();
        let mut acc = 0.0;
        for r in 0..d {
            for c in 0..d {
                if r != c {
                    acc += self.0[(r, c)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let d = self.dim();
        (0..d)
            .map(|r| (0..d).map(|c| self.0[(r, c)] * v[c]).sum())
            .collect()
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        Operator(&self.0 * &rhs.0)
    }
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        Operator(&self.0 + &rhs.0)
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        Operator(&self.0 - &rhs.0)
    }
}

pub fn pauli(axis: Axis) -> Operator {
    let o = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let entries = match axis {
        Axis::X => [o, one, one, o],
        Axis::Y => [o, -i, i, o],
        Axis::Z => [one, o, o, -one],
    };
    Operator(DMatrix::from_row_slice(2, 2, &entries))
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Operator, b: &Operator) -> Operator {
    Operator(a.0.kronecker(&b.0))
}

/// Places a single-qubit operator at `site` in an `n_sites` register,
/// `I ⊗ … ⊗ op ⊗ … ⊗ I`, with site 0 as the leftmost factor.
pub fn embed(op: &Operator, site: usize, n_sites: usize) -> Result<Operator> {
    if op.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: op.dim(),
        });
    }
    if !(1..=3).contains(&n_sites) {
        return Err(Error::InvalidArgument(format!(
            "register size {n_sites} outside 1..=3"
        )));
    }
    if site >= n_sites {
        return Err(Error::InvalidArgument(format!(
            "site {site} out of range for {n_sites} sites"
        )));
    }
    let id = Operator::identity(2);
    let mut out = Operator::identity(1);
    for s in 0..n_sites {
        out = kron(&out, if s == site { op } else { &id });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Operator, b: &Operator, tol: f64) -> bool {
        (a - b).frobenius_norm() < tol
    }

    #[test]
    fn pauli_matrices() {
        assert_eq!(pauli(Axis::Z), Operator::diagonal(&[1.0, -1.0]));
        assert_eq!(
            pauli(Axis::X),
            Operator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
        );
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let p = pauli(axis);
            assert!(p.is_hermitian(0.0));
            assert_eq!(p.trace(), C64::new(0.0, 0.0));
            assert!(close(&(&p * &p), &Operator::identity(2), 1e-15));
        }
    }

    #[test]
    fn embed_z_two_sites() {
        let z = pauli(Axis::Z);
        assert_eq!(
            embed(&z, 0, 2).unwrap(),
            Operator::diagonal(&[1.0, 1.0, -1.0, -1.0])
        );
        assert_eq!(
            embed(&z, 1, 2).unwrap(),
            Operator::diagonal(&[1.0, -1.0, 1.0, -1.0])
        );
    }

    #[test]
    fn embed_x_flips_last_spin() {
        let x3 = embed(&pauli(Axis::X), 2, 3).unwrap();
        let mut up3 = vec![C64::new(0.0, 0.0); 8];
        up3[0] = C64::new(1.0, 0.0);
        let out = x3.apply(&up3);
        // |↑↑↓⟩ is index 1
        for (k, z) in out.iter().enumerate() {
            let want = if k == 1 { 1.0 } else { 0.0 };
            assert_eq!(*z, C64::new(want, 0.0));
        }
    }

    #[test]
    fn embed_rejects_bad_site() {
        assert!(matches!(
            embed(&pauli(Axis::Z), 2, 2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(embed(&Operator::identity(4), 0, 2).is_err());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            kron(&Operator::identity(2), &Operator::identity(2)),
            Operator::identity(4)
        );
        let z = pauli(Axis::Z);
        assert_eq!(kron(&z, &z), Operator::diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn embedded_ops_on_different_sites_commute() {
        let ops = [pauli(Axis::X), pauli(Axis::Y), pauli(Axis::Z)];
        for n in 2..=3 {
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for a in &ops {
                        for b in &ops {
                            let c = embed(a, i, n).unwrap().commutator(&embed(b, j, n).unwrap());
                            assert!(c.op_norm() < 1e-12);
                        }
                    }
                }
            }
        }
    }
}
