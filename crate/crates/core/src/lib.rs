//! Nonequilibrium steady states and ergotropy of small coupled-qubit
//! batteries, each cell attached to its own thermal reservoir.
//!
//! The pipeline for one parameter point is
//! [`model::build_hamiltonian`] → [`lindblad::liouvillian`] →
//! [`steady_state::steady_state`] → [`ergotropy::ergotropy`];
//! [`harness`] runs it over grids and writes CSV tables and gnuplot scripts.

pub mod ergotropy;
pub mod error;
pub mod harness;
pub mod lindblad;
pub mod model;
pub mod spin_ops;
pub mod steady_state;

pub use ergotropy::{ergotropy, internal_energy, passive_state, ErgotropyReport};
pub use error::{Error, Result};
pub use lindblad::{liouvillian, Superoperator};
pub use model::{build_hamiltonian, preset, spectrum, Param, Preset, Spectrum, SystemSpec};
pub use spin_ops::{Operator, C64};
pub use steady_state::{evolve, gibbs_state, steady_state, DensityMatrix};
