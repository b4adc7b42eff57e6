//! Physical parameters, the Ising-type cell Hamiltonian and its spectrum.
//!
//! Units: `ħ = k_B = 1`, energies and temperatures measured in units of the
//! bare cell frequency (so the presets all use `ω = 1`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spin_ops::{embed, pauli, Axis, Operator, C64, HERMITIAN_TOL};

/// Default absolute tolerance for grouping Bohr frequencies.
pub const FREQ_TOL: f64 = 1e-9;

/// Default Ohmic constant.
pub const DEFAULT_KAPPA: f64 = 0.05;

/// Coupling used by the two-cell presets when none is given.
pub const ASSUMED_LAMBDA_LR: f64 = 0.1;

/// Cell labels in register order.
pub fn cell_labels(n_cells: usize) -> &'static [&'static str] {
    match n_cells {
        2 => &["L", "R"],
        _ => &["L", "M", "R"],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub n_cells: usize,
    /// Transition frequency of each cell.
    pub omega: Vec<f64>,
    /// Pair couplings keyed by `(i, j)` with `i < j`.
    pub lambda: BTreeMap<(usize, usize), f64>,
    /// Bath temperature of each cell.
    pub bath_temps: Vec<f64>,
    pub kappa: f64,
}

/// A settable scalar of [`SystemSpec`], addressed by name (`T_L`,
/// `omega_M`, `lambda_LR`, `kappa`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Omega(usize),
    Lambda(usize, usize),
    Temp(usize),
    Kappa,
}

fn site_index(label: &str) -> Option<usize> {
    match label {
        "L" => Some(0),
        "M" => Some(1),
        "R" => Some(2),
        _ => None,
    }
}

impl FromStr for Param {
    type Err = Error;

    /// Parses a path in three-cell numbering (L=0, M=1, R=2).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownParameter(s.to_string());
        if s == "kappa" {
            return Ok(Param::Kappa);
        }
        let (head, tail) = s.split_once('_').ok_or_else(bad)?;
        match head {
            "T" => site_index(tail).map(Param::Temp).ok_or_else(bad),
            "omega" => site_index(tail).map(Param::Omega).ok_or_else(bad),
            "lambda" => {
                let mut chars = tail.chars();
                let (a, b) = match (chars.next(), chars.next(), chars.next()) {
                    (Some(a), Some(b), None) => (a, b),
                    _ => return Err(bad()),
                };
                let a = site_index(&a.to_string()).ok_or_else(bad)?;
                let b = site_index(&b.to_string()).ok_or_else(bad)?;
                if a == b {
                    return Err(bad());
                }
                Ok(Param::Lambda(a.min(b), a.max(b)))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = ["L", "M", "R"];
        match *self {
            Param::Omega(i) => write!(f, "omega_{}", l[i]),
            Param::Temp(i) => write!(f, "T_{}", l[i]),
            Param::Lambda(i, j) => write!(f, "lambda_{}{}", l[i], l[j]),
            Param::Kappa => write!(f, "kappa"),
        }
    }
}

impl SystemSpec {
    /// Identical cells with uniform coupling between every pair.
    pub fn uniform(n_cells: usize, omega: f64, lambda: f64, temps: &[f64]) -> Self {
        let mut couplings = BTreeMap::new();
        for i in 0..n_cells {
            for j in (i + 1)..n_cells {
                couplings.insert((i, j), lambda);
            }
        }
        Self {
            n_cells,
            omega: vec![omega; n_cells],
            lambda: couplings,
            bath_temps: temps.to_vec(),
            kappa: DEFAULT_KAPPA,
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_cells
    }

    pub fn coupling(&self, i: usize, j: usize) -> f64 {
        self.lambda
            .get(&(i.min(j), i.max(j)))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(2..=3).contains(&self.n_cells) {
            return bad(format!("n_cells must be 2 or 3, got {}", self.n_cells));
        }
        if self.omega.len() != self.n_cells || self.bath_temps.len() != self.n_cells {
            return bad("omega and bath_temps must have one entry per cell".into());
        }
        // a zero frequency marks an inactive cell
        if let Some(w) = self.omega.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return bad(format!("cell frequency must be non-negative, got {w}"));
        }
        if let Some(t) = self
            .bath_temps
            .iter()
            .find(|t| !(**t >= 0.0 && t.is_finite()))
        {
            return bad(format!("bath temperature must be non-negative, got {t}"));
        }
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return bad(format!("kappa must be positive, got {}", self.kappa));
        }
        for (&(i, j), l) in &self.lambda {
            if i >= j || j >= self.n_cells {
                return bad(format!(
                    "coupling key ({i}, {j}) is not an ordered cell pair"
                ));
            }
            if !l.is_finite() {
                return bad(format!("coupling ({i}, {j}) is not finite"));
            }
        }
        Ok(())
    }

    /// Maps a three-cell-numbered parameter onto this spec's register.
    /// Returns `None` for parameters that only exist on the absent M cell.
    fn local(&self, p: Param) -> Option<Param> {
        if self.n_cells == 3 {
            return Some(p);
        }
        let map = |i: usize| match i {
            0 => Some(0),
            2 => Some(1),
            _ => None,
        };
        Some(match p {
            Param::Kappa => Param::Kappa,
            Param::Omega(i) => Param::Omega(map(i)?),
            Param::Temp(i) => Param::Temp(map(i)?),
            Param::Lambda(i, j) => Param::Lambda(map(i)?, map(j)?),
        })
    }

    pub fn get(&self, p: Param) -> Result<f64> {
        match self.local(p) {
            Some(Param::Kappa) => Ok(self.kappa),
            Some(Param::Omega(i)) => Ok(self.omega[i]),
            Some(Param::Temp(i)) => Ok(self.bath_temps[i]),
            Some(Param::Lambda(i, j)) => Ok(self.coupling(i, j)),
            // the two-cell model is the three-cell one with M switched off
            None if matches!(p, Param::Omega(1) | Param::Lambda(..)) => Ok(0.0),
            None => Err(Error::UnknownParameter(p.to_string())),
        }
    }

    /// Sets a parameter. On a two-cell spec the M-cell quantities
    /// `omega_M`, `lambda_LM` and `lambda_MR` may only be set to zero, which
    /// is what the two-cell reduction already means.
    pub fn set(&mut self, p: Param, value: f64) -> Result<()> {
        match self.local(p) {
            Some(Param::Kappa) => self.kappa = value,
            Some(Param::Omega(i)) => self.omega[i] = value,
            Some(Param::Temp(i)) => self.bath_temps[i] = value,
            Some(Param::Lambda(i, j)) => {
                self.lambda.insert((i, j), value);
            }
            None if value == 0.0 && matches!(p, Param::Omega(1) | Param::Lambda(..)) => {}
            None => return Err(Error::UnknownParameter(p.to_string())),
        }
        Ok(())
    }

    pub fn set_path(&mut self, path: &str, value: f64) -> Result<()> {
        self.set(path.parse()?, value)
    }

    /// The same two-cell battery written as a three-qubit register with a
    /// detached zero-frequency middle qubit. The middle qubit's bath never
    /// acts (all its transitions have zero frequency), so its temperature
    /// is irrelevant; it is set to zero.
    pub fn as_three_qubit(&self) -> Result<SystemSpec> {
        if self.n_cells != 2 {
            return Err(Error::InvalidArgument(
                "only two-cell specs can be embedded".into(),
            ));
        }
        let mut lambda = BTreeMap::new();
        lambda.insert((0, 1), 0.0);
        lambda.insert((1, 2), 0.0);
        lambda.insert((0, 2), self.coupling(0, 1));
        Ok(SystemSpec {
            n_cells: 3,
            omega: vec![self.omega[0], 0.0, self.omega[1]],
            lambda,
            bath_temps: vec![self.bath_temps[0], 0.0, self.bath_temps[1]],
            kappa: self.kappa,
        })
    }
}

/// `H = Σ_i (ω_i/2) σ_z^i + Σ_{i<j} (λ_ij/2) σ_z^i σ_z^j`.
pub fn build_hamiltonian(spec: &SystemSpec) -> Result<Operator> {
    spec.validate()?;
    let n = spec.n_cells;
    let z = pauli(Axis::Z);
    let zs: Vec<Operator> = (0..n).map(|i| embed(&z, i, n).expect("site < n")).collect();
    let mut h = Operator::zeros(1 << n);
    for (i, zi) in zs.iter().enumerate() {
        h = &h + &zi.scale(spec.omega[i] / 2.0);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let l = spec.coupling(i, j);
            if l != 0.0 {
                h = &h + &(&zs[i] * &zs[j]).scale(l / 2.0);
            }
        }
    }
    Ok(h)
}

/// One positive Bohr frequency and every ordered eigenpair `(k, m)` with
/// `ε_k − ε_m` equal to it (within the grouping tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct BohrClass {
    pub freq: f64,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Ascending eigenvalues.
    pub energies: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `energies`.
    pub states: DMatrix<C64>,
    pub bohr_table: Vec<BohrClass>,
    pub freq_tol: f64,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn class(&self, omega: f64) -> Option<&BohrClass> {
        self.bohr_table
            .iter()
            .find(|c| (c.freq - omega).abs() <= self.freq_tol)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.bohr_table.iter().map(|c| c.freq).collect()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// `V† A V`: an operator expressed in the energy eigenbasis.
    pub fn to_eigenbasis(&self, op: &Operator) -> Operator {
        Operator::from_matrix(self.states.adjoint() * op.matrix() * &self.states)
    }

    /// `V A V†`: back to the computational basis.
    pub fn from_eigenbasis(&self, op: &Operator) -> Operator {
        Operator::from_matrix(&self.states * op.matrix() * self.states.adjoint())
    }
}

/// Hermitian eigendecomposition sorted by ascending eigenvalue.
pub fn eigh(op: &Operator) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let deviation = op.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::new(op.hermitian_part().into_matrix());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(op.dim(), op.dim(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

pub fn spectrum(h: &Operator, freq_tol: f64) -> Result<Spectrum> {
    let (energies, states) = eigh(h)?;
    let d = energies.len();
    let mut gaps: Vec<(f64, usize, usize)> = Vec::new();
    for k in 0..d {
        for m in 0..d {
            let gap = energies[k] - energies[m];
            if gap > freq_tol {
                gaps.push((gap, k, m));
            }
        }
    }
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));

    // single-linkage grouping of sorted gaps
    let mut groups: Vec<Vec<(f64, usize, usize)>> = Vec::new();
    for g in gaps {
        match groups.last_mut() {
            Some(last) if g.0 - last.last().unwrap().0 <= freq_tol => last.push(g),
            _ => groups.push(vec![g]),
        }
    }
    let bohr_table = groups
        .into_iter()
        .map(|grp| BohrClass {
            freq: grp.iter().map(|g| g.0).sum::<f64>() / grp.len() as f64,
            pairs: grp.iter().map(|g| (g.1, g.2)).collect(),
        })
        .collect();

    Ok(Spectrum {
        energies,
        states,
        bohr_table,
        freq_tol,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    TwoCellFig2,
    ThreeCellFig4,
    ThreeCellFig6,
}

impl Preset {
    pub const ALL: [Preset; 3] = [
        Preset::TwoCellFig2,
        Preset::ThreeCellFig4,
        Preset::ThreeCellFig6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::TwoCellFig2 => "two_cell_fig2",
            Preset::ThreeCellFig4 => "three_cell_fig4",
            Preset::ThreeCellFig6 => "three_cell_fig6",
        }
    }

    pub fn base(self) -> SystemSpec {
        match self {
            Preset::TwoCellFig2 => SystemSpec::uniform(2, 1.0, ASSUMED_LAMBDA_LR, &[0.0, 0.0]),
            Preset::ThreeCellFig4 => SystemSpec::uniform(3, 1.0, 0.1, &[0.0, 0.0, 0.0]),
            Preset::ThreeCellFig6 => SystemSpec::uniform(3, 1.0, 0.1, &[1.0, 0.0, 0.0]),
        }
    }
}

impl FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Preset parameters with named overrides applied in order.
pub fn preset(name: Preset, overrides: &[(Param, f64)]) -> Result<SystemSpec> {
    let mut spec = name.base();
    for &(p, v) in overrides {
        spec.set(p, v)?;
    }
    spec.validate()?;
    Ok(spec)
}
