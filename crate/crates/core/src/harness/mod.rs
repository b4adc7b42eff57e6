//! Parameter sweeps over the steady-state ergotropy.
//!
//! A [`SweepConfig`] names a preset, a list of grid axes (each driving one or
//! more parameters in lockstep) and fixed overrides. [`run_sweep`] evaluates
//! every grid point independently and returns rows in row-major axis order
//! (first axis slowest). Points that fail to solve become error rows.

mod figures;
mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ergotropy::ergotropy;
use crate::error::{Error, Result};
use crate::lindblad::liouvillian_with_tol;
use crate::model::{build_hamiltonian, Param, Preset, SystemSpec, DEFAULT_KAPPA, FREQ_TOL};
use crate::steady_state::{
    steady_state_residual, steady_state_with, Backend, DensityMatrix, SolverOptions, NULL_TOL,
    POSITIVITY_TOL, RESIDUAL_TOL,
};

pub use figures::{figure_config, Figure, DEFAULT_POINTS, FIG6_POINTS};
pub use output::{
    emit_csv, emit_plot_script, format_float, render_csv, render_plot_script, PlotLayout,
    VALUE_COLUMNS,
};

pub const ENGINE: &str = concat!("qbattery ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Range { min: f64, max: f64, points: usize },
    Values { values: Vec<f64> },
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match self {
            Grid::Range { min, max, points } => {
                let n = *points;
                (0..n)
                    .map(|k| {
                        if k + 1 == n {
                            *max
                        } else {
                            min + (max - min) * k as f64 / (n - 1) as f64
                        }
                    })
                    .collect()
            }
            Grid::Values { values } => values.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Grid::Range { points, .. } => *points,
            Grid::Values { values } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_range(&self) -> bool {
        matches!(self, Grid::Range { .. })
    }
}

/// One grid axis. Several targets make a tied axis: every target receives
/// the same value at each point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub targets: Vec<String>,
    #[serde(flatten)]
    pub grid: Grid,
}

impl SweepAxis {
    pub fn range(target: &str, min: f64, max: f64, points: usize) -> Self {
        Self {
            name: None,
            targets: vec![target.to_string()],
            grid: Grid::Range { min, max, points },
        }
    }

    pub fn values(target: &str, values: &[f64]) -> Self {
        Self {
            name: None,
            targets: vec![target.to_string()],
            grid: Grid::Values {
                values: values.to_vec(),
            },
        }
    }

    /// Column label: the explicit name, else the targets joined by `=`.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.targets.join("="))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverSettings {
    pub freq_tol: f64,
    pub residual_tol: f64,
    pub null_tol: f64,
    pub kappa: f64,
    pub backend: Backend,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            freq_tol: FREQ_TOL,
            residual_tol: RESIDUAL_TOL,
            null_tol: NULL_TOL,
            kappa: DEFAULT_KAPPA,
            backend: Backend::NullSpace,
        }
    }
}

impl SolverSettings {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            backend: self.backend,
            residual_tol: self.residual_tol,
            null_tol: self.null_tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Label used for output file names and metadata.
    #[serde(default = "default_name")]
    pub name: String,
    pub preset: Preset,
    pub axes: Vec<SweepAxis>,
    #[serde(default)]
    pub overrides: BTreeMap<String, f64>,
    /// CSV destination; the plot script goes next to it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub solver: SolverSettings,
    /// Extra `key=value` metadata lines.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
}

fn default_name() -> String {
    "sweep".to_string()
}

/// Partial config merged into a built-in figure config.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPatch {
    #[serde(default)]
    pub overrides: BTreeMap<String, f64>,
    #[serde(default)]
    pub solver: Option<SolverSettings>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SweepConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_patch(&mut self, patch: ConfigPatch) {
        self.overrides.extend(patch.overrides);
        if let Some(s) = patch.solver {
            self.solver = s;
        }
    }

    /// Resets the point count of every range axis.
    pub fn set_points(&mut self, n: usize) {
        for axis in &mut self.axes {
            if let Grid::Range { points, .. } = &mut axis.grid {
                *points = n;
            }
        }
    }

    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.grid.len()).product()
    }

    fn resolved_axes(&self) -> Result<Vec<Vec<Param>>> {
        self.axes
            .iter()
            .map(|a| a.targets.iter().map(|t| t.parse()).collect())
            .collect()
    }

    fn base_spec(&self) -> Result<SystemSpec> {
        let mut spec = self.preset.base();
        spec.kappa = self.solver.kappa;
        for (path, &v) in &self.overrides {
            spec.set_path(path, v)?;
        }
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.axes.is_empty() {
            return cfg("at least one axis is required".into());
        }
        let s = &self.solver;
        if !(s.freq_tol > 0.0 && s.residual_tol > 0.0 && s.null_tol > 0.0 && s.kappa > 0.0) {
            return cfg("solver tolerances and kappa must be positive".into());
        }
        let base = self.base_spec()?;
        let params = self.resolved_axes()?;
        for (axis, targets) in self.axes.iter().zip(&params) {
            if targets.is_empty() {
                return cfg(format!("axis `{}` has no targets", axis.label()));
            }
            match &axis.grid {
                Grid::Range { min, max, points } => {
                    if *points < 2 {
                        return cfg(format!("axis `{}` needs at least 2 points", axis.label()));
                    }
                    if !(min < max) {
                        return cfg(format!("axis `{}` needs min < max", axis.label()));
                    }
                }
                Grid::Values { values } => {
                    if values.is_empty() {
                        return cfg(format!("axis `{}` has no values", axis.label()));
                    }
                }
            }
            for &p in targets {
                for v in axis.grid.points() {
                    let mut probe = base.clone();
                    probe.set(p, v)?;
                    probe.validate()?;
                }
            }
        }
        base.validate()
    }

    /// True when the two-cell coupling is the built-in guess rather than a
    /// user choice.
    pub fn lambda_lr_assumed(&self) -> bool {
        let is_lr = |p: &str| matches!(p.parse::<Param>(), Ok(Param::Lambda(0, 2)));
        self.preset == Preset::TwoCellFig2
            && !self.overrides.keys().any(|k| is_lr(k))
            && !self.axes.iter().flat_map(|a| &a.targets).any(|t| is_lr(t))
    }

    /// Every grid point in row-major order, as axis values.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let mut rows: Vec<Vec<f64>> = vec![Vec::new()];
        for axis in &self.axes {
            let pts = axis.grid.points();
            rows = rows
                .into_iter()
                .flat_map(|prefix| {
                    pts.iter().map(move |&v| {
                        let mut r = prefix.clone();
                        r.push(v);
                        r
                    })
                })
                .collect();
        }
        rows
    }
}

/// Diagnostics for one solved grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub ergotropy: f64,
    pub internal_energy: f64,
    pub residual: f64,
    pub min_eig: f64,
    pub clamped_mass: f64,
}

/// Hamiltonian → Liouvillian → steady state → ergotropy for one spec.
pub fn evaluate_point(spec: &SystemSpec, settings: &SolverSettings) -> Result<PointResult> {
    let (rho, residual) = solve_point(spec, settings)?;
    let h = build_hamiltonian(spec)?;
    let report = ergotropy(&rho, &h)?;
    Ok(PointResult {
        ergotropy: report.ergotropy,
        internal_energy: report.internal_energy,
        residual,
        min_eig: rho.min_eigenvalue(),
        clamped_mass: report.clamped_mass,
    })
}

/// Steady state of `spec` and its residual norm.
pub fn solve_point(spec: &SystemSpec, settings: &SolverSettings) -> Result<(DensityMatrix, f64)> {
    let l = liouvillian_with_tol(spec, settings.freq_tol)?;
    let rho = steady_state_with(&l, &settings.options())?;
    let r = steady_state_residual(&l, &rho);
    Ok((rho, r))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub params: Vec<f64>,
    pub outcome: std::result::Result<PointResult, String>,
}

impl SweepRow {
    pub fn is_error(&self) -> bool {
        self.outcome.is_err()
    }

    pub fn ergotropy(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|p| p.ergotropy)
    }
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub metadata: Vec<(String, String)>,
}

impl SweepResult {
    pub fn error_count(&self) -> usize {
        self.rows.iter().filter(|r| r.is_error()).count()
    }

    /// Rows whose axis `axis` equals `value`.
    pub fn select(&self, axis: usize, value: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows
            .iter()
            .filter(move |r| (r.params[axis] - value).abs() < 1e-12)
    }
}

fn evaluate_row(
    base: &SystemSpec,
    axes: &[Vec<Param>],
    values: &[f64],
    settings: &SolverSettings,
) -> SweepRow {
    let mut spec = base.clone();
    let outcome = axes
        .iter()
        .zip(values)
        .try_for_each(|(targets, &v)| targets.iter().try_for_each(|&p| spec.set(p, v)))
        .and_then(|_| evaluate_point(&spec, settings))
        .and_then(|p| {
            if p.residual >= settings.residual_tol {
                Err(Error::Convergence {
                    residual: p.residual,
                    tolerance: settings.residual_tol,
                })
            } else if p.min_eig < -POSITIVITY_TOL {
                Err(Error::InvalidDensityMatrix(format!(
                    "min eigenvalue {:e}",
                    p.min_eig
                )))
            } else {
                Ok(p)
            }
        })
        .map_err(|e| e.to_string());
    SweepRow {
        params: values.to_vec(),
        outcome,
    }
}

/// Runs the sweep on rayon's global pool.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    run_sweep_with(config, None)
}

/// Runs the sweep on `workers` threads (`Some(1)` is fully sequential).
/// Row order never depends on the worker count.
pub fn run_sweep_with(config: &SweepConfig, workers: Option<usize>) -> Result<SweepResult> {
    config.validate()?;
    let base = config.base_spec()?;
    let axes = config.resolved_axes()?;
    let grid = config.grid();
    let settings = &config.solver;

    let rows: Vec<SweepRow> = match workers {
        Some(1) => grid
            .iter()
            .map(|v| evaluate_row(&base, &axes, v, settings))
            .collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("worker pool: {e}")))?
            .install(|| {
                grid.par_iter()
                    .map(|v| evaluate_row(&base, &axes, v, settings))
                    .collect()
            }),
        None => grid
            .par_iter()
            .map(|v| evaluate_row(&base, &axes, v, settings))
            .collect(),
    };

    let mut metadata = vec![
        ("engine".to_string(), ENGINE.to_string()),
        ("name".to_string(), config.name.clone()),
        ("preset".to_string(), config.preset.to_string()),
        ("kappa".to_string(), format_float(settings.kappa)),
        ("freq_tol".to_string(), format_float(settings.freq_tol)),
        (
            "residual_tol".to_string(),
            format_float(settings.residual_tol),
        ),
        ("null_tol".to_string(), format_float(settings.null_tol)),
        ("positivity_tol".to_string(), format_float(POSITIVITY_TOL)),
        (
            "backend".to_string(),
            match settings.backend {
                Backend::NullSpace => "null_space".to_string(),
                Backend::TraceAugmented => "trace_augmented".to_string(),
            },
        ),
        ("units".to_string(), "hbar=k_B=1, omega=1".to_string()),
        (
            "hamiltonian".to_string(),
            "sum_i omega_i/2 sz_i + sum_{i<j} lambda_ij/2 sz_i sz_j".to_string(),
        ),
        (
            "lambda_LR_assumed".to_string(),
            config.lambda_lr_assumed().to_string(),
        ),
    ];
    for (path, v) in &config.overrides {
        metadata.push((format!("override.{path}"), format_float(*v)));
    }
    for axis in &config.axes {
        let desc = match &axis.grid {
            Grid::Range { min, max, points } => format!(
                "range({},{},{})",
                format_float(*min),
                format_float(*max),
                points
            ),
            Grid::Values { values } => format!(
                "values({})",
                values
                    .iter()
                    .map(|v| format_float(*v))
                    .collect::<Vec<_>>()
                    .join(";")
            ),
        };
        metadata.push((
            format!("axis.{}", axis.label()),
            format!("{} -> {}", desc, axis.targets.join(";")),
        ));
    }
    for (k, v) in &config.notes {
        metadata.push((k.clone(), v.clone()));
    }
    let errors = rows.iter().filter(|r| r.is_error()).count();
    metadata.push(("rows".to_string(), rows.len().to_string()));
    metadata.push(("error_rows".to_string(), errors.to_string()));

    Ok(SweepResult {
        columns: config.axes.iter().map(|a| a.label()).collect(),
        config: config.clone(),
        rows,
        metadata,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SweepConfig {
        SweepConfig {
            name: "tiny".into(),
            preset: Preset::TwoCellFig2,
            axes: vec![
                SweepAxis::values("T_R", &[0.25, 0.5]),
                SweepAxis::range("T_L", 0.0, 1.0, 3),
            ],
            overrides: BTreeMap::new(),
            output: None,
            solver: SolverSettings::default(),
            notes: BTreeMap::new(),
        }
    }

    #[test]
    fn grid_is_row_major() {
        let g = tiny().grid();
        assert_eq!(
            g,
            vec![
                vec![0.25, 0.0],
                vec![0.25, 0.5],
                vec![0.25, 1.0],
                vec![0.5, 0.0],
                vec![0.5, 0.5],
                vec![0.5, 1.0],
            ]
        );
    }

    #[test]
    fn range_endpoints_are_exact() {
        let pts = Grid::Range {
            min: 0.0,
            max: 2.0,
            points: 81,
        }
        .points();
        assert_eq!(pts[0], 0.0);
        assert_eq!(pts[80], 2.0);
        assert!((pts[10] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn validation_errors() {
        let mut c = tiny();
        c.axes[0].targets = vec!["T_M".into()];
        assert!(matches!(c.validate(), Err(Error::UnknownParameter(_))));

        let mut c = tiny();
        c.axes[1].grid = Grid::Range {
            min: 1.0,
            max: 0.0,
            points: 5,
        };
        assert!(matches!(c.validate(), Err(Error::Config(_))));

        let mut c = tiny();
        c.axes[1].grid = Grid::Range {
            min: 0.0,
            max: 1.0,
            points: 1,
        };
        assert!(c.validate().is_err());

        let mut c = tiny();
        c.overrides.insert("nonsense".into(), 1.0);
        assert!(c.validate().is_err());

        let mut c = tiny();
        c.axes.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn single_equilibrium_point() {
        let mut c = tiny();
        c.axes = vec![SweepAxis::values("T_L", &[0.4])];
        c.overrides.insert("T_R".into(), 0.4);
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.rows[0].ergotropy().unwrap().abs() < 1e-8);
    }

    #[test]
    fn lambda_assumption_flag() {
        let mut c = tiny();
        assert!(c.lambda_lr_assumed());
        c.overrides.insert("lambda_LR".into(), 0.3);
        assert!(!c.lambda_lr_assumed());
        let mut c = tiny();
        c.axes.push(SweepAxis::values("lambda_RL", &[0.2]));
        assert!(!c.lambda_lr_assumed());
        let mut c = tiny();
        c.preset = Preset::ThreeCellFig4;
        assert!(!c.lambda_lr_assumed());
    }

    #[test]
    fn failed_points_become_error_rows() {
        let c = SweepConfig {
            name: "degenerate".into(),
            preset: Preset::ThreeCellFig6,
            axes: vec![SweepAxis {
                name: Some("lambda".into()),
                targets: vec!["lambda_LM".into(), "lambda_MR".into(), "lambda_LR".into()],
                grid: Grid::Values {
                    values: vec![0.3, 0.5],
                },
            }],
            overrides: BTreeMap::new(),
            output: None,
            solver: SolverSettings::default(),
            notes: BTreeMap::new(),
        };
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(!r.rows[0].is_error());
        // λ = ω/2 closes a transition gap
        assert!(r.rows[1].is_error(), "{:?}", r.rows[1]);
        assert_eq!(r.error_count(), 1);
    }

    #[test]
    fn config_json_round_trip() {
        let c = tiny();
        let text = serde_json::to_string_pretty(&c).unwrap();
        assert_eq!(SweepConfig::from_json(&text).unwrap(), c);
        let minimal = r#"{"preset":"three_cell_fig4","axes":[{"targets":["T_L"],"min":0,"max":1,"points":3}]}"#;
        let c = SweepConfig::from_json(minimal).unwrap();
        assert_eq!(c.name, "sweep");
        assert_eq!(c.solver, SolverSettings::default());
    }

    #[test]
    fn worker_count_does_not_change_rows() {
        let c = tiny();
        let a = run_sweep_with(&c, Some(1)).unwrap();
        let b = run_sweep_with(&c, Some(3)).unwrap();
        assert_eq!(a.rows, b.rows);
    }
}
