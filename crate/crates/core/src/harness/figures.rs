//! Built-in sweep configurations, one per published figure panel.
//!
//! Temperature and coupling ranges are [0, 2] throughout; list-valued axes
//! come first so each curve (or heat-map panel) is a contiguous row block.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Grid, SolverSettings, SweepAxis, SweepConfig};
use crate::error::{Error, Result};
use crate::model::Preset;

/// Points per continuous axis.
pub const DEFAULT_POINTS: usize = 81;
/// The coupling sweep uses a finer default grid.
pub const FIG6_POINTS: usize = 101;

const FAMILY_T: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
const FAMILY_TM: [f64; 3] = [0.0, 0.5, 1.0];
const FAMILY_TM_MAPS: [f64; 3] = [0.5, 0.75, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    Fig2a,
    Fig2b,
    Fig3,
    Fig4a,
    Fig4b,
    Fig5,
    Fig6,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::Fig2a,
        Figure::Fig2b,
        Figure::Fig3,
        Figure::Fig4a,
        Figure::Fig4b,
        Figure::Fig5,
        Figure::Fig6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2a => "fig2a",
            Figure::Fig2b => "fig2b",
            Figure::Fig3 => "fig3",
            Figure::Fig4a => "fig4a",
            Figure::Fig4b => "fig4b",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
        }
    }
}

impl FromStr for Figure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown figure `{s}`")))
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn temps(target: &str) -> SweepAxis {
    SweepAxis::range(target, 0.0, 2.0, DEFAULT_POINTS)
}

pub fn figure_config(fig: Figure) -> SweepConfig {
    let (preset, axes, overrides): (Preset, Vec<SweepAxis>, &[(&str, f64)]) = match fig {
        Figure::Fig2a => (
            Preset::TwoCellFig2,
            vec![SweepAxis::values("T_R", &FAMILY_T), temps("T_L")],
            &[],
        ),
        Figure::Fig2b => (
            Preset::TwoCellFig2,
            vec![SweepAxis::values("T_L", &FAMILY_T), temps("T_R")],
            &[],
        ),
        Figure::Fig3 => (Preset::TwoCellFig2, vec![temps("T_L"), temps("T_R")], &[]),
        Figure::Fig4a => (
            Preset::ThreeCellFig4,
            vec![SweepAxis::values("T_M", &FAMILY_TM), temps("T_L")],
            &[("T_R", 0.0)],
        ),
        Figure::Fig4b => (
            Preset::ThreeCellFig4,
            vec![SweepAxis::values("T_M", &FAMILY_TM), temps("T_R")],
            &[("T_L", 0.0)],
        ),
        Figure::Fig5 => (
            Preset::ThreeCellFig4,
            vec![
                SweepAxis::values("T_M", &FAMILY_TM_MAPS),
                temps("T_L"),
                temps("T_R"),
            ],
            &[],
        ),
        Figure::Fig6 => (
            Preset::ThreeCellFig6,
            vec![
                SweepAxis::values("T_M", &FAMILY_TM),
                SweepAxis {
                    name: Some("lambda".into()),
                    targets: vec!["lambda_LM".into(), "lambda_MR".into(), "lambda_LR".into()],
                    grid: Grid::Range {
                        min: 0.0,
                        max: 2.0,
                        points: FIG6_POINTS,
                    },
                },
            ],
            &[("T_L", 1.0), ("T_R", 0.0)],
        ),
    };
    let mut notes = BTreeMap::new();
    notes.insert("axis_ranges_estimated".to_string(), "true".to_string());
    SweepConfig {
        name: fig.name().to_string(),
        preset,
        axes,
        overrides: overrides.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        output: None,
        solver: SolverSettings::default(),
        notes,
    }
}
