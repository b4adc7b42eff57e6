//! CSV tables and gnuplot scripts for sweep results.
//!
//! CSV layout: a block of `# key=value` metadata lines, one header line, then
//! one line per grid point. Floats carry 12 significant digits. Error rows
//! have `NaN` in the numeric columns and the message in `status`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{SweepResult, SweepRow};
use crate::error::{Error, Result};

pub const VALUE_COLUMNS: [&str; 4] = ["W", "internal_energy", "residual", "min_eig"];

/// Scientific notation with 12 significant digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\"").replace('\n', " "))
    } else {
        s.to_string()
    }
}

fn render_row(row: &SweepRow) -> String {
    let mut fields: Vec<String> = row.params.iter().map(|v| format_float(*v)).collect();
    match &row.outcome {
        Ok(p) => {
            for v in [p.ergotropy, p.internal_energy, p.residual, p.min_eig] {
                fields.push(format_float(v));
            }
            fields.push("ok".into());
        }
        Err(msg) => {
            fields.extend(std::iter::repeat_n("NaN".to_string(), VALUE_COLUMNS.len()));
            fields.push(csv_field(&format!("error: {msg}")));
        }
    }
    fields.join(",")
}

pub(crate) fn metadata_lines(result: &SweepResult) -> Vec<String> {
    result
        .metadata
        .iter()
        .map(|(k, v)| format!("# {k}={}", v.replace('\n', " ")))
        .collect()
}

fn header(result: &SweepResult) -> String {
    let mut cols: Vec<String> = result.columns.iter().map(|c| csv_field(c)).collect();
    cols.extend(VALUE_COLUMNS.iter().map(|s| s.to_string()));
    cols.push("status".into());
    cols.join(",")
}

pub fn render_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    for line in metadata_lines(result) {
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str(&header(result));
    out.push('\n');
    for row in &result.rows {
        out.push_str(&render_row(row));
        out.push('\n');
    }
    out
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    if result.rows.is_empty() {
        return Err(Error::InvalidArgument("cannot write an empty sweep".into()));
    }
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, render_csv(result))?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlotLayout {
    /// One curve per family value (or a single curve) against `x`.
    Lines { x: usize, family: Option<usize> },
    /// Heat map over `(x, y)`, one panel per family value.
    HeatMap {
        x: usize,
        y: usize,
        family: Option<usize>,
    },
}

impl PlotLayout {
    /// Range axes become plot axes, the (at most one) list axis the family.
    /// A lone list axis is plotted as x.
    pub fn infer(result: &SweepResult) -> Result<Self> {
        let axes = &result.config.axes;
        let ranges: Vec<usize> = (0..axes.len())
            .filter(|&i| axes[i].grid.is_range())
            .collect();
        let lists: Vec<usize> = (0..axes.len())
            .filter(|&i| !axes[i].grid.is_range())
            .collect();
        if let ([], [x]) = (ranges.as_slice(), lists.as_slice()) {
            return Ok(PlotLayout::Lines {
                x: *x,
                family: None,
            });
        }
        if lists.len() > 1 {
            return Err(Error::Config(
                "plots support at most one family axis".into(),
            ));
        }
        let family = lists.first().copied();
        match ranges.as_slice() {
            [x] => Ok(PlotLayout::Lines { x: *x, family }),
            [x, y] => Ok(PlotLayout::HeatMap {
                x: *x,
                y: *y,
                family,
            }),
            _ => Err(Error::Config(format!(
                "no plot layout for {} range axes",
                ranges.len()
            ))),
        }
    }
}

fn quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "''"))
}

/// Renders a gnuplot script that reads `csv_name` and writes `png_name`.
pub fn render_plot_script(result: &SweepResult, csv_name: &str, png_name: &str) -> Result<String> {
    if result.rows.is_empty() {
        return Err(Error::InvalidArgument("cannot plot an empty sweep".into()));
    }
    let layout = PlotLayout::infer(result)?;
    let skip = result.metadata.len() + 1;
    let w_col = result.columns.len() + 1;
    let label = |i: usize| result.columns[i].clone();
    let data = format!("{} skip {}", quote(csv_name), skip);
    let family_values = |f: Option<usize>| -> Vec<Option<f64>> {
        match f {
            Some(i) => result.config.axes[i]
                .grid
                .points()
                .into_iter()
                .map(Some)
                .collect(),
            None => vec![None],
        }
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        "# gnuplot script for {} ({})",
        result.config.name,
        super::ENGINE
    );
    let _ = writeln!(s, "set datafile separator ','");
    let _ = writeln!(s, "set datafile missing 'NaN'");
    match layout {
        PlotLayout::Lines { x, family } => {
            let _ = writeln!(s, "set terminal pngcairo size 900,600");
            let _ = writeln!(s, "set output {}", quote(png_name));
            let _ = writeln!(s, "set xlabel {}", quote(&label(x)));
            let _ = writeln!(s, "set ylabel 'W'");
            let _ = writeln!(s, "set key outside right");
            let _ = writeln!(s, "set grid");
            let clauses: Vec<String> = family_values(family)
                .into_iter()
                .map(|fv| match (family, fv) {
                    (Some(f), Some(v)) => format!(
                        "{data} using {}:(abs(${} - ({})) < 1e-9 ? ${} : NaN) with lines lw 2 title {}",
                        x + 1,
                        f + 1,
                        format_float(v),
                        w_col,
                        quote(&format!("{}={}", label(f), v))
                    ),
                    _ => format!("{data} using {}:{} with lines lw 2 title 'W'", x + 1, w_col),
                })
                .collect();
            let _ = writeln!(s, "plot {}", clauses.join(", \\\n     "));
        }
        PlotLayout::HeatMap { x, y, family } => {
            let panels = family_values(family);
            let per_panel = result.rows.len() / panels.len();
            // panels are contiguous row blocks only when the family axis
            // comes first
            let contiguous = family.is_none_or(|f| f == 0);
            let _ = writeln!(
                s,
                "set terminal pngcairo size {},{}",
                520 * panels.len(),
                480
            );
            let _ = writeln!(s, "set output {}", quote(png_name));
            let _ = writeln!(s, "set xlabel {}", quote(&label(x)));
            let _ = writeln!(s, "set ylabel {}", quote(&label(y)));
            let _ = writeln!(s, "set cblabel 'W'");
            let _ = writeln!(s, "set view map");
            let _ = writeln!(s, "set palette rgbformulae 33,13,10");
            if panels.len() > 1 {
                let _ = writeln!(s, "set multiplot layout 1,{}", panels.len());
            }
            for (k, fv) in panels.iter().enumerate() {
                let title = match (family, fv) {
                    (Some(f), Some(v)) => format!("{}={}", label(f), v),
                    _ => "W".to_string(),
                };
                let _ = writeln!(s, "set title {}", quote(&title));
                match (family, fv) {
                    (Some(_), Some(_)) if contiguous => {
                        let _ = writeln!(
                            s,
                            "plot {data} every ::{}::{} using {}:{}:{} with image notitle",
                            k * per_panel,
                            (k + 1) * per_panel - 1,
                            x + 1,
                            y + 1,
                            w_col
                        );
                    }
                    (Some(f), Some(v)) => {
                        let _ = writeln!(
                            s,
                            "plot {data} using {}:{}:(abs(${} - ({})) < 1e-9 ? ${} : NaN) with points pt 5 ps 1 palette notitle",
                            x + 1,
                            y + 1,
                            f + 1,
                            format_float(*v),
                            w_col
                        );
                    }
                    _ => {
                        let _ = writeln!(
                            s,
                            "plot {data} using {}:{}:{} with image notitle",
                            x + 1,
                            y + 1,
                            w_col
                        );
                    }
                }
            }
            if panels.len() > 1 {
                let _ = writeln!(s, "unset multiplot");
            }
        }
    }
    Ok(s)
}

/// Writes a gnuplot script to `path` that renders the CSV with the same
/// stem in the same directory (`fig2a.gp` reads `fig2a.csv`).
pub fn emit_plot_script(result: &SweepResult, path: &Path) -> Result<()> {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Error::InvalidArgument(format!("bad script path {}", path.display())))?;
    let script = render_plot_script(result, &format!("{stem}.csv"), &format!("{stem}.png"))?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, script)?;
    Ok(())
}
