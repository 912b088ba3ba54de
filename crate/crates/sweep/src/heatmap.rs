//! Standalone SVG heatmap of weighted entanglement over the (t, n) grid.
//!
//! Temperature runs left to right, density bottom to top, one cell per grid
//! point. Colors come from a nine-stop viridis ramp, interpolated linearly in
//! sRGB; its lightness increases monotonically from the grid minimum (dark
//! purple) to the maximum (yellow). Cells without a value are grey. A dashed
//! line marks t = 1 when it lies inside the grid.

use std::fmt::Write as _;
use std::path::Path;

use crate::output::{write_text, OutputError};
use crate::record::ResultRecord;

const VIRIDIS: [[u8; 3]; 9] = [
    [0x44, 0x01, 0x54],
    [0x47, 0x2c, 0x7a],
    [0x3b, 0x51, 0x8b],
    [0x2c, 0x71, 0x8e],
    [0x21, 0x90, 0x8d],
    [0x27, 0xad, 0x81],
    [0x5c, 0xc8, 0x63],
    [0xaa, 0xdc, 0x32],
    [0xfd, 0xe7, 0x25],
];

const MISSING: &str = "#bdbdbd";
const WIDTH: f64 = 820.0;
const HEIGHT: f64 = 560.0;
const LEFT: f64 = 100.0;
const TOP: f64 = 50.0;
const PLOT_W: f64 = 560.0;
const PLOT_H: f64 = 420.0;
const LEGEND_X: f64 = 700.0;
const LEGEND_W: f64 = 24.0;
const LEGEND_STRIPS: usize = 64;
const AXIS_TICKS: usize = 5;

#[derive(Debug)]
pub enum HeatmapError {
    Empty,
    NonRectangular(String),
    Io(OutputError),
}

impl std::fmt::Display for HeatmapError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeatmapError::Empty => write!(f, "heatmap needs at least one record"),
            HeatmapError::NonRectangular(msg) => write!(f, "records do not form a rectangular (t, n) grid: {msg}"),
            HeatmapError::Io(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for HeatmapError {}

/// Color of `u` in [0, 1] on the ramp, as `#rrggbb`.
pub fn color(u: f64) -> String {
    let u = if u.is_finite() { u.clamp(0.0, 1.0) } else { 0.0 };
    let pos = u * (VIRIDIS.len() - 1) as f64;
    let i = (pos.floor() as usize).min(VIRIDIS.len() - 2);
    let f = pos - i as f64;
    let (a, b) = (VIRIDIS[i], VIRIDIS[i + 1]);
    let mix = |k: usize| (a[k] as f64 + (b[k] as f64 - a[k] as f64) * f).round() as u8;
    format!("#{:02x}{:02x}{:02x}", mix(0), mix(1), mix(2))
}

/// Temperatures and densities of a t-major rectangular grid.
pub fn grid_axes(records: &[ResultRecord]) -> Result<(Vec<f64>, Vec<f64>), HeatmapError> {
    let first = records.first().ok_or(HeatmapError::Empty)?;
    let nn = records.iter().take_while(|r| r.t == first.t).count();
    if records.len() % nn != 0 {
        return Err(HeatmapError::NonRectangular(format!("{} records is not a multiple of {nn} densities", records.len())));
    }
    let ns: Vec<f64> = records[..nn].iter().map(|r| r.n).collect();
    let ts: Vec<f64> = records.iter().step_by(nn).map(|r| r.t).collect();
    for (k, r) in records.iter().enumerate() {
        let (t, n) = (ts[k / nn], ns[k % nn]);
        if r.t != t || r.n != n {
            return Err(HeatmapError::NonRectangular(format!("record {k} is (t = {}, n = {:e}), expected (t = {t}, n = {n:e})", r.t, r.n)));
        }
    }
    for w in ts.windows(2) {
        if w[0] == w[1] {
            return Err(HeatmapError::NonRectangular(format!("temperature {} repeats", w[0])));
        }
    }
    Ok((ts, ns))
}

fn tick_indices(len: usize) -> Vec<usize> {
    if len <= AXIS_TICKS {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..AXIS_TICKS).map(|k| (k * (len - 1) + (AXIS_TICKS - 1) / 2) / (AXIS_TICKS - 1)).collect();
    idx.dedup();
    idx
}

/// x coordinate of temperature `t` when cell centres sit at the grid points.
fn t_to_x(ts: &[f64], t: f64, cell_w: f64) -> Option<f64> {
    let i = ts.windows(2).position(|w| w[0] <= t && t <= w[1])?;
    let f = (t - ts[i]) / (ts[i + 1] - ts[i]);
    Some(LEFT + (i as f64 + 0.5 + f) * cell_w)
}

pub fn render_svg(records: &[ResultRecord]) -> Result<String, HeatmapError> {
    let (ts, ns) = grid_axes(records)?;
    let values: Vec<Option<f64>> = records.iter().map(|r| r.weighted_entanglement.filter(|v| v.is_finite())).collect();
    let lo = values.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    let scale = |v: f64| if hi > lo { (v - lo) / (hi - lo) } else { 0.5 };
    let (cell_w, cell_h) = (PLOT_W / ts.len() as f64, PLOT_H / ns.len() as f64);

    let mut s = String::new();
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    )
    .unwrap();
    writeln!(s, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>").unwrap();
    writeln!(s, "<text x=\"{:.2}\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">weighted entanglement E</text>", LEFT + PLOT_W / 2.0).unwrap();

    writeln!(s, "<g shape-rendering=\"crispEdges\">").unwrap();
    for (k, v) in values.iter().enumerate() {
        let (i, j) = (k / ns.len(), k % ns.len());
        let x = LEFT + i as f64 * cell_w;
        let y = TOP + PLOT_H - (j + 1) as f64 * cell_h;
        let fill = v.map_or(MISSING.to_string(), |v| color(scale(v)));
        writeln!(s, "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cell_w:.2}\" height=\"{cell_h:.2}\" fill=\"{fill}\"/>").unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{PLOT_W}\" height=\"{PLOT_H}\" fill=\"none\" stroke=\"#000000\"/>").unwrap();

    if let Some(x) = t_to_x(&ts, 1.0, cell_w) {
        writeln!(
            s,
            "<line x1=\"{x:.2}\" y1=\"{TOP}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#ffffff\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>",
            TOP + PLOT_H
        )
        .unwrap();
        writeln!(s, "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">T_C</text>", TOP - 6.0).unwrap();
    }

    let axis_y = TOP + PLOT_H;
    for i in tick_indices(ts.len()) {
        let x = LEFT + (i as f64 + 0.5) * cell_w;
        writeln!(s, "<line x1=\"{x:.2}\" y1=\"{axis_y:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#000000\"/>", axis_y + 5.0).unwrap();
        writeln!(s, "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{:.3}</text>", axis_y + 19.0, ts[i]).unwrap();
    }
    writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">t = T/T_C</text>", LEFT + PLOT_W / 2.0, axis_y + 40.0).unwrap();
    for j in tick_indices(ns.len()) {
        let y = TOP + PLOT_H - (j as f64 + 0.5) * cell_h;
        writeln!(s, "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{LEFT}\" y2=\"{y:.2}\" stroke=\"#000000\"/>", LEFT - 5.0).unwrap();
        writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{:.3e}</text>", LEFT - 8.0, y + 4.0, ns[j]).unwrap();
    }
    let mid_y = TOP + PLOT_H / 2.0;
    writeln!(s, "<text x=\"22\" y=\"{mid_y:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 22 {mid_y:.2})\">n [cm^-3]</text>").unwrap();

    writeln!(s, "<g shape-rendering=\"crispEdges\">").unwrap();
    if hi > lo {
        let strip = PLOT_H / LEGEND_STRIPS as f64;
        for k in 0..LEGEND_STRIPS {
            let u = (k as f64 + 0.5) / LEGEND_STRIPS as f64;
            let y = TOP + PLOT_H - (k + 1) as f64 * strip;
            writeln!(s, "<rect x=\"{LEGEND_X}\" y=\"{y:.2}\" width=\"{LEGEND_W}\" height=\"{strip:.2}\" fill=\"{}\"/>", color(u)).unwrap();
        }
    } else if hi == lo {
        writeln!(s, "<rect x=\"{LEGEND_X}\" y=\"{TOP}\" width=\"{LEGEND_W}\" height=\"{PLOT_H}\" fill=\"{}\"/>", color(0.5)).unwrap();
    }
    writeln!(s, "</g>").unwrap();
    writeln!(s, "<rect x=\"{LEGEND_X}\" y=\"{TOP}\" width=\"{LEGEND_W}\" height=\"{PLOT_H}\" fill=\"none\" stroke=\"#000000\"/>").unwrap();
    let label_x = LEGEND_X + LEGEND_W + 6.0;
    if hi > lo {
        writeln!(s, "<text x=\"{label_x:.2}\" y=\"{:.2}\">{hi:.4e}</text>", TOP + 4.0).unwrap();
        writeln!(s, "<text x=\"{label_x:.2}\" y=\"{:.2}\">{lo:.4e}</text>", TOP + PLOT_H + 4.0).unwrap();
    } else if hi == lo {
        writeln!(s, "<text x=\"{label_x:.2}\" y=\"{:.2}\">{hi:.4e}</text>", mid_y + 4.0).unwrap();
    } else {
        writeln!(s, "<text x=\"{label_x:.2}\" y=\"{:.2}\">no data</text>", mid_y + 4.0).unwrap();
    }
    writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">E</text>", LEGEND_X + LEGEND_W / 2.0, TOP - 8.0).unwrap();
    writeln!(s, "</svg>").unwrap();
    Ok(s)
}

pub fn render_heatmap(records: &[ResultRecord], path: &Path) -> Result<(), HeatmapError> {
    let svg = render_svg(records)?;
    write_text(path, &svg).map_err(HeatmapError::Io)
}
