//! Parameter sweeps of probe entanglement over (t, n) grids: configuration,
//! evaluation, CSV and SVG output, and the oracle validation suite.

pub mod config;
pub mod heatmap;
pub mod output;
pub mod record;
pub mod sweep;
pub mod validation;

pub use config::{load_config, validate_config, ConfigError, Overrides, SweepConfig};
pub use heatmap::{render_heatmap, render_svg, HeatmapError};
pub use output::{to_csv_string, write_csv, OutputError};
pub use record::{evaluate_point, PointParams, ResultRecord, COLUMNS};
pub use sweep::{run_points, run_sweep, PointError};
pub use bec_entangle::Separation;
