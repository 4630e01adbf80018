//! Experiment harness for the digital representative game: parameter sweeps,
//! equilibrium region maps, figure data, oracle verification and SVG views.
//!
//! Every table is rendered with nine significant digits and `\n` line
//! endings, and parallel work is reassembled in grid order, so repeated runs
//! produce byte-identical output.

pub mod commands;
pub mod figures;
pub mod plot;
pub mod regions;
pub mod sweep;
pub mod table;

pub use commands::{run_verify, solve, solve_summary, solve_table, CliError, VerifyReport};
pub use figures::{generate, Figure, FigureData};
pub use plot::{render_svg, PlotSpec};
pub use regions::{region_map, region_table, Axis, RegionCell, RegionSpec};
pub use sweep::{run_sweep, sweep_table, SweepRow, SweepSpec, SweepVariable};
pub use table::{format_sig9, linspace, Cell, Table};
