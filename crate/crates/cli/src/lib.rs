//! Command-line front end: subcommand dispatch, bound sweeps, CSV and SVG output.

// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chart;
pub mod commands;
pub mod output;
pub mod sweep;

pub use chart::{emit_svg_chart, render_svg, ChartSpec, Series};
pub use commands::{dispatch, dispatch_with, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
pub use sweep::{emit_csv, parse_csv, render_csv, run_sweep, SweepRow};
