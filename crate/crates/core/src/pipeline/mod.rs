//! Sweeps over parameter grids, figure data sets, CSV output, and the
//! verify suite.

mod figures;
mod format;
mod sweep;
pub mod verify;

pub use figures::{figure_data, Figure};
pub use format::fmt_g17;
pub use sweep::{evaluate_point, run_sweep, to_csv_string, write_csv, Axis, SweepGrid, SweepRow, CSV_HEADER};
pub use verify::{run_verify, run_verify_with, Check, VerifyHooks, VerifyLevel, VerifyReport};
