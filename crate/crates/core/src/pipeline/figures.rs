//! Default grids for the three figure data sets. All use spin 1.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use super::sweep::{run_sweep, Axis, SweepGrid, SweepRow};
use crate::cosmology::Spin;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Figure {
    /// Entropy over `m × k ∈ [0, 10]²` at `ε = 2`, `ρ = 2`.
    Fig1,
    /// Entropy over `ε × ρ ∈ [0, 10]²` at `m = 1`, `k = 0.1`.
    Fig2,
    /// Entropy against `m ∈ [0, 10]` at `k = 0.1`, `ρ = 10` for `ε ∈ {1, 2, 4, 8}`.
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig1, Figure::Fig2, Figure::Fig3];

    /// Points per varied axis when no resolution is given.
    pub fn default_resolution(self) -> usize {
        match self {
            Figure::Fig1 => 200,
            Figure::Fig2 => 100,
            Figure::Fig3 => 1000,
        }
    }

    /// Grid with `resolution` points along each varied axis.
    pub fn grid(self, resolution: Option<usize>) -> Result<SweepGrid> {
        let n = resolution.unwrap_or_else(|| self.default_resolution());
        if n == 0 {
            return Err(Error::Config("figure resolution must be >= 1".into()));
        }
        let span = Axis::linspace(0.0, 10.0, n);
        let grid = match self {
            Figure::Fig1 => SweepGrid {
                epsilon: Axis::Fixed(2.0),
                rho: Axis::Fixed(2.0),
                m: span.clone(),
                k: span,
                spin: Spin::One,
                output_path: None,
            },
            Figure::Fig2 => SweepGrid {
                epsilon: span.clone(),
                rho: span,
                m: Axis::Fixed(1.0),
                k: Axis::Fixed(0.1),
                spin: Spin::One,
                output_path: None,
            },
            Figure::Fig3 => SweepGrid {
                epsilon: Axis::Values(vec![1.0, 2.0, 4.0, 8.0]),
                rho: Axis::Fixed(10.0),
                m: span,
                k: Axis::Fixed(0.1),
                spin: Spin::One,
                output_path: None,
            },
        };
        Ok(grid)
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        })
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            other => Err(Error::Config(format!("unknown figure '{other}'"))),
        }
    }
}

pub fn figure_data(which: Figure, resolution: Option<usize>) -> Result<Vec<SweepRow>> {
    run_sweep(&which.grid(resolution)?)
}
