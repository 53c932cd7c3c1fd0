use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use super::format::fmt_g17;
use crate::cosmology::{ExpansionParams, ModeParams, Spin};
use crate::entanglement::{entropy_for_mode_with, natural_method, Method};
use crate::error::{Error, Result};

/// Exact CSV header for sweep output.
pub const CSV_HEADER: &str = "epsilon,rho,m,k,spin,x,entropy_bits";

/// One grid axis: a fixed value, an explicit list, or an evenly spaced range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Fixed(f64),
    Values(Vec<f64>),
    Range { min: f64, max: f64, count: usize },
}

impl Axis {
    pub fn linspace(min: f64, max: f64, count: usize) -> Self {
        Axis::Range { min, max, count }
    }

    fn validate(&self, name: &str) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(format!("axis '{name}': {msg}")));
        match self {
            Axis::Fixed(v) if !v.is_finite() => bad(format!("non-finite value {v}")),
            Axis::Values(vs) if vs.is_empty() => bad("empty value list".into()),
            Axis::Values(vs) if vs.iter().any(|v| !v.is_finite()) => bad("non-finite value".into()),
            Axis::Range { count: 0, .. } => bad("count must be >= 1".into()),
            Axis::Range { min, max, .. } if !(min.is_finite() && max.is_finite()) => {
                bad("non-finite bound".into())
            }
            Axis::Range { min, max, .. } if min > max => bad(format!("min {min} > max {max}")),
            _ => Ok(()),
        }
    }

    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::Fixed(v) => vec![*v],
            Axis::Values(vs) => vs.clone(),
            Axis::Range { min, count: 1, .. } => vec![*min],
            Axis::Range { min, max, count } => {
                let last = (*count - 1) as f64;
                (0..*count)
                    .map(|i| if i == *count - 1 { *max } else { min + (max - min) * i as f64 / last })
                    .collect()
            }
        }
    }
}

/// Rectangular parameter grid. Also the JSON schema of sweep config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    #[serde(rename = "epsilon_range", alias = "epsilon")]
    pub epsilon: Axis,
    #[serde(rename = "rho_range", alias = "rho")]
    pub rho: Axis,
    #[serde(rename = "m_range", alias = "m")]
    pub m: Axis,
    #[serde(rename = "k_range", alias = "k")]
    pub k: Axis,
    pub spin: Spin,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        self.epsilon.validate("epsilon")?;
        self.rho.validate("rho")?;
        self.m.validate("m")?;
        self.k.validate("k")
    }

    /// Grid points in row-major order: `ε` outermost, then `ρ`, `m`, `k`.
    pub fn points(&self) -> Vec<[f64; 4]> {
        let (es, rs, ms, ks) = (self.epsilon.values(), self.rho.values(), self.m.values(), self.k.values());
        let mut out = Vec::with_capacity(es.len() * rs.len() * ms.len() * ks.len());
        for &e in &es {
            for &r in &rs {
                for &m in &ms {
                    for &k in &ks {
                        out.push([e, r, m, k]);
                    }
                }
            }
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let grid: SweepGrid = serde_json::from_str(text)?;
        grid.validate()?;
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub epsilon: f64,
    pub rho: f64,
    pub m: f64,
    pub k: f64,
    pub spin: Spin,
    pub x: f64,
    pub entropy_bits: f64,
    /// Set when the point could not be evaluated; `x` and the entropy are NaN.
    pub error: Option<String>,
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let mut line = [self.epsilon, self.rho, self.m, self.k]
            .iter()
            .map(|v| fmt_g17(*v))
            .collect::<Vec<_>>()
            .join(",");
        line.push(',');
        line.push_str(self.spin.label());
        line.push(',');
        line.push_str(&fmt_g17(self.x));
        line.push(',');
        line.push_str(&fmt_g17(self.entropy_bits));
        if let Some(err) = &self.error {
            line.push(',');
            line.push_str(&csv_quote(err));
        }
        line
    }
}

fn csv_quote(s: &str) -> String {
    let flat = s.replace(['\n', '\r'], " ");
    if flat.contains([',', '"']) {
        format!("\"{}\"", flat.replace('"', "\"\""))
    } else {
        flat
    }
}

/// Evaluate one parameter point. Failures become error rows.
pub fn evaluate_point(epsilon: f64, rho: f64, m: f64, k: f64, spin: Spin, method: Option<Method>) -> SweepRow {
    let method = method.unwrap_or_else(|| natural_method(spin.statistics()));
    let result = ExpansionParams::new(epsilon, rho).and_then(|p| {
        let mode = ModeParams::new(m, k, spin)?;
        entropy_for_mode_with(&p, &mode, method, None)
    });
    let (x, entropy_bits, error) = match result {
        Ok(r) => (r.x, r.entropy_bits, None),
        Err(e) => (f64::NAN, f64::NAN, Some(e.to_string())),
    };
    SweepRow { epsilon, rho, m, k, spin, x, entropy_bits, error }
}

/// Entropy at every grid point, in [`SweepGrid::points`] order. Points are
/// evaluated on the rayon pool; the output order does not depend on it.
pub fn run_sweep(grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    Ok(grid
        .points()
        .into_par_iter()
        .map(|[e, r, m, k]| evaluate_point(e, r, m, k, grid.spin, None))
        .collect())
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
