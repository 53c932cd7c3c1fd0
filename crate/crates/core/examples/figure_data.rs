//! Write the three figure data sets as CSV at a reduced resolution.
//!
//! Usage: `cargo run --example figure_data -- [OUT_DIR] [RESOLUTION]`

use frw_entanglement::pipeline::{figure_data, write_csv, Figure};
use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

fn main() -> frw_entanglement::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let resolution = args.next().map(|s| s.parse().expect("resolution must be an integer")).unwrap_or(50);
    for fig in Figure::ALL {
        let rows = figure_data(fig, Some(resolution))?;
        let path = dir.join(format!("{fig}.csv"));
        write_csv(&rows, BufWriter::new(File::create(&path)?))?;
        let peak = rows.iter().map(|r| r.entropy_bits).fold(0.0, f64::max);
        println!("{}: {} rows, max entropy {peak:.4} bits", path.display(), rows.len());
    }
    Ok(())
}
