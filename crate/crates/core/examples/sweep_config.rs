//! Run a sweep from a JSON config, the same format the `sweep` subcommand reads.

use frw_entanglement::pipeline::{run_sweep, to_csv_string, SweepGrid};

const CONFIG: &str = r#"{
    "epsilon_range": [1.0, 4.0],
    "rho_range": 2.0,
    "m_range": {"min": 0.5, "max": 2.0, "count": 4},
    "k_range": [0.0, 1.0],
    "spin": "half"
}"#;

fn main() -> frw_entanglement::Result<()> {
    let grid = SweepGrid::from_json(CONFIG)?;
    print!("{}", to_csv_string(&run_sweep(&grid)?));
    Ok(())
}
