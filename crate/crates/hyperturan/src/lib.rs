//! File formats, run reports and the command-line front end for `hyperturan-core`.

pub mod cli;
pub mod error;
pub mod graph_file;
pub mod parallel;
pub mod pattern;
pub mod report;

pub use error::CliError;
pub use graph_file::{read_graph, read_graph_path, write_graph, write_graph_path, FormatError};
pub use report::RunReport;

use std::time::Instant;

use hyperturan_core::randalg::Clock;

/// Milliseconds since construction.
pub struct WallClock(Instant);

impl WallClock {
    pub fn start() -> Self {
        WallClock(Instant::now())
    }
}

impl Clock for WallClock {
    fn now_ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}
