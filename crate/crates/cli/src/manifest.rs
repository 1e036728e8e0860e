use serde::Serialize;

use corona_walk::state_transfer::Tolerances;

/// Record of one invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub arguments: Vec<String>,
    pub tolerances: Tolerances,
    pub outputs: Vec<String>,
    pub wall_clock_seconds: f64,
    pub engine_version: &'static str,
    pub threads: usize,
    pub exit_code: i32,
}

impl RunManifest {
    pub fn new(command: impl Into<String>, arguments: Vec<String>, tolerances: Tolerances) -> Self {
        RunManifest {
            command: command.into(),
            arguments,
            tolerances,
            outputs: Vec::new(),
            wall_clock_seconds: 0.0,
            engine_version: env!("CARGO_PKG_VERSION"),
            threads: rayon::current_num_threads(),
            exit_code: 0,
        }
    }
}
