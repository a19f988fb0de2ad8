//! The versioned JSON envelope shared by `dims` and `estimate`.

use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use fracdim::model::System;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct InputInfo {
    pub sha256: String,
    pub kind: &'static str,
    pub maps: usize,
}

impl InputInfo {
    pub fn new(bytes: &[u8], system: &System) -> Self {
        let maps = match system {
            System::SelfSimilar1D(ifs) => ifs.len(),
            System::Carpet(c) => c.len(),
        };
        InputInfo { sha256: format!("{:x}", Sha256::digest(bytes)), kind: system.kind(), maps }
    }
}

#[derive(Serialize)]
pub struct SolverInfo {
    pub tolerance: f64,
    pub restarts: usize,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct Timing {
    pub seconds: f64,
}

/// Everything but `timing` is a function of the input and flags, so two runs
/// differ only in the last field.
#[derive(Serialize)]
pub struct Document<T: Serialize> {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: InputInfo,
    pub solver: SolverInfo,
    pub result: T,
    pub timing: Timing,
}

impl<T: Serialize> Document<T> {
    pub fn new(command: &'static str, input: InputInfo, solver: SolverInfo, result: T, started: Instant) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            tool: "fracdim",
            version: env!("CARGO_PKG_VERSION"),
            command,
            input,
            solver,
            result,
            timing: Timing { seconds: started.elapsed().as_secs_f64() },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report types serialize");
        s.push('\n');
        s
    }
}
