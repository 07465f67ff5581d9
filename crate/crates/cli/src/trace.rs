//! JSON trace written by `color --trace`. All vertex ids are 1-based, as in the
//! graph files.

use cfon_core::random::RunStats;
use cfon_core::PeelTrace;
use serde::Serialize;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Trace {
    pub schema: u32,
    pub algo: &'static str,
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub colors_used: usize,
    /// Original ids of vertices dropped by `--strip-isolated`.
    pub stripped: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PeelTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<RunStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<usize>,
}

/// Shifts every vertex list in a pipeline trace to 1-based ids, translating
/// through `ids` (new id -> original id) when the graph was stripped.
pub fn relabel(mut t: PeelTrace, ids: &[usize]) -> PeelTrace {
    let map = |vs: &mut Vec<usize>| vs.iter_mut().for_each(|v| *v = ids[*v] + 1);
    for round in &mut t.rounds {
        map(&mut round.split.prev);
        map(&mut round.split.high);
    }
    map(&mut t.final_independent);
    t
}
