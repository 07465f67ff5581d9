use std::fmt;

use cfon_core::Error;

pub const OK: i32 = 0;
pub const COUNTEREXAMPLE: i32 = 1;
pub const USAGE: i32 = 2;
pub const PRECONDITION: i32 = 3;
pub const INTERNAL: i32 = 4;

/// A failure carrying the process exit code it should produce.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: i32, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }

    pub fn usage(msg: impl fmt::Display) -> Self {
        Self::new(USAGE, anyhow::anyhow!("{msg}"))
    }

    pub fn internal(msg: impl fmt::Display) -> Self {
        Self::new(INTERNAL, anyhow::anyhow!("{msg}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::IsolatedVertex(_) | Error::EmptyNeighborhood(_) | Error::NotStarFree { .. } => PRECONDITION,
            Error::Invariant(_) | Error::EscalationLimit(_) => INTERNAL,
            _ => USAGE,
        };
        Failure::new(code, anyhow::anyhow!(one_based(&e)))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(USAGE, e)
    }
}

/// Renders a core error with vertex ids shifted to the 1-based file numbering.
fn one_based(e: &Error) -> String {
    match e {
        Error::IsolatedVertex(v) => format!("vertex {} is isolated (use --strip-isolated to drop it)", v + 1),
        Error::EmptyNeighborhood(v) => format!("vertex {} has no neighbor inside the base set", v + 1),
        Error::SelfLoop(v) => format!("self-loop at vertex {}", v + 1),
        Error::DuplicateEdge(u, v) => format!("duplicate edge {{{}, {}}}", u + 1, v + 1),
        Error::NotIndependent(u, v) => format!("set is not independent: edge {{{}, {}}}", u + 1, v + 1),
        Error::NotStarFree { k, center, leaves } => format!(
            "graph is not S_{k}-free: center {}, leaves {}",
            center + 1,
            join_one_based(leaves)
        ),
        other => other.to_string(),
    }
}

pub fn join_one_based(vs: &[usize]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}
