//! `bench`: runs the pipeline over a TOML suite and writes one CSV row per
//! (instance, seed).
//!
//! ```toml
//! [[instance]]
//! family = "line-complete"
//! params = ["10"]
//! k = 3                  # default 3
//! seeds = [1, 2, 3]      # default [0]
//! strip_isolated = true  # default false
//! ```
//!
//! Instances run in parallel; rows are written in suite order.

use std::fmt::Write as _;
use std::time::Instant;

use cfon_core::generators::gen_family;
use cfon_core::{cfon_color_skfree, PeelTrace, PipelineOptions};
use rayon::prelude::*;
use serde::Deserialize;

use crate::exit::Failure;

pub const HEADER: &str = "family,n,m,delta,k,r,product_space,distinct_final,resamples,millis";
pub const SHAPE_HEADER: &str = "family,n,m,delta,k,r,product_space,analytic_shape,distinct_final";

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(default)]
    pub instance: Vec<Instance>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub family: String,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub strip_isolated: bool,
}

fn default_k() -> usize {
    3
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

pub struct Row {
    family: String,
    n: usize,
    m: usize,
    k: usize,
    millis: u128,
    trace: PeelTrace,
}

pub fn parse_suite(text: &str) -> Result<Suite, Failure> {
    toml::from_str(text).map_err(|e| Failure::usage(format!("bad suite: {e}")))
}

pub fn run(suite: &Suite) -> Result<Vec<Row>, Failure> {
    let jobs: Vec<(&Instance, u64)> = suite
        .instance
        .iter()
        .flat_map(|inst| inst.seeds.iter().map(move |&s| (inst, s)))
        .collect();
    jobs.par_iter().map(|&(inst, seed)| run_one(inst, seed)).collect()
}

fn run_one(inst: &Instance, seed: u64) -> Result<Row, Failure> {
    let params: Vec<&str> = inst.params.iter().map(String::as_str).collect();
    let mut g = gen_family(&inst.family, &params, Some(seed))?;
    if inst.strip_isolated {
        g = g.strip_isolated().0;
    }
    let start = Instant::now();
    let (_, trace) = cfon_color_skfree(&g, &PipelineOptions::new(inst.k, seed))?;
    Ok(Row {
        family: inst.family.clone(),
        n: g.n(),
        m: g.m(),
        k: inst.k,
        millis: start.elapsed().as_millis(),
        trace,
    })
}

fn opt(x: Option<u128>) -> String {
    x.map(|v| v.to_string()).unwrap_or_else(|| "overflow".into())
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = format!("{HEADER}\n");
    for r in rows {
        let t = &r.trace;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.family,
            r.n,
            r.m,
            t.delta,
            r.k,
            t.r,
            opt(t.product_space),
            t.distinct_final,
            t.resamples,
            r.millis
        );
    }
    out
}

/// Second report placing the analytic `k * (log2 Δ + 2)^3` beside the
/// measured product space.
pub fn shape_csv(rows: &[Row]) -> String {
    let mut out = format!("{SHAPE_HEADER}\n");
    for r in rows {
        let t = &r.trace;
        let shape = r.k as f64 * ((t.delta.max(1) as f64).log2() + 2.0).powi(3);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.1},{}",
            r.family,
            r.n,
            r.m,
            t.delta,
            r.k,
            t.r,
            opt(t.product_space),
            shape,
            t.distinct_final
        );
    }
    out
}
