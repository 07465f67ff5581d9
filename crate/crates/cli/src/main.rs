mod bench;
mod exit;
mod trace;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cfon_core::exact::{chi_on_exact, first_cfon_violation, ChiResult};
use cfon_core::generators::gen_family;
use cfon_core::greedy::cf_color_bounded_degree;
use cfon_core::hypergraph::open_neighborhood_hypergraph;
use cfon_core::io::{parse_coloring, parse_graph, write_coloring, write_graph};
use cfon_core::lower_bounds::{
    check_line_clique_lb, edge_coloring_from_line, lower_bound_line_clique, LineCliqueCheck,
};
use cfon_core::random::{cf_color_random, choose_parameters};
use cfon_core::{cfon_color_skfree, Coloring, Graph, PipelineOptions, RandomColorConfig};
use clap::{Parser, Subcommand, ValueEnum};

use exit::{join_one_based, Failure};
use trace::Trace;

#[derive(Parser)]
#[command(name = "cfon", version, about = "Conflict-free open-neighborhood coloring toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a named family.
    Gen {
        /// complete, path, cycle, star, subdivided-clique, gnp, line-complete, line-gnp, line-hyper
        family: String,
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Color a graph and self-verify the result.
    Color {
        graph: PathBuf,
        /// Star size: the input is assumed S_k-free.
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Algo::Pipeline)]
        algo: Algo,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a JSON trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Drop isolated vertices before coloring; they get color 1 in the output.
        #[arg(long)]
        strip_isolated: bool,
        /// Reject inputs containing an induced S_k.
        #[arg(long)]
        check_free: bool,
        /// Output file (default: stdout).
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring; exit 1 and report the first unsatisfied vertex.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Exact CFON chromatic number (small graphs only).
    Chi {
        graph: PathBuf,
        /// Stop searching above this many colors.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Look for an induced S_k; exit 1 with a witness if found.
    CheckFree { graph: PathBuf, k: usize },
    /// Lower bound for L(K_m); with a coloring, certify it or find a violated edge.
    LbLineClique {
        m: usize,
        /// Vertex coloring of L(K_m), vertices in lexicographic edge order.
        coloring: Option<PathBuf>,
    },
    /// Run the pipeline over a TOML suite and write a CSV report.
    Bench {
        suite: PathBuf,
        out: PathBuf,
        /// Also write the bound-shape report here.
        #[arg(long)]
        shape: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Pipeline,
    Greedy,
    Random,
    Exact,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Pipeline => "pipeline",
            Algo::Greedy => "greedy",
            Algo::Random => "random",
            Algo::Exact => "exact",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE as u8
            } else {
                exit::OK as u8
            });
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code as u8)
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Gen {
            family,
            params,
            seed,
            out,
        } => {
            let params: Vec<&str> = params.iter().map(String::as_str).collect();
            let g = gen_family(&family, &params, seed)?;
            emit(out.as_deref(), &write_graph(&g))?;
            Ok(exit::OK)
        }
        Command::Color {
            graph,
            k,
            algo,
            seed,
            trace,
            strip_isolated,
            check_free,
            out,
        } => {
            let g = read_graph(&graph)?;
            let opts = ColorOpts {
                k,
                algo,
                seed,
                strip_isolated,
                check_free,
            };
            let (coloring, t) = color(&g, &opts)?;
            if let Some(path) = trace {
                let json = serde_json::to_string_pretty(&t).map_err(Failure::internal)?;
                fs::write(&path, json + "\n")?;
            }
            emit(out.as_deref(), &write_coloring(&coloring))?;
            Ok(exit::OK)
        }
        Command::Verify { graph, coloring } => {
            let g = read_graph(&graph)?;
            let c = parse_coloring(&read(&coloring)?)?;
            if c.len() != g.n() {
                return Err(Failure::usage(format!(
                    "coloring has {} vertices but the graph has {}",
                    c.len(),
                    g.n()
                )));
            }
            match first_cfon_violation(&g, &c)? {
                None => {
                    println!("ok: {} colors", c.distinct());
                    Ok(exit::OK)
                }
                Some(v) => {
                    println!("vertex {} has no uniquely colored neighbor", v + 1);
                    Ok(exit::COUNTEREXAMPLE)
                }
            }
        }
        Command::Chi { graph, max } => {
            let g = read_graph(&graph)?;
            match chi_on_exact(&g, max)? {
                ChiResult::Exact { chi, .. } => println!("{chi}"),
                ChiResult::InfeasibleWithin(cap) => println!("> {cap}"),
            }
            Ok(exit::OK)
        }
        Command::CheckFree { graph, k } => {
            let g = read_graph(&graph)?;
            match g.find_induced_star(k)? {
                None => {
                    println!("S_{k}-free");
                    Ok(exit::OK)
                }
                Some(w) => {
                    println!(
                        "induced S_{k}: center {} leaves {}",
                        w.center + 1,
                        join_one_based(&w.leaves)
                    );
                    Ok(exit::COUNTEREXAMPLE)
                }
            }
        }
        Command::LbLineClique { m, coloring } => {
            let bound = lower_bound_line_clique(m)?;
            println!("lower bound: {bound}");
            let Some(path) = coloring else {
                return Ok(exit::OK);
            };
            let kmm = gen_family("complete", &[&m.to_string()], None)?;
            let (_, map) = kmm.line_graph()?;
            let c = parse_coloring(&read(&path)?)?;
            if c.len() != map.len() {
                return Err(Failure::usage(format!(
                    "L(K_{m}) has {} vertices but the coloring has {}",
                    map.len(),
                    c.len()
                )));
            }
            match check_line_clique_lb(m, &edge_coloring_from_line(&map, &c)?)? {
                LineCliqueCheck::Certificate { colors_used, bound } => {
                    println!("certificate: {colors_used} colors >= {bound}");
                    Ok(exit::OK)
                }
                LineCliqueCheck::Counterexample { edge: (u, v) } => {
                    println!(
                        "counterexample: edge {{{}, {}}} of K_{m} is not satisfied",
                        u + 1,
                        v + 1
                    );
                    Ok(exit::COUNTEREXAMPLE)
                }
            }
        }
        Command::Bench { suite, out, shape } => {
            let suite = bench::parse_suite(&read(&suite)?)?;
            let rows = bench::run(&suite)?;
            fs::write(&out, bench::csv(&rows))?;
            if let Some(path) = shape {
                fs::write(&path, bench::shape_csv(&rows))?;
            }
            Ok(exit::OK)
        }
    }
}

struct ColorOpts {
    k: usize,
    algo: Algo,
    seed: u64,
    strip_isolated: bool,
    check_free: bool,
}

/// Colors `g` with the chosen algorithm and verifies the result before
/// returning it. Any verification failure is an internal error.
fn color(g: &Graph, opts: &ColorOpts) -> Result<(Coloring, Trace), Failure> {
    let (work, ids) = if opts.strip_isolated {
        g.strip_isolated()
    } else {
        (g.clone(), g.vertices().collect())
    };
    let stripped: Vec<usize> = {
        let mut kept = vec![false; g.n()];
        ids.iter().for_each(|&v| kept[v] = true);
        g.vertices().filter(|&v| !kept[v]).map(|v| v + 1).collect()
    };
    if let Some(v) = work.first_isolated() {
        return Err(cfon_core::Error::IsolatedVertex(ids[v]).into());
    }
    if opts.check_free {
        if let Some(w) = work.find_induced_star(opts.k)? {
            return Err(cfon_core::Error::NotStarFree {
                k: opts.k,
                center: ids[w.center],
                leaves: w.leaves.iter().map(|&v| ids[v]).collect(),
            }
            .into());
        }
    }

    let mut t = Trace {
        schema: trace::SCHEMA,
        algo: opts.algo.name(),
        seed: opts.seed,
        k: opts.k,
        n: g.n(),
        m: g.m(),
        delta: g.max_degree(),
        colors_used: 0,
        stripped,
        pipeline: None,
        random: None,
        chi: None,
    };
    let local = if work.n() == 0 {
        Coloring::blank(0)
    } else {
        match opts.algo {
            Algo::Pipeline => {
                let mut popts = PipelineOptions::new(opts.k, opts.seed);
                popts.check_free = false;
                let (c, pt) = cfon_color_skfree(&work, &popts)?;
                t.pipeline = Some(trace::relabel(pt, &ids));
                c
            }
            Algo::Greedy => cf_color_bounded_degree(&open_neighborhood_hypergraph(&work)?),
            Algo::Random => {
                let h = open_neighborhood_hypergraph(&work)?;
                let p = choose_parameters(&h)?;
                let (c, stats) = cf_color_random(&h, p.t, p.gamma, &RandomColorConfig::with_seed(opts.seed))?;
                t.random = Some(stats);
                c
            }
            Algo::Exact => match chi_on_exact(&work, None)? {
                ChiResult::Exact { chi, witness } => {
                    t.chi = Some(chi);
                    witness
                }
                ChiResult::InfeasibleWithin(cap) => {
                    return Err(Failure::internal(format!("uncapped exact search stopped at {cap}")))
                }
            },
        }
    };
    match first_cfon_violation(&work, &local) {
        Ok(None) => {}
        Ok(Some(v)) => {
            return Err(Failure::internal(format!(
                "self-verification failed at vertex {}",
                ids[v] + 1
            )))
        }
        Err(e) => return Err(Failure::internal(e)),
    }

    let mut full = Coloring::new(vec![1; g.n()]);
    for (new, &old) in ids.iter().enumerate() {
        full.set(old, local[new]);
    }
    t.colors_used = full.distinct();
    Ok((full, t))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| {
        let f: Failure = e.into();
        Failure::new(f.code, f.error.context(path.display().to_string()))
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
