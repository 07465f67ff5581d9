//! Deterministic and seeded graph families.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Vertex;

/// A named graph family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Complete(usize),
    Path(usize),
    Cycle(usize),
    /// `S_k`: one hub and `k` leaves.
    Star(usize),
    /// `K_n` with every edge subdivided once.
    SubdividedClique(usize),
    Gnp {
        n: usize,
        p: f64,
    },
    /// Line graph of `K_m`.
    LineComplete(usize),
    /// Line graph of `G(n, p)` with isolated vertices of the result removed.
    LineGnp {
        n: usize,
        p: f64,
    },
    /// Intersection graph of `edges` distinct random `rank`-subsets of `0..n`.
    /// Every such graph is `S_{rank+1}`-free.
    LineHyper {
        n: usize,
        edges: usize,
        rank: usize,
    },
}

impl Family {
    /// Parses a family tag (`-` and `_` are interchangeable) and its textual parameters.
    pub fn parse(name: &str, params: &[&str]) -> Result<Self> {
        let tag = name.replace('_', "-");
        let bad = |msg: &str| Error::BadParams {
            family: tag.clone(),
            msg: msg.to_string(),
        };
        let int = |i: usize| -> Result<usize> {
            params
                .get(i)
                .ok_or_else(|| bad("missing parameter"))?
                .parse()
                .map_err(|_| bad("expected a non-negative integer"))
        };
        let prob = |i: usize| -> Result<f64> {
            params
                .get(i)
                .ok_or_else(|| bad("missing parameter"))?
                .parse()
                .map_err(|_| bad("expected a probability"))
        };
        let arity = match tag.as_str() {
            "complete" | "path" | "cycle" | "star" | "subdivided-clique" | "line-complete" => 1,
            "gnp" | "line-gnp" => 2,
            "line-hyper" => 3,
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        if params.len() != arity {
            return Err(bad(&format!("expected {arity} parameter(s), got {}", params.len())));
        }
        let family = match tag.as_str() {
            "complete" => Family::Complete(int(0)?),
            "path" => Family::Path(int(0)?),
            "cycle" => Family::Cycle(int(0)?),
            "star" => Family::Star(int(0)?),
            "subdivided-clique" => Family::SubdividedClique(int(0)?),
            "line-complete" => Family::LineComplete(int(0)?),
            "gnp" => Family::Gnp {
                n: int(0)?,
                p: prob(1)?,
            },
            "line-gnp" => Family::LineGnp {
                n: int(0)?,
                p: prob(1)?,
            },
            _ => Family::LineHyper {
                n: int(0)?,
                edges: int(1)?,
                rank: int(2)?,
            },
        };
        family.validate()?;
        Ok(family)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::Complete(_) => "complete",
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Star(_) => "star",
            Family::SubdividedClique(_) => "subdivided-clique",
            Family::Gnp { .. } => "gnp",
            Family::LineComplete(_) => "line-complete",
            Family::LineGnp { .. } => "line-gnp",
            Family::LineHyper { .. } => "line-hyper",
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| {
            Err(Error::BadParams {
                family: self.tag().to_string(),
                msg: msg.to_string(),
            })
        };
        match *self {
            Family::Complete(n) | Family::Path(n) if n < 1 => bad("n must be >= 1"),
            Family::Cycle(n) if n < 3 => bad("cycle needs n >= 3"),
            Family::Star(k) if k < 1 => bad("star needs k >= 1"),
            Family::SubdividedClique(n) if n < 2 => bad("subdivided clique needs n >= 2"),
            Family::LineComplete(m) if m < 2 => bad("line graph of K_m needs m >= 2"),
            Family::Gnp { n, p } | Family::LineGnp { n, p } => {
                if n < 1 {
                    bad("n must be >= 1")
                } else if !(0.0..=1.0).contains(&p) {
                    bad("p must lie in [0, 1]")
                } else {
                    Ok(())
                }
            }
            Family::LineHyper { n, edges, rank } => {
                if rank < 1 || rank > n {
                    bad("rank must lie in 1..=n")
                } else if edges < 1 {
                    bad("need at least one hyperedge")
                } else if (edges as f64) > binomial(n, rank) {
                    bad("more hyperedges than rank-subsets")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Builds the graph. Random families draw from ChaCha8 seeded with `seed`
    /// (0 when absent); the others ignore it.
    pub fn generate(&self, seed: Option<u64>) -> Result<Graph> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
        match *self {
            Family::Complete(n) => Graph::from_edges(n, pairs(n)),
            Family::Path(n) => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
            Family::Cycle(n) => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
            Family::Star(k) => Graph::from_edges(k + 1, (1..=k).map(|i| (0, i))),
            Family::SubdividedClique(n) => {
                // branch vertices 0..n, then one subdivision vertex per pair in lex order
                let edges = pairs(n).enumerate().flat_map(|(i, (u, v))| [(u, n + i), (v, n + i)]);
                Graph::from_edges(n + n * (n - 1) / 2, edges)
            }
            Family::Gnp { n, p } => gnp(n, p, &mut rng),
            Family::LineComplete(m) => Ok(Family::Complete(m).generate(None)?.line_graph()?.0),
            Family::LineGnp { n, p } => {
                let g = gnp(n, p, &mut rng)?;
                Ok(g.line_graph()?.0.strip_isolated().0)
            }
            Family::LineHyper { n, edges, rank } => {
                let mut sets = BTreeSet::new();
                while sets.len() < edges {
                    let mut s: Vec<Vertex> = index::sample(&mut rng, n, rank).into_vec();
                    s.sort_unstable();
                    sets.insert(s);
                }
                let sets: Vec<Vec<Vertex>> = sets.into_iter().collect();
                let mut incident = vec![Vec::new(); n];
                for (i, s) in sets.iter().enumerate() {
                    for &v in s {
                        incident[v].push(i);
                    }
                }
                let mut adjacent = BTreeSet::new();
                for list in &incident {
                    for (a, &i) in list.iter().enumerate() {
                        for &j in &list[a + 1..] {
                            adjacent.insert((i, j));
                        }
                    }
                }
                Graph::from_edges(sets.len(), adjacent)
            }
        }
    }
}

/// Convenience wrapper: parse a family tag and parameters, then generate.
pub fn gen_family(name: &str, params: &[&str], seed: Option<u64>) -> Result<Graph> {
    Family::parse(name, params)?.generate(seed)
}

fn pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let edges: Vec<_> = pairs(n).filter(|_| rng.gen_bool(p)).collect();
    Graph::from_edges(n, edges)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
