//! Synthetic graph families. Generation is a pure function of the spec:
//! the same spec and seed reproduce the same edge list bit for bit.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, MAX_VERTEX_ID};

/// Refusal threshold for `complete`: anything larger blows up quadratically.
pub const MAX_COMPLETE_VERTICES: usize = 65_536;

/// Standard power-law quadrant probabilities for `rmat`.
pub const DEFAULT_RMAT_PROBS: [f64; 4] = [0.57, 0.19, 0.19, 0.05];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphFamily {
    Path,
    Cycle,
    Star,
    Complete,
    GnmRandom,
    Rmat,
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorSpec {
    pub family: GraphFamily,
    pub n: usize,
    /// Edge count; used by `GnmRandom` and `Rmat` only.
    pub m: Option<usize>,
    /// Quadrant probabilities (a, b, c, d); used by `Rmat` only.
    pub rmat_probs: Option<[f64; 4]>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn path(n: usize) -> Self {
        Self::fixed(GraphFamily::Path, n)
    }

    pub fn cycle(n: usize) -> Self {
        Self::fixed(GraphFamily::Cycle, n)
    }

    pub fn star(n: usize) -> Self {
        Self::fixed(GraphFamily::Star, n)
    }

    pub fn complete(n: usize) -> Self {
        Self::fixed(GraphFamily::Complete, n)
    }

    pub fn gnm_random(n: usize, m: usize, seed: u64) -> Self {
        GeneratorSpec {
            family: GraphFamily::GnmRandom,
            n,
            m: Some(m),
            rmat_probs: None,
            seed,
        }
    }

    pub fn rmat(n: usize, m: usize, probs: [f64; 4], seed: u64) -> Self {
        GeneratorSpec {
            family: GraphFamily::Rmat,
            n,
            m: Some(m),
            rmat_probs: Some(probs),
            seed,
        }
    }

    fn fixed(family: GraphFamily, n: usize) -> Self {
        GeneratorSpec {
            family,
            n,
            m: None,
            rmat_probs: None,
            seed: 0,
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    let n = spec.n;
    if n < 1 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    if n as u64 > MAX_VERTEX_ID + 1 {
        return Err(Error::InvalidSpec(format!(
            "n = {n} exceeds the supported vertex count"
        )));
    }

    let edges = match spec.family {
        GraphFamily::Path => path_edges(n),
        GraphFamily::Cycle => {
            let mut edges = path_edges(n);
            edges.push(Edge::new(n as VertexId - 1, 0));
            edges
        }
        GraphFamily::Star => (1..n).map(|i| Edge::new(0, i as VertexId)).collect(),
        GraphFamily::Complete => {
            if n > MAX_COMPLETE_VERTICES {
                return Err(Error::InvalidSpec(format!(
                    "complete(n) is refused for n > {MAX_COMPLETE_VERTICES} (got {n})"
                )));
            }
            let mut edges = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n as VertexId {
                for j in i + 1..n as VertexId {
                    edges.push(Edge::new(i, j));
                }
            }
            edges
        }
        GraphFamily::GnmRandom => {
            let m = required_m(spec, "gnm_random")?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            (0..m)
                .map(|_| {
                    let u = rng.random_range(0..n as u64) as VertexId;
                    let v = rng.random_range(0..n as u64) as VertexId;
                    Edge::new(u, v)
                })
                .collect()
        }
        GraphFamily::Rmat => {
            let m = required_m(spec, "rmat")?;
            if !n.is_power_of_two() {
                return Err(Error::InvalidSpec(format!(
                    "rmat requires n to be a power of two (got {n})"
                )));
            }
            let probs = spec
                .rmat_probs
                .ok_or_else(|| Error::InvalidSpec("rmat requires rmat_probs".into()))?;
            if probs.iter().any(|&p| p < 0.0) {
                return Err(Error::InvalidSpec("rmat_probs must be non-negative".into()));
            }
            let sum: f64 = probs.iter().sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidSpec(format!(
                    "rmat_probs must sum to 1 (got {sum})"
                )));
            }
            rmat_edges(n, m, probs, spec.seed)
        }
    };
    Graph::from_edges(n, edges)
}

fn path_edges(n: usize) -> Vec<Edge> {
    (0..n.saturating_sub(1))
        .map(|i| Edge::new(i as VertexId, i as VertexId + 1))
        .collect()
}

fn required_m(spec: &GeneratorSpec, family: &str) -> Result<usize> {
    spec.m
        .ok_or_else(|| Error::InvalidSpec(format!("{family} requires an edge count m")))
}

/// Recursive quadrant descent: each level halves the adjacency matrix and
/// the drawn quadrant contributes one bit to each endpoint id.
fn rmat_edges(n: usize, m: usize, probs: [f64; 4], seed: u64) -> Vec<Edge> {
    let levels = n.trailing_zeros();
    let [a, b, c, _] = probs;
    let ab = a + b;
    let abc = ab + c;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| {
            let mut u: u64 = 0;
            let mut v: u64 = 0;
            for _ in 0..levels {
                let r: f64 = rng.random();
                let (bit_u, bit_v) = if r < a {
                    (0, 0)
                } else if r < ab {
                    (0, 1)
                } else if r < abc {
                    (1, 0)
                } else {
                    (1, 1)
                };
                u = (u << 1) | bit_u;
                v = (v << 1) | bit_v;
            }
            Edge::new(u as VertexId, v as VertexId)
        })
        .collect()
}
