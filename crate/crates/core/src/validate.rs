//! Output checkers and a small exact-matching oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::matching::Matching;
use crate::skipper::{ACCESSIBLE, MATCHED};

/// Cap on recorded violations; the report flags still reflect the full scan.
pub const MAX_VIOLATIONS: usize = 100;

/// Vertex-count ceiling for the exhaustive maximum-matching search.
pub const EXHAUSTIVE_SEARCH_LIMIT: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    /// Pair is not an edge of the graph (or an endpoint id is out of range).
    NotAnEdge { u: VertexId, v: VertexId },
    /// Pair joins a vertex to itself.
    LoopPair { v: VertexId },
    /// Vertex appears in more than one pair.
    RepeatedEndpoint { v: VertexId },
    /// Non-loop edge with both endpoints unmatched.
    UncoveredEdge { u: VertexId, v: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotAnEdge { u, v } => write!(f, "pair ({u}, {v}) is not a graph edge"),
            Violation::LoopPair { v } => write!(f, "pair matches vertex {v} with itself"),
            Violation::RepeatedEndpoint { v } => {
                write!(f, "vertex {v} appears in more than one pair")
            }
            Violation::UncoveredEdge { u, v } => {
                write!(f, "edge ({u}, {v}) has no matched endpoint")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchingReport {
    /// Pairs are graph edges and endpoint-disjoint.
    pub valid: bool,
    /// Every non-loop edge touches a matched endpoint.
    pub maximal: bool,
    pub violations: Vec<Violation>,
}

impl MatchingReport {
    pub fn ok(&self) -> bool {
        self.valid && self.maximal
    }
}

/// Reports on validity and maximality; never fails.
pub fn check_matching(graph: &Graph, matching: &Matching) -> MatchingReport {
    let n = graph.num_vertices();
    let mut seen = vec![false; n];
    let mut valid = true;
    let mut maximal = true;
    let mut violations = Vec::new();
    let record = |violations: &mut Vec<Violation>, violation: Violation| {
        if violations.len() < MAX_VIOLATIONS {
            violations.push(violation);
        }
    };

    for &(u, v) in matching.pairs() {
        if u == v {
            valid = false;
            record(&mut violations, Violation::LoopPair { v });
        } else if (u as usize) >= n || (v as usize) >= n || !graph.has_edge(u, v) {
            valid = false;
            record(&mut violations, Violation::NotAnEdge { u, v });
        }
        for endpoint in [u, v] {
            if let Some(slot) = seen.get_mut(endpoint as usize) {
                if *slot {
                    valid = false;
                    record(&mut violations, Violation::RepeatedEndpoint { v: endpoint });
                }
                *slot = true;
            }
        }
    }

    for edge in graph.edges() {
        if edge.is_loop() {
            continue;
        }
        if !seen[edge.u as usize] && !seen[edge.v as usize] {
            maximal = false;
            record(
                &mut violations,
                Violation::UncoveredEdge {
                    u: edge.u,
                    v: edge.v,
                },
            );
        }
    }

    MatchingReport {
        valid,
        maximal,
        violations,
    }
}

/// Exact maximum-matching size by exhaustive search with memoized vertex
/// masks; refuses graphs above [`EXHAUSTIVE_SEARCH_LIMIT`] vertices.
pub fn brute_force_maximum_matching(graph: &Graph) -> Result<usize> {
    let n = graph.num_vertices();
    if n > EXHAUSTIVE_SEARCH_LIMIT {
        return Err(Error::TooLargeForExhaustiveSearch {
            num_vertices: n,
            limit: EXHAUSTIVE_SEARCH_LIMIT,
        });
    }
    if n == 0 {
        return Ok(0);
    }
    let mut memo = vec![u8::MAX; 1usize << n];
    Ok(best_matching(graph, 0, &mut memo) as usize)
}

fn best_matching(graph: &Graph, used: u32, memo: &mut [u8]) -> u8 {
    let n = graph.num_vertices();
    let free = !used & ((1u32 << n) - 1);
    if free == 0 {
        return 0;
    }
    if memo[used as usize] != u8::MAX {
        return memo[used as usize];
    }
    let v = free.trailing_zeros();
    // either v stays unmatched or it pairs with a free neighbor
    let mut best = best_matching(graph, used | 1 << v, memo);
    for &w in graph.neighbors(v as VertexId) {
        if w != v as VertexId && free >> w & 1 == 1 {
            best = best.max(1 + best_matching(graph, used | 1 << v | 1 << w, memo));
        }
    }
    memo[used as usize] = best;
    best
}

/// True iff no cell is reserved and the matched cells are exactly the
/// matching's endpoints.
pub fn check_state_consistency(states: &[u8], matching: &Matching) -> bool {
    let mut expect = vec![false; states.len()];
    for (u, v) in matching.iter() {
        for endpoint in [u, v] {
            let Some(slot) = expect.get_mut(endpoint as usize) else {
                return false;
            };
            *slot = true;
        }
    }
    states
        .iter()
        .zip(&expect)
        .all(|(&state, &matched)| state == if matched { MATCHED } else { ACCESSIBLE })
}
