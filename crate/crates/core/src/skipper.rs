//! Single-pass asynchronous maximal matching over a shared byte-per-vertex
//! state array.
//!
//! Every vertex is accessible (0), reserved (1), or matched (2). A worker
//! handles an edge by reserving the lower-id endpoint with a CAS and then
//! trying to move the other endpoint straight to matched. Because every
//! worker reserves the lower id first, no reservation cycle can form. Each
//! edge is dispatched exactly once; contention is resolved by spinning on
//! the endpoint states, never by re-queuing the edge.
//!
//! Workers can transiently chain up: one holds an edge's first endpoint and
//! waits on its second, which a second worker holds as its own first
//! endpoint, and so on. Such a wait chain is no longer than the smaller of
//! the worker count and the graph diameter, and it always drains because
//! the last worker in the chain waits on a vertex nobody holds.

use std::borrow::Cow;
use std::ops::Range;
use std::sync::atomic::{AtomicU8, Ordering};
use std::thread;
use std::time::{Duration, Instant};

use crate::graph::{Edge, EdgeOrder, Graph, VertexId};
use crate::matching::Matching;

/// Unmatched and claimable by any worker.
pub const ACCESSIBLE: u8 = 0;
/// Temporarily held by exactly one worker.
pub const RESERVED: u8 = 1;
/// Endpoint of a matched edge; terminal.
pub const MATCHED: u8 = 2;

/// One atomically mutable byte per vertex.
///
/// A successful reserve acquires the vertex; the stores that publish a match
/// or a release pair with the acquiring loads, so a reader that observes
/// `MATCHED` also observes everything its writer did first.
pub struct VertexStates {
    cells: Box<[AtomicU8]>,
}

impl VertexStates {
    pub fn new(num_vertices: usize) -> Self {
        let cells = std::iter::repeat_with(|| AtomicU8::new(ACCESSIBLE))
            .take(num_vertices)
            .collect();
        VertexStates { cells }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn load(&self, v: VertexId) -> u8 {
        self.cells[v as usize].load(Ordering::Acquire)
    }

    /// 0 -> 1. On success the caller owns `v` until it publishes 2 or 0.
    pub fn try_reserve(&self, v: VertexId) -> bool {
        self.cells[v as usize]
            .compare_exchange(ACCESSIBLE, RESERVED, Ordering::Acquire, Ordering::Acquire)
            .is_ok()
    }

    /// 0 -> 2 in a single step (the second endpoint of a match).
    pub fn try_match_accessible(&self, v: VertexId) -> bool {
        self.cells[v as usize]
            .compare_exchange(ACCESSIBLE, MATCHED, Ordering::AcqRel, Ordering::Acquire)
            .is_ok()
    }

    /// 1 -> 2. Only the worker holding the reservation may call this, so a
    /// plain store suffices.
    pub fn set_matched(&self, v: VertexId) {
        self.cells[v as usize].store(MATCHED, Ordering::Release);
    }

    /// 1 -> 0. Only the worker holding the reservation may call this.
    pub fn release(&self, v: VertexId) {
        self.cells[v as usize].store(ACCESSIBLE, Ordering::Release);
    }

    pub fn snapshot(&self) -> Vec<u8> {
        self.cells
            .iter()
            .map(|c| c.load(Ordering::Acquire))
            .collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeOutcome {
    Matched,
    Skipped,
}

/// Spin throttle: CPU relax each time, deschedule every 64th.
struct Spinner(u32);

impl Spinner {
    fn new() -> Self {
        Spinner(0)
    }

    fn spin(&mut self) {
        self.0 = self.0.wrapping_add(1);
        if self.0 % 64 == 0 {
            thread::yield_now();
        } else {
            std::hint::spin_loop();
        }
    }
}

/// Processes one edge to completion. Counts every reserve and match CAS in
/// `cas_executions`, successful or not. On a match the pair (min, max) is
/// appended to the worker-local `buffer`.
pub fn process_edge(
    states: &VertexStates,
    x: VertexId,
    y: VertexId,
    buffer: &mut Vec<(VertexId, VertexId)>,
    cas_executions: &mut u64,
) -> EdgeOutcome {
    if x == y {
        // self-loops can never match
        return EdgeOutcome::Skipped;
    }
    // reserving the lower id on every edge rules out reservation cycles
    let (u, v) = if x < y { (x, y) } else { (y, x) };
    let mut spinner = Spinner::new();
    while states.load(u) != MATCHED && states.load(v) != MATCHED {
        *cas_executions += 1;
        if !states.try_reserve(u) {
            spinner.spin();
            continue;
        }
        // u is exclusively ours until we publish MATCHED or ACCESSIBLE
        while states.load(v) != MATCHED {
            *cas_executions += 1;
            if states.try_match_accessible(v) {
                states.set_matched(u);
                buffer.push((u, v));
                return EdgeOutcome::Matched;
            }
            spinner.spin();
        }
        // v went to another edge; give u back
        states.release(u);
    }
    EdgeOutcome::Skipped
}

/// Contiguous per-worker ranges covering `0..num_edges`; sizes differ by at
/// most one.
pub fn partition_edges(num_edges: usize, workers: usize) -> Vec<Range<usize>> {
    assert!(workers >= 1, "at least one worker required");
    let base = num_edges / workers;
    let extra = num_edges % workers;
    let mut ranges = Vec::with_capacity(workers);
    let mut start = 0;
    for w in 0..workers {
        let len = base + usize::from(w < extra);
        ranges.push(start..start + len);
        start += len;
    }
    ranges
}

#[derive(Clone, Debug)]
pub struct SkipperMetrics {
    /// Total reserve and match CAS attempts across all workers.
    pub cas_executions: u64,
    pub matched_pairs: usize,
    /// Covers state initialization, the edge pass, and buffer aggregation.
    pub wall_time: Duration,
    pub workers: usize,
}

/// A completed pass: the matching, its counters, and the final state array.
pub struct SkipperRun {
    pub matching: Matching,
    pub metrics: SkipperMetrics,
    pub states: VertexStates,
}

/// Runs the matching pass with `workers` threads over the edge sequence in
/// the given order. Worker-local match buffers are concatenated in worker-id
/// order. Panics if any vertex is still reserved afterwards; that would be a
/// protocol bug.
pub fn run_skipper(graph: &Graph, workers: usize, order: EdgeOrder) -> SkipperRun {
    assert!(workers >= 1, "at least one worker required");
    let edges: Cow<'_, [Edge]> = graph.ordered_edges(order);

    let start = Instant::now();
    let states = VertexStates::new(graph.num_vertices());
    let results: Vec<(Vec<(VertexId, VertexId)>, u64)> = if workers == 1 {
        vec![edge_pass(&states, &edges)]
    } else {
        let ranges = partition_edges(edges.len(), workers);
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .into_iter()
                .map(|range| {
                    let states = &states;
                    let edges = &edges[..];
                    scope.spawn(move || edge_pass(states, &edges[range]))
                })
                .collect();
            // joining in spawn order keeps buffers in worker-id order
            handles
                .into_iter()
                .map(|h| h.join().expect("skipper worker panicked"))
                .collect()
        })
    };

    let mut pairs = Vec::new();
    let mut cas_executions = 0u64;
    for (buffer, cas) in results {
        pairs.extend(buffer);
        cas_executions += cas;
    }
    let wall_time = start.elapsed();

    for v in 0..states.len() {
        assert_ne!(
            states.load(v as VertexId),
            RESERVED,
            "vertex {v} still reserved after the pass"
        );
    }

    let matched_pairs = pairs.len();
    SkipperRun {
        matching: Matching::from_pairs(pairs),
        metrics: SkipperMetrics {
            cas_executions,
            matched_pairs,
            wall_time,
            workers,
        },
        states,
    }
}

fn edge_pass(states: &VertexStates, edges: &[Edge]) -> (Vec<(VertexId, VertexId)>, u64) {
    let mut buffer = Vec::new();
    let mut cas = 0u64;
    for edge in edges {
        process_edge(states, edge.u, edge.v, &mut buffer, &mut cas);
    }
    (buffer, cas)
}
