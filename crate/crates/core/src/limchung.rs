//! Iterative mutual-selection baseline with lowest-degree preference.
//!
//! Each round has two bulk-synchronous phases over the unmatched vertices:
//! first every vertex nominates its unmatched neighbor with the smallest
//! live degree (ties to the smaller id), then mutual nominations become
//! matches. Rounds repeat until one adds nothing. Preferring low-degree
//! neighbors keeps hard-to-match vertices in play, which is why this
//! baseline's output size is close to maximum.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::graph::{Graph, VertexId};
use crate::matching::Matching;

const NONE: VertexId = VertexId::MAX;

#[derive(Clone, Debug)]
pub struct LimChungMetrics {
    /// Rounds executed, including a final zero-match round if one ran.
    pub iterations: usize,
    pub matched_pairs: usize,
    pub wall_time: Duration,
    pub workers: usize,
}

pub fn run_limchung(graph: &Graph, workers: usize) -> (Matching, LimChungMetrics) {
    assert!(workers >= 1, "at least one worker required");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool");

    let start = Instant::now();
    let (pairs, iterations, matched) = pool.install(|| matching_rounds(graph));
    let wall_time = start.elapsed();

    // A zero-progress round must only happen once no live edge remains.
    let uncovered = pool.install(|| {
        graph
            .edges()
            .par_iter()
            .find_any(|e| !e.is_loop() && !matched[e.u as usize] && !matched[e.v as usize])
    });
    assert!(
        uncovered.is_none(),
        "terminated with an uncovered edge {uncovered:?}; selection rule bug"
    );

    let metrics = LimChungMetrics {
        iterations,
        matched_pairs: pairs.len(),
        wall_time,
        workers,
    };
    (Matching::from_pairs(pairs), metrics)
}

fn matching_rounds(graph: &Graph) -> (Vec<(VertexId, VertexId)>, usize, Vec<bool>) {
    let n = graph.num_vertices();
    let mut matched = vec![false; n];
    // active: unmatched and not yet known to be out of unmatched neighbors
    let mut active = vec![true; n];
    let mut active_count = n;
    let mut pairs = Vec::new();
    let mut iterations = 0usize;

    while active_count > 0 {
        // live degree at round start: unmatched neighbors, self excluded
        let live_degree: Vec<u32> = (0..n)
            .into_par_iter()
            .map(|v| {
                if !active[v] {
                    return 0;
                }
                graph
                    .neighbors(v as VertexId)
                    .iter()
                    .filter(|&&w| w as usize != v && !matched[w as usize])
                    .count() as u32
            })
            .collect();

        // phase one: nominate the unmatched neighbor with the lowest live
        // degree, ties to the smaller id
        let choice: Vec<VertexId> = (0..n)
            .into_par_iter()
            .map(|v| {
                if !active[v] {
                    return NONE;
                }
                let mut best = NONE;
                let mut best_key = (u32::MAX, NONE);
                for &w in graph.neighbors(v as VertexId) {
                    if w as usize == v || matched[w as usize] {
                        continue;
                    }
                    let key = (live_degree[w as usize], w);
                    if key < best_key {
                        best_key = key;
                        best = w;
                    }
                }
                best
            })
            .collect();

        // phase two: mutual nominations become matches; the smaller endpoint
        // reports the pair
        let new_pairs: Vec<(VertexId, VertexId)> = (0..n)
            .into_par_iter()
            .filter_map(|v| {
                let w = choice[v];
                if w == NONE {
                    return None;
                }
                let v = v as VertexId;
                if v < w && choice[w as usize] == v {
                    Some((v, w))
                } else {
                    None
                }
            })
            .collect();

        iterations += 1;

        for &(v, w) in &new_pairs {
            matched[v as usize] = true;
            matched[w as usize] = true;
        }
        for v in 0..n {
            if active[v] && (matched[v] || choice[v] == NONE) {
                active[v] = false;
                active_count -= 1;
            }
        }
        if new_pairs.is_empty() {
            break;
        }
        pairs.extend(new_pairs);
    }

    (pairs, iterations, matched)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorSpec};
    use crate::validate::check_matching;

    #[test]
    fn path3_round_trace() {
        // round one: 0 and 2 nominate 1; 1 nominates 0 on the degree tie;
        // (0,1) matches. round two: 2 has no unmatched neighbor left.
        let g = generate(&GeneratorSpec::path(3)).unwrap();
        let (matching, metrics) = run_limchung(&g, 2);
        assert_eq!(matching.pairs(), &[(0, 1)]);
        assert_eq!(metrics.iterations, 2);
        let report = check_matching(&g, &matching);
        assert!(report.valid && report.maximal);
    }

    #[test]
    fn star_hub_takes_lowest_leaf() {
        let g = generate(&GeneratorSpec::star(5)).unwrap();
        let (matching, _) = run_limchung(&g, 2);
        assert_eq!(matching.pairs(), &[(0, 1)]);
    }

    #[test]
    fn complete4_perfect_in_two_rounds() {
        // equal degrees, so ties pair (0,1) first and (2,3) next
        let g = generate(&GeneratorSpec::complete(4)).unwrap();
        let (matching, metrics) = run_limchung(&g, 2);
        assert_eq!(matching.pairs(), &[(0, 1), (2, 3)]);
        assert_eq!(metrics.iterations, 2);
    }

    #[test]
    fn output_is_worker_count_independent() {
        let g = generate(&GeneratorSpec::gnm_random(300, 900, 5)).unwrap();
        let (reference, _) = run_limchung(&g, 1);
        for workers in [2, 4] {
            let (matching, _) = run_limchung(&g, workers);
            assert_eq!(matching, reference);
        }
    }

    #[test]
    fn handles_loops_and_duplicates() {
        let g = Graph::from_edges(
            4,
            vec![
                crate::graph::Edge::new(1, 1),
                crate::graph::Edge::new(0, 1),
                crate::graph::Edge::new(0, 1),
                crate::graph::Edge::new(2, 2),
            ],
        )
        .unwrap();
        let (matching, _) = run_limchung(&g, 2);
        assert_eq!(matching.pairs(), &[(0, 1)]);
        let report = check_matching(&g, &matching);
        assert!(report.valid && report.maximal);
    }

    #[test]
    fn isolated_vertices_terminate_quickly() {
        let g = Graph::from_edges(5, Vec::new()).unwrap();
        let (matching, metrics) = run_limchung(&g, 2);
        assert!(matching.is_empty());
        assert_eq!(metrics.iterations, 1);
    }
}
