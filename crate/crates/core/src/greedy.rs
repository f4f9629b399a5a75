//! Sequential greedy maximal matching over a fixed edge order. With one
//! worker and the same order this is exactly what the concurrent pass
//! computes, which makes it the determinism oracle.

use crate::graph::{EdgeOrder, Graph};
use crate::matching::Matching;

pub fn run_greedy(graph: &Graph, order: EdgeOrder) -> Matching {
    let edges = graph.ordered_edges(order);
    let mut matched = vec![false; graph.num_vertices()];
    let mut pairs = Vec::new();
    for edge in edges.iter() {
        if edge.is_loop() {
            continue;
        }
        let (u, v) = edge.canonical();
        if !matched[u as usize] && !matched[v as usize] {
            matched[u as usize] = true;
            matched[v as usize] = true;
            pairs.push((u, v));
        }
    }
    Matching::from_pairs(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GeneratorSpec};
    use crate::skipper::run_skipper;

    #[test]
    fn path4_input_order() {
        let g = generate(&GeneratorSpec::path(4)).unwrap();
        assert_eq!(run_greedy(&g, EdgeOrder::Input).pairs(), &[(0, 1), (2, 3)]);
    }

    #[test]
    fn triangle_admits_one_pair() {
        let g = generate(&GeneratorSpec::cycle(3)).unwrap();
        assert_eq!(run_greedy(&g, EdgeOrder::Input).len(), 1);
    }

    #[test]
    fn equals_single_worker_concurrent_pass() {
        for spec in [
            GeneratorSpec::path(9),
            GeneratorSpec::cycle(8),
            GeneratorSpec::star(7),
            GeneratorSpec::complete(6),
            GeneratorSpec::gnm_random(50, 200, 3),
        ] {
            let g = generate(&spec).unwrap();
            for order in [EdgeOrder::Input, EdgeOrder::Shuffled(11)] {
                let greedy = run_greedy(&g, order);
                let run = run_skipper(&g, 1, order);
                assert_eq!(greedy, run.matching);
            }
        }
    }

    #[test]
    fn pure_function_of_graph_and_order() {
        let g = generate(&GeneratorSpec::gnm_random(40, 120, 9)).unwrap();
        let a = run_greedy(&g, EdgeOrder::Shuffled(5));
        let b = run_greedy(&g, EdgeOrder::Shuffled(5));
        assert_eq!(a, b);
    }
}
