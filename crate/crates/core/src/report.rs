//! Per-run metric records and cross-run aggregation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ALGORITHM_SKIPPER: &str = "skipper";
pub const ALGORITHM_LIMCHUNG: &str = "limchung";
pub const ALGORITHM_GREEDY: &str = "greedy";

/// One emitted record per run. Optional fields are algorithm-specific, so
/// the serialized key set is fixed per algorithm.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunMetrics {
    pub algorithm: String,
    /// Label identifying the input graph; used to pair runs for comparison.
    pub graph: String,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub workers: usize,
    pub seed: u64,
    pub repeat: usize,
    pub wall_time_s: f64,
    pub matched_pairs: usize,
    pub matched_endpoint_pct: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cas_executions: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cas_pct: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportSummary {
    pub graphs: usize,
    /// Geometric mean over graphs of limchung time / skipper time.
    pub speedup_geomean: f64,
    /// Geometric mean over graphs of skipper endpoints / limchung endpoints.
    pub quality_ratio_geomean: f64,
    /// Geometric mean of skipper CAS executions as a percentage of the edge
    /// count, over graphs that carry the counter.
    pub cas_pct_geomean: Option<f64>,
}

/// Aggregates paired skipper/limchung runs per graph. Repeats of the same
/// algorithm on the same graph are averaged before the per-graph ratio is
/// taken. Greedy records are ignored.
pub fn compare_report(records: &[RunMetrics]) -> Result<ReportSummary> {
    let mut by_graph: BTreeMap<&str, (Vec<&RunMetrics>, Vec<&RunMetrics>)> = BTreeMap::new();
    for record in records {
        match record.algorithm.as_str() {
            ALGORITHM_SKIPPER => by_graph.entry(&record.graph).or_default().0.push(record),
            ALGORITHM_LIMCHUNG => by_graph.entry(&record.graph).or_default().1.push(record),
            _ => {}
        }
    }
    if by_graph.is_empty() {
        return Err(Error::EmptyRecords);
    }

    let mut missing = Vec::new();
    for (graph, (skipper, limchung)) in &by_graph {
        if skipper.is_empty() {
            missing.push(format!("{graph} ({ALGORITHM_SKIPPER})"));
        }
        if limchung.is_empty() {
            missing.push(format!("{graph} ({ALGORITHM_LIMCHUNG})"));
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingRuns { missing });
    }

    let mut ln_speedup = 0.0;
    let mut ln_quality = 0.0;
    let mut ln_cas = Vec::new();
    for (skipper, limchung) in by_graph.values() {
        let skipper_time = mean(skipper.iter().map(|r| r.wall_time_s));
        let limchung_time = mean(limchung.iter().map(|r| r.wall_time_s));
        ln_speedup += (limchung_time / skipper_time).ln();

        let skipper_quality = mean(skipper.iter().map(|r| r.matched_endpoint_pct));
        let limchung_quality = mean(limchung.iter().map(|r| r.matched_endpoint_pct));
        let ratio = if skipper_quality == 0.0 && limchung_quality == 0.0 {
            1.0
        } else {
            skipper_quality / limchung_quality
        };
        ln_quality += ratio.ln();

        let cas: Vec<f64> = skipper.iter().filter_map(|r| r.cas_pct).collect();
        if !cas.is_empty() {
            ln_cas.push(mean(cas.iter().copied()).ln());
        }
    }

    let graphs = by_graph.len();
    let count = graphs as f64;
    Ok(ReportSummary {
        graphs,
        speedup_geomean: (ln_speedup / count).exp(),
        quality_ratio_geomean: (ln_quality / count).exp(),
        cas_pct_geomean: if ln_cas.is_empty() {
            None
        } else {
            Some((ln_cas.iter().sum::<f64>() / ln_cas.len() as f64).exp())
        },
    })
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for value in values {
        sum += value;
        count += 1;
    }
    sum / count as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: &str, graph: &str, wall_time_s: f64, pct: f64) -> RunMetrics {
        RunMetrics {
            algorithm: algorithm.into(),
            graph: graph.into(),
            num_vertices: 100,
            num_edges: 100,
            workers: 1,
            seed: 0,
            repeat: 0,
            wall_time_s,
            matched_pairs: 0,
            matched_endpoint_pct: pct,
            cas_executions: None,
            cas_pct: None,
            iterations: None,
            verified: true,
        }
    }

    #[test]
    fn identical_runs_give_unit_ratios() {
        let records = vec![
            record(ALGORITHM_SKIPPER, "g", 0.5, 80.0),
            record(ALGORITHM_LIMCHUNG, "g", 0.5, 80.0),
        ];
        let summary = compare_report(&records).unwrap();
        assert_eq!(summary.graphs, 1);
        assert!((summary.speedup_geomean - 1.0).abs() < 1e-12);
        assert!((summary.quality_ratio_geomean - 1.0).abs() < 1e-12);
        assert_eq!(summary.cas_pct_geomean, None);
    }

    #[test]
    fn speedups_four_and_nine_average_to_six() {
        let records = vec![
            record(ALGORITHM_SKIPPER, "a", 1.0, 50.0),
            record(ALGORITHM_LIMCHUNG, "a", 4.0, 50.0),
            record(ALGORITHM_SKIPPER, "b", 1.0, 50.0),
            record(ALGORITHM_LIMCHUNG, "b", 9.0, 50.0),
        ];
        let summary = compare_report(&records).unwrap();
        assert!((summary.speedup_geomean - 6.0).abs() < 1e-12);
    }

    #[test]
    fn reference_quality_pairs_reproduce_known_geomean() {
        // regression fixture: eight (limchung, skipper) endpoint-percentage
        // pairs whose quality-ratio geomean is 88.6%
        let pairs: [(f64, f64); 8] = [
            (90.1, 82.0),
            (57.4, 50.6),
            (69.9, 67.9),
            (85.0, 60.0),
            (20.2, 17.4),
            (73.9, 69.2),
            (31.8, 29.2),
            (74.3, 70.3),
        ];
        let mut records = Vec::new();
        for (i, &(limchung, skipper)) in pairs.iter().enumerate() {
            let graph = format!("g{i}");
            records.push(record(ALGORITHM_SKIPPER, &graph, 1.0, skipper));
            records.push(record(ALGORITHM_LIMCHUNG, &graph, 1.0, limchung));
        }
        let summary = compare_report(&records).unwrap();

        // independent route: straight log-mean over the raw ratios
        let expected = (pairs
            .iter()
            .map(|&(lc, sk)| (sk / lc).ln())
            .sum::<f64>()
            / pairs.len() as f64)
            .exp();
        assert!((summary.quality_ratio_geomean - expected).abs() < 1e-12);
        assert!(
            (summary.quality_ratio_geomean - 0.886).abs() <= 0.005,
            "geomean {} out of window",
            summary.quality_ratio_geomean
        );
    }

    #[test]
    fn repeats_average_within_a_graph() {
        let records = vec![
            record(ALGORITHM_SKIPPER, "g", 1.0, 40.0),
            record(ALGORITHM_SKIPPER, "g", 3.0, 60.0),
            record(ALGORITHM_LIMCHUNG, "g", 8.0, 100.0),
        ];
        let summary = compare_report(&records).unwrap();
        assert!((summary.speedup_geomean - 4.0).abs() < 1e-12);
        assert!((summary.quality_ratio_geomean - 0.5).abs() < 1e-12);
    }

    #[test]
    fn cas_geomean_uses_only_annotated_runs() {
        let mut with_cas = record(ALGORITHM_SKIPPER, "g", 1.0, 50.0);
        with_cas.cas_pct = Some(4.0);
        let records = vec![with_cas, record(ALGORITHM_LIMCHUNG, "g", 1.0, 50.0)];
        let summary = compare_report(&records).unwrap();
        assert_eq!(summary.cas_pct_geomean, Some(4.0));
    }

    #[test]
    fn missing_pairs_are_reported() {
        let records = vec![
            record(ALGORITHM_SKIPPER, "a", 1.0, 50.0),
            record(ALGORITHM_LIMCHUNG, "b", 1.0, 50.0),
        ];
        match compare_report(&records).unwrap_err() {
            Error::MissingRuns { missing } => {
                assert_eq!(missing, vec!["a (limchung)", "b (skipper)"]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn greedy_only_records_are_empty() {
        let records = vec![record(ALGORITHM_GREEDY, "g", 1.0, 50.0)];
        assert!(matches!(
            compare_report(&records).unwrap_err(),
            Error::EmptyRecords
        ));
    }
}
