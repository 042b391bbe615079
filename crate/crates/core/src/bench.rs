//! Timing harness comparing the 1-connection method with symbolic
//! elimination on generated graph families.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::covariance::{covariance_matrix_within, naive_inverse_within, CovarianceResult};
use crate::deadline::Deadline;
use crate::graph::{gen_cycle_chain, gen_erdos_renyi, ErdosRenyiParams, GraphError, MixedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[serde(rename = "oneconn")]
    OneConn,
    Naive,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::OneConn, Method::Naive];

    pub fn name(self) -> &'static str {
        match self {
            Method::OneConn => "oneconn",
            Method::Naive => "naive",
        }
    }

    pub fn run(self, g: &MixedGraph, deadline: &Deadline) -> Option<CovarianceResult> {
        match self {
            Method::OneConn => covariance_matrix_within(g, deadline).ok(),
            Method::Naive => naive_inverse_within(g, deadline).ok(),
        }
    }
}

/// How a benchmark graph was generated.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "generator", rename_all = "camelCase")]
pub enum GraphDescriptor {
    #[serde(rename = "chain")]
    Chain { d: usize, length: usize },
    #[serde(rename = "er", rename_all = "camelCase")]
    ErdosRenyi {
        n: usize,
        p_directed: f64,
        p_bidirected: f64,
        cycles: usize,
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Timeout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TermCounts {
    pub det: usize,
    pub max_numerator: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchRecord {
    pub graph: GraphDescriptor,
    pub method: Method,
    pub wall_time_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub term_counts: Option<TermCounts>,
    pub status: Status,
    pub time_limit_seconds: f64,
}

/// `t = a * b^d`, fitted by least squares on `ln t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExponentialFit {
    pub method: Method,
    pub length: usize,
    pub a: f64,
    pub b: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BenchSummary {
    pub graphs: usize,
    pub oneconn_wins: usize,
    pub naive_wins: usize,
    /// Share of graphs where the 1-connection method finished first.
    pub oneconn_win_rate: f64,
    pub both_finished: usize,
    pub agreeing: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fits: Vec<ExponentialFit>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub summary: BenchSummary,
}

pub fn chain_suite(
    ds: &[usize],
    lengths: &[usize],
) -> Result<Vec<(GraphDescriptor, MixedGraph)>, GraphError> {
    let mut out = Vec::new();
    for &length in lengths {
        for &d in ds {
            out.push((
                GraphDescriptor::Chain { d, length },
                gen_cycle_chain(d, length)?,
            ));
        }
    }
    Ok(out)
}

/// Parameters for one block of random graphs: every combination of
/// `p_bidirected` and `cycles` at fixed `n` and `p_directed`.
#[derive(Clone, Debug, PartialEq)]
pub struct ErSuite {
    pub n: usize,
    pub p_directed: f64,
    pub p_bidirected: Vec<f64>,
    pub cycles: Vec<usize>,
    pub seed: u64,
    pub max_attempts: u64,
}

impl ErSuite {
    /// `p_B` in `0, 0.01, ..., 0.1` and `c` in `0..=10`: 121 graphs.
    pub fn standard(n: usize, p_directed: f64, seed: u64) -> Self {
        ErSuite {
            n,
            p_directed,
            p_bidirected: (0..=10).map(|k| k as f64 / 100.0).collect(),
            cycles: (0..=10).collect(),
            seed,
            max_attempts: 1_000_000,
        }
    }
}

pub fn er_suite(s: &ErSuite) -> Result<Vec<(GraphDescriptor, MixedGraph)>, GraphError> {
    let mut out = Vec::new();
    for (bi, &p_bidirected) in s.p_bidirected.iter().enumerate() {
        for (ci, &cycles) in s.cycles.iter().enumerate() {
            let seed = s
                .seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add((bi * s.cycles.len() + ci) as u64);
            let params = ErdosRenyiParams {
                n: s.n,
                p_directed: s.p_directed,
                p_bidirected,
                cycles,
                seed,
                max_attempts: s.max_attempts,
            };
            out.push((
                GraphDescriptor::ErdosRenyi {
                    n: s.n,
                    p_directed: s.p_directed,
                    p_bidirected,
                    cycles,
                    seed,
                },
                gen_erdos_renyi(&params)?,
            ));
        }
    }
    Ok(out)
}

/// Runs both methods on every graph in order, one timed computation at a
/// time. `on_record` sees each record as soon as it is produced.
pub fn run_suite<F: FnMut(&BenchRecord)>(
    graphs: &[(GraphDescriptor, MixedGraph)],
    limit: Duration,
    mut on_record: F,
) -> BenchReport {
    let mut records = Vec::new();
    let (mut oneconn_wins, mut naive_wins, mut both, mut agreeing) = (0, 0, 0, 0);
    for (desc, g) in graphs {
        let mut results = Vec::new();
        for method in Method::ALL {
            let deadline = Deadline::after(limit);
            let start = Instant::now();
            let result = method.run(g, &deadline);
            let elapsed = start.elapsed().as_secs_f64();
            let record = BenchRecord {
                graph: desc.clone(),
                method,
                wall_time_seconds: elapsed,
                term_counts: result.as_ref().map(|r| TermCounts {
                    det: r.det().len(),
                    max_numerator: r.max_numerator_terms(),
                }),
                status: if result.is_some() {
                    Status::Ok
                } else {
                    Status::Timeout
                },
                time_limit_seconds: limit.as_secs_f64(),
            };
            on_record(&record);
            records.push(record);
            results.push((result, elapsed));
        }
        match (&results[0], &results[1]) {
            ((Some(a), ta), (Some(b), tb)) => {
                both += 1;
                if a == b {
                    agreeing += 1;
                }
                if ta <= tb {
                    oneconn_wins += 1;
                } else {
                    naive_wins += 1;
                }
            }
            ((Some(_), _), (None, _)) => oneconn_wins += 1,
            ((None, _), (Some(_), _)) => naive_wins += 1,
            _ => {}
        }
    }
    let fits = chain_fits(&records);
    BenchReport {
        summary: BenchSummary {
            graphs: graphs.len(),
            oneconn_wins,
            naive_wins,
            oneconn_win_rate: if graphs.is_empty() {
                0.0
            } else {
                oneconn_wins as f64 / graphs.len() as f64
            },
            both_finished: both,
            agreeing,
            fits,
        },
        records,
    }
}

fn chain_fits(records: &[BenchRecord]) -> Vec<ExponentialFit> {
    let mut lengths: Vec<usize> = records
        .iter()
        .filter_map(|r| match r.graph {
            GraphDescriptor::Chain { length, .. } => Some(length),
            _ => None,
        })
        .collect();
    lengths.sort_unstable();
    lengths.dedup();
    let mut fits = Vec::new();
    for length in lengths {
        for method in Method::ALL {
            let points: Vec<(f64, f64)> = records
                .iter()
                .filter(|r| r.method == method && r.status == Status::Ok)
                .filter_map(|r| match r.graph {
                    GraphDescriptor::Chain { d, length: l } if l == length => {
                        Some((d as f64, r.wall_time_seconds.max(1e-9).ln()))
                    }
                    _ => None,
                })
                .collect();
            if let Some((ln_a, ln_b)) = least_squares(&points) {
                fits.push(ExponentialFit {
                    method,
                    length,
                    a: ln_a.exp(),
                    b: ln_b.exp(),
                    points: points.len(),
                });
            }
        }
    }
    fits
}

/// Intercept and slope of the least-squares line through `points`.
fn least_squares(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((my - slope * mx, slope))
}
