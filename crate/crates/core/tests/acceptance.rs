//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any failed.

mod common;

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oneconn::bench::{chain_suite, er_suite, run_suite, BenchRecord, ErSuite, Status};
use oneconn::covariance::{
    covariance_matrix, det_linear_subgraphs, evaluate_sigma, inverse_numerator, naive_inverse,
    neumann_oracle, trek_rule, PolyMatrix,
};
use oneconn::graph::MixedGraph;
use oneconn::ideal::{
    degree_scan, prune_support, substitute_with, support_table, SigmaMonomial, SigmaPolynomial,
    SupportMode,
};
use oneconn::ident::{generic_rank, numerator_jacobian, special_point_check};
use oneconn::poly::{Polynomial, Variable};

use common::*;

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Check + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {:.1}s, budget {:.0}s", t.as_secs_f64(), budget.as_secs_f64()))
}

fn l(i: usize, j: usize) -> Polynomial {
    Polynomial::var(Variable::lam(i, j))
}

fn w(i: usize, j: usize) -> Polynomial {
    Polynomial::var(Variable::om(i, j))
}

fn prod(ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::one(), |acc, p| &acc * p)
}

fn worked_example() -> Check {
    let start = Instant::now();
    let g = triangle_graph(true);
    let det = det_linear_subgraphs(&g);
    ensure(det == &Polynomial::one() - &prod(&[l(2, 3), l(3, 4), l(4, 2)]), || format!("Det = {det}"))?;
    let inv = inverse_numerator(&g);
    let n12 = &l(1, 2) + &prod(&[l(1, 3), l(3, 4), l(4, 2)]);
    ensure(*inv.get(1, 2) == n12, || format!("N[1][2] = {}", inv.get(1, 2)))?;
    let n14 = &prod(&[l(1, 2), l(2, 3), l(3, 4)]) + &prod(&[l(1, 3), l(3, 4)]);
    ensure(*inv.get(1, 4) == n14, || format!("N[1][4] = {}", inv.get(1, 4)))?;
    let cov = covariance_matrix(&g);
    let expected: Polynomial = [
        prod(&[n12, w(1, 1), n14]),
        prod(&[w(2, 2), l(2, 3), l(3, 4)]),
        prod(&[w(3, 3), l(3, 4), l(3, 4), l(4, 2)]),
        prod(&[w(4, 4), l(4, 2)]),
        prod(&[Polynomial::from_int(2), w(3, 4), l(3, 4), l(4, 2)]),
    ]
    .into_iter()
    .sum();
    ensure(*cov.numerator(2, 4) == expected, || format!("f_24 = {}", cov.numerator(2, 4)))?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("Det, N[1][2], N[1][4] and f_24 exact in {:.3}s", start.elapsed().as_secs_f64()))
}

fn oracle_equivalence(corpus: &[MixedGraph]) -> Check {
    let start = Instant::now();
    let mut acyclic = 0;
    for (k, g) in corpus.iter().enumerate() {
        let cov = covariance_matrix(g);
        ensure(cov == naive_inverse(g), || format!("graph {k} differs from elimination: {}", g.to_json()))?;
        if g.is_acyclic() {
            acyclic += 1;
            let t = trek_rule(g).map_err(|e| e.to_string())?;
            ensure(cov == t, || format!("graph {k} differs from trek rule: {}", g.to_json()))?;
        }
    }
    within(start, Duration::from_secs(300))?;
    Ok(format!(
        "{} graphs ({} acyclic) agree exactly in {:.1}s",
        corpus.len(),
        acyclic,
        start.elapsed().as_secs_f64()
    ))
}

fn adjugate_identity(corpus: &[MixedGraph]) -> Check {
    for (k, g) in corpus.iter().enumerate() {
        let inv = inverse_numerator(g);
        let lhs = adjugate_product(&inv.matrix, g);
        ensure(lhs == PolyMatrix::identity(g.n()).scale(&inv.det), || {
            format!("graph {k}: N (I - Lambda) != Det I: {}", g.to_json())
        })?;
    }
    Ok(format!("N (I - Lambda) = Det I on all {} graphs", corpus.len()))
}

fn numeric_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for k in 0..50 {
        let n = rng.random_range(2..=10);
        let g = random_graph(&mut rng, n, 1.5 / n as f64, 0.2);
        let point: HashMap<Variable, f64> = oneconn::ident::parameters(&g)
            .into_iter()
            .map(|v| (v, rng.random_range(-100i32..=100) as f64 / 1000.0))
            .collect();
        let exact = evaluate_sigma(&covariance_matrix(&g), &point).map_err(|e| e.to_string())?;
        let series = neumann_oracle(&g, &point, 60).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                let err = (exact[i][j] - series[i][j]).abs();
                worst = worst.max(err);
                ensure(err <= 1e-10, || format!("graph {k} entry ({}, {}): error {err:e}", i + 1, j + 1))?;
            }
        }
    }
    Ok(format!("50 graphs, max deviation {worst:.2e}"))
}

fn identifiability() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut corpus = vec![verma()];
    while corpus.len() < 120 {
        let n = rng.random_range(2..=8);
        let g = random_simple_graph(&mut rng, n, 0.45, 0.3);
        if g.is_acyclic() != (corpus.len() % 2 == 1) {
            corpus.push(g);
        }
    }
    let cyclic = corpus.iter().filter(|g| !g.is_acyclic()).count();
    let mut rank_failures = Vec::new();
    let mut special_failures = Vec::new();
    for (k, g) in corpus.iter().enumerate() {
        let rank = generic_rank(&numerator_jacobian(g), 3, k as u64);
        if rank != g.parameter_count() {
            rank_failures.push(k);
        }
        if !special_point_check(g).map_err(|e| e.to_string())? {
            special_failures.push(k);
        }
    }
    let verma_rank = generic_rank(&numerator_jacobian(&verma()), 3, 0);
    ensure(verma_rank == 9, || format!("Verma rank {verma_rank}"))?;
    ensure(rank_failures.is_empty(), || format!("rank deficient on graphs {rank_failures:?}"))?;
    within(start, Duration::from_secs(300))?;
    let summary = format!(
        "{} simple graphs ({cyclic} cyclic): generic rank full on all, Verma rank 9",
        corpus.len()
    );
    ensure(special_failures.is_empty(), || {
        format!(
            "{summary}; special-point block not a permutation matrix on {} graphs (Verma included: {})",
            special_failures.len(),
            special_failures.contains(&0)
        )
    })?;
    Ok(summary)
}

fn verma_low_degrees() -> Check {
    let start = Instant::now();
    let g = verma();
    let cov = covariance_matrix(&g);
    let expected = &(&(&prod(&[l(1, 2), l(1, 2), l(2, 3)]) + &prod(&[l(1, 2), l(1, 3)])) * &w(1, 1))
        + &(&l(2, 3) * &w(2, 2));
    ensure(*cov.numerator(2, 3) == expected, || format!("f_23 = {}", cov.numerator(2, 3)))?;
    for d in 1..=2 {
        let left = prune_support(&support_table(&g, d, SupportMode::Full));
        ensure(left.is_empty(), || format!("degree {d}: {} columns survive", left.len()))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("f_23 exact, empty supports at degrees 1 and 2 in {:.2}s", start.elapsed().as_secs_f64()))
}

/// The known degree-6 relation, vertices numbered from 0 as published.
const SEXTIC: [(i64, &str); 19] = [
    (1, "02 03^3 12^2"),
    (-2, "02^2 03^2 12 13"),
    (1, "02^3 03 13^2"),
    (-1, "01 03^3 12 22"),
    (1, "01 02 03^2 13 22"),
    (1, "00 03^2 12 13 22"),
    (-1, "00 02 03 13^2 22"),
    (1, "01^2 03^2 22 23"),
    (-1, "00 03^2 11 22 23"),
    (-1, "01^2 02 03 23^2"),
    (1, "00 02 03 11 23^2"),
    (1, "01 02^2 03 12 33"),
    (-1, "00 02 03 12^2 33"),
    (-1, "01 02^3 13 33"),
    (1, "00 02^2 12 13 33"),
    (-1, "01^2 02 03 22 33"),
    (1, "00 02 03 11 22 33"),
    (1, "01^2 02^2 23 33"),
    (-1, "00 02^2 11 23 33"),
];

fn sextic() -> SigmaPolynomial {
    SigmaPolynomial::from_int_terms(SEXTIC.iter().map(|&(c, m)| {
        let pairs = m.split(' ').flat_map(|factor| {
            let (idx, e) = factor.split_once('^').unwrap_or((factor, "1"));
            let b = idx.as_bytes();
            let pair = ((b[0] - b'0') as usize + 1, (b[1] - b'0') as usize + 1);
            std::iter::repeat_n(pair, e.parse().unwrap())
        });
        (c, SigmaMonomial::new(pairs))
    }))
}

fn sextic_relation() -> Check {
    let start = Instant::now();
    let g = triangle_graph(false);
    let reports = degree_scan(&g, 6);
    for r in &reports[..5] {
        ensure(r.full_pruned == 0 && r.kernel_dim == 0, || {
            format!("degree {}: {} columns survive, kernel {}", r.degree, r.full_pruned, r.kernel_dim)
        })?;
    }
    let r = &reports[5];
    let counts = (r.initial_columns, r.weak_pruned, r.full_pruned, r.kernel_dim);
    let cov = covariance_matrix(&g);
    let known = sextic();
    ensure(substitute_with(&known, &cov).is_zero(), || "known relation does not vanish".into())?;
    ensure(r.relations.len() == 1, || format!("counts {counts:?}"))?;
    let rel = &r.relations[0];
    ensure(substitute_with(rel, &cov).is_zero(), || "kernel element does not vanish".into())?;
    ensure(rel.normalized() == known.normalized(), || format!("relation differs: {rel}"))?;
    within(start, Duration::from_secs(1800))?;
    let summary = format!(
        "degrees 1-5 empty; degree 6: {} -> weak {} -> full {} -> kernel {} ({} terms, matches known relation, certified) in {:.1}s",
        counts.0,
        counts.1,
        counts.2,
        counts.3,
        rel.len(),
        start.elapsed().as_secs_f64()
    );
    ensure(counts == (5005, 3629, 31, 1), || format!("{summary}; expected 5005 -> 3629 -> 31 -> 1"))?;
    Ok(summary)
}

fn well_formed(r: &BenchRecord) -> Result<(), String> {
    let v = serde_json::to_value(r).map_err(|e| e.to_string())?;
    for key in ["graph", "method", "wallTimeSeconds", "status", "timeLimitSeconds"] {
        ensure(v.get(key).is_some(), || format!("record lacks {key}: {v}"))?;
    }
    ensure(r.wall_time_seconds >= 0.0, || format!("negative time: {v}"))?;
    ensure((r.status == Status::Ok) == r.term_counts.is_some(), || format!("term counts vs status: {v}"))
}

fn benchmark_harness() -> Check {
    let graphs = chain_suite(&(1..=8).collect::<Vec<_>>(), &[2, 6]).map_err(|e| e.to_string())?;
    let chain = run_suite(&graphs, Duration::from_secs(10), |_| {});
    ensure(chain.records.len() == 32, || format!("{} chain records", chain.records.len()))?;
    chain.records.iter().try_for_each(well_formed)?;
    let s = &chain.summary;
    ensure(s.agreeing == s.both_finished, || format!("{} of {} chain graphs agree", s.agreeing, s.both_finished))?;
    let timeouts = chain.records.iter().filter(|r| r.status == Status::Timeout).count();

    for (n, p) in [(50, 0.02), (100, 0.01), (200, 0.005)] {
        let suite = ErSuite::standard(n, p, 11);
        let graphs = er_suite(&suite).map_err(|e| e.to_string())?;
        ensure(graphs.len() == 121, || format!("n = {n}: {} graphs", graphs.len()))?;
        if n == 50 {
            ensure(er_suite(&suite).map_err(|e| e.to_string())? == graphs, || "suite not reproducible".into())?;
        }
    }
    let sample = ErSuite {
        p_bidirected: vec![0.0, 0.05, 0.1],
        cycles: vec![0, 5, 10],
        ..ErSuite::standard(50, 0.02, 11)
    };
    let er = run_suite(&er_suite(&sample).map_err(|e| e.to_string())?, Duration::from_secs(5), |_| {});
    er.records.iter().try_for_each(well_formed)?;
    let e = &er.summary;
    ensure(e.agreeing == e.both_finished, || format!("{} of {} random graphs agree", e.agreeing, e.both_finished))?;
    Ok(format!(
        "chains: 32 records ({timeouts} timeouts at 10s), {}/{} agree, oneconn win rate {:.0}%; \
         3 x 121 random graphs generated; sample of {}: {}/{} agree, oneconn win rate {:.0}%",
        s.agreeing,
        s.both_finished,
        100.0 * s.oneconn_win_rate,
        e.graphs,
        e.agreeing,
        e.both_finished,
        100.0 * e.oneconn_win_rate
    ))
}

fn property_suites() -> Check {
    fn runner(cases: u32, seed: u8) -> TestRunner {
        TestRunner::new_with_rng(
            Config {
                cases,
                failure_persistence: None,
                ..Config::default()
            },
            TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]),
        )
    }
    fn fail<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
        format!("{name}: {e}")
    }
    runner(1000, 1)
        .run(&(poly_strategy(), poly_strategy(), poly_strategy()), |(a, b, c)| check_ring_axioms(&a, &b, &c))
        .map_err(|e| fail("ring axioms", e))?;
    runner(1000, 2)
        .run(&(poly_strategy(), poly_strategy(), point_strategy()), |(a, b, x)| {
            check_evaluation_homomorphism(&a, &b, &x)
        })
        .map_err(|e| fail("evaluation homomorphism", e))?;
    runner(200, 3)
        .run(&graph_strategy(7, 2.0), |g| check_one_connection_counts(&g))
        .map_err(|e| fail("1-connection count", e))?;
    runner(40, 4)
        .run(&(graph_strategy(4, 1.5), 1usize..=2), |(g, d)| check_prune_order_independence(&g, d))
        .map_err(|e| fail("prune order", e))?;
    Ok("ring axioms (1000), evaluation homomorphism (1000), 1-connection counts (200 graphs), prune order (40)".into())
}

fn main() -> ExitCode {
    let corpus = mixed_corpus(2, 200, 7);
    let criteria: Vec<Criterion> = vec![
        ("worked covariance example", Box::new(worked_example)),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&corpus))),
        ("adjugate identity", Box::new(|| adjugate_identity(&corpus))),
        ("numeric consistency", Box::new(numeric_consistency)),
        ("identifiability", Box::new(identifiability)),
        ("Verma degrees 1-2", Box::new(verma_low_degrees)),
        ("degree-6 relation", Box::new(sextic_relation)),
        ("benchmark harness", Box::new(benchmark_harness)),
        ("property suites", Box::new(property_suites)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL: {detail}", k + 1);
            }
        }
    }
    println!("{failed} of 9 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
