//! Graph corpora, independent oracles and property checks shared by the
//! property suite and the acceptance binary.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oneconn::covariance::PolyMatrix;
use oneconn::graph::{disjoint_cycle_families, enumerate_cycles, one_connections, MixedGraph};
use oneconn::ideal::{prune_support, prune_support_sequential, support_table, ScanOrder, SupportMode};
use oneconn::ident::{generic_rank, numerator_jacobian, parameters};
use oneconn::poly::{modp, Assignment, Monomial, Polynomial, Rational, Variable};

pub fn verma() -> MixedGraph {
    MixedGraph::new(4, [(1, 2), (2, 3), (3, 4), (1, 3)], [(2, 4)]).unwrap()
}

/// Vertex 1 feeding the directed triangle 2 -> 3 -> 4 -> 2, optionally
/// with `3 <-> 4`.
pub fn triangle_graph(with_bidirected: bool) -> MixedGraph {
    let b: &[(usize, usize)] = if with_bidirected { &[(3, 4)] } else { &[] };
    MixedGraph::new(4, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 2)], b.iter().copied()).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p_directed: f64, p_bidirected: f64) -> MixedGraph {
    let mut d = Vec::new();
    let mut b = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j && rng.random_bool(p_directed) {
                d.push((i, j));
            }
            if i < j && rng.random_bool(p_bidirected) {
                b.push((i, j));
            }
        }
    }
    MixedGraph::new(n, d, b).unwrap()
}

/// At most one edge per vertex pair.
pub fn random_simple_graph(rng: &mut ChaCha8Rng, n: usize, p_edge: f64, p_bidirected: f64) -> MixedGraph {
    let mut d = Vec::new();
    let mut b = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !rng.random_bool(p_edge) {
                continue;
            }
            if rng.random_bool(p_bidirected) {
                b.push((i, j));
            } else if rng.random_bool(0.5) {
                d.push((i, j));
            } else {
                d.push((j, i));
            }
        }
    }
    MixedGraph::new(n, d, b).unwrap()
}

/// Graphs with `2..=max_n` vertices, half of them forced to contain a
/// directed cycle.
pub fn mixed_corpus(seed: u64, count: usize, max_n: usize) -> Vec<MixedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=max_n);
        let p_bidirected = rng.random_range(0.0..0.4);
        let g = random_graph(&mut rng, n, 1.6 / n as f64, p_bidirected);
        let want_cyclic = out.len() % 2 == 0;
        if g.is_acyclic() != want_cyclic {
            out.push(g);
        }
    }
    out
}

pub fn graph_strategy(max_n: usize, max_out: f64) -> impl Strategy<Value = MixedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let p = (max_out / n as f64).min(1.0);
        (
            Just(n),
            proptest::collection::vec(proptest::bool::weighted(p), n * n),
            proptest::collection::vec(proptest::bool::weighted(0.3), n * n),
        )
            .prop_map(|(n, dm, bm)| {
                let mut d = Vec::new();
                let mut b = Vec::new();
                for i in 1..=n {
                    for j in 1..=n {
                        let k = (i - 1) * n + (j - 1);
                        if i != j && dm[k] {
                            d.push((i, j));
                        }
                        if i < j && bm[k] {
                            b.push((i, j));
                        }
                    }
                }
                MixedGraph::new(n, d, b).unwrap()
            })
    })
}

// ---------------------------------------------------------------- oracles

/// Counts spanning subgraphs of the Coates digraph that form a 1-connection
/// from `i` to `j`, by trying every successor choice: each vertex other
/// than `j` picks one out-edge (a graph edge or its own loop; `i` may not
/// loop), and the choice is kept when no vertex is entered twice and `i`
/// is not entered at all.
pub fn brute_force_one_connections(g: &MixedGraph, i: usize, j: usize) -> usize {
    let n = g.n();
    let options: Vec<Vec<usize>> = (1..=n)
        .map(|v| {
            if v == j {
                return vec![0];
            }
            let mut o: Vec<usize> = g.successors(v).to_vec();
            if v != i {
                o.push(v);
            }
            o
        })
        .collect();
    if options.iter().any(Vec::is_empty) {
        return 0;
    }
    let mut count = 0;
    let mut choice = vec![0usize; n];
    loop {
        let mut entered = vec![false; n + 1];
        let mut ok = true;
        for v in 1..=n {
            let t = options[v - 1][choice[v - 1]];
            if t == 0 {
                continue;
            }
            if entered[t] || t == i {
                ok = false;
                break;
            }
            entered[t] = true;
        }
        if ok {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Subsets of the cycle list that are pairwise vertex-disjoint, by bitmask.
pub fn brute_force_family_count(g: &MixedGraph) -> usize {
    let cycles = enumerate_cycles(g);
    assert!(cycles.len() < 20);
    (0u32..1 << cycles.len())
        .filter(|&mask| {
            let chosen: Vec<_> = (0..cycles.len()).filter(|k| mask >> k & 1 == 1).collect();
            chosen.iter().enumerate().all(|(x, &a)| {
                chosen[x + 1..].iter().all(|&b| {
                    cycles[a].vertices().iter().all(|v| !cycles[b].vertices().contains(v))
                })
            })
        })
        .count()
}

/// Symbolic `I - Lambda` times its symbolic inverse numerator.
pub fn adjugate_product(adj: &PolyMatrix, g: &MixedGraph) -> PolyMatrix {
    adj.mul(&oneconn::covariance::i_minus_lambda(g))
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

// ------------------------------------------------------- property checks

const VARS: [(bool, usize, usize); 5] = [(true, 1, 2), (true, 2, 3), (false, 1, 1), (false, 1, 2), (true, 3, 1)];

fn var(k: usize) -> Variable {
    let (lam, i, j) = VARS[k];
    if lam {
        Variable::lam(i, j)
    } else {
        Variable::om(i, j)
    }
}

pub fn poly_strategy() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((-6i64..=6, proptest::collection::vec(0u32..3, VARS.len())), 0..6).prop_map(|terms| {
        Polynomial::from_terms(terms.into_iter().map(|(c, exps)| {
            let m = Monomial::from_pairs(exps.into_iter().enumerate().map(|(k, e)| (var(k), e)));
            (m, rational(c, 1))
        }))
    })
}

pub fn point_strategy() -> impl Strategy<Value = Assignment> {
    proptest::collection::vec((-20i64..=20, 1i64..=9), VARS.len())
        .prop_map(|vals| vals.into_iter().enumerate().map(|(k, (a, b))| (var(k), rational(a, b))).collect())
}

#[allow(clippy::eq_op)]
pub fn check_ring_axioms(a: &Polynomial, b: &Polynomial, c: &Polynomial) -> Result<(), TestCaseError> {
    let zero = Polynomial::zero();
    let one = Polynomial::one();
    prop_assert_eq!(a + b, b + a);
    prop_assert_eq!(a * b, b * a);
    prop_assert_eq!(&(a + b) + c, a + &(b + c));
    prop_assert_eq!(&(a * b) * c, a * &(b * c));
    prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    prop_assert_eq!(a + &zero, a.clone());
    prop_assert_eq!(a * &one, a.clone());
    prop_assert!((a - a).is_zero());
    prop_assert!((a * &zero).is_zero());
    prop_assert_eq!(&(-a) + a, zero);
    Ok(())
}

pub fn check_evaluation_homomorphism(a: &Polynomial, b: &Polynomial, x: &Assignment) -> Result<(), TestCaseError> {
    let ea = a.evaluate(x).unwrap();
    let eb = b.evaluate(x).unwrap();
    prop_assert_eq!((a + b).evaluate(x).unwrap(), &ea + &eb);
    prop_assert_eq!((a * b).evaluate(x).unwrap(), &ea * &eb);
    prop_assert_eq!(a.pow(3).evaluate(x).unwrap(), &ea * &ea * &ea);
    Ok(())
}

pub fn check_one_connection_counts(g: &MixedGraph) -> Result<(), TestCaseError> {
    for i in g.vertices() {
        for j in g.vertices() {
            prop_assert_eq!(
                one_connections(g, i, j).len(),
                brute_force_one_connections(g, i, j),
                "pair ({}, {})",
                i,
                j
            );
        }
    }
    Ok(())
}

pub fn check_family_count(g: &MixedGraph) -> Result<(), TestCaseError> {
    prop_assume!(enumerate_cycles(g).len() < 16);
    let families = disjoint_cycle_families(&enumerate_cycles(g));
    prop_assert_eq!(families.len(), brute_force_family_count(g));
    Ok(())
}

pub fn check_prune_order_independence(g: &MixedGraph, d: usize) -> Result<(), TestCaseError> {
    for mode in [SupportMode::Weak, SupportMode::Full] {
        let t = support_table(g, d, mode);
        let batch = prune_support(&t);
        prop_assert_eq!(&batch, &prune_support_sequential(&t, ScanOrder::Forward));
        prop_assert_eq!(&batch, &prune_support_sequential(&t, ScanOrder::Reverse));
    }
    Ok(())
}

/// Compares each Jacobian entry with the central difference quotient of the
/// corresponding numerator at a random rational point, step `1/10^6`.
pub fn check_jacobian_finite_difference(g: &MixedGraph, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = parameters(g);
    let point: Assignment = params
        .iter()
        .map(|&v| (v, rational(rng.random_range(-9..=9), 10)))
        .collect();
    let cov = oneconn::covariance::covariance_matrix(g);
    let jac = numerator_jacobian(g);
    let h = rational(1, 1_000_000);
    let tol = rational(1, 10_000);
    for (r, &v) in jac.rows().iter().enumerate() {
        let mut up = point.clone();
        let mut down = point.clone();
        *up.get_mut(&v).unwrap() += &h;
        *down.get_mut(&v).unwrap() -= &h;
        for (c, &(i, j)) in jac.cols().iter().enumerate() {
            let f = cov.numerator(i, j);
            let quotient = (f.evaluate(&up).unwrap() - f.evaluate(&down).unwrap()) / (&h + &h);
            let exact = jac.get(r, c).evaluate(&point).unwrap();
            let err = (quotient - &exact).abs();
            prop_assert!(err <= tol, "d f_{{{},{}}} / d {}: error {}", i, j, v, err);
        }
    }
    Ok(())
}

pub fn check_mod_p_evaluation(a: &Polynomial, x: &HashMap<Variable, i64>, p_index: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p_index);
    let p = modp::random_prime(&mut rng);
    let exact: Assignment = x.iter().map(|(&v, &n)| (v, rational(n, 1))).collect();
    let residues: HashMap<Variable, u64> = x
        .iter()
        .map(|(&v, &n)| (v, modp::reduce_int(&BigInt::from(n), p)))
        .collect();
    let want = modp::reduce_rational(&a.evaluate(&exact).unwrap(), p).unwrap();
    prop_assert_eq!(a.evaluate_mod(&residues, p).unwrap(), want);
    Ok(())
}

pub fn integer_point_strategy() -> impl Strategy<Value = HashMap<Variable, i64>> {
    proptest::collection::vec(-1_000_000i64..=1_000_000, VARS.len())
        .prop_map(|vals| vals.into_iter().enumerate().map(|(k, n)| (var(k), n)).collect())
}

pub fn check_rank_monotone(g: &MixedGraph, seed: u64) -> Result<(), TestCaseError> {
    let jac = numerator_jacobian(g);
    let mut last = 0;
    for trials in 1..=4 {
        let r = generic_rank(&jac, trials, seed);
        prop_assert!(r >= last);
        prop_assert!(r <= jac.rows().len().min(jac.cols().len()));
        last = r;
    }
    Ok(())
}
