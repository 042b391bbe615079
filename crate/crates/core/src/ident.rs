//! Generic identifiability: the numerator map `theta -> (f_ij)_{i<=j}` is
//! generically finite-to-one when its Jacobian has full generic rank.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::covariance::{covariance_matrix, omega_entries};
use crate::graph::MixedGraph;
use crate::poly::{modp, Polynomial, Variable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentError {
    #[error("graph is not simple")]
    NotSimple,
}

/// Partial derivatives of the covariance numerators. Row `r`, column `c`
/// holds `d f_c / d rows[r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianMatrix {
    rows: Vec<Variable>,
    cols: Vec<(usize, usize)>,
    entries: Vec<Vec<Polynomial>>,
}

impl JacobianMatrix {
    /// Parameters: `w_{i,i}`, then `w_{i,j}` for bidirected edges, then `l_{i,j}`.
    pub fn rows(&self) -> &[Variable] {
        &self.rows
    }

    /// Covariance entries `(i, j)` with `i <= j`, row-major.
    pub fn cols(&self) -> &[(usize, usize)] {
        &self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row][col]
    }

    pub fn row_index(&self, v: Variable) -> Option<usize> {
        self.rows.iter().position(|&r| r == v)
    }

    pub fn col_index(&self, i: usize, j: usize) -> Option<usize> {
        self.cols.iter().position(|&c| c == (i.min(j), i.max(j)))
    }

    fn residues(&self, point: &HashMap<Variable, u64>, p: u64) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.evaluate_mod(point, p).expect("integer coefficients, full point"))
                    .collect()
            })
            .collect()
    }
}

/// Parameter list of `g` in Jacobian row order.
pub fn parameters(g: &MixedGraph) -> Vec<Variable> {
    let mut rows: Vec<Variable> = omega_entries(g)
        .into_iter()
        .map(|(a, b)| Variable::om(a, b))
        .collect();
    rows.extend(g.directed().iter().map(|&(a, b)| Variable::lam(a, b)));
    rows
}

pub fn numerator_jacobian(g: &MixedGraph) -> JacobianMatrix {
    let cov = covariance_matrix(g);
    let rows = parameters(g);
    let cols: Vec<(usize, usize)> = g
        .vertices()
        .flat_map(|i| (i..=g.n()).map(move |j| (i, j)))
        .collect();
    let entries = rows
        .par_iter()
        .map(|&v| {
            cols.iter()
                .map(|&(i, j)| cov.numerator(i, j).derivative(v))
                .collect()
        })
        .collect();
    JacobianMatrix { rows, cols, entries }
}

/// Largest rank of `j` seen over `trials` evaluations at random nonzero
/// residues modulo random primes near `2^62`.
pub fn generic_rank(j: &JacobianMatrix, trials: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let p = modp::random_prime(&mut rng);
        let point = random_point(&j.rows, p, &mut rng);
        best = best.max(modp::rank(j.residues(&point, p), p));
    }
    best
}

fn random_point<R: Rng>(vars: &[Variable], p: u64, rng: &mut R) -> HashMap<Variable, u64> {
    vars.iter().map(|&v| (v, rng.random_range(1..p))).collect()
}

/// The square block of the Jacobian with columns `(i, i)` and `(i, j)` for
/// every edge, evaluated modulo `p` at `w = 1`, `l = 0`.
fn special_point_block(g: &MixedGraph, p: u64) -> Result<Vec<Vec<u64>>, IdentError> {
    if !g.is_simple() {
        return Err(IdentError::NotSimple);
    }
    let j = numerator_jacobian(g);
    let point: HashMap<Variable, u64> = j
        .rows
        .iter()
        .map(|&v| (v, u64::from(v.is_omega())))
        .collect();
    let mut cols: Vec<(usize, usize)> = g.vertices().map(|i| (i, i)).collect();
    cols.extend(g.directed().iter().chain(g.bidirected()).copied());
    let cols: Vec<usize> = cols
        .into_iter()
        .map(|(a, b)| j.col_index(a, b).expect("column exists"))
        .collect();
    Ok((0..j.rows.len())
        .map(|r| {
            cols.iter()
                .map(|&c| j.get(r, c).evaluate_mod(&point, p).expect("full point"))
                .collect()
        })
        .collect())
}

const SPECIAL_POINT_PRIME: u64 = (1 << 61) - 1;

/// Whether the special-point block is a permutation matrix.
pub fn special_point_check(g: &MixedGraph) -> Result<bool, IdentError> {
    Ok(is_permutation_matrix(&special_point_block(g, SPECIAL_POINT_PRIME)?))
}

/// Rank of the special-point block modulo a fixed large prime.
pub fn special_point_rank(g: &MixedGraph) -> Result<usize, IdentError> {
    let block = special_point_block(g, SPECIAL_POINT_PRIME)?;
    Ok(modp::rank(block, SPECIAL_POINT_PRIME))
}

fn is_permutation_matrix(m: &[Vec<u64>]) -> bool {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return false;
    }
    let mut col_hits = vec![0; n];
    for row in m {
        let mut hits = 0;
        for (c, &x) in row.iter().enumerate() {
            match x {
                0 => {}
                1 => {
                    hits += 1;
                    col_hits[c] += 1;
                }
                _ => return false,
            }
        }
        if hits != 1 {
            return false;
        }
    }
    col_hits.iter().all(|&h| h == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdentReport {
    pub params: usize,
    pub rank: usize,
    pub verdict: Verdict,
    pub simple: bool,
    /// Only computed for simple graphs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special_point: Option<bool>,
}

/// `Yes` when the sampled rank equals the number of parameters. A smaller
/// sampled rank is inconclusive.
pub fn is_generically_finite_to_one(g: &MixedGraph, trials: usize, seed: u64) -> Verdict {
    identifiability_report(g, trials, seed).verdict
}

pub fn identifiability_report(g: &MixedGraph, trials: usize, seed: u64) -> IdentReport {
    let j = numerator_jacobian(g);
    let params = g.parameter_count();
    let rank = generic_rank(&j, trials, seed);
    let simple = g.is_simple();
    IdentReport {
        params,
        rank,
        verdict: if rank == params {
            Verdict::Yes
        } else {
            Verdict::Unknown
        },
        simple,
        special_point: simple.then(|| special_point_check(g).expect("simple")),
    }
}
