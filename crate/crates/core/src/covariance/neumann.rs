use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::graph::MixedGraph;
use crate::poly::{Assignment, EvalError, Rational, Variable};

use super::{omega_entries, CovarianceResult};

fn value(point: &HashMap<Variable, f64>, v: Variable) -> Result<f64, EvalError> {
    point.get(&v).copied().ok_or(EvalError::Unassigned(v))
}

/// Floating-point `Sigma` from the truncated series
/// `S = I + Lambda + ... + Lambda^terms`, `Sigma = S^T Omega S`.
/// Only meaningful when the spectral radius of `Lambda` is below 1.
pub fn neumann_oracle(
    g: &MixedGraph,
    point: &HashMap<Variable, f64>,
    terms: usize,
) -> Result<Vec<Vec<f64>>, EvalError> {
    let n = g.n();
    let mut lam = vec![vec![0.0; n]; n];
    for &(a, b) in g.directed() {
        lam[a - 1][b - 1] = value(point, Variable::lam(a, b))?;
    }
    let mut omega = vec![vec![0.0; n]; n];
    for (a, b) in omega_entries(g) {
        let w = value(point, Variable::om(a, b))?;
        omega[a - 1][b - 1] = w;
        omega[b - 1][a - 1] = w;
    }

    let matmul = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut power: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut s = power.clone();
    for _ in 0..terms {
        power = matmul(&power, &lam);
        for i in 0..n {
            for j in 0..n {
                s[i][j] += power[i][j];
            }
        }
    }
    let st: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| s[j][i]).collect()).collect();
    Ok(matmul(&matmul(&st, &omega), &s))
}

/// Evaluates a symbolic covariance matrix exactly at a floating-point
/// point (each value taken as the rational it represents) and rounds the
/// result.
pub fn evaluate_sigma(
    cov: &CovarianceResult,
    point: &HashMap<Variable, f64>,
) -> Result<Vec<Vec<f64>>, EvalError> {
    let exact: Assignment = point
        .iter()
        .map(|(&v, &x)| {
            Rational::from_float(x)
                .map(|r| (v, r))
                .ok_or(EvalError::Unassigned(v))
        })
        .collect::<Result<_, _>>()?;
    Ok(cov
        .evaluate(&exact)?
        .into_iter()
        .map(|row| row.iter().map(|r| r.to_f64().unwrap_or(f64::NAN)).collect())
        .collect())
}
