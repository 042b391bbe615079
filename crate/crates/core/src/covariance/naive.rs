use crate::deadline::{Deadline, Timeout};
use crate::graph::MixedGraph;
use crate::poly::Polynomial;

use super::{covariance_numerators, i_minus_lambda, CovarianceResult, InverseNumerator};

/// `Det * (I - Lambda)^{-1}` by fraction-free Gaussian elimination on
/// `[I - Lambda | I]` followed by back substitution. Every pivot is a
/// leading principal minor of `I - Lambda`, which has constant term 1.
pub fn bareiss_adjugate(g: &MixedGraph, deadline: &Deadline) -> Result<InverseNumerator, Timeout> {
    let n = g.n();
    let a = i_minus_lambda(g);
    let w = 2 * n;
    let mut m: Vec<Vec<Polynomial>> = (1..=n)
        .map(|i| {
            let mut row: Vec<Polynomial> = (1..=n).map(|j| a.get(i, j).clone()).collect();
            row.extend((1..=n).map(|j| if i == j { Polynomial::one() } else { Polynomial::zero() }));
            row
        })
        .collect();

    let mut prev = Polynomial::one();
    for k in 0..n {
        for i in k + 1..n {
            deadline.check()?;
            for j in k + 1..w {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Sylvester identity");
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();

    let mut y = vec![vec![Polynomial::zero(); n]; n];
    for i in (0..n).rev() {
        for c in 0..n {
            deadline.check()?;
            let mut t = &det * &m[i][n + c];
            for k in i + 1..n {
                t = &t - &(&m[i][k] * &y[k][c]);
            }
            y[i][c] = t.div_exact(&m[i][i]).expect("adjugate entries are polynomials");
        }
    }

    let mut matrix = super::PolyMatrix::zeros(n);
    for (i, row) in y.into_iter().enumerate() {
        for (j, p) in row.into_iter().enumerate() {
            matrix.set(i + 1, j + 1, p);
        }
    }
    Ok(InverseNumerator { det, matrix })
}

/// Covariance matrix by symbolic elimination, the baseline the
/// 1-connection method is compared against.
pub fn naive_inverse(g: &MixedGraph) -> CovarianceResult {
    naive_inverse_within(g, &Deadline::none()).expect("no deadline")
}

pub fn naive_inverse_within(
    g: &MixedGraph,
    deadline: &Deadline,
) -> Result<CovarianceResult, Timeout> {
    let inv = bareiss_adjugate(g, deadline)?;
    let f = covariance_numerators(g, &inv.matrix, deadline)?;
    Ok(CovarianceResult::new(inv.det, f))
}
