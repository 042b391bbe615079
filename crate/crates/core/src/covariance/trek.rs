use crate::graph::{for_each_path_from, MixedGraph};
use crate::poly::{Monomial, PolyBuilder, Rational, Variable};

use super::{CovarianceError, CovarianceResult, PolyMatrix};

/// Covariance matrix of an acyclic model as a sum over treks: a pair of
/// directed paths with a common top `s` (weight `w_{s,s}`) or with tops
/// joined by a bidirected edge (weight `w_{a,b}`). `Det` is 1.
pub fn trek_rule(g: &MixedGraph) -> Result<CovarianceResult, CovarianceError> {
    if !g.is_acyclic() {
        return Err(CovarianceError::Cyclic);
    }
    let n = g.n();
    // by_sink[s][t]: monomials of the paths s -> t
    let mut by_sink: Vec<Vec<Vec<Monomial>>> = vec![vec![Vec::new(); n + 1]; n + 1];
    for s in 1..=n {
        for_each_path_from(g, s, |p, _| {
            let m = Monomial::product_of(p.windows(2).map(|w| Variable::lam(w[0], w[1])));
            by_sink[s][*p.last().expect("nonempty")].push(m);
        });
    }

    let one = Rational::from_integer(1.into());
    let mut f = PolyMatrix::zeros(n);
    for i in 1..=n {
        for j in 1..=n {
            let mut b = PolyBuilder::new();
            let mut add_treks = |top_i: usize, top_j: usize, w: &Monomial| {
                for left in &by_sink[top_i][i] {
                    for right in &by_sink[top_j][j] {
                        b.add_term(w.mul(left).mul(right), one.clone());
                    }
                }
            };
            for s in 1..=n {
                add_treks(s, s, &Monomial::var(Variable::om(s, s)));
            }
            for &(a, c) in g.bidirected() {
                let w = Monomial::var(Variable::om(a, c));
                add_treks(a, c, &w);
                add_treks(c, a, &w);
            }
            f.set(i, j, b.build());
        }
    }
    Ok(CovarianceResult::new(crate::poly::Polynomial::one(), f))
}
