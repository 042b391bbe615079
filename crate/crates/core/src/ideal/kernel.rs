use std::collections::HashMap;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::covariance::{covariance_matrix, CovarianceResult};
use crate::graph::MixedGraph;
use crate::poly::{modp, Monomial, Rational};

use super::sigma::{SigmaMonomial, SigmaPolynomial};
use super::table::sigma_products;

type SparseRow = Vec<(usize, Rational)>;

/// Basis of the linear relations among the images of `support`, each
/// scaled so its first coefficient is 1.
pub fn kernel_relations(g: &MixedGraph, support: &[SigmaMonomial]) -> Vec<SigmaPolynomial> {
    kernel_relations_with(&covariance_matrix(g), support)
}

pub fn kernel_relations_with(
    cov: &CovarianceResult,
    support: &[SigmaMonomial],
) -> Vec<SigmaPolynomial> {
    if support.is_empty() {
        return Vec::new();
    }
    let k = support.len();
    let rows = coefficient_rows(cov, support);

    // Rows independent modulo p are independent over Q, so a modular pass
    // picks a small set of rows whose kernel usually is the whole answer.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b65726e);
    let p = modp::random_prime(&mut rng);
    let picked = independent_rows_mod_p(&rows, k, p);
    if picked.len() == k {
        return Vec::new();
    }
    let subset: Vec<&SparseRow> = picked.iter().map(|&r| &rows[r]).collect();
    let mut basis = nullspace(&subset, k);
    if !basis.iter().all(|v| annihilates(&rows, v)) {
        basis = nullspace(&rows.iter().collect::<Vec<_>>(), k);
    }
    basis
        .into_iter()
        .map(|v| {
            SigmaPolynomial::from_terms(support.iter().cloned().zip(v)).normalized()
        })
        .collect()
}

fn coefficient_rows(cov: &CovarianceResult, support: &[SigmaMonomial]) -> Vec<SparseRow> {
    let products = sigma_products(cov, support);
    let mut index: HashMap<&Monomial, usize> = HashMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    for (c, p) in products.iter().enumerate() {
        for (m, x) in p.terms() {
            let r = *index.entry(m).or_insert_with(|| {
                rows.push(Vec::new());
                rows.len() - 1
            });
            rows[r].push((c, x.clone()));
        }
    }
    rows
}

fn independent_rows_mod_p(rows: &[SparseRow], k: usize, p: u64) -> Vec<usize> {
    // echelon basis: pivot column -> reduced row with 1 at the pivot
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; k];
    let mut picked = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut v = vec![0u64; k];
        for (c, x) in row {
            v[*c] = modp::reduce_rational(x, p).expect("integer coefficients");
        }
        for c in 0..k {
            if v[c] == 0 {
                continue;
            }
            match &basis[c] {
                Some(b) => {
                    let f = v[c];
                    for (t, bt) in v.iter_mut().zip(b).skip(c) {
                        *t = modp::sub(*t, modp::mul(f, *bt, p), p);
                    }
                }
                None => {
                    let inv = modp::inv(v[c], p).expect("nonzero residue");
                    for t in v.iter_mut().skip(c) {
                        *t = modp::mul(*t, inv, p);
                    }
                    basis[c] = Some(v);
                    picked.push(r);
                    break;
                }
            }
        }
        if picked.len() == k {
            break;
        }
    }
    picked
}

/// Exact kernel basis via reduced row echelon form, one vector per free
/// column (1 there, 0 at the other free columns).
fn nullspace(rows: &[&SparseRow], k: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| {
            let mut v = vec![Rational::zero(); k];
            for (c, x) in row.iter() {
                v[*c] = x.clone();
            }
            v
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(src) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, src);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..k)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); k];
            v[free] = Rational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

fn annihilates(rows: &[SparseRow], v: &[Rational]) -> bool {
    rows.iter().all(|row| {
        row.iter()
            .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c])
            .is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::sigma_monomials;
    use crate::ideal::substitute;

    #[test]
    fn nullspace_of_small_matrix() {
        let q = |x: i64| Rational::from_integer(x.into());
        let a: SparseRow = vec![(0, q(1)), (1, q(2)), (2, q(3))];
        let b: SparseRow = vec![(0, q(2)), (1, q(4)), (2, q(7))];
        let ns = nullspace(&[&a, &b], 3);
        assert_eq!(ns, vec![vec![q(-2), q(1), q(0)]]);
        assert!(annihilates(&[a, b], &ns[0]));
    }

    #[test]
    fn single_nonvanishing_column_has_trivial_kernel() {
        let g = MixedGraph::new(3, [(1, 2)], []).unwrap();
        assert!(kernel_relations(&g, &[SigmaMonomial::new([(1, 1)])]).is_empty());
    }

    #[test]
    fn chain_conditional_independence() {
        // 1 -> 2 -> 3: X1 and X3 are independent given X2
        let g = MixedGraph::new(3, [(1, 2), (2, 3)], []).unwrap();
        let rels = kernel_relations(&g, &sigma_monomials(3, 2));
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].to_string(), "s_{1,2}*s_{2,3} - s_{1,3}*s_{2,2}");
        assert!(substitute(&rels[0], &g).is_zero());
    }
}
