//! Search for low-degree elements of the vanishing ideal of a model.
//!
//! Every covariance entry is `f_ij / Det^2`, so a homogeneous polynomial in
//! the `s_{i,j}` vanishes on the model exactly when it vanishes after
//! substituting the numerators `f_ij`. Support pruning discards monomials
//! that cannot occur in such a polynomial; an exact kernel computation over
//! the survivors yields the relations themselves.

mod kernel;
mod sigma;
mod table;

use serde::{Serialize, Serializer};

use crate::covariance::{covariance_matrix, CovarianceResult};
use crate::graph::MixedGraph;
use crate::poly::{PolyBuilder, Polynomial};

pub use kernel::{kernel_relations, kernel_relations_with};
pub use sigma::{sigma_monomials, sigma_variables, SigmaMonomial, SigmaPolynomial};
pub use table::{
    prune_support, prune_support_sequential, sigma_products, support_table, support_table_for,
    support_table_from, ScanOrder, SupportMode, SupportTable,
};

/// Image of a sigma monomial under `s_{i,j} -> f_ij`.
pub fn substitute_monomial(m: &SigmaMonomial, cov: &CovarianceResult) -> Polynomial {
    m.powers()
        .into_iter()
        .fold(Polynomial::one(), |acc, ((i, j), e)| &acc * &cov.numerator(i, j).pow(e))
}

/// Numerator of `f(Sigma)` over `Det^(2D)`, `D` the top degree of `f`:
/// `sum_d phi(f_d) * Det^(2(D - d))`. For homogeneous `f` this is just
/// `phi(f)`. Zero exactly when `f` vanishes on the model.
pub fn substitute(f: &SigmaPolynomial, g: &MixedGraph) -> Polynomial {
    substitute_with(f, &covariance_matrix(g))
}

pub fn substitute_with(f: &SigmaPolynomial, cov: &CovarianceResult) -> Polynomial {
    let Some(top) = f.max_degree() else {
        return Polynomial::zero();
    };
    let det2 = cov.denominator();
    let mut out = PolyBuilder::new();
    for (d, part) in f.components() {
        let mut b = PolyBuilder::new();
        for (m, c) in part.terms() {
            b.add_poly(&substitute_monomial(m, cov).scale(c));
        }
        out.add_product(&b.build(), &det2.pow((top - d) as u32));
    }
    out.build()
}

fn relation_strings<S: Serializer>(rels: &[SigmaPolynomial], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rels.iter().map(ToString::to_string))
}

/// Per-degree outcome of [`degree_scan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeReport {
    pub degree: usize,
    pub initial_columns: usize,
    pub weak_pruned: usize,
    pub full_pruned: usize,
    pub kernel_dim: usize,
    #[serde(serialize_with = "relation_strings")]
    pub relations: Vec<SigmaPolynomial>,
}

/// Weak prune over all degree-`d` monomials, full prune over the weak
/// survivors, then the kernel over what is left.
pub fn scan_degree(cov: &CovarianceResult, d: usize) -> DegreeReport {
    let columns = sigma_monomials(cov.n(), d);
    let initial_columns = columns.len();
    let weak = prune_support(&support_table_from(cov, d, SupportMode::Weak, columns));
    let full = prune_support(&support_table_from(cov, d, SupportMode::Full, weak.clone()));
    let relations = kernel_relations_with(cov, &full);
    DegreeReport {
        degree: d,
        initial_columns,
        weak_pruned: weak.len(),
        full_pruned: full.len(),
        kernel_dim: relations.len(),
        relations,
    }
}

pub fn degree_scan(g: &MixedGraph, dmax: usize) -> Vec<DegreeReport> {
    let cov = covariance_matrix(g);
    (1..=dmax).map(|d| scan_degree(&cov, d)).collect()
}
