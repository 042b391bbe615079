//! Symbolic covariance matrices `Sigma = (I - Lambda)^{-T} Omega (I - Lambda)^{-1}`.
//!
//! The primary route expands `det(I - Lambda)` over disjoint cycle families
//! and `Det * (I - Lambda)^{-1}` over 1-connections, then forms the
//! numerators `f = N^T Omega N` over the shared denominator `Det^2`.
//! [`trek_rule`], [`naive_inverse`] and [`neumann_oracle`] are independent
//! routes used to cross-check it.

mod naive;
mod neumann;
mod trek;

use std::ops::ControlFlow;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::deadline::{Deadline, Timeout};
use crate::graph::{
    disjoint_cycle_families, enumerate_cycles, try_for_each_path_from, DisjointCycleFamily,
    MixedGraph,
};
use crate::poly::{
    Assignment, EvalError, Monomial, PolyBuilder, Polynomial, Rational, RationalFunction, Variable,
};

pub use naive::{naive_inverse, naive_inverse_within, bareiss_adjugate};
pub use neumann::{evaluate_sigma, neumann_oracle};
pub use trek::trek_rule;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CovarianceError {
    #[error("the trek rule needs an acyclic directed part")]
    Cyclic,
    #[error(transparent)]
    Timeout(#[from] Timeout),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Square matrix of polynomials indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n);
        for i in 1..=n {
            m.set(i, i, Polynomial::one());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[(i - 1) * self.n + (j - 1)] = p;
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let n = self.n;
        let mut out = PolyMatrix::zeros(n);
        for i in 1..=n {
            for j in 1..=n {
                let mut b = PolyBuilder::new();
                for k in 1..=n {
                    b.add_product(self.get(i, k), other.get(k, j));
                }
                out.set(i, j, b.build());
            }
        }
        out
    }

    pub fn scale(&self, p: &Polynomial) -> PolyMatrix {
        PolyMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

/// `I - Lambda` for the directed part of `g`.
pub fn i_minus_lambda(g: &MixedGraph) -> PolyMatrix {
    let mut m = PolyMatrix::identity(g.n());
    for &(a, b) in g.directed() {
        m.set(a, b, -Polynomial::var(Variable::lam(a, b)));
    }
    m
}

/// `Det * (I - Lambda)^{-1}`; satisfies `N (I - Lambda) = Det * I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseNumerator {
    pub det: Polynomial,
    pub matrix: PolyMatrix,
}

impl InverseNumerator {
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        self.matrix.get(i, j)
    }
}

/// Covariance matrix in shared-denominator form: `sigma_ij = f_ij / Det^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovarianceResult {
    det: Polynomial,
    numerators: PolyMatrix,
}

/// Structured rendering used by the CLI and golden files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedCovariance {
    pub det: String,
    pub numerators: Vec<Vec<String>>,
}

impl CovarianceResult {
    pub fn new(det: Polynomial, numerators: PolyMatrix) -> Self {
        CovarianceResult { det, numerators }
    }

    pub fn n(&self) -> usize {
        self.numerators.n()
    }

    pub fn det(&self) -> &Polynomial {
        &self.det
    }

    pub fn numerators(&self) -> &PolyMatrix {
        &self.numerators
    }

    /// `f_ij`
    pub fn numerator(&self, i: usize, j: usize) -> &Polynomial {
        self.numerators.get(i, j)
    }

    pub fn denominator(&self) -> Polynomial {
        &self.det * &self.det
    }

    pub fn sigma(&self, i: usize, j: usize) -> RationalFunction {
        RationalFunction::new(self.numerator(i, j).clone(), self.denominator())
            .expect("Det has constant term 1")
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| (i + 1..=n).all(|j| self.numerator(i, j) == self.numerator(j, i)))
    }

    pub fn max_numerator_terms(&self) -> usize {
        self.numerators.entries.iter().map(Polynomial::len).max().unwrap_or(0)
    }

    pub fn serialize(&self) -> SerializedCovariance {
        SerializedCovariance {
            det: self.det.to_string(),
            numerators: self.numerators.rows(),
        }
    }

    /// Exact value of `Sigma` at a point.
    pub fn evaluate(&self, point: &Assignment) -> Result<Vec<Vec<Rational>>, EvalError> {
        let den = self.denominator().evaluate(point)?;
        if num_traits::Zero::is_zero(&den) {
            return Err(EvalError::ZeroDenominator);
        }
        let n = self.n();
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| Ok(self.numerator(i, j).evaluate(point)? / &den))
                    .collect()
            })
            .collect()
    }
}

fn sign(exponent: usize) -> Rational {
    Rational::from_integer(BigInt::from(if exponent.is_multiple_of(2) { 1 } else { -1 }))
}

fn lambda_monomial<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Monomial {
    Monomial::product_of(edges.into_iter().map(|(a, b)| Variable::lam(a, b)))
}

struct FamilyTerm {
    family: DisjointCycleFamily,
    monomial: Monomial,
}

fn family_terms(g: &MixedGraph) -> Vec<FamilyTerm> {
    disjoint_cycle_families(&enumerate_cycles(g))
        .into_iter()
        .map(|family| FamilyTerm {
            monomial: lambda_monomial(family.edges()),
            family,
        })
        .collect()
}

/// `det(I - Lambda)` as a sum over disjoint cycle families `S`:
/// `(-1)^(v_S - c_S) * prod(-l_e)`.
pub fn det_linear_subgraphs(g: &MixedGraph) -> Polynomial {
    det_from_families(&family_terms(g))
}

fn det_from_families(families: &[FamilyTerm]) -> Polynomial {
    let mut b = PolyBuilder::new();
    for ft in families {
        let (v, c) = (ft.family.vertex_count(), ft.family.cycle_count());
        // (-1)^(v_S - c_S) times one factor of -1 per edge (v_S edges)
        b.add_term(ft.monomial.clone(), sign(v - c + v));
    }
    b.build()
}

/// `Det * (I - Lambda)^{-1}` from the 1-connections of the Coates digraph.
pub fn inverse_numerator(g: &MixedGraph) -> InverseNumerator {
    inverse_numerator_within(g, &Deadline::none()).expect("no deadline")
}

pub fn inverse_numerator_within(
    g: &MixedGraph,
    deadline: &Deadline,
) -> Result<InverseNumerator, Timeout> {
    let n = g.n();
    let families = family_terms(g);
    let det = det_from_families(&families);
    let mut matrix = PolyMatrix::zeros(n);
    for source in 1..=n {
        deadline.check()?;
        let mut rows: Vec<PolyBuilder> = (0..=n).map(|_| PolyBuilder::new()).collect();
        let mut visits = 0usize;
        let flow = try_for_each_path_from(g, source, |path, path_mask| {
            visits += 1;
            if visits.is_multiple_of(256) && deadline.check().is_err() {
                return ControlFlow::Break(());
            }
            let sink = *path.last().expect("nonempty");
            let v_p = path.len();
            let path_mono = lambda_monomial(path.windows(2).map(|w| (w[0], w[1])));
            for ft in families.iter().filter(|ft| !ft.family.mask().intersects(path_mask)) {
                let (v_s, c_s) = (ft.family.vertex_count(), ft.family.cycle_count());
                // (-1)^(c(C) + 1) with c(C) = c_S + n - v_S - v_p, one -1 per
                // edge of path and cycles, and the global (-1)^n making
                // N (I - Lambda) = Det I.
                let edges = (v_p - 1) + v_s;
                let exponent = c_s + (n - v_s - v_p) + 1 + edges + n;
                rows[sink].add_term(path_mono.mul(&ft.monomial), sign(exponent));
            }
            ControlFlow::Continue(())
        });
        if flow.is_break() {
            return Err(Timeout);
        }
        for (sink, b) in rows.into_iter().enumerate().skip(1) {
            matrix.set(source, sink, b.build());
        }
    }
    Ok(InverseNumerator { det, matrix })
}

/// Nonzero entries of the symbolic `Omega`: the diagonal and one entry per
/// bidirected edge (listed once with `a < b`).
pub fn omega_entries(g: &MixedGraph) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = g.vertices().map(|i| (i, i)).collect();
    v.extend_from_slice(g.bidirected());
    v
}

/// `f = N^T Omega N`, i.e. `f_ij = sum_{l,k} N[l][i] w_{l,k} N[k][j]`.
pub fn covariance_numerators(
    g: &MixedGraph,
    n_matrix: &PolyMatrix,
    deadline: &Deadline,
) -> Result<PolyMatrix, Timeout> {
    let n = g.n();
    let omega = omega_entries(g);
    let mut f = PolyMatrix::zeros(n);
    for i in 1..=n {
        deadline.check()?;
        for j in i..=n {
            let mut b = PolyBuilder::new();
            for &(l, k) in &omega {
                let w = Monomial::var(Variable::om(l, k));
                let one = Rational::from_integer(1.into());
                let pairs: &[(usize, usize)] = if l == k { &[(l, k)] } else { &[(l, k), (k, l)] };
                for &(a, c) in pairs {
                    let (left, right) = (n_matrix.get(a, i), n_matrix.get(c, j));
                    if left.is_zero() || right.is_zero() {
                        continue;
                    }
                    b.add_product(&left.mul_monomial(&w, &one), right);
                }
            }
            let p = b.build();
            if i != j {
                f.set(j, i, p.clone());
            }
            f.set(i, j, p);
        }
    }
    Ok(f)
}

/// Covariance matrix by the 1-connection rule.
pub fn covariance_matrix(g: &MixedGraph) -> CovarianceResult {
    covariance_matrix_within(g, &Deadline::none()).expect("no deadline")
}

pub fn covariance_matrix_within(
    g: &MixedGraph,
    deadline: &Deadline,
) -> Result<CovarianceResult, Timeout> {
    deadline.check()?;
    let inv = inverse_numerator_within(g, deadline)?;
    let f = covariance_numerators(g, &inv.matrix, deadline)?;
    Ok(CovarianceResult::new(inv.det, f))
}
