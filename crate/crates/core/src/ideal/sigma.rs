use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::poly::{write_coefficient_term, Rational};

/// A product of covariance entries `s_{i,j}` (`i <= j`), kept as a sorted
/// list of pairs with repetition. Ordered lexicographically on that list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SigmaMonomial {
    pairs: Vec<(usize, usize)>,
}

impl SigmaMonomial {
    pub fn one() -> Self {
        SigmaMonomial::default()
    }

    pub fn new<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut pairs: Vec<_> = pairs.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        pairs.sort_unstable();
        SigmaMonomial { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    pub fn mul(&self, other: &SigmaMonomial) -> SigmaMonomial {
        SigmaMonomial::new(self.pairs.iter().chain(&other.pairs).copied())
    }

    /// Distinct pairs with multiplicities.
    pub fn powers(&self) -> Vec<((usize, usize), u32)> {
        let mut out: Vec<((usize, usize), u32)> = Vec::new();
        for &p in &self.pairs {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl fmt::Display for SigmaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (k, ((i, j), e)) in self.powers().into_iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "s_{{{i},{j}}}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SigmaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Pairs `(i, j)` with `1 <= i <= j <= n` in lexicographic order.
pub fn sigma_variables(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// All degree-`d` sigma monomials on `n` vertices, in lexicographic order.
pub fn sigma_monomials(n: usize, d: usize) -> Vec<SigmaMonomial> {
    let vars = sigma_variables(n);
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(d);
    fn rec(
        vars: &[(usize, usize)],
        start: usize,
        left: usize,
        stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<SigmaMonomial>,
    ) {
        if left == 0 {
            out.push(SigmaMonomial {
                pairs: stack.clone(),
            });
            return;
        }
        for k in start..vars.len() {
            stack.push(vars[k]);
            rec(vars, k, left - 1, stack, out);
            stack.pop();
        }
    }
    rec(&vars, 0, d, &mut stack, &mut out);
    out
}

/// Polynomial in the covariance entries with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SigmaPolynomial {
    terms: BTreeMap<SigmaMonomial, Rational>,
}

impl SigmaPolynomial {
    pub fn zero() -> Self {
        SigmaPolynomial::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (SigmaMonomial, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<SigmaMonomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        SigmaPolynomial { terms: map }
    }

    pub fn from_int_terms<I: IntoIterator<Item = (i64, SigmaMonomial)>>(terms: I) -> Self {
        SigmaPolynomial::from_terms(
            terms
                .into_iter()
                .map(|(c, m)| (m, Rational::from_integer(c.into()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SigmaMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &SigmaMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<SigmaMonomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(SigmaMonomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(SigmaMonomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<usize, SigmaPolynomial> {
        let mut out: BTreeMap<usize, SigmaPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_default()
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SigmaPolynomial {
        SigmaPolynomial::from_terms(self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Scales so that the first coefficient (in monomial order) is 1.
    pub fn normalized(&self) -> SigmaPolynomial {
        match self.terms.values().next() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn sub(&self, other: &SigmaPolynomial) -> SigmaPolynomial {
        SigmaPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .chain(other.terms.iter().map(|(m, c)| (m.clone(), -c))),
        )
    }
}

/// Terms in monomial order, e.g. `s_{1,3}*s_{1,4}^3 - 2*s_{1,3}^2*s_{1,4}^2`.
impl fmt::Display for SigmaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            write_coefficient_term(f, k == 0, c, m, m.degree() == 0)?;
        }
        Ok(())
    }
}

impl fmt::Debug for SigmaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(sigma_monomials(4, 1).len(), 10);
        assert_eq!(sigma_monomials(4, 2).len(), 55);
        assert_eq!(sigma_monomials(4, 6).len(), 5005);
        let ms = sigma_monomials(3, 3);
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rendering() {
        let m = SigmaMonomial::new([(1, 4), (1, 3), (4, 1), (1, 4)]);
        assert_eq!(m.to_string(), "s_{1,3}*s_{1,4}^3");
        let p = SigmaPolynomial::from_int_terms([
            (-2, SigmaMonomial::new([(1, 3), (1, 3)])),
            (1, SigmaMonomial::new([(1, 2), (3, 3)])),
        ]);
        assert_eq!(p.to_string(), "s_{1,2}*s_{3,3} - 2*s_{1,3}^2");
        assert_eq!(p.scale(&Rational::new(1.into(), 2.into())).to_string(), "1/2*s_{1,2}*s_{3,3} - s_{1,3}^2");
        let q = SigmaPolynomial::from_int_terms([(3, SigmaMonomial::new([(1, 1)])), (6, SigmaMonomial::new([(2, 2)]))]);
        assert_eq!(q.normalized().to_string(), "s_{1,1} + 2*s_{2,2}");
        assert_eq!(p.sub(&p), SigmaPolynomial::zero());
    }

    #[test]
    fn components_split_by_degree() {
        let p = SigmaPolynomial::from_int_terms([
            (1, SigmaMonomial::new([(1, 1)])),
            (1, SigmaMonomial::one()),
            (1, SigmaMonomial::new([(1, 2), (2, 2)])),
        ]);
        assert!(!p.is_homogeneous());
        let c = p.components();
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(p.max_degree(), Some(2));
    }
}
