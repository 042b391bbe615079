use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp;
use super::monomial::{Monomial, Variable};

/// Exact rational value used for coefficients and evaluation points.
pub type Rational = BigRational;

/// An assignment of exact values to variables.
pub type Assignment = HashMap<Variable, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("no value assigned to {0}")]
    Unassigned(Variable),
    #[error("denominator vanishes at the evaluation point")]
    ZeroDenominator,
    #[error("coefficient denominator is divisible by the modulus {0}")]
    NotInvertibleModP(u64),
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept sorted in descending graded-lex order with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Polynomial::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(m, Rational::one())
    }

    pub fn var(v: Variable) -> Self {
        Polynomial::monomial(Monomial::var(v))
    }

    /// Canonicalizes an arbitrary term list: merges like monomials, drops
    /// zeros, sorts descending.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Polynomial::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { terms }
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

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(x, _)| m.cmp(x))
            .map(|k| self.terms[k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Largest monomial in graded-lex order; `None` for the zero polynomial.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms.iter().flat_map(|(m, _)| m.variables()).collect()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        // Multiplying by a monomial preserves the term order.
        Polynomial {
            terms: self.terms.iter().map(|(x, k)| (x.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficient of `omega_part` when the polynomial is read as a
    /// polynomial in the `w` variables over the ring of `l` polynomials.
    pub fn coefficient_of_omega(&self, omega_part: &Monomial) -> Polynomial {
        debug_assert!(omega_part.is_pure_omega());
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (lam, om) = m.split_kinds();
            (om == *omega_part).then(|| (lam, c.clone()))
        }))
    }

    /// All `w`-monomials with their `l`-polynomial coefficients.
    pub fn split_by_omega(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut parts: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (lam, om) = m.split_kinds();
            parts.entry(om).or_default().push((lam, c.clone()));
        }
        parts
            .into_iter()
            .map(|(om, ts)| (om, Polynomial::from_terms(ts)))
            .collect()
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Variable) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| {
                let reduced = m.div(&Monomial::var(v)).expect("exponent checked");
                (reduced, c * Rational::from_integer(BigInt::from(e)))
            })
        }))
    }

    /// Substitutes exact values for all variables.
    pub fn evaluate(&self, point: &Assignment) -> Result<Rational, EvalError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                let x = point.get(&v).ok_or(EvalError::Unassigned(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation in `Z/pZ`; coefficients are reduced modulo `p`.
    pub fn evaluate_mod(&self, point: &HashMap<Variable, u64>, p: u64) -> Result<u64, EvalError> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = modp::reduce_rational(c, p).ok_or(EvalError::NotInvertibleModP(p))?;
            for (v, e) in m.iter() {
                let x = *point.get(&v).ok_or(EvalError::Unassigned(v))?;
                t = modp::mul(t, modp::pow(x % p, e as u64, p), p);
            }
            acc = modp::add(acc, t, p);
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Division by a single polynomial has a unique remainder, so
    /// `None` means `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        if divisor.len() == 1 {
            let inv = lc.recip();
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                terms.push((m.div(lm)?, c * &inv));
            }
            return Some(Polynomial { terms });
        }
        // Work on a max-ordered map so the leading term is always at the end.
        let mut rest: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.pop_last() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            for (dm, dc) in divisor.terms.iter().skip(1) {
                let prod = qm.mul(dm);
                let delta = &qc * dc;
                match rest.entry(prod) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Some(Polynomial { terms: quotient })
    }
}

fn accumulate(acc: &mut HashMap<Monomial, Rational>, m: Monomial, c: Rational) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn merge(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], negate_b: bool) -> Polynomial {
    let mut terms = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let fix = |c: &Rational| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                terms.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                terms.push((b[j].0.clone(), fix(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = &a[i].1 + fix(&b[j].1);
                if !c.is_zero() {
                    terms.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    terms.extend(a[i..].iter().cloned());
    terms.extend(b[j..].iter().map(|(m, c)| (m.clone(), fix(c))));
    Polynomial { terms }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if rhs.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                accumulate(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Polynomial::from_map(acc)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for (_, c) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for p in iter {
            for (m, c) in p.terms {
                accumulate(&mut acc, m, c);
            }
        }
        Polynomial::from_map(acc)
    }
}

/// Accumulates many terms before canonicalizing once.
#[derive(Default)]
pub struct PolyBuilder {
    acc: HashMap<Monomial, Rational>,
}

impl PolyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        accumulate(&mut self.acc, m, c);
    }

    pub fn add_poly(&mut self, p: &Polynomial) {
        for (m, c) in &p.terms {
            accumulate(&mut self.acc, m.clone(), c.clone());
        }
    }

    /// Adds `a * b` without materializing the product.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&mut self.acc, ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn build(self) -> Polynomial {
        Polynomial::from_map(self.acc)
    }
}

pub(crate) fn write_coefficient_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    body: &dyn fmt::Display,
    body_is_one: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if body_is_one {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{body}")
    } else {
        write!(f, "{abs}*{body}")
    }
}

/// Canonical rendering: terms in ascending monomial order (constant first),
/// e.g. `1 - l_{2,3}*l_{3,4}*l_{4,2}`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            write_coefficient_term(f, k == 0, c, m, m.is_one())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Numerator/denominator pair; no gcd cancellation is attempted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, EvalError> {
        if den.is_zero() {
            return Err(EvalError::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn evaluate(&self, point: &Assignment) -> Result<Rational, EvalError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(EvalError::ZeroDenominator);
        }
        Ok(self.num.evaluate(point)? / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
