use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// The two parameter families of a structural equation model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    /// Edge coefficient `l_{i,j}` of a directed edge `i -> j`.
    Lam,
    /// Error covariance `w_{i,j}` with `i <= j`.
    Om,
}

/// A single indeterminate. Ordering is kind first (all `Lam` before all
/// `Om`), then `(i, j)` lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    kind: VarKind,
    i: u32,
    j: u32,
}

impl Variable {
    pub fn lam(i: usize, j: usize) -> Self {
        Variable {
            kind: VarKind::Lam,
            i: i as u32,
            j: j as u32,
        }
    }

    /// `w_{i,j}`; the pair is stored with `i <= j` since Omega is symmetric.
    pub fn om(i: usize, j: usize) -> Self {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        Variable {
            kind: VarKind::Om,
            i: a as u32,
            j: b as u32,
        }
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn is_lambda(&self) -> bool {
        self.kind == VarKind::Lam
    }

    pub fn is_omega(&self) -> bool {
        self.kind == VarKind::Om
    }

    pub fn i(&self) -> usize {
        self.i as usize
    }

    pub fn j(&self) -> usize {
        self.j as usize
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            VarKind::Lam => 'l',
            VarKind::Om => 'w',
        };
        write!(f, "{}_{{{},{}}}", c, self.i, self.j)
    }
}

type Exponents = SmallVec<[(Variable, u32); 6]>;

/// A power product of variables, stored sparsely and sorted by variable.
///
/// `Ord` is graded lexicographic: higher total degree is larger, ties are
/// broken by the first variable (in `Variable` order) whose exponents differ.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Self {
        Monomial::pow_of(v, 1)
    }

    pub fn pow_of(v: Variable, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        let mut exps = Exponents::new();
        exps.push((v, e));
        Monomial { exps, degree: e }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs;
    /// repeated variables are merged and zero exponents dropped.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Variable, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut exps = Exponents::new();
        for (var, e) in v {
            match exps.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => exps.push((var, e)),
            }
        }
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    /// Product of the given variables, each to the first power (with repeats).
    pub fn product_of<I: IntoIterator<Item = Variable>>(vars: I) -> Self {
        Monomial::from_pairs(vars.into_iter().map(|v| (v, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(var, _)| var)
            .map(|k| self.exps[k].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Exponents::with_capacity(self.exps.len() + other.exps.len());
        let (mut a, mut b) = (self.exps.iter().peekable(), other.exps.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        exps.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        exps.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        exps.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    exps.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    exps.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Exponents = self
            .exps
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - other.exponent(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }

    /// Splits into the product of its `Lam` factors and its `Om` factors.
    pub fn split_kinds(&self) -> (Monomial, Monomial) {
        let cut = self.exps.partition_point(|(v, _)| v.is_lambda());
        let lam: Exponents = self.exps[..cut].iter().copied().collect();
        let om: Exponents = self.exps[cut..].iter().copied().collect();
        let dl = lam.iter().map(|&(_, e)| e).sum();
        (
            Monomial {
                exps: lam,
                degree: dl,
            },
            Monomial {
                exps: om,
                degree: self.degree - dl,
            },
        )
    }

    pub fn is_pure_lambda(&self) -> bool {
        self.exps.iter().all(|(v, _)| v.is_lambda())
    }

    pub fn is_pure_omega(&self) -> bool {
        self.exps.iter().all(|(v, _)| v.is_omega())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.exps.iter().zip(other.exps.iter()) {
                if va != vb {
                    // The monomial holding the earlier variable has the larger
                    // exponent on it (the other has zero there).
                    return vb.cmp(&va);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
