use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::covariance::{covariance_matrix, CovarianceResult};
use crate::graph::MixedGraph;
use crate::poly::{Monomial, Polynomial};

use super::sigma::{sigma_monomials, SigmaMonomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportMode {
    /// Every `l`-monomial of each `w`-coefficient.
    Full,
    /// Only the leading `l`-monomial of each `w`-coefficient, under the
    /// lexicographic order with `l_{1,2} > l_{1,3} > ... > l_{n,n-1}`.
    Weak,
}

/// Rows are `w`-monomials, columns are sigma monomials. The entry at
/// `(w^a, s^b)` is a set of `l`-monomials taken from the coefficient of
/// `w^a` in the image of `s^b`.
///
/// Each (row, `l`-monomial) pair is stored as the full product
/// `l^c * w^a`, interned to an id.
#[derive(Clone, Debug)]
pub struct SupportTable {
    degree: usize,
    mode: SupportMode,
    columns: Vec<SigmaMonomial>,
    keys: Vec<Monomial>,
    entries: Vec<Vec<u32>>,
}

impl SupportTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> SupportMode {
        self.mode
    }

    pub fn columns(&self) -> &[SigmaMonomial] {
        &self.columns
    }

    /// The `w`-monomials with at least one nonempty entry, ascending.
    pub fn rows(&self) -> Vec<Monomial> {
        let rows: BTreeSet<Monomial> = self.keys.iter().map(|k| k.split_kinds().1).collect();
        rows.into_iter().collect()
    }

    /// `l`-monomials in the entry `(row, columns()[col])`, ascending.
    pub fn entry(&self, row: &Monomial, col: usize) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.entries[col]
            .iter()
            .map(|&k| self.keys[k as usize].split_kinds())
            .filter(|(_, w)| w == row)
            .map(|(l, _)| l)
            .collect();
        out.sort();
        out
    }

    fn key_count(&self) -> usize {
        self.keys.len()
    }
}

/// Images of the given sigma monomials under `s_{i,j} -> f_ij`, sharing
/// prefix products between consecutive monomials.
pub fn sigma_products(cov: &CovarianceResult, columns: &[SigmaMonomial]) -> Vec<Polynomial> {
    // chunks start wherever the first factor changes, so each chunk is a
    // subtree of the lexicographic enumeration
    let mut starts: Vec<usize> = (0..columns.len())
        .filter(|&k| k == 0 || columns[k].pairs().first() != columns[k - 1].pairs().first())
        .collect();
    starts.push(columns.len());
    let chunks: Vec<(usize, usize)> = starts.windows(2).map(|w| (w[0], w[1])).collect();
    chunks
        .par_iter()
        .flat_map_iter(|&(lo, hi)| {
            let mut prefix: Vec<((usize, usize), Polynomial)> = Vec::new();
            let mut out = Vec::with_capacity(hi - lo);
            for col in &columns[lo..hi] {
                let pairs = col.pairs();
                let common = prefix
                    .iter()
                    .zip(pairs)
                    .take_while(|((q, _), p)| q == *p)
                    .count();
                prefix.truncate(common);
                for &p in &pairs[common..] {
                    let next = match prefix.last() {
                        Some((_, acc)) => acc * cov.numerator(p.0, p.1),
                        None => cov.numerator(p.0, p.1).clone(),
                    };
                    prefix.push((p, next));
                }
                out.push(match prefix.last() {
                    Some((_, acc)) => acc.clone(),
                    None => Polynomial::one(),
                });
            }
            out
        })
        .collect()
}

/// Pure lexicographic comparison of monomials.
pub(crate) fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (mut x, mut y) = (a.iter(), b.iter());
    loop {
        match (x.next(), y.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => {
                if va != vb {
                    // the earlier variable is present only in the first monomial
                    return vb.cmp(&va);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
        }
    }
}

fn entry_monomials(p: &Polynomial, mode: SupportMode) -> Vec<Monomial> {
    match mode {
        SupportMode::Full => p.monomials().cloned().collect(),
        SupportMode::Weak => {
            let mut lead: BTreeMap<Monomial, Monomial> = BTreeMap::new();
            for m in p.monomials() {
                let (l, w) = m.split_kinds();
                match lead.get_mut(&w) {
                    Some(best) if lex_cmp(best, &l) != Ordering::Less => {}
                    Some(best) => *best = l,
                    None => {
                        lead.insert(w, l);
                    }
                }
            }
            lead.into_iter().map(|(w, l)| l.mul(&w)).collect()
        }
    }
}

pub fn support_table_from(
    cov: &CovarianceResult,
    d: usize,
    mode: SupportMode,
    columns: Vec<SigmaMonomial>,
) -> SupportTable {
    debug_assert!(columns.iter().all(|c| c.degree() == d));
    let products = sigma_products(cov, &columns);
    let monomials: Vec<Vec<Monomial>> = products
        .par_iter()
        .map(|p| entry_monomials(p, mode))
        .collect();
    let mut ids: HashMap<Monomial, u32> = HashMap::new();
    let mut keys = Vec::new();
    let entries = monomials
        .into_iter()
        .map(|ms| {
            ms.into_iter()
                .map(|m| {
                    *ids.entry(m).or_insert_with_key(|m| {
                        keys.push(m.clone());
                        (keys.len() - 1) as u32
                    })
                })
                .collect()
        })
        .collect();
    SupportTable {
        degree: d,
        mode,
        columns,
        keys,
        entries,
    }
}

/// Table over all degree-`d` sigma monomials.
pub fn support_table(g: &MixedGraph, d: usize, mode: SupportMode) -> SupportTable {
    support_table_for(g, d, mode, sigma_monomials(g.n(), d))
}

/// Table over the given degree-`d` sigma monomials.
pub fn support_table_for(
    g: &MixedGraph,
    d: usize,
    mode: SupportMode,
    columns: Vec<SigmaMonomial>,
) -> SupportTable {
    support_table_from(&covariance_matrix(g), d, mode, columns)
}

fn survivors(t: &SupportTable, alive: &[bool]) -> Vec<SigmaMonomial> {
    t.columns
        .iter()
        .zip(alive)
        .filter(|(_, &a)| a)
        .map(|(c, _)| c.clone())
        .collect()
}

/// Repeatedly removes every column holding an `l`-monomial that occurs in
/// no other column of its row, until no column qualifies. Returns the
/// surviving sigma monomials in column order.
pub fn prune_support(t: &SupportTable) -> Vec<SigmaMonomial> {
    let ncols = t.columns.len();
    // per key: number of live columns containing it, and the xor of their
    // indices (which names the column once the count drops to 1)
    let mut count = vec![0u32; t.key_count()];
    let mut owner = vec![0u32; t.key_count()];
    for (c, es) in t.entries.iter().enumerate() {
        for &k in es {
            count[k as usize] += 1;
            owner[k as usize] ^= c as u32;
        }
    }
    let mut alive = vec![true; ncols];
    let mut batch: BTreeSet<usize> = (0..t.key_count())
        .filter(|&k| count[k] == 1)
        .map(|k| owner[k] as usize)
        .collect();
    while !batch.is_empty() {
        let mut touched = Vec::new();
        for &c in &batch {
            alive[c] = false;
        }
        for &c in &batch {
            for &k in &t.entries[c] {
                let k = k as usize;
                count[k] -= 1;
                owner[k] ^= c as u32;
                touched.push(k);
            }
        }
        batch = touched
            .into_iter()
            .filter(|&k| count[k] == 1)
            .map(|k| owner[k] as usize)
            .filter(|&c| alive[c])
            .collect();
    }
    survivors(t, &alive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanOrder {
    Forward,
    Reverse,
}

/// Removes one column at a time, rescanning columns in the given order
/// after each removal. Reaches the same fixed point as [`prune_support`].
pub fn prune_support_sequential(t: &SupportTable, order: ScanOrder) -> Vec<SigmaMonomial> {
    let ncols = t.columns.len();
    let mut count = vec![0u32; t.key_count()];
    for es in &t.entries {
        for &k in es {
            count[k as usize] += 1;
        }
    }
    let mut alive = vec![true; ncols];
    let scan: Vec<usize> = match order {
        ScanOrder::Forward => (0..ncols).collect(),
        ScanOrder::Reverse => (0..ncols).rev().collect(),
    };
    loop {
        let hit = scan
            .iter()
            .copied()
            .find(|&c| alive[c] && t.entries[c].iter().any(|&k| count[k as usize] == 1));
        let Some(c) = hit else { break };
        alive[c] = false;
        for &k in &t.entries[c] {
            count[k as usize] -= 1;
        }
    }
    survivors(t, &alive)
}
