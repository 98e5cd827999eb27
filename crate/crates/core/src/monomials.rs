//! Monomials of fixed degree, their ranking, and monomial ideals.
//!
//! Within a degree, monomials are ordered lexicographically on the exponent
//! vector with the exponent of `x1` most significant and larger exponents
//! first, so `x1^d` has rank 0 and `xn^d` has the last rank.

use std::cmp::Reverse;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::series::{monomials_in_degree, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("index {index} out of range for {count} monomials")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("monomial has {got} variables, expected {expected}")]
    VariableCount { expected: usize, got: usize },
    #[error("cannot parse monomial {0:?}")]
    Parse(String),
    #[error("monomial count C({top}, {k}) does not fit in a machine word")]
    TooMany { top: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// `x_{var+1}^e` (variables are zero-based internally).
    pub fn pure_power(n: usize, var: usize, e: u32) -> Self {
        let mut exps = vec![0; n];
        exps[var] = e;
        Self { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect()))
    }

    /// The variable of a pure power `x_i^e` with `e > 0`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut support = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    /// Image under the variable substitution `x_i -> x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial::new(exps)
    }

    /// Parses `x1^2*x3`, or `1` for the constant monomial.
    pub fn parse(n: usize, text: &str) -> Result<Monomial, MonomialError> {
        let text = text.trim();
        let err = || MonomialError::Parse(text.to_string());
        let mut exps = vec![0u32; n];
        if text == "1" {
            return Ok(Monomial::new(exps));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let body = factor.strip_prefix('x').ok_or_else(err)?;
            let (var, exp) = match body.split_once('^') {
                Some((v, e)) => (v, e.parse::<u32>().map_err(|_| err())?),
                None => (body, 1),
            };
            let var: usize = var.parse().map_err(|_| err())?;
            if var == 0 || var > n {
                return Err(err());
            }
            exps[var - 1] += exp;
        }
        Ok(Monomial::new(exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{e}", i + 1)?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Exact `C(n+d-1, d)`.
pub fn monomial_count(n: usize, d: usize) -> BigUint {
    monomials_in_degree(n, d)
}

/// `C(n+d-1, d)` as a machine word, for sizes that index memory.
pub fn try_count(n: usize, d: usize) -> Result<usize, MonomialError> {
    if n == 0 {
        return Ok(usize::from(d == 0));
    }
    let top = n + d - 1;
    let k = d.min(n - 1);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (top - i) as u128 / (i as u128 + 1);
        if acc > usize::MAX as u128 {
            return Err(MonomialError::TooMany { top, k: d });
        }
    }
    Ok(acc as usize)
}

/// Monomial counts `counts[v][e]` for `v <= n` variables and `e <= max_deg`,
/// used to rank monomials without recomputing binomials.
#[derive(Debug, Clone)]
pub struct CountTable {
    counts: Vec<Vec<usize>>,
}

impl CountTable {
    pub fn new(n: usize, max_deg: usize) -> Self {
        let mut counts = vec![vec![0usize; max_deg + 1]; n + 1];
        counts[0][0] = 1;
        for v in 1..=n {
            for e in 0..=max_deg {
                // monomials in v variables of degree e: split on whether the last variable appears
                let without = counts[v - 1][e];
                let with = if e > 0 { counts[v][e - 1] } else { 0 };
                counts[v][e] = without.checked_add(with).expect("monomial count overflows usize");
            }
        }
        Self { counts }
    }

    pub fn count(&self, vars: usize, e: usize) -> usize {
        self.counts[vars][e]
    }

    /// Rank of `m` within its degree.
    pub fn rank(&self, m: &Monomial) -> usize {
        let n = m.n();
        let mut remaining = m.degree();
        let mut rank = 0;
        for (i, &a) in m.exponents().iter().enumerate().take(n.saturating_sub(1)) {
            let a = a as usize;
            // monomials agreeing before position i with a larger exponent there
            if remaining > a {
                rank += self.counts[n - i][remaining - a - 1];
            }
            remaining -= a;
        }
        rank
    }
}

/// Rank of `m` among the monomials of its degree.
pub fn rank(m: &Monomial) -> usize {
    CountTable::new(m.n(), m.degree()).rank(m)
}

/// Monomial of degree `d` in `n` variables with the given rank.
pub fn unrank(n: usize, d: usize, index: usize) -> Result<Monomial, MonomialError> {
    let table = CountTable::new(n, d);
    let count = table.count(n, d);
    if index >= count {
        return Err(MonomialError::IndexOutOfRange { index, count });
    }
    let mut exps = vec![0u32; n];
    let mut remaining = d;
    let mut index = index;
    for i in 0..n - 1 {
        // choose the largest exponent a whose block still contains index
        let mut a = remaining;
        loop {
            let block_before = if remaining > a { table.count(n - i, remaining - a - 1) } else { 0 };
            let block = table.count(n - i - 1, remaining - a);
            if index < block_before + block {
                index -= block_before;
                break;
            }
            a -= 1;
        }
        exps[i] = a as u32;
        remaining -= a;
    }
    exps[n - 1] = remaining as u32;
    Ok(Monomial::new(exps))
}

/// All monomials of degree `d` in `n` variables, in rank order.
pub fn enumerate(n: usize, d: usize) -> Vec<Monomial> {
    assert!(n >= 1, "need at least one variable");
    let mut out = Vec::with_capacity(try_count(n, d).unwrap_or(0));
    let mut exps = vec![0u32; n];
    exps[0] = d as u32;
    loop {
        out.push(Monomial::new(exps.clone()));
        let Some(i) = (0..n - 1).rev().find(|&i| exps[i] > 0) else {
            break;
        };
        let tail: u32 = exps[i + 1..].iter().sum();
        exps[i] -= 1;
        for e in &mut exps[i + 1..] {
            *e = 0;
        }
        exps[i + 1] = tail + 1;
    }
    out
}

/// Bijection between `0..C(n+d-1, d)` and the degree-`d` monomials.
#[derive(Debug, Clone)]
pub struct MonomialOrderTable {
    n: usize,
    d: usize,
    monomials: Vec<Monomial>,
    counts: CountTable,
}

impl MonomialOrderTable {
    pub fn new(n: usize, d: usize) -> Self {
        Self { n, d, monomials: enumerate(n, d), counts: CountTable::new(n, d) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn rank(&self, m: &Monomial) -> usize {
        debug_assert_eq!(m.degree(), self.d);
        self.counts.rank(m)
    }

    pub fn unrank(&self, index: usize) -> Result<&Monomial, MonomialError> {
        self.monomials
            .get(index)
            .ok_or(MonomialError::IndexOutOfRange { index, count: self.monomials.len() })
    }
}

/// Ideal generated by monomials, kept with a minimal generating set.
///
/// An empty generating set is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(n: usize, generators: impl IntoIterator<Item = Monomial>) -> Result<Self, MonomialError> {
        let mut gens: Vec<Monomial> = generators.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(MonomialError::VariableCount { expected: n, got: bad.n() });
        }
        gens.sort_by_key(|g| (g.degree(), Reverse(g.exps.clone())));
        gens.dedup();
        // after sorting by degree, a divisor always precedes its multiples
        let mut minimal: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        Ok(Self { n, generators: minimal })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, generators: Vec::new() }
    }

    /// `m^e` for the maximal ideal `m = (x1, ..., xn)`.
    pub fn maximal_power(n: usize, e: usize) -> Self {
        Self { n, generators: enumerate(n, e) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// Number of degree-`e` monomials lying in the ideal.
    pub fn dimension_in_degree(&self, e: usize) -> usize {
        enumerate(self.n, e).iter().filter(|m| self.contains(m)).count()
    }

    /// One generator per line.
    pub fn to_text(&self) -> String {
        self.generators.iter().map(|g| format!("{g}\n")).collect()
    }

    /// Inverse of [`MonomialIdeal::to_text`]; blank lines and `#` comments are
    /// skipped.
    pub fn parse_text(n: usize, text: &str) -> Result<Self, MonomialError> {
        let gens = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| Monomial::parse(n, l))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, gens)
    }
}

/// Hilbert function of `R/I` through degree `max_deg`, by counting the
/// monomials of each degree that no generator divides.
pub fn quotient_hilbert_function(ideal: &MonomialIdeal, max_deg: usize) -> TruncatedSeries {
    let values: Vec<BigUint> = (0..=max_deg)
        .into_par_iter()
        .map(|e| {
            let standard = enumerate(ideal.n(), e).iter().filter(|m| !ideal.contains(m)).count();
            BigUint::from(standard)
        })
        .collect();
    TruncatedSeries::from_hilbert_values(values)
}

/// Whether every monomial of degree `e` lies in the ideal.
pub fn contains_power_of_maximal_ideal(ideal: &MonomialIdeal, e: usize) -> bool {
    enumerate(ideal.n(), e).iter().all(|m| ideal.contains(m))
}
