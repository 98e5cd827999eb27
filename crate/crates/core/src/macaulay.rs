//! Random homogeneous forms over `GF(p)` and the Hilbert series of the
//! quotient they define.
//!
//! The degree-`e` piece of `I = (g_1, ..., g_k)` is spanned by the products
//! `u * g_j` with `u` running over monomials of degree `e - deg g_j`. Writing
//! those products as rows over the degree-`e` monomials gives the Macaulay
//! matrix, whose rank is `dim I_e`. Each degree is handled independently.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::modp::{IncrementalRank, PrimeField};
use crate::monomials::{enumerate, monomial_count, try_count, CountTable, Monomial};
use crate::series::TruncatedSeries;

static RANK_COMPUTATIONS: AtomicU64 = AtomicU64::new(0);

/// Number of Macaulay-matrix ranks computed by this process so far.
pub fn rank_computations() -> u64 {
    RANK_COMPUTATIONS.load(Ordering::Relaxed)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("forms live in different rings")]
    RingMismatch,
    #[error("form text line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("expected {expected} coefficients for degree {degree}, got {got}")]
    CoefficientCount { degree: usize, expected: usize, got: usize },
}

/// Homogeneous polynomial of a fixed degree, as a coefficient per monomial
/// in rank order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPPoly {
    n: usize,
    degree: usize,
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl ModPPoly {
    pub fn zero(n: usize, degree: usize, field: PrimeField) -> Self {
        let len = try_count(n, degree).expect("degree too large to store densely");
        Self { n, degree, field, coeffs: vec![0; len] }
    }

    pub fn from_coeffs(n: usize, degree: usize, field: PrimeField, coeffs: Vec<u64>) -> Result<Self, FormError> {
        let expected = try_count(n, degree).expect("degree too large to store densely");
        if coeffs.len() != expected {
            return Err(FormError::CoefficientCount { degree, expected, got: coeffs.len() });
        }
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        Ok(Self { n, degree, field, coeffs })
    }

    /// Sum of `c * m` over the given terms, which must share one degree.
    pub fn from_terms(n: usize, field: PrimeField, terms: &[(Monomial, i64)]) -> Self {
        let degree = terms.first().map_or(0, |(m, _)| m.degree());
        let table = CountTable::new(n, degree);
        let mut poly = Self::zero(n, degree, field);
        for (m, c) in terms {
            assert_eq!(m.degree(), degree, "terms of a form share one degree");
            let slot = &mut poly.coeffs[table.rank(m)];
            *slot = field.add(*slot, field.from_i64(*c));
        }
        poly
    }

    pub fn monomial(m: &Monomial, field: PrimeField) -> Self {
        Self::from_terms(m.n(), field, &[(m.clone(), 1)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.coeffs[CountTable::new(self.n, self.degree).rank(m)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in rank order.
    pub fn terms(&self) -> Vec<(Monomial, u64)> {
        enumerate(self.n, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m, c))
            .collect()
    }
}

/// Form of degree `d` with independent uniform coefficients, drawn in
/// monomial-rank order.
pub fn random_form<R: Rng>(n: usize, d: usize, field: PrimeField, rng: &mut R) -> ModPPoly {
    assert!(d >= 1, "forms have positive degree");
    let len = try_count(n, d).expect("degree too large to store densely");
    let p = field.modulus();
    let coeffs = (0..len).map(|_| rng.gen_range(0..p)).collect();
    ModPPoly { n, degree: d, field, coeffs }
}

pub fn multiply(f: &ModPPoly, g: &ModPPoly) -> Result<ModPPoly, FormError> {
    if f.n != g.n || f.field != g.field {
        return Err(FormError::RingMismatch);
    }
    let field = f.field;
    let degree = f.degree + g.degree;
    let table = CountTable::new(f.n, degree);
    let mut out = ModPPoly::zero(f.n, degree, field);
    let g_terms = g.terms();
    for (a, ca) in f.terms() {
        for (b, cb) in &g_terms {
            let slot = &mut out.coeffs[table.rank(&a.mul(b))];
            *slot = field.add(*slot, field.mul(ca, *cb));
        }
    }
    Ok(out)
}

/// `f^m` by repeated squaring.
pub fn power(f: &ModPPoly, m: usize) -> ModPPoly {
    assert!(m >= 1, "exponent must be positive");
    let mut result: Option<ModPPoly> = None;
    let mut base = f.clone();
    let mut m = m;
    loop {
        if m & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => multiply(&r, &base).expect("same ring"),
            });
        }
        m >>= 1;
        if m == 0 {
            break;
        }
        base = multiply(&base, &base).expect("same ring");
    }
    result.expect("m >= 1")
}

/// Generators of an ideal over one prime field, with the seed that drew them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormFamily {
    n: usize,
    field: PrimeField,
    seed: Option<u64>,
    forms: Vec<ModPPoly>,
}

impl FormFamily {
    pub fn new(n: usize, field: PrimeField, forms: Vec<ModPPoly>) -> Result<Self, FormError> {
        if forms.iter().any(|f| f.n != n || f.field != field) {
            return Err(FormError::RingMismatch);
        }
        Ok(Self { n, field, seed: None, forms })
    }

    pub fn empty(n: usize, field: PrimeField) -> Self {
        Self { n, field, seed: None, forms: Vec::new() }
    }

    /// Random forms of the given degrees, drawn in order from one stream.
    pub fn random(n: usize, degrees: &[usize], field: PrimeField, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let forms = degrees.iter().map(|&d| random_form(n, d, field, &mut rng)).collect();
        Self { n, field, seed: Some(seed), forms }
    }

    /// `g_1^m, ..., g_k^m` for random forms `g_i` of degree `d`. The first
    /// `k` forms do not depend on how many more are drawn.
    pub fn random_powers(n: usize, d: usize, m: usize, k: usize, field: PrimeField, seed: u64) -> Self {
        let base = Self::random(n, &vec![d; k], field, seed);
        let forms = base.forms.iter().map(|g| power(g, m)).collect();
        Self { forms, ..base }
    }

    /// `x_1^d, ..., x_n^d` followed by `k - n` random forms of degree `d`.
    pub fn pure_power_mix(n: usize, d: usize, k: usize, field: PrimeField, seed: u64) -> Self {
        assert!(k >= n, "the mix starts with all n pure powers");
        let mut forms: Vec<ModPPoly> =
            (0..n).map(|i| ModPPoly::monomial(&Monomial::pure_power(n, i, d as u32), field)).collect();
        forms.extend(Self::random(n, &vec![d; k - n], field, seed).forms);
        Self { n, field, seed: Some(seed), forms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn forms(&self) -> &[ModPPoly] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.forms.iter().map(ModPPoly::degree).collect()
    }

    pub fn push(&mut self, form: ModPPoly) -> Result<(), FormError> {
        if form.n != self.n || form.field != self.field {
            return Err(FormError::RingMismatch);
        }
        self.forms.push(form);
        Ok(())
    }

    /// One line per form: `d: c0 c1 c2 ...` in monomial-rank order.
    pub fn to_text(&self) -> String {
        self.forms
            .iter()
            .map(|f| {
                let coeffs: Vec<String> = f.coeffs.iter().map(u64::to_string).collect();
                format!("{}: {}\n", f.degree, coeffs.join(" "))
            })
            .collect()
    }

    pub fn parse_text(n: usize, field: PrimeField, text: &str) -> Result<Self, FormError> {
        let mut forms = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |reason: &str| FormError::Parse { line: i + 1, reason: reason.to_string() };
            let (deg, rest) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let degree: usize = deg.trim().parse().map_err(|_| bad("bad degree"))?;
            let coeffs = rest
                .split_whitespace()
                .map(|c| c.parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("bad coefficient"))?;
            forms.push(ModPPoly::from_coeffs(n, degree, field, coeffs)?);
        }
        Self::new(n, field, forms)
    }
}

impl fmt::Display for FormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Size and rank of the Macaulay matrix in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeStats {
    pub degree: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

/// `(rows, cols)` of the degree-`e` Macaulay matrix.
pub fn macaulay_shape(family: &FormFamily, e: usize) -> (u128, u128) {
    let n = family.n;
    let rows = family
        .forms
        .iter()
        .filter(|g| g.degree <= e)
        .map(|g| count_u128(n, e - g.degree))
        .sum();
    (rows, count_u128(n, e))
}

fn count_u128(n: usize, e: usize) -> u128 {
    u128::try_from(monomial_count(n, e)).unwrap_or(u128::MAX)
}

/// `dim I_e` together with the matrix size that produced it.
pub fn ideal_dimension_stats(family: &FormFamily, e: usize) -> DegreeStats {
    let n = family.n;
    let cols = try_count(n, e).expect("degree too large");
    let active: Vec<&ModPPoly> = family.forms.iter().filter(|g| g.degree <= e && !g.is_zero()).collect();
    let rows = family
        .forms
        .iter()
        .filter(|g| g.degree <= e)
        .map(|g| try_count(n, e - g.degree).expect("degree too large"))
        .sum();
    if active.is_empty() {
        return DegreeStats { degree: e, rows, cols, rank: 0 };
    }
    RANK_COMPUTATIONS.fetch_add(1, Ordering::Relaxed);
    let table = CountTable::new(n, e);
    let mut basis = IncrementalRank::new(family.field, cols);
    let mut row: Vec<(usize, u64)> = Vec::new();
    'outer: for g in active {
        let terms = g.terms();
        for u in enumerate(n, e - g.degree) {
            if basis.is_full() {
                break 'outer;
            }
            row.clear();
            row.extend(terms.iter().map(|(w, c)| (table.rank(&u.mul(w)), *c)));
            basis.push_sparse(&row);
        }
    }
    DegreeStats { degree: e, rows, cols, rank: basis.rank() }
}

/// `dim I_e`, the rank of the degree-`e` Macaulay matrix.
pub fn ideal_dimension_at_degree(family: &FormFamily, e: usize) -> usize {
    ideal_dimension_stats(family, e).rank
}

/// Hilbert series of `R/I` through `max_deg`, with per-degree matrix data.
pub fn quotient_series_with_stats(family: &FormFamily, max_deg: usize) -> (TruncatedSeries, Vec<DegreeStats>) {
    let stats: Vec<DegreeStats> = (0..=max_deg).into_par_iter().map(|e| ideal_dimension_stats(family, e)).collect();
    let values = stats.iter().map(|s| BigUint::from(s.cols - s.rank)).collect();
    (TruncatedSeries::from_hilbert_values(values), stats)
}

pub fn hilbert_series_of_quotient(family: &FormFamily, max_deg: usize) -> TruncatedSeries {
    quotient_series_with_stats(family, max_deg).0
}

/// `C(n+e-1, e) - sum_g C(n+e-deg g-1, e-deg g)` for each `e <= max_deg`:
/// what remains if every monomial multiple of every generator were
/// independent. The quotient series is never below it.
pub fn first_order_bound(n: usize, degrees: &[usize], max_deg: usize) -> Vec<BigInt> {
    (0..=max_deg)
        .map(|e| {
            let mut b = BigInt::from(monomial_count(n, e));
            for &d in degrees.iter().filter(|&&d| d <= e) {
                b -= BigInt::from(monomial_count(n, e - d));
            }
            b
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::{rank, DenseMatrix, DEFAULT_PRIME};
    use crate::series::{conjectured_series, DegreeList};
    use num_traits::Zero;
    use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, proptest, ProptestConfig, Strategy};
    use std::collections::HashSet;

    fn field() -> PrimeField {
        PrimeField::default()
    }

    fn mono(n: usize, s: &str) -> Monomial {
        Monomial::parse(n, s).unwrap()
    }

    fn form(n: usize, terms: &[(&str, i64)]) -> ModPPoly {
        let terms: Vec<(Monomial, i64)> = terms.iter().map(|(s, c)| (mono(n, s), *c)).collect();
        ModPPoly::from_terms(n, field(), &terms)
    }

    fn nats(s: &TruncatedSeries) -> Vec<u64> {
        s.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn random_forms_are_reproducible() {
        let draw = |seed| random_form(2, 1, field(), &mut ChaCha8Rng::seed_from_u64(seed));
        assert_eq!(draw(7), draw(7));
        assert_eq!(draw(7).coeffs().len(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_form(3, 2, field(), &mut rng);
        let b = random_form(3, 2, field(), &mut rng);
        assert_eq!(a.coeffs().len(), 6);
        assert_ne!(a, b);
        assert!(a.coeffs().iter().all(|&c| c < DEFAULT_PRIME));
    }

    #[test]
    fn products() {
        let sum = form(2, &[("x1", 1), ("x2", 1)]);
        let diff = form(2, &[("x1", 1), ("x2", -1)]);
        assert_eq!(multiply(&sum, &diff).unwrap(), form(2, &[("x1^2", 1), ("x2^2", -1)]));
        assert_eq!(multiply(&sum, &sum).unwrap(), form(2, &[("x1^2", 1), ("x1*x2", 2), ("x2^2", 1)]));
        let shifted = multiply(&form(3, &[("x1*x2", 5), ("x3^2", 2)]), &form(3, &[("x1", 1)])).unwrap();
        assert_eq!(shifted, form(3, &[("x1^2*x2", 5), ("x1*x3^2", 2)]));
        let other_ring = form(3, &[("x1", 1)]);
        assert_eq!(multiply(&sum, &other_ring), Err(FormError::RingMismatch));
    }

    #[test]
    fn powers() {
        let sum = form(2, &[("x1", 1), ("x2", 1)]);
        assert_eq!(power(&sum, 2), form(2, &[("x1^2", 1), ("x1*x2", 2), ("x2^2", 1)]));
        assert_eq!(power(&sum, 1), sum);
        let three = form(3, &[("x1", 1), ("x2", 1), ("x3", 1)]);
        assert_eq!(power(&three, 2).coeff(&mono(3, "x1*x2")), 2);
        // (x+y)^5 has binomial coefficients
        let fifth = power(&sum, 5);
        assert_eq!(fifth.coeffs(), &[1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn dimension_examples() {
        let squares = FormFamily::new(2, field(), vec![form(2, &[("x1^2", 1)]), form(2, &[("x2^2", 1)])]).unwrap();
        assert_eq!(ideal_dimension_at_degree(&squares, 2), 2);
        // oracle: the distinct monomials among u * g
        let multiples: HashSet<Monomial> = ["x1^2", "x2^2"]
            .iter()
            .flat_map(|g| enumerate(2, 1).into_iter().map(move |u| u.mul(&mono(2, g))))
            .collect();
        assert_eq!(ideal_dimension_at_degree(&squares, 3), multiples.len());
        assert_eq!(multiples.len(), 4);
        assert_eq!(ideal_dimension_at_degree(&squares, 1), 0);
    }

    #[test]
    fn forty_five_forms_independent_in_degree_15() {
        // 45 seventh powers of random quadrics, and 45 fully random degree-14 forms
        for family in [
            FormFamily::random_powers(3, 2, 7, 45, field(), 2024),
            FormFamily::random(3, &[14; 45], field(), 2024),
        ] {
            let stats = ideal_dimension_stats(&family, 15);
            assert_eq!((stats.rows, stats.cols), (135, 136));
            assert_eq!(stats.rank, 135);
        }
    }

    #[test]
    fn quotient_examples() {
        let squares = FormFamily::new(2, field(), vec![form(2, &[("x1^2", 1)]), form(2, &[("x2^2", 1)])]).unwrap();
        assert_eq!(nats(&hilbert_series_of_quotient(&squares, 3)), vec![1, 2, 1, 0]);
        let quadrics = FormFamily::random(3, &[2; 4], field(), 3);
        let got = hilbert_series_of_quotient(&quadrics, 3);
        assert_eq!(got, conjectured_series(&DegreeList::uniform(3, 2, 4).unwrap(), 3));
        assert_eq!(nats(&got), vec![1, 3, 2, 0]);
        assert_eq!(nats(&hilbert_series_of_quotient(&FormFamily::empty(3, field()), 2)), vec![1, 3, 6]);
    }

    #[test]
    fn forms_text_round_trip() {
        let family = FormFamily::random(3, &[2, 3], field(), 9);
        let text = family.to_text();
        assert!(text.starts_with("2: "));
        assert_eq!(text.lines().nth(1).unwrap().split_whitespace().count(), 1 + 10);
        let back = FormFamily::parse_text(3, field(), &text).unwrap();
        assert_eq!(back.forms(), family.forms());
        assert!(FormFamily::parse_text(3, field(), "2: 1 2 3").is_err());
        assert!(FormFamily::parse_text(3, field(), "2 1 2 3").is_err());
    }

    /// Dense Macaulay matrix built directly from the product definition.
    fn dense_macaulay(family: &FormFamily, e: usize) -> DenseMatrix {
        let cols = enumerate(family.n(), e);
        let mut rows = Vec::new();
        for g in family.forms().iter().filter(|g| g.degree() <= e) {
            for u in enumerate(family.n(), e - g.degree()) {
                let product = multiply(&ModPPoly::monomial(&u, family.field()), g).unwrap();
                rows.push(cols.iter().map(|m| product.coeff(m)).collect::<Vec<u64>>());
            }
        }
        if rows.is_empty() {
            return DenseMatrix::zeros(0, cols.len());
        }
        DenseMatrix::from_rows(&family.field(), &rows)
    }

    /// Rank over the rationals by fraction-free elimination.
    fn rational_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        let mut prev = BigInt::from(1);
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            for i in r + 1..rows.len() {
                for j in c + 1..cols {
                    let v = (&rows[r][c] * &rows[i][j] - &rows[i][c] * &rows[r][j]) / &prev;
                    rows[i][j] = v;
                }
                rows[i][c] = BigInt::zero();
            }
            prev = rows[r][c].clone();
            r += 1;
        }
        r
    }

    #[test]
    fn prime_field_rank_never_exceeds_rational_rank() {
        // small integer coefficients; a tiny prime makes rank drops likely
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let small = PrimeField::new(3).unwrap();
        let mut drops = 0;
        for _ in 0..40 {
            let ints: Vec<Vec<i64>> = (0..3).map(|_| (0..6).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let forms = ints
                .iter()
                .map(|c| ModPPoly::from_coeffs(3, 2, small, c.iter().map(|&x| small.from_i64(x)).collect()).unwrap())
                .collect();
            let family = FormFamily::new(3, small, forms).unwrap();
            let big = FormFamily::new(
                3,
                field(),
                ints.iter()
                    .map(|c| ModPPoly::from_coeffs(3, 2, field(), c.iter().map(|&x| field().from_i64(x)).collect()).unwrap())
                    .collect(),
            )
            .unwrap();
            for e in 2..=4 {
                // integer matrix, from the large-prime copy with symmetric lift
                let dense = dense_macaulay(&big, e);
                let p = DEFAULT_PRIME;
                let lifted: Vec<Vec<BigInt>> = (0..dense.rows())
                    .map(|r| {
                        (0..dense.cols())
                            .map(|c| {
                                let v = dense.get(r, c);
                                if v > p / 2 { BigInt::from(v as i64 - p as i64) } else { BigInt::from(v) }
                            })
                            .collect()
                    })
                    .collect();
                let over_q = rational_rank(lifted);
                let mod_small = ideal_dimension_at_degree(&family, e);
                assert!(mod_small <= over_q);
                assert_eq!(ideal_dimension_at_degree(&big, e), over_q);
                if mod_small < over_q {
                    drops += 1;
                }
            }
        }
        assert!(drops > 0, "expected at least one rank drop mod 3");
    }

    fn small_family() -> impl Strategy<Value = FormFamily> {
        (1usize..=3, prop::collection::vec(1usize..=4, 0..=4), any::<u64>(), prop::sample::select(vec![5u64, 101, DEFAULT_PRIME]))
            .prop_map(|(n, degrees, seed, p)| FormFamily::random(n, &degrees, PrimeField::new(p).unwrap(), seed))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn incremental_agrees_with_dense(family in small_family(), e in 0usize..7) {
            let dense = dense_macaulay(&family, e);
            prop_assert_eq!(ideal_dimension_at_degree(&family, e), rank(&family.field(), dense));
        }

        #[test]
        fn specialization_bounds(family in small_family(), trunc in 0usize..=10) {
            let (series, stats) = quotient_series_with_stats(&family, trunc);
            let bound = first_order_bound(family.n(), &family.degrees(), trunc);
            for (s, b) in stats.iter().zip(&bound) {
                prop_assert!(s.rank <= s.rows && s.rank <= s.cols);
                let coeff = BigInt::from(series.coeff(s.degree).clone());
                prop_assert!(coeff >= *b);
            }
        }

        #[test]
        fn adding_a_form_never_raises_the_series(family in small_family(), d in 1usize..=3, seed in any::<u64>(), trunc in 0usize..8) {
            let before = hilbert_series_of_quotient(&family, trunc);
            let mut bigger = family.clone();
            bigger.push(random_form(family.n(), d, family.field(), &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
            let after = hilbert_series_of_quotient(&bigger, trunc);
            for e in 0..=trunc {
                prop_assert!(after.coeff(e) <= before.coeff(e));
            }
        }

        #[test]
        fn power_is_iterated_product(n in 1usize..=3, d in 1usize..=3, m in 2usize..=4, seed in any::<u64>()) {
            let f = random_form(n, d, field(), &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(power(&f, m), multiply(&power(&f, m - 1), &f).unwrap());
        }

        #[test]
        fn same_seed_same_series(n in 1usize..=3, degrees in prop::collection::vec(1usize..=3, 1..=4), seed in any::<u64>()) {
            let a = FormFamily::random(n, &degrees, field(), seed);
            let b = FormFamily::random(n, &degrees, field(), seed);
            prop_assert_eq!(quotient_series_with_stats(&a, 6), quotient_series_with_stats(&b, 6));
        }
    }
}
