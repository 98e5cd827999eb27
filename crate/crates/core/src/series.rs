//! Truncated integer power series.
//!
//! Index `i` of a coefficient vector is the coefficient of `t^i`, and every
//! truncation bound is inclusive. Coefficients are arbitrary precision: the
//! binomial series `1/(1-t)^n` overflows machine words for moderate degrees.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("invalid degree list: {0}")]
    InvalidDegrees(String),
    #[error("series truncated at t^{left} and t^{right} cannot be compared past the shorter one")]
    IncomparableTruncation { left: usize, right: usize },
    #[error("ceiling does not terminate at or before t^{cap}; raise the truncation cap")]
    CapExceeded { cap: usize },
}

/// Degrees `d_1, ..., d_k` of the generators together with the number of
/// variables `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeList {
    n: usize,
    degrees: Vec<usize>,
}

impl DegreeList {
    pub fn new(n: usize, degrees: Vec<usize>) -> Result<Self, SeriesError> {
        if n == 0 {
            return Err(SeriesError::InvalidDegrees("need at least one variable".into()));
        }
        if degrees.iter().any(|&d| d == 0) {
            return Err(SeriesError::InvalidDegrees("generator degrees must be positive".into()));
        }
        Ok(Self { n, degrees })
    }

    /// `k` generators, all of degree `d`.
    pub fn uniform(n: usize, d: usize, k: usize) -> Result<Self, SeriesError> {
        Self::new(n, vec![d; k])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }
}

/// Raw expansion of a rational function; coefficients may be negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSeries {
    coeffs: Vec<BigInt>,
}

impl SignedSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }
}

/// A series with nonnegative coefficients, known up to `t^trunc`.
///
/// When `terminated` is set, every coefficient past `trunc` is zero and the
/// series is a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigUint>,
    terminated: bool,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<BigUint>, terminated: bool) -> Self {
        assert!(!coeffs.is_empty(), "a series stores at least the constant term");
        Self { coeffs, terminated }
    }

    pub fn from_u64(coeffs: &[u64], terminated: bool) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect(), terminated)
    }

    /// Series whose tail is known to vanish as soon as one coefficient does,
    /// which holds for every Hilbert function of a standard graded quotient
    /// by an ideal generated in positive degree.
    pub fn from_hilbert_values(values: Vec<BigUint>) -> Self {
        let terminated = values.iter().any(Zero::is_zero);
        Self::new(values, terminated)
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigUint {
        &self.coeffs[i]
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_terminated(&self) -> bool {
        self.terminated
    }

    /// First degree with a zero coefficient, if any.
    pub fn first_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(Zero::is_zero)
    }

    /// Coefficient of `t^i` including the implied zeros of a terminated
    /// series; `None` past the truncation of a non-terminated one.
    pub fn get(&self, i: usize) -> Option<BigUint> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.terminated => Some(BigUint::zero()),
            None => None,
        }
    }

    pub fn to_signed(&self) -> SignedSeries {
        SignedSeries::new(self.coeffs.iter().map(|c| BigInt::from(c.clone())).collect())
    }
}

/// `C(top, k)` by the multiplicative recurrence; every intermediate value is
/// itself a binomial coefficient, so nothing larger than the result is formed.
pub fn binomial(top: u64, k: u64) -> BigUint {
    if k > top {
        return BigUint::zero();
    }
    let k = k.min(top - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= top - i;
        acc /= i + 1;
    }
    acc
}

/// Number of monomials of degree `e` in `n` variables, `C(n+e-1, e)`.
pub fn monomials_in_degree(n: usize, e: usize) -> BigUint {
    if n == 0 {
        return if e == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial((n + e - 1) as u64, e as u64)
}

/// Taylor coefficients of `prod (1 - t^{d_i}) / (1 - t)^n` through `t^trunc`.
pub fn expand_rational(spec: &DegreeList, trunc: usize) -> SignedSeries {
    let n = spec.n();
    // 1/(1-t)^n: c_0 = 1, c_e = c_{e-1} (n+e-1) / e.
    let mut coeffs = Vec::with_capacity(trunc + 1);
    let mut c = BigInt::one();
    coeffs.push(c.clone());
    for e in 1..=trunc {
        c *= n + e - 1;
        c /= e;
        coeffs.push(c.clone());
    }
    for &d in spec.degrees() {
        // Multiply by (1 - t^d) in place, high degrees first.
        for e in (d..=trunc).rev() {
            let lower = coeffs[e - d].clone();
            coeffs[e] -= lower;
        }
    }
    SignedSeries::new(coeffs)
}

/// Keep coefficients while every coefficient so far is strictly positive;
/// zero from the first nonpositive one on.
pub fn ceiling(series: &SignedSeries) -> TruncatedSeries {
    let mut out = Vec::with_capacity(series.coeffs().len());
    let mut terminated = false;
    for c in series.coeffs() {
        if terminated || c.sign() != Sign::Plus {
            terminated = true;
            out.push(BigUint::zero());
        } else {
            out.push(c.magnitude().clone());
        }
    }
    TruncatedSeries::new(out, terminated)
}

/// `ceil(prod (1 - t^{d_i}) / (1 - t)^n)` through `t^trunc`.
pub fn conjectured_series(spec: &DegreeList, trunc: usize) -> TruncatedSeries {
    ceiling(&expand_rational(spec, trunc))
}

/// Lexicographic comparison by first differing coefficient.
///
/// Series with different truncations are compared over the longer range when
/// the shorter one is terminated (its tail is zero). Otherwise a verdict is
/// only returned if it is already decided inside the shorter range.
pub fn lex_compare(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Ordering, SeriesError> {
    let (short, long) = if f.trunc() <= g.trunc() { (f, g) } else { (g, f) };
    let range = if short.is_terminated() { long.trunc() } else { short.trunc() };
    for i in 0..=range {
        // Both are defined on 0..=range by the choice above.
        let a = f.get(i).expect("in range");
        let b = g.get(i).expect("in range");
        match a.cmp(&b) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    if range < long.trunc() {
        return Err(SeriesError::IncomparableTruncation { left: f.trunc(), right: g.trunc() });
    }
    Ok(Ordering::Equal)
}

/// Truncation that captures the whole conjectured series.
///
/// For `k > n` this is one past the degree where the ceiling first hits zero,
/// clamped to `cap`. With `k <= n` the ideal is a complete intersection whose
/// series may be infinite, so `cap` is returned.
pub fn default_truncation(spec: &DegreeList, cap: usize) -> Result<usize, SeriesError> {
    assert!(cap >= 1, "truncation cap must be positive");
    if spec.k() <= spec.n() {
        return Ok(cap);
    }
    first_nonpositive(spec, cap)
        .map(|e| (e + 1).min(cap))
        .ok_or(SeriesError::CapExceeded { cap })
}

/// First degree `<= cap` whose expansion coefficient is nonpositive, growing
/// the expansion geometrically.
pub fn first_nonpositive(spec: &DegreeList, cap: usize) -> Option<usize> {
    let mut horizon = spec.degrees().iter().copied().max().unwrap_or(1).max(8).min(cap);
    loop {
        let series = expand_rational(spec, horizon);
        if let Some(e) = series.coeffs().iter().position(|c| !c.is_positive()) {
            return Some(e);
        }
        if horizon == cap {
            return None;
        }
        horizon = (horizon * 2).min(cap);
    }
}

fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (usize, bool, &'a BigUint)>,
{
    let mut first = true;
    for (i, negative, mag) in terms {
        if mag.is_zero() {
            continue;
        }
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let unit = mag.is_one();
        match i {
            0 => write!(f, "{mag}")?,
            1 if unit => write!(f, "t")?,
            1 => write!(f, "{mag}t")?,
            _ if unit => write!(f, "t^{i}")?,
            _ => write!(f, "{mag}t^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(i, c)| (i, false, c)))
    }
}

impl fmt::Display for SignedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i, c.is_negative(), c.magnitude())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &SignedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn nats(s: &TruncatedSeries) -> Vec<u64> {
        s.coeffs().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    fn uniform(n: usize, d: usize, k: usize) -> DegreeList {
        DegreeList::uniform(n, d, k).unwrap()
    }

    /// Independent route: expand the numerator as a polynomial by repeated
    /// convolution, build the denominator series from Pascal's rule, then
    /// convolve the two.
    fn oracle_expand(n: usize, degrees: &[usize], trunc: usize) -> Vec<i128> {
        let mut numerator = vec![1i128];
        for &d in degrees {
            let mut next = vec![0i128; numerator.len() + d];
            for (i, &a) in numerator.iter().enumerate() {
                next[i] += a;
                next[i + d] -= a;
            }
            numerator = next;
        }
        // pascal[v][e] = number of degree-e monomials in v variables
        let mut row = vec![1i128; trunc + 1];
        for _ in 1..n {
            for e in 1..=trunc {
                row[e] += row[e - 1];
            }
        }
        (0..=trunc)
            .map(|e| (0..=e).filter(|&j| j < numerator.len()).map(|j| numerator[j] * row[e - j]).sum())
            .collect()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(ints(&expand_rational(&uniform(4, 2, 5), 4)), oracle_expand(4, &[2; 5], 4).iter().map(|&x| x as i64).collect::<Vec<_>>());
        assert_eq!(ints(&expand_rational(&uniform(4, 2, 5), 4)), vec![1, 4, 5, 0, -5]);
        assert_eq!(ints(&expand_rational(&uniform(3, 1, 0), 3)), vec![1, 3, 6, 10]);
        assert_eq!(ints(&expand_rational(&DegreeList::new(2, vec![2, 2]).unwrap(), 3)), vec![1, 2, 1, 0]);
    }

    #[test]
    fn expansion_handles_words_overflowing_u64() {
        let s = expand_rational(&uniform(30, 1, 0), 60);
        assert_eq!(s.coeff(60), &BigInt::from(binomial(89, 60)));
        assert!(s.coeff(60) > &BigInt::from(u64::MAX));
    }

    #[test]
    fn ceiling_examples() {
        let c = ceiling(&SignedSeries::from_i64(&[1, 4, 5, 0, 5]));
        assert_eq!(nats(&c), vec![1, 4, 5, 0, 0]);
        assert!(c.is_terminated());
        let c = ceiling(&SignedSeries::from_i64(&[1, 2, 3]));
        assert_eq!(nats(&c), vec![1, 2, 3]);
        assert!(!c.is_terminated());
        let c = ceiling(&SignedSeries::from_i64(&[1, -1, 7]));
        assert_eq!(nats(&c), vec![1, 0, 0]);
        assert!(c.is_terminated());
    }

    #[test]
    fn conjectured_examples() {
        let head: Vec<u64> = (0..=13u64).map(|i| (i + 2) * (i + 1) / 2).collect();
        let mut want = head.clone();
        want.extend([94, 58, 0]);
        assert_eq!(nats(&conjectured_series(&uniform(3, 14, 26), 16)), want);
        let mut want = head;
        want.extend([75, 1, 0]);
        assert_eq!(nats(&conjectured_series(&uniform(3, 14, 45), 16)), want);
        assert_eq!(nats(&conjectured_series(&uniform(4, 2, 5), 4)), vec![1, 4, 5, 0, 0]);
    }

    #[test]
    fn lex_examples() {
        let s = |c: &[u64], t| TruncatedSeries::from_u64(c, t);
        assert_eq!(lex_compare(&s(&[1, 2, 3], false), &s(&[1, 2, 3], false)), Ok(Ordering::Equal));
        assert_eq!(lex_compare(&s(&[1, 3, 0], false), &s(&[1, 2, 9], false)), Ok(Ordering::Greater));
        assert_eq!(lex_compare(&s(&[1, 4, 5, 0], true), &s(&[1, 4, 5], true)), Ok(Ordering::Equal));
        assert_eq!(lex_compare(&s(&[1, 4, 5], true), &s(&[1, 4, 5, 1], false)), Ok(Ordering::Less));
    }

    #[test]
    fn lex_rejects_unknown_tails() {
        let f = TruncatedSeries::from_u64(&[1, 4, 5], false);
        let g = TruncatedSeries::from_u64(&[1, 4, 5, 1], false);
        assert_eq!(lex_compare(&f, &g), Err(SeriesError::IncomparableTruncation { left: 2, right: 3 }));
        // decided before the shorter range ends
        let g = TruncatedSeries::from_u64(&[1, 3, 5, 1], false);
        assert_eq!(lex_compare(&f, &g), Ok(Ordering::Greater));
    }

    #[test]
    fn default_truncation_examples() {
        assert_eq!(default_truncation(&uniform(3, 14, 26), 64), Ok(17));
        assert_eq!(default_truncation(&uniform(2, 3, 1), 10), Ok(10));
        assert_eq!(default_truncation(&uniform(4, 2, 5), 64), Ok(4));
        assert_eq!(default_truncation(&uniform(3, 14, 26), 16), Ok(16));
        assert_eq!(default_truncation(&uniform(3, 14, 26), 12), Err(SeriesError::CapExceeded { cap: 12 }));
    }

    #[test]
    fn rendering() {
        assert_eq!(conjectured_series(&uniform(4, 2, 5), 4).to_string(), "1 + 4t + 5t^2");
        assert_eq!(conjectured_series(&uniform(2, 2, 2), 3).to_string(), "1 + 2t + t^2");
        assert_eq!(SignedSeries::from_i64(&[1, 0, -1, 0, -12]).to_string(), "1 - t^2 - 12t^4");
        assert_eq!(SignedSeries::from_i64(&[0, 0]).to_string(), "0");
    }

    #[test]
    fn rejects_bad_degree_lists() {
        assert!(DegreeList::new(0, vec![]).is_err());
        assert!(DegreeList::new(2, vec![1, 0]).is_err());
    }

    fn signed_series() -> impl Strategy<Value = SignedSeries> {
        prop::collection::vec(-5i64..20, 1..12).prop_map(|v| SignedSeries::from_i64(&v))
    }

    fn terminated_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(-2i64..4, 1..6).prop_map(|v| {
            let mut c = ceiling(&SignedSeries::from_i64(&v));
            // force the tail to be known
            if !c.is_terminated() {
                let mut coeffs = c.coeffs().to_vec();
                coeffs.push(BigUint::zero());
                c = TruncatedSeries::new(coeffs, true);
            }
            c
        })
    }

    proptest! {
        #[test]
        fn ceiling_is_idempotent(f in signed_series()) {
            let once = ceiling(&f);
            prop_assert_eq!(ceiling(&once.to_signed()), once);
        }

        #[test]
        fn ceiling_tail_stays_zero(f in signed_series()) {
            let c = ceiling(&f);
            if let Some(z) = c.first_zero() {
                prop_assert!(c.coeffs()[z..].iter().all(Zero::is_zero));
                prop_assert!(c.is_terminated());
            }
        }

        #[test]
        fn binomial_series_when_no_generators(n in 1usize..6, trunc in 0usize..30) {
            let s = expand_rational(&DegreeList::new(n, vec![]).unwrap(), trunc);
            for i in 0..=trunc {
                prop_assert_eq!(s.coeff(i), &BigInt::from(binomial((n + i - 1) as u64, i as u64)));
            }
        }

        #[test]
        fn expansion_matches_polynomial_oracle(
            n in 1usize..=3,
            degrees in prop::collection::vec(1usize..=3, 0..=4),
            trunc in 0usize..=8,
        ) {
            let s = expand_rational(&DegreeList::new(n, degrees.clone()).unwrap(), trunc);
            let want = oracle_expand(n, &degrees, trunc);
            prop_assert_eq!(s.coeffs().iter().map(|c| i128::try_from(c).unwrap()).collect::<Vec<_>>(), want);
        }

        #[test]
        fn complete_intersection_is_power_of_block(n in 1usize..=4, d in 1usize..=4) {
            // (1 + t + ... + t^{d-1})^n, by repeated convolution
            let mut poly = vec![1u64];
            for _ in 0..n {
                let mut next = vec![0u64; poly.len() + d - 1];
                for (i, &a) in poly.iter().enumerate() {
                    for j in 0..d {
                        next[i + j] += a;
                    }
                }
                poly = next;
            }
            let trunc = poly.len() + 2;
            let c = conjectured_series(&uniform(n, d, n), trunc);
            poly.resize(trunc + 1, 0);
            prop_assert_eq!(nats(&c), poly.clone());
            prop_assert_eq!(c.first_zero(), Some(n * (d - 1) + 1));
        }

        #[test]
        fn lex_is_total_order_on_terminated(a in terminated_series(), b in terminated_series(), c in terminated_series()) {
            let ab = lex_compare(&a, &b).unwrap();
            let ba = lex_compare(&b, &a).unwrap();
            prop_assert_eq!(ab, ba.reverse());
            let trimmed = |s: &TruncatedSeries| {
                let mut v = nats(s);
                while v.last() == Some(&0) { v.pop(); }
                v
            };
            prop_assert_eq!(ab == Ordering::Equal, trimmed(&a) == trimmed(&b));
            let bc = lex_compare(&b, &c).unwrap();
            if ab != Ordering::Greater && bc != Ordering::Greater {
                prop_assert_ne!(lex_compare(&a, &c).unwrap(), Ordering::Greater);
            }
        }
    }
}
