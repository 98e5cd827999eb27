//! Deducing a whole range of generator counts from its two endpoints.
//!
//! Suppose the case with `k_low` forms is verified and its series vanishes
//! from degree `e_surj` on: the ideal contains every form of that degree, and
//! so does any ideal with more generic generators. Suppose the case with
//! `k_high` forms is verified and its Macaulay matrices have full row rank
//! through degree `e_ind`: the multiples of any subset of the generators stay
//! independent there. For `k_low <= k <= k_high` this fixes `dim I_e` for
//! `e <= e_ind` (all multiples independent) and for `e >= e_surj` (everything),
//! and the deduction is accepted only if those degrees cover the whole series
//! and reproduce the expected one.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{verify_case, CaseSpec, Limits, Verdict, VerificationRecord, VerifierError};
use crate::macaulay::first_order_bound;
use crate::series::{conjectured_series, lex_compare, TruncatedSeries};

/// Series of an intermediate `k`, pinned by the endpoint facts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeducedCase {
    pub k: usize,
    pub series: TruncatedSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalWitness {
    pub k_low: usize,
    pub k_high: usize,
    /// First degree where the `k_low` quotient vanishes.
    pub e_surj: Option<usize>,
    /// Last degree through which the `k_high` multiples are independent.
    pub e_ind: usize,
    pub low: VerificationRecord,
    pub high: VerificationRecord,
    /// Strictly intermediate counts; their series are deduced, not computed.
    pub deduced: Vec<DeducedCase>,
}

impl IntervalWitness {
    pub fn covers(&self, k: usize) -> bool {
        (self.k_low..=self.k_high).contains(&k)
    }
}

/// Largest `e` such that every Macaulay matrix through degree `e` has
/// rank equal to its row count.
fn independence_degree(record: &VerificationRecord) -> usize {
    let mut e_ind = 0;
    for s in &record.ranks {
        if s.rank != s.rows {
            break;
        }
        e_ind = s.degree;
    }
    e_ind
}

/// Builds the witness from two verified endpoint records.
pub fn deduce_interval(low: VerificationRecord, high: VerificationRecord) -> Result<IntervalWitness, VerifierError> {
    let (k_low, k_high) = (low.spec.k, high.spec.k);
    let same_family = |a: &CaseSpec, b: &CaseSpec| (a.n, a.d, a.m, a.prime) == (b.n, b.d, b.m, b.prime);
    if k_low > k_high || !same_family(&low.spec, &high.spec) {
        return Err(VerifierError::InvalidSpec(format!("k_low={k_low} and k_high={k_high} do not bound an interval")));
    }
    for rec in [&low, &high] {
        if rec.verdict != Verdict::Verified {
            return Err(VerifierError::EndpointNotVerified { k: rec.spec.k, verdict: rec.verdict });
        }
    }
    let e_surj = low.computed.first_zero();
    let e_ind = independence_degree(&high);
    let (n, md) = (low.spec.n, low.spec.generator_degree());

    let mut deduced = Vec::new();
    if k_high > k_low + 1 {
        let Some(e_surj) = e_surj else {
            // the low endpoint never fills a degree, so its tail is unknown
            return Err(VerifierError::DeductionInapplicable { k: k_low + 1, degree: low.trunc() + 1 });
        };
        for k in k_low + 1..k_high {
            let bound = first_order_bound(n, &vec![md; k], e_surj);
            let mut coeffs = Vec::with_capacity(e_surj + 1);
            for (e, b) in bound.iter().enumerate().take(e_surj) {
                if e > e_ind || *b < BigInt::zero() {
                    return Err(VerifierError::DeductionInapplicable { k, degree: e });
                }
                coeffs.push(b.magnitude().clone());
            }
            coeffs.push(BigUint::zero());
            let series = TruncatedSeries::new(coeffs, true);
            let expected = conjectured_series(&low.spec.with_k(k).degree_list(), e_surj);
            if lex_compare(&series, &expected) != Ok(Ordering::Equal) {
                let degree = (0..=e_surj).find(|&e| series.get(e) != expected.get(e)).unwrap_or(e_surj);
                return Err(VerifierError::DeductionInapplicable { k, degree });
            }
            deduced.push(DeducedCase { k, series });
        }
    }
    Ok(IntervalWitness { k_low, k_high, e_surj, e_ind, low, high, deduced })
}

/// Verifies both endpoints directly and deduces everything in between.
pub fn verify_interval(
    base: &CaseSpec,
    k_low: usize,
    k_high: usize,
    limits: &Limits,
) -> Result<IntervalWitness, VerifierError> {
    if k_low > k_high {
        return Err(VerifierError::InvalidSpec(format!("empty interval {k_low}..={k_high}")));
    }
    let low = verify_case(&base.with_k(k_low), limits)?;
    let high = if k_high == k_low { low.clone() } else { verify_case(&base.with_k(k_high), limits)? };
    deduce_interval(low, high)
}
