//! Sweep planning over a range of generator counts.
//!
//! Counts up to `n` give complete intersections and are verified one by one.
//! Above `n`, counts are grouped by the degree where the expected series
//! vanishes, and each group is split greedily into the longest intervals
//! whose interior the interval deduction can pin from the two endpoints.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};

use super::{deduce_interval, verify_many, CaseSpec, IntervalWitness, Limits, Verdict, VerificationRecord, VerifierError};
use crate::macaulay::first_order_bound;
use crate::monomials::try_count;
use crate::series::{conjectured_series, monomials_in_degree, DegreeList, TruncatedSeries};

/// Cells `(n, d, m)` of the published verified-cases table.
pub const TABLE_CELLS: [(usize, usize, usize); 6] = [(4, 2, 2), (4, 2, 3), (4, 3, 2), (4, 2, 4), (4, 3, 3), (5, 2, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlannedCase {
    pub k: usize,
    /// Resolved truncation, or the cap when the expected series does not
    /// vanish by then.
    pub trunc: usize,
    /// Entries of the largest Macaulay matrix up to `trunc`.
    pub max_entries: u128,
    pub within_budget: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPlan {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub k_lo: usize,
    pub k_hi: usize,
    /// Counts verified on their own.
    pub singles: Vec<PlannedCase>,
    /// `(low, high)` endpoint pairs; everything strictly between is deduced.
    pub intervals: Vec<(PlannedCase, PlannedCase)>,
}

impl SweepPlan {
    /// Every count that needs a direct computation, in increasing order.
    pub fn endpoints(&self) -> Vec<PlannedCase> {
        let mut all: BTreeMap<usize, PlannedCase> = self.singles.iter().map(|c| (c.k, *c)).collect();
        for (lo, hi) in &self.intervals {
            all.insert(lo.k, *lo);
            all.insert(hi.k, *hi);
        }
        all.into_values().collect()
    }

    pub fn covers(&self, k: usize) -> bool {
        self.singles.iter().any(|c| c.k == k) || self.intervals.iter().any(|(lo, hi)| (lo.k..=hi.k).contains(&k))
    }

    /// Smallest count above `n`, the endpoint nearest the middle of the
    /// range, and the largest count; deduplicated.
    pub fn representative_ks(&self) -> Vec<usize> {
        let ends: Vec<usize> = self.endpoints().iter().map(|c| c.k).filter(|&k| k > self.n).collect();
        let (Some(&first), Some(&last)) = (ends.first(), ends.last()) else {
            return self.endpoints().iter().map(|c| c.k).collect();
        };
        let mid = (self.k_lo.max(self.n + 1) + self.k_hi) / 2;
        let middle = *ends.iter().min_by_key(|&&k| k.abs_diff(mid)).expect("nonempty");
        let mut ks = vec![first, middle, last];
        ks.dedup();
        ks
    }

    pub fn direct_count(&self) -> usize {
        self.endpoints().len()
    }
}

fn planned_case(base: &CaseSpec, k: usize, limits: &Limits) -> PlannedCase {
    let spec = base.with_k(k);
    let trunc = spec.resolved(limits.trunc_cap).ok().and_then(|s| s.trunc).unwrap_or(limits.trunc_cap);
    let (_, rows, cols) = spec.largest_matrix(trunc);
    let max_entries = rows.saturating_mul(cols);
    PlannedCase { k, trunc, max_entries, within_budget: max_entries <= limits.matrix_budget }
}

/// Expected data for one count, reused across feasibility checks.
struct Profile {
    series: TruncatedSeries,
    first_order: Vec<BigInt>,
}

/// Last degree through which the expected series says all multiples of the
/// `k` generators are independent.
fn predicted_independence(n: usize, md: usize, k: usize, profile: &Profile, trunc: usize) -> usize {
    let mut e_ind = 0;
    for e in 0..=trunc.min(profile.series.trunc()) {
        let cols = monomials_in_degree(n, e);
        let rows = if e >= md { monomials_in_degree(n, e - md) * BigUint::from(k) } else { BigUint::from(0u8) };
        if rows > cols || profile.series.coeff(e) != &(cols - rows) {
            break;
        }
        e_ind = e;
    }
    e_ind
}

/// Plans the range `k_lo..=k_hi` for generators `g^m` with `deg g = d`.
pub fn plan_sweep(n: usize, d: usize, m: usize, k_lo: usize, k_hi: usize, limits: &Limits) -> Result<SweepPlan, VerifierError> {
    let base = CaseSpec::new(n, d, m, k_lo.max(1));
    base.with_k(k_hi.max(1)).validate()?;
    base.validate()?;
    if k_lo > k_hi {
        return Err(VerifierError::InvalidSpec(format!("empty range {k_lo}..={k_hi}")));
    }
    let md = base.generator_degree();
    let cap = limits.trunc_cap;
    let mut plan = SweepPlan { n, d, m, k_lo, k_hi, singles: Vec::new(), intervals: Vec::new() };

    let above = k_lo.max(n + 1);
    for k in k_lo..=k_hi.min(n) {
        plan.singles.push(planned_case(&base, k, limits));
    }
    if above > k_hi {
        return Ok(plan);
    }

    let profiles: Vec<Profile> = (above..=k_hi)
        .map(|k| {
            let spec = DegreeList::uniform(n, md, k).expect("validated");
            Profile { series: conjectured_series(&spec, cap), first_order: first_order_bound(n, &vec![md; k], cap) }
        })
        .collect();
    let profile = |k: usize| &profiles[k - above];
    let term = |k: usize| profile(k).series.first_zero();

    // pins the interior of [a, b] the way the deduction will
    let feasible = |a: usize, b: usize, e_surj: usize| {
        let trunc_b = planned_case(&base, b, limits).trunc;
        if predicted_independence(n, md, b, profile(b), trunc_b) + 1 < e_surj {
            return false;
        }
        (a + 1..b).all(|k| {
            let p = profile(k);
            (0..e_surj).all(|e| BigInt::from(p.series.coeff(e).clone()) == p.first_order[e])
                && p.series.get(e_surj) == Some(BigUint::from(0u8))
        })
    };

    let mut a = above;
    while a <= k_hi {
        let Some(e_surj) = term(a) else {
            plan.singles.push(planned_case(&base, a, limits));
            a += 1;
            continue;
        };
        let mut group_end = a;
        while group_end < k_hi && term(group_end + 1) == Some(e_surj) {
            group_end += 1;
        }
        let mut b = a;
        while b < group_end && (b == a || feasible(a, b + 1, e_surj)) {
            b += 1;
        }
        if b == a {
            plan.singles.push(planned_case(&base, a, limits));
        } else {
            plan.intervals.push((planned_case(&base, a, limits), planned_case(&base, b, limits)));
        }
        a = b + 1;
    }
    plan.singles.sort_by_key(|c| c.k);
    Ok(plan)
}

/// How a single count fared in a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseStatus {
    /// Computed directly.
    Direct(Verdict),
    /// Pinned by a verified interval.
    Deduced,
    /// Over the matrix budget; not run.
    Skipped,
    /// Inside an interval whose deduction was rejected.
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub plan: SweepPlan,
    pub records: Vec<VerificationRecord>,
    pub witnesses: Vec<IntervalWitness>,
    /// Rejected intervals with the reason.
    pub rejected: Vec<(usize, usize, VerifierError)>,
}

impl SweepReport {
    pub fn record(&self, k: usize) -> Option<&VerificationRecord> {
        self.records.iter().find(|r| r.spec.k == k)
    }

    pub fn status(&self, k: usize) -> CaseStatus {
        if let Some(r) = self.record(k) {
            return match (r.verdict, r.note.as_deref()) {
                (Verdict::Error, Some(note)) if note.contains("budget") => CaseStatus::Skipped,
                (v, _) => CaseStatus::Direct(v),
            };
        }
        if self.witnesses.iter().any(|w| w.deduced.iter().any(|c| c.k == k)) {
            CaseStatus::Deduced
        } else {
            CaseStatus::Undetermined
        }
    }

    /// True when every count in the range is verified or deduced.
    pub fn all_verified(&self) -> bool {
        (self.plan.k_lo..=self.plan.k_hi)
            .all(|k| matches!(self.status(k), CaseStatus::Direct(Verdict::Verified) | CaseStatus::Deduced))
    }
}

/// Verifies every planned endpoint directly and deduces the interval
/// interiors from them.
pub fn run_sweep(base: &CaseSpec, plan: &SweepPlan, limits: &Limits, workers: usize) -> SweepReport {
    let specs: Vec<CaseSpec> = plan.endpoints().iter().map(|c| base.with_k(c.k)).collect();
    assemble_sweep(plan, verify_many(&specs, limits, workers))
}

/// Builds the report from endpoint records obtained elsewhere, such as a
/// cache. Intervals with a missing endpoint are rejected.
pub fn assemble_sweep(plan: &SweepPlan, records: Vec<VerificationRecord>) -> SweepReport {
    let by_k: BTreeMap<usize, &VerificationRecord> = records.iter().map(|r| (r.spec.k, r)).collect();
    let mut witnesses = Vec::new();
    let mut rejected = Vec::new();
    for (lo, hi) in &plan.intervals {
        let (Some(&low), Some(&high)) = (by_k.get(&lo.k), by_k.get(&hi.k)) else {
            rejected.push((lo.k, hi.k, VerifierError::InvalidSpec("endpoint record missing".into())));
            continue;
        };
        match deduce_interval(low.clone(), high.clone()) {
            Ok(w) => witnesses.push(w),
            Err(e) => rejected.push((lo.k, hi.k, e)),
        }
    }
    SweepReport { plan: plan.clone(), records, witnesses, rejected }
}

/// Generator degrees `d * m` covered by the table, per `n`.
pub fn corollary2_degrees() -> BTreeMap<usize, Vec<usize>> {
    let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (n, d, m) in TABLE_CELLS {
        out.entry(n).or_default().push(d * m);
    }
    for v in out.values_mut() {
        v.sort_unstable();
        v.dedup();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SuiteScale {
    /// The representative counts of each cell's plan.
    #[default]
    Representative,
    /// Every planned endpoint of each cell.
    Full,
}

/// Verifies the table cells; cells over the budget come back as `Error`
/// records.
pub fn corollary2_suite(scale: SuiteScale, base: &CaseSpec, limits: &Limits, workers: usize) -> Vec<VerificationRecord> {
    let mut specs = Vec::new();
    for (n, d, m) in TABLE_CELLS {
        let cell = CaseSpec { n, d, m, ..base.clone() };
        let max_k = match try_count(n, d * m) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let Ok(plan) = plan_sweep(n, d, m, 1, max_k, limits) else { continue };
        let ks = match scale {
            SuiteScale::Representative => plan.representative_ks(),
            SuiteScale::Full => plan.endpoints().iter().map(|c| c.k).collect(),
        };
        specs.extend(ks.into_iter().map(|k| cell.with_k(k)));
    }
    verify_many(&specs, limits, workers)
}
