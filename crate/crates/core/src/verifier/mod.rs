//! Case-by-case verification of the expected Hilbert series for ideals
//! generated by (powers of) random forms.
//!
//! A case fixes `n`, the base degree `d`, the power `m` and the generator
//! count `k`; the generators are `g_1^m, ..., g_k^m` for random forms `g_i`
//! of degree `d` over `GF(p)`. The case is *verified* when the computed
//! series equals `ceil((1 - t^{md})^k / (1 - t)^n)` on the whole truncation
//! range, which by lower semicontinuity of rank certifies the generic case in
//! characteristic zero. A mismatch is only ever reported as `NotAttained`:
//! the random point, or the prime, may simply be unlucky.

mod interval;
mod plan;
mod record;

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::macaulay::{first_order_bound, quotient_series_with_stats, DegreeStats, FormFamily};
use crate::modp::{ModpError, PrimeField, DEFAULT_PRIME};
use crate::monomials::monomial_count;
use crate::series::{conjectured_series, default_truncation, first_nonpositive, lex_compare, DegreeList, SeriesError, TruncatedSeries};

pub use interval::{deduce_interval, verify_interval, DeducedCase, IntervalWitness};
pub use plan::{assemble_sweep, corollary2_degrees, corollary2_suite, plan_sweep, run_sweep, CaseStatus, PlannedCase, SuiteScale, SweepPlan, SweepReport, TABLE_CELLS};
pub use record::{record_from_json, record_to_json};

/// Default cap on the truncation degree.
pub const DEFAULT_TRUNC_CAP: usize = 64;
/// Default cap on `rows * cols` of a single Macaulay matrix.
pub const DEFAULT_MATRIX_BUDGET: u128 = 40_000_000;
pub const DEFAULT_TRIALS: u32 = 3;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("invalid case: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] ModpError),
    #[error("degree-{degree} Macaulay matrix is {rows} x {cols}, over the budget of {budget} entries")]
    ResourceLimit { degree: usize, rows: u128, cols: u128, budget: u128 },
    #[error("soundness check failed: {0}")]
    Soundness(String),
    #[error("endpoint k={k} not verified ({verdict:?})")]
    EndpointNotVerified { k: usize, verdict: Verdict },
    #[error("for k={k} the endpoints do not determine the coefficient of t^{degree}")]
    DeductionInapplicable { k: usize, degree: usize },
}

/// How the generators of a case are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyMode {
    /// Independent random forms, each raised to the `m`-th power.
    #[default]
    Generic,
    /// One random form repeated `k` times; for testing that mismatches are
    /// never reported as verified.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseSpec {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub k: usize,
    /// Inclusive truncation; chosen from the expected series when absent.
    pub trunc: Option<usize>,
    pub seed: u64,
    pub prime: u64,
    pub trials: u32,
    #[serde(default)]
    pub family: FamilyMode,
}

impl CaseSpec {
    pub fn new(n: usize, d: usize, m: usize, k: usize) -> Self {
        Self {
            n,
            d,
            m,
            k,
            trunc: None,
            seed: DEFAULT_SEED,
            prime: DEFAULT_PRIME,
            trials: DEFAULT_TRIALS,
            family: FamilyMode::Generic,
        }
    }

    pub fn with_k(&self, k: usize) -> Self {
        Self { k, trunc: None, ..self.clone() }
    }

    /// Degree of each generator, `m * d`.
    pub fn generator_degree(&self) -> usize {
        self.m * self.d
    }

    pub fn degree_list(&self) -> DegreeList {
        DegreeList::uniform(self.n, self.generator_degree(), self.k).expect("validated")
    }

    pub fn validate(&self) -> Result<PrimeField, VerifierError> {
        let bad = |s: String| Err(VerifierError::InvalidSpec(s));
        if self.n == 0 || self.d == 0 || self.m == 0 {
            return bad(format!("n, d, m must be positive (n={}, d={}, m={})", self.n, self.d, self.m));
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        let max_k = monomial_count(self.n, self.generator_degree());
        if self.k == 0 || max_k < self.k.into() {
            return bad(format!("k must lie in 1..={max_k}, got {}", self.k));
        }
        Ok(PrimeField::new(self.prime)?)
    }

    /// The same case with `trunc` filled in.
    ///
    /// Without an explicit value this is one past the degree where the
    /// expected series vanishes, or `cap` if it does not vanish by then.
    pub fn resolved(&self, cap: usize) -> Result<CaseSpec, VerifierError> {
        if self.trunc.is_some() {
            return Ok(self.clone());
        }
        let spec = self.degree_list();
        let trunc = if self.k > self.n {
            default_truncation(&spec, cap)?
        } else {
            // a complete intersection of k = n forms is a polynomial; fewer is infinite
            first_nonpositive(&spec, cap).map_or(cap, |e| (e + 1).min(cap))
        };
        Ok(CaseSpec { trunc: Some(trunc), ..self.clone() })
    }

    /// Largest `rows * cols` over the Macaulay matrices up to `trunc`.
    pub fn largest_matrix(&self, trunc: usize) -> (usize, u128, u128) {
        let md = self.generator_degree();
        (0..=trunc)
            .map(|e| {
                let cols = count_u128(self.n, e);
                let rows = if e >= md { self.k as u128 * count_u128(self.n, e - md) } else { 0 };
                (e, rows, cols)
            })
            .max_by_key(|&(_, r, c)| r.saturating_mul(c))
            .expect("nonempty range")
    }
}

fn count_u128(n: usize, e: usize) -> u128 {
    u128::try_from(monomial_count(n, e)).unwrap_or(u128::MAX)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub trunc_cap: usize,
    pub matrix_budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self { trunc_cap: DEFAULT_TRUNC_CAP, matrix_budget: DEFAULT_MATRIX_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Verified,
    NotAttained,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    /// The case with its truncation resolved.
    pub spec: CaseSpec,
    pub conjectured: TruncatedSeries,
    /// Series of the last trial run: the matching one, or the last failure.
    pub computed: TruncatedSeries,
    pub verdict: Verdict,
    pub ranks: Vec<DegreeStats>,
    pub seeds_tried: Vec<u64>,
    pub millis: u64,
    pub version: String,
    pub note: Option<String>,
}

impl VerificationRecord {
    pub fn trunc(&self) -> usize {
        self.spec.trunc.expect("records hold resolved specs")
    }

    /// Equality ignoring wall time.
    pub fn same_outcome(&self, other: &VerificationRecord) -> bool {
        VerificationRecord { millis: 0, ..self.clone() } == VerificationRecord { millis: 0, ..other.clone() }
    }

    /// Record for a case that could not be run.
    pub fn error(spec: &CaseSpec, err: &VerifierError) -> Self {
        let trunc = spec.trunc.unwrap_or(0);
        let conjectured = match spec.validate() {
            Ok(_) => conjectured_series(&spec.degree_list(), trunc),
            Err(_) => TruncatedSeries::from_u64(&[1], false),
        };
        Self {
            spec: CaseSpec { trunc: Some(trunc), ..spec.clone() },
            computed: TruncatedSeries::from_u64(&[1], false),
            conjectured,
            verdict: Verdict::Error,
            ranks: Vec::new(),
            seeds_tried: Vec::new(),
            millis: 0,
            version: crate::VERSION.to_string(),
            note: Some(err.to_string()),
        }
    }
}

/// Generators for one trial.
pub fn build_family(spec: &CaseSpec, field: PrimeField, seed: u64) -> FormFamily {
    match spec.family {
        FamilyMode::Generic => FormFamily::random_powers(spec.n, spec.d, spec.m, spec.k, field, seed),
        FamilyMode::Degenerate => {
            let one = FormFamily::random_powers(spec.n, spec.d, spec.m, 1, field, seed);
            let form = one.forms()[0].clone();
            FormFamily::new(spec.n, field, vec![form; spec.k]).expect("same ring")
        }
    }
}

/// Seed of trial `t`.
pub fn trial_seed(seed: u64, t: u32) -> u64 {
    seed.wrapping_add(t as u64)
}

/// Checks that hold for any specialization over any field: every
/// coefficient is at least the first-order bound, and the series is never
/// lexicographically below the expected minimum.
pub fn soundness_guard(
    spec: &CaseSpec,
    computed: &TruncatedSeries,
    conjectured: &TruncatedSeries,
) -> Result<Ordering, VerifierError> {
    let bound = first_order_bound(spec.n, &vec![spec.generator_degree(); spec.k], computed.trunc());
    for (e, b) in bound.iter().enumerate() {
        if BigInt::from(computed.coeff(e).clone()) < *b {
            return Err(VerifierError::Soundness(format!("coefficient of t^{e} is below the first-order bound {b}")));
        }
    }
    let order = lex_compare(computed, conjectured)?;
    if order == Ordering::Less {
        return Err(VerifierError::Soundness("computed series is below the expected minimum".into()));
    }
    Ok(order)
}

/// Runs up to `trials` random specializations and compares each against
/// the expected series.
pub fn verify_case(spec: &CaseSpec, limits: &Limits) -> Result<VerificationRecord, VerifierError> {
    let start = Instant::now();
    let field = spec.validate()?;
    let spec = spec.resolved(limits.trunc_cap)?;
    let trunc = spec.trunc.expect("resolved");
    let (degree, rows, cols) = spec.largest_matrix(trunc);
    if rows.saturating_mul(cols) > limits.matrix_budget {
        return Err(VerifierError::ResourceLimit { degree, rows, cols, budget: limits.matrix_budget });
    }
    let conjectured = conjectured_series(&spec.degree_list(), trunc);

    let mut seeds_tried = Vec::new();
    let mut last = None;
    for t in 0..spec.trials {
        let seed = trial_seed(spec.seed, t);
        seeds_tried.push(seed);
        let family = build_family(&spec, field, seed);
        let (computed, ranks) = quotient_series_with_stats(&family, trunc);
        let order = soundness_guard(&spec, &computed, &conjectured)?;
        let verified = order == Ordering::Equal;
        last = Some((computed, ranks));
        if verified {
            break;
        }
    }
    let (computed, ranks) = last.expect("at least one trial");
    let verdict = if lex_compare(&computed, &conjectured) == Ok(Ordering::Equal) {
        Verdict::Verified
    } else {
        Verdict::NotAttained
    };
    let note = (verdict == Verdict::NotAttained).then(|| {
        "no trial attained the expected series; this is not a disproof, rerun with another seed or prime".to_string()
    });
    Ok(VerificationRecord {
        spec,
        conjectured,
        computed,
        verdict,
        ranks,
        seeds_tried,
        millis: start.elapsed().as_millis() as u64,
        version: crate::VERSION.to_string(),
        note,
    })
}

/// Verifies independent cases on a pool of `workers` threads; errors become
/// `Error` records.
pub fn verify_many(specs: &[CaseSpec], limits: &Limits, workers: usize) -> Vec<VerificationRecord> {
    use rayon::prelude::*;
    let run = || {
        specs
            .par_iter()
            .map(|s| verify_case(s, limits).unwrap_or_else(|e| VerificationRecord::error(s, &e)))
            .collect()
    };
    match rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}

/// Series of `k` random forms of degree `d` next to the series of
/// `x_1^d, ..., x_n^d` plus `k - n` random forms. Informational only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixComparison {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub generic: TruncatedSeries,
    pub mixed: TruncatedSeries,
    pub equal: bool,
}

pub fn compare_pure_power_mix(
    n: usize,
    d: usize,
    k: usize,
    seed: u64,
    prime: u64,
    limits: &Limits,
) -> Result<MixComparison, VerifierError> {
    let spec = CaseSpec { seed, prime, ..CaseSpec::new(n, d, 1, k) };
    let field = spec.validate()?;
    if k < n {
        return Err(VerifierError::InvalidSpec(format!("need k >= n, got k={k}, n={n}")));
    }
    let trunc = spec.resolved(limits.trunc_cap)?.trunc.expect("resolved");
    let (degree, rows, cols) = spec.largest_matrix(trunc);
    if rows.saturating_mul(cols) > limits.matrix_budget {
        return Err(VerifierError::ResourceLimit { degree, rows, cols, budget: limits.matrix_budget });
    }
    let generic = quotient_series_with_stats(&FormFamily::random(n, &vec![d; k], field, seed), trunc).0;
    let mixed = quotient_series_with_stats(&FormFamily::pure_power_mix(n, d, k, field, seed), trunc).0;
    let equal = generic == mixed;
    Ok(MixComparison { n, d, k, seed, generic, mixed, equal })
}
