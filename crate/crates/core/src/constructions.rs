//! Monomial ideals that attain the expected Hilbert series when the number
//! of generators is large, and the checks around them.
//!
//! An ideal with `m^{d+1} ⊆ I ⊆ m^d` whose degree-`d` piece has dimension
//! `r >= C(n+d, d+1) / n` has Hilbert series `ceil((1-t^d)^r / (1-t)^n)`.
//! For `n >= 4, d >= 2` the ideal of all degree-`d` monomials except
//! `x1*x2^{d-1}, ..., x1*xl^{d-1}` meets both conditions, which settles every
//! `k` in `(C(n+d-1,d) - n, C(n+d-1,d)]`. For smaller `k` monomial ideals can
//! fail; [`exhaustive_monomial_search`] and [`trivial_syzygy_witness`] show why.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use thiserror::Error;

use crate::monomials::{
    contains_power_of_maximal_ideal, monomial_count, quotient_hilbert_function, try_count, Monomial, MonomialIdeal,
    MonomialOrderTable,
};
use crate::series::{binomial, conjectured_series, lex_compare, DegreeList, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(Hypothesis),
    #[error("search space of {candidates} candidates exceeds the budget of {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
}

/// Which hypothesis of the large-`r` criterion an ideal violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// Some generator has degree below `d`.
    NotInsideMaximalPower { generator: Monomial },
    /// A degree-`d+1` monomial lies outside the ideal.
    MaximalPowerNotContained { witness: Monomial },
    /// `n * r < C(n+d, d+1)`.
    BelowThreshold { r: usize, required: BigUint },
    /// The closed form disagrees with the expansion or the direct count.
    CrossCheck { which: &'static str },
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NotInsideMaximalPower { generator } => write!(f, "generator {generator} has degree below d"),
            Hypothesis::MaximalPowerNotContained { witness } => write!(f, "m^(d+1) not contained: {witness} is not in I"),
            Hypothesis::BelowThreshold { r, required } => write!(f, "n*r = n*{r} is below C(n+d, d+1) = {required}"),
            Hypothesis::CrossCheck { which } => write!(f, "predicted series disagrees with {which}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobergFamilyParams {
    n: usize,
    d: usize,
    l: usize,
}

impl FrobergFamilyParams {
    pub fn new(n: usize, d: usize, l: usize) -> Result<Self, ConstructionError> {
        if n < 4 || d < 2 || l < 1 || l > n {
            return Err(ConstructionError::InvalidParams(format!(
                "need n >= 4, d >= 2, 1 <= l <= n; got n={n}, d={d}, l={l}"
            )));
        }
        Ok(Self { n, d, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Number of generators, `C(n+d-1, d) - l + 1`.
    pub fn k(&self) -> usize {
        try_count(self.n, self.d).expect("small parameters") - self.l + 1
    }
}

/// All degree-`d` monomials except `x1*xj^{d-1}` for `2 <= j <= l`.
pub fn froberg_monomial_ideal(params: FrobergFamilyParams) -> MonomialIdeal {
    let FrobergFamilyParams { n, d, l } = params;
    let excluded: Vec<Monomial> = (1..l)
        .map(|j| {
            let mut exps = vec![0u32; n];
            exps[0] = 1;
            exps[j] += d as u32 - 1;
            Monomial::new(exps)
        })
        .collect();
    let gens = MonomialOrderTable::new(n, d).monomials().iter().filter(|m| !excluded.contains(m)).cloned().collect_vec();
    MonomialIdeal::new(n, gens).expect("generators live in n variables")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    /// `dim I_d`, counted as degree-`d` monomials in the ideal.
    pub r: usize,
    /// `C(n+d, d+1)`, compared against `n * r`.
    pub required: BigUint,
    /// `ceil(C(n+d, d+1) / n)`, the least admissible `r`.
    pub threshold: BigUint,
    pub contains_m_power: bool,
    /// Closed form of the Hilbert series through `t^d`; terminated.
    pub predicted: TruncatedSeries,
}

/// Checks `m^{d+1} ⊆ I ⊆ m^d` and `n * r >= C(n+d, d+1)`, then confirms the
/// closed-form series against both the expansion `ceil((1-t^d)^r/(1-t)^n)`
/// and a direct count of standard monomials.
pub fn check_theorem1(ideal: &MonomialIdeal, n: usize, d: usize) -> Result<Theorem1Report, ConstructionError> {
    if ideal.n() != n || n == 0 {
        return Err(ConstructionError::InvalidParams(format!("ideal has {} variables, expected {n}", ideal.n())));
    }
    let failed = |h| Err(ConstructionError::HypothesisFailed(h));
    if let Some(g) = ideal.generators().iter().find(|g| g.degree() < d) {
        return failed(Hypothesis::NotInsideMaximalPower { generator: g.clone() });
    }
    if !contains_power_of_maximal_ideal(ideal, d + 1) {
        let witness = MonomialOrderTable::new(n, d + 1)
            .monomials()
            .iter()
            .find(|m| !ideal.contains(m))
            .cloned()
            .expect("some monomial is missing");
        return failed(Hypothesis::MaximalPowerNotContained { witness });
    }
    let r = ideal.dimension_in_degree(d);
    let required = binomial((n + d) as u64, (d + 1) as u64);
    if BigUint::from(n) * r < required {
        return failed(Hypothesis::BelowThreshold { r, required });
    }
    let threshold = (&required + (n - 1)) / n;

    let mut coeffs: Vec<BigUint> = (0..d).map(|i| monomial_count(n, i)).collect();
    coeffs.push(monomial_count(n, d) - BigUint::from(r));
    let predicted = TruncatedSeries::new(coeffs, true);

    let spec = DegreeList::uniform(n, d, r).expect("valid degrees");
    let expansion = conjectured_series(&spec, d + 1);
    if lex_compare(&predicted, &expansion) != Ok(Ordering::Equal) {
        return failed(Hypothesis::CrossCheck { which: "the rational-function expansion" });
    }
    let counted = quotient_hilbert_function(ideal, d + 1);
    if lex_compare(&predicted, &counted) != Ok(Ordering::Equal) {
        return failed(Hypothesis::CrossCheck { which: "the standard-monomial count" });
    }
    Ok(Theorem1Report { r, required, threshold, contains_m_power: true, predicted })
}

/// `((n+d)/(d+1) - n) * C(n+d-1, d) <= -n^2`, with the denominator cleared:
/// `(n + d - n(d+1)) * C(n+d-1, d) <= -n^2 (d+1)`.
pub fn induction_inequality_check(n: usize, d: usize) -> bool {
    let (nb, db) = (BigInt::from(n), BigInt::from(d));
    let lhs = (&nb + &db - &nb * (&db + 1)) * BigInt::from(monomial_count(n, d));
    let rhs = -(&nb * &nb) * (db + 1);
    lhs <= rhs
}

/// Generator counts `k_min..=k_max` covered by the monomial family.
pub fn corollary1_range(n: usize, d: usize) -> (usize, usize) {
    let k_max = try_count(n, d).expect("small parameters");
    (k_max - n + 1, k_max)
}

/// Family parameters producing exactly `k` generators.
pub fn family_for_k(n: usize, d: usize, k: usize) -> Result<FrobergFamilyParams, ConstructionError> {
    let (lo, hi) = corollary1_range(n, d);
    if k < lo || k > hi {
        return Err(ConstructionError::InvalidParams(format!("k={k} outside {lo}..={hi}")));
    }
    FrobergFamilyParams::new(n, d, hi - k + 1)
}

pub struct SearchOptions<'a> {
    /// Upper bound on the number of candidate generator sets enumerated.
    pub budget: u128,
    /// Force all pure powers in when the target terminates, and skip
    /// candidates that are not the least image under variable permutations.
    pub prune: bool,
    pub progress: Option<&'a (dyn Fn(u64) + Sync)>,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        Self { budget: 10_000_000, prune: true, progress: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub ideal: Option<MonomialIdeal>,
    /// Candidate sets enumerated, before symmetry filtering.
    pub enumerated: u64,
    /// Candidate sets whose Hilbert function was computed.
    pub tested: u64,
}

/// Symmetry reduction is skipped above this many variables (`n!` images).
const MAX_SYMMETRY_VARS: usize = 6;

/// Looks for `k` degree-`d` monomials generating an ideal with Hilbert
/// series `target`.
pub fn exhaustive_monomial_search(
    n: usize,
    d: usize,
    k: usize,
    target: &TruncatedSeries,
    options: &SearchOptions<'_>,
) -> Result<SearchOutcome, ConstructionError> {
    if n == 0 || d == 0 {
        return Err(ConstructionError::InvalidParams("need n >= 1 and d >= 1".into()));
    }
    let table = MonomialOrderTable::new(n, d);
    let total = table.len();
    if k > total {
        return Err(ConstructionError::InvalidParams(format!("only {total} monomials of degree {d}")));
    }
    let pure: Vec<usize> = (0..n).map(|i| table.rank(&Monomial::pure_power(n, i, d as u32))).collect();
    let (fixed, free): (Vec<usize>, Vec<usize>) = if options.prune && target.is_terminated() {
        // x_i^d missing means no power of x_i is ever in I
        if k < n {
            return Ok(SearchOutcome { ideal: None, enumerated: 0, tested: 0 });
        }
        (pure.clone(), (0..total).filter(|r| !pure.contains(r)).collect())
    } else {
        (Vec::new(), (0..total).collect())
    };
    let choose = k - fixed.len();
    let candidates = u128::try_from(binomial(free.len() as u64, choose as u64)).unwrap_or(u128::MAX);
    if candidates > options.budget {
        return Err(ConstructionError::BudgetExceeded { candidates, budget: options.budget });
    }

    let symmetry = (options.prune && n <= MAX_SYMMETRY_VARS).then(|| permutation_actions(&table));
    // with a terminated target, degrees past the last stored one must vanish too
    let check_trunc = target.trunc() + usize::from(target.is_terminated());
    let mut enumerated = 0u64;
    let mut tested = 0u64;
    for chosen in free.iter().copied().combinations(choose) {
        enumerated += 1;
        if let Some(report) = options.progress {
            if enumerated % 1000 == 0 {
                report(enumerated);
            }
        }
        let mut set: Vec<usize> = fixed.iter().copied().chain(chosen).collect();
        set.sort_unstable();
        if let Some(actions) = &symmetry {
            if !is_canonical(&set, actions) {
                continue;
            }
        }
        tested += 1;
        let ideal = MonomialIdeal::new(n, set.iter().map(|&r| table.monomials()[r].clone()))
            .expect("generators live in n variables");
        let h = quotient_hilbert_function(&ideal, check_trunc);
        if lex_compare(&h, target) == Ok(Ordering::Equal) {
            return Ok(SearchOutcome { ideal: Some(ideal), enumerated, tested });
        }
    }
    if let Some(report) = options.progress {
        report(enumerated);
    }
    Ok(SearchOutcome { ideal: None, enumerated, tested })
}

/// For each permutation of the variables, where it sends each monomial rank.
fn permutation_actions(table: &MonomialOrderTable) -> Vec<Vec<usize>> {
    (0..table.n())
        .permutations(table.n())
        .map(|perm| table.monomials().iter().map(|m| table.rank(&m.permuted(&perm))).collect())
        .collect()
}

/// Whether a sorted rank set is the lexicographically least of its images.
fn is_canonical(set: &[usize], actions: &[Vec<usize>]) -> bool {
    let mut image = Vec::with_capacity(set.len());
    actions.iter().all(|action| {
        image.clear();
        image.extend(set.iter().map(|&r| action[r]));
        image.sort_unstable();
        image.as_slice() >= set
    })
}

/// Two equal products `x_i^{d-1} * m = x_i^d * (m / x_i)`: a dependence
/// between degree-`(2d-1)` multiples of two distinct generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyWitness {
    pub generator: Monomial,
    pub variable: usize,
    pub generator_multiplier: Monomial,
    pub pure_power: Monomial,
    pub pure_power_multiplier: Monomial,
    pub product: Monomial,
}

impl fmt::Display for SyzygyWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) * ({}) = ({}) * ({}) = {}",
            self.generator_multiplier, self.generator, self.pure_power, self.pure_power_multiplier, self.product
        )
    }
}

/// Finds the dependence for the first generator that is not a pure power.
/// The ideal must contain every `x_i^d`.
pub fn trivial_syzygy_witness(
    n: usize,
    d: usize,
    ideal: &MonomialIdeal,
) -> Result<Option<SyzygyWitness>, ConstructionError> {
    if d < 1 || ideal.n() != n {
        return Err(ConstructionError::InvalidParams("ideal does not match n, d".into()));
    }
    if let Some(i) = (0..n).find(|&i| !ideal.generators().contains(&Monomial::pure_power(n, i, d as u32))) {
        return Err(ConstructionError::InvalidParams(format!("x{}^{d} is not a generator", i + 1)));
    }
    let Some(m) = ideal.generators().iter().find(|g| g.pure_power_variable().is_none() && g.degree() > 0) else {
        return Ok(None);
    };
    let i = m.exponents().iter().position(|&e| e > 0).expect("nonconstant");
    let x_i = Monomial::pure_power(n, i, 1);
    let generator_multiplier = Monomial::pure_power(n, i, d as u32 - 1);
    let pure_power = Monomial::pure_power(n, i, d as u32);
    let pure_power_multiplier = m.div(&x_i).expect("x_i divides m");
    let product = generator_multiplier.mul(m);
    debug_assert_eq!(product, pure_power.mul(&pure_power_multiplier));
    Ok(Some(SyzygyWitness {
        generator: m.clone(),
        variable: i,
        generator_multiplier,
        pure_power,
        pure_power_multiplier,
        product,
    }))
}
