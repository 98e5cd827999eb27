//! One-line JSON encoding of verification records.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use super::{CaseSpec, FamilyMode, Verdict, VerificationRecord};
use crate::macaulay::DegreeStats;
use crate::series::TruncatedSeries;

#[derive(Serialize, Deserialize)]
struct Line {
    n: usize,
    d: usize,
    m: usize,
    k: usize,
    prime: u64,
    seed: u64,
    trials: u32,
    #[serde(default)]
    family: FamilyMode,
    trunc: usize,
    conjectured: Vec<Number>,
    computed: Vec<Number>,
    verdict: Verdict,
    ranks: Vec<DegreeStats>,
    #[serde(default)]
    seeds_tried: Vec<u64>,
    millis: u64,
    version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn encode(s: &TruncatedSeries) -> Vec<Number> {
    s.coeffs().iter().map(|c| c.to_string().parse().expect("decimal integer")).collect()
}

fn decode(v: &[Number]) -> Result<TruncatedSeries, String> {
    let coeffs = v
        .iter()
        .map(|x| x.to_string().parse::<BigUint>().map_err(|_| format!("not a nonnegative integer: {x}")))
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err("empty series".into());
    }
    Ok(TruncatedSeries::from_hilbert_values(coeffs))
}

/// Serializes a record as a single JSON line, without the trailing newline.
pub fn record_to_json(rec: &VerificationRecord) -> String {
    let s = &rec.spec;
    let line = Line {
        n: s.n,
        d: s.d,
        m: s.m,
        k: s.k,
        prime: s.prime,
        seed: s.seed,
        trials: s.trials,
        family: s.family,
        trunc: rec.trunc(),
        conjectured: encode(&rec.conjectured),
        computed: encode(&rec.computed),
        verdict: rec.verdict,
        ranks: rec.ranks.clone(),
        seeds_tried: rec.seeds_tried.clone(),
        millis: rec.millis,
        version: rec.version.clone(),
        note: rec.note.clone(),
    };
    serde_json::to_string(&line).expect("plain data")
}

pub fn record_from_json(text: &str) -> Result<VerificationRecord, String> {
    let l: Line = serde_json::from_str(text.trim()).map_err(|e| e.to_string())?;
    let spec = CaseSpec {
        n: l.n,
        d: l.d,
        m: l.m,
        k: l.k,
        trunc: Some(l.trunc),
        seed: l.seed,
        prime: l.prime,
        trials: l.trials,
        family: l.family,
    };
    Ok(VerificationRecord {
        spec,
        conjectured: decode(&l.conjectured)?,
        computed: decode(&l.computed)?,
        verdict: l.verdict,
        ranks: l.ranks,
        seeds_tried: l.seeds_tried,
        millis: l.millis,
        version: l.version,
        note: l.note,
    })
}
