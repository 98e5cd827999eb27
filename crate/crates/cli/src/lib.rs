//! Configuration, argument parsing helpers, the record cache and text
//! rendering for the `froberg` binary.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use froberg_core::modp::is_prime;
use froberg_core::series::{default_truncation, first_nonpositive, DegreeList, SeriesError};
use froberg_core::verifier::{record_from_json, record_to_json, CaseSpec, Limits, Verdict, VerificationRecord};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NOT_ATTAINED: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub prime: u64,
    pub seed: u64,
    pub trunc_cap: usize,
    pub trials: u32,
    pub workers: usize,
    pub matrix_budget: u128,
    pub cache: Option<PathBuf>,
}

impl Config {
    pub fn validate(&self) -> Result<(), String> {
        if !is_prime(self.prime) || self.prime == 2 || self.prime >= 1 << 31 {
            return Err(format!("--prime must be an odd prime below 2^31, got {}", self.prime));
        }
        if self.trunc_cap == 0 || self.trials == 0 || self.workers == 0 || self.matrix_budget == 0 {
            return Err("trunc cap, trials, workers and matrix budget must be positive".into());
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits { trunc_cap: self.trunc_cap, matrix_budget: self.matrix_budget }
    }

    pub fn case(&self, n: usize, d: usize, m: usize, k: usize) -> CaseSpec {
        CaseSpec { seed: self.seed, prime: self.prime, trials: self.trials, ..CaseSpec::new(n, d, m, k) }
    }
}

/// Parses degree lists such as `2x5`, `2,2,3` or `3x2,4`.
pub fn parse_degrees(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim) {
        let (d, k) = match item.split_once(['x', 'X']) {
            Some((d, k)) => (d, k.parse::<usize>().map_err(|_| format!("bad repeat count in {item:?}"))?),
            None => (item, 1),
        };
        let d: usize = d.trim().parse().map_err(|_| format!("bad degree in {item:?}"))?;
        out.extend(std::iter::repeat(d).take(k));
    }
    Ok(out)
}

/// Truncation for displaying an expected series: one past its first zero,
/// or `cap` when it does not vanish by then.
pub fn series_truncation(spec: &DegreeList, cap: usize) -> Result<usize, SeriesError> {
    if spec.k() > spec.n() {
        default_truncation(spec, cap)
    } else {
        Ok(first_nonpositive(spec, cap).map_or(cap, |e| (e + 1).min(cap)))
    }
}

/// Append-only JSON-lines store of verification records.
pub struct Cache {
    path: PathBuf,
    records: Vec<VerificationRecord>,
}

impl Cache {
    /// Loads `path`, skipping lines that do not parse.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut records = Vec::new();
        match File::open(path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match record_from_json(&line) {
                        Ok(r) => records.push(r),
                        Err(e) => eprintln!("warning: skipping cache line: {e}"),
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Self { path: path.to_path_buf(), records })
    }

    pub fn records(&self) -> &[VerificationRecord] {
        &self.records
    }

    /// A verified record for exactly this resolved spec.
    pub fn lookup(&self, resolved: &CaseSpec) -> Option<&VerificationRecord> {
        self.records.iter().rev().find(|r| r.verdict == Verdict::Verified && &r.spec == resolved)
    }

    pub fn append(&mut self, records: &[VerificationRecord]) -> io::Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        if let Some(dir) = self.path.parent().filter(|p| !p.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        for r in records {
            writeln!(f, "{}", record_to_json(r))?;
        }
        self.records.extend_from_slice(records);
        Ok(())
    }
}

/// Exit code summarizing a batch of records.
pub fn exit_code<'a>(records: impl IntoIterator<Item = &'a VerificationRecord>) -> u8 {
    let mut code = EXIT_OK;
    for r in records {
        match r.verdict {
            Verdict::Verified => {}
            Verdict::NotAttained => code = code.max(EXIT_NOT_ATTAINED),
            Verdict::Error => code = EXIT_FAILURE,
        }
    }
    code
}

/// Left-aligned first column, right-aligned rest.
pub fn render_table(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let width: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .enumerate()
            .map(|(c, s)| if c == 0 { format!("{s:<w$}", w = width[c]) } else { format!("{s:>w$}", w = width[c]) })
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(header);
    out.push('\n');
    for r in rows {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_shorthand() {
        assert_eq!(parse_degrees("2x5").unwrap(), vec![2; 5]);
        assert_eq!(parse_degrees("2,2").unwrap(), vec![2, 2]);
        assert_eq!(parse_degrees("3x2, 4").unwrap(), vec![3, 3, 4]);
        assert!(parse_degrees("x3").is_err());
        assert!(parse_degrees("2x").is_err());
    }

    #[test]
    fn config_checks_prime() {
        let cfg = Config {
            prime: 91,
            seed: 1,
            trunc_cap: 64,
            trials: 3,
            workers: 1,
            matrix_budget: 10,
            cache: None,
        };
        assert!(cfg.validate().is_err());
        assert!(Config { prime: 101, ..cfg }.validate().is_ok());
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["a".into(), "bb".into()], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz   1\n");
    }
}
