use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use froberg_cli::{
    exit_code, parse_degrees, render_table, series_truncation, Cache, Config, EXIT_FAILURE, EXIT_NOT_ATTAINED, EXIT_OK,
};
use froberg_core::constructions::{
    check_theorem1, exhaustive_monomial_search, froberg_monomial_ideal, FrobergFamilyParams, SearchOptions,
};
use froberg_core::macaulay::rank_computations;
use froberg_core::modp::DEFAULT_PRIME;
use froberg_core::monomials::try_count;
use froberg_core::series::{conjectured_series, DegreeList, TruncatedSeries};
use froberg_core::verifier::{
    assemble_sweep, compare_pure_power_mix, deduce_interval, plan_sweep, record_to_json, verify_many, CaseSpec,
    CaseStatus, FamilyMode, Verdict, VerificationRecord, VerifierError, DEFAULT_MATRIX_BUDGET, DEFAULT_SEED,
    DEFAULT_TRIALS, DEFAULT_TRUNC_CAP, TABLE_CELLS,
};

/// Hilbert series of ideals generated by generic forms, verified over a
/// prime field.
#[derive(Parser)]
#[command(name = "froberg", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    #[arg(long, global = true, env = "FROBERG_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, global = true, env = "FROBERG_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// JSON-lines file of verification records.
    #[arg(long, global = true, env = "FROBERG_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_TRUNC_CAP)]
    trunc_cap: usize,
    /// Largest Macaulay matrix, in entries.
    #[arg(long, global = true, default_value_t = DEFAULT_MATRIX_BUDGET)]
    matrix_budget: u128,
}

#[derive(Args, Clone, Copy)]
struct PowerArgs {
    #[arg(long)]
    n: usize,
    /// Degree of each random form.
    #[arg(long)]
    d: usize,
    /// Power each form is raised to.
    #[arg(long, default_value_t = 1)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the expected series.
    Series {
        #[arg(long)]
        n: usize,
        /// Generator degrees, e.g. `2x5` or `2,3,3`.
        #[arg(long, conflicts_with_all = ["d", "k"])]
        deg: Option<String>,
        #[arg(long, requires = "k")]
        d: Option<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, requires = "d")]
        k: Option<usize>,
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Verify one case.
    Verify {
        #[command(flatten)]
        power: PowerArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        trunc: Option<usize>,
        /// Repeat one random form k times; never expected to verify.
        #[arg(long)]
        degenerate: bool,
        /// Also print the record as a JSON line.
        #[arg(long)]
        json: bool,
    },
    /// Plan and run a range of generator counts.
    Sweep {
        #[command(flatten)]
        power: PowerArgs,
        #[arg(long, default_value_t = 1)]
        k_lo: usize,
        /// Defaults to the number of monomials of degree d*m.
        #[arg(long)]
        k_hi: Option<usize>,
        /// Print the plan without running it.
        #[arg(long)]
        plan_only: bool,
    },
    /// Verify two endpoints and deduce everything between them.
    Interval {
        #[command(flatten)]
        power: PowerArgs,
        #[arg(long)]
        k_low: usize,
        #[arg(long)]
        k_high: usize,
    },
    /// Build the monomial family with l pure powers removed.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
    },
    /// Search all monomial ideals of k degree-d generators for the expected series.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Target coefficients, e.g. `1,4,5,0`; defaults to the expected series.
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
    },
    /// Compare random forms with pure powers plus random forms.
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Local verdicts for the cells of the verified-cases table.
    Table {
        /// `small`, `default`, or a number of entries.
        #[arg(long, default_value = "default")]
        budget: String,
        /// Run every planned endpoint instead of three per cell.
        #[arg(long)]
        full: bool,
    },
}

const SMALL_BUDGET: u128 = 1_000_000;

struct Ctx {
    cfg: Config,
    cache: Option<Cache>,
}

impl Ctx {
    /// Verifies `specs`, reusing verified records from the cache and
    /// appending fresh ones.
    fn verify(&mut self, specs: &[CaseSpec]) -> Vec<VerificationRecord> {
        let limits = self.cfg.limits();
        let mut out: Vec<Option<VerificationRecord>> = vec![None; specs.len()];
        let mut todo = Vec::new();
        for (i, spec) in specs.iter().enumerate() {
            let resolved = spec.validate().and_then(|_| spec.resolved(limits.trunc_cap));
            match (resolved, &self.cache) {
                (Ok(r), Some(cache)) => match cache.lookup(&r) {
                    Some(hit) => out[i] = Some(hit.clone()),
                    None => todo.push(i),
                },
                (Ok(_), None) => todo.push(i),
                (Err(e), _) => out[i] = Some(VerificationRecord::error(spec, &e)),
            }
        }
        let fresh = verify_many(&todo.iter().map(|&i| specs[i].clone()).collect::<Vec<_>>(), &limits, self.cfg.workers);
        if let Some(cache) = &mut self.cache {
            let keep: Vec<VerificationRecord> = fresh.iter().filter(|r| r.verdict != Verdict::Error).cloned().collect();
            if let Err(e) = cache.append(&keep) {
                eprintln!("warning: cannot write cache: {e}");
            }
        }
        for (i, r) in todo.into_iter().zip(fresh) {
            out[i] = Some(r);
        }
        out.into_iter().map(|r| r.expect("filled")).collect()
    }
}

fn json_array(s: &TruncatedSeries) -> String {
    let nums: Vec<serde_json::Value> =
        s.coeffs().iter().map(|c| serde_json::Value::Number(c.to_string().parse().expect("integer"))).collect();
    serde_json::Value::Array(nums).to_string()
}

fn describe(rec: &VerificationRecord) -> String {
    let s = &rec.spec;
    if rec.verdict == Verdict::Error {
        let note = rec.note.as_deref().unwrap_or("unknown error");
        return format!("n={} d={} m={} k={}\n  verdict:  Error\n  note: {note}", s.n, s.d, s.m, s.k);
    }
    let mut out = format!(
        "n={} d={} m={} k={} trunc={} prime={} seed={}\n  expected: {}\n  computed: {}\n  verdict:  {:?}",
        s.n,
        s.d,
        s.m,
        s.k,
        rec.trunc(),
        s.prime,
        s.seed,
        rec.conjectured,
        rec.computed,
        rec.verdict
    );
    if !rec.seeds_tried.is_empty() {
        out.push_str(&format!(" (seeds {:?}, {} ms)", rec.seeds_tried, rec.millis));
    }
    if let Some(note) = &rec.note {
        out.push_str(&format!("\n  note: {note}"));
    }
    out
}

fn usage(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_FAILURE
}

fn cmd_series(ctx: &Ctx, n: usize, deg: Option<String>, dk: Option<(usize, usize)>, m: usize, trunc: Option<usize>) -> u8 {
    let degrees = match (deg, dk) {
        (Some(text), _) => match parse_degrees(&text) {
            Ok(v) => v,
            Err(e) => return usage(e),
        },
        (None, Some((d, k))) => vec![d * m; k],
        (None, None) => return usage("give --deg or --d with --k"),
    };
    let spec = match DegreeList::new(n, degrees) {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let trunc = match trunc.map_or_else(|| series_truncation(&spec, ctx.cfg.trunc_cap), Ok) {
        Ok(t) => t,
        Err(e) => return usage(e),
    };
    let series = conjectured_series(&spec, trunc);
    println!("{series}");
    println!("{}", json_array(&series));
    EXIT_OK
}

fn cmd_verify(ctx: &mut Ctx, p: PowerArgs, k: usize, trunc: Option<usize>, degenerate: bool, json: bool) -> u8 {
    let family = if degenerate { FamilyMode::Degenerate } else { FamilyMode::Generic };
    let spec = CaseSpec { trunc, family, ..ctx.cfg.case(p.n, p.d, p.m, k) };
    let rec = ctx.verify(&[spec]).remove(0);
    println!("{}", describe(&rec));
    if json {
        println!("{}", record_to_json(&rec));
    }
    exit_code([&rec])
}

fn cmd_sweep(ctx: &mut Ctx, p: PowerArgs, k_lo: usize, k_hi: Option<usize>, plan_only: bool) -> u8 {
    let k_hi = match k_hi.map_or_else(|| try_count(p.n, p.d * p.m).map_err(|e| e.to_string()), Ok) {
        Ok(k) => k,
        Err(e) => return usage(e),
    };
    let plan = match plan_sweep(p.n, p.d, p.m, k_lo, k_hi, &ctx.cfg.limits()) {
        Ok(plan) => plan,
        Err(e) => return usage(e),
    };
    let base = ctx.cfg.case(p.n, p.d, p.m, k_lo.max(1));
    let mut segments: Vec<(usize, usize, &str)> = plan.singles.iter().map(|c| (c.k, c.k, "direct")).collect();
    segments.extend(plan.intervals.iter().map(|(lo, hi)| (lo.k, hi.k, "interval")));
    segments.sort_unstable();
    println!(
        "plan for n={} d={} m={} k={}..={}: {} direct cases, {} intervals",
        p.n,
        p.d,
        p.m,
        k_lo,
        k_hi,
        plan.direct_count(),
        plan.intervals.len()
    );
    if plan_only {
        for (lo, hi, kind) in segments {
            println!("  {lo}..={hi} {kind}");
        }
        return EXIT_OK;
    }
    let specs: Vec<CaseSpec> = plan.endpoints().iter().map(|c| base.with_k(c.k)).collect();
    let report = assemble_sweep(&plan, ctx.verify(&specs));
    let mut rows = Vec::new();
    for (lo, hi, kind) in segments {
        let status = |k: usize| match report.status(k) {
            CaseStatus::Direct(v) => format!("{v:?}"),
            other => format!("{other:?}"),
        };
        let deduced = (lo + 1..hi).filter(|&k| report.status(k) == CaseStatus::Deduced).count();
        let inner = if hi > lo + 1 { format!("{deduced}/{} deduced", hi - lo - 1) } else { "-".into() };
        rows.push(vec![format!("{lo}..={hi}"), kind.to_string(), status(lo), status(hi), inner]);
    }
    let header = ["k", "kind", "low", "high", "interior"].map(String::from);
    print!("{}", render_table(&header, &rows));
    for (lo, hi, e) in &report.rejected {
        println!("interval {lo}..={hi} rejected: {e}");
    }
    let covered = (k_lo..=k_hi).filter(|&k| matches!(report.status(k), CaseStatus::Direct(Verdict::Verified) | CaseStatus::Deduced)).count();
    println!("verified {covered} of {} counts", k_hi - k_lo + 1);
    if report.all_verified() {
        EXIT_OK
    } else if report.records.iter().any(|r| r.verdict == Verdict::NotAttained) {
        EXIT_NOT_ATTAINED
    } else {
        EXIT_FAILURE
    }
}

fn cmd_interval(ctx: &mut Ctx, p: PowerArgs, k_low: usize, k_high: usize) -> u8 {
    if k_low > k_high {
        return usage(format!("empty interval {k_low}..={k_high}"));
    }
    let base = ctx.cfg.case(p.n, p.d, p.m, k_low);
    let mut recs = ctx.verify(&[base.with_k(k_low), base.with_k(k_high)]);
    for r in &recs {
        println!("{}", describe(r));
    }
    let high = recs.pop().expect("two records");
    let low = recs.pop().expect("two records");
    match deduce_interval(low, high) {
        Ok(w) => {
            let e_surj = w.e_surj.map_or("-".to_string(), |e| e.to_string());
            println!(
                "all k in {}..={} attain the expected series: e_surj={} e_ind={}, {} deduced",
                w.k_low,
                w.k_high,
                e_surj,
                w.e_ind,
                w.deduced.len()
            );
            for c in &w.deduced {
                println!("  k={} deduced: {}", c.k, c.series);
            }
            EXIT_OK
        }
        Err(VerifierError::EndpointNotVerified { verdict: Verdict::NotAttained, k }) => {
            eprintln!("endpoint k={k} was not attained; only the endpoint records stand");
            EXIT_NOT_ATTAINED
        }
        Err(e) => usage(format!("{e}; only the endpoint records stand")),
    }
}

fn cmd_construct(n: usize, d: usize, l: usize) -> u8 {
    let params = match FrobergFamilyParams::new(n, d, l) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let ideal = froberg_monomial_ideal(params);
    println!("{} generators", ideal.generators().len());
    print!("{}", ideal.to_text());
    match check_theorem1(&ideal, n, d) {
        Ok(report) => {
            println!("r = {} (threshold {}), contains m^{}: {}", report.r, report.threshold, d + 1, report.contains_m_power);
            println!("series: {}", report.predicted);
            println!("{}", json_array(&report.predicted));
            EXIT_OK
        }
        Err(e) => usage(e),
    }
}

fn cmd_search(n: usize, d: usize, k: usize, target: Option<String>, prune: bool, budget: u128) -> u8 {
    let target = match target {
        Some(text) => {
            let coeffs: Result<Vec<u64>, _> = text.split(',').map(|s| s.trim().parse::<u64>()).collect();
            match coeffs {
                Ok(c) if !c.is_empty() => {
                    let terminated = c.contains(&0);
                    TruncatedSeries::from_u64(&c, terminated)
                }
                _ => return usage(format!("bad --target {text:?}")),
            }
        }
        None => match DegreeList::uniform(n, d, k) {
            Ok(spec) => conjectured_series(&spec, d + 1),
            Err(e) => return usage(e),
        },
    };
    let options = SearchOptions { budget, prune, progress: None };
    match exhaustive_monomial_search(n, d, k, &target, &options) {
        Ok(outcome) => {
            println!("target: {target}");
            println!("enumerated {} candidate sets, tested {}", outcome.enumerated, outcome.tested);
            match outcome.ideal {
                Some(ideal) => {
                    println!("found a monomial ideal:");
                    print!("{}", ideal.to_text());
                }
                None => {
                    println!("no monomial ideal with {k} generators of degree {d} attains the target");
                }
            }
            EXIT_OK
        }
        Err(e) => usage(e),
    }
}

fn cmd_compare(ctx: &Ctx, n: usize, d: usize, k: usize) -> u8 {
    match compare_pure_power_mix(n, d, k, ctx.cfg.seed, ctx.cfg.prime, &ctx.cfg.limits()) {
        Ok(c) => {
            println!("random forms:          {}", c.generic);
            println!("pure powers + random:  {}", c.mixed);
            println!("{}", if c.equal { "equal" } else { "different" });
            EXIT_OK
        }
        Err(e) => usage(e),
    }
}

fn cmd_table(ctx: &mut Ctx, budget: &str, full: bool) -> u8 {
    ctx.cfg.matrix_budget = match budget {
        "small" => SMALL_BUDGET,
        "default" => DEFAULT_MATRIX_BUDGET,
        other => match other.parse() {
            Ok(b) if b > 0 => b,
            _ => return usage(format!("bad --budget {other:?}")),
        },
    };
    let limits = ctx.cfg.limits();
    let mut columns = Vec::new();
    let mut code = EXIT_OK;
    for (n, d, m) in TABLE_CELLS {
        let max_k = try_count(n, d * m).expect("small cell");
        let plan = match plan_sweep(n, d, m, 1, max_k, &limits) {
            Ok(p) => p,
            Err(e) => return usage(e),
        };
        let ks: Vec<usize> = if full { plan.endpoints().iter().map(|c| c.k).collect() } else { plan.representative_ks() };
        let base = ctx.cfg.case(n, d, m, 1);
        let (run, skipped): (Vec<usize>, Vec<usize>) = ks.iter().partition(|&&k| {
            plan.endpoints().iter().find(|c| c.k == k).is_some_and(|c| c.within_budget)
        });
        let specs: Vec<CaseSpec> = run.iter().map(|&k| base.with_k(k)).collect();
        let records = ctx.verify(&specs);
        let verdict = if full {
            let report = assemble_sweep(&plan, records.clone());
            let covered = (1..=max_k).filter(|&k| matches!(report.status(k), CaseStatus::Direct(Verdict::Verified) | CaseStatus::Deduced)).count();
            format!("{covered}/{max_k}")
        } else {
            let ok = records.iter().filter(|r| r.verdict == Verdict::Verified).count();
            format!("{ok}/{}", records.len())
        };
        code = code.max(exit_code(&records));
        let skipped = if skipped.is_empty() { "-".to_string() } else { format!("{skipped:?}") };
        columns.push([n.to_string(), d.to_string(), m.to_string(), (d * m).to_string(), format!("{run:?}"), verdict, skipped]);
    }
    let labels = ["n", "d", "m", "dm", "k run", "verified", "over budget"];
    let header: Vec<String> = std::iter::once(String::new()).chain((1..=columns.len()).map(|i| format!("cell {i}"))).collect();
    let rows: Vec<Vec<String>> = labels
        .iter()
        .enumerate()
        .map(|(i, label)| std::iter::once(label.to_string()).chain(columns.iter().map(|c| c[i].clone())).collect())
        .collect();
    print!("{}", render_table(&header, &rows));
    code
}

fn run(cli: Cli) -> u8 {
    let g = cli.global;
    let workers = g.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = Config {
        prime: g.prime,
        seed: g.seed,
        trunc_cap: g.trunc_cap,
        trials: g.trials,
        workers,
        matrix_budget: g.matrix_budget,
        cache: if g.no_cache { None } else { g.cache },
    };
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    let cache = match &cfg.cache {
        Some(path) => match Cache::open(path) {
            Ok(c) => Some(c),
            Err(e) => return usage(format!("cannot read cache {}: {e}", path.display())),
        },
        None => None,
    };
    let mut ctx = Ctx { cfg, cache };
    let code = match cli.command {
        Command::Series { n, deg, d, m, k, trunc } => cmd_series(&ctx, n, deg, d.zip(k), m, trunc),
        Command::Verify { power, k, trunc, degenerate, json } => cmd_verify(&mut ctx, power, k, trunc, degenerate, json),
        Command::Sweep { power, k_lo, k_hi, plan_only } => cmd_sweep(&mut ctx, power, k_lo, k_hi, plan_only),
        Command::Interval { power, k_low, k_high } => cmd_interval(&mut ctx, power, k_low, k_high),
        Command::Construct { n, d, l } => cmd_construct(n, d, l),
        Command::Search { n, d, k, target, no_prune, budget } => cmd_search(n, d, k, target, !no_prune, budget),
        Command::Compare { n, d, k } => cmd_compare(&ctx, n, d, k),
        Command::Table { budget, full } => cmd_table(&mut ctx, &budget, full),
    };
    eprintln!("rank computations: {}", rank_computations());
    code
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}
