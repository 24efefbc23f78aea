//! Implementations of the CLI commands: each produces the full report text
//! and an exit code, leaving emission to `main`.

use std::collections::BTreeMap;
use std::fmt;
use std::process::ExitCode;

use rayon::prelude::*;
use rayon::ThreadPool;
use serde_json::{json, Map, Value};

use markoff_core::companions::{henon_apply, henon_fixed_point, line_fixed_point, line_map_eval};
use markoff_core::ff::primes::primes_in;
use markoff_core::fiber::{fiber_word, finite_order_table};
use markoff_core::primesearch::{find_prime_omega_gt, omega, primes_19_mod_24, Omega};
use markoff_core::scan::{
    exact_period_of_point, minimal_period, order_case_table, verify_omega_floor,
    verify_period_divisibility, ForbiddenSet, PrimeReport, SrpStatus, SrpVerdict,
    DEFAULT_EXCLUDED_PRIMES, DIVISIBILITY_PRIME_LIMIT, FAST_PRIME_LIMIT, ORACLE_PRIME_LIMIT,
    SPECTRUM_PRIME_LIMIT,
};
use markoff_core::surface::conjugating_permutation;
use markoff_core::{AutWord, ModPoint};

use crate::report::{self, Config, ConfigValue};
use crate::{Cli, Command, CompanionMap, ForbiddenChoice, OutputFormat, PrimeRange, Suite};

#[derive(Debug)]
pub struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError(message.into())
}

fn from_err(e: impl fmt::Display) -> CliError {
    CliError(e.to_string())
}

type CmdResult = Result<(String, ExitCode), CliError>;

pub fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if cli.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(from_err)?;
    let (text, code) = match cli.command {
        Command::Orbit { prime, point, word, max_steps } => {
            orbit(prime, &point, &word, max_steps)?
        }
        Command::Scan { primes, word, forbidden, spectrum, oracle, format } => {
            scan(&pool, primes, &word, forbidden, spectrum, oracle, format)?
        }
        Command::MinimalPeriod { prime, word, forbidden, oracle } => {
            minimal_period_cmd(prime, &word, forbidden, oracle)?
        }
        Command::Srp { primes, word, forbidden, bound, excluded, spectrum, oracle } => {
            srp(&pool, primes, &word, forbidden, bound, excluded, spectrum, oracle)?
        }
        Command::Verify { suite, primes, max_k } => verify(&pool, suite, primes, max_k)?,
        Command::Table1 { format } => table1(format)?,
        Command::Omega { primes } => omega_cmd(&pool, primes)?,
        Command::FindPrime { k, residue72 } => find_prime(k, residue72)?,
        Command::Companion { map, primes } => companion(&pool, map, primes)?,
        Command::Lemma2Cases { prime } => lemma2_cases(prime)?,
    };
    report::emit(&text, cli.output.as_deref()).map_err(from_err)?;
    Ok(code)
}

fn text(s: impl Into<String>) -> ConfigValue {
    ConfigValue::Text(s.into())
}

fn parse_word(s: &str) -> Result<AutWord, CliError> {
    s.parse::<AutWord>().map_err(from_err)
}

fn require_min_prime(p: u64) -> Result<(), CliError> {
    if p < 5 {
        return Err(usage(format!(
            "prime must be at least 5, got {p}: the reductions mod 2 and mod 3 are excluded from every scan"
        )));
    }
    Ok(())
}

fn range_guard(range: PrimeRange, oracle: bool, spectrum: bool) -> Result<(), CliError> {
    if range.hi > FAST_PRIME_LIMIT {
        return Err(usage(format!(
            "range end {} exceeds the scan limit {FAST_PRIME_LIMIT}",
            range.hi
        )));
    }
    if oracle && range.hi > ORACLE_PRIME_LIMIT {
        return Err(usage(format!(
            "--oracle iterates every orbit directly and limits the range end to {ORACLE_PRIME_LIMIT}, got {}",
            range.hi
        )));
    }
    if spectrum && range.hi > SPECTRUM_PRIME_LIMIT {
        return Err(usage(format!(
            "--spectrum tallies every point and limits the range end to {SPECTRUM_PRIME_LIMIT}, got {}",
            range.hi
        )));
    }
    Ok(())
}

fn format_label(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

fn orbit(prime: u64, point: &str, word: &str, max_steps: u64) -> CmdResult {
    require_min_prime(prime)?;
    let word = parse_word(word)?;
    let start = ModPoint::parse(point, prime).map_err(from_err)?;
    // Words conjugate to the canonical fiber word get their periods from the
    // linear fiber action; anything else is iterated directly and needs the
    // tighter prime limit.
    let limit = if conjugating_permutation(&fiber_word(), &word).is_some() {
        FAST_PRIME_LIMIT
    } else {
        ORACLE_PRIME_LIMIT
    };
    if prime > limit {
        return Err(usage(format!(
            "prime {prime} exceeds the limit {limit} for word {word}"
        )));
    }
    let period = exact_period_of_point(&word, &start);
    let mut body = String::from("step,x,y,z\n");
    if period <= max_steps {
        let mut current = start.clone();
        for step in 0..period {
            let c = current.coords();
            body.push_str(&format!("{step},{},{},{}\n", c[0], c[1], c[2]));
            current = word.apply(&current);
        }
        debug_assert_eq!(current, start, "orbit failed to close after {period} steps");
    }
    body.push_str(&format!("exact period {period}\n"));
    let config: Config = vec![
        ("command", text("orbit")),
        ("max-steps", ConfigValue::Int(max_steps)),
        ("point", text(format!("{},{},{}", start.x(), start.y(), start.z()))),
        ("prime", ConfigValue::Int(prime)),
        ("word", text(word.to_string())),
    ];
    Ok((report::csv_report("orbit/1", &config, &body), ExitCode::SUCCESS))
}

fn scan(
    pool: &ThreadPool,
    range: PrimeRange,
    word: &str,
    forbidden: ForbiddenChoice,
    spectrum: bool,
    oracle: bool,
    format: OutputFormat,
) -> CmdResult {
    range_guard(range, oracle, spectrum)?;
    if spectrum && format == OutputFormat::Csv {
        return Err(usage(
            "the period spectrum is only included in JSON output; pass --format json",
        ));
    }
    let word = parse_word(word)?;
    let set = forbidden.to_set();
    let ps = primes_in(range.lo.max(5), range.hi);
    let reports = pool
        .install(|| {
            ps.par_iter()
                .map(|&p| PrimeReport::compute(p, &word, &set, spectrum, oracle))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(from_err)?;
    let reports: Vec<PrimeReport> = reports.into_iter().flatten().collect();
    let config: Config = vec![
        ("command", text("scan")),
        ("forbidden", text(forbidden.label())),
        ("format", text(format_label(format))),
        ("oracle", ConfigValue::Bool(oracle)),
        ("primes", text(range.to_string())),
        ("spectrum", ConfigValue::Bool(spectrum)),
        ("word", text(word.to_string())),
    ];
    let out = match format {
        OutputFormat::Csv => {
            let mut body = format!("{}\n", PrimeReport::csv_header());
            for r in &reports {
                body.push_str(&format!("{}\n", r.csv_row()));
            }
            report::csv_report("prime-scan/1", &config, &body)
        }
        OutputFormat::Json => {
            let mut payload = Map::new();
            let rows: Vec<Value> = reports.iter().map(PrimeReport::to_json_value).collect();
            payload.insert("reports".to_string(), Value::from(rows));
            report::json_report("prime-scan/1", &config, payload)
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn minimal_period_cmd(
    prime: u64,
    word: &str,
    forbidden: ForbiddenChoice,
    oracle: bool,
) -> CmdResult {
    require_min_prime(prime)?;
    range_guard(PrimeRange { lo: prime, hi: prime }, oracle, false)?;
    let word = parse_word(word)?;
    let report = PrimeReport::compute(prime, &word, &forbidden.to_set(), false, oracle)
        .map_err(from_err)?;
    let mut body = format!("{}\n", PrimeReport::csv_header());
    match &report {
        Some(r) => body.push_str(&format!("{}\n", r.csv_row())),
        None => body.push_str(&format!("{prime},none,,,,\n")),
    }
    let config: Config = vec![
        ("command", text("minimal-period")),
        ("forbidden", text(forbidden.label())),
        ("oracle", ConfigValue::Bool(oracle)),
        ("prime", ConfigValue::Int(prime)),
        ("word", text(word.to_string())),
    ];
    Ok((
        report::csv_report("minimal-period/1", &config, &body),
        ExitCode::SUCCESS,
    ))
}

/// Per-prime scan with exclusions, fanned out over the pool; the merge is in
/// ascending-prime order, so the verdict is byte-identical at any job count
/// and matches a sequential scan.
#[allow(clippy::too_many_arguments)]
fn srp_verdict_parallel(
    pool: &ThreadPool,
    range: PrimeRange,
    word: &AutWord,
    set: &ForbiddenSet,
    bound: u64,
    excluded: &[u64],
    spectrum: bool,
    oracle: bool,
) -> Result<SrpVerdict, CliError> {
    enum Item {
        Excluded(u64),
        Scanned(Option<PrimeReport>),
    }
    let ps = primes_in(range.lo, range.hi);
    let items = pool
        .install(|| {
            ps.par_iter()
                .map(|&p| {
                    if excluded.contains(&p) {
                        Ok(Item::Excluded(p))
                    } else {
                        PrimeReport::compute(p, word, set, spectrum, oracle).map(Item::Scanned)
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(from_err)?;
    let mut excluded_primes = vec![];
    let mut evidence = vec![];
    for item in items {
        match item {
            Item::Excluded(p) => excluded_primes.push(p),
            Item::Scanned(Some(r)) => evidence.push(r),
            Item::Scanned(None) => {}
        }
    }
    let status = if evidence.is_empty() {
        SrpStatus::Inconclusive
    } else if evidence.iter().all(|r| r.min_period <= bound) {
        SrpStatus::SrpWitnessed
    } else {
        SrpStatus::RefutedUpToRange
    };
    Ok(SrpVerdict { bound, excluded_primes, status, evidence })
}

#[allow(clippy::too_many_arguments)]
fn srp(
    pool: &ThreadPool,
    range: PrimeRange,
    word: &str,
    forbidden: ForbiddenChoice,
    bound: u64,
    excluded: Vec<u64>,
    spectrum: bool,
    oracle: bool,
) -> CmdResult {
    range_guard(range, oracle, spectrum)?;
    let word = parse_word(word)?;
    let mut excluded = excluded;
    excluded.sort_unstable();
    excluded.dedup();
    let verdict = srp_verdict_parallel(
        pool,
        range,
        &word,
        &forbidden.to_set(),
        bound,
        &excluded,
        spectrum,
        oracle,
    )?;
    let config: Config = vec![
        ("bound", ConfigValue::Int(bound)),
        ("command", text("srp")),
        ("excluded", ConfigValue::IntList(excluded)),
        ("forbidden", text(forbidden.label())),
        ("oracle", ConfigValue::Bool(oracle)),
        ("primes", text(range.to_string())),
        ("spectrum", ConfigValue::Bool(spectrum)),
        ("word", text(word.to_string())),
    ];
    let out = report::annotate_json(&verdict.to_json(), &config);
    let code = if verdict.status == SrpStatus::RefutedUpToRange {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    };
    Ok((out, code))
}

fn verify(
    pool: &ThreadPool,
    suite: Suite,
    primes: Option<PrimeRange>,
    max_k: Option<u64>,
) -> CmdResult {
    if max_k.is_some() && suite != Suite::ThmBEvidence {
        return Err(usage("--max-k applies only to --suite thmB-evidence"));
    }
    match suite {
        Suite::Lemma1 => verify_lemma1(pool, primes.unwrap_or(PrimeRange { lo: 5, hi: 61 })),
        Suite::Lemma2 => verify_lemma2(pool, primes.unwrap_or(PrimeRange { lo: 5, hi: 200 })),
        Suite::ThmA => verify_thm_a(pool, primes.unwrap_or(PrimeRange { lo: 5, hi: 500 })),
        Suite::ThmBEvidence => {
            if primes.is_some() {
                return Err(usage(
                    "--primes does not apply to thmB-evidence; the prime sequence is constructed from --max-k",
                ));
            }
            verify_thm_b(max_k.unwrap_or(12))
        }
    }
}

fn verify_lemma1(pool: &ThreadPool, range: PrimeRange) -> CmdResult {
    if range.hi > DIVISIBILITY_PRIME_LIMIT {
        return Err(usage(format!(
            "the exhaustive divisibility check enumerates every orbit and limits the range end to {DIVISIBILITY_PRIME_LIMIT}, got {}",
            range.hi
        )));
    }
    let word = fiber_word();
    let ps = primes_in(range.lo.max(5), range.hi);
    let rows = pool
        .install(|| {
            ps.par_iter()
                .map(|&p| verify_period_divisibility(p, &word))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(from_err)?;
    let mut body = String::from("p,holds,failures\n");
    let mut all = true;
    for r in &rows {
        all &= r.holds;
        body.push_str(&format!("{},{},{}\n", r.p, u8::from(r.holds), r.failures.len()));
    }
    let config: Config = vec![
        ("command", text("verify")),
        ("primes", text(range.to_string())),
        ("suite", text("lemma1")),
    ];
    let code = if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((report::csv_report("verify-lemma1/1", &config, &body), code))
}

fn verify_lemma2(pool: &ThreadPool, range: PrimeRange) -> CmdResult {
    range_guard(range, false, false)?;
    let ps = primes_19_mod_24(range.lo, range.hi);
    let rows = pool
        .install(|| {
            ps.par_iter()
                .map(|&p| verify_omega_floor(p))
                .collect::<Result<Vec<_>, _>>()
        })
        .map_err(from_err)?;
    let mut body = String::from("p,omega,min_period,witness_x,witness_y,witness_z,holds\n");
    let mut all = true;
    for r in &rows {
        all &= r.holds;
        let c = r.witness.coords();
        body.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.p,
            r.omega.omega,
            r.min_period,
            c[0],
            c[1],
            c[2],
            u8::from(r.holds)
        ));
    }
    let config: Config = vec![
        ("command", text("verify")),
        ("primes", text(range.to_string())),
        ("suite", text("lemma2")),
    ];
    let code = if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((report::csv_report("verify-lemma2/1", &config, &body), code))
}

fn verify_thm_a(pool: &ThreadPool, range: PrimeRange) -> CmdResult {
    range_guard(range, false, false)?;
    let word = fiber_word();
    let set = ForbiddenSet::OriginOnly;
    let witness3 =
        srp_verdict_parallel(pool, range, &word, &set, 3, &DEFAULT_EXCLUDED_PRIMES, false, false)?;
    let witness2 =
        srp_verdict_parallel(pool, range, &word, &set, 2, &DEFAULT_EXCLUDED_PRIMES, false, false)?;
    let refuting = witness2.evidence.iter().find(|r| r.min_period > 2).map(|r| r.p);
    let verified = witness3.status == SrpStatus::SrpWitnessed
        && witness2.status == SrpStatus::RefutedUpToRange
        && refuting.is_some();
    let body = if verified {
        let p = refuting.expect("a refuted verdict names a refuting prime");
        format!("SRP(3) witnessed; SRP(2) refuted at p={p}\n")
    } else {
        format!(
            "expected SRP(3) witnessed and SRP(2) refuted; found SRP(3) {} and SRP(2) {}\n",
            witness3.status.label(),
            witness2.status.label()
        )
    };
    let config: Config = vec![
        ("command", text("verify")),
        ("primes", text(range.to_string())),
        ("suite", text("thmA")),
    ];
    let code = if verified { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((report::csv_report("verify-thmA/1", &config, &body), code))
}

fn verify_thm_b(max_k: u64) -> CmdResult {
    if !(2..=12).contains(&max_k) {
        return Err(usage(format!(
            "--max-k must be between 2 and 12: the k = 13 prime on the search progression is 745747, past the fast-scan limit {FAST_PRIME_LIMIT}"
        )));
    }
    let mut period_cache: BTreeMap<u64, u64> = BTreeMap::new();
    let mut body = String::from("k,p,omega,min_period,consistent\n");
    let mut all = true;
    for k in 2..=max_k {
        let found = find_prime_omega_gt(k, 43).map_err(from_err)?;
        let p = found.p();
        if let std::collections::btree_map::Entry::Vacant(slot) = period_cache.entry(p) {
            let mp = minimal_period(p, &fiber_word(), &ForbiddenSet::OriginAndUnitConics)
                .map_err(from_err)?
                .ok_or_else(|| usage(format!("no allowed points on the surface mod {p}")))?;
            slot.insert(mp.period);
        }
        let min_period = period_cache[&p];
        let floor_holds = match found.record.omega {
            Omega::Finite(w) => min_period >= w,
            Omega::Unbounded => true,
        };
        let consistent = found.certifies(k) && floor_holds;
        all &= consistent;
        body.push_str(&format!(
            "{k},{p},{},{min_period},{}\n",
            found.record.omega,
            u8::from(consistent)
        ));
    }
    body.push_str(if all {
        "evidence consistent with Theorem 2\n"
    } else {
        "evidence INCONSISTENT with Theorem 2\n"
    });
    let config: Config = vec![
        ("command", text("verify")),
        ("max-k", ConfigValue::Int(max_k)),
        ("suite", text("thmB-evidence")),
    ];
    let code = if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((report::csv_report("verify-thmB-evidence/1", &config, &body), code))
}

fn table1(format: OutputFormat) -> CmdResult {
    let rows = finite_order_table();
    let config: Config = vec![
        ("command", text("table1")),
        ("format", text(format_label(format))),
    ];
    let out = match format {
        OutputFormat::Csv => {
            let mut body = String::from("mu,char_poly,d,lambda\n");
            for r in &rows {
                body.push_str(&format!("{},{},{},{}\n", r.mu_order, r.char_poly, r.d, r.lambda));
            }
            report::csv_report("table1/1", &config, &body)
        }
        OutputFormat::Json => {
            let mut payload = Map::new();
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "mu": r.mu_order,
                        "char_poly": r.char_poly.to_string(),
                        "d": r.d,
                        "lambda": r.lambda,
                    })
                })
                .collect();
            payload.insert("rows".to_string(), Value::from(rows));
            report::json_report("table1/1", &config, payload)
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn omega_cmd(pool: &ThreadPool, range: PrimeRange) -> CmdResult {
    range_guard(range, false, false)?;
    let ps = primes_in(range.lo.max(5), range.hi);
    let rows = pool
        .install(|| ps.par_iter().map(|&p| omega(p)).collect::<Result<Vec<_>, _>>())
        .map_err(from_err)?;
    let mut body = String::from("p,quotient,omega\n");
    for r in &rows {
        body.push_str(&format!("{},{},{}\n", r.p, r.quotient, r.omega));
    }
    let config: Config = vec![
        ("command", text("omega")),
        ("primes", text(range.to_string())),
    ];
    Ok((report::csv_report("omega-scan/1", &config, &body), ExitCode::SUCCESS))
}

fn find_prime(k: u64, residue72: u64) -> CmdResult {
    let found = find_prime_omega_gt(k, residue72).map_err(from_err)?;
    let mut body = String::from("p,modulus,residue,steps,omega\n");
    body.push_str(&format!(
        "{},{},{},{},{}\n",
        found.p(),
        found.modulus,
        found.residue,
        found.steps,
        found.record.omega
    ));
    let config: Config = vec![
        ("command", text("find-prime")),
        ("k", ConfigValue::Int(k)),
        ("residue72", ConfigValue::Int(residue72)),
    ];
    Ok((report::csv_report("find-prime/1", &config, &body), ExitCode::SUCCESS))
}

fn companion(pool: &ThreadPool, map: CompanionMap, range: PrimeRange) -> CmdResult {
    range_guard(range, false, false)?;
    let ps = primes_in(range.lo.max(2), range.hi);
    let map_label = match map {
        CompanionMap::Bgk => "bgk",
        CompanionMap::Henon => "henon",
    };
    let config: Config = vec![
        ("command", text("companion")),
        ("map", text(map_label)),
        ("primes", text(range.to_string())),
    ];
    let (body, all) = match map {
        CompanionMap::Bgk => {
            let rows = pool
                .install(|| {
                    ps.par_iter()
                        .map(|&p| line_fixed_point(p).map(|c| (p, c)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .map_err(from_err)?;
            let mut body = String::from("p,fixed_x,verified\n");
            let mut all = true;
            for (p, c) in rows {
                let ok = line_map_eval(c, p) == c;
                all &= ok;
                body.push_str(&format!("{p},{c},{}\n", u8::from(ok)));
            }
            (body, all)
        }
        CompanionMap::Henon => {
            let rows = pool
                .install(|| {
                    ps.par_iter()
                        .map(|&p| henon_fixed_point(p).map(|f| (p, f)))
                        .collect::<Result<Vec<_>, _>>()
                })
                .map_err(from_err)?;
            let mut body = String::from("p,fixed_x,fixed_y,verified\n");
            let mut all = true;
            for (p, f) in rows {
                let ok = henon_apply(f, p) == f;
                all &= ok;
                body.push_str(&format!("{p},{},{},{}\n", f.0, f.1, u8::from(ok)));
            }
            (body, all)
        }
    };
    let tag = match map {
        CompanionMap::Bgk => "companion-bgk/1",
        CompanionMap::Henon => "companion-henon/1",
    };
    let code = if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((report::csv_report(tag, &config, &body), code))
}

fn lemma2_cases(prime: u64) -> CmdResult {
    let rows = order_case_table(prime).map_err(from_err)?;
    let mut body = String::from("n,status,verified,reason\n");
    let mut all = true;
    for r in &rows {
        all &= r.verified;
        body.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.status.token(),
            u8::from(r.verified),
            r.status.reason()
        ));
    }
    let config: Config = vec![
        ("command", text("lemma2-cases")),
        ("prime", ConfigValue::Int(prime)),
    ];
    let code = if all { ExitCode::SUCCESS } else { ExitCode::from(1) };
    Ok((report::csv_report("lemma2-cases/1", &config, &body), code))
}
