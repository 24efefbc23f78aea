//! `markoff` — command-line front end for the Markoff-surface dynamics
//! library.
//!
//! Exit codes: 0 on success or a verified claim, 1 when a scan or
//! verification suite finds a refutation, 2 on usage errors.

mod commands;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use markoff_core::scan::ForbiddenSet;

/// An inclusive prime range written `A..B`.
#[derive(Debug, Clone, Copy)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for PrimeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected an inclusive range like 5..100, got {s:?}"))?;
        let lo: u64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("range start {lo:?} is not a non-negative integer"))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("range end {hi:?} is not a non-negative integer"))?;
        if lo > hi {
            return Err(format!("range start {lo} exceeds range end {hi}"));
        }
        Ok(PrimeRange { lo, hi })
    }
}

impl fmt::Display for PrimeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

/// Which set of surface points a scan treats as forbidden.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ForbiddenChoice {
    /// Only the origin (0, 0, 0).
    #[value(name = "origin-only")]
    OriginOnly,
    /// The origin together with both unit conics z^2 = 1.
    #[value(name = "unit-conics")]
    UnitConics,
}

impl ForbiddenChoice {
    pub fn to_set(self) -> ForbiddenSet {
        match self {
            ForbiddenChoice::OriginOnly => ForbiddenSet::OriginOnly,
            ForbiddenChoice::UnitConics => ForbiddenSet::OriginAndUnitConics,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ForbiddenChoice::OriginOnly => "origin-only",
            ForbiddenChoice::UnitConics => "unit-conics",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Per-point period divisibility against the fiber eigenvalue order.
    Lemma1,
    /// Minimal-period floors omega(p) on primes p = 19 (mod 24).
    Lemma2,
    /// SRP(3) witnessed alongside an SRP(2) refutation.
    #[value(name = "thmA")]
    ThmA,
    /// Growth of minimal periods along a constructed prime sequence.
    #[value(name = "thmB-evidence")]
    ThmBEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompanionMap {
    /// The sextic line map x -> x^6 + 2x^3 on a prime field.
    Bgk,
    /// The Henon involution (x, y) -> (y, y^2 - x - 1).
    Henon,
}

#[derive(Debug, Parser)]
#[command(
    name = "markoff",
    version,
    about = "Scans, periods, and verification suites for the Markoff surface x^2 + y^2 + z^2 = xyz over prime fields"
)]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Worker threads for range commands; affects wall-clock time only,
    /// never the output bytes.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate one point under a reflection word and report its exact period.
    Orbit {
        /// The prime modulus (at least 5).
        #[arg(long)]
        prime: u64,
        /// Starting point as `x,y,z`; must lie on the surface mod p.
        #[arg(long)]
        point: String,
        /// Reflection word, e.g. `12` for "reflect in z, then in x".
        #[arg(long, default_value = "12")]
        word: String,
        /// Print orbit rows only when the period is at most this many steps.
        #[arg(long, default_value_t = 10_000)]
        max_steps: u64,
    },

    /// Minimal periods for every prime in a range.
    Scan {
        /// Inclusive prime range `A..B`.
        #[arg(long)]
        primes: PrimeRange,
        #[arg(long, default_value = "12")]
        word: String,
        #[arg(long, value_enum, default_value_t = ForbiddenChoice::OriginOnly)]
        forbidden: ForbiddenChoice,
        /// Include the full period spectrum (JSON output only).
        #[arg(long)]
        spectrum: bool,
        /// Cross-check the fiber computation against naive orbit iteration.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },

    /// Minimal period over the allowed points for a single prime.
    #[command(name = "minimal-period")]
    MinimalPeriod {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value = "12")]
        word: String,
        #[arg(long, value_enum, default_value_t = ForbiddenChoice::OriginOnly)]
        forbidden: ForbiddenChoice,
        #[arg(long)]
        oracle: bool,
    },

    /// Strong rigidity property verdict over a prime range (JSON report).
    Srp {
        #[arg(long)]
        primes: PrimeRange,
        #[arg(long, default_value = "12")]
        word: String,
        #[arg(long, value_enum, default_value_t = ForbiddenChoice::OriginOnly)]
        forbidden: ForbiddenChoice,
        /// The period bound M of SRP(M).
        #[arg(long)]
        bound: u64,
        /// Primes excluded from the scan.
        #[arg(long, value_delimiter = ',', default_values_t = vec![2, 3])]
        excluded: Vec<u64>,
        #[arg(long)]
        spectrum: bool,
        #[arg(long)]
        oracle: bool,
    },

    /// Run a named verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Prime range for the suite (defaults: lemma1 5..61, lemma2 5..200,
        /// thmA 5..500; not accepted by thmB-evidence).
        #[arg(long)]
        primes: Option<PrimeRange>,
        /// Largest k for thmB-evidence (default 12, the cap).
        #[arg(long)]
        max_k: Option<u64>,
    },

    /// The finite-order classification table for the fiber action.
    #[command(name = "table1")]
    Table1 {
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },

    /// The invariant omega(p) for every prime in a range.
    Omega {
        #[arg(long)]
        primes: PrimeRange,
    },

    /// Find the least prime p = r (mod 72) on a CRT-constructed progression
    /// with omega(p) > k.
    #[command(name = "find-prime")]
    FindPrime {
        #[arg(long)]
        k: u64,
        /// Residue mod 72 defining the progression (must be coprime to 72).
        #[arg(long, default_value_t = 43)]
        residue72: u64,
    },

    /// Fixed-point tables for the companion rigidity systems.
    Companion {
        #[arg(value_enum)]
        map: CompanionMap,
        #[arg(long)]
        primes: PrimeRange,
    },

    /// Case-by-case analysis of finite orbit sizes at a single prime.
    #[command(name = "lemma2-cases")]
    Lemma2Cases {
        #[arg(long)]
        prime: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
