use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vii_lattice::report::{self, Exit, Outcome};
use vii_lattice::selftest;

/// Intersection-lattice invariants of curve configurations on class VII surfaces.
#[derive(Parser)]
#[command(name = "vii", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validation, matrix, cycles, sigma verdict and NAC divisor.
    Classify { file: PathBuf },
    /// NAC divisor for a given multiple m.
    Nac {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// The index m(S).
    Index { file: PathBuf },
    /// Canonical homology representations (cap: VII_ENUM_CAP, default 8).
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_solutions: Option<usize>,
    },
    /// Germ verdicts: hopf-strong, hopf-primary or enoki, with key=value parameters.
    Germ {
        kind: String,
        params: Vec<String>,
        /// Write the derived configuration (enoki) to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in verification suites.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
        /// Run only the named suite.
        #[arg(long)]
        suite: Option<String>,
    },
}

fn emit(o: Outcome) -> ExitCode {
    if let Some(r) = &o.report {
        let text = serde_json::to_string_pretty(r).expect("serializable");
        // A closed pipe on stdout is not an error worth reporting.
        let _ = writeln!(std::io::stdout(), "{text}");
    }
    if let Some(e) = &o.error {
        eprintln!("vii: {e}");
    }
    ExitCode::from(o.exit.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Classify { file } => report::cmd_classify(&file),
        Command::Nac { file, m } => report::cmd_nac(&file, m),
        Command::Index { file } => report::cmd_index(&file),
        Command::Enumerate { file, max_solutions } => match report::cap_from_env() {
            Ok(cap) => report::cmd_enumerate(&file, max_solutions, cap),
            Err(e) => Outcome { report: None, error: Some(e), exit: Exit::InvalidInput },
        },
        Command::Germ { kind, params, out } => report::cmd_germ(&kind, &params, out.as_deref()),
        Command::Selftest { seed, suite } => {
            let r = match suite {
                Some(name) => match selftest::run_suite(&name, seed) {
                    Some(s) => {
                        let passed = usize::from(s.passed);
                        selftest::SelftestReport { seed, passed, failed: 1 - passed, suites: vec![s] }
                    }
                    None => {
                        let e = format!("unknown suite {name:?}; known: {}", selftest::SUITES.join(", "));
                        return emit(Outcome { report: None, error: Some(e), exit: Exit::InvalidInput });
                    }
                },
                None => selftest::run_all(seed),
            };
            for s in &r.suites {
                eprintln!("{} {} ({} checks)", if s.passed { "PASS" } else { "FAIL" }, s.name, s.checks);
            }
            let exit = if r.failed == 0 { Exit::Ok } else { Exit::Inconsistent };
            Outcome { report: Some(serde_json::to_value(&r).expect("serializable")), error: None, exit }
        }
    };
    emit(outcome)
}
