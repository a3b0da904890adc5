use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nctrace::exactalg::Field;
use nctrace::verify::Verdict;
use nctrace_cli::report::{ensure_dir, write_json, ReportFile, Summary};
use nctrace_cli::suites::{run_suite, Config, Suite, INVALID_ENTRY, SUITE_NAMES};
use nctrace_cli::zoo::{Zoo, ZooError};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "nctrace", version, about = "Exact verification of trace and Riemann-Roch identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write JSON reports.
    Verify {
        /// lefschetz, hrr, grr, eq12, properties or all.
        suite: String,
        /// Zoo file to use instead of the built-in zoo.
        #[arg(long)]
        zoo: Option<PathBuf>,
        /// Q or Fp:<p>.
        #[arg(long, default_value = "Q")]
        field: String,
        /// Directory for report files.
        #[arg(long, default_value = "reports")]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Only run the named case (and its sub-cases).
        #[arg(long)]
        case: Option<String>,
        /// Print passing cases too.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Inspect the zoo.
    Zoo {
        #[command(subcommand)]
        command: ZooCommand,
        #[arg(long, global = true)]
        zoo: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ZooCommand {
    /// List entries.
    List,
    /// Show one entry as JSON.
    Describe { name: String },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn load_zoo(path: &Option<PathBuf>) -> Result<Zoo, ZooError> {
    match path {
        Some(p) => Zoo::from_file(p),
        None => Ok(Zoo::builtin()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Zoo { command, zoo } => {
            let zoo = match load_zoo(&zoo) {
                Ok(z) => z,
                Err(e) => return usage(e),
            };
            match command {
                ZooCommand::List => {
                    for e in &zoo.entries {
                        let mut line = format!("{:<28} {}", e.name, e.kind);
                        if let Some(x) = &e.expected {
                            line.push_str(&format!("  expected {}", x.value));
                        }
                        println!("{line}");
                    }
                    ExitCode::SUCCESS
                }
                ZooCommand::Describe { name } => match zoo.get(&name) {
                    Ok(e) => {
                        println!("{}", serde_json::to_string_pretty(e).expect("entries serialize"));
                        ExitCode::SUCCESS
                    }
                    Err(e) => usage(e),
                },
            }
        }
        Command::Verify {
            suite,
            zoo,
            field,
            out,
            jobs,
            case,
            verbose,
        } => {
            let Some(suites) = Suite::parse(&suite) else {
                return usage(format!("unknown suite {suite:?}; expected one of {}", SUITE_NAMES.join(", ")));
            };
            let field: Field = match field.parse() {
                Ok(f) => f,
                Err(e) => return usage(format!("bad --field: {e}")),
            };
            let zoo = match load_zoo(&zoo) {
                Ok(z) => z,
                Err(e) => return usage(e),
            };
            let config = Config { field, jobs, case };
            verify(&suites, &zoo, &config, &out, verbose)
        }
    }
}

fn verify(suites: &[Suite], zoo: &Zoo, config: &Config, out: &Path, verbose: bool) -> ExitCode {
    if let Err(e) = ensure_dir(out) {
        return usage(e);
    }
    let mut reports = vec![];
    for &s in suites {
        let (report, header) = run_suite(s, zoo, config);
        print!("{}", report.render_text(verbose));
        let file = ReportFile { header, report };
        if let Err(e) = write_json(&out.join(format!("{s}.json")), &file) {
            return usage(e);
        }
        reports.push(file.report);
    }
    if let Some(name) = &config.case {
        if reports.iter().all(|r| r.cases.is_empty()) {
            return usage(format!("no case named {name:?}"));
        }
    }
    let refs: Vec<_> = reports.iter().collect();
    let summary = Summary::new(&config.field.to_string(), &refs);
    if let Err(e) = write_json(&out.join("summary.json"), &summary) {
        return usage(e);
    }
    let errors: Vec<_> = reports
        .iter()
        .flat_map(|r| &r.cases)
        .filter(|c| c.verdict == Verdict::Error)
        .collect();
    let invalid = |c: &&nctrace::verify::VerificationCase| {
        c.reason.as_deref().is_some_and(|r| r.starts_with(INVALID_ENTRY))
    };
    if errors.iter().any(|c| !invalid(c)) {
        ExitCode::from(EXIT_INTERNAL)
    } else if !errors.is_empty() {
        ExitCode::from(EXIT_USAGE)
    } else if reports.iter().any(|r| !r.passed()) {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}
