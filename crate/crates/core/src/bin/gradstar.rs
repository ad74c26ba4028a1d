use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gradstar::corpus::TestCorpus;
use gradstar::grading::GradedRing;
use gradstar::session::schema::{CorpusKind, RingDecl};
use gradstar::session::{run_session, RunOptions, Session};

#[derive(Parser)]
#[command(name = "gradstar", version, about = "Checks semistar operations on graded polynomial rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file and report every check.
    Run {
        session: PathBuf,
        /// Overrides the session seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Treat unknown verdicts as failures.
        #[arg(long)]
        strict_unknown: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print a reproducible corpus for the ring in `ring-file`.
    Corpus {
        ring_file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
        #[arg(long)]
        monomial: bool,
    },
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read(path: &PathBuf) -> Result<String, ExitCode> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.cmd {
        Cmd::Run {
            session,
            seed,
            report,
            strict_unknown,
            jobs,
        } => {
            let src = match read(&session) {
                Ok(s) => s,
                Err(c) => return c,
            };
            let s = match Session::parse(&src, seed) {
                Ok(s) => s,
                Err(e) => return input_error(format!("{}: {e}", session.display())),
            };
            let r = match run_session(&s, &RunOptions { jobs }) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let _ = write!(std::io::stdout(), "{}", r.human());
            if let Some(path) = report {
                if let Err(e) = std::fs::write(&path, r.to_json()) {
                    return input_error(format!("{}: {e}", path.display()));
                }
            }
            ExitCode::from(r.exit_code(strict_unknown) as u8)
        }
        Cmd::Corpus {
            ring_file,
            seed,
            count,
            max_degree,
            monomial,
        } => {
            let src = match read(&ring_file) {
                Ok(s) => s,
                Err(c) => return c,
            };
            let decl: RingDecl = match serde_json::from_str(&src) {
                Ok(d) => d,
                Err(e) => return input_error(format!("{}: {e}", ring_file.display())),
            };
            let ring = match GradedRing::new(decl.vars, decl.degrees) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            if count == 0 || max_degree == 0 {
                return input_error("count and max-degree must be positive");
            }
            let kind = if monomial { CorpusKind::Monomial } else { CorpusKind::Mixed };
            let c = match kind {
                CorpusKind::Mixed => TestCorpus::generate(&ring, seed, count, max_degree),
                CorpusKind::Monomial => TestCorpus::monomial(&ring, seed, count, max_degree),
            };
            let text = serde_json::to_string_pretty(&c.listing(&ring)).expect("listing serializes");
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
    }
}
