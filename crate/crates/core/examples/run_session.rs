//! Loads a session file and prints the human summary, like `gradstar run`.

use gradstar::session::{run_session, RunOptions, Session};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/axioms.session").to_string());
    let src = std::fs::read_to_string(&path)?;
    let session = Session::parse(&src, None)?;
    let report = run_session(&session, &RunOptions { jobs: Some(2) })?;
    print!("{}", report.human());
    std::process::exit(report.exit_code(false));
}
