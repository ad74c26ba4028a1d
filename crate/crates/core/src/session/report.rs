use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::verdict::{Caps, Verdict, Witness};
use crate::{Error, Result};

use super::schema::SessionFile;
use super::Session;

/// `pass`, `fail` or `unknown(cap)`.
pub fn verdict_string(v: Verdict) -> String {
    match v {
        Verdict::Unknown { cap } => format!("unknown({cap})"),
        other => other.label().to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub check: String,
    pub verdict: String,
    pub instances: usize,
    pub witnesses: Vec<Witness>,
    pub caps_used: Caps,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub expect_fail: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip)]
    pub raw: Verdict,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: Option<u64>,
    pub session: SessionFile,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; `None` runs sequentially.
    pub jobs: Option<usize>,
}

/// Runs every check. Records come back in declaration order whatever the
/// number of workers.
pub fn run_session(session: &Session, opts: &RunOptions) -> Result<Report> {
    let timing = session.file.timing;
    let ring = &session.ctx.ring;
    let one = |p: &super::directives::Prepared| -> Result<CheckRecord> {
        let t = Instant::now();
        let out = p.run(ring)?;
        let v = out.report.verdict;
        Ok(CheckRecord {
            name: p.name.clone(),
            check: p.tag.to_string(),
            verdict: verdict_string(v),
            instances: out.report.checks_run,
            witnesses: out.report.witnesses,
            caps_used: p.caps,
            expect_fail: p.expect_fail,
            detail: out.detail,
            timing_ms: timing.then(|| t.elapsed().as_millis() as u64),
            raw: v,
        })
    };
    let checks: Vec<CheckRecord> = match opts.jobs {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::invalid(e.to_string()))?;
            pool.install(|| session.jobs.par_iter().map(one).collect::<Result<Vec<_>>>())?
        }
        _ => session.jobs.iter().map(one).collect::<Result<Vec<_>>>()?,
    };
    let mut summary = Summary {
        total: checks.len(),
        ..Summary::default()
    };
    for c in &checks {
        match c.raw {
            Verdict::True => summary.pass += 1,
            Verdict::False => summary.fail += 1,
            Verdict::Unknown { .. } => summary.unknown += 1,
        }
    }
    Ok(Report {
        seed: session.file.seed,
        session: session.file.clone(),
        checks,
        summary,
    })
}

impl Report {
    /// 0 when nothing failed; unknowns fail only when `strict_unknown`.
    pub fn exit_code(&self, strict_unknown: bool) -> i32 {
        if self.summary.fail > 0 || (strict_unknown && self.summary.unknown > 0) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// One line per check, witnesses indented below.
    pub fn human(&self) -> String {
        let mut s = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            s += &format!("{:<width$}  {:<12} {:>5} instances\n", c.name, c.verdict, c.instances);
            for w in &c.witnesses {
                s += &format!("    {}: {}\n", w.label, w.items.join(" | "));
            }
        }
        s += &format!(
            "{} checks: {} pass, {} fail, {} unknown\n",
            self.summary.total, self.summary.pass, self.summary.fail, self.summary.unknown
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
  "ring": { "vars": ["x", "y"], "degrees": [[1, 1]] },
  "seed": 42,
  "corpora": [{ "name": "C", "count": 6, "max_degree": 2 }],
  "stars": [{ "name": "hx", "expr": { "tag": "localize", "primes": [["x"]] } }],
  "checks": [
    { "check": "axioms", "star": "d", "ideals": { "corpus": "C" } },
    { "check": "member", "star": "v", "ideal": { "gens": ["x", "y"] }, "element": "1" },
    { "check": "compare", "star": "hx", "other": "d", "ideals": [{ "gens": ["y"] }], "expect": ">=" },
    { "check": "newton", "ideal": ["x^2", "y^2"], "expect": ["x^2", "x*y", "y^2"] },
    { "check": "dedekind_mertens", "f": "x + y", "g": "x - y", "expect_fail": true, "expect": 3 }
  ]
}"#;

    #[test]
    fn small_session_passes_in_order() {
        let s = Session::parse(SMALL, None).unwrap();
        let r = run_session(&s, &RunOptions::default()).unwrap();
        let names: Vec<&str> = r.checks.iter().map(|c| c.check.as_str()).collect();
        assert_eq!(names, ["axioms", "member", "compare", "newton", "dedekind_mertens"]);
        assert_eq!(r.summary.fail, 0, "{}", r.human());
        assert_eq!(r.exit_code(true), 0);
        let par = run_session(&s, &RunOptions { jobs: Some(3) }).unwrap();
        assert_eq!(par.to_json(), r.to_json());
    }

    #[test]
    fn empty_check_list() {
        let s = Session::parse(r#"{ "ring": { "vars": ["x"], "degrees": [[1]] } }"#, None).unwrap();
        let r = run_session(&s, &RunOptions::default()).unwrap();
        assert_eq!(r.summary.total, 0);
        assert_eq!(r.exit_code(true), 0);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "{\n  \"ring\": { \"vars\": [\"x\"], \"degrees\": [[1]] },\n  \"checks\": [ { \"check\": \"member\", \"star\": \"nope\", \"ideal\": { \"gens\": [\"x\"] }, \"element\": \"1\" } ]\n}";
        match Session::parse(bad, None) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{:?}", other.err()),
        }
        match Session::parse("{ \"ring\": ", None) {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("{:?}", other.err()),
        }
        let noseed = r#"{ "ring": { "vars": ["x"], "degrees": [[1]] }, "corpora": [{ "name": "C", "count": 2, "max_degree": 2 }] }"#;
        assert!(Session::parse(noseed, None).is_err());
        assert!(Session::parse(noseed, Some(1)).is_ok());
    }
}
