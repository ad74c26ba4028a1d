use serde::{Deserialize, Serialize};

/// Three-valued answer of a semi-decision procedure.
///
/// `Unknown` always records the cap of the search that gave up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Unknown { cap: u32 },
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }

    pub fn cap(self) -> Option<u32> {
        match self {
            Verdict::Unknown { cap } => Some(cap),
            _ => None,
        }
    }

    /// Kleene conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::Unknown { cap }, _) | (_, Verdict::Unknown { cap }) => Verdict::Unknown { cap },
            _ => Verdict::True,
        }
    }

    /// Kleene disjunction.
    pub fn or(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::True, _) | (_, Verdict::True) => Verdict::True,
            (Verdict::Unknown { cap }, _) | (_, Verdict::Unknown { cap }) => Verdict::Unknown { cap },
            _ => Verdict::False,
        }
    }

    pub fn not(self) -> Verdict {
        match self {
            Verdict::True => Verdict::False,
            Verdict::False => Verdict::True,
            u => u,
        }
    }

    /// Material equivalence; unknown if either side is.
    pub fn iff(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Unknown { cap }, _) | (_, Verdict::Unknown { cap }) => Verdict::Unknown { cap },
            (a, b) => Verdict::from_bool(a == b),
        }
    }

    pub fn all(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut acc = Verdict::True;
        for v in items {
            acc = acc.and(v);
            if acc.is_false() {
                break;
            }
        }
        acc
    }

    pub fn any(items: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut acc = Verdict::False;
        for v in items {
            acc = acc.or(v);
            if acc.is_true() {
                break;
            }
        }
        acc
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::True => "pass",
            Verdict::False => "fail",
            Verdict::Unknown { .. } => "unknown",
        }
    }
}

/// A counterexample tuple or supporting datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub items: Vec<String>,
}

impl Witness {
    pub fn new(label: impl Into<String>, items: Vec<String>) -> Witness {
        Witness {
            label: label.into(),
            items,
        }
    }
}

/// Result of a property check over many instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub checks_run: usize,
}

const MAX_WITNESSES: usize = 4;

impl Default for CheckReport {
    fn default() -> Self {
        CheckReport::new()
    }
}

impl CheckReport {
    pub fn new() -> CheckReport {
        CheckReport {
            verdict: Verdict::True,
            witnesses: vec![],
            checks_run: 0,
        }
    }

    /// Records one instance. Failing instances keep their witness, up to a
    /// small limit; the first failure is always kept.
    pub fn record(&mut self, v: Verdict, witness: impl FnOnce() -> Witness) {
        self.checks_run += 1;
        match v {
            Verdict::False => {
                if self.witnesses.len() < MAX_WITNESSES {
                    self.witnesses.push(witness());
                }
                self.verdict = Verdict::False;
            }
            Verdict::Unknown { cap } => {
                if self.verdict.is_true() {
                    self.verdict = Verdict::Unknown { cap };
                }
            }
            Verdict::True => {}
        }
    }

    /// Attaches an informational witness without changing the verdict.
    pub fn note(&mut self, w: Witness) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks_run += other.checks_run;
        self.verdict = match (self.verdict, other.verdict) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (a, b) => a.and(b),
        };
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_true()
    }

    pub fn failed(&self) -> bool {
        self.verdict.is_false()
    }
}

/// Search bounds shared by the semi-decision procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Degree bound of the overring ascent `F·T_m`.
    pub ascent: u32,
    /// Rounds of the join fixpoint.
    pub join: u32,
    /// Total-degree cap of the capped homogeneous subideal search.
    pub subideal_degree: u32,
    /// Search bound of the Dedekind-Mertens exponent.
    pub dm_bound: u32,
    /// Size parameter of member sampling for oracle closures.
    pub sample_level: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ascent: 5,
            join: 6,
            subideal_degree: 8,
            dm_bound: 10,
            sample_level: 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kleene_tables() {
        let u = Verdict::Unknown { cap: 3 };
        assert_eq!(Verdict::True.and(u), u);
        assert_eq!(Verdict::False.and(u), Verdict::False);
        assert_eq!(Verdict::True.or(u), Verdict::True);
        assert_eq!(Verdict::False.or(u), u);
        assert_eq!(u.not(), u);
    }

    #[test]
    fn false_report_keeps_witness() {
        let mut r = CheckReport::new();
        r.record(Verdict::True, || unreachable!());
        r.record(Verdict::False, || Witness::new("w", vec!["x".into()]));
        assert!(r.failed());
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.checks_run, 2);
    }
}
