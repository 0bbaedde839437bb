use serde::Serialize;

/// Outcome of a single exhaustively checked law.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail { counterexample: String },
    NotVerified { reason: String },
}

impl CheckOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn fail(counterexample: impl Into<String>) -> Self {
        CheckOutcome::Fail {
            counterexample: counterexample.into(),
        }
    }
}

/// One named law together with its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub outcome: CheckOutcome,
}

impl LawCheck {
    pub fn new(law: impl Into<String>, outcome: CheckOutcome) -> Self {
        LawCheck {
            law: law.into(),
            outcome,
        }
    }
}

impl std::fmt::Display for LawCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.outcome {
            CheckOutcome::Pass => write!(f, "{}: pass", self.law),
            CheckOutcome::Fail { counterexample } => {
                write!(f, "{}: FAIL ({counterexample})", self.law)
            }
            CheckOutcome::NotVerified { reason } => {
                write!(f, "{}: not verified ({reason})", self.law)
            }
        }
    }
}

/// A bundle of law checks, e.g. the full groupoid axiom report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<LawCheck>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, law: impl Into<String>, outcome: CheckOutcome) {
        self.checks.push(LawCheck::new(law, outcome));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome.is_pass())
    }

    pub fn outcome(&self, law: &str) -> Option<&CheckOutcome> {
        self.checks
            .iter()
            .find(|c| c.law == law)
            .map(|c| &c.outcome)
    }

    pub fn first_failure(&self) -> Option<&LawCheck> {
        self.checks.iter().find(|c| !c.outcome.is_pass())
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for check in &self.checks {
            match &check.outcome {
                CheckOutcome::Pass => writeln!(f, "  [pass] {}", check.law)?,
                CheckOutcome::Fail { counterexample } => {
                    writeln!(f, "  [FAIL] {}: {}", check.law, counterexample)?
                }
                CheckOutcome::NotVerified { reason } => {
                    writeln!(f, "  [not verified] {}: {}", check.law, reason)?
                }
            }
        }
        Ok(())
    }
}
