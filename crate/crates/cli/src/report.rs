use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
    AssumedHypothesis,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
            Status::AssumedHypothesis => "assumed-hypothesis",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub got: String,
    pub note: String,
}

impl Check {
    pub fn new(name: &str, status: Status, expected: impl Into<String>, got: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status,
            expected: expected.into(),
            got: got.into(),
            note: String::new(),
        }
    }

    /// Pass when `got` and `expected` agree up to whitespace, fail otherwise.
    pub fn compare(name: &str, expected: impl Into<String>, got: impl Into<String>) -> Check {
        let (expected, got) = (expected.into(), got.into());
        let status = if compact(&expected) == compact(&got) { Status::Pass } else { Status::Fail };
        Check::new(name, status, expected, got)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = note.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

fn compact(v: &str) -> String {
    v.chars().filter(|c| !c.is_whitespace()).collect()
}

impl Report {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    /// 1 if any check failed, otherwise 0; skipped and assumed checks are not failures.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_failed())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => self.render_machine(),
            Format::Human => self.render_human(),
        }
    }

    /// One `CHECK <name> <status> expected=<v> got=<v>` line per check.
    pub fn render_machine(&self) -> String {
        self.checks
            .iter()
            .map(|c| format!("CHECK {} {} expected={} got={}\n", c.name, c.status, compact(&c.expected), compact(&c.got)))
            .collect()
    }

    pub fn render_human(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::SkippedBudget => "SKIP",
                Status::AssumedHypothesis => "ASSUMED",
            };
            out.push_str(&format!("{tag:<7} {:<width$}  expected {}, got {}", c.name, c.expected, c.got));
            if !c.note.is_empty() {
                out.push_str(&format!("  [{}]", c.note));
            }
            out.push('\n');
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "{} checks: {} passed, {} failed, {} skipped (budget), {} assumed\n",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::SkippedBudget),
            count(Status::AssumedHypothesis)
        ));
        out
    }
}
