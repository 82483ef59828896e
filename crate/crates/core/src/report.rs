use std::fmt;

/// One named verdict with a human-readable detail line.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    /// Printed but not counted toward the overall verdict.
    pub informational: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), informational: false });
    }

    pub fn inform(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), informational: true });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass || c.informational)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match (c.pass, c.informational) {
                (true, _) => "ok  ",
                (false, false) => "FAIL",
                (false, true) => "info",
            };
            writeln!(f, "[{tag}] {}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}
