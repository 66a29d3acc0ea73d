//! Line-oriented verification reports.

use std::fmt;

/// One checked claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    /// Where the claim comes from, shown on failure.
    pub anchor: String,
}

/// A line-oriented verification report: `step.<id> = PASS|FAIL <detail>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub steps: Vec<Step>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn check(&mut self, id: &str, anchor: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.steps.push(Step {
            id: id.to_string(),
            passed,
            detail: detail.into(),
            anchor: anchor.to_string(),
        });
        passed
    }

    pub fn extend(&mut self, other: Report) {
        self.steps.extend(other.steps);
    }

    pub fn all_passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Step> {
        self.steps.iter().filter(|s| !s.passed)
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "step.{} = PASS {}", self.id, self.detail)
        } else {
            write!(f, "step.{} = FAIL {} (claim: {})", self.id, self.detail, self.anchor)
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines() {
        let mut r = Report::new();
        r.check("a.b", "somewhere", true, "order=6");
        r.check("c", "table row 3", false, "order=5");
        assert_eq!(
            r.to_string(),
            "step.a.b = PASS order=6\nstep.c = FAIL order=5 (claim: table row 3)\n"
        );
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
    }
}
