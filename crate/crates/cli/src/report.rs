use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Failed, and the run was told to expect that.
    ExpectedFail,
    /// Passed although the run was told to expect a failure.
    UnexpectedPass,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::ExpectedFail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub max_dev: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `max_dev <= tolerance`; `detail` is kept only on failure.
    pub fn bounded(name: &str, max_dev: f64, tolerance: f64, detail: Option<String>) -> Self {
        let status = if max_dev <= tolerance { Status::Pass } else { Status::Fail };
        Check { name: name.to_string(), status, max_dev, tolerance, detail: detail.filter(|_| status != Status::Pass) }
    }

    /// Swaps the meaning of pass and fail.
    pub fn expect_failure(mut self, detail: Option<String>) -> Self {
        self.status = match self.status {
            Status::Fail => Status::ExpectedFail,
            _ => Status::UnexpectedPass,
        };
        if self.detail.is_none() {
            self.detail = detail;
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub checks: Vec<Check>,
    pub runtime_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_ok())
    }

    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.status.is_ok()).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict} {}: {ok}/{} checks ok", self.command, self.checks.len());
        for c in self.checks.iter().filter(|c| c.status != Status::Pass) {
            let status = serde_json::to_value(c.status).expect("status serializes");
            line.push_str(&format!(
                ", {} {} ({:.3e} vs {:.0e})",
                c.name,
                status.as_str().unwrap_or_default(),
                c.max_dev,
                c.tolerance
            ));
        }
        line.push_str(&format!(" [seed {}, {} ms]", self.seed, self.runtime_ms));
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_failures_invert_status() {
        let fail = Check::bounded("x", 2.0, 1.0, Some("here".into()));
        assert_eq!(fail.status, Status::Fail);
        assert_eq!(fail.detail.as_deref(), Some("here"));
        assert_eq!(fail.clone().expect_failure(None).status, Status::ExpectedFail);

        let pass = Check::bounded("x", 0.5, 1.0, Some("here".into()));
        assert_eq!(pass.detail, None);
        let flipped = pass.expect_failure(Some("there".into()));
        assert_eq!(flipped.status, Status::UnexpectedPass);
        assert!(!flipped.status.is_ok());
        assert_eq!(flipped.detail.as_deref(), Some("there"));
    }

    #[test]
    fn nan_deviation_fails() {
        assert_eq!(Check::bounded("x", f64::NAN, 1.0, None).status, Status::Fail);
    }

    #[test]
    fn statuses_serialize_kebab_case() {
        assert_eq!(serde_json::to_string(&Status::UnexpectedPass).unwrap(), "\"unexpected-pass\"");
    }
}
