use serde::{Deserialize, Serialize};

/// One failed check inside a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Which check failed.
    pub check: String,
    /// The offending input, serialized.
    pub input: serde_json::Value,
    pub measured: f64,
}

impl Violation {
    pub fn new(check: impl Into<String>, input: serde_json::Value, measured: f64) -> Self {
        Self { check: check.into(), input, measured }
    }
}

/// A per-index entry of a measured profile (e.g. the maximum movement of the
/// `k`-th map of a sequence, next to its bound).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub index: usize,
    pub measured: f64,
    pub bound: f64,
}

/// Pass/fail record of one verification suite.
///
/// `pass` is true exactly when `violations` is empty; construct through
/// [`Tally::finish`] to keep that so.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: usize,
    pub worst: f64,
    pub bound: f64,
    pub pass: bool,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub profile: Vec<ProfileEntry>,
}

impl VerificationReport {
    /// One JSON line.
    pub fn to_json_line(&self) -> String {
        // the report holds only strings, finite floats and JSON values
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        format!(
            "{:<20} {} trials={} worst={:.3e} bound={:.3e} violations={}",
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            self.trials,
            self.worst,
            self.bound,
            self.violations.len()
        )
    }
}

/// Accumulator for trial outcomes. Merging is associative, so trials may be
/// evaluated in any grouping as long as they are merged in trial order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tally {
    pub trials: usize,
    pub worst: f64,
    pub violations: Vec<Violation>,
}

impl Tally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one trial.
    pub fn trial(&mut self) {
        self.trials += 1;
    }

    /// Folds a measured value into `worst`.
    pub fn observe(&mut self, value: f64) {
        if value.is_nan() {
            self.worst = f64::MAX;
        } else {
            self.worst = self.worst.max(value.min(f64::MAX));
        }
    }

    pub fn violate(&mut self, violation: Violation) {
        self.violations.push(violation);
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.trials += other.trials;
        self.observe(other.worst);
        self.violations.extend(other.violations);
        self
    }

    pub fn finish(self, suite: impl Into<String>, bound: f64) -> VerificationReport {
        VerificationReport {
            suite: suite.into(),
            trials: self.trials,
            worst: self.worst,
            bound,
            pass: self.violations.is_empty(),
            violations: self.violations,
            profile: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_no_violations() {
        let mut t = Tally::new();
        t.trial();
        t.observe(0.25);
        let r = t.clone().finish("x", 1.0);
        assert!(r.pass);
        t.violate(Violation::new("c", serde_json::json!([1]), 2.0));
        let r = t.finish("x", 1.0);
        assert!(!r.pass);
        assert_eq!(r.trials, 1);
        assert_eq!(r.worst, 0.25);
    }

    #[test]
    fn json_shape() {
        let r = Tally::new().finish("s", 0.5);
        let v: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        for key in ["suite", "trials", "worst", "bound", "pass", "violations"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v.get("profile").is_none());
    }

    #[test]
    fn infinite_values_stay_serializable() {
        let mut t = Tally::new();
        t.observe(f64::INFINITY);
        t.observe(f64::NAN);
        let r = t.finish("s", 0.0);
        let line = r.to_json_line();
        assert!(line.contains("\"worst\":1.7976931348623157e+308"), "{line}");
    }
}
