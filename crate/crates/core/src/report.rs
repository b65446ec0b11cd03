//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    /// Observed order from steps h and h/2; `None` when not applicable or
    /// when the residual is already at rounding level.
    pub conv_order: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_residual: f64, conv_order: Option<f64>, pass: bool) -> Self {
        Check { name: name.into(), max_residual, conv_order, pass }
    }

    /// Passes iff `max_residual ≤ tol`.
    pub fn bounded(name: impl Into<String>, max_residual: f64, tol: f64) -> Self {
        Check::new(name, max_residual, None, max_residual <= tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub h: f64,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, h: f64, samples: usize, seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        VerificationReport { suite: suite.into(), h, samples, seed, checks }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Combines reports under a new suite name; check names must be distinct.
    pub fn merge(suite: impl Into<String>, reports: Vec<VerificationReport>) -> Self {
        let (h, samples, seed) = reports.first().map_or((0.0, 0, 0), |r| (r.h, r.samples, r.seed));
        let checks = reports.into_iter().flat_map(|r| r.checks).collect();
        VerificationReport::new(suite, h, samples, seed, checks)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(5);
        let mut out = format!("suite {}  h={:e}  samples={}  seed={}\n", self.suite, self.h, self.samples, self.seed);
        for c in &self.checks {
            let order = c.conv_order.map_or("-".to_string(), |o| format!("{o:.3}"));
            out.push_str(&format!(
                "{:<width$}  {:>12.3e}  {:>7}  {}\n",
                c.name,
                c.max_residual,
                order,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_and_ordering() {
        let r = VerificationReport::new(
            "demo",
            1e-3,
            2,
            7,
            vec![Check::bounded("b", 0.5, 1.0), Check::new("a", 1e-6, Some(2.0), true)],
        );
        assert!(r.passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["name"], "a");
        assert_eq!(v["checks"][1]["conv_order"], serde_json::Value::Null);
        assert_eq!(v["seed"], 7);
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let bad = VerificationReport::new("x", 1e-3, 1, 0, vec![Check::bounded("c", 2.0, 1.0)]);
        assert!(!bad.passed());
        assert_eq!(bad.failures().count(), 1);
    }
}
